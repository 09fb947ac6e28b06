#include "entdyn/metrics.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

namespace entdyn {

namespace {

ComplexMatrix diagonal_matrix(const std::vector<double>& values) {
    ComplexMatrix m(static_cast<int>(values.size()));
    for (int i = 0; i < m.n; ++i) m.at(i, i) = complex(values[static_cast<std::size_t>(i)], 0.0);
    return m;
}

double clamp_negativity(double v) {
    return v < kNegativityClamp ? 0.0 : v;
}

double negativity_from_eigs(const std::vector<double>& eigs) {
    double abs_sum = 0.0;
    for (double e : eigs) abs_sum += std::abs(e);
    return clamp_negativity(0.5 * (abs_sum - 1.0));
}

void apply_table(const ComplexMatrix& in, const std::vector<std::size_t>& table,
                 ComplexMatrix& out) {
    for (std::size_t k = 0; k < table.size(); ++k) out.a[k] = in.a[table[k]];
}

}  // namespace

double min_pt_eig(const DensityMatrix& rho, const Bipartition& part, TransposeSide side) {
    const ComplexMatrix pt = partial_transpose(rho.matrix, rho.space, part, side);
    const std::vector<double> eigs = herm_eigvals(pt);
    return eigs.front();
}

double negativity(const DensityMatrix& rho, const Bipartition& part, TransposeSide side) {
    const ComplexMatrix pt = partial_transpose(rho.matrix, rho.space, part, side);
    return negativity_from_eigs(herm_eigvals(pt));
}

double time_averaged_negativity(const Trajectory& traj, const Bipartition& part) {
    if (traj.states.empty()) throw std::invalid_argument("time_averaged_negativity: empty trajectory");
    double sum = 0.0;
    for (const DensityMatrix& state : traj.states) sum += negativity(state, part);
    return sum / static_cast<double>(traj.states.size());
}

Scenario make_scenario(const Model& model, Temperature temperature) {
    Scenario sc;
    if (const auto* direct = std::get_if<DirectModel>(&model)) {
        BuiltDirect built = build_direct(*direct);
        const CompositeSpace sub_a({static_cast<int>(direct->spectrum_a.size())});
        const CompositeSpace sub_b({static_cast<int>(direct->spectrum_b.size())});
        const DensityMatrix rho_a{diagonal_matrix(gibbs_populations(direct->spectrum_a, temperature)), sub_a};
        const DensityMatrix rho_b{diagonal_matrix(gibbs_populations(direct->spectrum_b, temperature)), sub_b};
        sc.h_total = std::move(built.h_total);
        sc.rho0 = product_state({rho_a, rho_b});
        sc.keep = {};
        sc.metric_space = built.space;
        sc.part = Bipartition::of(sc.metric_space, {0});
        return sc;
    }
    const auto& indirect = std::get<IndirectModel>(model);
    BuiltIndirect built = build_indirect(indirect);
    const CompositeSpace sub_a({static_cast<int>(indirect.spectrum_a.size())});
    const CompositeSpace sub_b({static_cast<int>(indirect.spectrum_b.size())});
    const CompositeSpace sub_c({static_cast<int>(indirect.spectrum_c.size())});
    const DensityMatrix rho_a{
        diagonal_matrix(gibbs_populations(indirect.spectrum_a, indirect.bath_temperature)), sub_a};
    const DensityMatrix rho_b{diagonal_matrix(gibbs_populations(indirect.spectrum_b, temperature)), sub_b};
    const DensityMatrix rho_c{diagonal_matrix(gibbs_populations(indirect.spectrum_c, temperature)), sub_c};
    sc.h_total = std::move(built.h_total);
    sc.rho0 = product_state({rho_a, rho_b, rho_c});
    sc.keep = {1, 2};
    sc.metric_space = CompositeSpace({sub_b.dims[0], sub_c.dims[0]});
    sc.part = Bipartition::of(sc.metric_space, {0});
    return sc;
}

ScanStats scan_min_pt(const Scenario& sc, const TimeGrid& grid, double threshold, ScanMode mode) {
    const SpectralPropagator prop(sc.h_total);
    return scan_min_pt_with(prop, sc, grid, threshold, mode);
}

ScanStats scan_min_pt_with(const SpectralPropagator& prop, const Scenario& sc,
                           const TimeGrid& grid, double threshold, ScanMode mode) {
    if (!(grid.t_end > 0.0) || grid.steps < 1)
        throw std::invalid_argument("scan_min_pt: invalid time grid");
    const bool reduce = !sc.keep.empty();
    const std::vector<std::size_t> table =
        partial_transpose_table(sc.metric_space, sc.part, TransposeSide::left);

    const ComplexMatrix rho_eig = prop.to_eigenbasis(sc.rho0.matrix);
    ComplexMatrix state(sc.h_total.n);
    ComplexMatrix scratch(sc.h_total.n);
    const int metric_dim = sc.metric_space.total();
    ComplexMatrix pt(metric_dim);
    std::vector<double> eigs;

    ScanStats stats;
    bool first = true;
    double neg_sum = 0.0;
    for (int k = 0; k <= grid.steps; ++k) {
        const double t = grid.sample(k);
        prop.state_at(rho_eig, t, state, scratch);
        if (reduce) {
            const ComplexMatrix reduced = partial_trace(state, sc.rho0.space, sc.keep);
            apply_table(reduced, table, pt);
        } else {
            apply_table(state, table, pt);
        }
        herm_eigvals_inplace(pt, eigs);
        const double min_eig = eigs.front();
        if (first || min_eig < stats.min_eig) {
            stats.min_eig = min_eig;
            stats.time_of_min = t;
            first = false;
        }
        if (mode == ScanMode::full) {
            neg_sum += negativity_from_eigs(eigs);
        } else if (min_eig < -threshold) {
            stats.early_exited = true;
            return stats;
        }
    }
    if (mode == ScanMode::full)
        stats.negativity_avg = neg_sum / static_cast<double>(grid.steps + 1);
    return stats;
}

PTVerdict entangles_within_horizon(const Model& model, Temperature temperature,
                                   const TimeGrid& grid, double threshold) {
    const Scenario sc = make_scenario(model, temperature);
    const ScanStats stats = scan_min_pt(sc, grid, threshold, ScanMode::full);
    PTVerdict verdict;
    verdict.min_eig_over_time = stats.min_eig;
    verdict.time_of_min = stats.time_of_min;
    verdict.threshold = threshold;
    verdict.entangled = stats.min_eig < -threshold;
    return verdict;
}

}  // namespace entdyn
