#include "entdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include "entdyn/hilbert.hpp"

namespace entdyn {

namespace {

// Smallest and largest nonzero |l_i - l_j| over all eigenvalue pairs.
struct GapRange {
    double min_gap;
    double max_gap;
};

GapRange nonzero_gap_range(const std::vector<double>& energies) {
    const std::size_t n = energies.size();
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gap = std::abs(energies[i] - energies[j]);
            if (gap <= kGapFloor) continue;
            if (!found || gap < lo) lo = gap;
            if (!found || gap > hi) hi = gap;
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("default_grid: spectrum has no nonzero gaps");
    return {lo, hi};
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

complex phase_integral(double delta, double t) {
    if (std::abs(delta) < 1e-12) return complex(t, 0.0);
    const complex num = std::exp(complex(0.0, delta * t)) - complex(1.0, 0.0);
    return num / complex(0.0, delta);
}

TimeGrid default_grid(const std::vector<double>& energies, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("default_grid: scale must be positive");
    const GapRange gaps = nonzero_gap_range(energies);
    TimeGrid grid;
    grid.t_end = scale * 20.0 * kTwoPi / gaps.min_gap;
    grid.steps = static_cast<int>(std::ceil(20.0 * grid.t_end * gaps.max_gap / kTwoPi));
    grid.steps = std::max(grid.steps, 1);
    return grid;
}

TimeGrid default_grid(const ComplexMatrix& h_total, double scale) {
    return default_grid(herm_eigvals(h_total), scale);
}

SpectralPropagator::SpectralPropagator(const ComplexMatrix& h_total)
    : eig_(herm_eig(h_total)), vectors_adj_(eig_.vectors.adjoint()) {}

ComplexMatrix SpectralPropagator::to_eigenbasis(const ComplexMatrix& rho) const {
    if (rho.n != dim()) throw DimensionMismatch("to_eigenbasis: dimension mismatch");
    return vectors_adj_ * rho * eig_.vectors;
}

void SpectralPropagator::state_at(const ComplexMatrix& rho_eig, double t, ComplexMatrix& out,
                                  ComplexMatrix& scratch) const {
    const int n = dim();
    if (rho_eig.n != n) throw DimensionMismatch("state_at: dimension mismatch");
    if (scratch.n != n) scratch = ComplexMatrix(n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            const double phase = -(eig_.values[static_cast<std::size_t>(m)] -
                                   eig_.values[static_cast<std::size_t>(k)]) *
                                 t;
            scratch.at(m, k) = rho_eig.at(m, k) * std::exp(complex(0.0, phase));
        }
    }
    ComplexMatrix tmp(n);
    mul_into(eig_.vectors, scratch, tmp);
    mul_into(tmp, vectors_adj_, out);
}

DensityMatrix evolve(const ComplexMatrix& h_total, const DensityMatrix& rho0, double t) {
    if (h_total.n != rho0.matrix.n) throw DimensionMismatch("evolve: dimension mismatch");
    SpectralPropagator prop(h_total);
    const ComplexMatrix rho_eig = prop.to_eigenbasis(rho0.matrix);
    ComplexMatrix out(h_total.n);
    ComplexMatrix scratch(h_total.n);
    prop.state_at(rho_eig, t, out, scratch);
    return DensityMatrix{std::move(out), rho0.space};
}

Trajectory trajectory(const ComplexMatrix& h_total, const DensityMatrix& rho0,
                      const TimeGrid& grid) {
    if (h_total.n != rho0.matrix.n) throw DimensionMismatch("trajectory: dimension mismatch");
    if (!(grid.t_end > 0.0) || grid.steps < 1)
        throw std::invalid_argument("trajectory: invalid time grid");
    SpectralPropagator prop(h_total);
    const ComplexMatrix rho_eig = prop.to_eigenbasis(rho0.matrix);
    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(static_cast<std::size_t>(grid.steps) + 1);
    ComplexMatrix out(h_total.n);
    ComplexMatrix scratch(h_total.n);
    for (int k = 0; k <= grid.steps; ++k) {
        prop.state_at(rho_eig, grid.sample(k), out, scratch);
        traj.states.push_back(DensityMatrix{out, rho0.space});
    }
    return traj;
}

ComplexMatrix interaction_picture(const ComplexMatrix& h0, const ComplexMatrix& rho, double t) {
    if (h0.n != rho.n) throw DimensionMismatch("interaction_picture: dimension mismatch");
    const ComplexMatrix u_back = propagator(h0, -t);  // exp(+i h0 t)
    return u_back * rho * u_back.adjoint();
}

ComplexMatrix first_order_state(const DirectModel& model, Temperature temperature, double t) {
    validate_model(model);
    const std::vector<double> pa = gibbs_populations(model.spectrum_a, temperature);
    const std::vector<double> pb = gibbs_populations(model.spectrum_b, temperature);
    const int da = static_cast<int>(model.spectrum_a.size());
    const int db = static_cast<int>(model.spectrum_b.size());
    const int n = da * db;

    std::vector<double> pop(static_cast<std::size_t>(n));
    std::vector<double> energy(static_cast<std::size_t>(n));
    for (int i = 0; i < da; ++i) {
        for (int k = 0; k < db; ++k) {
            const int idx = i * db + k;
            pop[static_cast<std::size_t>(idx)] =
                pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(k)];
            energy[static_cast<std::size_t>(idx)] =
                model.spectrum_a[static_cast<std::size_t>(i)] +
                model.spectrum_b[static_cast<std::size_t>(k)];
        }
    }

    ComplexMatrix rho(n);
    for (int idx = 0; idx < n; ++idx)
        rho.at(idx, idx) = complex(pop[static_cast<std::size_t>(idx)], 0.0);

    for (const CouplingTerm& term : model.couplings) {
        const ComplexMatrix v = kron(term.v_a, term.v_b);
        for (int bi = 0; bi < n; ++bi) {
            for (int bj = 0; bj < n; ++bj) {
                const complex vij = v.at(bi, bj);
                if (bi == bj || vij == complex(0.0)) continue;
                const double delta = energy[static_cast<std::size_t>(bi)] -
                                     energy[static_cast<std::size_t>(bj)];
                if (std::abs(delta) < kResonanceFloor)
                    throw ResonantDenominator("first_order_state: coupled resonant transition");
                const double dp = pop[static_cast<std::size_t>(bj)] -
                                  pop[static_cast<std::size_t>(bi)];
                rho.at(bi, bj) -= complex(0.0, term.gamma) * vij * dp * phase_integral(delta, t);
            }
        }
    }
    return rho;
}

}  // namespace entdyn
