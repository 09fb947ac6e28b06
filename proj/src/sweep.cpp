#include "entdyn/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>
#include <variant>

namespace entdyn {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxBracketDoublings = 3;

// fn(i) over i in [0, count); width 1 runs inline. Results must be written to
// index-addressed slots so ordering never depends on scheduling.
template <typename Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
    if (count <= 0) return;
    const int width = std::max(1, std::min(threads, count));
    if (width == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(width));
    for (int w = 0; w < width; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

ComplexMatrix total_hamiltonian(const Model& model) {
    if (const auto* direct = std::get_if<DirectModel>(&model))
        return build_direct(*direct).h_total;
    return build_indirect(std::get<IndirectModel>(model)).h_total;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

void sort_rows(std::vector<SweepRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.gamma != b.gamma) return a.gamma < b.gamma;
        return a.temperature < b.temperature;
    });
}

}  // namespace

Temperature to_temperature(double value) {
    if (std::isinf(value) && value > 0.0) return Temperature::inf();
    return Temperature(value);
}

TimeGrid model_default_grid(const Model& model, double scale) {
    return default_grid(total_hamiltonian(model), scale);
}

PointEvaluator::PointEvaluator(Model model, const HorizonSpec& horizon)
    : model_(std::move(model)) {
    const ComplexMatrix h_total = total_hamiltonian(model_);
    grid_ = horizon.explicit_grid ? *horizon.explicit_grid
                                  : default_grid(h_total, horizon.scale);
    prop_.emplace(h_total);
}

ScanStats PointEvaluator::scan(Temperature temperature, ScanMode mode, double threshold) const {
    const Scenario sc = make_scenario(model_, temperature);
    return scan_min_pt_with(*prop_, sc, grid_, threshold, mode);
}

bool PointEvaluator::entangled_verdict(Temperature temperature, double threshold) const {
    const ScanStats stats = scan(temperature, ScanMode::verdict_only, threshold);
    return stats.early_exited || stats.min_eig < -threshold;
}

namespace {

// Midpoint of the verdict flip inside (lo entangled, hi ppt).
double bisect_boundary(const PointEvaluator& ev, double lo, double hi, double tol,
                       double threshold) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (ev.entangled_verdict(to_temperature(mid), threshold))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CriticalTemperatureResult critical_T_with(const PointEvaluator& ev, double t_lo, double t_hi,
                                          double tol, double threshold) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw std::invalid_argument("find_critical_T: bracket must satisfy 0 < t_lo < t_hi");
    if (!(tol > 0.0)) throw std::invalid_argument("find_critical_T: tolerance must be positive");

    bool lo_entangled = ev.entangled_verdict(to_temperature(t_lo), threshold);
    for (int round = 0; !lo_entangled && round < kMaxBracketDoublings; ++round) {
        t_lo *= 0.5;
        lo_entangled = ev.entangled_verdict(to_temperature(t_lo), threshold);
    }
    if (!lo_entangled)
        throw BracketFailure("find_critical_T: no entangled verdict at the lower bracket");
    bool hi_entangled = ev.entangled_verdict(to_temperature(t_hi), threshold);
    for (int round = 0; hi_entangled && round < kMaxBracketDoublings; ++round) {
        t_hi *= 2.0;
        hi_entangled = ev.entangled_verdict(to_temperature(t_hi), threshold);
    }
    if (hi_entangled)
        throw BracketFailure("find_critical_T: no ppt verdict at the upper bracket");

    const std::vector<double> temps = linspace(t_lo, t_hi, kCoarsePoints);
    std::vector<char> entangled(static_cast<std::size_t>(kCoarsePoints));
    entangled.front() = 1;
    entangled.back() = 0;
    for (int i = 1; i + 1 < kCoarsePoints; ++i)
        entangled[static_cast<std::size_t>(i)] =
            ev.entangled_verdict(to_temperature(temps[static_cast<std::size_t>(i)]), threshold)
                ? 1
                : 0;

    std::vector<int> changes;
    for (int i = 0; i + 1 < kCoarsePoints; ++i)
        if (entangled[static_cast<std::size_t>(i)] != entangled[static_cast<std::size_t>(i + 1)])
            changes.push_back(i);

    // Outermost changes are entangled->ppt: everything before the first and
    // after the last is uniform and pinned by the endpoints.
    CriticalTemperatureResult result;
    result.monotone = changes.size() == 1;
    const int first = changes.front();
    const int last = changes.back();
    result.t_lc_numeric = bisect_boundary(ev, temps[static_cast<std::size_t>(first)],
                                          temps[static_cast<std::size_t>(first + 1)], tol,
                                          threshold);
    result.t_uc_numeric =
        first == last ? result.t_lc_numeric
                      : bisect_boundary(ev, temps[static_cast<std::size_t>(last)],
                                        temps[static_cast<std::size_t>(last + 1)], tol, threshold);
    return result;
}

}  // namespace

CriticalTemperatureResult find_critical_T(const Model& model, double gamma, const TimeGrid& grid,
                                          double t_lo, double t_hi, double tol, double threshold) {
    HorizonSpec horizon;
    horizon.explicit_grid = grid;
    const PointEvaluator ev(with_gamma(model, gamma), horizon);
    return critical_T_with(ev, t_lo, t_hi, tol, threshold);
}

PhaseDiagram phase_diagram(const Model& model, const std::vector<double>& gamma_values,
                           double t_lo, double t_hi, const HorizonSpec& horizon, double tol,
                           double threshold, int threads) {
    PhaseDiagram out;
    if (gamma_values.empty()) return out;
    for (std::size_t i = 0; i < gamma_values.size(); ++i) {
        if (!(gamma_values[i] > 0.0))
            throw std::invalid_argument("phase_diagram: gamma values must be positive");
        if (i > 0 && !(gamma_values[i] > gamma_values[i - 1]))
            throw std::invalid_argument("phase_diagram: gamma values must be ascending");
    }
    if (!(t_lo > 0.0) || !(t_hi > t_lo))
        throw std::invalid_argument("phase_diagram: temperature range must satisfy 0 < lo < hi");

    const int count = static_cast<int>(gamma_values.size());
    std::vector<std::vector<SweepRow>> rows_per_gamma(static_cast<std::size_t>(count));
    std::vector<PhaseBoundaryRow> boundary(static_cast<std::size_t>(count));

    parallel_for_index(count, threads, [&](int gi) {
        const double gamma = gamma_values[static_cast<std::size_t>(gi)];
        const Model scaled = with_gamma(model, gamma);
        const PointEvaluator ev(scaled, horizon);

        std::vector<SweepRow>& rows = rows_per_gamma[static_cast<std::size_t>(gi)];
        const std::vector<double> temps = linspace(t_lo, t_hi, kCoarsePoints);
        rows.reserve(temps.size());
        for (double t : temps) {
            const ScanStats stats = ev.scan(to_temperature(t), ScanMode::full, threshold);
            SweepRow row;
            row.gamma = gamma;
            row.temperature = t;
            row.horizon = ev.grid().t_end;
            row.min_pt_eig = stats.min_eig;
            row.neg_avg = stats.negativity_avg;
            row.entangled = stats.min_eig < -threshold;
            rows.push_back(row);
        }

        PhaseBoundaryRow& edge = boundary[static_cast<std::size_t>(gi)];
        edge.gamma = gamma;
        const TlbResult formula = applicable_tlb(scaled);
        edge.t_lb_formula = formula.defined ? formula.value : kNan;
        edge.log_argument = formula.effective_coupling;
        try {
            const CriticalTemperatureResult ctr = critical_T_with(ev, t_lo, t_hi, tol, threshold);
            edge.t_lc_numeric = ctr.t_lc_numeric;
            edge.t_uc_numeric = ctr.t_uc_numeric;
            edge.monotone = ctr.monotone;
        } catch (const BracketFailure&) {
            edge.bracket_failed = true;
            edge.t_lc_numeric = kNan;
            edge.t_uc_numeric = kNan;
        }
    });

    for (std::vector<SweepRow>& rows : rows_per_gamma)
        out.sweep.rows.insert(out.sweep.rows.end(), rows.begin(), rows.end());
    sort_rows(out.sweep.rows);
    out.boundary = std::move(boundary);
    return out;
}

NegativityCurve negativity_curve(const Model& model, const std::vector<double>& temperatures,
                                 const HorizonSpec& horizon, double tol, double threshold,
                                 int threads) {
    NegativityCurve out;
    out.annotations.t_lb = kNan;
    out.annotations.t_uc_numeric = kNan;
    out.annotations.t_uc_star = kNan;
    if (temperatures.empty()) return out;
    for (std::size_t i = 1; i < temperatures.size(); ++i)
        if (!(temperatures[i] > temperatures[i - 1]))
            throw std::invalid_argument("negativity_curve: temperatures must be ascending");

    const double gamma = reference_gamma(model);
    const PointEvaluator ev(model, horizon);

    const int count = static_cast<int>(temperatures.size());
    std::vector<SweepRow> rows(static_cast<std::size_t>(count));
    parallel_for_index(count, threads, [&](int ti) {
        const double t = temperatures[static_cast<std::size_t>(ti)];
        const ScanStats stats = ev.scan(to_temperature(t), ScanMode::full, threshold);
        SweepRow& row = rows[static_cast<std::size_t>(ti)];
        row.gamma = gamma;
        row.temperature = t;
        row.horizon = ev.grid().t_end;
        row.min_pt_eig = stats.min_eig;
        row.neg_avg = stats.negativity_avg;
        row.entangled = stats.min_eig < -threshold;
    });
    out.sweep.rows = std::move(rows);
    sort_rows(out.sweep.rows);

    const TlbResult formula = applicable_tlb(model);
    if (formula.defined) out.annotations.t_lb = formula.value;
    if (const auto* direct = std::get_if<DirectModel>(&model)) {
        try {
            out.annotations.t_uc_star = tuc_star(*direct, gamma);
        } catch (const std::invalid_argument&) {
        }
    }

    double hi_finite = kNan;
    for (auto it = temperatures.rbegin(); it != temperatures.rend(); ++it)
        if (std::isfinite(*it)) {
            hi_finite = *it;
            break;
        }
    const double lo = temperatures.front();
    if (std::isfinite(lo) && std::isfinite(hi_finite) && hi_finite > lo && lo > 0.0) {
        try {
            const CriticalTemperatureResult ctr = critical_T_with(ev, lo, hi_finite, tol, threshold);
            out.annotations.t_uc_numeric = ctr.t_uc_numeric;
        } catch (const BracketFailure&) {
        }
    }
    return out;
}

}  // namespace entdyn
