#include "entdyn/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>

namespace entdyn {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

TlbResult make_tlb(TlbCase kind, double energy, double log_argument) {
    TlbResult r;
    r.kind = kind;
    r.effective_coupling = log_argument;
    if (log_argument > 0.0 && log_argument < 1.0) {
        r.value = -energy / (2.0 * std::log(log_argument));
        r.defined = true;
    } else {
        r.value = kNan;
        r.defined = false;
    }
    return r;
}

// Requires exactly two levels; returns the gap.
double two_level_gap(const std::vector<double>& spectrum, const char* name) {
    if (spectrum.size() != 2)
        throw std::invalid_argument(std::string(name) + ": two-level spectrum required");
    return spectrum[1] - spectrum[0];
}

}  // namespace

GapTable gap_table(const DirectModel& model) {
    validate_model(model);
    const std::size_t na = model.spectrum_a.size();
    const std::size_t nb = model.spectrum_b.size();
    if (na < 2 || nb < 2) throw DimensionTooSmall("gap_table: need at least two levels per side");
    GapTable table;
    table.gaps.resize(na - 1, std::vector<double>(nb - 1, 0.0));
    bool first = true;
    for (std::size_t i = 0; i + 1 < na; ++i) {
        for (std::size_t j = 0; j + 1 < nb; ++j) {
            const double gap = (model.spectrum_a[i + 1] - model.spectrum_a[i]) +
                               (model.spectrum_b[j + 1] - model.spectrum_b[j]);
            table.gaps[i][j] = gap;
            if (first || gap > table.de_max) table.de_max = gap;
            first = false;
        }
    }
    table.de11 = table.gaps[0][0];
    return table;
}

complex first_order_M(const DirectModel& model, Temperature temperature, double t, int i, int k,
                      int j, int l) {
    validate_model(model);
    const int na = static_cast<int>(model.spectrum_a.size());
    const int nb = static_cast<int>(model.spectrum_b.size());
    for (int idx : {i, j})
        if (idx < 0 || idx >= na) throw IndexOutOfRange("first_order_M: a-level out of range");
    for (int idx : {k, l})
        if (idx < 0 || idx >= nb) throw IndexOutOfRange("first_order_M: b-level out of range");

    const std::vector<double> pa = gibbs_populations(model.spectrum_a, temperature);
    const std::vector<double> pb = gibbs_populations(model.spectrum_b, temperature);
    const double p_il = pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(l)];
    const double p_jk = pa[static_cast<std::size_t>(j)] * pb[static_cast<std::size_t>(k)];

    // Transition energy of the underlying state element <jk| rho |il>.
    const double delta = model.spectrum_a[static_cast<std::size_t>(i)] -
                         model.spectrum_a[static_cast<std::size_t>(j)] +
                         model.spectrum_b[static_cast<std::size_t>(l)] -
                         model.spectrum_b[static_cast<std::size_t>(k)];

    complex coupling(0.0, 0.0);
    for (const CouplingTerm& term : model.couplings)
        coupling += term.gamma * term.v_a.at(j, i) * term.v_b.at(k, l);

    // Degenerate phase-factor limit; the population difference vanishes here.
    if (i == j && k == l) return coupling * (p_il - p_jk) * complex(0.0, -t);
    if (coupling == complex(0.0)) return complex(0.0, 0.0);
    if (std::abs(delta) < kResonanceFloor)
        throw ResonantDenominator("first_order_M: coupled resonant transition");
    const complex phase = (std::exp(complex(0.0, -delta * t)) - complex(1.0, 0.0)) / delta;
    return coupling * (p_il - p_jk) * phase;
}

EffectivePt effective_pt_4x4(const DirectModel& model, Temperature temperature, double t) {
    validate_model(model);
    const std::vector<double> pa = gibbs_populations(model.spectrum_a, temperature);
    const std::vector<double> pb = gibbs_populations(model.spectrum_b, temperature);
    const double p11 = pa[0] * pb[0];
    const double p12 = pa[0] * pb[1];
    const double p21 = pa[1] * pb[0];
    const double p22 = pa[1] * pb[1];
    const complex m1122 = first_order_M(model, temperature, t, 0, 0, 1, 1);
    const complex m1221 = first_order_M(model, temperature, t, 0, 1, 1, 0);

    EffectivePt out;
    out.matrix = ComplexMatrix(4);
    out.matrix.at(0, 0) = p11;
    out.matrix.at(1, 1) = p12;
    out.matrix.at(2, 2) = p21;
    out.matrix.at(3, 3) = p22;
    out.matrix.at(0, 3) = m1122;
    out.matrix.at(3, 0) = std::conj(m1122);
    out.matrix.at(1, 2) = m1221;
    out.matrix.at(2, 1) = std::conj(m1221);

    const double disc = std::sqrt((p12 - p21) * (p12 - p21) + 4.0 * std::norm(m1221));
    out.lambda_minus = 0.5 * (p12 + p21 - disc);
    out.lambda_plus = 0.5 * (p12 + p21 + disc);
    return out;
}

TlbResult tlb_direct(const DirectModel& model) {
    validate_model(model);
    const GapTable table = gap_table(model);
    complex coupling(0.0, 0.0);
    for (const CouplingTerm& term : model.couplings)
        coupling += term.gamma * term.v_a.at(1, 0) * term.v_b.at(1, 0);
    const double argument = (2.0 / table.de11) * std::abs(coupling);
    return make_tlb(TlbCase::direct, table.de11, argument);
}

double ratio_bound(double x, double gamma) {
    if (!(x > 0.0)) throw NonpositiveX("ratio_bound: x must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("ratio_bound: gamma must be positive");
    return (1.0 / x) * std::pow(gamma / x, 1.0 / x);
}

double tuc_star(const DirectModel& model, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("tuc_star: gamma must be positive");
    const GapTable table = gap_table(model);
    if (!(gamma < table.de_max))
        throw CouplingTooLarge("tuc_star: coupling not below the largest joint gap");
    return -table.de_max / (2.0 * std::log(gamma / table.de_max));
}

SecondOrderM second_order_M_fast_bath(const IndirectModel& model, double t) {
    validate_model(model);
    const double omega_b = two_level_gap(model.spectrum_b, "second_order_M_fast_bath");
    const double omega_c = two_level_gap(model.spectrum_c, "second_order_M_fast_bath");
    const std::vector<double> pa = gibbs_populations(model.spectrum_a, model.bath_temperature);
    const int na = static_cast<int>(model.spectrum_a.size());
    const double g2 = model.gamma * model.gamma;
    const complex vb21 = model.v_b.at(1, 0);
    const complex vc21 = model.v_c.at(1, 0);
    const double omega_bc = omega_b + omega_c;

    SecondOrderM out;
    out.m1212 = complex(0.0, 0.0);
    out.m2121 = complex(0.0, 0.0);
    out.m1221 = complex(0.0, 0.0);
    double min_bath_gap = 0.0;
    bool first = true;
    const complex cross_phase = complex(1.0, 0.0) - std::exp(complex(0.0, -omega_bc * t));
    for (int m = 0; m < na; ++m) {
        for (int n = 0; n < na; ++n) {
            if (m == n) continue;
            const complex va = model.v_a.at(m, n);
            if (va == complex(0.0)) continue;
            const double omega_mn = model.spectrum_a[static_cast<std::size_t>(m)] -
                                    model.spectrum_a[static_cast<std::size_t>(n)];
            if (std::abs(omega_mn) < kResonanceFloor)
                throw ResonantDenominator("second_order_M_fast_bath: degenerate bath transition");
            if (first || std::abs(omega_mn) < min_bath_gap) min_bath_gap = std::abs(omega_mn);
            first = false;
            const double weight = pa[static_cast<std::size_t>(n)] * std::norm(va);
            const double inv_sq = 1.0 / (omega_mn * omega_mn);
            const double sc = std::sin(0.5 * (omega_mn + omega_c) * t);
            const double sb = std::sin(0.5 * (omega_mn + omega_b) * t);
            out.m1212 += 4.0 * g2 * weight * std::norm(vc21) * sc * sc * inv_sq;
            out.m2121 += 4.0 * g2 * weight * std::norm(vb21) * sb * sb * inv_sq;
            out.m1221 += 2.0 * g2 * weight * vb21 * vc21 * cross_phase / (omega_mn * omega_bc);
        }
    }
    const double max_system_gap = std::max(omega_b, omega_c);
    out.timescale_ratio = first ? 0.0 : min_bath_gap / max_system_gap;
    out.timescale_warning = out.timescale_ratio < 5.0;
    return out;
}

TlbResult tlb_slow_fast(const IndirectModel& model) {
    validate_model(model);
    const double omega_b = two_level_gap(model.spectrum_b, "tlb_slow_fast");
    const double omega_c = two_level_gap(model.spectrum_c, "tlb_slow_fast");
    TlbResult undefined;
    undefined.kind = TlbCase::slow_fast;
    undefined.value = kNan;
    if (model.bath_temperature.infinite) return undefined;

    const std::vector<double> pa = gibbs_populations(model.spectrum_a, model.bath_temperature);
    const int na = static_cast<int>(model.spectrum_a.size());
    double bath_sum = 0.0;
    for (int m = 0; m < na; ++m) {
        for (int n = 0; n < na; ++n) {
            if (m == n) continue;
            const complex va = model.v_a.at(m, n);
            if (va == complex(0.0)) continue;
            const double omega_mn = model.spectrum_a[static_cast<std::size_t>(m)] -
                                    model.spectrum_a[static_cast<std::size_t>(n)];
            if (std::abs(omega_mn) < kResonanceFloor)
                throw ResonantDenominator("tlb_slow_fast: degenerate bath transition");
            bath_sum += pa[static_cast<std::size_t>(n)] * std::norm(va) / omega_mn;
        }
    }
    const double omega_bc = omega_b + omega_c;
    const double argument = 4.0 * model.gamma * model.gamma *
                            std::abs(model.v_b.at(1, 0) * model.v_c.at(1, 0)) / omega_bc *
                            bath_sum;
    return make_tlb(TlbCase::slow_fast, omega_bc, argument);
}

TlbResult tlb_fast_slow(const IndirectModel& model) {
    validate_model(model);
    const double omega_b = two_level_gap(model.spectrum_b, "tlb_fast_slow");
    const double omega_c = two_level_gap(model.spectrum_c, "tlb_fast_slow");
    const double va21 = std::abs(model.v_a.at(1, 0));
    const double argument = 2.0 * model.gamma * model.gamma * std::sqrt(std::abs(kStoredS)) *
                            va21 * va21 * std::abs(model.v_c.at(0, 1)) *
                            std::abs(model.v_b.at(0, 1)) / (omega_b * omega_c);
    return make_tlb(TlbCase::fast_slow, omega_b + omega_c, argument);
}

TlbResult applicable_tlb(const Model& model) {
    if (const auto* direct = std::get_if<DirectModel>(&model)) return tlb_direct(*direct);
    const auto& indirect = std::get<IndirectModel>(model);
    double min_bath_gap = 0.0;
    for (std::size_t i = 0; i + 1 < indirect.spectrum_a.size(); ++i) {
        const double gap = indirect.spectrum_a[i + 1] - indirect.spectrum_a[i];
        if (i == 0 || gap < min_bath_gap) min_bath_gap = gap;
    }
    const double omega_b = two_level_gap(indirect.spectrum_b, "applicable_tlb");
    const double omega_c = two_level_gap(indirect.spectrum_c, "applicable_tlb");
    return min_bath_gap > std::max(omega_b, omega_c) ? tlb_slow_fast(indirect)
                                                     : tlb_fast_slow(indirect);
}

double s_waveform(double t) {
    const double wa = 1.0;
    const double wb = std::sqrt(2.0);
    const double wc = std::sqrt(3.0);
    return std::sin(wa * t) *
           (std::sin(wb * t) + std::sin(wc * t) - std::sin((wa + wb + wc) * t));
}

namespace {

// Ternary search for an extremum of s_waveform on [lo, hi]; sign=+1 maximizes.
double refine_extremum(double lo, double hi, double sign) {
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (sign * s_waveform(m1) < sign * s_waveform(m2))
            lo = m1;
        else
            hi = m2;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SRange s_range(long sample_count) {
    if (sample_count < 1) throw std::invalid_argument("s_range: sample_count must be >= 1");
    const double step = 0.1;
    std::vector<std::pair<double, double>> minima;  // (value, time)
    std::vector<std::pair<double, double>> maxima;

    double prev2 = s_waveform(0.0);
    double prev1 = s_waveform(step);
    SRange range{std::min(prev2, prev1), std::max(prev2, prev1)};
    for (long k = 2; k <= sample_count + 1; ++k) {
        const double t = step * static_cast<double>(k);
        const double value = s_waveform(t);
        range.min = std::min(range.min, value);
        range.max = std::max(range.max, value);
        if (prev1 < prev2 && prev1 < value) minima.emplace_back(prev1, t - step);
        if (prev1 > prev2 && prev1 > value) maxima.emplace_back(prev1, t - step);
        prev2 = prev1;
        prev1 = value;
    }

    const std::size_t keep = 32;
    std::sort(minima.begin(), minima.end());
    std::sort(maxima.begin(), maxima.end(), std::greater<>());
    for (std::size_t c = 0; c < std::min(keep, minima.size()); ++c) {
        const double t = refine_extremum(minima[c].second - step, minima[c].second + step, -1.0);
        range.min = std::min(range.min, s_waveform(t));
    }
    for (std::size_t c = 0; c < std::min(keep, maxima.size()); ++c) {
        const double t = refine_extremum(maxima[c].second - step, maxima[c].second + step, 1.0);
        range.max = std::max(range.max, s_waveform(t));
    }
    return range;
}

}  // namespace entdyn
