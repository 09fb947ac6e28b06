#pragma once

#include <vector>

#include "entdyn/dynamics.hpp"
#include "entdyn/matrix.hpp"
#include "entdyn/models.hpp"
#include "entdyn/thermal.hpp"

namespace entdyn {

// ---- errors ----

struct NonpositiveX : std::invalid_argument {
    explicit NonpositiveX(const std::string& what) : std::invalid_argument(what) {}
};

struct CouplingTooLarge : std::invalid_argument {
    explicit CouplingTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

// ---- joint excitation gaps ----

// gaps[i][j] = (a gap above level i) + (b gap above level j), adjacent levels.
struct GapTable {
    double de11 = 0.0;  // lowest joint excitation, gaps[0][0]
    std::vector<std::vector<double>> gaps;
    double de_max = 0.0;
};

GapTable gap_table(const DirectModel& model);

// ---- lower-bound temperatures ----

enum class TlbCase { direct, slow_fast, fast_slow };

// Closed-form lower-bound temperature. Defined only while the logarithm
// argument (carried as effective_coupling) lies in (0,1); the value is NaN
// and defined = false otherwise.
struct TlbResult {
    double value = 0.0;
    double effective_coupling = 0.0;
    TlbCase kind = TlbCase::direct;
    bool defined = false;
};

// ---- first-order perturbation theory (direct coupling) ----

// Partial-transpose correction element M_{ik,jl} at time t, summed over
// coupling terms; the phase convention matches first_order_state exactly, so
// M_{ik,jl} = <ik| first_order_state^{T_a} |jl> off the diagonal.
// Level indices are 0-based.
complex first_order_M(const DirectModel& model, Temperature temperature, double t, int i, int k,
                      int j, int l);

// Effective partially transposed matrix on the lowest two levels of each
// subsystem, basis |11>,|12>,|21>,|22>, plus the closed-form eigenvalues of
// its inner 2x2 block. lambda_minus < 0 iff P12*P21 < |M_{12,21}|^2.
struct EffectivePt {
    ComplexMatrix matrix;
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
};

EffectivePt effective_pt_4x4(const DirectModel& model, Temperature temperature, double t);

// T_lb = -dE11 / (2 ln((2/dE11)|sum_i gamma_i <2|V_a^i|1><2|V_b^i|1>|)).
TlbResult tlb_direct(const DirectModel& model);

// (1/x)(gamma/x)^(1/x): bound on the population ratio needed to entangle a
// transition x = dE_ij/dE_11 at coupling gamma.
double ratio_bound(double x, double gamma);

// T_uc* = -dE_max / (2 ln(gamma/dE_max)): upper-critical estimate from the
// largest joint gap.
double tuc_star(const DirectModel& model, double gamma);

// ---- second-order perturbation theory (indirect coupling) ----

// Reduced B(x)C partial-transpose corrections for a fast bath, to second
// order in gamma and leading order in (system gap)/(bath gap).
struct SecondOrderM {
    complex m1212;
    complex m2121;
    complex m1221;
    double timescale_ratio = 0.0;   // min bath gap / max system gap
    bool timescale_warning = false; // ratio < 5
};

SecondOrderM second_order_M_fast_bath(const IndirectModel& model, double t);

// Slow systems, fast bath: T_lb from the second-order amplitude, with the
// bath sum over transitions m,n weighted by thermal populations p_n.
TlbResult tlb_slow_fast(const IndirectModel& model);

// Fast systems, slow bath: T_lb built from the stored extremum constant s.
TlbResult tlb_fast_slow(const IndirectModel& model);

// Formula matching the model: direct coupling uses tlb_direct; indirect
// models pick slow-fast when the smallest adjacent bath gap exceeds the
// largest system gap, fast-slow otherwise.
TlbResult applicable_tlb(const Model& model);

// Reference value used by tlb_fast_slow for the minimum of
// S(t) = sin(w_a t)[sin(w_b t) + sin(w_c t) - sin((w_a+w_b+w_c) t)].
inline constexpr double kStoredS = -1.6834;

// Extrema of S over a dense sweep at incommensurate frequencies (1, sqrt 2,
// sqrt 3), refined by local search around the best samples.
struct SRange {
    double min = 0.0;
    double max = 0.0;
};

SRange s_range(long sample_count);

// S(t) itself, exposed for property checks.
double s_waveform(double t);

}  // namespace entdyn
