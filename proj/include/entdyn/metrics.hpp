#pragma once

#include "entdyn/dynamics.hpp"
#include "entdyn/hilbert.hpp"
#include "entdyn/models.hpp"
#include "entdyn/thermal.hpp"

namespace entdyn {

// Verdict threshold guarding against eigensolver noise around zero.
inline constexpr double kVerdictThreshold = 1e-10;

// Negativity below this is reported as exactly zero.
inline constexpr double kNegativityClamp = 1e-13;

// Outcome of a minimal-PT-eigenvalue scan over a horizon.
struct PTVerdict {
    double min_eig_over_time = 0.0;
    double time_of_min = 0.0;
    bool entangled = false;
    double threshold = kVerdictThreshold;
};

// Minimal eigenvalue of the partially transposed state.
double min_pt_eig(const DensityMatrix& rho, const Bipartition& part,
                  TransposeSide side = TransposeSide::left);

// (trace norm of the partial transpose - 1)/2; equals |sum of negative PT
// eigenvalues|; clamped to 0 below kNegativityClamp.
double negativity(const DensityMatrix& rho, const Bipartition& part,
                  TransposeSide side = TransposeSide::left);

// Arithmetic mean of negativity over all grid samples.
double time_averaged_negativity(const Trajectory& traj, const Bipartition& part);

// Ready-to-scan setup: total Hamiltonian, initial thermal product state, the
// slots kept before the metric (empty = all), and the bipartition on them.
struct Scenario {
    ComplexMatrix h_total;
    DensityMatrix rho0;
    std::vector<int> keep;
    CompositeSpace metric_space;
    Bipartition part;
};

// Direct models: both subsystems thermal at `temperature`, metric on A|B.
// Indirect models: bath at its own temperature, B and C at `temperature`,
// metric on B|C after tracing out the bath.
Scenario make_scenario(const Model& model, Temperature temperature);

// Full scans visit every sample and accumulate the negativity average;
// verdict scans stop at the first eigenvalue below -threshold.
enum class ScanMode { full, verdict_only };

struct ScanStats {
    double min_eig = 0.0;
    double time_of_min = 0.0;
    double negativity_avg = 0.0;  // full mode only
    bool early_exited = false;
};

ScanStats scan_min_pt(const Scenario& sc, const TimeGrid& grid, double threshold, ScanMode mode);

// Same scan with a caller-owned propagator (one decomposition, many states).
ScanStats scan_min_pt_with(const SpectralPropagator& prop, const Scenario& sc,
                           const TimeGrid& grid, double threshold, ScanMode mode);

// Scans the full horizon and records the global minimum and verdict.
PTVerdict entangles_within_horizon(const Model& model, Temperature temperature,
                                   const TimeGrid& grid, double threshold = kVerdictThreshold);

}  // namespace entdyn
