#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "entdyn/dynamics.hpp"
#include "entdyn/metrics.hpp"
#include "entdyn/models.hpp"
#include "entdyn/predictors.hpp"

namespace entdyn {

// No verdict change found between the bracket endpoints after expansion.
struct BracketFailure : std::runtime_error {
    explicit BracketFailure(const std::string& what) : std::runtime_error(what) {}
};

// Default bisection tolerance in temperature units.
inline constexpr double kBisectionTol = 1e-3;

// Number of coarse-scan points between the bracket endpoints, inclusive.
inline constexpr int kCoarsePoints = 16;

struct CriticalTemperatureResult {
    double t_uc_numeric = 0.0;  // largest T whose verdict is entangled
    double t_lc_numeric = 0.0;  // smallest T whose verdict is ppt
    bool monotone = false;      // exactly one verdict change on the coarse scan
};

struct SweepRow {
    double gamma = 0.0;
    double temperature = 0.0;  // +inf allowed
    double horizon = 0.0;
    double min_pt_eig = 0.0;
    double neg_avg = 0.0;
    bool entangled = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (gamma, temperature)
};

// Per-gamma boundary fit next to the applicable closed-form estimate.
struct PhaseBoundaryRow {
    double gamma = 0.0;
    double t_lc_numeric = 0.0;
    double t_uc_numeric = 0.0;
    double t_lb_formula = 0.0;  // NaN when the formula is undefined
    double log_argument = 0.0;
    bool monotone = false;
    bool bracket_failed = false;
};

struct PhaseDiagram {
    SweepResult sweep;
    std::vector<PhaseBoundaryRow> boundary;
};

// Vertical markers for the negativity-vs-temperature plot; NaN when absent.
struct CurveAnnotations {
    double t_lb = 0.0;
    double t_uc_numeric = 0.0;
    double t_uc_star = 0.0;
};

struct NegativityCurve {
    SweepResult sweep;
    CurveAnnotations annotations;
};

// Explicit grid wins; otherwise the exact-dynamics default scaled by `scale`.
struct HorizonSpec {
    std::optional<TimeGrid> explicit_grid;
    double scale = 1.0;
};

// Temperature from a CSV-facing double; +inf maps to the infinite flag.
Temperature to_temperature(double value);

// Default grid for the model as built (couplings included).
TimeGrid model_default_grid(const Model& model, double scale = 1.0);

// Shared eigendecomposition for scanning one model at many temperatures.
class PointEvaluator {
public:
    PointEvaluator(Model model, const HorizonSpec& horizon);

    const TimeGrid& grid() const { return grid_; }
    ScanStats scan(Temperature temperature, ScanMode mode, double threshold) const;
    bool entangled_verdict(Temperature temperature, double threshold) const;

private:
    Model model_;
    TimeGrid grid_;
    std::optional<SpectralPropagator> prop_;
};

// Coarse scan between the bracket endpoints, bisection of the outermost two
// verdict changes. The bracket auto-expands up to three doublings per side;
// BracketFailure if the endpoints still agree.
CriticalTemperatureResult find_critical_T(const Model& model, double gamma, const TimeGrid& grid,
                                          double t_lo, double t_hi, double tol = kBisectionTol,
                                          double threshold = kVerdictThreshold);

// One boundary per gamma plus the coarse-scan rows; per-gamma bracket
// failures are recorded, not fatal.
PhaseDiagram phase_diagram(const Model& model, const std::vector<double>& gamma_values,
                           double t_lo, double t_hi, const HorizonSpec& horizon,
                           double tol = kBisectionTol, double threshold = kVerdictThreshold,
                           int threads = 1);

// Time-averaged negativity per temperature with boundary annotations.
NegativityCurve negativity_curve(const Model& model, const std::vector<double>& temperatures,
                                 const HorizonSpec& horizon, double tol = kBisectionTol,
                                 double threshold = kVerdictThreshold, int threads = 1);

}  // namespace entdyn
