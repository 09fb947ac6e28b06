#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entdyn/metrics.hpp"
#include "entdyn/models.hpp"
#include "entdyn/sweep.hpp"

namespace entdyn {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Coupled transitions with |energy difference| below this draw a validation
// warning (looser than the hard resonance floor on purpose).
inline constexpr double kResonanceWarning = 1e-6;

// Shortest decimal text at 9 significant digits; "inf"/"nan" pass through.
std::string format_float(double value);

// Header gamma,T,horizon,min_pt_eig,neg_avg,verdict; verdict is
// entangled|ppt; '\n' line endings throughout.
std::string sweep_csv(const SweepResult& result);

// Header gamma,T_lc_numeric,T_uc_numeric,T_lb_formula,log_argument,monotone.
std::string boundary_csv(const std::vector<PhaseBoundaryRow>& rows);

// Header t_lb,t_uc_numeric,t_uc_star; one row.
std::string annotations_csv(const CurveAnnotations& annotations);

struct SeriesPoint {
    double t = 0.0;
    double min_pt_eig = 0.0;
    double negativity = 0.0;
};

// Header t,min_pt_eig,negativity.
std::string series_csv(const std::vector<SeriesPoint>& points);

void write_text_file(const std::string& path, const std::string& content);

// One experiment: a model (preset or inline), the swept quantities, horizon
// and output choices. Exactly one of preset / inline model is set.
struct ExperimentConfig {
    std::optional<std::string> preset;
    bool bath_coupling_identity = false;
    std::optional<Model> inline_model;
    std::optional<double> gamma;
    std::vector<double> gamma_grid;
    std::vector<double> temperatures;
    std::optional<std::pair<double, double>> t_bracket;
    HorizonSpec horizon;
    std::string csv_path;
    std::optional<std::string> svg_path;
    double threshold = kVerdictThreshold;
    double tolerance = kBisectionTol;
};

// JSON config ingestion; structural problems raise SchemaError, unreadable
// files raise IoError.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Model named by the config, with any gamma override applied.
Model config_model(const ExperimentConfig& config);

// Semantic findings: non-Hermitian couplings, non-ascending spectra,
// near-resonant coupled transitions, indirect timescale-ratio warnings.
// Empty for clean configs; findings are data, never exceptions.
std::vector<std::string> validate_findings(const ExperimentConfig& config);

// 1/T against ln(1/gamma): numeric boundary, dashed formula, shaded
// entangled region.
std::string phase_diagram_svg(const PhaseDiagram& diagram);

// Time-averaged negativity against T with dashed boundary verticals.
std::string curve_svg(const NegativityCurve& curve);

}  // namespace entdyn
