#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "entdyn/dynamics.hpp"
#include "entdyn/io.hpp"
#include "entdyn/metrics.hpp"
#include "entdyn/models.hpp"
#include "entdyn/predictors.hpp"
#include "entdyn/sweep.hpp"
#include "entdyn/thermal.hpp"

namespace {

using namespace entdyn;

// ENTDYN_THREADS overrides the worker-pool width when set to a positive integer.
int worker_width() {
    if (const char* env = std::getenv("ENTDYN_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed > 0) return static_cast<int>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

Temperature parse_temperature(const std::string& text) {
    if (text == "inf") return Temperature::inf();
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw SchemaError("temperature: trailing characters in " + text);
        return to_temperature(value);
    } catch (const std::logic_error&) {
        throw SchemaError("temperature: expected a number or \"inf\", got " + text);
    }
}

// "out/fig1.csv" + "_boundary" -> "out/fig1_boundary.csv".
std::string with_stem_suffix(const std::string& path, const std::string& suffix) {
    const auto slash = path.find_last_of("/\\");
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        out.push_back(points == 1 ? lo : lo + (hi - lo) * k / (points - 1));
    return out;
}

const char* tlb_kind_name(TlbCase kind) {
    switch (kind) {
        case TlbCase::direct: return "direct";
        case TlbCase::slow_fast: return "slow-fast";
        case TlbCase::fast_slow: return "fast-slow";
    }
    return "unknown";
}

// Model, horizon, and numeric knobs shared by the model-driven subcommands.
struct ModelOptions {
    std::string config_path;
    std::string preset;
    std::string bath_coupling = "tridiagonal";
    double gamma = 0.0;
    double threshold = kVerdictThreshold;
    double tolerance = kBisectionTol;
    double scale = 1.0;
    double t_end = 0.0;
    int steps = 0;

    CLI::Option* config_opt = nullptr;
    CLI::Option* preset_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;
    CLI::Option* threshold_opt = nullptr;
    CLI::Option* tolerance_opt = nullptr;
    CLI::Option* scale_opt = nullptr;
    CLI::Option* t_end_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
};

void add_model_options(CLI::App* cmd, ModelOptions& o) {
    o.config_opt = cmd->add_option("--config", o.config_path, "JSON experiment config");
    o.preset_opt =
        cmd->add_option("--preset", o.preset,
                        "Preset: two-spin, fourlevel-a, fourlevel-b, slow-spins-fast-bath, "
                        "fast-spins-slow-bath");
    o.preset_opt->excludes(o.config_opt);
    cmd->add_option("--bath-coupling", o.bath_coupling,
                    "Bath coupling shape for indirect presets")
        ->check(CLI::IsMember({"tridiagonal", "identity"}));
    o.gamma_opt = cmd->add_option("--gamma", o.gamma, "Coupling strength override");
    o.threshold_opt =
        cmd->add_option("--threshold", o.threshold, "Entanglement verdict threshold");
    o.tolerance_opt = cmd->add_option("--tolerance", o.tolerance, "Bisection tolerance");
    o.scale_opt = cmd->add_option("--horizon-multiplier", o.scale,
                                  "Stretch the automatic horizon by this factor");
    o.t_end_opt = cmd->add_option("--t-end", o.t_end, "Explicit horizon end time");
    o.steps_opt = cmd->add_option("--steps", o.steps, "Explicit horizon step count");
}

ExperimentConfig resolve_config(const ModelOptions& o) {
    ExperimentConfig config;
    if (o.config_opt->count() > 0) {
        config = parse_config_file(o.config_path);
    } else if (o.preset_opt->count() > 0) {
        config.preset = o.preset;
        config.bath_coupling_identity = o.bath_coupling == "identity";
        try {
            preset_from_name(o.preset);
        } catch (const std::invalid_argument& e) {
            throw SchemaError(e.what());
        }
    } else {
        throw SchemaError("either --config or --preset is required");
    }
    if (o.gamma_opt->count() > 0) config.gamma = o.gamma;
    if (o.threshold_opt->count() > 0) config.threshold = o.threshold;
    if (o.tolerance_opt->count() > 0) config.tolerance = o.tolerance;
    if (o.scale_opt->count() > 0) config.horizon.scale = o.scale;
    if (o.t_end_opt->count() > 0 || o.steps_opt->count() > 0) {
        if (!(o.t_end > 0.0) || o.steps < 1)
            throw SchemaError("--t-end and --steps must both be given, with t_end > 0, steps >= 1");
        config.horizon.explicit_grid = TimeGrid{o.t_end, o.steps};
    }
    if (!(config.threshold >= 0.0)) throw SchemaError("threshold must be >= 0");
    if (!(config.tolerance > 0.0)) throw SchemaError("tolerance must be > 0");
    return config;
}

int run_tlb(const ModelOptions& o) {
    const ExperimentConfig config = resolve_config(o);
    const Model model = config_model(config);
    const TlbResult result = applicable_tlb(model);
    if (result.defined)
        std::cout << "T_lb = " << format_float(result.value) << '\n';
    else
        std::cout << "T_lb = undefined (log argument outside (0,1))\n";
    std::cout << "log_argument = " << format_float(result.effective_coupling) << '\n';
    std::cout << "kind = " << tlb_kind_name(result.kind) << '\n';
    return 0;
}

int run_evolve(const ModelOptions& o, const std::string& temperature_text,
               const std::string& csv_arg, const std::string& series_arg) {
    const ExperimentConfig config = resolve_config(o);
    const Model model = config_model(config);
    const Temperature temperature = parse_temperature(temperature_text);

    const PointEvaluator evaluator(model, config.horizon);
    const ScanStats stats = evaluator.scan(temperature, ScanMode::full, config.threshold);

    SweepResult summary;
    SweepRow row;
    row.gamma = reference_gamma(model);
    row.temperature = temperature.infinite ? std::numeric_limits<double>::infinity()
                                           : temperature.value;
    row.horizon = evaluator.grid().t_end;
    row.min_pt_eig = stats.min_eig;
    row.neg_avg = stats.negativity_avg;
    row.entangled = stats.min_eig < -config.threshold;
    summary.rows.push_back(row);

    const std::string csv = sweep_csv(summary);
    const std::string csv_path = !csv_arg.empty() ? csv_arg : config.csv_path;
    if (!csv_path.empty())
        write_text_file(csv_path, csv);
    else
        std::cout << csv;

    if (!series_arg.empty()) {
        const Scenario sc = make_scenario(model, temperature);
        const SpectralPropagator prop(sc.h_total);
        const ComplexMatrix rho_eig = prop.to_eigenbasis(sc.rho0.matrix);
        ComplexMatrix state(prop.dim());
        ComplexMatrix scratch(prop.dim());
        const TimeGrid& grid = evaluator.grid();
        std::vector<SeriesPoint> series;
        series.reserve(static_cast<std::size_t>(grid.steps) + 1);
        for (int k = 0; k <= grid.steps; ++k) {
            const double t = grid.sample(k);
            prop.state_at(rho_eig, t, state, scratch);
            ComplexMatrix reduced =
                sc.keep.empty() ? state : partial_trace(state, sc.rho0.space, sc.keep);
            DensityMatrix rho;
            rho.matrix = std::move(reduced);
            rho.space = sc.metric_space;
            SeriesPoint point;
            point.t = t;
            point.min_pt_eig = min_pt_eig(rho, sc.part);
            point.negativity = negativity(rho, sc.part);
            series.push_back(point);
        }
        write_text_file(series_arg, series_csv(series));
    }
    return 0;
}

int run_curve(const ModelOptions& o, const std::vector<double>& t_range, int points,
              bool range_given, const std::string& csv_arg, const std::string& svg_arg) {
    const ExperimentConfig config = resolve_config(o);
    const Model model = config_model(config);

    std::vector<double> temperatures;
    if (range_given)
        temperatures = linspace(t_range[0], t_range[1], points);
    else if (!config.temperatures.empty())
        temperatures = config.temperatures;
    else
        throw SchemaError("negativity-curve needs --t-lo/--t-hi or config temperatures");

    const NegativityCurve curve = negativity_curve(model, temperatures, config.horizon,
                                                   config.tolerance, config.threshold,
                                                   worker_width());

    const std::string csv_path = !csv_arg.empty() ? csv_arg : config.csv_path;
    if (csv_path.empty()) throw SchemaError("negativity-curve needs an output CSV path (--csv)");
    write_text_file(csv_path, sweep_csv(curve.sweep));
    write_text_file(with_stem_suffix(csv_path, "_annotations"),
                    annotations_csv(curve.annotations));
    const std::string svg_path =
        !svg_arg.empty() ? svg_arg : (config.svg_path ? *config.svg_path : std::string());
    if (!svg_path.empty()) write_text_file(svg_path, curve_svg(curve));
    return 0;
}

int run_phase_diagram(const ModelOptions& o, const std::vector<double>& gamma_grid,
                      const std::vector<double>& t_range, bool range_given,
                      const std::string& csv_arg, const std::string& svg_arg) {
    const ExperimentConfig config = resolve_config(o);
    const Model model = config_model(config);

    std::vector<double> gammas = !gamma_grid.empty() ? gamma_grid : config.gamma_grid;
    if (gammas.empty())
        throw SchemaError("phase-diagram needs --gamma-grid or config gamma_grid");
    double t_lo = 0.0;
    double t_hi = 0.0;
    if (range_given) {
        t_lo = t_range[0];
        t_hi = t_range[1];
    } else if (config.t_bracket) {
        t_lo = config.t_bracket->first;
        t_hi = config.t_bracket->second;
    } else {
        throw SchemaError("phase-diagram needs --t-lo/--t-hi or config temperatures.bracket");
    }

    const PhaseDiagram diagram = phase_diagram(model, gammas, t_lo, t_hi, config.horizon,
                                               config.tolerance, config.threshold,
                                               worker_width());

    const std::string csv_path = !csv_arg.empty() ? csv_arg : config.csv_path;
    if (csv_path.empty()) throw SchemaError("phase-diagram needs an output CSV path (--csv)");
    write_text_file(csv_path, sweep_csv(diagram.sweep));
    write_text_file(with_stem_suffix(csv_path, "_boundary"), boundary_csv(diagram.boundary));
    const std::string svg_path =
        !svg_arg.empty() ? svg_arg : (config.svg_path ? *config.svg_path : std::string());
    if (!svg_path.empty()) write_text_file(svg_path, phase_diagram_svg(diagram));

    bool all_failed = !diagram.boundary.empty();
    for (const PhaseBoundaryRow& row : diagram.boundary)
        if (!row.bracket_failed) all_failed = false;
    if (all_failed) {
        std::cerr << "error: no critical temperature bracketed for any gamma; partial CSV kept\n";
        return 3;
    }
    return 0;
}

int run_s_range(long samples) {
    const SRange range = s_range(samples);
    std::cout << "min = " << format_float(range.min) << '\n';
    std::cout << "max = " << format_float(range.max) << '\n';
    std::cout << "samples = " << samples << '\n';
    return 0;
}

int run_validate(const ModelOptions& o) {
    std::vector<std::string> findings;
    try {
        const ExperimentConfig config = resolve_config(o);
        findings = validate_findings(config);
    } catch (const SchemaError& e) {
        findings.push_back(e.what());
    }
    if (findings.empty()) {
        std::cout << "no findings\n";
    } else {
        for (const std::string& finding : findings) std::cout << "finding: " << finding << '\n';
    }
    return 0;
}

int run_reproduce(const std::string& figure, const std::string& csv_arg,
                  const std::string& svg_arg) {
    const std::string csv_path = !csv_arg.empty() ? csv_arg : figure + ".csv";
    const std::string svg_path = !svg_arg.empty() ? svg_arg : figure + ".svg";
    const int threads = worker_width();
    const HorizonSpec horizon;

    if (figure == "fig1" || figure == "fig2" || figure == "fig3") {
        Model model;
        std::vector<double> gammas;
        double t_lo = 0.0;
        double t_hi = 0.0;
        if (figure == "fig1") {
            model = make_preset(ModelPreset::two_spin);
            for (int k = 0; k <= 8; ++k) gammas.push_back(std::pow(10.0, -3.0 + 0.25 * k));
            t_lo = 0.05;
            t_hi = 0.8;
        } else if (figure == "fig2") {
            model = make_preset(ModelPreset::slow_spins_fast_bath);
            gammas = {0.1, 0.2, 0.3, 0.5, 1.0};
            t_lo = 0.05;
            t_hi = 1.0;
        } else {
            model = make_preset(ModelPreset::fast_spins_slow_bath);
            gammas = {0.3, 0.5, 0.7, 1.0};
            t_lo = 0.5;
            t_hi = 4.0;
        }
        const PhaseDiagram diagram = phase_diagram(model, gammas, t_lo, t_hi, horizon,
                                                   kBisectionTol, kVerdictThreshold, threads);
        write_text_file(csv_path, sweep_csv(diagram.sweep));
        write_text_file(with_stem_suffix(csv_path, "_boundary"), boundary_csv(diagram.boundary));
        write_text_file(svg_path, phase_diagram_svg(diagram));
        return 0;
    }

    const Model model = figure == "fig4" ? make_preset(ModelPreset::fourlevel_a)
                                         : make_preset(ModelPreset::fourlevel_b);
    const double t_hi = figure == "fig4" ? 1.0 : 1.2;
    NegativityCurve curve = negativity_curve(model, linspace(0.05, t_hi, 20), horizon,
                                             kBisectionTol, kVerdictThreshold, threads);
    // The spacing-based upper estimate is plotted on fig5 only.
    if (figure == "fig4") curve.annotations.t_uc_star = std::numeric_limits<double>::quiet_NaN();
    write_text_file(csv_path, sweep_csv(curve.sweep));
    write_text_file(with_stem_suffix(csv_path, "_annotations"), annotations_csv(curve.annotations));
    write_text_file(svg_path, curve_svg(curve));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement dynamics of weakly coupled thermal systems"};
    app.require_subcommand(1);

    ModelOptions tlb_opts;
    CLI::App* tlb_cmd =
        app.add_subcommand("tlb", "Closed-form lower critical temperature and its log argument");
    add_model_options(tlb_cmd, tlb_opts);

    ModelOptions evolve_opts;
    std::string evolve_temperature = "0";
    std::string evolve_csv;
    std::string evolve_series;
    CLI::App* evolve_cmd =
        app.add_subcommand("evolve", "Exact evolution at one temperature; summary row CSV");
    add_model_options(evolve_cmd, evolve_opts);
    evolve_cmd->add_option("--temperature", evolve_temperature, "Temperature (number or \"inf\")")
        ->required();
    evolve_cmd->add_option("--csv", evolve_csv, "Summary CSV path (stdout when omitted)");
    evolve_cmd->add_option("--series-csv", evolve_series, "Per-sample t,min_pt_eig,negativity CSV");

    ModelOptions curve_opts;
    double curve_t_lo = 0.0;
    double curve_t_hi = 0.0;
    int curve_points = 20;
    std::string curve_csv;
    std::string curve_svg_path;
    CLI::App* curve_cmd = app.add_subcommand(
        "negativity-curve", "Time-averaged negativity over a temperature grid, with annotations");
    add_model_options(curve_cmd, curve_opts);
    CLI::Option* curve_lo_opt =
        curve_cmd->add_option("--t-lo", curve_t_lo, "Lowest grid temperature");
    CLI::Option* curve_hi_opt =
        curve_cmd->add_option("--t-hi", curve_t_hi, "Highest grid temperature");
    curve_lo_opt->needs(curve_hi_opt);
    curve_hi_opt->needs(curve_lo_opt);
    curve_cmd->add_option("--points", curve_points, "Grid points across the range")
        ->check(CLI::PositiveNumber);
    curve_cmd->add_option("--csv", curve_csv, "Output CSV path");
    curve_cmd->add_option("--svg", curve_svg_path, "Output SVG path");

    ModelOptions phase_opts;
    std::vector<double> phase_gammas;
    double phase_t_lo = 0.0;
    double phase_t_hi = 0.0;
    std::string phase_csv;
    std::string phase_svg;
    CLI::App* phase_cmd = app.add_subcommand(
        "phase-diagram", "Critical-temperature boundary over a coupling grid");
    add_model_options(phase_cmd, phase_opts);
    phase_cmd->add_option("--gamma-grid", phase_gammas, "Coupling strengths (ascending)");
    CLI::Option* phase_lo_opt =
        phase_cmd->add_option("--t-lo", phase_t_lo, "Lower bracket endpoint");
    CLI::Option* phase_hi_opt =
        phase_cmd->add_option("--t-hi", phase_t_hi, "Upper bracket endpoint");
    phase_lo_opt->needs(phase_hi_opt);
    phase_hi_opt->needs(phase_lo_opt);
    phase_cmd->add_option("--csv", phase_csv, "Output CSV path");
    phase_cmd->add_option("--svg", phase_svg, "Output SVG path");

    long srange_samples = 2000000;
    CLI::App* srange_cmd =
        app.add_subcommand("s-range", "Extrema of the oscillatory waveform S(t)");
    srange_cmd->add_option("--samples", srange_samples, "Coarse sweep sample count")
        ->check(CLI::PositiveNumber);

    ModelOptions validate_opts;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Report config findings; findings are data, exit 0");
    add_model_options(validate_cmd, validate_opts);

    std::string reproduce_figure;
    std::string reproduce_csv;
    std::string reproduce_svg;
    CLI::App* reproduce_cmd =
        app.add_subcommand("reproduce", "Preset experiments emitting figure CSV + SVG");
    reproduce_cmd->add_option("figure", reproduce_figure, "One of fig1..fig5")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
    reproduce_cmd->add_option("--csv", reproduce_csv, "Output CSV path (default <figure>.csv)");
    reproduce_cmd->add_option("--svg", reproduce_svg, "Output SVG path (default <figure>.svg)");

    try {
        app.parse(argc, argv);
        if (*tlb_cmd) return run_tlb(tlb_opts);
        if (*evolve_cmd) return run_evolve(evolve_opts, evolve_temperature, evolve_csv,
                                           evolve_series);
        if (*curve_cmd)
            return run_curve(curve_opts, {curve_t_lo, curve_t_hi}, curve_points,
                             curve_lo_opt->count() > 0, curve_csv, curve_svg_path);
        if (*phase_cmd)
            return run_phase_diagram(phase_opts, phase_gammas, {phase_t_lo, phase_t_hi},
                                     phase_lo_opt->count() > 0, phase_csv, phase_svg);
        if (*srange_cmd) return run_s_range(srange_samples);
        if (*validate_cmd) return run_validate(validate_opts);
        if (*reproduce_cmd) return run_reproduce(reproduce_figure, reproduce_csv, reproduce_svg);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BracketFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
