#include "entdyn/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "entdyn/predictors.hpp"

namespace entdyn {

namespace {

using nlohmann::json;

const char* verdict_word(bool entangled) { return entangled ? "entangled" : "ppt"; }
const char* bool_word(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_float(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "gamma,T,horizon,min_pt_eig,neg_avg,verdict\n";
    for (const SweepRow& row : result.rows) {
        out += format_float(row.gamma);
        out += ',';
        out += format_float(row.temperature);
        out += ',';
        out += format_float(row.horizon);
        out += ',';
        out += format_float(row.min_pt_eig);
        out += ',';
        out += format_float(row.neg_avg);
        out += ',';
        out += verdict_word(row.entangled);
        out += '\n';
    }
    return out;
}

std::string boundary_csv(const std::vector<PhaseBoundaryRow>& rows) {
    std::string out = "gamma,T_lc_numeric,T_uc_numeric,T_lb_formula,log_argument,monotone\n";
    for (const PhaseBoundaryRow& row : rows) {
        out += format_float(row.gamma);
        out += ',';
        out += format_float(row.t_lc_numeric);
        out += ',';
        out += format_float(row.t_uc_numeric);
        out += ',';
        out += format_float(row.t_lb_formula);
        out += ',';
        out += format_float(row.log_argument);
        out += ',';
        out += bool_word(row.monotone && !row.bracket_failed);
        out += '\n';
    }
    return out;
}

std::string annotations_csv(const CurveAnnotations& annotations) {
    std::string out = "t_lb,t_uc_numeric,t_uc_star\n";
    out += format_float(annotations.t_lb);
    out += ',';
    out += format_float(annotations.t_uc_numeric);
    out += ',';
    out += format_float(annotations.t_uc_star);
    out += '\n';
    return out;
}

std::string series_csv(const std::vector<SeriesPoint>& points) {
    std::string out = "t,min_pt_eig,negativity\n";
    for (const SeriesPoint& p : points) {
        out += format_float(p.t);
        out += ',';
        out += format_float(p.min_pt_eig);
        out += ',';
        out += format_float(p.negativity);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open for writing: " + path);
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!file) throw IoError("write failed: " + path);
}

// ---- config parsing ----

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
    throw SchemaError("config." + where + ": " + what);
}

double require_number(const json& j, const std::string& where) {
    if (!j.is_number()) schema_fail(where, "expected a number");
    return j.get<double>();
}

// Number or the string "inf".
double number_or_inf(const json& j, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return std::numeric_limits<double>::infinity();
    return require_number(j, where);
}

std::vector<double> require_number_array(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) schema_fail(where, "expected a nonempty array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const json& item : j) out.push_back(require_number(item, where));
    return out;
}

ComplexMatrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) schema_fail(where, "expected a nested array of [re, im] pairs");
    const int n = static_cast<int>(j.size());
    ComplexMatrix m(n);
    for (int r = 0; r < n; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            schema_fail(where, "matrix rows must all have the outer length");
        for (int c = 0; c < n; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || cell.size() != 2)
                schema_fail(where, "each entry must be an [re, im] pair");
            m.at(r, c) = complex(require_number(cell[0], where), require_number(cell[1], where));
        }
    }
    return m;
}

Model parse_inline_model(const json& j) {
    const bool indirect = j.contains("spectrum_c");
    if (indirect) {
        IndirectModel model;
        model.spectrum_a = require_number_array(j.at("spectrum_a"), "model.spectrum_a");
        model.spectrum_b = require_number_array(j.at("spectrum_b"), "model.spectrum_b");
        model.spectrum_c = require_number_array(j.at("spectrum_c"), "model.spectrum_c");
        if (!j.contains("gamma")) schema_fail("model", "indirect model requires gamma");
        model.gamma = require_number(j.at("gamma"), "model.gamma");
        model.v_a = parse_matrix(j.at("v_a"), "model.v_a");
        model.v_b = parse_matrix(j.at("v_b"), "model.v_b");
        model.v_c = parse_matrix(j.at("v_c"), "model.v_c");
        if (!j.contains("bath_temperature"))
            schema_fail("model", "indirect model requires bath_temperature");
        const double bath = number_or_inf(j.at("bath_temperature"), "model.bath_temperature");
        model.bath_temperature =
            std::isinf(bath) ? Temperature::inf() : Temperature(bath);
        return model;
    }
    DirectModel model;
    model.spectrum_a = require_number_array(j.at("spectrum_a"), "model.spectrum_a");
    model.spectrum_b = require_number_array(j.at("spectrum_b"), "model.spectrum_b");
    if (!j.contains("couplings") || !j.at("couplings").is_array() || j.at("couplings").empty())
        schema_fail("model.couplings", "expected a nonempty array");
    for (const json& term : j.at("couplings")) {
        CouplingTerm parsed;
        parsed.gamma = require_number(term.at("gamma"), "model.couplings.gamma");
        parsed.v_a = parse_matrix(term.at("v_a"), "model.couplings.v_a");
        parsed.v_b = parse_matrix(term.at("v_b"), "model.couplings.v_b");
        model.couplings.push_back(std::move(parsed));
    }
    return model;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("config root must be an object");

    ExperimentConfig config;
    if (!j.contains("model")) throw SchemaError("config.model: required");
    const json& model = j.at("model");
    if (model.is_string()) {
        config.preset = model.get<std::string>();
    } else if (model.is_object() && model.contains("preset")) {
        if (!model.at("preset").is_string()) schema_fail("model.preset", "expected a string");
        config.preset = model.at("preset").get<std::string>();
        if (model.contains("bath_coupling")) {
            const json& bc = model.at("bath_coupling");
            if (!bc.is_string() ||
                (bc.get<std::string>() != "tridiagonal" && bc.get<std::string>() != "identity"))
                schema_fail("model.bath_coupling", "expected \"tridiagonal\" or \"identity\"");
            config.bath_coupling_identity = bc.get<std::string>() == "identity";
        }
    } else if (model.is_object()) {
        try {
            config.inline_model = parse_inline_model(model);
        } catch (const json::exception& e) {
            schema_fail("model", std::string("malformed inline model: ") + e.what());
        }
    } else {
        schema_fail("model", "expected a preset name or an inline model object");
    }
    if (config.preset) {
        try {
            preset_from_name(*config.preset);
        } catch (const std::invalid_argument& e) {
            schema_fail("model.preset", e.what());
        }
    }

    if (j.contains("gamma")) config.gamma = require_number(j.at("gamma"), "gamma");
    if (j.contains("gamma_grid"))
        config.gamma_grid = require_number_array(j.at("gamma_grid"), "gamma_grid");

    if (j.contains("temperatures")) {
        const json& temps = j.at("temperatures");
        if (!temps.is_object()) schema_fail("temperatures", "expected an object");
        const int forms = static_cast<int>(temps.contains("grid")) +
                          static_cast<int>(temps.contains("value")) +
                          static_cast<int>(temps.contains("bracket"));
        if (forms != 1) schema_fail("temperatures", "expected exactly one of grid/value/bracket");
        if (temps.contains("grid")) {
            const json& grid = temps.at("grid");
            if (!grid.is_array() || grid.empty())
                schema_fail("temperatures.grid", "expected a nonempty array");
            for (const json& item : grid)
                config.temperatures.push_back(number_or_inf(item, "temperatures.grid"));
        } else if (temps.contains("value")) {
            config.temperatures.push_back(number_or_inf(temps.at("value"), "temperatures.value"));
        } else {
            const json& bracket = temps.at("bracket");
            if (!bracket.is_array() || bracket.size() != 2)
                schema_fail("temperatures.bracket", "expected [lo, hi]");
            config.t_bracket = {require_number(bracket[0], "temperatures.bracket"),
                                require_number(bracket[1], "temperatures.bracket")};
        }
    }

    if (j.contains("horizon")) {
        const json& horizon = j.at("horizon");
        if (horizon.is_string()) {
            if (horizon.get<std::string>() != "auto")
                schema_fail("horizon", "expected \"auto\" or an object");
        } else if (horizon.is_object()) {
            if (horizon.contains("t_end") || horizon.contains("steps")) {
                if (!horizon.contains("t_end") || !horizon.contains("steps"))
                    schema_fail("horizon", "t_end and steps are required together");
                TimeGrid grid;
                grid.t_end = require_number(horizon.at("t_end"), "horizon.t_end");
                if (!horizon.at("steps").is_number_integer())
                    schema_fail("horizon.steps", "expected an integer");
                grid.steps = horizon.at("steps").get<int>();
                if (!(grid.t_end > 0.0) || grid.steps < 1)
                    schema_fail("horizon", "t_end must be > 0 and steps >= 1");
                config.horizon.explicit_grid = grid;
            }
            if (horizon.contains("scale")) {
                config.horizon.scale = require_number(horizon.at("scale"), "horizon.scale");
                if (!(config.horizon.scale > 0.0)) schema_fail("horizon.scale", "must be > 0");
            }
        } else {
            schema_fail("horizon", "expected \"auto\" or an object");
        }
    }

    if (j.contains("outputs")) {
        const json& outputs = j.at("outputs");
        if (!outputs.is_object()) schema_fail("outputs", "expected an object");
        if (outputs.contains("csv")) {
            if (!outputs.at("csv").is_string()) schema_fail("outputs.csv", "expected a string");
            config.csv_path = outputs.at("csv").get<std::string>();
        }
        if (outputs.contains("svg")) {
            if (!outputs.at("svg").is_string()) schema_fail("outputs.svg", "expected a string");
            config.svg_path = outputs.at("svg").get<std::string>();
        }
    }

    if (j.contains("threshold")) {
        config.threshold = require_number(j.at("threshold"), "threshold");
        if (!(config.threshold >= 0.0)) schema_fail("threshold", "must be >= 0");
    }
    if (j.contains("tolerance")) {
        config.tolerance = require_number(j.at("tolerance"), "tolerance");
        if (!(config.tolerance > 0.0)) schema_fail("tolerance", "must be > 0");
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open config: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config_text(buffer.str());
}

Model config_model(const ExperimentConfig& config) {
    if (config.preset) {
        const ModelPreset preset = preset_from_name(*config.preset);
        const double gamma = config.gamma ? *config.gamma : preset_default_gamma(preset);
        return make_preset(preset, gamma, config.bath_coupling_identity);
    }
    if (!config.inline_model) throw SchemaError("config.model: required");
    Model model = *config.inline_model;
    if (config.gamma) model = with_gamma(model, *config.gamma);
    return model;
}

// ---- validation findings ----

namespace {

void check_ascending(const std::vector<double>& spectrum, const std::string& name,
                     std::vector<std::string>& findings) {
    for (std::size_t i = 1; i < spectrum.size(); ++i)
        if (!(spectrum[i] > spectrum[i - 1])) {
            findings.push_back(name + " is not strictly ascending");
            return;
        }
}

void check_hermitian(const ComplexMatrix& m, int expected_dim, const std::string& name,
                     std::vector<std::string>& findings) {
    if (m.n != expected_dim) {
        findings.push_back(name + " has dimension " + std::to_string(m.n) + ", expected " +
                           std::to_string(expected_dim));
        return;
    }
    const double defect = m.hermiticity_defect();
    if (defect > 1e-12)
        findings.push_back(name + " is not Hermitian (relative defect " + format_float(defect) +
                           ")");
}

// Coupled product transitions with |dE| under the warning floor.
void check_resonances(const ComplexMatrix& h, const ComplexMatrix& h_total,
                      std::vector<std::string>& findings) {
    const ComplexMatrix v = h_total - h;
    const int n = h.n;
    int near_resonant = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(v.at(i, j)) < 1e-14) continue;
            const double gap = std::abs(h.at(i, i).real() - h.at(j, j).real());
            if (gap < kResonanceWarning) ++near_resonant;
        }
    }
    if (near_resonant > 0)
        findings.push_back("near-resonant coupled transitions: " + std::to_string(near_resonant) +
                           " pair(s) with |dE| < " + format_float(kResonanceWarning));
}

}  // namespace

std::vector<std::string> validate_findings(const ExperimentConfig& config) {
    std::vector<std::string> findings;
    Model model;
    try {
        model = config_model(config);
    } catch (const SchemaError& e) {
        findings.push_back(e.what());
        return findings;
    } catch (const std::invalid_argument& e) {
        findings.push_back(e.what());
        return findings;
    }

    if (const auto* direct = std::get_if<DirectModel>(&model)) {
        check_ascending(direct->spectrum_a, "spectrum_a", findings);
        check_ascending(direct->spectrum_b, "spectrum_b", findings);
        for (std::size_t i = 0; i < direct->couplings.size(); ++i) {
            const std::string tag = "couplings[" + std::to_string(i) + "]";
            check_hermitian(direct->couplings[i].v_a, static_cast<int>(direct->spectrum_a.size()),
                            tag + ".v_a", findings);
            check_hermitian(direct->couplings[i].v_b, static_cast<int>(direct->spectrum_b.size()),
                            tag + ".v_b", findings);
        }
        if (!findings.empty()) return findings;
        const BuiltDirect built = build_direct(*direct);
        check_resonances(built.h, built.h_total, findings);
        return findings;
    }

    const auto& indirect = std::get<IndirectModel>(model);
    check_ascending(indirect.spectrum_a, "spectrum_a", findings);
    check_ascending(indirect.spectrum_b, "spectrum_b", findings);
    check_ascending(indirect.spectrum_c, "spectrum_c", findings);
    check_hermitian(indirect.v_a, static_cast<int>(indirect.spectrum_a.size()), "v_a", findings);
    check_hermitian(indirect.v_b, static_cast<int>(indirect.spectrum_b.size()), "v_b", findings);
    check_hermitian(indirect.v_c, static_cast<int>(indirect.spectrum_c.size()), "v_c", findings);
    if (!findings.empty()) return findings;
    const BuiltIndirect built = build_indirect(indirect);
    check_resonances(built.h, built.h_total, findings);

    double min_bath_gap = 0.0;
    for (std::size_t i = 0; i + 1 < indirect.spectrum_a.size(); ++i) {
        const double gap = indirect.spectrum_a[i + 1] - indirect.spectrum_a[i];
        if (i == 0 || gap < min_bath_gap) min_bath_gap = gap;
    }
    double max_system_gap = 0.0;
    if (indirect.spectrum_b.size() >= 2)
        max_system_gap = indirect.spectrum_b.back() - indirect.spectrum_b.front();
    if (indirect.spectrum_c.size() >= 2)
        max_system_gap =
            std::max(max_system_gap, indirect.spectrum_c.back() - indirect.spectrum_c.front());
    if (max_system_gap > 0.0) {
        const double ratio_slow = min_bath_gap / max_system_gap;
        const double ratio_fast = max_system_gap > 0.0 ? 1.0 / ratio_slow : 0.0;
        if (std::max(ratio_slow, ratio_fast) < 5.0)
            findings.push_back("timescale ratio " + format_float(std::max(ratio_slow, ratio_fast)) +
                               " < 5 between bath and system gaps; second-order formulas degrade");
    }
    return findings;
}

// ---- SVG emission ----

namespace {

constexpr double kSvgW = 640.0;
constexpr double kSvgH = 480.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 20.0;
constexpr double kMarginB = 50.0;

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;

    void include(double v) {
        if (!std::isfinite(v)) return;
        if (empty) {
            lo = hi = v;
            empty = false;
            return;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (empty || hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double span = hi - lo;
        lo -= 0.05 * span;
        hi += 0.05 * span;
    }
    bool empty = true;
};

double map_x(double v, const AxisRange& r) {
    return kMarginL + (v - r.lo) / (r.hi - r.lo) * (kSvgW - kMarginL - kMarginR);
}

double map_y(double v, const AxisRange& r) {
    return kSvgH - kMarginB - (v - r.lo) / (r.hi - r.lo) * (kSvgH - kMarginT - kMarginB);
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

void append_axes(std::string& svg, const AxisRange& xr, const AxisRange& yr,
                 const std::string& x_label, const std::string& y_label) {
    const double x0 = kMarginL;
    const double x1 = kSvgW - kMarginR;
    const double y0 = kSvgH - kMarginB;
    const double y1 = kMarginT;
    svg += "<line x1=\"" + format_float(x0) + "\" y1=\"" + format_float(y0) + "\" x2=\"" +
           format_float(x1) + "\" y2=\"" + format_float(y0) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + format_float(x0) + "\" y1=\"" + format_float(y0) + "\" x2=\"" +
           format_float(x0) + "\" y2=\"" + format_float(y1) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = xr.lo + (xr.hi - xr.lo) * k / 4.0;
        const double px = map_x(fx, xr);
        svg += "<line x1=\"" + format_float(px) + "\" y1=\"" + format_float(y0) + "\" x2=\"" +
               format_float(px) + "\" y2=\"" + format_float(y0 + 5.0) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + format_float(px) + "\" y=\"" + format_float(y0 + 20.0) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + tick_label(fx) + "</text>\n";
        const double fy = yr.lo + (yr.hi - yr.lo) * k / 4.0;
        const double py = map_y(fy, yr);
        svg += "<line x1=\"" + format_float(x0 - 5.0) + "\" y1=\"" + format_float(py) +
               "\" x2=\"" + format_float(x0) + "\" y2=\"" + format_float(py) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + format_float(x0 - 8.0) + "\" y=\"" + format_float(py + 4.0) +
               "\" font-size=\"12\" text-anchor=\"end\">" + tick_label(fy) + "</text>\n";
    }
    svg += "<text x=\"" + format_float(0.5 * (x0 + x1)) + "\" y=\"" +
           format_float(kSvgH - 12.0) + "\" font-size=\"14\" text-anchor=\"middle\">" + x_label +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + format_float(0.5 * (y0 + y1)) +
           "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           format_float(0.5 * (y0 + y1)) + ")\">" + y_label + "</text>\n";
}

void append_polyline(std::string& svg, const std::vector<std::pair<double, double>>& pts,
                     const AxisRange& xr, const AxisRange& yr, const std::string& stroke,
                     bool dashed) {
    if (pts.size() < 2) return;
    svg += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"";
    if (dashed) svg += " stroke-dasharray=\"6 4\"";
    svg += " points=\"";
    for (const auto& [x, y] : pts) {
        svg += format_float(map_x(x, xr));
        svg += ',';
        svg += format_float(map_y(y, yr));
        svg += ' ';
    }
    svg += "\"/>\n";
}

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_float(kSvgW) +
           "\" height=\"" + format_float(kSvgH) + "\" viewBox=\"0 0 " + format_float(kSvgW) +
           " " + format_float(kSvgH) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string phase_diagram_svg(const PhaseDiagram& diagram) {
    std::vector<std::pair<double, double>> numeric;
    std::vector<std::pair<double, double>> formula;
    for (const PhaseBoundaryRow& row : diagram.boundary) {
        const double x = std::log(1.0 / row.gamma);
        if (!row.bracket_failed && std::isfinite(row.t_uc_numeric) && row.t_uc_numeric > 0.0)
            numeric.emplace_back(x, 1.0 / row.t_uc_numeric);
        if (std::isfinite(row.t_lb_formula) && row.t_lb_formula > 0.0)
            formula.emplace_back(x, 1.0 / row.t_lb_formula);
    }
    AxisRange xr;
    AxisRange yr;
    for (const auto& [x, y] : numeric) {
        xr.include(x);
        yr.include(y);
    }
    for (const auto& [x, y] : formula) {
        xr.include(x);
        yr.include(y);
    }
    xr.pad();
    yr.pad();

    std::string svg = svg_open();
    // Entangled region: T below the numeric boundary, so 1/T above the line.
    if (numeric.size() >= 2) {
        std::string poly = "<polygon fill=\"#9ecae1\" fill-opacity=\"0.4\" stroke=\"none\" points=\"";
        for (const auto& [x, y] : numeric) {
            poly += format_float(map_x(x, xr));
            poly += ',';
            poly += format_float(map_y(y, yr));
            poly += ' ';
        }
        poly += format_float(map_x(numeric.back().first, xr));
        poly += ',';
        poly += format_float(map_y(yr.hi, yr));
        poly += ' ';
        poly += format_float(map_x(numeric.front().first, xr));
        poly += ',';
        poly += format_float(map_y(yr.hi, yr));
        poly += "\"/>\n";
        svg += poly;
    }
    append_polyline(svg, numeric, xr, yr, "#3182bd", false);
    append_polyline(svg, formula, xr, yr, "#636363", true);
    append_axes(svg, xr, yr, "ln(1/gamma)", "1/T");
    svg += "</svg>\n";
    return svg;
}

std::string curve_svg(const NegativityCurve& curve) {
    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& row : curve.sweep.rows)
        if (std::isfinite(row.temperature)) pts.emplace_back(row.temperature, row.neg_avg);
    AxisRange xr;
    AxisRange yr;
    yr.include(0.0);
    for (const auto& [x, y] : pts) {
        xr.include(x);
        yr.include(y);
    }
    xr.pad();
    yr.pad();

    std::string svg = svg_open();
    append_polyline(svg, pts, xr, yr, "#3182bd", false);
    const struct {
        double value;
        const char* color;
        const char* label;
    } markers[] = {{curve.annotations.t_lb, "#31a354", "T_lb"},
                   {curve.annotations.t_uc_numeric, "#e6550d", "T_uc"},
                   {curve.annotations.t_uc_star, "#756bb1", "T_uc*"}};
    for (const auto& marker : markers) {
        if (!std::isfinite(marker.value) || marker.value < xr.lo || marker.value > xr.hi) continue;
        const double px = map_x(marker.value, xr);
        svg += "<line x1=\"" + format_float(px) + "\" y1=\"" + format_float(map_y(yr.hi, yr)) +
               "\" x2=\"" + format_float(px) + "\" y2=\"" + format_float(map_y(yr.lo, yr)) +
               "\" stroke=\"" + marker.color + "\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
        svg += "<text x=\"" + format_float(px + 3.0) + "\" y=\"" +
               format_float(map_y(yr.hi, yr) + 12.0) + "\" font-size=\"11\" fill=\"" +
               marker.color + "\">" + marker.label + "</text>\n";
    }
    append_axes(svg, xr, yr, "T", "time-averaged negativity");
    svg += "</svg>\n";
    return svg;
}

}  // namespace entdyn
