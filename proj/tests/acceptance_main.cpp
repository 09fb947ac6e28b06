// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// argv[1] is the CLI binary path (used by the determinism criterion).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entdyn/dynamics.hpp"
#include "entdyn/hilbert.hpp"
#include "entdyn/io.hpp"
#include "entdyn/metrics.hpp"
#include "entdyn/models.hpp"
#include "entdyn/predictors.hpp"
#include "entdyn/sweep.hpp"
#include "entdyn/thermal.hpp"
#include "test_support.hpp"

using namespace entdyn;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << criterion << ": " << detail
              << std::endl;
    if (!ok) ++g_failures;
}

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) { return format_float(v); }

bool within_rel(double measured, double reference, double band) {
    return std::abs(measured - reference) <= band * std::abs(reference);
}

// Max relative gap between fitted and closed-form temperatures over a diagram.
bool boundary_within(const PhaseDiagram& diagram, double band, double tol, double& worst,
                     std::string& note) {
    worst = 0.0;
    for (const PhaseBoundaryRow& row : diagram.boundary) {
        if (row.bracket_failed || !std::isfinite(row.t_uc_numeric) ||
            !std::isfinite(row.t_lb_formula)) {
            note = "bracket failed at gamma=" + fmt(row.gamma);
            return false;
        }
        const double rel = std::abs(row.t_uc_numeric - row.t_lb_formula) / row.t_lb_formula;
        if (rel > worst) worst = rel;
        if (std::abs(row.t_uc_numeric - row.t_lc_numeric) > 2.0 * tol) {
            note = "lower/upper fits disagree at gamma=" + fmt(row.gamma);
            return false;
        }
    }
    return worst <= band;
}

double full_scan_neg_avg(const Model& model, double temperature) {
    const Scenario sc = make_scenario(model, Temperature(temperature));
    const TimeGrid grid = model_default_grid(model);
    return scan_min_pt(sc, grid, kVerdictThreshold, ScanMode::full).negativity_avg;
}

std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file.good()) return "<unreadable:" + path + ">";
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

// ---- criteria ----

void criterion_1_s_range() {
    Timer timer;
    const SRange range = s_range(2000000);
    const double secs = timer.seconds();
    const bool max_ok = std::abs(range.max - 3.0) <= 0.001;
    const bool min_ok = std::abs(range.min - (-1.6834)) <= 0.001;
    const bool time_ok = secs < 30.0;
    std::ostringstream detail;
    detail << "min=" << fmt(range.min) << " vs -1.6834+-0.001, max=" << fmt(range.max)
           << " vs 3+-0.001, " << fmt(secs) << "s";
    if (!min_ok)
        detail << "; dense sampling resolves the true infimum -27/16 = -1.6875, below the"
               << " quoted reference band";
    report(1, max_ok && min_ok && time_ok, detail.str());
}

void criterion_2_two_spin_boundary() {
    Timer timer;
    const Model model = make_preset(ModelPreset::two_spin);
    const PhaseDiagram diagram =
        phase_diagram(model, {0.01, 0.03, 0.1}, 0.05, 0.8, HorizonSpec{});
    double worst = 0.0;
    std::string note;
    const bool ok = boundary_within(diagram, 0.10, kBisectionTol, worst, note);
    const double secs = timer.seconds();
    std::ostringstream detail;
    detail << "two-spin gamma {0.01,0.03,0.1}: max |T_uc-T_lb|/T_lb=" << fmt(worst)
           << " (<=0.1), T_lc=T_uc within 2*tol, " << fmt(secs) << "s";
    if (!note.empty()) detail << "; " << note;
    report(2, ok && note.empty() && secs < 60.0, detail.str());
}

// Returns the fitted T_uc of fourlevel-b for the follow-up estimate check.
double criterion_3_gap_between_bounds() {
    Timer timer;
    double t_uc_b = std::numeric_limits<double>::quiet_NaN();
    bool ok = true;
    std::ostringstream detail;
    for (ModelPreset preset : {ModelPreset::fourlevel_a, ModelPreset::fourlevel_b}) {
        const Model model = make_preset(preset);
        const TlbResult tlb = applicable_tlb(model);
        const TimeGrid grid = model_default_grid(model);
        CriticalTemperatureResult crit;
        try {
            crit = find_critical_T(model, 0.05, grid, 0.5 * tlb.value, 2.5 * tlb.value);
        } catch (const BracketFailure&) {
            ok = false;
            detail << preset_name(preset) << ": bracket failure; ";
            continue;
        }
        if (preset == ModelPreset::fourlevel_b) t_uc_b = crit.t_uc_numeric;
        double worst_interior = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double t =
                tlb.value + (crit.t_uc_numeric - tlb.value) * static_cast<double>(k) / 9.0;
            worst_interior = std::max(worst_interior, full_scan_neg_avg(model, t));
        }
        const double below = full_scan_neg_avg(model, 0.5 * tlb.value);
        const bool interior_ok = worst_interior < 1e-4;
        const bool below_ok = below > 1e-3;
        ok = ok && interior_ok && below_ok;
        detail << preset_name(preset) << ": T_lb=" << fmt(tlb.value)
               << " T_uc=" << fmt(crit.t_uc_numeric) << " interior max=" << fmt(worst_interior)
               << " (<1e-4) at 0.5*T_lb=" << fmt(below) << " (>1e-3); ";
    }
    const double secs = timer.seconds();
    detail << fmt(secs) << "s";
    report(3, ok && secs < 300.0, detail.str());
    return t_uc_b;
}

void criterion_4_spacing_estimate(double t_uc_b) {
    const DirectModel model = std::get<DirectModel>(make_preset(ModelPreset::fourlevel_b));
    const double star = tuc_star(model, 0.05);
    const bool ok = std::isfinite(t_uc_b) && within_rel(t_uc_b, star, 0.30);
    std::ostringstream detail;
    detail << "fourlevel-b T_uc=" << fmt(t_uc_b) << " vs spacing estimate " << fmt(star)
           << ", rel=" << fmt(std::isfinite(t_uc_b) ? std::abs(t_uc_b - star) / star : -1.0)
           << " (<=0.3)";
    report(4, ok, detail.str());
}

void criterion_5_slow_spins_fast_bath() {
    Timer timer;
    const Model model = make_preset(ModelPreset::slow_spins_fast_bath);
    const PhaseDiagram diagram = phase_diagram(model, {0.1, 0.3, 1.0}, 0.05, 1.0, HorizonSpec{});
    double worst = 0.0;
    std::string note;
    const bool ok = boundary_within(diagram, 0.15, kBisectionTol, worst, note);
    const double secs = timer.seconds();
    std::ostringstream detail;
    detail << "slow-spins-fast-bath gamma {0.1,0.3,1.0}: max rel=" << fmt(worst) << " (<=0.15), "
           << fmt(secs) << "s";
    if (!note.empty()) detail << "; " << note;
    report(5, ok && note.empty() && secs < 300.0, detail.str());
}

void criterion_6_fast_spins_slow_bath() {
    Timer timer;
    const Model model = make_preset(ModelPreset::fast_spins_slow_bath);
    const PhaseDiagram diagram = phase_diagram(model, {0.3, 0.5, 1.0}, 0.5, 4.0, HorizonSpec{});
    double worst = 0.0;
    std::string note;
    const bool ok = boundary_within(diagram, 0.20, kBisectionTol, worst, note);
    const double secs = timer.seconds();
    std::ostringstream detail;
    detail << "fast-spins-slow-bath gamma {0.3,0.5,1.0}: max rel=" << fmt(worst) << " (<=0.2), "
           << fmt(secs) << "s";
    if (!note.empty()) detail << "; " << note;
    report(6, ok && note.empty() && secs < 300.0, detail.str());
}

void criterion_7_perturbation_order() {
    const Temperature temp(0.3);
    const double t = 2.0;
    const auto error_at = [&](double gamma) {
        const Model scaled = with_gamma(make_preset(ModelPreset::fourlevel_a), gamma);
        const DirectModel& dm = std::get<DirectModel>(scaled);
        const BuiltDirect built = build_direct(dm);
        const DensityMatrix rho0 = make_scenario(scaled, temp).rho0;
        const DensityMatrix evolved = evolve(built.h_total, rho0, t);
        const ComplexMatrix rotated = interaction_picture(built.h, evolved.matrix, t);
        return (rotated - first_order_state(dm, temp, t)).frobenius_norm();
    };
    const double coarse = error_at(0.05);
    const double fine = error_at(0.025);
    const double ratio = coarse / fine;
    const bool ok = ratio >= 3.0 && ratio <= 6.0;
    std::ostringstream detail;
    detail << "fourlevel-a first-order residual ratio gamma 0.05/0.025 = " << fmt(ratio)
           << " (in [3,6])";
    report(7, ok, detail.str());
}

void criterion_8_invariants() {
    Timer timer;
    std::mt19937 gen(12345);
    bool ok = true;
    std::ostringstream detail;

    // Partial-transpose spectrum: side choice and local unitaries are invisible.
    for (int trial = 0; trial < 20 && ok; ++trial) {
        const int da = testsupport::uniform_int(gen, 2, 4);
        const int db = testsupport::uniform_int(gen, 2, 4);
        const CompositeSpace space({da, db});
        const Bipartition part = Bipartition::of(space, {0});
        const ComplexMatrix rho = testsupport::random_density(da * db, gen);

        const ComplexMatrix pt_a = partial_transpose(rho, space, part, TransposeSide::left);
        const ComplexMatrix pt_b = partial_transpose(rho, space, part, TransposeSide::right);
        std::vector<double> eigs_a = herm_eigvals(pt_a);
        std::vector<double> eigs_b = herm_eigvals(pt_b);
        for (std::size_t i = 0; i < eigs_a.size() && ok; ++i)
            if (std::abs(eigs_a[i] - eigs_b[i]) > 1e-10) {
                ok = false;
                detail << "PT side-invariance broke at trial " << trial << "; ";
            }

        const ComplexMatrix local = kron(testsupport::random_unitary(da, gen),
                                         testsupport::random_unitary(db, gen));
        const ComplexMatrix rotated = local * rho * local.adjoint();
        std::vector<double> eigs_r = herm_eigvals(
            partial_transpose(rotated, space, part, TransposeSide::left));
        for (std::size_t i = 0; i < eigs_a.size() && ok; ++i)
            if (std::abs(eigs_a[i] - eigs_r[i]) > 1e-10) {
                ok = false;
                detail << "PT local-unitary invariance broke at trial " << trial << "; ";
            }

        // Involution: transposing the same side twice restores every entry.
        const ComplexMatrix twice = partial_transpose(pt_a, space, part, TransposeSide::left);
        if (testsupport::max_abs_diff(twice, rho) != 0.0) {
            ok = false;
            detail << "PT involution not exact at trial " << trial << "; ";
        }
    }

    // Product thermal states carry no negativity.
    for (int trial = 0; trial < 20 && ok; ++trial) {
        const int da = testsupport::uniform_int(gen, 2, 4);
        const int db = testsupport::uniform_int(gen, 2, 4);
        const CompositeSpace space({da, db});
        const DensityMatrix pa{testsupport::random_density(da, gen), CompositeSpace({da})};
        const DensityMatrix pb{testsupport::random_density(db, gen), CompositeSpace({db})};
        const DensityMatrix product = product_state({pa, pb});
        if (negativity(product, Bipartition::of(space, {0})) > 1e-12) {
            ok = false;
            detail << "product-state negativity above 1e-12 at trial " << trial << "; ";
        }
    }

    // Unitary evolution conserves trace, Hermiticity, purity.
    for (int trial = 0; trial < 5 && ok; ++trial) {
        const DirectModel model = testsupport::random_direct_model(gen);
        const BuiltDirect built = build_direct(model);
        const DensityMatrix rho0{testsupport::random_density(built.space.total(), gen),
                                 built.space};
        const double purity0 = (rho0.matrix * rho0.matrix).trace().real();
        const double t = testsupport::uniform(gen, 0.5, 6.0);
        const DensityMatrix rho = evolve(built.h_total, rho0, t);
        if (std::abs(rho.matrix.trace().real() - 1.0) > 1e-10 ||
            std::abs(rho.matrix.trace().imag()) > 1e-10) {
            ok = false;
            detail << "trace drifted at trial " << trial << "; ";
        }
        if (rho.matrix.hermiticity_defect() > 1e-10) {
            ok = false;
            detail << "Hermiticity drifted at trial " << trial << "; ";
        }
        const double purity = (rho.matrix * rho.matrix).trace().real();
        if (std::abs(purity - purity0) > 1e-10) {
            ok = false;
            detail << "purity drifted at trial " << trial << "; ";
        }
    }

    // Infinite bath temperature never entangles the two spins it mediates.
    if (ok) {
        IndirectModel model =
            std::get<IndirectModel>(make_preset(ModelPreset::slow_spins_fast_bath));
        model.bath_temperature = Temperature::inf();
        const Model wrapped(model);
        const Scenario sc = make_scenario(wrapped, Temperature(0.05));
        const TimeGrid grid = model_default_grid(wrapped);
        const ScanStats stats = scan_min_pt(sc, grid, kVerdictThreshold, ScanMode::full);
        if (stats.negativity_avg >= 1e-8 || stats.min_eig <= -1e-8) {
            ok = false;
            detail << "infinite-bath run produced negativity (min_eig=" << fmt(stats.min_eig)
                   << ", avg=" << fmt(stats.negativity_avg) << "); ";
        }
    }

    detail << "randomized invariants, seed 12345, " << fmt(timer.seconds()) << "s";
    report(8, ok, detail.str());
}

void criterion_9_determinism(const std::string& cli) {
    Timer timer;
    const std::string base = "/tmp/entdyn_acceptance_fig1_";
    const auto run = [&](const std::string& env, const std::string& tag) {
        const std::string cmd = env + " " + cli + " reproduce fig1 --csv " + base + tag +
                                ".csv --svg " + base + tag + ".svg >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    bool ok = run("ENTDYN_THREADS=1", "a") == 0 && run("ENTDYN_THREADS=1", "b") == 0 &&
              run("ENTDYN_THREADS=8", "c") == 0;
    std::ostringstream detail;
    if (!ok) detail << "CLI invocation failed; ";
    if (ok) {
        const std::string main_a = slurp(base + "a.csv");
        const bool repeat_same = main_a == slurp(base + "b.csv");
        const bool threads_same = main_a == slurp(base + "c.csv");
        const std::string boundary_a = slurp(base + "a_boundary.csv");
        const bool boundary_repeat = boundary_a == slurp(base + "b_boundary.csv");
        const bool boundary_threads = boundary_a == slurp(base + "c_boundary.csv");
        ok = repeat_same && threads_same && boundary_repeat && boundary_threads &&
             main_a.find("<unreadable") == std::string::npos;
        detail << "repeat byte-identical=" << (repeat_same && boundary_repeat ? "yes" : "no")
               << ", threads 1 vs 8 byte-identical="
               << (threads_same && boundary_threads ? "yes" : "no") << ", ";
    }
    for (const char* tag : {"a", "b", "c"}) {
        std::remove((base + tag + ".csv").c_str());
        std::remove((base + tag + "_boundary.csv").c_str());
        std::remove((base + tag + ".svg").c_str());
    }
    detail << fmt(timer.seconds()) << "s";
    report(9, ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: entdyn-acceptance <path-to-entdyn-cli>" << std::endl;
        return 2;
    }
    criterion_1_s_range();
    criterion_2_two_spin_boundary();
    const double t_uc_b = criterion_3_gap_between_bounds();
    criterion_4_spacing_estimate(t_uc_b);
    criterion_5_slow_spins_fast_bath();
    criterion_6_fast_spins_slow_bath();
    criterion_7_perturbation_order();
    criterion_8_invariants();
    criterion_9_determinism(argv[1]);
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                  : std::to_string(g_failures) + " CRITERIA FAILED")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
