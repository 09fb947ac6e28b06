#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"

#include "entdyn/predictors.hpp"
#include "entdyn/sweep.hpp"
#include "test_support.hpp"

using namespace entdyn;
using namespace testsupport;

namespace {

bool rows_identical(const std::vector<SweepRow>& a, const std::vector<SweepRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].gamma != b[i].gamma) return false;
        if (a[i].temperature != b[i].temperature) return false;
        if (a[i].horizon != b[i].horizon) return false;
        if (a[i].min_pt_eig != b[i].min_pt_eig) return false;
        if (a[i].neg_avg != b[i].neg_avg) return false;
        if (a[i].entangled != b[i].entangled) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("to_temperature maps the infinity sentinel") {
    CHECK(to_temperature(0.3).value == 0.3);
    CHECK_FALSE(to_temperature(0.3).infinite);
    CHECK(to_temperature(std::numeric_limits<double>::infinity()).infinite);
    CHECK_THROWS_AS(to_temperature(-0.5), NegativeTemperature);
}

TEST_CASE("model_default_grid equals the spectrum grid") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    const TimeGrid direct = default_grid(build_direct(std::get<DirectModel>(model)).h_total);
    const TimeGrid via_model = model_default_grid(model);
    CHECK(via_model.t_end == direct.t_end);
    CHECK(via_model.steps == direct.steps);

    const TimeGrid stretched = model_default_grid(model, 2.0);
    CHECK(stretched.t_end == doctest::Approx(2.0 * direct.t_end).epsilon(1e-12));
}

TEST_CASE("point evaluator honors explicit grids and scales") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    HorizonSpec explicit_spec;
    explicit_spec.explicit_grid = TimeGrid{17.0, 34};
    const PointEvaluator pinned(model, explicit_spec);
    CHECK(pinned.grid().t_end == 17.0);
    CHECK(pinned.grid().steps == 34);

    HorizonSpec scaled_spec;
    scaled_spec.scale = 2.0;
    const PointEvaluator scaled(model, scaled_spec);
    CHECK(scaled.grid().t_end ==
          doctest::Approx(2.0 * model_default_grid(model).t_end).epsilon(1e-12));
}

TEST_CASE("critical temperature of the weakly coupled spin pair") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    const TimeGrid grid = model_default_grid(model);
    const CriticalTemperatureResult r = find_critical_T(model, 0.01, grid, 0.05, 0.8);
    CHECK(std::abs(r.t_uc_numeric - 0.198047) < 3e-3);
    CHECK(std::abs(r.t_uc_numeric - r.t_lc_numeric) <= 2.0 * kBisectionTol);
    CHECK(r.monotone);

    const double formula = tlb_direct(std::get<DirectModel>(model)).value;
    CHECK(std::abs(r.t_uc_numeric - formula) / formula < 0.10);
}

TEST_CASE("bracket auto-expansion recovers a displaced bracket") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    const TimeGrid grid = model_default_grid(model);

    const CriticalTemperatureResult high = find_critical_T(model, 0.01, grid, 1.5, 2.0);
    CHECK(std::abs(high.t_uc_numeric - 0.198047) < 3e-3);

    const CriticalTemperatureResult low = find_critical_T(model, 0.01, grid, 0.05, 0.1);
    CHECK(std::abs(low.t_uc_numeric - 0.198047) < 3e-3);
}

TEST_CASE("bracket failure surfaces when no boundary exists") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    const TimeGrid grid = model_default_grid(model);

    // Uncoupled pair never entangles at any temperature.
    CHECK_THROWS_AS(find_critical_T(model, 0.0, grid, 0.05, 0.8), BracketFailure);

    // Three halvings of 20 still sit far above the boundary near 0.198.
    CHECK_THROWS_AS(find_critical_T(model, 0.01, grid, 20.0, 40.0), BracketFailure);

    CHECK_THROWS_AS(find_critical_T(model, 0.01, grid, 0.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(find_critical_T(model, 0.01, grid, 0.05, 0.8, -1.0), std::invalid_argument);
}

TEST_CASE("verdicts flip across the fitted boundary") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    const TimeGrid grid = model_default_grid(model);
    const CriticalTemperatureResult r = find_critical_T(model, 0.01, grid, 0.05, 0.8);

    HorizonSpec horizon;
    horizon.explicit_grid = grid;
    const PointEvaluator ev(model, horizon);
    CHECK(ev.entangled_verdict(Temperature(r.t_uc_numeric - 2.0 * kBisectionTol),
                               kVerdictThreshold));
    CHECK_FALSE(ev.entangled_verdict(Temperature(r.t_uc_numeric + 2.0 * kBisectionTol),
                                     kVerdictThreshold));
}

TEST_CASE("boundary is stable against a longer horizon") {
    const Model model = make_preset(ModelPreset::two_spin, 0.05);
    const CriticalTemperatureResult base =
        find_critical_T(model, 0.05, model_default_grid(model), 0.05, 0.8);
    const CriticalTemperatureResult longer =
        find_critical_T(model, 0.05, model_default_grid(model, 2.0), 0.05, 0.8);
    CHECK(std::abs(base.t_uc_numeric - longer.t_uc_numeric) < 5.0 * kBisectionTol);
}

TEST_CASE("phase_diagram rows and boundary") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    HorizonSpec horizon;

    const PhaseDiagram empty = phase_diagram(model, {}, 0.05, 0.8, horizon);
    CHECK(empty.sweep.rows.empty());
    CHECK(empty.boundary.empty());

    CHECK_THROWS_AS(phase_diagram(model, {0.03, 0.01}, 0.05, 0.8, horizon),
                    std::invalid_argument);
    CHECK_THROWS_AS(phase_diagram(model, {-0.01}, 0.05, 0.8, horizon), std::invalid_argument);
    CHECK_THROWS_AS(phase_diagram(model, {0.01}, 0.8, 0.05, horizon), std::invalid_argument);

    const std::vector<double> gammas{0.01, 0.03};
    const PhaseDiagram pd = phase_diagram(model, gammas, 0.05, 0.8, horizon);
    REQUIRE(pd.sweep.rows.size() == static_cast<std::size_t>(2 * kCoarsePoints));
    REQUIRE(pd.boundary.size() == 2);

    for (std::size_t i = 0; i < pd.sweep.rows.size(); ++i) {
        const SweepRow& row = pd.sweep.rows[i];
        CHECK(row.gamma == gammas[i / static_cast<std::size_t>(kCoarsePoints)]);
        CHECK(row.entangled == (row.min_pt_eig < -kVerdictThreshold));
        CHECK(row.horizon > 0.0);
        if (i > 0 && pd.sweep.rows[i - 1].gamma == row.gamma)
            CHECK(pd.sweep.rows[i - 1].temperature < row.temperature);
    }

    for (const PhaseBoundaryRow& edge : pd.boundary) {
        CHECK_FALSE(edge.bracket_failed);
        CHECK(edge.monotone);
        CHECK(std::isfinite(edge.t_lb_formula));
        CHECK(edge.log_argument > 0.0);
        CHECK(edge.log_argument < 1.0);
        CHECK(std::abs(edge.t_uc_numeric - edge.t_lb_formula) / edge.t_lb_formula < 0.10);
    }
    CHECK(pd.boundary[0].gamma == 0.01);
    CHECK(pd.boundary[1].gamma == 0.03);
    CHECK(std::abs(pd.boundary[0].t_uc_numeric - 0.198047) < 3e-3);
}

TEST_CASE("phase_diagram records bracket failures per gamma") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    HorizonSpec horizon;
    // At 3 < T the pair is ppt for both couplings even after expansion.
    const PhaseDiagram pd = phase_diagram(model, {0.01}, 30.0, 60.0, horizon);
    REQUIRE(pd.boundary.size() == 1);
    CHECK(pd.boundary[0].bracket_failed);
    CHECK(std::isnan(pd.boundary[0].t_uc_numeric));
    CHECK(std::isnan(pd.boundary[0].t_lc_numeric));
    CHECK(std::isfinite(pd.boundary[0].t_lb_formula));  // formula stays available
    CHECK(pd.sweep.rows.size() == static_cast<std::size_t>(kCoarsePoints));
}

TEST_CASE("worker width never changes the result") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    HorizonSpec horizon;
    const PhaseDiagram serial = phase_diagram(model, {0.01, 0.03}, 0.05, 0.8, horizon,
                                              kBisectionTol, kVerdictThreshold, 1);
    const PhaseDiagram wide = phase_diagram(model, {0.01, 0.03}, 0.05, 0.8, horizon,
                                            kBisectionTol, kVerdictThreshold, 4);
    CHECK(rows_identical(serial.sweep.rows, wide.sweep.rows));
    REQUIRE(serial.boundary.size() == wide.boundary.size());
    for (std::size_t i = 0; i < serial.boundary.size(); ++i) {
        CHECK(serial.boundary[i].t_uc_numeric == wide.boundary[i].t_uc_numeric);
        CHECK(serial.boundary[i].t_lc_numeric == wide.boundary[i].t_lc_numeric);
        CHECK(serial.boundary[i].t_lb_formula == wide.boundary[i].t_lb_formula);
    }

    const std::vector<double> temps{0.1, 0.2, 0.3, 0.4};
    const NegativityCurve c1 =
        negativity_curve(model, temps, horizon, kBisectionTol, kVerdictThreshold, 1);
    const NegativityCurve c4 =
        negativity_curve(model, temps, horizon, kBisectionTol, kVerdictThreshold, 4);
    CHECK(rows_identical(c1.sweep.rows, c4.sweep.rows));
}

TEST_CASE("negativity_curve rows and annotations") {
    const Model model = make_preset(ModelPreset::fourlevel_a);
    HorizonSpec horizon;

    CHECK_THROWS_AS(negativity_curve(model, {0.5, 0.4}, horizon), std::invalid_argument);

    const std::vector<double> temps{0.55, 0.65, 0.75, 0.85};
    const NegativityCurve curve = negativity_curve(model, temps, horizon);
    REQUIRE(curve.sweep.rows.size() == 4);
    for (std::size_t i = 0; i < temps.size(); ++i) {
        CHECK(curve.sweep.rows[i].temperature == temps[i]);
        CHECK(curve.sweep.rows[i].gamma == 0.05);
        CHECK(curve.sweep.rows[i].neg_avg >= 0.0);
    }
    // Past the formula bound the average only decays (up to scan noise).
    for (std::size_t i = 1; i < temps.size(); ++i)
        if (temps[i - 1] > 0.67)
            CHECK(curve.sweep.rows[i].neg_avg <= curve.sweep.rows[i - 1].neg_avg + 1e-6);

    CHECK(curve.annotations.t_lb == doctest::Approx(0.661427705).epsilon(1e-8));
    CHECK(curve.annotations.t_uc_star == doctest::Approx(0.562860328).epsilon(1e-8));
    CHECK(curve.annotations.t_uc_numeric == doctest::Approx(0.71369).epsilon(2e-2));
}

TEST_CASE("negativity_curve accepts an infinite-temperature point") {
    const Model model = make_preset(ModelPreset::fourlevel_a);
    HorizonSpec horizon;
    const std::vector<double> temps{std::numeric_limits<double>::infinity()};
    const NegativityCurve curve = negativity_curve(model, temps, horizon);
    REQUIRE(curve.sweep.rows.size() == 1);
    CHECK(std::isinf(curve.sweep.rows[0].temperature));
    CHECK(curve.sweep.rows[0].neg_avg == 0.0);
    CHECK_FALSE(curve.sweep.rows[0].entangled);
    CHECK(std::isnan(curve.annotations.t_uc_numeric));
    CHECK(std::isfinite(curve.annotations.t_lb));
}

TEST_CASE("empty temperature list yields an empty curve") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    HorizonSpec horizon;
    const NegativityCurve curve = negativity_curve(model, {}, horizon);
    CHECK(curve.sweep.rows.empty());
    CHECK(std::isnan(curve.annotations.t_lb));
    CHECK(std::isnan(curve.annotations.t_uc_numeric));
    CHECK(std::isnan(curve.annotations.t_uc_star));
}

}  // TEST_SUITE
