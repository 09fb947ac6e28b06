#include <cmath>
#include <variant>

#include "doctest.h"

#include "entdyn/models.hpp"
#include "test_support.hpp"

using namespace entdyn;
using namespace testsupport;

namespace {

ComplexMatrix diag2(double lo, double hi) {
    ComplexMatrix m(2);
    m.at(0, 0) = lo;
    m.at(1, 1) = hi;
    return m;
}

const std::vector<ModelPreset> kAllPresets{
    ModelPreset::two_spin, ModelPreset::fourlevel_a, ModelPreset::fourlevel_b,
    ModelPreset::slow_spins_fast_bath, ModelPreset::fast_spins_slow_bath};

}  // namespace

TEST_SUITE("models") {

TEST_CASE("tridiagonal_coupling structure") {
    CHECK(max_abs_diff(tridiagonal_coupling(2), sigma_x()) == 0.0);

    const ComplexMatrix t4 = tridiagonal_coupling(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double expected = (std::abs(i - j) == 1) ? 1.0 : 0.0;
            CHECK(t4.at(i, j) == complex(expected));
        }
    CHECK(t4.is_hermitian());

    CHECK_THROWS_AS(tridiagonal_coupling(1), DimensionTooSmall);
}

TEST_CASE("build_direct assembles the two-spin preset") {
    const double gamma = 0.01;
    const Model model = make_preset(ModelPreset::two_spin, gamma);
    const auto& direct = std::get<DirectModel>(model);
    CHECK(direct.spectrum_a == std::vector<double>{-0.5, 0.5});
    const double wb = (std::sqrt(2.0) - 1.0) / 2.0;
    CHECK(direct.spectrum_b[0] == doctest::Approx(-wb).epsilon(1e-15));
    CHECK(direct.spectrum_b[1] == doctest::Approx(wb).epsilon(1e-15));

    const BuiltDirect built = build_direct(direct);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    const ComplexMatrix h_expected =
        kron(diag2(-0.5, 0.5), id2) + kron(id2, diag2(-wb, wb));
    CHECK(max_abs_diff(built.h, h_expected) < 1e-15);

    const ComplexMatrix v_expected =
        gamma * kron(sigma_x(), sigma_x()) + (-gamma) * kron(sigma_y(), sigma_y());
    CHECK(max_abs_diff(built.v_total, v_expected) < 1e-15);
    CHECK(max_abs_diff(built.h_total, h_expected + v_expected) < 1e-15);
    CHECK(built.space.dims == std::vector<int>{2, 2});
}

TEST_CASE("fourlevel presets carry the documented spectra") {
    const DirectModel a = std::get<DirectModel>(make_preset(ModelPreset::fourlevel_a));
    CHECK(a.spectrum_a == std::vector<double>{1.0, 5.0, 8.0, 10.0});
    for (int i = 0; i < 4; ++i)
        CHECK(a.spectrum_b[static_cast<std::size_t>(i)] ==
              doctest::Approx(std::sqrt(a.spectrum_a[static_cast<std::size_t>(i)]))
                  .epsilon(1e-15));
    CHECK(a.couplings.size() == 1);
    CHECK(max_abs_diff(a.couplings[0].v_a, tridiagonal_coupling(4)) == 0.0);

    const DirectModel b = std::get<DirectModel>(make_preset(ModelPreset::fourlevel_b));
    CHECK(b.spectrum_a == std::vector<double>{1.0, 3.0, 7.0, 13.0});

    // Lowest joint gap: level spacing (5-1) + (sqrt(5)-1) for the first preset.
    const double de11_a =
        (a.spectrum_a[1] - a.spectrum_a[0]) + (a.spectrum_b[1] - a.spectrum_b[0]);
    CHECK(de11_a == doctest::Approx(5.23607).epsilon(1e-5));
    const double de11_b =
        (b.spectrum_a[1] - b.spectrum_a[0]) + (b.spectrum_b[1] - b.spectrum_b[0]);
    CHECK(de11_b == doctest::Approx(2.73205).epsilon(1e-5));
}

TEST_CASE("build_indirect joins bath and spins") {
    const Model model = make_preset(ModelPreset::slow_spins_fast_bath, 0.1);
    const auto& indirect = std::get<IndirectModel>(model);
    CHECK(indirect.spectrum_a == std::vector<double>{0.0, 10.0, 20.0, 30.0});
    CHECK(indirect.bath_temperature.value == doctest::Approx(5.0));
    CHECK_FALSE(indirect.bath_temperature.infinite);

    const BuiltIndirect built = build_indirect(indirect);
    CHECK(built.space.dims == std::vector<int>{4, 2, 2});
    CHECK(built.h_total.n == 16);

    IndirectModel uncoupled = indirect;
    uncoupled.gamma = 0.0;
    const BuiltIndirect free_built = build_indirect(uncoupled);
    CHECK(max_abs_diff(free_built.h_total, free_built.h) == 0.0);
}

TEST_CASE("all presets are hermitian with traceless couplings") {
    for (ModelPreset preset : kAllPresets) {
        const Model model = make_preset(preset);
        if (const auto* direct = std::get_if<DirectModel>(&model)) {
            validate_model(*direct);
            const BuiltDirect built = build_direct(*direct);
            CHECK(built.h_total.is_hermitian());
            for (const CouplingTerm& term : direct->couplings) {
                for (int i = 0; i < term.v_a.n; ++i) CHECK(term.v_a.at(i, i) == complex(0.0));
                for (int i = 0; i < term.v_b.n; ++i) CHECK(term.v_b.at(i, i) == complex(0.0));
            }
        } else {
            const auto& indirect = std::get<IndirectModel>(model);
            validate_model(indirect);
            const BuiltIndirect built = build_indirect(indirect);
            CHECK(built.h_total.is_hermitian());
            for (int i = 0; i < indirect.v_a.n; ++i) CHECK(indirect.v_a.at(i, i) == complex(0.0));
            for (int i = 0; i < indirect.v_b.n; ++i) CHECK(indirect.v_b.at(i, i) == complex(0.0));
            for (int i = 0; i < indirect.v_c.n; ++i) CHECK(indirect.v_c.at(i, i) == complex(0.0));
        }
    }
}

TEST_CASE("validate_model rejects malformed models") {
    DirectModel model = std::get<DirectModel>(make_preset(ModelPreset::two_spin, 0.01));

    DirectModel descending = model;
    descending.spectrum_a = {0.5, -0.5};
    CHECK_THROWS_AS(validate_model(descending), std::invalid_argument);

    DirectModel skew = model;
    skew.couplings[0].v_a.at(0, 1) = complex(0.0, 1.0);
    skew.couplings[0].v_a.at(1, 0) = complex(0.0, 1.0);
    CHECK_THROWS_AS(validate_model(skew), NotHermitian);

    DirectModel mismatched = model;
    mismatched.couplings[0].v_a = tridiagonal_coupling(3);
    CHECK_THROWS_AS(validate_model(mismatched), DimensionMismatch);
}

TEST_CASE("with_gamma rescales every term") {
    const Model model = make_preset(ModelPreset::two_spin, 0.01);
    CHECK(reference_gamma(model) == doctest::Approx(0.01).epsilon(1e-15));

    const Model scaled = with_gamma(model, 0.07);
    CHECK(reference_gamma(scaled) == doctest::Approx(0.07).epsilon(1e-12));
    const auto& direct = std::get<DirectModel>(scaled);
    CHECK(direct.couplings[0].gamma == doctest::Approx(0.07).epsilon(1e-12));
    CHECK(direct.couplings[1].gamma == doctest::Approx(-0.07).epsilon(1e-12));

    const Model indirect_scaled = with_gamma(make_preset(ModelPreset::fast_spins_slow_bath), 0.3);
    CHECK(reference_gamma(indirect_scaled) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("preset names round trip") {
    for (ModelPreset preset : kAllPresets)
        CHECK(preset_from_name(preset_name(preset)) == preset);
    CHECK_THROWS_AS(preset_from_name("no-such-model"), std::invalid_argument);

    CHECK(preset_default_gamma(ModelPreset::two_spin) == doctest::Approx(0.01));
    CHECK(preset_default_gamma(ModelPreset::slow_spins_fast_bath) == doctest::Approx(0.1));
}

TEST_CASE("identity bath coupling swaps in the identity") {
    const Model model = make_preset(ModelPreset::slow_spins_fast_bath, 0.1, true);
    const auto& indirect = std::get<IndirectModel>(model);
    CHECK(max_abs_diff(indirect.v_a, ComplexMatrix::identity(4)) == 0.0);
}

}  // TEST_SUITE
