#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "entdyn/hilbert.hpp"
#include "entdyn/matrix.hpp"
#include "entdyn/models.hpp"
#include "entdyn/thermal.hpp"

namespace testsupport {

using namespace entdyn;

inline ComplexMatrix sigma_x() {
    ComplexMatrix m(2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

inline ComplexMatrix sigma_y() {
    ComplexMatrix m(2);
    m.at(0, 1) = complex(0.0, -1.0);
    m.at(1, 0) = complex(0.0, 1.0);
    return m;
}

inline ComplexMatrix sigma_z() {
    ComplexMatrix m(2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = -1.0;
    return m;
}

// Projector onto (|00> + |11>)/sqrt(2).
inline ComplexMatrix bell_projector() {
    ComplexMatrix m(4);
    m.at(0, 0) = 0.5;
    m.at(0, 3) = 0.5;
    m.at(3, 0) = 0.5;
    m.at(3, 3) = 0.5;
    return m;
}

inline double uniform(std::mt19937& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline int uniform_int(std::mt19937& gen, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
}

inline ComplexMatrix random_matrix(int n, std::mt19937& gen) {
    ComplexMatrix m(n);
    for (auto& z : m.a) z = complex(uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0));
    return m;
}

inline ComplexMatrix random_hermitian(int n, std::mt19937& gen) {
    const ComplexMatrix m = random_matrix(n, gen);
    ComplexMatrix h = m + m.adjoint();
    for (auto& z : h.a) z *= 0.5;
    return h;
}

// exp(-iH) of a random Hermitian H: unitary to eigensolver tolerance.
inline ComplexMatrix random_unitary(int n, std::mt19937& gen) {
    return propagator(random_hermitian(n, gen), 1.0);
}

// A A^dag normalized to unit trace: random full-rank-ish density matrix.
inline ComplexMatrix random_density(int n, std::mt19937& gen) {
    const ComplexMatrix a = random_matrix(n, gen);
    ComplexMatrix rho = a * a.adjoint();
    double tr = rho.trace().real();
    for (int i = 0; i < n; ++i) rho.at(i, i) += 0.01;
    tr += 0.01 * n;
    for (auto& z : rho.a) z /= tr;
    return rho;
}

// Strictly ascending energies with every pairwise gap at least min_gap.
inline std::vector<double> random_spectrum(int n, std::mt19937& gen, double min_gap = 0.05) {
    std::vector<double> e(static_cast<std::size_t>(n));
    e[0] = uniform(gen, -1.0, 0.0);
    for (int i = 1; i < n; ++i)
        e[static_cast<std::size_t>(i)] =
            e[static_cast<std::size_t>(i - 1)] + min_gap + uniform(gen, 0.0, 1.5);
    return e;
}

// Direct model with dims <= 4 and all coupled joint transitions nonresonant.
inline DirectModel random_direct_model(std::mt19937& gen) {
    for (;;) {
        DirectModel model;
        const int da = uniform_int(gen, 2, 4);
        const int db = uniform_int(gen, 2, 4);
        model.spectrum_a = random_spectrum(da, gen);
        model.spectrum_b = random_spectrum(db, gen);
        const int terms = uniform_int(gen, 1, 2);
        for (int c = 0; c < terms; ++c) {
            CouplingTerm term;
            term.gamma = uniform(gen, 0.01, 0.08);
            term.v_a = random_hermitian(da, gen);
            term.v_b = random_hermitian(db, gen);
            model.couplings.push_back(term);
        }
        // Reject near-resonant joint gaps so first-order phase integrals stay finite.
        bool resonant = false;
        for (int i = 0; i < da && !resonant; ++i)
            for (int j = 0; j < da && !resonant; ++j)
                for (int k = 0; k < db && !resonant; ++k)
                    for (int l = 0; l < db && !resonant; ++l) {
                        if (i == j && k == l) continue;
                        const double delta = model.spectrum_a[static_cast<std::size_t>(i)] -
                                             model.spectrum_a[static_cast<std::size_t>(j)] +
                                             model.spectrum_b[static_cast<std::size_t>(l)] -
                                             model.spectrum_b[static_cast<std::size_t>(k)];
                        if (std::abs(delta) < 1e-3) resonant = true;
                    }
        if (!resonant) return model;
    }
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i) worst = std::max(worst, std::abs(a.a[i] - b.a[i]));
    return worst;
}

}  // namespace testsupport
