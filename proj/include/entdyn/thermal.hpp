#pragma once

#include "entdyn/hilbert.hpp"
#include "entdyn/matrix.hpp"

namespace entdyn {

// ---- errors ----

struct NegativeTemperature : std::invalid_argument {
    explicit NegativeTemperature(const std::string& what) : std::invalid_argument(what) {}
};

// ---- temperature ----

// k_B = 1 throughout. Infinite temperature is an explicit flag, not a large float.
struct Temperature {
    double value = 0.0;
    bool infinite = false;

    Temperature() = default;
    Temperature(double v) : value(v) {
        if (v < 0) throw NegativeTemperature("temperature must be >= 0");
    }
    static Temperature inf() {
        Temperature t;
        t.infinite = true;
        return t;
    }
};

// ---- density matrices ----

// Hermitian, unit trace, positive semidefinite (to documented tolerances).
struct DensityMatrix {
    ComplexMatrix matrix;
    CompositeSpace space;

    // Validates Hermiticity (1e-12), trace (1e-12), and min eigenvalue >= -1e-10.
    static DensityMatrix checked(ComplexMatrix m, CompositeSpace space);
};

// Boltzmann populations exp(-(E_i - E_min)/T) normalized to 1; T=0 gives the
// uniform mixture over the ground set, infinite T the uniform distribution.
std::vector<double> gibbs_populations(const std::vector<double>& energies, Temperature t);

// Z^-1 exp(-h/T) via the eigendecomposition of h.
DensityMatrix gibbs(const ComplexMatrix& h, Temperature t);

// Kronecker product of the parts; space is the concatenation of part spaces.
DensityMatrix product_state(const std::vector<DensityMatrix>& parts);

}  // namespace entdyn
