#pragma once

#include <stdexcept>
#include <vector>

#include "entdyn/matrix.hpp"
#include "entdyn/models.hpp"
#include "entdyn/thermal.hpp"

namespace entdyn {

// Coupled transition with |energy denominator| below the resonance floor.
class ResonantDenominator : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// |denominator| below this among coupled transitions is treated as resonant.
inline constexpr double kResonanceFloor = 1e-9;

// Spectral gaps smaller than this count as zero when sizing the horizon.
inline constexpr double kGapFloor = 1e-9;

// Uniform grid over [0, t_end]; sample k is k*t_end/steps, k = 0..steps.
struct TimeGrid {
    double t_end = 0.0;
    int steps = 1;

    double sample(int k) const { return t_end * static_cast<double>(k) / static_cast<double>(steps); }
};

struct Trajectory {
    TimeGrid grid;
    std::vector<DensityMatrix> states;  // states[k] at grid.sample(k)
};

// integral of exp(i*delta*s) ds over [0, t]; limit t as delta -> 0.
complex phase_integral(double delta, double t);

// Horizon covering the slowest nonzero gap 20 times over, sampling the
// fastest gap at >= 20 points per period; scale stretches t_end and steps
// together. Throws std::invalid_argument if the spectrum has no nonzero gap.
TimeGrid default_grid(const std::vector<double>& energies, double scale = 1.0);
TimeGrid default_grid(const ComplexMatrix& h_total, double scale = 1.0);

// One eigendecomposition of h_total, reused to evaluate rho(t) at any t.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const ComplexMatrix& h_total);

    const EigenDecomposition& eig() const { return eig_; }
    int dim() const { return eig_.vectors.n; }

    // V^dag rho V: initial state expressed in the eigenbasis.
    ComplexMatrix to_eigenbasis(const ComplexMatrix& rho) const;

    // out = V (phases . rho_eig) V^dag with phases_mn = exp(-i(l_m-l_n)t).
    // scratch must not alias rho_eig or out.
    void state_at(const ComplexMatrix& rho_eig, double t, ComplexMatrix& out,
                  ComplexMatrix& scratch) const;

private:
    EigenDecomposition eig_;
    ComplexMatrix vectors_adj_;
};

// rho(t) = U rho0 U^dag, U = exp(-i h_total t).
DensityMatrix evolve(const ComplexMatrix& h_total, const DensityMatrix& rho0, double t);

// evolve at every grid sample from a single decomposition of h_total.
Trajectory trajectory(const ComplexMatrix& h_total, const DensityMatrix& rho0,
                      const TimeGrid& grid);

// exp(i h0 t) rho exp(-i h0 t): strips free evolution from a propagated state.
ComplexMatrix interaction_picture(const ComplexMatrix& h0, const ComplexMatrix& rho, double t);

// Interaction-picture state to first order in the couplings: thermal product
// populations on the diagonal plus closed-form time-integral corrections.
// Hermitian and unit trace but not guaranteed positive.
ComplexMatrix first_order_state(const DirectModel& model, Temperature temperature, double t);

}  // namespace entdyn
