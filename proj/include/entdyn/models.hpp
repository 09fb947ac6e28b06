#pragma once

#include <string>
#include <variant>

#include "entdyn/hilbert.hpp"
#include "entdyn/matrix.hpp"
#include "entdyn/thermal.hpp"

namespace entdyn {

// ---- errors ----

struct DimensionTooSmall : std::invalid_argument {
    explicit DimensionTooSmall(const std::string& what) : std::invalid_argument(what) {}
};

// ---- model types ----

// One interaction term gamma_i * V_a^i (x) V_b^i.
struct CouplingTerm {
    double gamma;
    ComplexMatrix v_a;
    ComplexMatrix v_b;
};

// Bipartite system with diagonal local Hamiltonians and direct coupling.
struct DirectModel {
    std::vector<double> spectrum_a;
    std::vector<double> spectrum_b;
    std::vector<CouplingTerm> couplings;
};

// Two noninteracting systems B, C coupled through a common third party A:
// V = gamma * V_a (x) (V_b (x) 1 + 1 (x) V_c). A starts thermal at bath_temperature.
struct IndirectModel {
    std::vector<double> spectrum_a;
    std::vector<double> spectrum_b;
    std::vector<double> spectrum_c;
    double gamma;
    ComplexMatrix v_a;
    ComplexMatrix v_b;
    ComplexMatrix v_c;
    Temperature bath_temperature;
};

using Model = std::variant<DirectModel, IndirectModel>;

enum class ModelPreset { two_spin, fourlevel_a, fourlevel_b, slow_spins_fast_bath, fast_spins_slow_bath };

// ---- construction ----

// Real symmetric matrix with ones on the super/sub-diagonal.
ComplexMatrix tridiagonal_coupling(int dim);

struct BuiltDirect {
    ComplexMatrix h;
    ComplexMatrix v_total;
    ComplexMatrix h_total;
    CompositeSpace space;
};

struct BuiltIndirect {
    ComplexMatrix h;
    ComplexMatrix h_total;
    CompositeSpace space;
};

// H = H_a (x) 1 + 1 (x) H_b from the diagonal spectra; H_total = H + sum_i gamma_i V_a^i (x) V_b^i.
BuiltDirect build_direct(const DirectModel& model);
BuiltIndirect build_indirect(const IndirectModel& model);

// Throws unless spectra are strictly ascending and every V is Hermitian with
// dimensions matching its spectrum.
void validate_model(const DirectModel& model);
void validate_model(const IndirectModel& model);

// Largest |gamma_i|; the scale rescaled by gamma sweeps.
double reference_gamma(const DirectModel& model);
double reference_gamma(const Model& model);

// Same model with every coupling multiplied by gamma/reference_gamma.
Model with_gamma(const Model& model, double gamma);

// Figure presets. `bath_coupling_identity` swaps the tridiagonal bath coupling
// for the identity on the indirect presets (a strictly local interaction kept
// for comparison runs).
Model make_preset(ModelPreset preset, double gamma, bool bath_coupling_identity = false);
Model make_preset(ModelPreset preset);  // preset default gamma

double preset_default_gamma(ModelPreset preset);
ModelPreset preset_from_name(const std::string& name);
std::string preset_name(ModelPreset preset);

}  // namespace entdyn
