#include "entdyn/models.hpp"

#include <algorithm>
#include <cmath>

namespace entdyn {

ComplexMatrix tridiagonal_coupling(int dim) {
    if (dim < 2) throw DimensionTooSmall("tridiagonal coupling needs dim >= 2");
    ComplexMatrix v(dim);
    for (int i = 0; i + 1 < dim; ++i) {
        v.at(i, i + 1) = 1.0;
        v.at(i + 1, i) = 1.0;
    }
    return v;
}

namespace {

void require_ascending(const std::vector<double>& spectrum, const char* label) {
    if (spectrum.size() < 2)
        throw DimensionTooSmall(std::string(label) + " spectrum needs at least two levels");
    for (std::size_t i = 0; i + 1 < spectrum.size(); ++i)
        if (!(spectrum[i] < spectrum[i + 1]))
            throw std::invalid_argument(std::string(label) +
                                        " spectrum must be strictly ascending");
}

void require_hermitian(const ComplexMatrix& v, int dim, const char* label) {
    if (v.n != dim)
        throw DimensionMismatch(std::string(label) + " coupling dimension does not match");
    if (!v.is_hermitian())
        throw NotHermitian(std::string(label) + " coupling must be Hermitian");
}

ComplexMatrix diag_of(const std::vector<double>& spectrum) {
    ComplexMatrix m(static_cast<int>(spectrum.size()));
    for (int i = 0; i < m.n; ++i) m.at(i, i) = spectrum[static_cast<std::size_t>(i)];
    return m;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2);
    m.at(0, 1) = complex(0.0, -1.0);
    m.at(1, 0) = complex(0.0, 1.0);
    return m;
}

}  // namespace

void validate_model(const DirectModel& model) {
    require_ascending(model.spectrum_a, "A");
    require_ascending(model.spectrum_b, "B");
    if (model.couplings.empty()) throw std::invalid_argument("direct model needs >= 1 coupling");
    for (const CouplingTerm& term : model.couplings) {
        require_hermitian(term.v_a, static_cast<int>(model.spectrum_a.size()), "A");
        require_hermitian(term.v_b, static_cast<int>(model.spectrum_b.size()), "B");
    }
}

void validate_model(const IndirectModel& model) {
    require_ascending(model.spectrum_a, "bath");
    require_ascending(model.spectrum_b, "B");
    require_ascending(model.spectrum_c, "C");
    require_hermitian(model.v_a, static_cast<int>(model.spectrum_a.size()), "bath");
    require_hermitian(model.v_b, static_cast<int>(model.spectrum_b.size()), "B");
    require_hermitian(model.v_c, static_cast<int>(model.spectrum_c.size()), "C");
}

BuiltDirect build_direct(const DirectModel& model) {
    validate_model(model);
    CompositeSpace space({static_cast<int>(model.spectrum_a.size()),
                          static_cast<int>(model.spectrum_b.size())});
    ComplexMatrix h = embed(diag_of(model.spectrum_a), 0, space) +
                      embed(diag_of(model.spectrum_b), 1, space);
    ComplexMatrix v_total(space.total());
    for (const CouplingTerm& term : model.couplings)
        v_total = v_total + term.gamma * kron(term.v_a, term.v_b);
    return BuiltDirect{h, v_total, h + v_total, space};
}

BuiltIndirect build_indirect(const IndirectModel& model) {
    validate_model(model);
    CompositeSpace space({static_cast<int>(model.spectrum_a.size()),
                          static_cast<int>(model.spectrum_b.size()),
                          static_cast<int>(model.spectrum_c.size())});
    ComplexMatrix h = embed(diag_of(model.spectrum_a), 0, space) +
                      embed(diag_of(model.spectrum_b), 1, space) +
                      embed(diag_of(model.spectrum_c), 2, space);
    ComplexMatrix v = kron(model.v_a, kron(model.v_b, ComplexMatrix::identity(
                                                          static_cast<int>(model.spectrum_c.size()))) +
                                          kron(ComplexMatrix::identity(
                                                   static_cast<int>(model.spectrum_b.size())),
                                               model.v_c));
    return BuiltIndirect{h, h + model.gamma * v, space};
}

double reference_gamma(const DirectModel& model) {
    double g = 0;
    for (const CouplingTerm& term : model.couplings) g = std::max(g, std::abs(term.gamma));
    return g;
}

double reference_gamma(const Model& model) {
    if (const DirectModel* d = std::get_if<DirectModel>(&model)) return reference_gamma(*d);
    return std::abs(std::get<IndirectModel>(model).gamma);
}

Model with_gamma(const Model& model, double gamma) {
    Model out = model;
    if (DirectModel* d = std::get_if<DirectModel>(&out)) {
        const double ref = reference_gamma(*d);
        if (ref == 0) throw std::invalid_argument("cannot rescale a zero coupling");
        for (CouplingTerm& term : d->couplings) term.gamma *= gamma / ref;
    } else {
        std::get<IndirectModel>(out).gamma = gamma;
    }
    return out;
}

double preset_default_gamma(ModelPreset preset) {
    switch (preset) {
        case ModelPreset::two_spin: return 0.01;
        case ModelPreset::fourlevel_a: return 0.05;
        case ModelPreset::fourlevel_b: return 0.05;
        case ModelPreset::slow_spins_fast_bath: return 0.1;
        case ModelPreset::fast_spins_slow_bath: return 0.5;
    }
    throw std::invalid_argument("unknown preset");
}

Model make_preset(ModelPreset preset, double gamma, bool bath_coupling_identity) {
    const double s2 = std::sqrt(2.0);
    switch (preset) {
        case ModelPreset::two_spin: {
            DirectModel m;
            m.spectrum_a = {-0.5, 0.5};
            m.spectrum_b = {-(s2 - 1) / 2, (s2 - 1) / 2};
            m.couplings = {{gamma, pauli_x(), pauli_x()}, {-gamma, pauli_y(), pauli_y()}};
            return m;
        }
        case ModelPreset::fourlevel_a:
        case ModelPreset::fourlevel_b: {
            DirectModel m;
            m.spectrum_a = (preset == ModelPreset::fourlevel_a)
                               ? std::vector<double>{1, 5, 8, 10}
                               : std::vector<double>{1, 3, 7, 13};
            for (double e : m.spectrum_a) m.spectrum_b.push_back(std::sqrt(e));
            m.couplings = {{gamma, tridiagonal_coupling(4), tridiagonal_coupling(4)}};
            return m;
        }
        case ModelPreset::slow_spins_fast_bath: {
            IndirectModel m;
            m.spectrum_a = {0, 10, 20, 30};
            m.spectrum_b = {-0.5, 0.5};
            m.spectrum_c = {-s2 / 2, s2 / 2};
            m.gamma = gamma;
            m.v_a = bath_coupling_identity ? ComplexMatrix::identity(4) : tridiagonal_coupling(4);
            m.v_b = pauli_x();
            m.v_c = pauli_x();
            m.bath_temperature = Temperature(5.0);
            return m;
        }
        case ModelPreset::fast_spins_slow_bath: {
            IndirectModel m;
            m.spectrum_a = {0, 1, 2, 3};
            m.spectrum_b = {-5, 5};
            m.spectrum_c = {-5 * s2, 5 * s2};
            m.gamma = gamma;
            m.v_a = bath_coupling_identity ? ComplexMatrix::identity(4) : tridiagonal_coupling(4);
            m.v_b = pauli_x();
            m.v_c = pauli_x();
            m.bath_temperature = Temperature(0.01);
            return m;
        }
    }
    throw std::invalid_argument("unknown preset");
}

Model make_preset(ModelPreset preset) { return make_preset(preset, preset_default_gamma(preset)); }

ModelPreset preset_from_name(const std::string& name) {
    if (name == "two-spin") return ModelPreset::two_spin;
    if (name == "fourlevel-a") return ModelPreset::fourlevel_a;
    if (name == "fourlevel-b") return ModelPreset::fourlevel_b;
    if (name == "slow-spins-fast-bath") return ModelPreset::slow_spins_fast_bath;
    if (name == "fast-spins-slow-bath") return ModelPreset::fast_spins_slow_bath;
    throw std::invalid_argument("unknown preset name: " + name);
}

std::string preset_name(ModelPreset preset) {
    switch (preset) {
        case ModelPreset::two_spin: return "two-spin";
        case ModelPreset::fourlevel_a: return "fourlevel-a";
        case ModelPreset::fourlevel_b: return "fourlevel-b";
        case ModelPreset::slow_spins_fast_bath: return "slow-spins-fast-bath";
        case ModelPreset::fast_spins_slow_bath: return "fast-spins-slow-bath";
    }
    throw std::invalid_argument("unknown preset");
}

}  // namespace entdyn
