#include "entdyn/thermal.hpp"

#include <algorithm>
#include <cmath>

namespace entdyn {

DensityMatrix DensityMatrix::checked(ComplexMatrix m, CompositeSpace space) {
    m.check_valid();
    if (m.n != space.total()) throw DimensionMismatch("density matrix does not live on its space");
    if (m.hermiticity_defect() > 1e-12)
        throw NotHermitian("density matrix must be Hermitian to 1e-12");
    if (std::abs(m.trace() - complex(1.0)) > 1e-12)
        throw std::invalid_argument("density matrix trace must be 1 to 1e-12");
    std::vector<double> eigs = herm_eigvals(m);
    if (eigs.front() < -1e-10)
        throw std::invalid_argument("density matrix must be positive semidefinite to 1e-10");
    return DensityMatrix{std::move(m), std::move(space)};
}

std::vector<double> gibbs_populations(const std::vector<double>& energies, Temperature t) {
    if (energies.empty()) throw DimensionMismatch("populations need at least one energy");
    const std::size_t n = energies.size();
    std::vector<double> p(n);
    if (t.infinite) {
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(n));
        return p;
    }
    const double e_min = *std::min_element(energies.begin(), energies.end());
    if (t.value == 0.0) {
        // Uniform mixture over the ground set (maximum-entropy limit of T -> 0+).
        const double degeneracy_tol = 1e-10 * std::max(1.0, std::abs(e_min));
        double count = 0;
        for (double e : energies)
            if (e - e_min <= degeneracy_tol) count += 1;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = (energies[i] - e_min <= degeneracy_tol) ? 1.0 / count : 0.0;
        return p;
    }
    double z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = std::exp(-(energies[i] - e_min) / t.value);
        z += p[i];
    }
    for (double& v : p) v /= z;
    return p;
}

DensityMatrix gibbs(const ComplexMatrix& h, Temperature t) {
    EigenDecomposition eig = herm_eig(h);
    std::vector<double> p = gibbs_populations(eig.values, t);
    const int n = h.n;
    ComplexMatrix rho(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            complex s = 0;
            for (int k = 0; k < n; ++k)
                s += eig.vectors.at(i, k) * p[k] * std::conj(eig.vectors.at(j, k));
            rho.at(i, j) = s;
        }
    return DensityMatrix{std::move(rho), CompositeSpace({n})};
}

DensityMatrix product_state(const std::vector<DensityMatrix>& parts) {
    if (parts.size() < 2) throw DimensionMismatch("product state needs at least two parts");
    ComplexMatrix m = parts[0].matrix;
    std::vector<int> dims = parts[0].space.dims;
    for (std::size_t k = 1; k < parts.size(); ++k) {
        m = kron(m, parts[k].matrix);
        dims.insert(dims.end(), parts[k].space.dims.begin(), parts[k].space.dims.end());
    }
    return DensityMatrix{std::move(m), CompositeSpace(std::move(dims))};
}

}  // namespace entdyn
