#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace entdyn {

using complex = std::complex<double>;

// ---- errors ----

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotHermitian : std::invalid_argument {
    explicit NotHermitian(const std::string& what) : std::invalid_argument(what) {}
};

// ---- ComplexMatrix ----

// Dense square complex matrix, row-major; dim >= 1, entries finite.
struct ComplexMatrix {
    int n = 0;
    std::vector<complex> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::vector<complex> data);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    complex& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const complex& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    // Throws on non-square data, dim < 1, or non-finite entries.
    void check_valid() const;

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    complex trace() const;
    // Largest |h - h^dagger| entry relative to the Frobenius norm (0 for the zero matrix).
    double hermiticity_defect() const;
    bool is_hermitian(double rel_tol = 1e-12) const;
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(complex s, const ComplexMatrix& x);
ComplexMatrix operator*(double s, const ComplexMatrix& x);

// Kronecker product; entry [(i*db+k),(j*db+l)] = a[i,j]*b[k,l].
ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);

// out = x * y without allocating; out must not alias x or y.
void mul_into(const ComplexMatrix& x, const ComplexMatrix& y, ComplexMatrix& out);

// ---- eigendecomposition ----

// values ascending; vectors unitary, columns are eigenvectors paired with values.
struct EigenDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Cyclic complex Jacobi; input must be Hermitian to 1e-12 relative (it is
// symmetrized before iterating). Converges when the off-diagonal Frobenius
// norm drops below 1e-12 * ||h||_F.
EigenDecomposition herm_eig(const ComplexMatrix& h);

// Eigenvalues-only path (ascending). Same algorithm without vector updates.
std::vector<double> herm_eigvals(const ComplexMatrix& h);

// In-place worker behind herm_eigvals: destroys `scratch`, appends nothing,
// fills `out` (resized to n) ascending. No Hermiticity check; callers in hot
// loops guarantee it structurally.
void herm_eigvals_inplace(ComplexMatrix& scratch, std::vector<double>& out);

// U = exp(-i h t) via herm_eig; unitary to 1e-10.
ComplexMatrix propagator(const ComplexMatrix& h, double t);

// Tr sqrt(a^dagger a); for Hermitian input the sum of |eigenvalues|.
double trace_norm(const ComplexMatrix& m);

}  // namespace entdyn
