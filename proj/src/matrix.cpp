#include "entdyn/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entdyn {

ComplexMatrix::ComplexMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1) throw DimensionMismatch("matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<complex> data) : n(dim), a(std::move(data)) {
    check_valid();
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

void ComplexMatrix::check_valid() const {
    if (n < 1) throw DimensionMismatch("matrix dimension must be >= 1");
    if (a.size() != static_cast<std::size_t>(n) * n)
        throw DimensionMismatch("matrix storage does not match dimension");
    for (const complex& z : a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const complex& z : a) s += std::norm(z);
    return std::sqrt(s);
}

complex ComplexMatrix::trace() const {
    complex s = 0;
    for (int i = 0; i < n; ++i) s += at(i, i);
    return s;
}

double ComplexMatrix::hermiticity_defect() const {
    double worst = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    double scale = frobenius_norm();
    return scale > 0 ? worst / scale : worst;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const { return hermiticity_defect() <= rel_tol; }

static void require_same_dim(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.n != y.n) throw DimensionMismatch("matrix dimensions differ");
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_same_dim(x, y);
    ComplexMatrix r = x;
    for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] += y.a[k];
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_same_dim(x, y);
    ComplexMatrix r = x;
    for (std::size_t k = 0; k < r.a.size(); ++k) r.a[k] -= y.a[k];
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    require_same_dim(x, y);
    const int n = x.n;
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i) {
        const complex* xi = &x.a[static_cast<std::size_t>(i) * n];
        complex* ri = &r.a[static_cast<std::size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const complex xik = xi[k];
            if (xik == complex(0.0)) continue;
            const complex* yk = &y.a[static_cast<std::size_t>(k) * n];
            for (int j = 0; j < n; ++j) ri[j] += xik * yk[j];
        }
    }
    return r;
}

void mul_into(const ComplexMatrix& x, const ComplexMatrix& y, ComplexMatrix& out) {
    require_same_dim(x, y);
    const int n = x.n;
    if (out.n != n) out = ComplexMatrix(n);
    std::fill(out.a.begin(), out.a.end(), complex(0.0));
    for (int i = 0; i < n; ++i) {
        const complex* xi = &x.a[static_cast<std::size_t>(i) * n];
        complex* oi = &out.a[static_cast<std::size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const complex xik = xi[k];
            if (xik == complex(0.0)) continue;
            const complex* yk = &y.a[static_cast<std::size_t>(k) * n];
            for (int j = 0; j < n; ++j) oi[j] += xik * yk[j];
        }
    }
}

ComplexMatrix operator*(complex s, const ComplexMatrix& x) {
    ComplexMatrix r = x;
    for (complex& z : r.a) z *= s;
    return r;
}

ComplexMatrix operator*(double s, const ComplexMatrix& x) { return complex(s, 0.0) * x; }

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
    const int da = x.n, db = y.n;
    ComplexMatrix r(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            const complex xij = x.at(i, j);
            if (xij == complex(0.0)) continue;
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l) r.at(i * db + k, j * db + l) = xij * y.at(k, l);
        }
    return r;
}

// ---- Jacobi eigensolver ----

namespace {

double offdiag_sq(const ComplexMatrix& m) {
    double s = 0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j) s += std::norm(m.at(i, j));
    return s;
}

// One cyclic Jacobi pass annihilating every |a_pq| above `skip`; updates the
// column accumulator `vecs` when present.
void jacobi_sweep(ComplexMatrix& m, ComplexMatrix* vecs, double skip) {
    const int n = m.n;
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const complex apq = m.at(p, q);
            const double r = std::abs(apq);
            if (r <= skip) continue;
            const double alpha = m.at(p, p).real();
            const double beta = m.at(q, q).real();
            const complex phase = apq / r;
            const double theta = (alpha - beta) / (2.0 * r);
            const double t = (theta >= 0 ? 1.0 : -1.0) /
                             (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            const complex se = s * phase;         // applies with rows
            const complex sec = s * std::conj(phase);  // applies with columns

            // rows p,q: new_p = c*row_p + s*e^{i phi}*row_q
            for (int j = 0; j < n; ++j) {
                const complex mp = m.at(p, j), mq = m.at(q, j);
                m.at(p, j) = c * mp + se * mq;
                m.at(q, j) = c * mq - sec * mp;
            }
            // columns p,q: new_p = c*col_p + s*e^{-i phi}*col_q
            for (int i = 0; i < n; ++i) {
                const complex mp = m.at(i, p), mq = m.at(i, q);
                m.at(i, p) = c * mp + sec * mq;
                m.at(i, q) = c * mq - se * mp;
            }
            m.at(p, q) = 0.0;
            m.at(q, p) = 0.0;
            m.at(p, p) = complex(alpha * c * c + 2.0 * r * s * c + beta * s * s, 0.0);
            m.at(q, q) = complex(alpha + beta - m.at(p, p).real(), 0.0);

            if (vecs) {
                for (int i = 0; i < n; ++i) {
                    const complex vp = vecs->at(i, p), vq = vecs->at(i, q);
                    vecs->at(i, p) = c * vp + sec * vq;
                    vecs->at(i, q) = c * vq - se * vp;
                }
            }
        }
    }
}

// Iterates sweeps until the off-diagonal Frobenius norm is < 1e-12 * ||m||_F.
void jacobi_diagonalize(ComplexMatrix& m, ComplexMatrix* vecs) {
    const int n = m.n;
    if (n == 1) return;
    const double target_sq = [&] {
        double norm = m.frobenius_norm();
        double t = 1e-12 * norm;
        return std::max(t * t, 1e-300);
    }();
    const double nn = static_cast<double>(n) * n;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = offdiag_sq(m);
        if (off <= target_sq) return;
        jacobi_sweep(m, vecs, std::sqrt(target_sq / nn));
    }
    if (offdiag_sq(m) > target_sq)
        throw std::runtime_error("Jacobi eigensolver failed to converge");
}

ComplexMatrix symmetrized(const ComplexMatrix& h) {
    if (h.hermiticity_defect() > 1e-12)
        throw NotHermitian("matrix is not Hermitian within 1e-12 relative tolerance");
    ComplexMatrix m(h.n);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) m.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
    return m;
}

}  // namespace

EigenDecomposition herm_eig(const ComplexMatrix& h) {
    h.check_valid();
    ComplexMatrix m = symmetrized(h);
    ComplexMatrix vecs = ComplexMatrix::identity(h.n);
    jacobi_diagonalize(m, &vecs);

    const int n = h.n;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return m.at(i, i).real() < m.at(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = m.at(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors.at(i, k) = vecs.at(i, order[k]);
    }
    return out;
}

void herm_eigvals_inplace(ComplexMatrix& scratch, std::vector<double>& out) {
    jacobi_diagonalize(scratch, nullptr);
    const int n = scratch.n;
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = scratch.at(i, i).real();
    std::sort(out.begin(), out.end());
}

std::vector<double> herm_eigvals(const ComplexMatrix& h) {
    h.check_valid();
    ComplexMatrix m = symmetrized(h);
    std::vector<double> out;
    herm_eigvals_inplace(m, out);
    return out;
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) {
    EigenDecomposition eig = herm_eig(h);
    const int n = h.n;
    std::vector<complex> phase(n);
    for (int k = 0; k < n; ++k) phase[k] = std::exp(complex(0.0, -eig.values[k] * t));
    ComplexMatrix u(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            complex s = 0;
            for (int k = 0; k < n; ++k)
                s += eig.vectors.at(i, k) * phase[k] * std::conj(eig.vectors.at(j, k));
            u.at(i, j) = s;
        }
    return u;
}

double trace_norm(const ComplexMatrix& m) {
    m.check_valid();
    if (m.is_hermitian(1e-12)) {
        double s = 0;
        for (double v : herm_eigvals(m)) s += std::abs(v);
        return s;
    }
    ComplexMatrix gram = m.adjoint() * m;
    double s = 0;
    for (double v : herm_eigvals(gram)) s += std::sqrt(std::max(0.0, v));
    return s;
}

}  // namespace entdyn
