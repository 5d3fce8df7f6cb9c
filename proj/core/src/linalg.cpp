#include "entmap/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "jacobi_detail.hpp"

namespace entmap {

namespace {

constexpr double kHermitianInputTol = 1e-10;
constexpr double kJacobiOffTol = 1e-13; // off-diagonal Frobenius norm target
constexpr int kJacobiMaxSweeps = 64;

void require_square(const CMatrix& m, const char* who) {
    if (!m.square())
        throw NonSquareError(std::string(who) + ": matrix is not square");
}

void require_bipartite(const CMatrix& rho, Dims dims, const char* who) {
    require_square(rho, who);
    if (rho.rows() != dims.total())
        throw DimensionMismatchError(std::string(who) + ": matrix size " +
                                     std::to_string(rho.rows()) + " != dA*dB = " +
                                     std::to_string(dims.total()));
}

} // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, cvector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionMismatchError("CMatrix: entry count does not match shape");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diag(const std::vector<double>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    CMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c)
            throw DimensionMismatchError("CMatrix::from_rows: ragged rows");
        std::size_t j = 0;
        for (complex v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::outer(const cvector& u, const cvector& v) {
    CMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("CMatrix::operator+: shape mismatch");
    CMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("CMatrix::operator-: shape mismatch");
    CMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionMismatchError("CMatrix::operator*: inner dimensions differ");
    CMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const complex a = (*this)(i, k);
            if (a == complex{}) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    }
    return r;
}

CMatrix CMatrix::operator*(complex s) const {
    CMatrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("CMatrix::operator+=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conjugate() const {
    CMatrix r = *this;
    for (auto& v : r.data_) v = std::conj(v);
    return r;
}

complex CMatrix::trace() const {
    if (!square()) throw NonSquareError("CMatrix::trace: matrix is not square");
    complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::hermiticity_defect() const {
    if (!square()) throw NonSquareError("hermiticity_defect: matrix is not square");
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

cvector CMatrix::apply(const cvector& v) const {
    if (v.size() != cols_)
        throw DimensionMismatchError("CMatrix::apply: vector length mismatch");
    cvector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        complex s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

CMatrix operator*(complex s, const CMatrix& m) { return m * s; }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double norm(const cvector& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

cvector normalized(const cvector& v) {
    const double n = norm(v);
    if (n == 0.0) throw OutOfRangeError("normalized: zero vector");
    cvector r = v;
    for (auto& x : r) x /= n;
    return r;
}

complex inner(const cvector& u, const cvector& v) {
    if (u.size() != v.size())
        throw DimensionMismatchError("inner: length mismatch");
    complex s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

cvector kron(const cvector& u, const cvector& v) {
    cvector r(u.size() * v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            r[i * v.size() + j] = u[i] * v[j];
    return r;
}

namespace detail {

// Cyclic Jacobi for complex Hermitian matrices. Each rotation zeroes one
// off-diagonal pair (p,q) with the unitary
//   U_pp = c, U_pq = s e^{i phi}, U_qp = -s e^{-i phi}, U_qq = c,
// phi = arg(a_pq). With r = |a_pq| and tau = (a_qq - a_pp) / (2r) the
// standard choice t = sign(tau)/(|tau| + sqrt(1+tau^2)) picks the rotation
// angle below pi/4, which keeps the iteration quadratically convergent.
void jacobi_hermitian(std::size_t n, complex* a, complex* v,
                      double off_tol, int max_sweeps) {
    auto at = [&](std::size_t i, std::size_t j) -> complex& { return a[i * n + j]; };
    auto vt = [&](std::size_t i, std::size_t j) -> complex& { return v[i * n + j]; };

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(at(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() > off_tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex apq = at(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                const complex phase = apq / r; // e^{i phi}
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const complex sp = s * phase;             // s e^{i phi}
                const complex spc = s * std::conj(phase); // s e^{-i phi}

                // A <- U^dagger A U; columns first, then rows.
                for (std::size_t i = 0; i < n; ++i) {
                    const complex aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - spc * aiq;
                    at(i, q) = sp * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const complex apj = at(p, j), aqj = at(q, j);
                    at(p, j) = c * apj - sp * aqj;
                    at(q, j) = spc * apj + c * aqj;
                }
                // Rounding can leave a tiny residue; pin the zeroed pair and
                // keep the diagonal exactly real.
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                at(p, p) = complex(at(p, p).real(), 0.0);
                at(q, q) = complex(at(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) {
                    const complex vip = vt(i, p), viq = vt(i, q);
                    vt(i, p) = c * vip - spc * viq;
                    vt(i, q) = sp * vip + c * viq;
                }
            }
        }
    }
}

} // namespace detail

EigResult hermitian_eig(const CMatrix& m) {
    require_square(m, "hermitian_eig");
    if (m.hermiticity_defect() > kHermitianInputTol)
        throw NotHermitianError("hermitian_eig: hermiticity defect exceeds 1e-10");

    const std::size_t n = m.rows();
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    CMatrix v = CMatrix::identity(n);

    detail::jacobi_hermitian(n, a.entries().data(), v.entries().data(),
                             kJacobiOffTol, kJacobiMaxSweeps);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigResult res;
    res.values.resize(n);
    res.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        res.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            res.vectors(i, k) = v(i, order[k]);
    }
    return res;
}

CMatrix matrix_func(const CMatrix& m, const std::function<double(double)>& f) {
    const EigResult eig = hermitian_eig(m);
    const std::size_t n = m.rows();
    CMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eig.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const complex vik = eig.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                r(i, j) += fk * vik * std::conj(eig.vectors(j, k));
        }
    }
    return r;
}

CMatrix matrix_sqrt(const CMatrix& m) {
    return matrix_func(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

CMatrix matrix_log2(const CMatrix& m) {
    return matrix_func(m, [](double x) { return std::log2(std::max(x, kLogFloor)); });
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const complex av = a(ia, ja);
            if (av == complex{}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
        }
    return r;
}

CMatrix partial_transpose(const CMatrix& rho, Dims dims, Side side) {
    require_bipartite(rho, dims, "partial_transpose");
    const std::size_t dA = dims.a, dB = dims.b;
    CMatrix r(rho.rows(), rho.cols());
    for (std::size_t a1 = 0; a1 < dA; ++a1)
        for (std::size_t b1 = 0; b1 < dB; ++b1)
            for (std::size_t a2 = 0; a2 < dA; ++a2)
                for (std::size_t b2 = 0; b2 < dB; ++b2) {
                    const std::size_t row = a1 * dB + b1, col = a2 * dB + b2;
                    if (side == Side::B)
                        r(row, col) = rho(a1 * dB + b2, a2 * dB + b1);
                    else
                        r(row, col) = rho(a2 * dB + b1, a1 * dB + b2);
                }
    return r;
}

CMatrix partial_trace(const CMatrix& rho, Dims dims, Side keep) {
    require_bipartite(rho, dims, "partial_trace");
    const std::size_t dA = dims.a, dB = dims.b;
    if (keep == Side::A) {
        CMatrix r(dA, dA);
        for (std::size_t a1 = 0; a1 < dA; ++a1)
            for (std::size_t a2 = 0; a2 < dA; ++a2) {
                complex s = 0.0;
                for (std::size_t b = 0; b < dB; ++b)
                    s += rho(a1 * dB + b, a2 * dB + b);
                r(a1, a2) = s;
            }
        return r;
    }
    CMatrix r(dB, dB);
    for (std::size_t b1 = 0; b1 < dB; ++b1)
        for (std::size_t b2 = 0; b2 < dB; ++b2) {
            complex s = 0.0;
            for (std::size_t a = 0; a < dA; ++a)
                s += rho(a * dB + b1, a * dB + b2);
            r(b1, b2) = s;
        }
    return r;
}

double trace_norm_hermitian(const CMatrix& m) {
    const EigResult eig = hermitian_eig(m); // rejects non-Hermitian input
    double s = 0.0;
    for (double v : eig.values) s += std::abs(v);
    return s;
}

CMatrix realign(const CMatrix& rho, Dims dims) {
    require_bipartite(rho, dims, "realign");
    const std::size_t dA = dims.a, dB = dims.b;
    CMatrix r(dA * dA, dB * dB);
    for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t j = 0; j < dA; ++j)
            for (std::size_t k = 0; k < dB; ++k)
                for (std::size_t l = 0; l < dB; ++l)
                    r(i * dA + j, k * dB + l) = rho(i * dB + k, j * dB + l);
    return r;
}

double singular_value_sum(const CMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    // Singular values via the smaller of m^dagger m / m m^dagger.
    const CMatrix g = (m.rows() >= m.cols()) ? m.adjoint() * m : m * m.adjoint();
    const EigResult eig = hermitian_eig(g);
    double s = 0.0;
    for (double v : eig.values) s += std::sqrt(std::max(v, 0.0));
    return s;
}

} // namespace entmap
