#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <vector>

#include "entmap/errors.hpp"

namespace entmap {

using complex = std::complex<double>;
using cvector = std::vector<complex>;

/// Bipartite subsystem dimensions (dA, dB). Composite index is a*dB + b.
struct Dims {
    std::size_t a = 1;
    std::size_t b = 1;

    std::size_t total() const { return a * b; }
    bool operator==(const Dims&) const = default;
};

enum class Side { A, B };

/// Dense complex matrix, row-major. Small sizes only (everything here is
/// at most dA*dB <= 81 square); no attempt at sparsity or blocking.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::size_t rows, std::size_t cols, cvector entries);

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static CMatrix diag(const std::vector<double>& d);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<complex>> rows);
    /// Column vector |u><v| outer product (u v^dagger).
    static CMatrix outer(const cvector& u, const cvector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const cvector& entries() const { return data_; }
    cvector& entries() { return data_; }

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator*(complex s) const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator*=(complex s);

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;

    complex trace() const;
    /// max |entry|
    double max_abs() const;
    double frobenius_norm() const;
    /// max |m - m^dagger| over entries
    double hermiticity_defect() const;

    /// Matrix-vector product.
    cvector apply(const cvector& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    cvector data_;
};

CMatrix operator*(complex s, const CMatrix& m);

/// max |a - b| over entries; matrices must have equal shape.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

double norm(const cvector& v);
cvector normalized(const cvector& v);
complex inner(const cvector& u, const cvector& v); // <u|v>, conjugate-linear in u
cvector kron(const cvector& u, const cvector& v);

struct EigResult {
    std::vector<double> values; // ascending
    CMatrix vectors;            // unitary; column k pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// The input is symmetrized as (m + m^dagger)/2 before solving; inputs with
/// hermiticity defect above 1e-10 are rejected. Deterministic: no pivoting
/// choices depend on anything but the entries.
EigResult hermitian_eig(const CMatrix& m);

/// V f(diag) V^dagger for Hermitian m. f is applied to each eigenvalue as-is.
CMatrix matrix_func(const CMatrix& m, const std::function<double(double)>& f);

/// Eigenvalue floor used when taking logarithms of nearly singular PSD
/// matrices. Keeps relative-entropy objectives finite; support violations
/// show up as values on the -log2(kLogFloor) ~ 40 scale instead of inf.
inline constexpr double kLogFloor = 1e-12;

/// f = sqrt with eigenvalues clamped at 0.
CMatrix matrix_sqrt(const CMatrix& m);
/// f = log2 with eigenvalues floored at kLogFloor. Logs are base 2
/// throughout the library (entanglement in ebits).
CMatrix matrix_log2(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Transpose one subsystem of a bipartite operator. Involutive.
CMatrix partial_transpose(const CMatrix& rho, Dims dims, Side side);

/// Trace out the complement of `keep`.
CMatrix partial_trace(const CMatrix& rho, Dims dims, Side keep);

/// Sum of |eigenvalue| (trace norm of a Hermitian matrix).
double trace_norm_hermitian(const CMatrix& m);

/// Realignment map: R[(i,j),(k,l)] = rho[(i,k),(j,l)] with i,j on A and
/// k,l on B. Result is dA^2 x dB^2. ||R||_1 > 1 witnesses entanglement
/// (computable cross-norm / realignment criterion).
CMatrix realign(const CMatrix& rho, Dims dims);

/// Sum of singular values, via the Hermitian eigendecomposition of m^dagger m.
double singular_value_sum(const CMatrix& m);

} // namespace entmap
