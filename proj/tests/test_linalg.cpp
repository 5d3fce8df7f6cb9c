#include <doctest.h>

#include <cmath>

#include "entmap/linalg.hpp"
#include "entmap/states.hpp"
#include "test_util.hpp"

using namespace entmap;
using test::close;
using test::random_hermitian;

TEST_CASE("hermitian_eig identity and diagonal anchors") {
    auto id = hermitian_eig(CMatrix::identity(2));
    CHECK(close(id.values[0], 1.0, 1e-12));
    CHECK(close(id.values[1], 1.0, 1e-12));

    auto dg = hermitian_eig(CMatrix::diag({3.0, -1.0}));
    CHECK(close(dg.values[0], -1.0, 1e-12));
    CHECK(close(dg.values[1], 3.0, 1e-12));

    // Pauli X: characteristic polynomial l^2 - 1 = 0 by hand.
    auto px = hermitian_eig(CMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(close(px.values[0], -1.0, 1e-12));
    CHECK(close(px.values[1], 1.0, 1e-12));
}

TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(CMatrix(2, 3)), NonSquareError);
    CHECK_THROWS_AS(hermitian_eig(CMatrix::from_rows({{0, 1}, {0, 0}})), NotHermitianError);
}

TEST_CASE("hermitian_eig reconstruction and unitarity over random matrices") {
    for (std::size_t n = 2; n <= 9; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const CMatrix m = random_hermitian(n, 1000 * n + seed);
            const EigResult eig = hermitian_eig(m);

            for (std::size_t k = 0; k + 1 < n; ++k)
                CHECK(eig.values[k] <= eig.values[k + 1]);

            CMatrix rebuilt(n, n);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        rebuilt(i, j) += eig.values[k] * eig.vectors(i, k) *
                                         std::conj(eig.vectors(j, k));
            CHECK(max_abs_diff(rebuilt, m) <= 1e-9);

            const CMatrix gram = eig.vectors.adjoint() * eig.vectors;
            CHECK(max_abs_diff(gram, CMatrix::identity(n)) <= 1e-9);
        }
    }
}

TEST_CASE("matrix_func on diagonal matrices") {
    const CMatrix s = matrix_sqrt(CMatrix::identity(3));
    CHECK(max_abs_diff(s, CMatrix::identity(3)) <= 1e-12);

    const CMatrix s2 = matrix_sqrt(CMatrix::diag({4.0, 9.0}));
    CHECK(max_abs_diff(s2, CMatrix::diag({2.0, 3.0})) <= 1e-12);

    const CMatrix lg = matrix_log2(CMatrix::diag({0.5, 0.5}));
    CHECK(max_abs_diff(lg, CMatrix::diag({-1.0, -1.0})) <= 1e-12);
}

TEST_CASE("matrix_func result is hermitian") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CMatrix m = random_hermitian(5, 77 + seed);
        const CMatrix f = matrix_func(m, [](double x) { return x * x + 1.0; });
        CHECK(f.hermiticity_defect() <= 1e-10);
    }
}

TEST_CASE("kron anchors") {
    CHECK(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)),
                       CMatrix::identity(4)) == 0.0);
    CHECK(max_abs_diff(kron(CMatrix::diag({1.0, 2.0}), CMatrix::diag({3.0, 4.0})),
                       CMatrix::diag({3.0, 4.0, 6.0, 8.0})) == 0.0);

    // (X (x) X) |00> = |11>, direct index bookkeeping.
    const CMatrix x = CMatrix::from_rows({{0, 1}, {1, 0}});
    const cvector e00 = {1, 0, 0, 0};
    const cvector out = kron(x, x).apply(e00);
    CHECK(std::abs(out[3] - complex(1.0)) <= 1e-15);
    CHECK(std::abs(out[0]) + std::abs(out[1]) + std::abs(out[2]) <= 1e-15);
}

TEST_CASE("partial transpose of a product state stays PSD") {
    const CMatrix rho_a = CMatrix::from_rows({{0.7, complex(0.1, 0.2)},
                                              {complex(0.1, -0.2), 0.3}});
    const CMatrix rho_b = CMatrix::from_rows({{0.6, complex(0.0, -0.1)},
                                              {complex(0.0, 0.1), 0.4}});
    const CMatrix prod = kron(rho_a, rho_b);
    const CMatrix pt = partial_transpose(prod, {2, 2}, Side::B);
    CHECK(max_abs_diff(pt, kron(rho_a, rho_b.transpose())) <= 1e-15);
    CHECK(hermitian_eig(pt).values.front() >= -1e-12);
}

TEST_CASE("partial transpose of the Bell state has minimum eigenvalue -1/2") {
    const DensityMatrix bell_rho = bell(0).projector();
    for (Side side : {Side::A, Side::B}) {
        const CMatrix pt = partial_transpose(bell_rho.mat(), {2, 2}, side);
        const EigResult eig = hermitian_eig(pt);
        CHECK(close(eig.values[0], -0.5, 1e-12));
        CHECK(close(eig.values[1], 0.5, 1e-12));
        CHECK(close(eig.values[3], 0.5, 1e-12));
    }
}

TEST_CASE("partial transpose is an exact involution") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DensityMatrix rho = random_mixed({2, 3}, 6, seed);
        for (Side side : {Side::A, Side::B}) {
            const CMatrix twice =
                partial_transpose(partial_transpose(rho.mat(), {2, 3}, side), {2, 3}, side);
            CHECK(max_abs_diff(twice, rho.mat()) == 0.0);
        }
    }
}

TEST_CASE("partial trace of a product state recovers the factor") {
    const CMatrix rho_a = CMatrix::from_rows({{0.7, complex(0.1, 0.2)},
                                              {complex(0.1, -0.2), 0.3}});
    const CMatrix rho_b = CMatrix::from_rows({{0.2, 0.0}, {0.0, 0.8}});
    const CMatrix prod = kron(rho_a, rho_b);
    CHECK(max_abs_diff(partial_trace(prod, {2, 2}, Side::A), rho_a) <= 1e-12);
    CHECK(max_abs_diff(partial_trace(prod, {2, 2}, Side::B), rho_b) <= 1e-12);
}

TEST_CASE("partial trace of the Bell state is maximally mixed") {
    const DensityMatrix rho = bell(0).projector();
    const CMatrix marg = partial_trace(rho.mat(), {2, 2}, Side::A);
    CHECK(max_abs_diff(marg, CMatrix::identity(2) * complex(0.5)) <= 1e-12);
}

TEST_CASE("partial trace preserves the trace") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DensityMatrix rho = random_mixed({3, 3}, 9, 50 + seed);
        for (Side keep : {Side::A, Side::B}) {
            const CMatrix red = partial_trace(rho.mat(), {3, 3}, keep);
            CHECK(std::abs(red.trace() - rho.mat().trace()) <= 1e-12);
        }
    }
}

TEST_CASE("trace norm anchors") {
    CHECK(close(trace_norm_hermitian(CMatrix::diag({1.0, -1.0})), 2.0, 1e-12));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DensityMatrix rho = random_mixed({2, 2}, 4, 900 + seed);
        CHECK(close(trace_norm_hermitian(rho.mat()), 1.0, 1e-10));
    }
    const CMatrix pt = partial_transpose(bell(0).projector().mat(), {2, 2}, Side::B);
    CHECK(close(trace_norm_hermitian(pt), 2.0, 1e-10));
}

TEST_CASE("realignment anchors") {
    // Product state: rank-1 realignment, ||R||_1 = sqrt(tr rho_A^2 tr rho_B^2) <= 1.
    const DensityMatrix rho_a = random_mixed({1, 2}, 2, 3);
    const DensityMatrix rho_b = random_mixed({1, 2}, 2, 4);
    const CMatrix prod = kron(rho_a.mat(), rho_b.mat());
    const double expected = std::sqrt((rho_a.mat() * rho_a.mat()).trace().real() *
                                      (rho_b.mat() * rho_b.mat()).trace().real());
    // Zero singular values of the rank-1 realignment pick up sqrt-amplified
    // eigensolver noise (~1e-8), hence the looser tolerance here.
    const double got = singular_value_sum(realign(prod, {2, 2}));
    CHECK(close(got, expected, 2e-8));
    CHECK(got <= 1.0 + 1e-10);

    // Bell state: ||R||_1 = 2 (hand SVD of the 4x4 realignment).
    CHECK(close(singular_value_sum(realign(bell(0).projector().mat(), {2, 2})), 2.0, 1e-10));

    // Maximally mixed 2x2: R = vec(I) vec(I)^T / 4, single singular value 1/2.
    const CMatrix mm = CMatrix::identity(4) * complex(0.25);
    CHECK(close(singular_value_sum(realign(mm, {2, 2})), 0.5, 2e-8));
}

TEST_CASE("singular value sum anchors and hermitian agreement") {
    CHECK(close(singular_value_sum(CMatrix::identity(5)), 5.0, 1e-10));
    CHECK(singular_value_sum(CMatrix::zero(3, 3)) == 0.0);
    CHECK(close(singular_value_sum(CMatrix::diag({3.0, -4.0})), 7.0, 1e-10));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CMatrix m = random_hermitian(4, 600 + seed);
        CHECK(close(singular_value_sum(m), trace_norm_hermitian(m), 1e-9));
    }
}

TEST_CASE("bipartite ops reject mismatched dims") {
    const CMatrix m = CMatrix::identity(6);
    CHECK_THROWS_AS(partial_transpose(m, {2, 2}, Side::B), DimensionMismatchError);
    CHECK_THROWS_AS(partial_trace(m, {4, 2}, Side::A), DimensionMismatchError);
    CHECK_THROWS_AS(realign(m, {5, 2}), DimensionMismatchError);
}
