#pragma once

#include <cstddef>

#include "entmap/linalg.hpp"

namespace entmap::detail {

// In-place cyclic Jacobi on a raw row-major Hermitian n x n buffer `a`.
// On return the diagonal of `a` holds the (unsorted) eigenvalues and `v`
// holds the accumulated unitary, column k pairing with a[k*n+k]. `v` must
// come in as the identity (or any unitary to compose with). No allocation.
void jacobi_hermitian(std::size_t n, complex* a, complex* v,
                      double off_tol = 1e-13, int max_sweeps = 64);

} // namespace entmap::detail
