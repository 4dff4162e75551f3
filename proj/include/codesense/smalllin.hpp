#ifndef CODESENSE_SMALLLIN_HPP
#define CODESENSE_SMALLLIN_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace codesense {

// Small dense helpers for the oracle paths (n <= 64). Row-major storage.

/// Eigenvalues of a symmetric n x n matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm falls below 1e-12.
/// Returns eigenvalues sorted ascending. The input is copied.
std::vector<double> jacobi_eigenvalues(std::span<const double> a, std::size_t n);

/// Same iteration, additionally accumulating the rotations. On return
/// `vectors` is row-major n x n with column i the eigenvector of the i-th
/// (ascending) eigenvalue.
std::vector<double> jacobi_eigensystem(std::span<const double> a, std::size_t n,
                                       std::vector<double>& vectors);

/// Solves A x = b for symmetric positive definite A via Cholesky.
/// Returns false when a pivot falls below `tol` (not positive definite).
bool cholesky_solve(std::span<const double> a, std::size_t n, std::span<const double> b,
                    std::vector<double>& x, double tol = 1e-13);

}  // namespace codesense

#endif
