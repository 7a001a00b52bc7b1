#pragma once

// Division-algebra matrices carried as complex matrices.
//
// Real (beta=1) and complex (beta=2) matrices are stored directly.  A
// quaternion (beta=4) r x c matrix Z + W j is stored as the 2r x 2c complex
// matrix [[Z, W], [-conj(W), conj(Z)]], which respects products, adjoints and
// the spectrum (every eigenvalue appears twice).  Octonion matrices are not
// associative and have no such representation.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "jackdiv/core.hpp"

namespace jackdiv {

using CMatrix = Eigen::MatrixXcd;

// Rows/cols of the complex representation of a logical r x c matrix.
int representation_size(int logical, const DivisionAlgebra& algebra);

// Throws UnsupportedError for beta = 8.
void require_matrix_support(const DivisionAlgebra& algebra, const char* what);

// Logical rows x cols matrix with independent Gaussian real components of the
// given variance.
CMatrix gaussian_matrix(int rows, int cols, const DivisionAlgebra& algebra,
                        double component_variance, std::mt19937_64& rng);

// Representation of the real diagonal matrix diag(d).
CMatrix real_diagonal(const std::vector<double>& d, const DivisionAlgebra& algebra);

// Eigenvalues of a Hermitian representation, descending, one per logical
// eigenvalue (quaternion pairs merged).  Throws std::logic_error if a pair
// disagrees by more than 1e-9 * ||S||.
std::vector<double> hermitian_eigenvalues(const CMatrix& s, const DivisionAlgebra& algebra);

// Entry (i, j) of the logical matrix as a real 4-vector (1, i, j, k parts).
// For beta <= 2 the last two are zero.
Eigen::Vector4d logical_entry(const CMatrix& a, int i, int j, const DivisionAlgebra& algebra);

}  // namespace jackdiv
