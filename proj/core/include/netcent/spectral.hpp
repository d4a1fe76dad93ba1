#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "netcent/errors.hpp"

namespace netcent {

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;  // unit 2-norm, largest-magnitude entry positive
};

struct SingularTriplet {
  double value = 0.0;    // nonnegative
  Eigen::VectorXd left;  // unit, sign fixed through the left vector
  Eigen::VectorXd right;
};

enum class BasisOrdering { abs_value_desc, off_diagonal_greedy };

struct SpectralBasis {
  std::vector<EigenPair> pairs;
  BasisOrdering ordering = BasisOrdering::abs_value_desc;
};

struct SingularBasis {
  std::vector<SingularTriplet> triplets;  // values descending
};

// Top k eigenpairs of a symmetric matrix ordered by |value| descending, the
// positive one first on equal magnitude. Vectors are unit length with the
// largest-magnitude entry (first such, on ties) made positive, which pins the
// sign deterministically. Residual ||m v - value v|| must stay within
// tol * ||m||_F and pairwise dot products within 1e-8, else numeric_error.
SpectralBasis symmetric_eigs(const Eigen::MatrixXd& m, std::size_t k,
                             double tol = 1e-10);

// Top k singular triplets, values descending, sign pinned via the left
// vector. Same residual and orthogonality contracts as symmetric_eigs.
SingularBasis top_singular_triplets(const Eigen::MatrixXd& m, std::size_t k,
                                    double tol = 1e-10);

// Solves x = alpha m^T x + beta 1 by LU factorization. Requires beta > 0 and
// alpha * lambda_1 < 1 where lambda_1 is the dominant eigenvalue of m; the
// error message reports lambda_1 when the bound fails.
Eigen::VectorXd katz_solve(const Eigen::MatrixXd& m, double alpha, double beta);

// Largest eigenvalue of a symmetric matrix, spectral radius otherwise.
double dominant_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace netcent
