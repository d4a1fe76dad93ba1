#include "netcent/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace netcent {
namespace {

void require_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw numeric_error("matrix is not square");
}

bool is_symmetric(const Eigen::MatrixXd& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

// Flip so the largest-magnitude entry (first one on ties) is positive.
void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  double best_abs = std::abs(v[0]);
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (v[best] < 0.0) v = -v;
}

}  // namespace

SpectralBasis symmetric_eigs(const Eigen::MatrixXd& m, std::size_t k,
                             double tol) {
  require_square(m);
  const auto n = m.rows();
  if (k < 1 || static_cast<Eigen::Index>(k) > n)
    throw config_error("eigenpair count out of range");
  if (!is_symmetric(m)) throw numeric_error("matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw numeric_error("symmetric eigendecomposition failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     const double va = values[a], vb = values[b];
                     if (std::abs(va) != std::abs(vb))
                       return std::abs(va) > std::abs(vb);
                     return va > vb;  // positive first on equal magnitude
                   });

  SpectralBasis basis;
  basis.ordering = BasisOrdering::abs_value_desc;
  basis.pairs.reserve(k);
  const double fro = m.norm();
  for (std::size_t t = 0; t < k; ++t) {
    EigenPair p;
    p.value = values[order[t]];
    p.vector = vectors.col(order[t]);
    fix_sign(p.vector);
    const double resid = (m * p.vector - p.value * p.vector).norm();
    if (resid > tol * std::max(fro, 1e-300)) {
      std::ostringstream msg;
      msg << "eigenpair residual " << resid << " exceeds tolerance";
      throw numeric_error(msg.str());
    }
    basis.pairs.push_back(std::move(p));
  }
  for (std::size_t a = 0; a < basis.pairs.size(); ++a)
    for (std::size_t b = a + 1; b < basis.pairs.size(); ++b)
      if (std::abs(basis.pairs[a].vector.dot(basis.pairs[b].vector)) > 1e-8)
        throw numeric_error("eigenvectors lost orthogonality");
  return basis;
}

SingularBasis top_singular_triplets(const Eigen::MatrixXd& m, std::size_t k,
                                    double tol) {
  require_square(m);
  const auto n = m.rows();
  if (k < 1 || static_cast<Eigen::Index>(k) > n)
    throw config_error("singular triplet count out of range");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw numeric_error("singular value decomposition failed");

  SingularBasis basis;
  basis.triplets.reserve(k);
  const double fro = m.norm();
  for (std::size_t t = 0; t < k; ++t) {
    SingularTriplet s;
    const auto i = static_cast<Eigen::Index>(t);
    s.value = svd.singularValues()[i];
    s.left = svd.matrixU().col(i);
    s.right = svd.matrixV().col(i);
    Eigen::Index best = 0;
    double best_abs = std::abs(s.left[0]);
    for (Eigen::Index r = 1; r < s.left.size(); ++r)
      if (std::abs(s.left[r]) > best_abs) {
        best_abs = std::abs(s.left[r]);
        best = r;
      }
    if (s.left[best] < 0.0) {
      s.left = -s.left;
      s.right = -s.right;
    }
    const double r1 = (m * s.right - s.value * s.left).norm();
    const double r2 = (m.transpose() * s.left - s.value * s.right).norm();
    if (std::max(r1, r2) > tol * std::max(fro, 1e-300))
      throw numeric_error("singular triplet residual exceeds tolerance");
    basis.triplets.push_back(std::move(s));
  }
  for (std::size_t a = 0; a < basis.triplets.size(); ++a)
    for (std::size_t b = a + 1; b < basis.triplets.size(); ++b) {
      if (std::abs(basis.triplets[a].left.dot(basis.triplets[b].left)) > 1e-8 ||
          std::abs(basis.triplets[a].right.dot(basis.triplets[b].right)) > 1e-8)
        throw numeric_error("singular vectors lost orthogonality");
    }
  return basis;
}

double dominant_eigenvalue(const Eigen::MatrixXd& m) {
  require_square(m);
  if (is_symmetric(m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
      throw numeric_error("symmetric eigendecomposition failed");
    return solver.eigenvalues().maxCoeff();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw numeric_error("eigendecomposition failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::VectorXd katz_solve(const Eigen::MatrixXd& m, double alpha, double beta) {
  require_square(m);
  if (beta <= 0.0) throw numeric_error("katz beta must be positive");
  const double lam1 = dominant_eigenvalue(m);
  if (alpha * lam1 >= 1.0) {
    std::ostringstream msg;
    msg << "katz attenuation " << alpha
        << " is at or beyond the divergence bound 1/lambda_1, lambda_1 = "
        << lam1;
    throw numeric_error(msg.str());
  }
  const auto n = m.rows();
  const Eigen::MatrixXd sys =
      Eigen::MatrixXd::Identity(n, n) - alpha * m.transpose();
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, beta);
  Eigen::VectorXd x = sys.partialPivLu().solve(rhs);
  const double resid = (x - alpha * m.transpose() * x - rhs).norm();
  if (resid > 1e-10 * std::max(1.0, x.norm()))
    throw numeric_error("katz linear solve residual exceeds tolerance");
  return x;
}

}  // namespace netcent
