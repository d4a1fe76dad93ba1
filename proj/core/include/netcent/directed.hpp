#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

#include "netcent/estimators.hpp"
#include "netcent/spectral.hpp"

namespace netcent {

// Directed fit with separate out (row) and in (column) properties per node.
// Column t of x_out / x_in holds component t; degree fits have one column
// and no gammas. Every node owns 2 s properties, so s_eff = 2 s.
struct DirectedFit {
  EstimatorKind kind = EstimatorKind::degree;
  Eigen::MatrixXd x_out;
  Eigen::MatrixXd x_in;
  std::vector<double> gammas;
  std::optional<double> a;  // degree scale k_tot / n
  std::size_t s = 1;
  FitQuality quality;

  Eigen::MatrixXd estimated_matrix() const;
};

struct DirectedUcReport {
  Eigen::VectorXd uc_out;
  Eigen::VectorXd uc_in;
  Eigen::VectorXd uc_tot;
  std::vector<std::size_t> ranks_out;
  std::vector<std::size_t> ranks_in;
  std::vector<std::size_t> ranks_tot;
  UcMethod method = UcMethod::closed_form;
};

// x_out = k_out / k_tot, x_in = k_in / k_tot, estimate a (x_out_i + x_in_j - 1/n).
DirectedFit fit_degree_directed(const Network& net);

// Leading singular triplet, estimate gamma u v^T.
DirectedFit fit_hits(const Network& net);

// Sum of the top s singular components.
DirectedFit fit_multicomponent_directed(const Network& net, std::size_t s);

// Out zeroes the node's out properties only, in the in properties, and tot
// both at once; tot exceeds the sum of the two whenever the node ties the
// two sides together.
DirectedUcReport uc_directed(const DirectedFit& fit, const Network& net,
                             UcMethod method = UcMethod::closed_form);

// Gradient of the full squared residual: all out properties component-major,
// then all in properties.
Eigen::VectorXd ss_gradient(const DirectedFit& fit, const Network& net);

void write_directed_csv(const DirectedFit& fit, const DirectedUcReport& report,
                        const Network& net, const std::string& path);

}  // namespace netcent
