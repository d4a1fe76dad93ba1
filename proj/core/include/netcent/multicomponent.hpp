#pragma once

#include <cstddef>
#include <vector>

#include "netcent/estimators.hpp"
#include "netcent/spectral.hpp"

namespace netcent {

struct McStrategy {
  enum class Kind { fixed, eigengap, variance_threshold };
  Kind kind = Kind::fixed;
  std::size_t s = 2;
  double fraction = 0.9;

  static McStrategy fixed(std::size_t s);
  static McStrategy eigengap();
  static McStrategy variance_threshold(double fraction);
};

struct McFit {
  SpectralBasis basis;  // selected pairs in greedy order
  std::size_t s = 0;
  FitQuality quality;  // s_eff = s
  McStrategy selection;

  Eigen::MatrixXd estimated_matrix() const;
};

// Off-diagonal residual reduction from adding one eigenpair on top of an
// already selected set whose diagonal profile is diag_profile_i = sum of
// gamma_t x_{i,t}^2 over the selected components.
double greedy_candidate_score(const EigenPair& pair,
                              const Eigen::VectorXd& diag_profile);

// Reorders a complete eigenbasis so every step adds the component with the
// largest off-diagonal residual reduction. Ties prefer the larger |value|,
// then the earlier input position.
SpectralBasis greedy_offdiag_order(const SpectralBasis& full_basis);

// Sum of s rank-one components, selected greedily as above. The strategies
// pick s: fixed uses the given count, eigengap cuts at the largest relative
// gap of the magnitude-sorted spectrum, variance_threshold takes the fewest
// greedy components whose explained square sum reaches the given fraction of
// the total.
McFit fit_multicomponent(const Network& net, McStrategy strategy);

UcReport uc_multicomponent(const McFit& fit, const Network& net,
                           UcMethod method = UcMethod::closed_form);

void write_ranking_csv(const McFit& fit, const UcReport& report,
                       const Network& net, const std::string& path);

// Gradient of the full squared residual with respect to every node property,
// component-major: entries [t n, (t + 1) n) belong to component t.
Eigen::VectorXd ss_gradient(const McFit& fit, const Network& net);

struct UcSurfacePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double uc = 0.0;
  bool observed = false;
};

// Contribution landscape of a two-component fit over a rectangular grid plus
// the fitted nodes as observed points. range, when given, is
// {x1_lo, x1_hi, x2_lo, x2_hi}; the default covers the observed values with
// ten percent padding and always includes the origin.
std::vector<UcSurfacePoint> uc_surface(
    const McFit& fit, const Network& net, std::size_t grid_points = 41,
    const std::vector<double>& range = {});

void write_surface_csv(const std::vector<UcSurfacePoint>& surface,
                       const std::string& path);

}  // namespace netcent
