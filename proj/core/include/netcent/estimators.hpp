#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "netcent/network.hpp"

namespace netcent {

enum class EstimatorKind { degree, eigenvector, katz, multi_component };

std::string to_string(EstimatorKind kind);

// Fit quality. ss is the squared residual over all N^2 ordered pairs,
// diagonal included: the fitted pairwise forms are defined on self pairs too,
// and a nonzero estimated diagonal is a real modeling error against the
// structurally zero diagonal. r2 scores only the off-diagonal residual
// against tss, since self pairs carry no observable tie to explain. r2_adj
// discounts r2 by N / (N - s_eff) for the s_eff fitted properties per node
// and is -infinity once s_eff >= N.
struct FitQuality {
  double ss = 0.0;
  double tss = 0.0;
  double r2 = 0.0;
  double r2_adj = 0.0;
  std::size_t s_eff = 1;
};

struct FitParams {
  std::optional<double> a;      // degree scale k_tot / n
  std::optional<double> gamma;  // spectral scale
  std::optional<double> b;      // additive constant of the Katz form
  std::optional<double> alpha;
  std::optional<double> beta;
};

struct EstimatorFit {
  EstimatorKind kind = EstimatorKind::degree;
  Eigen::VectorXd x;
  FitParams params;
  FitQuality quality;
  // True when some eigenvector entry is numerically zero, so the ranking
  // among the untouched nodes is not supported by the fit.
  bool ambiguous_support = false;

  Eigen::MatrixXd estimated_matrix() const;
};

enum class UcMethod { closed_form, oracle };

struct UcReport {
  Eigen::VectorXd uc;
  // Node indices best-first; equal contributions ordered by label.
  std::vector<std::size_t> ranks;
  UcMethod method = UcMethod::closed_form;
};

// Degree fit: x_i = k_i / k_tot with scale a = k_tot / n. Needs k_tot > 0.
EstimatorFit fit_degree(const Network& net);

// Eigenvector fit: leading eigenpair, estimate gamma x x^T. Needs an edge.
EstimatorFit fit_eigenvector(const Network& net);

// Katz fit at the given attenuation (default 0.5 / lambda_1) and beta
// (default 1). The estimate is gamma x x^T + b with gamma and b chosen so the
// residual is stationary in x; alpha = 0 degenerates to x = beta 1 with a
// constant estimate and every contribution zero.
EstimatorFit fit_katz(const Network& net, std::optional<double> alpha = {},
                      double beta = 1.0);

// How much of tss stops being explained when node k's fitted property is
// zeroed without refitting. closed_form evaluates the per-estimator formula;
// oracle zeroes the entry and recomputes the residual from scratch.
UcReport unique_contribution(const EstimatorFit& fit, const Network& net,
                             UcMethod method = UcMethod::closed_form);

// Labels in rank order.
std::vector<std::string> rank(const UcReport& report, const Network& net);

// Gradient of the full squared residual with respect to x at the fit.
Eigen::VectorXd ss_gradient(const EstimatorFit& fit, const Network& net);

void write_ranking_csv(const EstimatorFit& fit, const UcReport& report,
                       const Network& net, const std::string& path);

// Shared by every fitting routine; r2 and r2_adj follow the FitQuality rules.
FitQuality make_quality(const Eigen::MatrixXd& a, const Eigen::MatrixXd& a_hat,
                        double tss, std::size_t s_eff);

// Index permutation sorting uc descending, ties broken by label ascending.
std::vector<std::size_t> rank_order(const Eigen::VectorXd& uc,
                                    const std::vector<std::string>& labels);

}  // namespace netcent
