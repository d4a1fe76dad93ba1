#include "netcent/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include "netcent/spectral.hpp"

namespace netcent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_undirected(const Network& net, const char* what) {
  if (net.directed())
    throw config_error(std::string(what) + " expects an undirected network");
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::degree: return "degree";
    case EstimatorKind::eigenvector: return "eigenvector";
    case EstimatorKind::katz: return "katz";
    case EstimatorKind::multi_component: return "multi_component";
  }
  return "unknown";
}

FitQuality make_quality(const Eigen::MatrixXd& a, const Eigen::MatrixXd& a_hat,
                        double tss, std::size_t s_eff) {
  const auto n = a.rows();
  double ss = 0.0, ss_offdiag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r = a(i, j) - a_hat(i, j);
      ss += r * r;
      if (i != j) ss_offdiag += r * r;
    }
  FitQuality q;
  q.ss = ss;
  q.tss = tss;
  q.s_eff = s_eff;
  q.r2 = tss > 0.0 ? 1.0 - ss_offdiag / tss
                   : (ss_offdiag == 0.0 ? 1.0 : -kInf);
  q.r2_adj = s_eff < static_cast<std::size_t>(n)
                 ? 1.0 - (1.0 - q.r2) * static_cast<double>(n) /
                             static_cast<double>(n - s_eff)
                 : -kInf;
  return q;
}

Eigen::MatrixXd EstimatorFit::estimated_matrix() const {
  const auto n = x.size();
  switch (kind) {
    case EstimatorKind::degree: {
      const double a = params.a.value();
      const double inv_n = 1.0 / static_cast<double>(n);
      Eigen::MatrixXd out(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          out(i, j) = a * (x[i] + x[j] - inv_n);
      return out;
    }
    case EstimatorKind::eigenvector:
      return params.gamma.value() * (x * x.transpose());
    case EstimatorKind::katz: {
      Eigen::MatrixXd out = params.gamma.value() * (x * x.transpose());
      out.array() += params.b.value();
      return out;
    }
    case EstimatorKind::multi_component:
      break;
  }
  throw config_error("estimated_matrix: unsupported estimator kind");
}

EstimatorFit fit_degree(const Network& net) {
  require_undirected(net, "degree fit");
  const auto st = stats(net);
  if (st.k_tot <= 0.0)
    throw numeric_error("degree fit is undefined on an empty network");
  EstimatorFit fit;
  fit.kind = EstimatorKind::degree;
  fit.x = net.matrix().rowwise().sum() / st.k_tot;
  fit.params.a = st.k_tot / static_cast<double>(st.n);
  fit.quality = make_quality(net.matrix(), fit.estimated_matrix(), st.tss, 1);
  return fit;
}

EstimatorFit fit_eigenvector(const Network& net) {
  require_undirected(net, "eigenvector fit");
  const auto st = stats(net);
  if (st.e == 0)
    throw numeric_error("eigenvector fit needs at least one edge");
  const auto basis = symmetric_eigs(net.matrix(), 1);
  EstimatorFit fit;
  fit.kind = EstimatorKind::eigenvector;
  fit.x = basis.pairs[0].vector;
  fit.params.gamma = basis.pairs[0].value;
  fit.ambiguous_support =
      (fit.x.cwiseAbs().array() <= 1e-9).any();
  fit.quality = make_quality(net.matrix(), fit.estimated_matrix(), st.tss, 1);
  return fit;
}

EstimatorFit fit_katz(const Network& net, std::optional<double> alpha,
                      double beta) {
  require_undirected(net, "katz fit");
  const auto st = stats(net);
  double a;
  if (alpha) {
    a = *alpha;
    if (a < 0.0) throw config_error("katz attenuation must be nonnegative");
  } else {
    const double lam1 = dominant_eigenvalue(net.matrix());
    a = lam1 > 0.0 ? 0.5 / lam1 : 0.0;
  }
  EstimatorFit fit;
  fit.kind = EstimatorKind::katz;
  fit.x = katz_solve(net.matrix(), a, beta);
  fit.params.alpha = a;
  fit.params.beta = beta;
  if (a == 0.0) {
    // x = beta 1 carries no structure; the best remaining estimate is the
    // constant that minimizes the residual.
    fit.params.gamma = 0.0;
    fit.params.b = st.a_bar;
  } else {
    fit.params.gamma = 1.0 / (a * fit.x.squaredNorm());
    fit.params.b = -beta / (a * fit.x.sum());
  }
  fit.quality = make_quality(net.matrix(), fit.estimated_matrix(), st.tss, 1);
  return fit;
}

std::vector<std::size_t> rank_order(const Eigen::VectorXd& uc,
                                    const std::vector<std::string>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (uc[static_cast<Eigen::Index>(a)] != uc[static_cast<Eigen::Index>(b)])
      return uc[static_cast<Eigen::Index>(a)] > uc[static_cast<Eigen::Index>(b)];
    return labels[a] < labels[b];
  });
  return order;
}

UcReport unique_contribution(const EstimatorFit& fit, const Network& net,
                             UcMethod method) {
  const auto st = stats(net);
  const auto n = static_cast<Eigen::Index>(st.n);
  UcReport report;
  report.method = method;
  report.uc.resize(n);

  if (method == UcMethod::closed_form) {
    switch (fit.kind) {
      case EstimatorKind::degree: {
        const Eigen::VectorXd k = net.matrix().rowwise().sum();
        const double nn = static_cast<double>(st.n);
        for (Eigen::Index i = 0; i < n; ++i)
          report.uc[i] = 2.0 * (nn + 1.0) * k[i] * k[i] / (nn * nn * st.tss);
        break;
      }
      case EstimatorKind::eigenvector: {
        const double g = fit.params.gamma.value();
        for (Eigen::Index i = 0; i < n; ++i) {
          const double gx2 = g * fit.x[i] * fit.x[i];
          report.uc[i] = gx2 * (gx2 + 2.0 * g) / st.tss;
        }
        break;
      }
      case EstimatorKind::katz: {
        const double a = fit.params.alpha.value();
        if (a == 0.0) {
          report.uc.setZero();
          break;
        }
        const double g = fit.params.gamma.value();
        const double b = fit.params.b.value();
        for (Eigen::Index i = 0; i < n; ++i) {
          const double gx2 = g * fit.x[i] * fit.x[i];
          report.uc[i] = gx2 * (gx2 + 2.0 * b + 2.0 / a) / st.tss;
        }
        break;
      }
      case EstimatorKind::multi_component:
        throw config_error("multi-component reports come from uc_multicomponent");
    }
  } else {
    const Eigen::MatrixXd base = fit.estimated_matrix();
    const double ss0 = (net.matrix() - base).squaredNorm();
    for (Eigen::Index k = 0; k < n; ++k) {
      EstimatorFit dropped = fit;
      dropped.x[k] = 0.0;
      const double ssk =
          (net.matrix() - dropped.estimated_matrix()).squaredNorm();
      report.uc[k] = (ssk - ss0) / st.tss;
    }
  }
  report.ranks = rank_order(report.uc, net.labels());
  return report;
}

std::vector<std::string> rank(const UcReport& report, const Network& net) {
  std::vector<std::string> out;
  out.reserve(report.ranks.size());
  for (auto i : report.ranks) out.push_back(net.labels()[i]);
  return out;
}

Eigen::VectorXd ss_gradient(const EstimatorFit& fit, const Network& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  const Eigen::MatrixXd r = net.matrix() - fit.estimated_matrix();
  switch (fit.kind) {
    case EstimatorKind::degree: {
      const double a = fit.params.a.value();
      return (-4.0 * a) * r.colwise().sum().transpose();
    }
    case EstimatorKind::eigenvector: {
      const double g = fit.params.gamma.value();
      return (-4.0 * g) * (r.transpose() * fit.x);
    }
    case EstimatorKind::katz: {
      const double g = fit.params.gamma.value();
      if (g == 0.0) return Eigen::VectorXd::Zero(n);
      return (-4.0 * g) * (r.transpose() * fit.x);
    }
    case EstimatorKind::multi_component:
      break;
  }
  throw config_error("ss_gradient: unsupported estimator kind");
}

void write_ranking_csv(const EstimatorFit& fit, const UcReport& report,
                       const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "# estimator: " << to_string(fit.kind) << "\n";
  if (fit.params.a) out << "# a: " << fmt(*fit.params.a) << "\n";
  if (fit.params.gamma) out << "# gamma: " << fmt(*fit.params.gamma) << "\n";
  if (fit.params.b) out << "# b: " << fmt(*fit.params.b) << "\n";
  if (fit.params.alpha) out << "# alpha: " << fmt(*fit.params.alpha) << "\n";
  if (fit.params.beta) out << "# beta: " << fmt(*fit.params.beta) << "\n";
  out << "# n: " << net.size() << " ss: " << fmt(fit.quality.ss)
      << " tss: " << fmt(fit.quality.tss) << " r2: " << fmt(fit.quality.r2)
      << " r2_adj: " << fmt(fit.quality.r2_adj)
      << " s_eff: " << fit.quality.s_eff << "\n";
  if (fit.ambiguous_support) out << "# ambiguous_support: true\n";
  out << "label,x,uc,rank\n";
  for (std::size_t pos = 0; pos < report.ranks.size(); ++pos) {
    const auto i = report.ranks[pos];
    out << csv_quote(net.labels()[i]) << ","
        << fmt(fit.x[static_cast<Eigen::Index>(i)]) << ","
        << fmt(report.uc[static_cast<Eigen::Index>(i)]) << "," << (pos + 1)
        << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace netcent
