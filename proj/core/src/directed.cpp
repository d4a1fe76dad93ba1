#include "netcent/directed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace netcent {
namespace {

void require_directed(const Network& net, const char* what) {
  if (!net.directed())
    throw config_error(std::string(what) + " expects a directed network");
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

Eigen::MatrixXd DirectedFit::estimated_matrix() const {
  const auto n = x_out.rows();
  if (kind == EstimatorKind::degree) {
    const double scale = a.value();
    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        out(i, j) = scale * (x_out(i, 0) + x_in(j, 0) - inv_n);
    return out;
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t t = 0; t < gammas.size(); ++t) {
    const auto c = static_cast<Eigen::Index>(t);
    out.noalias() += gammas[t] * (x_out.col(c) * x_in.col(c).transpose());
  }
  return out;
}

DirectedFit fit_degree_directed(const Network& net) {
  require_directed(net, "directed degree fit");
  const auto st = stats(net);
  if (st.k_tot <= 0.0)
    throw numeric_error("degree fit is undefined on an empty network");
  DirectedFit fit;
  fit.kind = EstimatorKind::degree;
  fit.x_out = net.matrix().rowwise().sum() / st.k_tot;
  fit.x_in = net.matrix().colwise().sum().transpose() / st.k_tot;
  fit.a = st.k_tot / static_cast<double>(st.n);
  fit.s = 1;
  fit.quality = make_quality(net.matrix(), fit.estimated_matrix(), st.tss, 2);
  return fit;
}

DirectedFit fit_hits(const Network& net) {
  require_directed(net, "singular fit");
  const auto st = stats(net);
  if (st.e == 0)
    throw numeric_error("singular fit needs at least one edge");
  const auto basis = top_singular_triplets(net.matrix(), 1);
  DirectedFit fit;
  fit.kind = EstimatorKind::eigenvector;
  fit.x_out = basis.triplets[0].left;
  fit.x_in = basis.triplets[0].right;
  fit.gammas = {basis.triplets[0].value};
  fit.s = 1;
  fit.quality = make_quality(net.matrix(), fit.estimated_matrix(), st.tss, 2);
  return fit;
}

DirectedFit fit_multicomponent_directed(const Network& net, std::size_t s) {
  require_directed(net, "directed multi-component fit");
  const auto st = stats(net);
  if (st.e == 0)
    throw numeric_error("directed multi-component fit needs at least one edge");
  if (s < 1 || s > st.n)
    throw config_error("component count out of range");
  const auto basis = top_singular_triplets(net.matrix(), s);
  const auto n = static_cast<Eigen::Index>(st.n);
  DirectedFit fit;
  fit.kind = EstimatorKind::multi_component;
  fit.x_out.resize(n, static_cast<Eigen::Index>(s));
  fit.x_in.resize(n, static_cast<Eigen::Index>(s));
  fit.gammas.resize(s);
  for (std::size_t t = 0; t < s; ++t) {
    const auto c = static_cast<Eigen::Index>(t);
    fit.x_out.col(c) = basis.triplets[t].left;
    fit.x_in.col(c) = basis.triplets[t].right;
    fit.gammas[t] = basis.triplets[t].value;
  }
  fit.s = s;
  fit.quality =
      make_quality(net.matrix(), fit.estimated_matrix(), st.tss, 2 * s);
  return fit;
}

DirectedUcReport uc_directed(const DirectedFit& fit, const Network& net,
                             UcMethod method) {
  const auto st = stats(net);
  const auto n = static_cast<Eigen::Index>(st.n);
  DirectedUcReport report;
  report.method = method;
  report.uc_out.resize(n);
  report.uc_in.resize(n);
  report.uc_tot.resize(n);

  if (method == UcMethod::closed_form) {
    if (fit.kind == EstimatorKind::degree) {
      const Eigen::VectorXd ko = net.matrix().rowwise().sum();
      const Eigen::VectorXd ki = net.matrix().colwise().sum().transpose();
      const double nn = static_cast<double>(st.n);
      for (Eigen::Index k = 0; k < n; ++k) {
        report.uc_out[k] = ko[k] * ko[k] / (nn * st.tss);
        report.uc_in[k] = ki[k] * ki[k] / (nn * st.tss);
        report.uc_tot[k] = ((ko[k] * ko[k] + ki[k] * ki[k]) / nn +
                            2.0 * ko[k] * ki[k] / (nn * nn)) /
                           st.tss;
      }
    } else {
      for (Eigen::Index k = 0; k < n; ++k) {
        double out2 = 0.0, in2 = 0.0, link = 0.0;
        for (std::size_t t = 0; t < fit.gammas.size(); ++t) {
          const auto c = static_cast<Eigen::Index>(t);
          const double g = fit.gammas[t];
          out2 += g * g * fit.x_out(k, c) * fit.x_out(k, c);
          in2 += g * g * fit.x_in(k, c) * fit.x_in(k, c);
          link += g * fit.x_out(k, c) * fit.x_in(k, c);
        }
        report.uc_out[k] = out2 / st.tss;
        report.uc_in[k] = in2 / st.tss;
        report.uc_tot[k] = (out2 + in2 + link * link) / st.tss;
      }
    }
  } else {
    const double ss0 = (net.matrix() - fit.estimated_matrix()).squaredNorm();
    auto drop_ss = [&](Eigen::Index k, bool out, bool in) {
      DirectedFit dropped = fit;
      if (out) dropped.x_out.row(k).setZero();
      if (in) dropped.x_in.row(k).setZero();
      return (net.matrix() - dropped.estimated_matrix()).squaredNorm();
    };
    for (Eigen::Index k = 0; k < n; ++k) {
      report.uc_out[k] = (drop_ss(k, true, false) - ss0) / st.tss;
      report.uc_in[k] = (drop_ss(k, false, true) - ss0) / st.tss;
      report.uc_tot[k] = (drop_ss(k, true, true) - ss0) / st.tss;
    }
  }
  report.ranks_out = rank_order(report.uc_out, net.labels());
  report.ranks_in = rank_order(report.uc_in, net.labels());
  report.ranks_tot = rank_order(report.uc_tot, net.labels());
  return report;
}

Eigen::VectorXd ss_gradient(const DirectedFit& fit, const Network& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  const Eigen::MatrixXd r = net.matrix() - fit.estimated_matrix();
  if (fit.kind == EstimatorKind::degree) {
    Eigen::VectorXd grad(2 * n);
    grad.head(n) = (-2.0 * fit.a.value()) * r.rowwise().sum();
    grad.tail(n) = (-2.0 * fit.a.value()) * r.colwise().sum().transpose();
    return grad;
  }
  const auto s = static_cast<Eigen::Index>(fit.gammas.size());
  Eigen::VectorXd grad(2 * s * n);
  for (Eigen::Index t = 0; t < s; ++t) {
    const double g = fit.gammas[static_cast<std::size_t>(t)];
    grad.segment(t * n, n) = (-2.0 * g) * (r * fit.x_in.col(t));
    grad.segment((s + t) * n, n) =
        (-2.0 * g) * (r.transpose() * fit.x_out.col(t));
  }
  return grad;
}

void write_directed_csv(const DirectedFit& fit, const DirectedUcReport& report,
                        const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "# estimator: " << to_string(fit.kind) << " (directed)\n";
  out << "# s: " << fit.s;
  if (fit.a) out << " a: " << fmt(*fit.a);
  if (!fit.gammas.empty()) {
    out << " gammas:";
    for (double g : fit.gammas) out << " " << fmt(g);
  }
  out << "\n";
  out << "# n: " << net.size() << " ss: " << fmt(fit.quality.ss)
      << " tss: " << fmt(fit.quality.tss) << " r2: " << fmt(fit.quality.r2)
      << " r2_adj: " << fmt(fit.quality.r2_adj)
      << " s_eff: " << fit.quality.s_eff << "\n";
  out << "label,x_out,x_in,uc_out,uc_in,uc_tot,rank_tot\n";
  for (std::size_t pos = 0; pos < report.ranks_tot.size(); ++pos) {
    const auto i = report.ranks_tot[pos];
    const auto k = static_cast<Eigen::Index>(i);
    out << csv_quote(net.labels()[i]) << "," << fmt(fit.x_out(k, 0)) << ","
        << fmt(fit.x_in(k, 0)) << "," << fmt(report.uc_out[k]) << ","
        << fmt(report.uc_in[k]) << "," << fmt(report.uc_tot[k]) << ","
        << (pos + 1) << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace netcent
