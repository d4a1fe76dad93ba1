#include "netcent/multicomponent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace netcent {
namespace {

void require_undirected(const Network& net) {
  if (net.directed())
    throw config_error("multi-component fit expects an undirected network");
}

Eigen::MatrixXd sum_components(const SpectralBasis& basis, Eigen::Index n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : basis.pairs)
    out.noalias() += p.value * (p.vector * p.vector.transpose());
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace

McStrategy McStrategy::fixed(std::size_t s) {
  McStrategy st;
  st.kind = Kind::fixed;
  st.s = s;
  return st;
}

McStrategy McStrategy::eigengap() {
  McStrategy st;
  st.kind = Kind::eigengap;
  return st;
}

McStrategy McStrategy::variance_threshold(double fraction) {
  McStrategy st;
  st.kind = Kind::variance_threshold;
  st.fraction = fraction;
  return st;
}

Eigen::MatrixXd McFit::estimated_matrix() const {
  const auto n = basis.pairs.empty() ? Eigen::Index{0}
                                     : basis.pairs.front().vector.size();
  return sum_components(basis, n);
}

double greedy_candidate_score(const EigenPair& pair,
                              const Eigen::VectorXd& diag_profile) {
  const double g = pair.value;
  const Eigen::ArrayXd x2 = pair.vector.array().square();
  const double quartic = (x2 * x2).sum();
  const double cross = (g * x2 * diag_profile.array()).sum();
  return g * g * (1.0 + quartic) + 2.0 * cross;
}

SpectralBasis greedy_offdiag_order(const SpectralBasis& full_basis) {
  const auto& pairs = full_basis.pairs;
  const std::size_t n_pairs = pairs.size();
  SpectralBasis out;
  out.ordering = BasisOrdering::off_diagonal_greedy;
  if (n_pairs == 0) return out;

  const auto n = pairs.front().vector.size();
  Eigen::VectorXd diag_profile = Eigen::VectorXd::Zero(n);
  std::vector<bool> taken(n_pairs, false);
  out.pairs.reserve(n_pairs);

  for (std::size_t step = 0; step < n_pairs; ++step) {
    std::size_t best = n_pairs;
    double best_score = 0.0;
    for (std::size_t c = 0; c < n_pairs; ++c) {
      if (taken[c]) continue;
      const double score = greedy_candidate_score(pairs[c], diag_profile);
      if (best == n_pairs || score > best_score ||
          (score == best_score &&
           std::abs(pairs[c].value) > std::abs(pairs[best].value))) {
        best = c;
        best_score = score;
      }
    }
    taken[best] = true;
    diag_profile.array() +=
        pairs[best].value * pairs[best].vector.array().square();
    out.pairs.push_back(pairs[best]);
  }
  return out;
}

McFit fit_multicomponent(const Network& net, McStrategy strategy) {
  require_undirected(net);
  const auto st = stats(net);
  if (st.e == 0)
    throw numeric_error("multi-component fit needs at least one edge");
  const auto n = static_cast<Eigen::Index>(st.n);

  const SpectralBasis full = symmetric_eigs(net.matrix(), st.n);
  const SpectralBasis greedy = greedy_offdiag_order(full);

  std::size_t s = 0;
  switch (strategy.kind) {
    case McStrategy::Kind::fixed:
      if (strategy.s < 1 || strategy.s > st.n)
        throw config_error("fixed component count out of range");
      s = strategy.s;
      break;
    case McStrategy::Kind::eigengap: {
      if (st.n < 2)
        throw config_error("eigengap selection needs at least two nodes");
      double best_gap = -1.0;
      for (std::size_t t = 0; t + 1 < st.n; ++t) {
        const double hi = std::abs(full.pairs[t].value);
        const double lo = std::abs(full.pairs[t + 1].value);
        const double gap = hi > 0.0 ? (hi - lo) / hi : 0.0;
        if (gap > best_gap) {
          best_gap = gap;
          s = t + 1;
        }
      }
      break;
    }
    case McStrategy::Kind::variance_threshold: {
      if (!(strategy.fraction > 0.0) || strategy.fraction > 1.0)
        throw config_error("variance fraction must lie in (0, 1]");
      const double total = net.matrix().squaredNorm();
      const double target = strategy.fraction * total;
      double cum = 0.0;
      s = st.n;
      for (std::size_t t = 0; t < st.n; ++t) {
        cum += greedy.pairs[t].value * greedy.pairs[t].value;
        if (cum >= target) {
          s = t + 1;
          break;
        }
      }
      break;
    }
  }

  McFit fit;
  fit.selection = strategy;
  fit.s = s;
  fit.basis.ordering = BasisOrdering::off_diagonal_greedy;
  fit.basis.pairs.assign(greedy.pairs.begin(),
                         greedy.pairs.begin() + static_cast<long>(s));
  fit.quality = make_quality(net.matrix(), sum_components(fit.basis, n),
                             st.tss, s);
  return fit;
}

UcReport uc_multicomponent(const McFit& fit, const Network& net,
                           UcMethod method) {
  const auto st = stats(net);
  const auto n = static_cast<Eigen::Index>(st.n);
  UcReport report;
  report.method = method;
  report.uc.resize(n);

  if (method == UcMethod::closed_form) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double lin = 0.0, quad = 0.0;
      for (const auto& p : fit.basis.pairs) {
        const double x2 = p.vector[i] * p.vector[i];
        lin += p.value * x2;
        quad += p.value * p.value * x2;
      }
      report.uc[i] = (lin * lin + 2.0 * quad) / st.tss;
    }
  } else {
    const Eigen::MatrixXd base = fit.estimated_matrix();
    const double ss0 = (net.matrix() - base).squaredNorm();
    for (Eigen::Index k = 0; k < n; ++k) {
      McFit dropped = fit;
      for (auto& p : dropped.basis.pairs) p.vector[k] = 0.0;
      const double ssk =
          (net.matrix() - dropped.estimated_matrix()).squaredNorm();
      report.uc[k] = (ssk - ss0) / st.tss;
    }
  }
  report.ranks = rank_order(report.uc, net.labels());
  return report;
}

Eigen::VectorXd ss_gradient(const McFit& fit, const Network& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  const Eigen::MatrixXd r = net.matrix() - fit.estimated_matrix();
  Eigen::VectorXd grad(static_cast<Eigen::Index>(fit.basis.pairs.size()) * n);
  for (std::size_t t = 0; t < fit.basis.pairs.size(); ++t) {
    const auto& p = fit.basis.pairs[t];
    grad.segment(static_cast<Eigen::Index>(t) * n, n) =
        (-4.0 * p.value) * (r.transpose() * p.vector);
  }
  return grad;
}

std::vector<UcSurfacePoint> uc_surface(const McFit& fit, const Network& net,
                                       std::size_t grid_points,
                                       const std::vector<double>& range) {
  if (fit.s != 2)
    throw config_error("contribution surface is defined for two components");
  if (grid_points < 2) throw config_error("surface grid needs at least 2 points");
  if (!range.empty() && range.size() != 4)
    throw config_error("surface range must be {x1_lo, x1_hi, x2_lo, x2_hi}");
  const auto st = stats(net);
  const double g1 = fit.basis.pairs[0].value;
  const double g2 = fit.basis.pairs[1].value;
  const auto& v1 = fit.basis.pairs[0].vector;
  const auto& v2 = fit.basis.pairs[1].vector;

  auto point_uc = [&](double x1, double x2) {
    const double lin = g1 * x1 * x1 + g2 * x2 * x2;
    const double quad = g1 * g1 * x1 * x1 + g2 * g2 * x2 * x2;
    return (lin * lin + 2.0 * quad) / st.tss;
  };

  double lo1, hi1, lo2, hi2;
  if (!range.empty()) {
    lo1 = range[0]; hi1 = range[1]; lo2 = range[2]; hi2 = range[3];
    if (!(lo1 < hi1) || !(lo2 < hi2))
      throw config_error("surface range bounds must be increasing");
  } else {
    lo1 = std::min(0.0, v1.minCoeff());
    hi1 = std::max(0.0, v1.maxCoeff());
    lo2 = std::min(0.0, v2.minCoeff());
    hi2 = std::max(0.0, v2.maxCoeff());
    const double pad1 = 0.1 * std::max(hi1 - lo1, 1e-3);
    const double pad2 = 0.1 * std::max(hi2 - lo2, 1e-3);
    lo1 -= pad1; hi1 += pad1;
    lo2 -= pad2; hi2 += pad2;
  }

  std::vector<UcSurfacePoint> out;
  out.reserve(grid_points * grid_points + net.size());
  const double step1 = (hi1 - lo1) / static_cast<double>(grid_points - 1);
  const double step2 = (hi2 - lo2) / static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i)
    for (std::size_t j = 0; j < grid_points; ++j) {
      UcSurfacePoint p;
      p.x1 = lo1 + static_cast<double>(i) * step1;
      p.x2 = lo2 + static_cast<double>(j) * step2;
      p.uc = point_uc(p.x1, p.x2);
      out.push_back(p);
    }
  for (Eigen::Index k = 0; k < v1.size(); ++k) {
    UcSurfacePoint p;
    p.x1 = v1[k];
    p.x2 = v2[k];
    p.uc = point_uc(p.x1, p.x2);
    p.observed = true;
    out.push_back(p);
  }
  return out;
}

void write_ranking_csv(const McFit& fit, const UcReport& report,
                       const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "# estimator: " << to_string(EstimatorKind::multi_component) << "\n";
  out << "# s: " << fit.s << "\n# gammas:";
  for (const auto& p : fit.basis.pairs) out << " " << fmt(p.value);
  out << "\n";
  out << "# n: " << net.size() << " ss: " << fmt(fit.quality.ss)
      << " tss: " << fmt(fit.quality.tss) << " r2: " << fmt(fit.quality.r2)
      << " r2_adj: " << fmt(fit.quality.r2_adj)
      << " s_eff: " << fit.quality.s_eff << "\n";
  out << "label";
  for (std::size_t t = 1; t <= fit.s; ++t) out << ",x" << t;
  out << ",uc,rank\n";
  for (std::size_t pos = 0; pos < report.ranks.size(); ++pos) {
    const auto i = static_cast<Eigen::Index>(report.ranks[pos]);
    out << csv_quote(net.labels()[report.ranks[pos]]);
    for (const auto& p : fit.basis.pairs) out << "," << fmt(p.vector[i]);
    out << "," << fmt(report.uc[i]) << "," << (pos + 1) << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

void write_surface_csv(const std::vector<UcSurfacePoint>& surface,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "x1,x2,uc,observed\n";
  char buf[160];
  for (const auto& p : surface) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%d\n", p.x1, p.x2, p.uc,
                  p.observed ? 1 : 0);
    out << buf;
  }
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace netcent
