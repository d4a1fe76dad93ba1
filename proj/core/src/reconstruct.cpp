#include "netcent/reconstruct.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <vector>

namespace netcent {
namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
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

std::string to_string(EdgeClass cls) {
  switch (cls) {
    case EdgeClass::correct: return "correct";
    case EdgeClass::spurious: return "spurious";
    case EdgeClass::missing: return "missing";
  }
  return "unknown";
}

std::size_t Reconstruction::correct_count() const {
  return static_cast<std::size_t>(
      std::count_if(predicted.begin(), predicted.end(),
                    [](const ScoredEdge& e) { return e.cls == EdgeClass::correct; }));
}

std::size_t Reconstruction::spurious_count() const {
  return predicted.size() - correct_count();
}

Reconstruction reconstruct_top_e(const Eigen::MatrixXd& a_hat,
                                 const Network& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  if (a_hat.rows() != n || a_hat.cols() != n)
    throw config_error("estimated matrix shape does not match the network");
  const auto st = stats(net);
  if (st.e == 0)
    throw config_error("reconstruction needs at least one true edge");

  std::vector<ScoredEdge> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * net.size());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = net.directed() ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      ScoredEdge e;
      e.src = static_cast<std::size_t>(i);
      e.dst = static_cast<std::size_t>(j);
      e.score = a_hat(i, j);
      candidates.push_back(e);
    }

  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& c : candidates) scores.push_back(c.score);
  std::sort(scores.begin(), scores.end(), std::greater<>());
  const double threshold = scores[std::min(st.e, scores.size()) - 1];

  Reconstruction rec;
  rec.e_target = st.e;
  rec.threshold_value = threshold;
  const auto at_threshold = static_cast<std::size_t>(
      std::count(scores.begin(), scores.end(), threshold));
  rec.tie_expanded = at_threshold > 1;

  const auto& m = net.matrix();
  for (auto& c : candidates) {
    const bool is_edge = m(static_cast<Eigen::Index>(c.src),
                           static_cast<Eigen::Index>(c.dst)) != 0.0;
    if (c.score >= threshold) {
      c.cls = is_edge ? EdgeClass::correct : EdgeClass::spurious;
      rec.predicted.push_back(c);
    } else if (is_edge) {
      c.cls = EdgeClass::missing;
      rec.missing.push_back(c);
    }
  }
  std::stable_sort(rec.predicted.begin(), rec.predicted.end(),
                   [](const ScoredEdge& a, const ScoredEdge& b) {
                     return a.score > b.score;
                   });
  return rec;
}

void export_dot(const Reconstruction& rec, const Network& net,
                const std::string& path, const UcReport* ranking) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  const bool dir = net.directed();
  out << (dir ? "digraph" : "graph") << " reconstruction {\n";
  out << "  node [shape=circle style=filled fillcolor=lightgray fixedsize=true];\n";

  const std::size_t n = net.size();
  std::vector<double> width(n, 0.6);
  if (ranking != nullptr && ranking->ranks.size() == n) {
    const double span = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t pos = 0; pos < n; ++pos)
      width[ranking->ranks[pos]] =
          0.25 + 0.75 * (static_cast<double>(n - 1 - pos) / span);
  }
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.3f", width[i]);
    out << "  \"" << dot_escape(net.labels()[i]) << "\" [width=" << buf
        << "];\n";
  }

  const char* arrow = dir ? " -> " : " -- ";
  auto emit = [&](const ScoredEdge& e, const char* attrs) {
    out << "  \"" << dot_escape(net.labels()[e.src]) << "\"" << arrow << "\""
        << dot_escape(net.labels()[e.dst]) << "\" [" << attrs << "];\n";
  };
  for (const auto& e : rec.predicted)
    emit(e, e.cls == EdgeClass::correct ? "color=green" : "color=red");
  for (const auto& e : rec.missing) emit(e, "color=gray style=dashed");
  out << "}\n";
  if (!out) throw io_error("write failed: " + path);
}

void write_edge_csv(const Reconstruction& rec, const Network& net,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "src,dst,score,class\n";
  auto row = [&](const ScoredEdge& e) {
    out << csv_quote(net.labels()[e.src]) << "," << csv_quote(net.labels()[e.dst])
        << "," << fmt(e.score) << "," << to_string(e.cls) << "\n";
  };
  for (const auto& e : rec.predicted) row(e);
  for (const auto& e : rec.missing) row(e);
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace netcent
