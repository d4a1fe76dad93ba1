#include "netcent/network.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace netcent {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& tok, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw io_error(what + ": not a number: '" + tok + "'");
  }
  if (pos != tok.size())
    throw io_error(what + ": not a number: '" + tok + "'");
  return v;
}

long parse_index(const std::string& tok, const std::string& what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw io_error(what + ": not an index: '" + tok + "'");
  }
  if (pos != tok.size())
    throw io_error(what + ": not an index: '" + tok + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace

Network::Network(std::vector<std::string> labels, Eigen::MatrixXd matrix,
                 bool directed, bool weighted, std::size_t self_loops_dropped)
    : labels_(std::move(labels)),
      matrix_(std::move(matrix)),
      directed_(directed),
      weighted_(weighted),
      self_loops_dropped_(self_loops_dropped) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (n < 1) throw std::invalid_argument("network needs at least one node");
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw std::invalid_argument("adjacency matrix shape does not match labels");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate node label: " + l);
  for (Eigen::Index i = 0; i < n; ++i)
    if (matrix_(i, i) != 0.0)
      throw std::invalid_argument("nonzero diagonal entry");
  if (!directed_) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (matrix_(i, j) != matrix_(j, i))
          throw std::invalid_argument("asymmetric matrix in undirected network");
  }
  if (!weighted_) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const double v = matrix_(i, j);
        if (v != 0.0 && v != 1.0)
          throw std::invalid_argument("non-binary entry in unweighted network");
      }
  }
}

NetworkStats stats(const Network& net) {
  const auto& m = net.matrix();
  const auto n = m.rows();
  NetworkStats st;
  st.n = static_cast<std::size_t>(n);
  st.k_tot = m.sum();
  st.a_bar = st.k_tot / (static_cast<double>(n) * static_cast<double>(n));
  std::size_t nonzero = 0;
  double tss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = m(i, j) - st.a_bar;
      tss += d * d;
      if (m(i, j) != 0.0 && (net.directed() || j > i)) ++nonzero;
    }
  st.e = nonzero;
  st.tss = tss;
  return st;
}

Network load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": empty file");
  auto header = split_ws(line);
  if (header.size() < 5 || lower(header[0]) != "%%matrixmarket" ||
      lower(header[1]) != "matrix")
    throw io_error(path + ": missing MatrixMarket header");
  const std::string format = lower(header[2]);
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (format != "coordinate")
    throw io_error(path + ": only coordinate format is supported");
  if (field != "real" && field != "pattern")
    throw io_error(path + ": unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw io_error(path + ": unsupported symmetry '" + symmetry + "'");
  const bool weighted = field == "real";
  const bool directed = symmetry == "general";

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    if (split_ws(line).empty()) continue;
    break;
  }
  auto dims = split_ws(line);
  if (dims.size() != 3) throw io_error(path + ": malformed size line");
  const long rows = parse_index(dims[0], path);
  const long cols = parse_index(dims[1], path);
  const long nnz = parse_index(dims[2], path);
  if (rows < 1 || cols < 1) throw io_error(path + ": empty dimensions");
  if (rows != cols) throw io_error(path + ": adjacency matrix must be square");
  if (nnz < 0) throw io_error(path + ": negative entry count");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, rows);
  std::size_t loops = 0;
  long read = 0;
  while (read < nnz) {
    if (!std::getline(in, line))
      throw io_error(path + ": fewer entries than declared");
    if (!line.empty() && line[0] == '%') continue;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    ++read;
    if (toks.size() < 2) throw io_error(path + ": malformed entry line");
    const long i = parse_index(toks[0], path) - 1;
    const long j = parse_index(toks[1], path) - 1;
    if (i < 0 || i >= rows || j < 0 || j >= rows)
      throw io_error(path + ": entry index out of range");
    double v = 1.0;
    if (weighted) {
      if (toks.size() < 3) throw io_error(path + ": real entry without a value");
      v = parse_double(toks[2], path);
    }
    if (i == j) {
      ++loops;
      continue;
    }
    if (weighted) {
      m(i, j) += v;
      if (!directed) m(j, i) += v;
    } else {
      m(i, j) = 1.0;
      if (!directed) m(j, i) = 1.0;
    }
  }

  std::vector<std::string> labels(static_cast<std::size_t>(rows));
  for (long i = 0; i < rows; ++i) labels[i] = std::to_string(i + 1);
  try {
    return Network(std::move(labels), std::move(m), directed, weighted, loops);
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

void write_matrix_market(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  const auto& m = net.matrix();
  const auto n = m.rows();
  const char* field = net.weighted() ? "real" : "pattern";
  const char* symmetry = net.directed() ? "general" : "symmetric";
  out << "%%MatrixMarket matrix coordinate " << field << " " << symmetry << "\n";

  std::vector<std::pair<Eigen::Index, Eigen::Index>> entries;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m(i, j) == 0.0) continue;
      if (!net.directed() && j > i) continue;  // lower triangle only
      entries.emplace_back(i, j);
    }
  out << n << " " << n << " " << entries.size() << "\n";
  char buf[64];
  for (const auto& [i, j] : entries) {
    out << (i + 1) << " " << (j + 1);
    if (net.weighted()) {
      std::snprintf(buf, sizeof buf, " %.17g", m(i, j));
      out << buf;
    }
    out << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

Network load_edge_list(const std::string& path, bool directed, bool weighted) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);

  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  auto node = [&](const std::string& l) {
    auto it = index.find(l);
    if (it != index.end()) return it->second;
    const std::size_t id = labels.size();
    labels.push_back(l);
    index.emplace(l, id);
    return id;
  };

  struct Entry {
    std::size_t src, dst;
    double w;
  };
  std::vector<Entry> entries;
  std::size_t loops = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3)
      throw io_error(path + ": expected 'src dst [weight]', got '" + line + "'");
    if (toks.size() == 3 && !weighted)
      throw io_error(path + ": weight column in an unweighted load");
    if (toks.size() == 2 && weighted)
      throw io_error(path + ": missing weight column in a weighted load");
    double w = 1.0;
    if (weighted) w = parse_double(toks[2], path);
    const std::size_t s = node(toks[0]);
    const std::size_t d = node(toks[1]);
    if (s == d) {
      ++loops;
      continue;
    }
    entries.push_back({s, d, w});
  }
  if (labels.empty()) throw io_error(path + ": no edges or nodes");

  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : entries) {
    const auto i = static_cast<Eigen::Index>(e.src);
    const auto j = static_cast<Eigen::Index>(e.dst);
    if (weighted) {
      m(i, j) += e.w;
      if (!directed) m(j, i) += e.w;
    } else {
      m(i, j) = 1.0;
      if (!directed) m(j, i) = 1.0;
    }
  }
  try {
    return Network(std::move(labels), std::move(m), directed, weighted, loops);
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

Network florentine_fixture() {
  static const std::vector<std::string> names = {
      "Acciaiuoli", "Albizzi", "Barbadori", "Bischeri", "Castellani",
      "Ginori", "Guadagni", "Lamberteschi", "Medici", "Pazzi",
      "Peruzzi", "Ridolfi", "Salviati", "Strozzi", "Tornabuoni"};
  static const std::pair<const char*, const char*> ties[] = {
      {"Acciaiuoli", "Medici"},    {"Albizzi", "Ginori"},
      {"Albizzi", "Guadagni"},     {"Albizzi", "Medici"},
      {"Barbadori", "Castellani"}, {"Barbadori", "Medici"},
      {"Bischeri", "Guadagni"},    {"Bischeri", "Peruzzi"},
      {"Bischeri", "Strozzi"},     {"Castellani", "Peruzzi"},
      {"Castellani", "Strozzi"},   {"Guadagni", "Lamberteschi"},
      {"Guadagni", "Tornabuoni"},  {"Medici", "Ridolfi"},
      {"Medici", "Salviati"},      {"Medici", "Tornabuoni"},
      {"Pazzi", "Salviati"},       {"Peruzzi", "Strozzi"},
      {"Ridolfi", "Strozzi"},      {"Ridolfi", "Tornabuoni"}};

  const auto n = static_cast<Eigen::Index>(names.size());
  std::unordered_map<std::string, Eigen::Index> index;
  for (Eigen::Index i = 0; i < n; ++i) index.emplace(names[i], i);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [a, b] : ties) {
    const auto i = index.at(a), j = index.at(b);
    m(i, j) = m(j, i) = 1.0;
  }
  return Network(names, std::move(m), false, false);
}

}  // namespace netcent
