#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "netcent/errors.hpp"

namespace netcent {

// Immutable graph: node labels, a dense adjacency matrix, and orientation /
// weight flags. Entry (i, j) holds the weight of the edge i -> j, 1.0 when the
// network is unweighted. The diagonal is always zero; undirected matrices are
// exactly symmetric. Construction validates these invariants and throws
// std::invalid_argument on violation.
class Network {
 public:
  Network(std::vector<std::string> labels, Eigen::MatrixXd matrix,
          bool directed, bool weighted, std::size_t self_loops_dropped = 0);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  bool directed() const { return directed_; }
  bool weighted() const { return weighted_; }

  // Self loops silently removed while loading; kept for diagnostics.
  std::size_t self_loops_dropped() const { return self_loops_dropped_; }

 private:
  std::vector<std::string> labels_;
  Eigen::MatrixXd matrix_;
  bool directed_ = false;
  bool weighted_ = false;
  std::size_t self_loops_dropped_ = 0;
};

struct NetworkStats {
  std::size_t n = 0;
  std::size_t e = 0;   // undirected: unordered pairs; directed: ordered pairs
  double k_tot = 0.0;  // sum over all matrix entries
  double a_bar = 0.0;  // k_tot / n^2
  double tss = 0.0;    // squared deviation from a_bar over all n^2 entries
};

NetworkStats stats(const Network& net);

// Matrix Market coordinate files, fields real or pattern, symmetry general or
// symmetric. A symmetric header yields an undirected network, general yields
// directed; pattern yields unweighted, real weighted. Duplicate entries are
// OR-ed when unweighted and summed when weighted; self loops are dropped and
// counted. Labels are the 1-based row indices as strings.
Network load_matrix_market(const std::string& path);

// Inverse of load_matrix_market up to entry order and comments.
void write_matrix_market(const Network& net, const std::string& path);

// Whitespace-separated "src dst [weight]" lines, # starts a comment. Labels
// are arbitrary strings numbered in first-appearance order. A weight column
// on an unweighted load is an error, as is a missing one on a weighted load.
Network load_edge_list(const std::string& path, bool directed, bool weighted);

// Padgett's 15 Florentine marriage families, 20 ties, labels alphabetical.
Network florentine_fixture();

}  // namespace netcent
