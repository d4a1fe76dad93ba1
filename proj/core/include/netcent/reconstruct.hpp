#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "netcent/estimators.hpp"
#include "netcent/network.hpp"

namespace netcent {

enum class EdgeClass { correct, spurious, missing };

std::string to_string(EdgeClass cls);

struct ScoredEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double score = 0.0;
  EdgeClass cls = EdgeClass::correct;
};

// Thresholded reading of an estimated matrix: the E largest candidate
// entries, E being the true edge count, kept non-strictly so entries tied
// with the E-th largest all survive (tie_expanded marks the tie). Candidates
// are the upper-triangle pairs of an undirected network and every ordered
// off-diagonal pair of a directed one.
struct Reconstruction {
  std::vector<ScoredEdge> predicted;  // correct + spurious, score descending
  std::vector<ScoredEdge> missing;    // true edges that fell below threshold
  double threshold_value = 0.0;
  bool tie_expanded = false;
  std::size_t e_target = 0;

  std::size_t correct_count() const;
  std::size_t spurious_count() const;
};

Reconstruction reconstruct_top_e(const Eigen::MatrixXd& a_hat,
                                 const Network& net);

// GraphViz export: correct edges green, spurious red, missing dashed gray.
// With a ranking supplied, node size shrinks down the ranking.
void export_dot(const Reconstruction& rec, const Network& net,
                const std::string& path, const UcReport* ranking = nullptr);

// src,dst,score,class rows, predicted edges first, then missing ones.
void write_edge_csv(const Reconstruction& rec, const Network& net,
                    const std::string& path);

}  // namespace netcent
