#pragma once

#include <unistd.h>

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

// Fresh directory under the system temp root, unique per call.
inline std::filesystem::path make_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("netcent_" + std::to_string(::getpid()) + "_" + tag + "_" +
              std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline bool rel_close(double a, double b, double rtol = 1e-8,
                      double atol = 1e-12) {
  return std::abs(a - b) <= std::max(rtol * std::max(std::abs(a), std::abs(b)),
                                     atol);
}

inline double max_rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-12});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

// Two score vectors order the nodes consistently when no pair is ranked in
// strictly opposite directions beyond both tolerances. This is the right
// comparison for ranking-equivalence claims: exact rank sequences are
// unstable under ties and floating-point noise, opposite orderings are not.
inline bool consistent_rankings(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b, double tol_a = 1e-9,
                                double tol_b = 1e-9) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da > tol_a && db < -tol_b) return false;
    }
  return true;
}

}  // namespace testutil
