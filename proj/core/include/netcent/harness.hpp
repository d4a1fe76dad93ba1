#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "netcent/estimators.hpp"
#include "netcent/network.hpp"

namespace netcent {

struct BenchEstimator {
  EstimatorKind kind = EstimatorKind::degree;
  std::size_t s = 2;  // multi-component only

  std::string name() const;  // "degree", ..., "mc(2)"
};

struct BenchRecord {
  std::string network_id;
  std::size_t n = 0;
  std::size_t e = 0;
  std::string estimator;
  std::size_t s_eff = 0;
  double r2 = 0.0;
  double r2_adj = 0.0;
  double wall_time = 0.0;  // seconds
  std::string status = "ok";
};

struct PowerLawFit {
  double c = 0.0;
  double p = 0.0;
  std::size_t points_used = 0;
};

// degree, eigenvector, katz, mc(mc_s).
std::vector<BenchEstimator> default_estimators(std::size_t mc_s = 2);

// One record per estimator for an already loaded network. Undirected
// networks take the undirected fits; directed ones map degree to the
// directed degree fit, eigenvector to the singular fit, multi-component to
// the directed multi-component fit, and mark katz unsupported. A failed fit
// becomes a record with an error status instead of propagating.
std::vector<BenchRecord> bench_network(const Network& net,
                                       const std::string& id,
                                       const std::vector<BenchEstimator>& estimators);

// Every Matrix Market file (.mtx or .mm) under dir, in filename order, run
// through bench_network on a small thread pool. workers <= 0 picks a bound
// from the hardware. Unloadable files produce error records, never aborts.
// A non-empty out_dir also persists the records as a timestamped CSV there.
std::vector<BenchRecord> run_corpus(const std::string& dir,
                                    const std::vector<BenchEstimator>& estimators,
                                    int workers = 0,
                                    const std::string& out_dir = "");

// Writes into out_dir under a timestamped name and returns the path.
std::string write_bench_csv(const std::vector<BenchRecord>& records,
                            const std::string& out_dir);
void write_bench_csv_file(const std::vector<BenchRecord>& records,
                          const std::string& path);

// r2_adj ~ c n^(-p) by least squares on log-log over one estimator's ok
// records with positive r2_adj; fewer than 3 such points is an error.
PowerLawFit fit_powerlaw(const std::vector<BenchRecord>& records,
                         const std::string& estimator);

// Fraction of the estimator's ok records with r2_adj at or below each grid
// value.
std::vector<double> cumulative_frequency(const std::vector<BenchRecord>& records,
                                         const std::string& estimator,
                                         const std::vector<double>& grid);

// Deterministic G(n, p): one 32-bit draw per candidate pair in row-major
// order, the same graph for the same arguments on any platform.
Network random_gnp(std::size_t n, double p, std::uint32_t seed,
                   bool directed = false);

}  // namespace netcent
