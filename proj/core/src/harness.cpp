#include "netcent/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "netcent/directed.hpp"
#include "netcent/multicomponent.hpp"

namespace netcent {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[48];
  if (std::isnan(v)) return "nan";
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

FitQuality run_one(const Network& net, const BenchEstimator& est) {
  if (!net.directed()) {
    switch (est.kind) {
      case EstimatorKind::degree: return fit_degree(net).quality;
      case EstimatorKind::eigenvector: return fit_eigenvector(net).quality;
      case EstimatorKind::katz: return fit_katz(net).quality;
      case EstimatorKind::multi_component:
        return fit_multicomponent(net, McStrategy::fixed(est.s)).quality;
    }
  } else {
    switch (est.kind) {
      case EstimatorKind::degree: return fit_degree_directed(net).quality;
      case EstimatorKind::eigenvector: return fit_hits(net).quality;
      case EstimatorKind::katz:
        throw config_error("katz runs on undirected networks only");
      case EstimatorKind::multi_component:
        return fit_multicomponent_directed(net, est.s).quality;
    }
  }
  throw config_error("unknown estimator");
}

}  // namespace

std::string BenchEstimator::name() const {
  if (kind == EstimatorKind::multi_component)
    return "mc(" + std::to_string(s) + ")";
  return to_string(kind);
}

std::vector<BenchEstimator> default_estimators(std::size_t mc_s) {
  std::vector<BenchEstimator> out(4);
  out[0].kind = EstimatorKind::degree;
  out[1].kind = EstimatorKind::eigenvector;
  out[2].kind = EstimatorKind::katz;
  out[3].kind = EstimatorKind::multi_component;
  out[3].s = mc_s;
  return out;
}

std::vector<BenchRecord> bench_network(const Network& net,
                                       const std::string& id,
                                       const std::vector<BenchEstimator>& estimators) {
  const auto st = stats(net);
  std::vector<BenchRecord> records;
  records.reserve(estimators.size());
  for (const auto& est : estimators) {
    BenchRecord rec;
    rec.network_id = id;
    rec.n = st.n;
    rec.e = st.e;
    rec.estimator = est.name();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const FitQuality q = run_one(net, est);
      rec.s_eff = q.s_eff;
      rec.r2 = q.r2;
      rec.r2_adj = q.r2_adj;
    } catch (const config_error& e) {
      rec.r2 = rec.r2_adj = std::nan("");
      rec.status = std::string("unsupported: ") + sanitize(e.what());
    } catch (const std::exception& e) {
      rec.r2 = rec.r2_adj = std::nan("");
      rec.status = std::string("error: ") + sanitize(e.what());
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_time = std::chrono::duration<double>(t1 - t0).count();
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<BenchRecord> run_corpus(const std::string& dir,
                                    const std::vector<BenchEstimator>& estimators,
                                    int workers, const std::string& out_dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw io_error("not a readable directory: " + dir);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".mtx" || ext == ".mm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) return {};

  std::vector<std::vector<BenchRecord>> per_file(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= files.size()) return;
      const std::string id = files[idx].stem().string();
      try {
        const Network net = load_matrix_market(files[idx].string());
        per_file[idx] = bench_network(net, id, estimators);
      } catch (const std::exception& e) {
        for (const auto& est : estimators) {
          BenchRecord rec;
          rec.network_id = id;
          rec.estimator = est.name();
          rec.r2 = rec.r2_adj = std::nan("");
          rec.status = std::string("load_error: ") + sanitize(e.what());
          per_file[idx].push_back(std::move(rec));
        }
      }
    }
  };

  std::size_t pool = workers > 0
                         ? static_cast<std::size_t>(workers)
                         : std::min<std::size_t>(
                               std::max(1u, std::thread::hardware_concurrency()), 8);
  pool = std::min(pool, files.size());
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(work);
  for (auto& t : threads) t.join();

  std::vector<BenchRecord> out;
  for (auto& recs : per_file)
    for (auto& r : recs) out.push_back(std::move(r));
  if (!out_dir.empty()) write_bench_csv(out, out_dir);
  return out;
}

void write_bench_csv_file(const std::vector<BenchRecord>& records,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "# netcent bench results, schema v1\n";
  out << "network_id,n,e,estimator,s_eff,r2,r2_adj,wall_time,status\n";
  for (const auto& r : records) {
    out << r.network_id << "," << r.n << "," << r.e << "," << r.estimator << ","
        << r.s_eff << "," << fmt(r.r2) << "," << fmt(r.r2_adj) << ","
        << fmt(r.wall_time) << "," << r.status << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

std::string write_bench_csv(const std::vector<BenchRecord>& records,
                            const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", &tm_utc);
  fs::path path = fs::path(out_dir) / (std::string("bench_") + stamp + ".csv");
  for (int k = 1; fs::exists(path); ++k)
    path = fs::path(out_dir) /
           (std::string("bench_") + stamp + "-" + std::to_string(k) + ".csv");
  write_bench_csv_file(records, path.string());
  return path.string();
}

PowerLawFit fit_powerlaw(const std::vector<BenchRecord>& records,
                         const std::string& estimator) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (r.estimator != estimator || r.status != "ok") continue;
    if (!(r.r2_adj > 0.0) || r.n == 0) continue;
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(r.r2_adj));
  }
  if (xs.size() < 3)
    throw numeric_error("power-law fit needs at least 3 positive records");

  const auto m = static_cast<double>(xs.size());
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= m;
  ybar /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }

  PowerLawFit fit;
  fit.points_used = xs.size();
  if (sxx <= 1e-12 * m) {
    fit.p = 0.0;
    fit.c = std::exp(ybar);
  } else {
    const double slope = sxy / sxx;
    fit.p = -slope;
    fit.c = std::exp(ybar - slope * xbar);
  }
  return fit;
}

std::vector<double> cumulative_frequency(const std::vector<BenchRecord>& records,
                                         const std::string& estimator,
                                         const std::vector<double>& grid) {
  std::vector<double> values;
  for (const auto& r : records)
    if (r.estimator == estimator && r.status == "ok") values.push_back(r.r2_adj);
  std::vector<double> out(grid.size(), 0.0);
  if (values.empty()) return out;
  const auto total = static_cast<double>(values.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto below = std::count_if(values.begin(), values.end(),
                                     [&](double v) { return v <= grid[i]; });
    out[i] = static_cast<double>(below) / total;
  }
  return out;
}

Network random_gnp(std::size_t n, double p, std::uint32_t seed, bool directed) {
  if (n < 1) throw config_error("random network needs at least one node");
  if (p < 0.0 || p > 1.0) throw config_error("edge probability out of [0, 1]");
  std::mt19937 eng(seed);
  // Threshold comparison on the raw 32-bit stream keeps the draw sequence
  // identical across platforms, unlike distribution adapters.
  const auto threshold =
      static_cast<std::uint64_t>(p * 4294967296.0);  // p * 2^32
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nn, nn);
  if (directed) {
    for (Eigen::Index i = 0; i < nn; ++i)
      for (Eigen::Index j = 0; j < nn; ++j) {
        if (i == j) continue;
        if (static_cast<std::uint64_t>(eng()) < threshold) m(i, j) = 1.0;
      }
  } else {
    for (Eigen::Index i = 0; i < nn; ++i)
      for (Eigen::Index j = i + 1; j < nn; ++j)
        if (static_cast<std::uint64_t>(eng()) < threshold)
          m(i, j) = m(j, i) = 1.0;
  }

  int digits = 1;
  for (std::size_t v = n; v >= 10; v /= 10) ++digits;
  digits = std::clamp(digits, 4, 20);
  std::vector<std::string> labels(n);
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "n%0*llu", digits,
                  static_cast<unsigned long long>(i + 1));
    labels[i] = buf;
  }
  return Network(std::move(labels), std::move(m), directed, false);
}

}  // namespace netcent
