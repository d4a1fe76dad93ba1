// netcent: least-squares adjacency estimation from the command line.
//
// Subcommands compose the library modules one-to-one; every number printed
// or written here was produced by a library call. Exit codes: 0 success,
// 1 input error, 2 numerical error, 3 configuration error.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <netcent/directed.hpp>
#include <netcent/harness.hpp>
#include <netcent/multicomponent.hpp>
#include <netcent/network.hpp>
#include <netcent/reconstruct.hpp>

namespace {

using namespace netcent;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Options {
  std::string input;
  bool directed_hint = false;
  bool weighted_hint = false;
  std::string estimator = "degree";
  std::vector<std::string> estimators;  // compare
  std::size_t s = 2;
  bool s_set = false;
  double alpha = 0.0;
  bool alpha_set = false;
  double beta = 1.0;
  bool beta_set = false;
  std::string out_dir;
  std::string format = "csv";
  std::size_t top = 0;
  std::size_t oracle_limit = 200;
  bool skip_oracle = false;

  std::string corpus_dir;
  bool selftest = false;
  std::uint32_t seed = 1;
  int workers = 0;
  std::size_t mc_s = 2;
  std::string out_file;
};

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::degree;
  std::size_t s = 2;

  std::string name() const {
    if (kind != EstimatorKind::multi_component) return to_string(kind);
    return "mc(" + std::to_string(s) + ")";
  }
  std::string file_tag() const {
    if (kind != EstimatorKind::multi_component) return to_string(kind);
    return "mc" + std::to_string(s);
  }
};

EstimatorSpec parse_estimator(const std::string& text, const Options& opts) {
  EstimatorSpec spec;
  spec.s = opts.s;
  std::string base = text;
  const auto paren = text.find('(');
  if (paren != std::string::npos) {
    if (text.back() != ')')
      throw config_error("malformed estimator: " + text);
    base = text.substr(0, paren);
    const std::string inner = text.substr(paren + 1, text.size() - paren - 2);
    std::size_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(inner.data(), inner.data() + inner.size(), value);
    if (ec != std::errc() || ptr != inner.data() + inner.size())
      throw config_error("malformed component count in: " + text);
    if (opts.s_set)
      throw config_error("component count given both inline and via --s");
    spec.s = value;
  }
  if (base == "degree")
    spec.kind = EstimatorKind::degree;
  else if (base == "eigenvector")
    spec.kind = EstimatorKind::eigenvector;
  else if (base == "katz")
    spec.kind = EstimatorKind::katz;
  else if (base == "mc")
    spec.kind = EstimatorKind::multi_component;
  else
    throw config_error("unknown estimator: " + text +
                       " (expected degree, eigenvector, katz, or mc)");
  if (paren != std::string::npos &&
      spec.kind != EstimatorKind::multi_component)
    throw config_error("component count applies only to mc: " + text);
  return spec;
}

void check_flag_consistency(const Options& opts,
                            const std::vector<EstimatorSpec>& specs) {
  const bool has_mc = std::any_of(specs.begin(), specs.end(), [](auto& s) {
    return s.kind == EstimatorKind::multi_component;
  });
  const bool has_katz = std::any_of(specs.begin(), specs.end(), [](auto& s) {
    return s.kind == EstimatorKind::katz;
  });
  if (opts.s_set && !has_mc)
    throw config_error("--s applies only to the mc estimator");
  if (opts.alpha_set && !has_katz)
    throw config_error("--alpha applies only to the katz estimator");
  if (opts.beta_set && !has_katz)
    throw config_error("--beta applies only to the katz estimator");
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

Network load_input(const Options& opts) {
  if (opts.input == "florentine") return florentine_fixture();
  const std::filesystem::path path = opts.input;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec))
    throw io_error("no such input: " + opts.input);
  const std::string ext = path.extension().string();
  if (ext == ".mtx" || ext == ".mm") return load_matrix_market(path.string());
  return load_edge_list(path.string(), opts.directed_hint, opts.weighted_hint);
}

std::string resolve_out_dir(const Options& opts) {
  std::string dir = opts.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("NETCENT_OUT");
    dir = env && *env ? env : ".";
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory: " + dir);
  return dir;
}

double max_scaled_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale =
      std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-12});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

// Everything the subcommands need from one fitted estimator, regardless of
// which pipeline produced it.
struct FitOutput {
  std::string name;
  bool directed = false;
  FitQuality quality;
  Eigen::MatrixXd a_hat;
  UcReport uc;  // total scope for directed fits
  Eigen::VectorXd display_x;
  Eigen::VectorXd uc_out, uc_in;  // directed only
  std::function<void(const std::string& path)> write_csv;
};

FitOutput run_undirected(const Network& net, const EstimatorSpec& spec,
                         const Options& opts) {
  FitOutput out;
  out.name = spec.name();
  const bool check_oracle =
      !opts.skip_oracle && net.size() <= opts.oracle_limit;

  if (spec.kind == EstimatorKind::multi_component) {
    const McFit fit = fit_multicomponent(net, McStrategy::fixed(spec.s));
    const UcReport report = uc_multicomponent(fit, net);
    if (check_oracle) {
      const auto oracle = uc_multicomponent(fit, net, UcMethod::oracle);
      const double gap = max_scaled_gap(report.uc, oracle.uc);
      if (gap > 1e-6)
        throw numeric_error(
            "closed-form contributions deviate from the leave-one-out oracle "
            "by " + fmt(gap));
    }
    out.quality = fit.quality;
    out.a_hat = fit.estimated_matrix();
    out.uc = report;
    out.display_x = fit.basis.pairs.front().vector;
    out.write_csv = [fit, report, &net](const std::string& path) {
      write_ranking_csv(fit, report, net, path);
    };
    return out;
  }

  EstimatorFit fit;
  switch (spec.kind) {
    case EstimatorKind::degree:
      fit = fit_degree(net);
      break;
    case EstimatorKind::eigenvector:
      fit = fit_eigenvector(net);
      break;
    default:
      fit = fit_katz(net,
                     opts.alpha_set ? std::optional<double>(opts.alpha)
                                    : std::nullopt,
                     opts.beta);
      break;
  }
  const UcReport report = unique_contribution(fit, net);
  if (check_oracle) {
    const auto oracle = unique_contribution(fit, net, UcMethod::oracle);
    const double gap = max_scaled_gap(report.uc, oracle.uc);
    if (gap > 1e-6)
      throw numeric_error(
          "closed-form contributions deviate from the leave-one-out oracle "
          "by " + fmt(gap));
  }
  out.quality = fit.quality;
  out.a_hat = fit.estimated_matrix();
  out.uc = report;
  out.display_x = fit.x;
  out.write_csv = [fit, report, &net](const std::string& path) {
    write_ranking_csv(fit, report, net, path);
  };
  return out;
}

FitOutput run_directed(const Network& net, const EstimatorSpec& spec,
                       const Options& opts) {
  DirectedFit fit;
  switch (spec.kind) {
    case EstimatorKind::degree:
      fit = fit_degree_directed(net);
      break;
    case EstimatorKind::eigenvector:
      fit = fit_hits(net);
      break;
    case EstimatorKind::multi_component:
      fit = fit_multicomponent_directed(net, spec.s);
      break;
    default:
      throw config_error("katz estimation expects an undirected network");
  }
  const DirectedUcReport report = uc_directed(fit, net);
  if (!opts.skip_oracle && net.size() <= opts.oracle_limit) {
    const auto oracle = uc_directed(fit, net, UcMethod::oracle);
    const double gap = std::max({max_scaled_gap(report.uc_out, oracle.uc_out),
                                 max_scaled_gap(report.uc_in, oracle.uc_in),
                                 max_scaled_gap(report.uc_tot, oracle.uc_tot)});
    if (gap > 1e-6)
      throw numeric_error(
          "closed-form contributions deviate from the leave-one-out oracle "
          "by " + fmt(gap));
  }

  FitOutput out;
  out.name = spec.name();
  out.directed = true;
  out.quality = fit.quality;
  out.a_hat = fit.estimated_matrix();
  out.uc.uc = report.uc_tot;
  out.uc.ranks = report.ranks_tot;
  out.uc.method = report.method;
  out.display_x = fit.x_out.col(0);
  out.uc_out = report.uc_out;
  out.uc_in = report.uc_in;
  out.write_csv = [fit, report, &net](const std::string& path) {
    write_directed_csv(fit, report, net, path);
  };
  return out;
}

FitOutput run_estimator(const Network& net, const EstimatorSpec& spec,
                        const Options& opts) {
  return net.directed() ? run_directed(net, spec, opts)
                        : run_undirected(net, spec, opts);
}

std::string quality_summary(const FitOutput& out, const Network& net) {
  const NetworkStats st = stats(net);
  std::string text;
  text += "estimator: " + out.name + "\n";
  text += "n: " + std::to_string(st.n) + "\n";
  text += "e: " + std::to_string(st.e) + "\n";
  text += "ss: " + fmt(out.quality.ss) + "\n";
  text += "tss: " + fmt(out.quality.tss) + "\n";
  text += "r2: " + fmt(out.quality.r2) + "\n";
  text += "r2_adj: " + fmt(out.quality.r2_adj) + "\n";
  text += "s_eff: " + std::to_string(out.quality.s_eff) + "\n";
  return text;
}

// ----------------------------------------------------------- subcommands

int cmd_fit(const Options& opts) {
  const EstimatorSpec spec = parse_estimator(opts.estimator, opts);
  check_flag_consistency(opts, {spec});
  const Network net = load_input(opts);
  const FitOutput out = run_estimator(net, spec, opts);

  const std::string dir = resolve_out_dir(opts);
  const std::string csv_path = dir + "/fit_" + spec.file_tag() + ".csv";
  out.write_csv(csv_path);

  const std::string summary = quality_summary(out, net);
  const std::string summary_path =
      dir + "/fit_" + spec.file_tag() + "_summary.txt";
  std::ofstream sf(summary_path);
  if (!sf) throw io_error("cannot write " + summary_path);
  sf << summary;
  if (!sf.flush()) throw io_error("write failed: " + summary_path);

  std::cout << summary;
  std::cout << "wrote " << csv_path << "\n";
  std::cout << "wrote " << summary_path << "\n";
  return 0;
}

int cmd_rank(const Options& opts) {
  const EstimatorSpec spec = parse_estimator(opts.estimator, opts);
  check_flag_consistency(opts, {spec});
  const Network net = load_input(opts);
  const FitOutput out = run_estimator(net, spec, opts);

  std::cout << "estimator: " << out.name
            << "  r2_adj: " << fmt(out.quality.r2_adj) << "\n";
  const std::size_t limit =
      opts.top == 0 ? out.uc.ranks.size()
                    : std::min(opts.top, out.uc.ranks.size());
  char line[160];
  if (out.directed) {
    std::printf("%4s  %-20s %14s %14s %14s\n", "rank", "label", "uc_out",
                "uc_in", "uc_tot");
    for (std::size_t pos = 0; pos < limit; ++pos) {
      const auto i = static_cast<Eigen::Index>(out.uc.ranks[pos]);
      std::snprintf(line, sizeof line, "%4zu  %-20s %14.8g %14.8g %14.8g\n",
                    pos + 1, net.labels()[out.uc.ranks[pos]].c_str(),
                    out.uc_out[i], out.uc_in[i], out.uc.uc[i]);
      std::cout << line;
    }
  } else {
    std::printf("%4s  %-20s %14s %14s\n", "rank", "label", "uc", "x");
    for (std::size_t pos = 0; pos < limit; ++pos) {
      const auto i = static_cast<Eigen::Index>(out.uc.ranks[pos]);
      std::snprintf(line, sizeof line, "%4zu  %-20s %14.8g %14.8g\n", pos + 1,
                    net.labels()[out.uc.ranks[pos]].c_str(), out.uc.uc[i],
                    out.display_x[i]);
      std::cout << line;
    }
  }
  return 0;
}

int cmd_reconstruct(const Options& opts) {
  const EstimatorSpec spec = parse_estimator(opts.estimator, opts);
  check_flag_consistency(opts, {spec});
  const Network net = load_input(opts);
  const FitOutput out = run_estimator(net, spec, opts);
  const Reconstruction rec = reconstruct_top_e(out.a_hat, net);

  const std::string dir = resolve_out_dir(opts);
  std::string path;
  if (opts.format == "dot") {
    path = dir + "/reconstruction_" + spec.file_tag() + ".dot";
    export_dot(rec, net, path, &out.uc);
  } else {
    path = dir + "/edges_" + spec.file_tag() + ".csv";
    write_edge_csv(rec, net, path);
  }

  std::cout << "estimator: " << out.name << "\n";
  std::cout << "predicted: " << rec.predicted.size()
            << "  correct: " << rec.correct_count()
            << "  spurious: " << rec.spurious_count()
            << "  missing: " << rec.missing.size() << "\n";
  std::cout << "threshold: " << fmt(rec.threshold_value)
            << (rec.tie_expanded ? "  (tie expanded)" : "") << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_compare(const Options& opts) {
  if (opts.estimators.size() < 2)
    throw config_error("compare needs at least two estimators");
  std::vector<EstimatorSpec> specs;
  for (const auto& name : opts.estimators)
    specs.push_back(parse_estimator(name, opts));
  check_flag_consistency(opts, specs);

  const Network net = load_input(opts);
  std::vector<FitOutput> fits;
  for (const auto& spec : specs) fits.push_back(run_estimator(net, spec, opts));

  // Node ranks per estimator, 1-based.
  const std::size_t n = net.size();
  std::vector<std::vector<std::size_t>> node_rank(fits.size(),
                                                  std::vector<std::size_t>(n));
  for (std::size_t f = 0; f < fits.size(); ++f)
    for (std::size_t pos = 0; pos < n; ++pos)
      node_rank[f][fits[f].uc.ranks[pos]] = pos + 1;

  std::string table = "label";
  for (const auto& fit : fits) table += "," + fit.name;
  for (std::size_t a = 0; a < fits.size(); ++a)
    for (std::size_t b = a + 1; b < fits.size(); ++b)
      table += ",d(" + fits[a].name + "," + fits[b].name + ")";
  table += "\n";

  table += "r2_adj";
  for (const auto& fit : fits) table += "," + fmt(fit.quality.r2_adj);
  for (std::size_t a = 0; a < fits.size(); ++a)
    for (std::size_t b = a + 1; b < fits.size(); ++b) table += ",";
  table += "\n";

  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t node = fits.front().uc.ranks[pos];
    table += csv_quote(net.labels()[node]);
    for (std::size_t f = 0; f < fits.size(); ++f)
      table += "," + std::to_string(node_rank[f][node]);
    for (std::size_t a = 0; a < fits.size(); ++a)
      for (std::size_t b = a + 1; b < fits.size(); ++b) {
        const auto ra = node_rank[a][node], rb = node_rank[b][node];
        table += "," + std::to_string(ra > rb ? ra - rb : rb - ra);
      }
    table += "\n";
  }

  const std::string dir = resolve_out_dir(opts);
  const std::string path = dir + "/compare.csv";
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << table;
  if (!out.flush()) throw io_error("write failed: " + path);

  std::cout << table;
  std::cout << "wrote " << path << "\n";
  return 0;
}

void print_bench_summary(const std::vector<BenchRecord>& records,
                         const std::vector<BenchEstimator>& estimators) {
  std::size_t failures = 0;
  for (const auto& r : records)
    if (r.status != "ok") ++failures;
  std::cout << "records: " << records.size() << "  failures: " << failures
            << "\n";
  std::cout << "power law (r2_adj ~ c n^-p):\n";
  for (const auto& est : estimators) {
    std::cout << "  " << est.name() << ": ";
    try {
      const PowerLawFit fit = fit_powerlaw(records, est.name());
      std::cout << "c=" << fmt(fit.c) << " p=" << fmt(fit.p)
                << " points=" << fit.points_used << "\n";
    } catch (const numeric_error&) {
      std::cout << "insufficient positive records\n";
    }
  }
}

int cmd_bench(const Options& opts) {
  if (opts.selftest != opts.corpus_dir.empty())
    throw config_error("bench needs exactly one of --dir or --selftest");
  const auto estimators = default_estimators(opts.mc_s);

  std::vector<BenchRecord> records;
  if (opts.selftest) {
    for (const std::size_t n : {20, 50, 100, 200}) {
      for (std::uint32_t i = 0; i < 3; ++i) {
        const auto gseed =
            opts.seed + static_cast<std::uint32_t>(97 * n) + i;
        const Network net = random_gnp(n, 0.1, gseed);
        char id[48];
        std::snprintf(id, sizeof id, "gnp_%03zu_%u", n, i);
        const auto batch = bench_network(net, id, estimators);
        records.insert(records.end(), batch.begin(), batch.end());
      }
    }
  } else {
    records = run_corpus(opts.corpus_dir, estimators, opts.workers);
  }

  std::string path;
  if (!opts.out_file.empty()) {
    write_bench_csv_file(records, opts.out_file);
    path = opts.out_file;
  } else {
    path = write_bench_csv(records, resolve_out_dir(opts));
  }

  print_bench_summary(records, estimators);
  std::cout << "results: " << path << "\n";
  return 0;
}

void add_input_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--input", opts.input,
                  "network: 'florentine', a Matrix Market file (.mtx/.mm), "
                  "or an edge list")
      ->required();
  cmd->add_flag("--directed", opts.directed_hint,
                "treat an edge-list input as directed");
  cmd->add_flag("--weighted", opts.weighted_hint,
                "treat an edge-list input as weighted");
  cmd->add_option("--oracle-limit", opts.oracle_limit,
                  "cross-check closed-form contributions against the "
                  "leave-one-out oracle up to this size (default 200)");
  cmd->add_flag("--skip-oracle-check", opts.skip_oracle,
                "disable the oracle cross-check");
}

void add_estimator_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--estimator", opts.estimator,
                  "degree, eigenvector, katz, or mc (directed inputs map "
                  "eigenvector to the singular fit)");
  cmd->add_option("--s", opts.s, "number of components for mc (default 2)");
  cmd->add_option("--alpha", opts.alpha,
                  "katz attenuation (default 0.5 / lambda_1)");
  cmd->add_option("--beta", opts.beta, "katz base weight (default 1)");
}

std::size_t flag_count(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt ? opt->count() : 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opts;
  CLI::App app{
      "Node centrality as least-squares estimation of the adjacency "
      "matrix: fit estimators, rank nodes by unique contribution, "
      "reconstruct networks, benchmark over a corpus."};
  app.require_subcommand(1);

  auto* fit = app.add_subcommand(
      "fit", "fit one estimator and write ranking and quality files");
  add_input_flags(fit, opts);
  add_estimator_flags(fit, opts);
  fit->add_option("--out", opts.out_dir,
                  "output directory (default $NETCENT_OUT or .)");

  auto* rank_cmd = app.add_subcommand(
      "rank", "print the unique-contribution ranking");
  add_input_flags(rank_cmd, opts);
  add_estimator_flags(rank_cmd, opts);
  rank_cmd->add_option("--top", opts.top, "print only the first rows");

  auto* rec = app.add_subcommand(
      "reconstruct", "threshold the estimated matrix at the true edge count");
  add_input_flags(rec, opts);
  add_estimator_flags(rec, opts);
  rec->add_option("--out", opts.out_dir,
                  "output directory (default $NETCENT_OUT or .)");
  rec->add_option("--format", opts.format, "csv or dot (default csv)")
      ->check(CLI::IsMember({"csv", "dot"}));

  auto* cmp = app.add_subcommand(
      "compare", "side-by-side rankings of two or more estimators");
  add_input_flags(cmp, opts);
  cmp->add_option("--estimator", opts.estimators,
                  "estimator per use, e.g. --estimator eigenvector "
                  "--estimator 'mc(2)'")
      ->delimiter(',');
  cmp->add_option("--s", opts.s, "component count for bare 'mc' entries");
  cmp->add_option("--alpha", opts.alpha,
                  "katz attenuation (default 0.5 / lambda_1)");
  cmp->add_option("--beta", opts.beta, "katz base weight (default 1)");
  cmp->add_option("--out", opts.out_dir,
                  "output directory (default $NETCENT_OUT or .)");

  auto* bench = app.add_subcommand(
      "bench", "run every estimator over a corpus or a generated self-test");
  bench->add_option("--dir", opts.corpus_dir,
                    "directory of Matrix Market files");
  bench->add_flag("--selftest", opts.selftest,
                  "bench generated G(n, 0.1) graphs, n in {20, 50, 100, 200}");
  bench->add_option("--seed", opts.seed,
                    "base seed for self-test graphs (default 1)");
  bench->add_option("--workers", opts.workers,
                    "parallel workers for corpus mode (default: hardware)");
  bench->add_option("--mc-s", opts.mc_s,
                    "component count of the mc estimator (default 2)");
  bench->add_option("--out", opts.out_dir,
                    "output directory (default $NETCENT_OUT or .)");
  bench->add_option("--out-file", opts.out_file,
                    "exact results path instead of a timestamped name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  const CLI::App* active = fit->parsed()       ? fit
                           : rank_cmd->parsed() ? rank_cmd
                           : rec->parsed()      ? rec
                           : cmp->parsed()      ? cmp
                                                : bench;
  opts.s_set = flag_count(active, "--s") > 0;
  opts.alpha_set = flag_count(active, "--alpha") > 0;
  opts.beta_set = flag_count(active, "--beta") > 0;

  try {
    if (fit->parsed()) return cmd_fit(opts);
    if (rank_cmd->parsed()) return cmd_rank(opts);
    if (rec->parsed()) return cmd_reconstruct(opts);
    if (cmp->parsed()) return cmd_compare(opts);
    if (bench->parsed()) return cmd_bench(opts);
    throw config_error("no subcommand selected");
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
