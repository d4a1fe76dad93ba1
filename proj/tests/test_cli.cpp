// End-to-end runs of the command-line binary. Every file the CLI writes must
// be byte-identical to the one produced by the corresponding library calls.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <netcent/directed.hpp>
#include <netcent/multicomponent.hpp>
#include <netcent/network.hpp>
#include <netcent/reconstruct.hpp>

#include "helpers.hpp"

using namespace netcent;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path dir = testutil::make_temp_dir("cli_io");
  const std::string out_file = (dir / "out.txt").string();
  const std::string err_file = (dir / "err.txt").string();
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string("\"") + NETCENT_CLI_PATH + "\" " + args + " > \"" +
         out_file + "\" 2> \"" + err_file + "\"";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.code = status == -1 ? -1
                : WIFEXITED(status) ? WEXITSTATUS(status)
                                    : -2;
  result.out = testutil::read_file(out_file);
  result.err = testutil::read_file(err_file);
  return result;
}

std::string k3_file(const fs::path& dir) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(3, 3);
  m.diagonal().setZero();
  const std::string path = (dir / "k3.mtx").string();
  write_matrix_market(Network({"a", "b", "c"}, m, false, false), path);
  return path;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

// Bench CSV rows with the wall_time column blanked.
std::vector<std::string> bench_rows_sans_time(const std::string& path) {
  std::vector<std::string> rows;
  for (std::string line : data_lines(testutil::read_file(path))) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (cells.size() == 9) cells[7] = "x";
    std::string joined;
    for (std::size_t i = 0; i < cells.size(); ++i)
      joined += (i ? "," : "") + cells[i];
    rows.push_back(joined);
  }
  return rows;
}

}  // namespace

TEST_CASE("cli fit writes the library ranking file and a quality summary") {
  const fs::path dir = testutil::make_temp_dir("cli_fit");
  const auto result = run_cli("fit --input florentine --estimator mc --s 2 "
                              "--out \"" + dir.string() + "\"");
  CHECK(result.code == 0);
  CHECK(result.out.find("r2_adj: 0.296428495782") != std::string::npos);
  CHECK(result.out.find("estimator: mc(2)") != std::string::npos);

  const Network net = florentine_fixture();
  const McFit fit = fit_multicomponent(net, McStrategy::fixed(2));
  const auto report = uc_multicomponent(fit, net);
  const std::string golden = (dir / "golden.csv").string();
  write_ranking_csv(fit, report, net, golden);
  CHECK(testutil::read_file((dir / "fit_mc2.csv").string()) ==
        testutil::read_file(golden));

  const std::string summary =
      testutil::read_file((dir / "fit_mc2_summary.txt").string());
  CHECK(summary.find("ss: 23.5229142988") != std::string::npos);
  CHECK(summary.find("r2_adj: 0.296428495782") != std::string::npos);
}

TEST_CASE("cli fit maps failures to the documented exit codes") {
  const fs::path dir = testutil::make_temp_dir("cli_codes");

  SUBCASE("diverging katz attenuation exits 2 and reports lambda_1") {
    const auto result =
        run_cli("fit --input \"" + k3_file(dir) + "\" --estimator katz "
                "--alpha 2.0 --out \"" + dir.string() + "\"");
    CHECK(result.code == 2);
    CHECK(result.err.find("lambda_1") != std::string::npos);
  }
  SUBCASE("degree on an empty graph exits 2") {
    const std::string path = (dir / "empty.mtx").string();
    write_matrix_market(
        Network({"a", "b", "c"}, Eigen::MatrixXd::Zero(3, 3), false, false),
        path);
    const auto result = run_cli("fit --input \"" + path +
                                "\" --estimator degree --out \"" +
                                dir.string() + "\"");
    CHECK(result.code == 2);
  }
  SUBCASE("missing input exits 1") {
    const auto result =
        run_cli("fit --input /no/such/network.mtx --out \"" + dir.string() +
                "\"");
    CHECK(result.code == 1);
    CHECK(result.err.find("no such input") != std::string::npos);
  }
  SUBCASE("inconsistent flags exit 3") {
    CHECK(run_cli("fit --input florentine --estimator degree --s 3").code ==
          3);
    CHECK(run_cli("fit --input florentine --estimator degree --alpha 0.1")
              .code == 3);
    CHECK(run_cli("fit --input florentine --estimator nonsense").code == 3);
  }
  SUBCASE("parser errors exit 3, help exits 0") {
    CHECK(run_cli("fit --input florentine --bogus-flag").code == 3);
    CHECK(run_cli("fit").code == 3);
    CHECK(run_cli("--help").code == 0);
  }
}

TEST_CASE("cli fit honors the output directory environment variable") {
  const fs::path dir = testutil::make_temp_dir("cli_env");
  const auto result =
      run_cli("fit --input florentine --estimator degree",
              "NETCENT_OUT=\"" + dir.string() + "\"");
  CHECK(result.code == 0);
  CHECK(fs::exists(dir / "fit_degree.csv"));
  CHECK(fs::exists(dir / "fit_degree_summary.txt"));
}

TEST_CASE("cli rank prints the contribution table") {
  const auto result =
      run_cli("rank --input florentine --estimator eigenvector --top 3");
  CHECK(result.code == 0);
  const auto lines = data_lines(result.out);
  REQUIRE(lines.size() == 5);  // summary, header, three rows
  CHECK(lines[0].find("r2_adj: 0.078670769513") != std::string::npos);
  CHECK(lines[2].find("Medici") != std::string::npos);
  CHECK(lines[4].find("Ridolfi") != std::string::npos);
}

TEST_CASE("cli compare lays out rankings side by side") {
  const fs::path dir = testutil::make_temp_dir("cli_cmp");

  SUBCASE("eigenvector against mc(2) shows the ridolfi move") {
    const auto result = run_cli(
        "compare --input florentine --estimator eigenvector "
        "--estimator 'mc(2)' --out \"" + dir.string() + "\"");
    CHECK(result.code == 0);
    CHECK(result.out.find("label,eigenvector,mc(2),d(eigenvector,mc(2))\n") !=
          std::string::npos);
    CHECK(result.out.find("r2_adj,0.078670769513") != std::string::npos);
    CHECK(result.out.find("Medici,1,1,0\n") != std::string::npos);
    CHECK(result.out.find("Ridolfi,3,7,4\n") != std::string::npos);
    CHECK(testutil::read_file((dir / "compare.csv").string()).find(
              "Ridolfi,3,7,4\n") != std::string::npos);
  }
  SUBCASE("medici leads every classical column") {
    const auto result = run_cli(
        "compare --input florentine --estimator degree,eigenvector,katz "
        "--out \"" + dir.string() + "\"");
    CHECK(result.code == 0);
    CHECK(result.out.find("Medici,1,1,1,") != std::string::npos);
  }
  SUBCASE("an estimator against itself has zero rank differences") {
    const auto result =
        run_cli("compare --input florentine --estimator degree,degree "
                "--out \"" + dir.string() + "\"");
    CHECK(result.code == 0);
    for (const auto& line : data_lines(result.out)) {
      if (line.rfind("label,", 0) == 0 || line.rfind("r2_adj,", 0) == 0 ||
          line.rfind("wrote ", 0) == 0)
        continue;
      CHECK(line.substr(line.size() - 2) == ",0");
    }
  }
  SUBCASE("fewer than two estimators exits 3") {
    CHECK(run_cli("compare --input florentine --estimator degree").code == 3);
  }
}

TEST_CASE("cli reconstruct writes edge files in both formats") {
  const fs::path dir = testutil::make_temp_dir("cli_rec");
  const auto result =
      run_cli("reconstruct --input florentine --estimator degree --out \"" +
              dir.string() + "\"");
  CHECK(result.code == 0);
  CHECK(result.out.find("predicted: 27") != std::string::npos);
  CHECK(result.out.find("correct: 13") != std::string::npos);

  const Network net = florentine_fixture();
  const auto rec = reconstruct_top_e(fit_degree(net).estimated_matrix(), net);
  const std::string golden = (dir / "golden.csv").string();
  write_edge_csv(rec, net, golden);
  CHECK(testutil::read_file((dir / "edges_degree.csv").string()) ==
        testutil::read_file(golden));

  const auto dot_result = run_cli(
      "reconstruct --input florentine --estimator degree --format dot "
      "--out \"" + dir.string() + "\"");
  CHECK(dot_result.code == 0);
  const std::string dot =
      testutil::read_file((dir / "reconstruction_degree.dot").string());
  CHECK(dot.find("graph reconstruction {") != std::string::npos);
  CHECK(dot.find(" -- ") != std::string::npos);
}

TEST_CASE("cli dispatches directed inputs to the directed pipeline") {
  const fs::path dir = testutil::make_temp_dir("cli_dir");
  Eigen::MatrixXd cycle = Eigen::MatrixXd::Zero(3, 3);
  cycle(0, 1) = cycle(1, 2) = cycle(2, 0) = 1.0;
  const Network net({"a", "b", "c"}, cycle, true, false);
  const std::string path = (dir / "cycle.mm").string();
  write_matrix_market(net, path);

  const auto result = run_cli("fit --input \"" + path +
                              "\" --estimator eigenvector --out \"" +
                              dir.string() + "\"");
  CHECK(result.code == 0);

  // the file loader names nodes by position, so fit what the cli loaded
  const Network loaded = load_matrix_market(path);
  const DirectedFit fit = fit_hits(loaded);
  const auto report = uc_directed(fit, loaded);
  const std::string golden = (dir / "golden.csv").string();
  write_directed_csv(fit, report, loaded, golden);
  CHECK(testutil::read_file((dir / "fit_eigenvector.csv").string()) ==
        testutil::read_file(golden));

  CHECK(run_cli("fit --input \"" + path + "\" --estimator katz --out \"" +
                dir.string() + "\"")
            .code == 3);
}

TEST_CASE("cli bench self-test is reproducible for a fixed seed") {
  const fs::path dir = testutil::make_temp_dir("cli_bench");
  const std::string f1 = (dir / "run1.csv").string();
  const std::string f2 = (dir / "run2.csv").string();

  const auto r1 = run_cli("bench --selftest --seed 7 --out-file \"" + f1 +
                          "\" --out \"" + dir.string() + "\"");
  CHECK(r1.code == 0);
  CHECK(r1.out.find("records: 48") != std::string::npos);
  CHECK(r1.out.find("failures: 0") != std::string::npos);
  CHECK(r1.out.find("power law") != std::string::npos);

  const auto r2 = run_cli("bench --selftest --seed 7 --out-file \"" + f2 +
                          "\" --out \"" + dir.string() + "\"");
  CHECK(r2.code == 0);
  CHECK(bench_rows_sans_time(f1) == bench_rows_sans_time(f2));

  SUBCASE("corpus mode benches every matrix market file") {
    const fs::path corpus = dir / "corpus";
    fs::create_directories(corpus);
    write_matrix_market(florentine_fixture(), (corpus / "flo.mtx").string());
    const auto rc = run_cli("bench --dir \"" + corpus.string() +
                            "\" --out \"" + dir.string() + "\"");
    CHECK(rc.code == 0);
    CHECK(rc.out.find("records: 4") != std::string::npos);
    bool found = false;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().filename().string().rfind("bench_", 0) == 0)
        found = true;
    CHECK(found);
  }
  SUBCASE("bench without a mode or with both exits 3") {
    CHECK(run_cli("bench").code == 3);
    CHECK(run_cli("bench --dir x --selftest").code == 3);
  }
}
