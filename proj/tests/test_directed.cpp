#include <doctest.h>

#include <cmath>
#include <netcent/directed.hpp>
#include <netcent/harness.hpp>
#include <netcent/multicomponent.hpp>

#include "helpers.hpp"

using namespace netcent;
using testutil::max_rel_diff;

namespace {

Network single_edge() {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = 1.0;
  return Network({"1", "2"}, m, true, false);
}

Network three_cycle() {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = m(1, 2) = m(2, 0) = 1.0;
  return Network({"a", "b", "c"}, m, true, false);
}

Network florentine_as_directed() {
  const Network flo = florentine_fixture();
  return Network(flo.labels(), flo.matrix(), true, false);
}

}  // namespace

TEST_CASE("directed degree fit on a single edge") {
  const Network net = single_edge();
  const auto fit = fit_degree_directed(net);
  CHECK(fit.x_out(0, 0) == 1.0);
  CHECK(fit.x_out(1, 0) == 0.0);
  CHECK(fit.x_in(0, 0) == 0.0);
  CHECK(fit.x_in(1, 0) == 1.0);
  CHECK(fit.a.value() == doctest::Approx(0.5));
  CHECK(fit.quality.s_eff == 2);

  const auto report = uc_directed(fit, net);
  CHECK(report.uc_out[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(report.uc_in[0] == doctest::Approx(0.0));
  CHECK(report.uc_in[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("directed degree fit on the 3-cycle is uniform") {
  const auto fit = fit_degree_directed(three_cycle());
  for (int i = 0; i < 3; ++i) {
    CHECK(fit.x_out(i, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(fit.x_in(i, 0) == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("singular fit reproduces a single edge exactly") {
  const Network net = single_edge();
  const auto fit = fit_hits(net);
  CHECK(fit.gammas[0] == doctest::Approx(1.0));
  CHECK((fit.estimated_matrix() - net.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(fit.quality.ss == doctest::Approx(0.0));
  CHECK(fit.quality.r2 == doctest::Approx(1.0));

  const auto report = uc_directed(fit, net);
  CHECK(report.uc_tot[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("singular fit on the 3-cycle") {
  // every singular value of a cycle is 1; the leading subspace is degenerate,
  // so only basis-independent quantities are pinned here
  const Network net = three_cycle();
  const auto fit = fit_hits(net);
  CHECK(fit.gammas[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.x_out.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.x_in.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
  // one unit component of a three-unit spectrum
  CHECK(fit.quality.ss == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("rank-2 binary network is reproduced by two components") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
  m(0, 2) = m(0, 3) = 1.0;  // one hub fanning out
  m(1, 4) = 1.0;            // an unrelated edge
  const Network net({"a", "b", "c", "d", "e"}, m, true, false);
  const auto fit = fit_multicomponent_directed(net, 2);
  CHECK((fit.estimated_matrix() - net.matrix()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(fit.quality.r2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.quality.s_eff == 4);
}

TEST_CASE("one directed component coincides with the singular fit") {
  const Network net = florentine_as_directed();
  const auto mc = fit_multicomponent_directed(net, 1);
  const auto hits = fit_hits(net);
  CHECK((mc.estimated_matrix() - hits.estimated_matrix()).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK(mc.quality.ss == doctest::Approx(hits.quality.ss).epsilon(1e-12));
  CHECK(mc.gammas[0] == doctest::Approx(hits.gammas[0]).epsilon(1e-12));
}

TEST_CASE("symmetric network read as directed ranks like the eigenvector fit") {
  const Network dnet = florentine_as_directed();
  const Network unet = florentine_fixture();
  const auto dreport = uc_directed(fit_hits(dnet), dnet);
  const auto ureport = unique_contribution(fit_eigenvector(unet), unet);
  CHECK(dreport.ranks_tot == ureport.ranks);
  CHECK(dreport.ranks_out == ureport.ranks);
}

TEST_CASE("directed contributions match the oracle") {
  const Network flo = florentine_as_directed();
  for (std::uint32_t seed : {4u, 13u}) {
    const Network rnd = random_gnp(8, 0.3, seed, true);
    for (const Network* net : {&flo, &rnd}) {
      if (stats(*net).e == 0) continue;
      std::vector<DirectedFit> fits = {fit_degree_directed(*net),
                                       fit_hits(*net),
                                       fit_multicomponent_directed(*net, 3)};
      for (const auto& fit : fits) {
        const auto closed = uc_directed(fit, *net, UcMethod::closed_form);
        const auto oracle = uc_directed(fit, *net, UcMethod::oracle);
        CHECK(max_rel_diff(closed.uc_out, oracle.uc_out) < 1e-9);
        CHECK(max_rel_diff(closed.uc_in, oracle.uc_in) < 1e-9);
        CHECK(max_rel_diff(closed.uc_tot, oracle.uc_tot) < 1e-9);
      }
    }
  }
}

TEST_CASE("total contribution splits into sides plus a coupling term") {
  const Network net = florentine_as_directed();
  const auto fit = fit_hits(net);
  const auto report = uc_directed(fit, net);
  const double tss = stats(net).tss;
  const double g = fit.gammas[0];
  for (Eigen::Index k = 0; k < 15; ++k) {
    const double coupling = g * fit.x_out(k, 0) * fit.x_in(k, 0);
    CHECK(tss * report.uc_tot[k] ==
          doctest::Approx(tss * (report.uc_out[k] + report.uc_in[k]) +
                          coupling * coupling)
              .epsilon(1e-12));
  }
}

TEST_CASE("full-order directed fit reproduces the adjacency matrix") {
  const Network net = random_gnp(7, 0.4, 77, true);
  const auto fit = fit_multicomponent_directed(net, 7);
  CHECK((fit.estimated_matrix() - net.matrix()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(std::isinf(fit.quality.r2_adj));  // 2s = 14 exceeds n = 7
}

TEST_CASE("directed gradients vanish at the fit and match differences") {
  const Network net = florentine_as_directed();
  const double tss = stats(net).tss;
  std::vector<DirectedFit> fits = {fit_degree_directed(net), fit_hits(net),
                                   fit_multicomponent_directed(net, 2)};
  for (const auto& fit : fits)
    CHECK(ss_gradient(fit, net).cwiseAbs().maxCoeff() <= 1e-8 * tss);

  DirectedFit bent = fit_hits(net);
  bent.x_out(2, 0) += 0.04;
  bent.x_in(6, 0) -= 0.03;
  const auto grad = ss_gradient(bent, net);
  const double h = 1e-6;
  auto fd = [&](bool out_side, Eigen::Index k) {
    DirectedFit plus = bent, minus = bent;
    (out_side ? plus.x_out(k, 0) : plus.x_in(k, 0)) += h;
    (out_side ? minus.x_out(k, 0) : minus.x_in(k, 0)) -= h;
    return ((net.matrix() - plus.estimated_matrix()).squaredNorm() -
            (net.matrix() - minus.estimated_matrix()).squaredNorm()) /
           (2.0 * h);
  };
  for (Eigen::Index k : {0, 2, 6}) {
    const double fo = fd(true, k);
    const double fi = fd(false, k);
    CHECK(std::abs(grad[k] - fo) <= 1e-5 * std::max(1.0, std::abs(fo)));
    CHECK(std::abs(grad[15 + k] - fi) <= 1e-5 * std::max(1.0, std::abs(fi)));
  }
}

TEST_CASE("directed fits reject undirected networks and bad counts") {
  const Network unet = florentine_fixture();
  CHECK_THROWS_AS(fit_degree_directed(unet), config_error);
  CHECK_THROWS_AS(fit_hits(unet), config_error);
  CHECK_THROWS_AS(fit_multicomponent_directed(unet, 2), config_error);

  const Network net = single_edge();
  CHECK_THROWS_AS(fit_multicomponent_directed(net, 0), config_error);
  CHECK_THROWS_AS(fit_multicomponent_directed(net, 3), config_error);

  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
  const Network empty({"a", "b"}, z, true, false);
  CHECK_THROWS_AS(fit_degree_directed(empty), numeric_error);
  CHECK_THROWS_AS(fit_hits(empty), numeric_error);
}

TEST_CASE("directed csv layout") {
  const auto dir = testutil::make_temp_dir("dcsv");
  const Network net = single_edge();
  const auto fit = fit_hits(net);
  const auto report = uc_directed(fit, net);
  const auto path = dir / "directed.csv";
  write_directed_csv(fit, report, net, path.string());
  const auto text = testutil::read_file(path);
  CHECK(text.find("label,x_out,x_in,uc_out,uc_in,uc_tot,rank_tot") !=
        std::string::npos);
  CHECK(text.find("1,") != std::string::npos);
  CHECK(text.find(",1\n") != std::string::npos);
}
