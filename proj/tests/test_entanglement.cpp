// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "spinext/entanglement.hpp"
#include "spinext/models.hpp"
#include "spinext/spin_basis.hpp"

using namespace spinext;

namespace {

Eigen::VectorXcd random_pure_state(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXcd psi(1 << n);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    psi(i) = cplx(dist(rng), dist(rng));
  }
  psi.normalize();
  return psi;
}

Eigen::VectorXcd ghz_state(int n) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(1 << n);
  const double r = 1.0 / std::sqrt(2.0);
  psi(0) = r;
  psi((1 << n) - 1) = r;
  return psi;
}

Eigen::MatrixXcd werner_state(double p) {
  const Eigen::VectorXcd s = two_qubit_singlet();
  Eigen::MatrixXcd rho = p * (s * s.adjoint());
  rho += ((1.0 - p) / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
  return rho;
}

}  // namespace

TEST_CASE("bipartition enumeration for four spins") {
  const auto cuts = enumerate_bipartitions(4);
  REQUIRE(cuts.size() == 7);
  const std::vector<std::vector<int>> expected = {
      {0}, {0, 1}, {0, 2}, {0, 3}, {0, 1, 2}, {0, 1, 3}, {0, 2, 3}};
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(cuts[i].part_a == expected[i]);
    CHECK(cuts[i].n == 4);
  }
  CHECK(enumerate_bipartitions(2).size() == 1);
  CHECK(enumerate_bipartitions(8).size() == 127);
  CHECK_THROWS_AS(enumerate_bipartitions(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_bipartitions(21), std::invalid_argument);
}

TEST_CASE("bipartition order is by size then lexicographic") {
  // {0,1,6} sorts before {0,2,3} even though its mask is larger.
  const auto cuts = enumerate_bipartitions(8);
  int at_016 = -1;
  int at_023 = -1;
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i].part_a == std::vector<int>{0, 1, 6}) at_016 = int(i);
    if (cuts[i].part_a == std::vector<int>{0, 2, 3}) at_023 = int(i);
  }
  REQUIRE(at_016 >= 0);
  REQUIRE(at_023 >= 0);
  CHECK(at_016 < at_023);
  for (size_t i = 1; i < cuts.size(); ++i) {
    const bool size_ok = cuts[i - 1].part_a.size() < cuts[i].part_a.size() ||
                         (cuts[i - 1].part_a.size() == cuts[i].part_a.size() &&
                          cuts[i - 1].part_a < cuts[i].part_a);
    CHECK(size_ok);
  }
}

TEST_CASE("bipartition labels and masks") {
  Bipartition nn{4, {0, 1}};
  CHECK(nn.mask_a() == 0b0011);
  CHECK(nn.part_b() == std::vector<int>{2, 3});
  CHECK(nn.label() == "{1,2}");  // tie goes to A

  Bipartition diag{4, {0, 3}};
  CHECK(diag.mask_a() == 0b1001);
  CHECK(diag.label() == "{1,4}");

  Bipartition big{4, {0, 2, 3}};
  CHECK(big.part_b() == std::vector<int>{1});
  CHECK(big.label() == "{2}");  // complement is smaller

  Bipartition single{6, {0}};
  CHECK(single.label() == "{1}");
}

TEST_CASE("partial trace agrees between vector and matrix paths") {
  const auto psi = random_pure_state(5, 17u);
  const Eigen::MatrixXcd rho_full = psi * psi.adjoint();
  for (const std::vector<int>& keep :
       {std::vector<int>{0}, {1, 3}, {4, 0}, {0, 2, 4}}) {
    const Eigen::MatrixXcd a = partial_trace(psi, keep);
    const Eigen::MatrixXcd b = partial_trace(rho_full, keep);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(a.trace().real() - 1.0) < 1e-12);
    CHECK((a - a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial trace respects the keep order") {
  const auto psi = random_pure_state(4, 23u);
  const Eigen::MatrixXcd fwd = partial_trace(psi, {1, 3});
  const Eigen::MatrixXcd rev = partial_trace(psi, {3, 1});
  // Swapping the two kept qubits permutes basis index ab -> ba.
  auto swapped = [](int idx) { return ((idx & 1) << 1) | (idx >> 1); };
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(std::abs(fwd(r, c) - rev(swapped(r), swapped(c))) < 1e-13);
    }
  }
}

TEST_CASE("partial trace input validation") {
  const auto psi = random_pure_state(3, 3u);
  CHECK_THROWS_AS(partial_trace(psi, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(psi, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(psi, {3}), std::invalid_argument);
  Eigen::VectorXcd bad(3);
  bad.setZero();
  CHECK_THROWS_AS(partial_trace(bad, {0}), std::invalid_argument);
}

TEST_CASE("linear entropy basics") {
  const auto psi = random_pure_state(3, 5u);
  const Eigen::MatrixXcd pure = psi * psi.adjoint();
  CHECK(linear_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
  const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  CHECK(linear_entropy(mixed) == doctest::Approx(0.75));
  Eigen::MatrixXcd off = Eigen::MatrixXcd::Identity(4, 4);
  CHECK_THROWS_AS(linear_entropy(off), std::invalid_argument);
}

TEST_CASE("subsystem entropies match across complementary cuts") {
  const auto psi = random_pure_state(6, 91u);
  const auto cuts = enumerate_bipartitions(6);
  const auto gme = gme_concurrence(psi);
  REQUIRE(gme.entropies.size() == cuts.size());
  for (size_t i = 0; i < cuts.size(); ++i) {
    const double sa = linear_entropy(partial_trace(psi, cuts[i].part_a));
    const double sb = linear_entropy(partial_trace(psi, cuts[i].part_b()));
    CHECK(std::abs(sa - sb) < 1e-12);
    CHECK(std::abs(gme.entropies[i] - sa) < 1e-12);
  }
}

TEST_CASE("ghz states are maximally multipartite entangled") {
  for (int n = 3; n <= 8; ++n) {
    const auto res = gme_concurrence(ghz_state(n));
    CHECK(res.concurrence == doctest::Approx(1.0).epsilon(1e-12));
    // Every cut sits at S_L = 1/2, so all of them tie for the minimum.
    CHECK(res.argmin.size() == size_t((1 << (n - 1)) - 1));
    for (double s : res.entropies) {
      CHECK(s == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("product states carry no multipartite entanglement") {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
  psi(0b0110) = 1.0;
  const auto res = gme_concurrence(psi);
  CHECK(res.concurrence == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("four-spin ring ground state") {
  const auto ground = heisenberg_ground_state(SpinSystemSpec::ring(4, 1.0));
  REQUIRE_FALSE(ground.degenerate);
  const auto res = gme_concurrence(ground.state);
  CHECK(res.concurrence == doctest::Approx(0.9128709291752768).epsilon(1e-10));
  CHECK(res.concurrence == doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-12));
  REQUIRE(res.argmin.size() == 2);
  CHECK(res.argmin[0].part_a == std::vector<int>{0, 1});
  CHECK(res.argmin[1].part_a == std::vector<int>{0, 3});
  CHECK(res.argmin[0].label() == "{1,2}");
  CHECK(res.argmin[1].label() == "{1,4}");
  // Cut entropies: single spins 1/2, adjacent pairs 5/12, diagonal 2/3.
  const auto cuts = enumerate_bipartitions(4);
  for (size_t i = 0; i < cuts.size(); ++i) {
    double want = 0.5;
    if (cuts[i].part_a.size() == 2) {
      want = (cuts[i].part_a == std::vector<int>{0, 2}) ? 2.0 / 3.0 : 5.0 / 12.0;
    }
    CHECK(res.entropies[i] == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("gme input validation") {
  Eigen::VectorXcd unnormalized = Eigen::VectorXcd::Zero(8);
  unnormalized(0) = 0.5;
  CHECK_THROWS_AS(gme_concurrence(unnormalized), std::invalid_argument);
  Eigen::VectorXcd bad_dim(6);
  bad_dim.setZero();
  bad_dim(0) = 1.0;
  CHECK_THROWS_AS(gme_concurrence(bad_dim), std::invalid_argument);
  Eigen::VectorXcd one_spin(2);
  one_spin.setZero();
  one_spin(0) = 1.0;
  CHECK_THROWS_AS(gme_concurrence(one_spin), std::invalid_argument);
}

TEST_CASE("wootters concurrence reference points") {
  const Eigen::VectorXcd s = two_qubit_singlet();
  const Eigen::MatrixXcd singlet = s * s.adjoint();
  CHECK(wootters_concurrence(singlet) == doctest::Approx(1.0).epsilon(1e-12));

  const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  CHECK(wootters_concurrence(mixed) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(wootters_concurrence(werner_state(2.0 / 3.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // Below p = 1/3 the family is separable.
  CHECK(wootters_concurrence(werner_state(0.2)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(4);
  prod(0) = 1.0;
  CHECK(wootters_concurrence(prod * prod.adjoint()) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(wootters_concurrence(Eigen::MatrixXcd::Identity(3, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(wootters_concurrence(Eigen::MatrixXcd::Identity(4, 4)),
                  std::invalid_argument);
}

TEST_CASE("werner decomposition recovers exact members") {
  for (double p : {-1.0 / 3.0, 0.0, 0.2, 1.0 / 3.0, 2.0 / 3.0, 0.95, 1.0}) {
    const auto dec = werner_decompose(werner_state(p));
    CHECK(dec.p == doctest::Approx(p).epsilon(1e-12));
    CHECK(dec.residual < 1e-12);
  }
  // A product state overlaps the singlet not at all: p pins at -1/3 and the
  // residual reports how far from the family it is.
  Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(4);
  prod(0) = 1.0;
  const auto dec = werner_decompose(prod * prod.adjoint());
  CHECK(dec.p == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(dec.residual > 0.1);
}

TEST_CASE("werner closed forms agree with the direct measures") {
  for (double p : {-1.0 / 3.0, -0.1, 0.0, 0.3, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}) {
    const auto point = werner_formulas(p);
    const Eigen::MatrixXcd rho = werner_state(p);
    CHECK(std::abs(point.linear_entropy - linear_entropy(rho)) < 1e-12);
    CHECK(std::abs(point.concurrence - wootters_concurrence(rho)) < 1e-12);
  }
  CHECK_THROWS_AS(werner_formulas(1.0 + 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(werner_formulas(-0.34), std::invalid_argument);
}

TEST_CASE("four-spin ring pair structure") {
  const auto ground = heisenberg_ground_state(SpinSystemSpec::ring(4, 1.0));
  const auto report = analyze_spin_state(ground.state, true, true, true);
  CHECK(report.n == 4);
  REQUIRE(report.gme.has_value());
  CHECK(report.gme->concurrence == doctest::Approx(0.9128709291752768).epsilon(1e-10));
  REQUIRE(report.pair_concurrences.size() == 6);

  // Nearest neighbours sit at the Werner point p = 2/3, diagonals at -1/3.
  const std::pair<int, int> nn{0, 1};
  const std::pair<int, int> diag{0, 2};
  CHECK(report.pair_concurrences.at(nn) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(report.pair_concurrences.at(diag) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(report.werner_p.at(nn) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(report.werner_p.at(diag) == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
  CHECK(report.werner_residuals.at(nn) < 1e-10);
  CHECK(report.werner_residuals.at(diag) < 1e-10);
  CHECK(report.pair_linear_entropies.at(nn) == doctest::Approx(5.0 / 12.0).epsilon(1e-10));
  CHECK(report.pair_linear_entropies.at(diag) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  // Translation symmetry of the ring.
  CHECK(report.pair_concurrences.at({1, 2}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(report.pair_concurrences.at({2, 3}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(report.pair_concurrences.at({1, 3}) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("analysis honours the measure switches") {
  const auto psi = ghz_state(3);
  const auto gme_only = analyze_spin_state(psi, true, false, false);
  CHECK(gme_only.gme.has_value());
  CHECK(gme_only.pair_concurrences.empty());
  CHECK(gme_only.werner_p.empty());

  const auto pairs_only = analyze_spin_state(psi, false, true, false);
  CHECK_FALSE(pairs_only.gme.has_value());
  CHECK(pairs_only.pair_concurrences.size() == 3);
  CHECK(pairs_only.werner_p.empty());
  // GHZ pair marginals are classically correlated but unentangled.
  for (const auto& [pair, c] : pairs_only.pair_concurrences) {
    CHECK(c == doctest::Approx(0.0).epsilon(1e-12));
  }
}
