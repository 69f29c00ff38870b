// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "spinext/fock.hpp"
#include "spinext/models.hpp"
#include "spinext/spin_basis.hpp"
#include "spinext/spin_ops.hpp"

using namespace spinext;

TEST_CASE("lattice validation rejects malformed input") {
  LatticeSpec bad = LatticeSpec::chain(4, -1.0);
  bad.edges.push_back({0, 1, -1.0});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  LatticeSpec disconnected;
  disconnected.sites = 4;
  disconnected.edges = {{0, 1, -1.0}, {2, 3, -1.0}};
  CHECK_THROWS_AS(disconnected.validate(), std::invalid_argument);

  LatticeSpec loop;
  loop.sites = 2;
  loop.edges = {{0, 0, -1.0}};
  CHECK_THROWS_AS(loop.validate(), std::invalid_argument);

  LatticeSpec negative_u = LatticeSpec::chain(2, -1.0);
  negative_u.onsite_repulsion = -1.0;
  CHECK_THROWS_AS(negative_u.validate(), std::invalid_argument);

  CHECK_NOTHROW(LatticeSpec::ring(6, -1.0).validate());
  CHECK_THROWS_AS(LatticeSpec::ring(2, -1.0), std::invalid_argument);
}

TEST_CASE("alternating chain assigns bond strengths in order") {
  const LatticeSpec ssh = LatticeSpec::chain(6, -2.0, -1.0);
  REQUIRE(ssh.edges.size() == 5);
  CHECK(ssh.edges[0].t == -2.0);
  CHECK(ssh.edges[1].t == -1.0);
  CHECK(ssh.edges[2].t == -2.0);
  CHECK(ssh.edges[3].t == -1.0);
  CHECK(ssh.edges[4].t == -2.0);
}

TEST_CASE("hopping matrix is symmetric with edge amplitudes") {
  const Eigen::MatrixXd h = hopping_matrix(LatticeSpec::ring(4, -1.5));
  CHECK(h(0, 1) == -1.5);
  CHECK(h(1, 0) == -1.5);
  CHECK(h(3, 0) == -1.5);
  CHECK(h(0, 2) == 0.0);
  CHECK((h - h.transpose()).norm() == 0.0);
}

TEST_CASE("two site determinant matches the explicit expansion") {
  const TightBindingResult r =
      tight_binding_determinant(LatticeSpec::chain(2, -1.0), 2);
  CHECK(r.levels(0) == doctest::Approx(-1.0));
  CHECK(r.levels(1) == doctest::Approx(1.0));
  CHECK(std::abs(r.state.amplitude(Determinant{0b0011}) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(r.state.amplitude(Determinant{0b1001}) - cplx(0.5)) < 1e-12);
  CHECK(std::abs(r.state.amplitude(Determinant{0b0110}) - cplx(-0.5)) < 1e-12);
  CHECK(std::abs(r.state.amplitude(Determinant{0b1100}) - cplx(0.5)) < 1e-12);
}

TEST_CASE("six ring single particle spectrum") {
  const TightBindingResult r =
      tight_binding_determinant(LatticeSpec::ring(6, -1.0), 6);
  const double expected[6] = {-2.0, -1.0, -1.0, 1.0, 1.0, 2.0};
  for (int i = 0; i < 6; ++i)
    CHECK(r.levels(i) == doctest::Approx(expected[i]).epsilon(1e-10));
  CHECK(r.state.norm() == doctest::Approx(1.0));
}

TEST_CASE("degenerate fermi level is rejected") {
  CHECK_THROWS_AS(tight_binding_determinant(LatticeSpec::ring(4, -1.0), 4),
                  std::domain_error);
  CHECK_NOTHROW(tight_binding_determinant(LatticeSpec::ring(4, -1.0), 2));
}

TEST_CASE("full and empty shells are single determinants") {
  const TightBindingResult empty =
      tight_binding_determinant(LatticeSpec::chain(3, -1.0), 0);
  CHECK(empty.state.particles() == 0);
  CHECK(empty.state.term_count() == 1);

  const TightBindingResult full =
      tight_binding_determinant(LatticeSpec::chain(2, -1.0), 4);
  CHECK(full.state.term_count() == 1);
  CHECK(std::abs(std::abs(full.state.amplitude(Determinant{0b1111})) - 1.0) <
        1e-12);
}

TEST_CASE("hubbard dimer has the analytic ground energy") {
  LatticeSpec dimer = LatticeSpec::chain(2, -1.0);
  dimer.onsite_repulsion = 8.0;
  const ElectronicGroundState g = hubbard_ground_state(dimer, 2);
  CHECK(g.energy == doctest::Approx((8.0 - std::sqrt(80.0)) / 2.0)
                        .epsilon(1e-12));
  CHECK(!g.degenerate);
  CHECK(g.residual <= 1e-9 * 24.0);
  CHECK(g.state.norm() == doctest::Approx(1.0));
}

TEST_CASE("hubbard at zero interaction reproduces the free determinant") {
  const LatticeSpec chain = LatticeSpec::chain(4, -1.0);
  const ElectronicGroundState g = hubbard_ground_state(chain, 4);
  const TightBindingResult tb = tight_binding_determinant(chain, 4);
  CHECK(fidelity(g.state, tb.state) == doctest::Approx(1.0).epsilon(1e-9));
  // Free energy: twice the sum of the two lowest levels.
  CHECK(g.energy ==
        doctest::Approx(2.0 * (tb.levels(0) + tb.levels(1))).epsilon(1e-10));
}

TEST_CASE("hubbard marks free degenerate ground spaces") {
  const ElectronicGroundState g =
      hubbard_ground_state(LatticeSpec::ring(4, -1.0), 4);
  CHECK(g.energy == doctest::Approx(-4.0).epsilon(1e-10));
  CHECK(g.degenerate);

  // And the run is deterministic.
  const ElectronicGroundState h =
      hubbard_ground_state(LatticeSpec::ring(4, -1.0), 4);
  CHECK(fidelity(g.state, h.state) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lanczos and dense solvers agree") {
  LatticeSpec ring = LatticeSpec::ring(6, -1.0);
  ring.onsite_repulsion = 4.0;
  HubbardOptions dense_opts;
  HubbardOptions lanczos_opts;
  lanczos_opts.dense_cap = 1;  // force the iterative path (dimension 400)
  const ElectronicGroundState a = hubbard_ground_state(ring, 6, dense_opts);
  const ElectronicGroundState b = hubbard_ground_state(ring, 6, lanczos_opts);
  CHECK(std::abs(a.energy - b.energy) < 1e-9);
  CHECK(fidelity(a.state, b.state) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("lanczos handles density couplings like the dense path") {
  LatticeSpec spec = LatticeSpec::chain(2, -1.0);
  spec.density_density = {{0, 1, 3.0}};
  HubbardOptions lanczos_opts;
  lanczos_opts.dense_cap = 1;
  const ElectronicGroundState a = hubbard_ground_state(spec, 2);
  const ElectronicGroundState b = hubbard_ground_state(spec, 2, lanczos_opts);
  CHECK(std::abs(a.energy - b.energy) < 1e-9);
  CHECK(fidelity(a.state, b.state) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("hubbard sector plumbing") {
  const LatticeSpec chain = LatticeSpec::chain(2, -1.0);
  HubbardOptions odd;
  odd.two_sz = 1;
  CHECK_THROWS_AS(hubbard_ground_state(chain, 2, odd), std::invalid_argument);

  HubbardOptions polarized;
  polarized.two_sz = 2;
  const ElectronicGroundState g = hubbard_ground_state(chain, 2, polarized);
  CHECK(g.energy == doctest::Approx(0.0).epsilon(1e-12));  // Pauli blocked

  HubbardOptions overfull;
  overfull.two_sz = 6;
  CHECK_THROWS_AS(hubbard_ground_state(chain, 2, overfull),
                  std::invalid_argument);

  HubbardOptions capped;
  capped.dimension_cap = 3;
  CHECK_THROWS_AS(hubbard_ground_state(chain, 2, capped), std::domain_error);
}

TEST_CASE("hubbard scaling covariance") {
  LatticeSpec a = LatticeSpec::chain(2, -1.0);
  a.onsite_repulsion = 8.0;
  LatticeSpec b = LatticeSpec::chain(2, -2.0);
  b.onsite_repulsion = 16.0;
  const ElectronicGroundState ga = hubbard_ground_state(a, 2);
  const ElectronicGroundState gb = hubbard_ground_state(b, 2);
  CHECK(gb.energy == doctest::Approx(2.0 * ga.energy).epsilon(1e-10));
  CHECK(fidelity(ga.state, gb.state) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spin system validation") {
  CHECK_THROWS_AS(SpinSystemSpec::ring(2, 1.0), std::invalid_argument);
  SpinSystemSpec bad = SpinSystemSpec::ring(4, 1.0);
  bad.couplings.push_back({0, 1, 1.0});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  SpinSystemSpec ferro = SpinSystemSpec::ring(4, 1.0);
  ferro.couplings[0].coupling = -1.0;
  CHECK_THROWS_AS(ferro.validate(), std::invalid_argument);
  SpinSystemSpec big;
  big.count = 17;
  big.couplings = {{0, 1, 1.0}};
  CHECK_THROWS_AS(big.validate(), std::invalid_argument);
}

TEST_CASE("two coupled spins form a singlet") {
  SpinSystemSpec pair;
  pair.count = 2;
  pair.couplings = {{0, 1, 1.0}};
  const SpinGroundState g = heisenberg_ground_state(pair);
  CHECK(g.energy == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(!g.degenerate);
  const Eigen::VectorXcd singlet = two_qubit_singlet();
  CHECK((g.state - singlet).norm() < 1e-10);
}

TEST_CASE("four spin ring ground state") {
  const SpinGroundState g = heisenberg_ground_state(SpinSystemSpec::ring(4, 1.0));
  CHECK(g.energy == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(!g.degenerate);
  CHECK(g.residual <= 1e-9 * 4.0);
  CHECK(spin_squared_expectation(g.state) == doctest::Approx(0.0).epsilon(1e-9));
  // Every nearest-neighbour bond carries <S_i . S_j> = -1/2.
  for (int i = 0; i < 4; ++i) {
    const std::vector<SpinCoupling> bond = {{i, (i + 1) % 4, 1.0}};
    const double value =
        g.state.dot(apply_heisenberg(bond, g.state)).real();
    CHECK(value == doctest::Approx(-0.5).epsilon(1e-10));
  }
  // Diagonal pairs carry +1/4.
  for (int i = 0; i < 2; ++i) {
    const std::vector<SpinCoupling> bond = {{i, i + 2, 1.0}};
    const double value =
        g.state.dot(apply_heisenberg(bond, g.state)).real();
    CHECK(value == doctest::Approx(0.25).epsilon(1e-10));
  }
}

TEST_CASE("heisenberg scaling covariance") {
  const SpinGroundState a = heisenberg_ground_state(SpinSystemSpec::ring(4, 1.0));
  const SpinGroundState b = heisenberg_ground_state(SpinSystemSpec::ring(4, 2.5));
  CHECK(b.energy == doctest::Approx(2.5 * a.energy).epsilon(1e-12));
  CHECK((a.state - b.state).norm() < 1e-10);
}

TEST_CASE("degenerate triangle is flagged and deterministic") {
  const SpinSystemSpec tri = SpinSystemSpec::ring(3, 1.0);
  const SpinGroundState a = heisenberg_ground_state(tri);
  const SpinGroundState b = heisenberg_ground_state(tri);
  CHECK(a.energy == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(a.degenerate);
  CHECK((a.state - b.state).norm() == 0.0);
  CHECK(a.state.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // The representative lives in the lowest Sz sector scanned first: two downs.
  for (Eigen::Index i = 0; i < a.state.size(); ++i)
    if (std::abs(a.state(i)) > 1e-12)
      CHECK(std::popcount(static_cast<std::uint64_t>(i)) == 2);
}

TEST_CASE("sector scan agrees with the dense spin matrix") {
  const SpinSystemSpec ring = SpinSystemSpec::ring(5, 1.3);
  const SpinGroundState g = heisenberg_ground_state(ring);
  const Eigen::MatrixXd h = heisenberg_matrix(ring);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  CHECK(g.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));

  SpinSolveOptions lanczos_opts;
  lanczos_opts.dense_cap = 1;
  const SpinGroundState l = heisenberg_ground_state(ring, lanczos_opts);
  CHECK(l.energy == doctest::Approx(g.energy).epsilon(1e-10));
}

TEST_CASE("dense spin matrix matches the operator application") {
  const SpinSystemSpec ring = SpinSystemSpec::ring(4, 0.7);
  const Eigen::MatrixXd h = heisenberg_matrix(ring);
  Eigen::VectorXcd v(16);
  for (int i = 0; i < 16; ++i) v(i) = cplx(std::sin(i + 1.0), std::cos(2.0 * i));
  const Eigen::VectorXcd via_matrix = h.cast<cplx>() * v;
  const Eigen::VectorXcd via_ops = apply_heisenberg(ring.couplings, v);
  CHECK((via_matrix - via_ops).norm() < 1e-12);

  SpinSystemSpec big;
  big.count = 13;
  big.couplings = {{0, 1, 1.0}};
  CHECK_THROWS_AS(heisenberg_matrix(big), std::invalid_argument);
}

TEST_CASE("spin squared distinguishes singlet and triplet") {
  CHECK(spin_squared_expectation(two_qubit_singlet()) ==
        doctest::Approx(0.0).epsilon(1e-12));
  Eigen::VectorXcd triplet = Eigen::VectorXcd::Zero(4);
  triplet(0) = 1.0;  // both up
  CHECK(spin_squared_expectation(triplet) == doctest::Approx(2.0).epsilon(1e-12));
  Eigen::VectorXcd mixed = Eigen::VectorXcd::Zero(4);
  mixed(1) = 1.0;
  mixed(2) = 1.0;  // symmetric combination, Sz = 0 triplet
  CHECK(spin_squared_expectation(mixed) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dense sector matrix matches the solver") {
  const LatticeSpec chain = LatticeSpec::chain(4, -1.0);
  LatticeSpec hub = chain;
  hub.onsite_repulsion = 4.0;
  const Eigen::MatrixXd h = hubbard_matrix(hub, 4);
  REQUIRE(h.rows() == 36);  // C(4,2)^2
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const auto ground = hubbard_ground_state(hub, 4);
  CHECK(es.eigenvalues()(0) == doctest::Approx(ground.energy).epsilon(1e-12));

  const LatticeSpec wide = LatticeSpec::chain(8, -1.0);
  CHECK_THROWS_AS(hubbard_matrix(wide, 8), std::invalid_argument);
}
