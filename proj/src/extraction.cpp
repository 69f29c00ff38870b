// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinext/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "spinext/spin_basis.hpp"

namespace spinext {

void ExtractionSpec::validate(int num_orbitals, int particles) const {
  if (orbitals.empty())
    throw std::invalid_argument("ExtractionSpec: no orbitals selected");
  std::set<int> seen;
  for (const int orb : orbitals) {
    if (orb < 0 || orb >= num_orbitals)
      throw std::invalid_argument("ExtractionSpec: orbital index out of range");
    if (!seen.insert(orb).second)
      throw std::invalid_argument("ExtractionSpec: duplicate orbital");
  }
  if (static_cast<int>(orbitals.size()) > particles)
    throw std::invalid_argument(
        "ExtractionSpec: more orbitals than particles");
}

SpinDensityMatrix nbrdm(const FockState& state, const ExtractionSpec& spec) {
  spec.validate(state.num_orbitals(), state.particles());
  const int n = static_cast<int>(spec.orbitals.size());
  const Eigen::Index dim = Eigen::Index{1} << n;

  // v_s: rightmost annihilator in the operator string acts first.
  std::vector<FockState> vs;
  vs.reserve(dim);
  for (Eigen::Index sigma = 0; sigma < dim; ++sigma) {
    FockState v = state;
    for (int idx = n - 1; idx >= 0; --idx) {
      const Spin s = spin_bit(sigma, idx, n) ? Spin::down : Spin::up;
      v = apply_annihilation(v, {spec.orbitals[idx], s});
    }
    vs.push_back(std::move(v));
  }

  Eigen::MatrixXcd gamma(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    gamma(a, a) = inner_product(vs[a], vs[a]).real();
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      gamma(a, b) = inner_product(vs[b], vs[a]);
      gamma(b, a) = std::conj(gamma(a, b));
    }
  }
  const double weight = gamma.trace().real();
  return {n, std::move(gamma), weight};
}

Eigen::MatrixXcd normalize_spin_state(const SpinDensityMatrix& sdm) {
  if (sdm.weight <= kPruneThreshold)
    throw std::domain_error(
        "normalize_spin_state: the singly occupied weight vanishes");
  return sdm.matrix / sdm.weight;
}

double purity(const SpinDensityMatrix& sdm) {
  const Eigen::MatrixXcd rho = normalize_spin_state(sdm);
  return (rho * rho).trace().real();
}

Eigen::VectorXcd extract_pure(const SpinDensityMatrix& sdm,
                              double purity_tol) {
  const Eigen::MatrixXcd rho = normalize_spin_state(sdm);
  const double p = (rho * rho).trace().real();
  if (p < 1.0 - purity_tol)
    throw std::domain_error("extract_pure: reduced spin state is mixed");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  Eigen::VectorXcd v = es.eigenvectors().col(rho.rows() - 1);
  const double mx = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= mx - 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

Eigen::VectorXcd pair_singlet_state(
    int n, const std::vector<std::pair<int, int>>& pairing) {
  if (n < 2 || n > 20 || n % 2 != 0)
    throw std::invalid_argument(
        "pair_singlet_state: need an even number of spins");
  std::set<int> covered;
  for (const auto& [a, b] : pairing) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
      throw std::invalid_argument("pair_singlet_state: bad pair");
    if (!covered.insert(a).second || !covered.insert(b).second)
      throw std::invalid_argument("pair_singlet_state: pairs overlap");
  }
  if (static_cast<int>(covered.size()) != n)
    throw std::invalid_argument(
        "pair_singlet_state: pairing must cover every spin");

  FockState st = FockState::vacuum(n);
  for (const auto& [a, b] : pairing) st = apply_singlet_creation(st, a, b);

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (const auto& [det, amp] : st.amplitudes()) {
    Eigen::Index index = 0;
    for (int q = 0; q < n; ++q)
      if (Determinant{det}.occupied(2 * q + 1))
        index |= Eigen::Index{1} << (n - 1 - q);
    v(index) = amp;
  }
  v.normalize();
  return v;
}

}  // namespace spinext
