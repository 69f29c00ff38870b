// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only brute-force reference: explicit creation matrices on the full
// 4^M Fock space. Everything here is computed by dense operator algebra so
// the sparse library paths can be checked against an independent method.

#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spinext/fock.hpp"

namespace spinext::testing {

class DenseFock {
 public:
  explicit DenseFock(int num_orbitals) : m_(num_orbitals) {
    if (m_ < 0 || m_ > 5)
      throw std::invalid_argument("DenseFock: orbital count too large");
    const int d = dim();
    create_.resize(2 * m_);
    for (int c = 0; c < 2 * m_; ++c) {
      Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(d, d);
      for (int b = 0; b < d; ++b) {
        if ((b >> c) & 1) continue;
        const int below = std::popcount(static_cast<unsigned>(b) & ((1u << c) - 1));
        mat(b | (1 << c), b) = (below & 1) ? -1.0 : 1.0;
      }
      create_[c] = std::move(mat);
    }
  }

  int num_orbitals() const { return m_; }
  int dim() const { return 1 << (2 * m_); }

  const Eigen::MatrixXcd& create(int canonical) const { return create_[canonical]; }
  Eigen::MatrixXcd annihilate(int canonical) const {
    return create_[canonical].adjoint();
  }

  Eigen::VectorXcd to_vector(const FockState& state) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim());
    for (const auto& [bits, amp] : state.amplitudes())
      v(static_cast<int>(bits)) = amp;
    return v;
  }

  // Reference for rotate_orbitals: build each rotated creation operator as a
  // dense matrix and apply the operator product determinant by determinant.
  Eigen::VectorXcd rotate(const FockState& state, const Eigen::MatrixXcd& u) const {
    const int d = dim();
    std::vector<Eigen::MatrixXcd> rotated(2 * m_);
    for (int i = 0; i < m_; ++i)
      for (int s = 0; s < 2; ++s) {
        Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(d, d);
        for (int j = 0; j < m_; ++j) mat += u(i, j) * create_[2 * j + s];
        rotated[2 * i + s] = std::move(mat);
      }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
    for (const auto& [bits, amp] : state.amplitudes()) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
      v(0) = 1.0;
      for (int c = 2 * m_ - 1; c >= 0; --c)
        if ((bits >> c) & 1) v = rotated[c] * v;
      out += amp * v;
    }
    return out;
  }

  // Reference for the n-orbital spin density matrix: annihilator strings as
  // dense matrix products, Gram matrix of the resulting vectors.
  Eigen::MatrixXcd spin_density(const FockState& state,
                                const std::vector<int>& orbitals) const {
    const int n = static_cast<int>(orbitals.size());
    const int rho_dim = 1 << n;
    const Eigen::VectorXcd psi = to_vector(state);
    std::vector<Eigen::VectorXcd> vs(rho_dim);
    for (int sigma = 0; sigma < rho_dim; ++sigma) {
      Eigen::VectorXcd v = psi;
      for (int idx = n - 1; idx >= 0; --idx) {
        const int spin = (sigma >> (n - 1 - idx)) & 1;
        v = create_[2 * orbitals[idx] + spin].adjoint() * v;
      }
      vs[sigma] = std::move(v);
    }
    Eigen::MatrixXcd gamma(rho_dim, rho_dim);
    for (int a = 0; a < rho_dim; ++a)
      for (int b = 0; b < rho_dim; ++b) gamma(a, b) = vs[b].dot(vs[a]);
    return gamma;
  }

 private:
  int m_;
  std::vector<Eigen::MatrixXcd> create_;
};

inline Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return Eigen::MatrixXcd(qr.householderQ());
}

inline FockState random_state(int num_orbitals, int particles,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FockState::AmplitudeMap amps;
  const std::uint64_t full = std::uint64_t{1} << (2 * num_orbitals);
  for (std::uint64_t bits = 0; bits < full; ++bits)
    if (std::popcount(bits) == particles)
      amps[bits] = cplx(normal(rng), normal(rng));
  return FockState(num_orbitals, particles, std::move(amps), 0.0).normalized();
}

}  // namespace spinext::testing
