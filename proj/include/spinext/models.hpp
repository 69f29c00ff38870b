// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "spinext/fock.hpp"
#include "spinext/spin_ops.hpp"

namespace spinext {

/// Hopping amplitude t between sites i and j; the Hamiltonian term is
/// t * sum_s (d+_{i,s} d_{j,s} + d+_{j,s} d_{i,s}).
struct LatticeEdge {
  int i = 0;
  int j = 0;
  double t = 0.0;
};

/// v * n_i n_j with n the total site occupancy (0..2).
struct DensityCoupling {
  int i = 0;
  int j = 0;
  double v = 0.0;
};

enum class LatticeTopology { chain, ring, custom };

struct LatticeSpec {
  int sites = 0;
  std::vector<LatticeEdge> edges;
  double onsite_repulsion = 0.0;
  std::vector<DensityCoupling> density_density;
  LatticeTopology topology = LatticeTopology::custom;

  static LatticeSpec chain(int n, double t);
  /// Alternating-bond chain: bond 0-1 carries t_first, bond 1-2 t_second,
  /// and so on.
  static LatticeSpec chain(int n, double t_first, double t_second);
  static LatticeSpec ring(int n, double t);

  /// Throws std::invalid_argument on malformed input: out-of-range or
  /// duplicate edges, non-finite amplitudes, negative onsite repulsion, or a
  /// disconnected hopping graph.
  void validate() const;
};

/// Real symmetric single-particle matrix with the edge amplitudes.
Eigen::MatrixXd hopping_matrix(const LatticeSpec& lattice);

struct TightBindingResult {
  FockState state;
  OrbitalRotation orbitals;  // row i = i-th lowest single-particle level
  Eigen::VectorXd levels;
};

/// Closed-shell determinant of the n_electrons/2 lowest levels. Throws
/// std::domain_error when the Fermi level is degenerate (no unique closed
/// shell exists).
TightBindingResult tight_binding_determinant(const LatticeSpec& lattice,
                                             int n_electrons);

struct HubbardOptions {
  int two_sz = 0;        // twice the total Sz of the sector
  int dense_cap = 4096;  // largest sector solved by full diagonalization
  std::int64_t dimension_cap = 2'000'000;
};

struct ElectronicGroundState {
  double energy = 0.0;
  FockState state;
  bool degenerate = false;
  double residual = 0.0;
};

/// Ground state of  sum_edges t (d+_i d_j + h.c.) + U sum_i n_up n_dn
/// + sum v n_i n_j  in the fixed (n_up, n_dn) sector.
ElectronicGroundState hubbard_ground_state(const LatticeSpec& lattice,
                                           int n_electrons,
                                           const HubbardOptions& options = {});

/// Dense sector matrix of the same Hamiltonian (export helper, up to 4096
/// basis states).
Eigen::MatrixXd hubbard_matrix(const LatticeSpec& lattice, int n_electrons,
                               int two_sz = 0);

struct SpinSystemSpec {
  int count = 0;
  std::vector<SpinCoupling> couplings;

  static SpinSystemSpec ring(int n, double coupling);
  void validate() const;
};

struct SpinSolveOptions {
  int dense_cap = 4096;  // largest Sz sector solved densely
};

struct SpinGroundState {
  double energy = 0.0;
  Eigen::VectorXcd state;  // full 2^n vector
  bool degenerate = false;
  double residual = 0.0;
};

/// Ground state of sum J_ij S_i . S_j, scanning Sz sectors from the lowest
/// Sz upward. Ties keep the first sector scanned; inside a degenerate ground
/// space the representative is the normalized projection of the lowest basis
/// state, largest component made real positive.
SpinGroundState heisenberg_ground_state(const SpinSystemSpec& spec,
                                        const SpinSolveOptions& options = {});

/// Full 2^n matrix of the spin Hamiltonian (export helper, count <= 12).
Eigen::MatrixXd heisenberg_matrix(const SpinSystemSpec& spec);

}  // namespace spinext
