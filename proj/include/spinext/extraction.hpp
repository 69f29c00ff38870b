// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinext/fock.hpp"

namespace spinext {

/// Orbitals (0-based, distinct) whose spin degrees of freedom are kept.
struct ExtractionSpec {
  std::vector<int> orbitals;

  /// Throws std::invalid_argument unless the list is a non-empty set of
  /// distinct in-range orbitals no larger than the particle count.
  void validate(int num_orbitals, int particles) const;
};

/// Reduced spin block over the chosen orbitals, conditioned on each being
/// singly occupied. matrix(s, s') = <v_{s'}|v_s> with
/// v_s = d_{o_1,s_1} ... d_{o_n,s_n} |Psi>; spin s_k of orbital o_k sits at
/// bit (n-1-k) of the row index, 0 meaning up. The matrix is unnormalized;
/// weight = trace = probability of the singly occupied pattern.
struct SpinDensityMatrix {
  int n = 0;
  Eigen::MatrixXcd matrix;
  double weight = 0.0;
};

SpinDensityMatrix nbrdm(const FockState& state, const ExtractionSpec& spec);

/// matrix / weight. Throws std::domain_error when the weight vanishes.
Eigen::MatrixXcd normalize_spin_state(const SpinDensityMatrix& sdm);

/// tr(rho^2) of the normalized matrix.
double purity(const SpinDensityMatrix& sdm);

/// Dominant eigenvector of the normalized matrix, which must be pure within
/// purity_tol (throws std::domain_error otherwise). The phase is fixed by
/// making the first component of maximal magnitude real positive.
Eigen::VectorXcd extract_pure(const SpinDensityMatrix& sdm,
                              double purity_tol = 1e-8);

/// Normalized n-qubit product of two-spin singlets, one per pair in
/// `pairing` (a partition of 0..n-1, pair order and orientation as given).
/// Built by expanding the fermionic pair creation operators so the signs
/// match states extracted from fermionic wavefunctions.
Eigen::VectorXcd pair_singlet_state(
    int n, const std::vector<std::pair<int, int>>& pairing);

}  // namespace spinext
