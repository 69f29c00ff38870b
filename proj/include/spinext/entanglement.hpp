// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spinext {

/// One cut of n spins into part A (always holding spin 0) and its
/// complement.
struct Bipartition {
  int n = 0;
  std::vector<int> part_a;  // ascending, first element 0

  std::vector<int> part_b() const;
  std::uint64_t mask_a() const;  // bit i set when spin i is in A
  /// Smaller side with 1-based labels, e.g. "{1,2}".
  std::string label() const;
};

/// All 2^(n-1) - 1 cuts, ordered by |A| and then lexicographically by the
/// sorted index lists.
std::vector<Bipartition> enumerate_bipartitions(int n);

/// Reduced density matrix over `keep` (distinct qubits; element order
/// becomes the output qubit order).
Eigen::MatrixXcd partial_trace(const Eigen::VectorXcd& psi,
                               const std::vector<int>& keep);
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho,
                               const std::vector<int>& keep);

/// 1 - tr(rho^2); rho must have unit trace.
double linear_entropy(const Eigen::MatrixXcd& rho);

struct GmeResult {
  double concurrence = 0.0;
  std::vector<Bipartition> argmin;  // all cuts at the minimum within the tie tolerance
  std::vector<double> entropies;    // S_L per cut, aligned with enumerate_bipartitions
};

/// min over cuts of sqrt(2 S_L(A)) for a normalized pure state.
GmeResult gme_concurrence(const Eigen::VectorXcd& psi, double tie_tol = 1e-9);

/// Two-qubit mixed state concurrence (spin-flip construction).
double wootters_concurrence(const Eigen::MatrixXcd& rho);

struct WernerDecomposition {
  double p = 0.0;        // weight of the singlet projector
  double residual = 0.0; // Frobenius distance to the exact Werner form
};

/// Fit rho ~ p |S><S| + (1-p) I/4 by the singlet overlap.
WernerDecomposition werner_decompose(const Eigen::MatrixXcd& rho);

struct WernerPoint {
  double linear_entropy = 0.0;
  double concurrence = 0.0;
};

/// Closed forms on the Werner family, p in [-1/3, 1]:
/// S_L = 1 - (1 + 3 p^2)/4 and C = max(0, (3p - 1)/2).
WernerPoint werner_formulas(double p);

struct EntanglementReport {
  int n = 0;
  std::optional<GmeResult> gme;
  std::map<std::pair<int, int>, double> pair_concurrences;
  std::map<std::pair<int, int>, double> pair_linear_entropies;
  std::map<std::pair<int, int>, double> werner_p;
  std::map<std::pair<int, int>, double> werner_residuals;
};

/// Convenience rollup over a pure n-spin state.
EntanglementReport analyze_spin_state(const Eigen::VectorXcd& psi,
                                      bool with_gme, bool with_pairs,
                                      bool with_werner);

/// Pair measures on a possibly mixed n-spin density matrix; GME is left
/// unset since it is defined here for pure states only.
EntanglementReport analyze_spin_density(const Eigen::MatrixXcd& rho,
                                        bool with_pairs, bool with_werner);

}  // namespace spinext
