// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace spinext {

/// One exchange term J * S_i . S_j between two spins.
struct SpinCoupling {
  int i = 0;
  int j = 0;
  double coupling = 1.0;
};

/// (sum_c J_c S_i . S_j) |v> on a 2^n spin vector.
Eigen::VectorXcd apply_heisenberg(const std::vector<SpinCoupling>& couplings,
                                  const Eigen::VectorXcd& v);

/// S^2 |v> with S^2 = (3n/4) I + 2 sum_{i<j} S_i . S_j.
Eigen::VectorXcd apply_spin_squared(const Eigen::VectorXcd& v);

/// <v|S^2|v> / <v|v>.
double spin_squared_expectation(const Eigen::VectorXcd& v);

}  // namespace spinext
