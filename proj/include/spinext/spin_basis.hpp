// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace spinext {

// Spin basis over n qubits: qubit q owns bit (n - 1 - q) of the basis index,
// so the first qubit is the most significant bit. Bit value 0 means up;
// index 0 is the all-up state.

inline int qubit_count(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim)
    throw std::invalid_argument("spin basis: dimension is not a power of two");
  return n;
}

inline int spin_bit(Eigen::Index index, int qubit, int n) {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1);
}

// (|ud> - |du>) / sqrt(2)
inline Eigen::VectorXcd two_qubit_singlet() {
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(4);
  s(1) = 1.0 / std::sqrt(2.0);
  s(2) = -1.0 / std::sqrt(2.0);
  return s;
}

}  // namespace spinext
