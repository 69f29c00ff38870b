// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinext/spin_ops.hpp"

#include <complex>
#include <stdexcept>

#include "spinext/spin_basis.hpp"

namespace spinext {

Eigen::VectorXcd apply_heisenberg(const std::vector<SpinCoupling>& couplings,
                                  const Eigen::VectorXcd& v) {
  const int n = qubit_count(v.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (const SpinCoupling& c : couplings) {
    if (c.i < 0 || c.i >= n || c.j < 0 || c.j >= n || c.i == c.j)
      throw std::invalid_argument("apply_heisenberg: bad coupling indices");
    const Eigen::Index bi = Eigen::Index{1} << (n - 1 - c.i);
    const Eigen::Index bj = Eigen::Index{1} << (n - 1 - c.j);
    for (Eigen::Index b = 0; b < v.size(); ++b) {
      const std::complex<double> amp = v(b);
      if (amp == std::complex<double>(0.0)) continue;
      const bool si = (b & bi) != 0;
      const bool sj = (b & bj) != 0;
      if (si == sj) {
        out(b) += 0.25 * c.coupling * amp;
      } else {
        out(b) -= 0.25 * c.coupling * amp;
        out(b ^ bi ^ bj) += 0.5 * c.coupling * amp;
      }
    }
  }
  return out;
}

Eigen::VectorXcd apply_spin_squared(const Eigen::VectorXcd& v) {
  const int n = qubit_count(v.size());
  std::vector<SpinCoupling> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j, 2.0});
  Eigen::VectorXcd out = apply_heisenberg(pairs, v);
  out += (0.75 * n) * v;
  return out;
}

double spin_squared_expectation(const Eigen::VectorXcd& v) {
  const double nrm2 = v.squaredNorm();
  if (nrm2 <= 0.0)
    throw std::domain_error("spin_squared_expectation: zero vector");
  return v.dot(apply_spin_squared(v)).real() / nrm2;
}

}  // namespace spinext
