// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinext/entanglement.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "spinext/spin_basis.hpp"

namespace spinext {

namespace {

// Sub-index over a qubit list -> full basis index. Element idx of the list
// owns bit (size-1-idx) of the sub-index.
Eigen::Index compose(const std::vector<int>& qubits, Eigen::Index sub,
                     int n) {
  Eigen::Index full = 0;
  const int k = static_cast<int>(qubits.size());
  for (int idx = 0; idx < k; ++idx)
    if ((sub >> (k - 1 - idx)) & 1)
      full |= Eigen::Index{1} << (n - 1 - qubits[idx]);
  return full;
}

void check_keep(const std::vector<int>& keep, int n) {
  if (keep.empty())
    throw std::invalid_argument("partial_trace: no qubits kept");
  std::set<int> seen;
  for (const int q : keep) {
    if (q < 0 || q >= n)
      throw std::invalid_argument("partial_trace: qubit index out of range");
    if (!seen.insert(q).second)
      throw std::invalid_argument("partial_trace: duplicate qubit");
  }
}

std::vector<int> complement_of(const std::vector<int>& keep, int n) {
  std::vector<int> env;
  std::set<int> kept(keep.begin(), keep.end());
  for (int q = 0; q < n; ++q)
    if (!kept.count(q)) env.push_back(q);
  return env;
}

}  // namespace

std::vector<int> Bipartition::part_b() const {
  return complement_of(part_a, n);
}

std::uint64_t Bipartition::mask_a() const {
  std::uint64_t mask = 0;
  for (const int i : part_a) mask |= std::uint64_t{1} << i;
  return mask;
}

std::string Bipartition::label() const {
  const std::vector<int> side =
      2 * static_cast<int>(part_a.size()) <= n ? part_a : part_b();
  std::string out = "{";
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(side[i] + 1);
  }
  out += "}";
  return out;
}

std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2 || n > 20)
    throw std::invalid_argument(
        "enumerate_bipartitions: spin count out of range");
  std::vector<Bipartition> out;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; mask += 2) {
    Bipartition b;
    b.n = n;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) b.part_a.push_back(i);
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(),
            [](const Bipartition& x, const Bipartition& y) {
              if (x.part_a.size() != y.part_a.size())
                return x.part_a.size() < y.part_a.size();
              return x.part_a < y.part_a;
            });
  return out;
}

Eigen::MatrixXcd partial_trace(const Eigen::VectorXcd& psi,
                               const std::vector<int>& keep) {
  const int n = qubit_count(psi.size());
  check_keep(keep, n);
  const std::vector<int> env = complement_of(keep, n);
  const Eigen::Index kd = Eigen::Index{1} << keep.size();
  const Eigen::Index ed = Eigen::Index{1} << env.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(kd, kd);
  Eigen::VectorXcd col(kd);
  for (Eigen::Index e = 0; e < ed; ++e) {
    const Eigen::Index base = compose(env, e, n);
    for (Eigen::Index a = 0; a < kd; ++a)
      col(a) = psi(base | compose(keep, a, n));
    rho.noalias() += col * col.adjoint();
  }
  return rho;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho,
                               const std::vector<int>& keep) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: matrix must be square");
  const int n = qubit_count(rho.rows());
  check_keep(keep, n);
  const std::vector<int> env = complement_of(keep, n);
  const Eigen::Index kd = Eigen::Index{1} << keep.size();
  const Eigen::Index ed = Eigen::Index{1} << env.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
  for (Eigen::Index e = 0; e < ed; ++e) {
    const Eigen::Index base = compose(env, e, n);
    for (Eigen::Index a = 0; a < kd; ++a) {
      const Eigen::Index ia = base | compose(keep, a, n);
      for (Eigen::Index b = 0; b < kd; ++b)
        out(a, b) += rho(ia, base | compose(keep, b, n));
    }
  }
  return out;
}

double linear_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("linear_entropy: matrix must be square");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 ||
      std::abs(rho.trace().imag()) > 1e-8)
    throw std::invalid_argument("linear_entropy: matrix must have unit trace");
  return 1.0 - (rho * rho).trace().real();
}

GmeResult gme_concurrence(const Eigen::VectorXcd& psi, double tie_tol) {
  const int n = qubit_count(psi.size());
  if (n < 2)
    throw std::invalid_argument("gme_concurrence: need at least two spins");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("gme_concurrence: state must be normalized");

  GmeResult result;
  const std::vector<Bipartition> cuts = enumerate_bipartitions(n);
  result.entropies.reserve(cuts.size());
  for (const Bipartition& cut : cuts) {
    const std::vector<int> b_side = cut.part_b();
    const Eigen::Index ra = Eigen::Index{1} << cut.part_a.size();
    const Eigen::Index rb = Eigen::Index{1} << b_side.size();
    // Schmidt coefficients of the cut, smaller side as rows.
    Eigen::MatrixXcd m(std::min(ra, rb), std::max(ra, rb));
    const bool a_rows = ra <= rb;
    for (Eigen::Index ia = 0; ia < ra; ++ia) {
      const Eigen::Index abits = compose(cut.part_a, ia, n);
      for (Eigen::Index ib = 0; ib < rb; ++ib) {
        const Eigen::Index full = abits | compose(b_side, ib, n);
        if (a_rows)
          m(ia, ib) = psi(full);
        else
          m(ib, ia) = psi(full);
      }
    }
    Eigen::VectorXd sv;
    if (m.rows() <= 32) {
      sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
    } else {
      sv = Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
    }
    double sum4 = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      sum4 += sv(i) * sv(i) * sv(i) * sv(i);
    result.entropies.push_back(std::max(0.0, 1.0 - sum4));
  }

  double best = std::numeric_limits<double>::infinity();
  for (const double s : result.entropies)
    best = std::min(best, std::sqrt(2.0 * s));
  result.concurrence = best;
  for (std::size_t i = 0; i < cuts.size(); ++i)
    if (std::sqrt(2.0 * result.entropies[i]) <= best + tie_tol)
      result.argmin.push_back(cuts[i]);
  return result;
}

double wootters_concurrence(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument(
        "wootters_concurrence: need a two spin density matrix");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument(
        "wootters_concurrence: matrix must have unit trace");
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
  const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i)
    lambda[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

WernerDecomposition werner_decompose(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument(
        "werner_decompose: need a two spin density matrix");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument(
        "werner_decompose: matrix must have unit trace");
  const Eigen::VectorXcd s = two_qubit_singlet();
  const double overlap = s.dot(rho * s).real();
  const double p = (4.0 * overlap - 1.0) / 3.0;
  Eigen::MatrixXcd model = p * (s * s.adjoint());
  model += ((1.0 - p) / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
  return {p, (rho - model).norm()};
}

WernerPoint werner_formulas(double p) {
  if (p < -1.0 / 3.0 - 1e-12 || p > 1.0 + 1e-12)
    throw std::invalid_argument("werner_formulas: p outside [-1/3, 1]");
  return {1.0 - (1.0 + 3.0 * p * p) / 4.0, std::max(0.0, (3.0 * p - 1.0) / 2.0)};
}

EntanglementReport analyze_spin_state(const Eigen::VectorXcd& psi,
                                      bool with_gme, bool with_pairs,
                                      bool with_werner) {
  EntanglementReport report;
  report.n = qubit_count(psi.size());
  if (with_gme && report.n >= 2) report.gme = gme_concurrence(psi);
  if ((with_pairs || with_werner) && report.n >= 2) {
    for (int i = 0; i < report.n; ++i)
      for (int j = i + 1; j < report.n; ++j) {
        const Eigen::MatrixXcd rho = partial_trace(psi, {i, j});
        if (with_pairs) {
          report.pair_concurrences[{i, j}] = wootters_concurrence(rho);
          report.pair_linear_entropies[{i, j}] = linear_entropy(rho);
        }
        if (with_werner) {
          const WernerDecomposition wd = werner_decompose(rho);
          report.werner_p[{i, j}] = wd.p;
          report.werner_residuals[{i, j}] = wd.residual;
        }
      }
  }
  return report;
}

EntanglementReport analyze_spin_density(const Eigen::MatrixXcd& rho,
                                        bool with_pairs, bool with_werner) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("analyze_spin_density: matrix is not square");
  EntanglementReport report;
  report.n = qubit_count(rho.rows());
  if ((with_pairs || with_werner) && report.n >= 2) {
    for (int i = 0; i < report.n; ++i)
      for (int j = i + 1; j < report.n; ++j) {
        const Eigen::MatrixXcd pair =
            (report.n == 2) ? rho : partial_trace(rho, {i, j});
        if (with_pairs) {
          report.pair_concurrences[{i, j}] = wootters_concurrence(pair);
          report.pair_linear_entropies[{i, j}] = linear_entropy(pair);
        }
        if (with_werner) {
          const WernerDecomposition wd = werner_decompose(pair);
          report.werner_p[{i, j}] = wd.p;
          report.werner_residuals[{i, j}] = wd.residual;
        }
      }
  }
  return report;
}

}  // namespace spinext
