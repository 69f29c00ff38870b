// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinext/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinext {

namespace {

constexpr std::uint64_t kUpBits = 0x5555555555555555ull;

// Parity of the permutation taking canonical interleaved order to
// spin-separated order (all ups ascending, then all downs ascending):
// each up operator hops over every down operator below it.
int unshuffle_parity(std::uint64_t bits) {
  std::uint64_t ups = bits & kUpBits;
  const std::uint64_t downs = bits & ~kUpBits;
  int parity = 0;
  while (ups) {
    const int p = std::countr_zero(ups);
    parity ^= std::popcount(downs & ((std::uint64_t{1} << p) - 1)) & 1;
    ups &= ups - 1;
  }
  return parity;
}

double unshuffle_sign(std::uint64_t bits) {
  return unshuffle_parity(bits) ? -1.0 : 1.0;
}

// All k-element subsets of {0,...,m-1} as bitmasks, ascending (Gosper).
std::vector<std::uint64_t> k_subsets(int m, int k) {
  std::vector<std::uint64_t> out;
  if (k > m) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << m;
  while (mask < limit) {
    out.push_back(mask);
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
  return out;
}

std::vector<int> mask_to_indices(std::uint64_t mask) {
  std::vector<int> out;
  out.reserve(std::popcount(mask));
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

// Orbital mask -> occupation bits for one spin channel.
std::uint64_t spread(std::uint64_t orbital_mask, int spin_offset) {
  std::uint64_t out = 0;
  while (orbital_mask) {
    const int j = std::countr_zero(orbital_mask);
    out |= std::uint64_t{1} << (2 * j + spin_offset);
    orbital_mask &= orbital_mask - 1;
  }
  return out;
}

cplx minor_det(const Eigen::MatrixXcd& u, const std::vector<int>& rows,
               const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 1.0;
  if (k == 1) return u(rows[0], cols[0]);
  Eigen::MatrixXcd sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = u(rows[i], cols[j]);
  return sub.determinant();
}

}  // namespace

std::string Determinant::to_string(int num_orbitals) const {
  std::string s(2 * static_cast<std::size_t>(num_orbitals), '0');
  for (int k = 0; k < 2 * num_orbitals; ++k)
    if (occupied(k)) s[k] = '1';
  return s;
}

FockState::FockState(int num_orbitals, int particles)
    : num_orbitals_(num_orbitals), particles_(particles) {
  if (num_orbitals < 0 || num_orbitals > kMaxOrbitals)
    throw std::invalid_argument("FockState: orbital count out of range");
  if (particles < 0 || particles > 2 * num_orbitals)
    throw std::invalid_argument("FockState: particle count out of range");
}

FockState::FockState(int num_orbitals, int particles, AmplitudeMap amplitudes,
                     double prune_threshold)
    : FockState(num_orbitals, particles) {
  for (auto it = amplitudes.begin(); it != amplitudes.end();) {
    if (num_orbitals < kMaxOrbitals && (it->first >> (2 * num_orbitals)) != 0)
      throw std::invalid_argument(
          "FockState: determinant uses spin-orbitals outside the sector");
    if (std::popcount(it->first) != particles)
      throw std::invalid_argument(
          "FockState: determinant particle count does not match the sector");
    if (std::abs(it->second) <= prune_threshold)
      it = amplitudes.erase(it);
    else
      ++it;
  }
  amps_ = std::move(amplitudes);
}

FockState FockState::vacuum(int num_orbitals) {
  return FockState(num_orbitals, 0, AmplitudeMap{{0, cplx(1.0)}}, 0.0);
}

FockState FockState::single(int num_orbitals, Determinant det, cplx amp) {
  return FockState(num_orbitals, det.count(), AmplitudeMap{{det.bits, amp}},
                   0.0);
}

cplx FockState::amplitude(Determinant det) const {
  const auto it = amps_.find(det.bits);
  return it == amps_.end() ? cplx(0.0) : it->second;
}

double FockState::norm() const {
  double sum = 0.0;
  for (const auto& [bits, amp] : amps_) sum += std::norm(amp);
  return std::sqrt(sum);
}

FockState FockState::normalized() const {
  const double n = norm();
  if (n <= kPruneThreshold)
    throw std::domain_error("FockState: cannot normalize a zero state");
  return scaled(1.0 / n);
}

FockState FockState::scaled(cplx factor) const {
  AmplitudeMap out;
  out.reserve(amps_.size());
  for (const auto& [bits, amp] : amps_) out.emplace(bits, factor * amp);
  return FockState(num_orbitals_, particles_, std::move(out), 0.0);
}

std::vector<std::pair<Determinant, cplx>> FockState::sorted_terms() const {
  std::vector<std::pair<Determinant, cplx>> out;
  out.reserve(amps_.size());
  for (const auto& [bits, amp] : amps_) out.emplace_back(Determinant{bits}, amp);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

FockState apply_creation(const FockState& state, SpinOrbital so) {
  const int m = state.num_orbitals();
  if (so.orbital < 0 || so.orbital >= m)
    throw std::invalid_argument("apply_creation: orbital index out of range");
  if (state.particles() >= 2 * m)
    throw std::invalid_argument("apply_creation: sector is already full");
  const int c = so.canonical();
  FockState::AmplitudeMap out;
  out.reserve(state.term_count());
  for (const auto& [bits, amp] : state.amplitudes()) {
    const Determinant d{bits};
    if (d.occupied(c)) continue;
    const double sign = (d.count_below(c) & 1) ? -1.0 : 1.0;
    out.emplace(bits | (std::uint64_t{1} << c), sign * amp);
  }
  return FockState(m, state.particles() + 1, std::move(out), 0.0);
}

FockState apply_annihilation(const FockState& state, SpinOrbital so) {
  const int m = state.num_orbitals();
  if (so.orbital < 0 || so.orbital >= m)
    throw std::invalid_argument(
        "apply_annihilation: orbital index out of range");
  if (state.particles() <= 0)
    throw std::invalid_argument("apply_annihilation: sector is already empty");
  const int c = so.canonical();
  FockState::AmplitudeMap out;
  out.reserve(state.term_count());
  for (const auto& [bits, amp] : state.amplitudes()) {
    const Determinant d{bits};
    if (!d.occupied(c)) continue;
    const double sign = (d.count_below(c) & 1) ? -1.0 : 1.0;
    out.emplace(bits & ~(std::uint64_t{1} << c), sign * amp);
  }
  return FockState(m, state.particles() - 1, std::move(out), 0.0);
}

cplx inner_product(const FockState& bra, const FockState& ket) {
  if (bra.num_orbitals() != ket.num_orbitals() ||
      bra.particles() != ket.particles())
    throw std::invalid_argument("inner_product: states live in different sectors");
  cplx sum = 0.0;
  if (bra.term_count() <= ket.term_count()) {
    for (const auto& [bits, amp] : bra.amplitudes()) {
      const auto it = ket.amplitudes().find(bits);
      if (it != ket.amplitudes().end()) sum += std::conj(amp) * it->second;
    }
  } else {
    for (const auto& [bits, amp] : ket.amplitudes()) {
      const auto it = bra.amplitudes().find(bits);
      if (it != bra.amplitudes().end()) sum += std::conj(it->second) * amp;
    }
  }
  return sum;
}

double fidelity(const FockState& a, const FockState& b) {
  return std::abs(inner_product(a, b));
}

OrbitalRotation::OrbitalRotation(Eigen::MatrixXcd u, double unitarity_tol)
    : u_(std::move(u)) {
  if (u_.rows() == 0 || u_.rows() != u_.cols())
    throw std::invalid_argument(
        "OrbitalRotation: matrix must be square and non-empty");
  if (u_.rows() > kMaxOrbitals)
    throw std::invalid_argument(
        "OrbitalRotation: dimension exceeds the supported orbital count");
  const Eigen::MatrixXcd defect =
      u_ * u_.adjoint() - Eigen::MatrixXcd::Identity(u_.rows(), u_.cols());
  if (defect.cwiseAbs().maxCoeff() > unitarity_tol)
    throw std::invalid_argument(
        "OrbitalRotation: matrix is not unitary within tolerance");
}

OrbitalRotation fourier_rotation(int dim) {
  if (dim < 1 || dim > kMaxOrbitals)
    throw std::invalid_argument("fourier_rotation: dimension out of range");
  Eigen::MatrixXcd u(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      const double phase =
          2.0 * std::numbers::pi * static_cast<double>(j) * k / dim;
      u(j, k) = scale * cplx(std::cos(phase), std::sin(phase));
    }
  return OrbitalRotation(std::move(u));
}

FockState rotate_orbitals(const FockState& state, const OrbitalRotation& u,
                          double prune_threshold) {
  const int m = state.num_orbitals();
  if (u.dim() != m)
    throw std::invalid_argument(
        "rotate_orbitals: rotation dimension does not match the state");
  const Eigen::MatrixXcd& mat = u.matrix();

  // Subset lists depend only on the per-spin particle count; share them
  // across input determinants.
  std::vector<std::vector<std::uint64_t>> subset_cache(m + 1);
  std::vector<bool> subset_ready(m + 1, false);
  const auto subsets_for = [&](int k) -> const std::vector<std::uint64_t>& {
    if (!subset_ready[k]) {
      subset_cache[k] = k_subsets(m, k);
      subset_ready[k] = true;
    }
    return subset_cache[k];
  };

  FockState::AmplitudeMap out;
  for (const auto& [bits, amp] : state.amplitudes()) {
    std::vector<int> ups_in, downs_in;
    for (int j = 0; j < m; ++j) {
      if ((bits >> (2 * j)) & 1) ups_in.push_back(j);
      if ((bits >> (2 * j + 1)) & 1) downs_in.push_back(j);
    }
    const double sign_in = unshuffle_sign(bits);
    const auto& up_subsets = subsets_for(static_cast<int>(ups_in.size()));
    const auto& dn_subsets = subsets_for(static_cast<int>(downs_in.size()));

    std::vector<cplx> up_minors(up_subsets.size());
    std::vector<std::uint64_t> up_occ(up_subsets.size());
    for (std::size_t a = 0; a < up_subsets.size(); ++a) {
      up_minors[a] = minor_det(mat, ups_in, mask_to_indices(up_subsets[a]));
      up_occ[a] = spread(up_subsets[a], 0);
    }
    for (const std::uint64_t dn_subset : dn_subsets) {
      const cplx dn_minor =
          minor_det(mat, downs_in, mask_to_indices(dn_subset));
      if (dn_minor == cplx(0.0)) continue;
      const std::uint64_t dn_bits = spread(dn_subset, 1);
      for (std::size_t a = 0; a < up_subsets.size(); ++a) {
        if (up_minors[a] == cplx(0.0)) continue;
        const std::uint64_t out_bits = up_occ[a] | dn_bits;
        out[out_bits] +=
            amp * sign_in * unshuffle_sign(out_bits) * up_minors[a] * dn_minor;
      }
    }
  }
  return FockState(m, state.particles(), std::move(out), prune_threshold);
}

FockState build_closed_shell(const OrbitalRotation& u, int n_electrons) {
  const int m = u.dim();
  if (n_electrons < 0 || n_electrons % 2 != 0 || n_electrons > 2 * m)
    throw std::invalid_argument(
        "build_closed_shell: electron count must be even and fit the orbital "
        "space");
  if (n_electrons == 0) return FockState::vacuum(m);
  const std::uint64_t bits = n_electrons == 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << n_electrons) - 1;
  return rotate_orbitals(FockState::single(m, Determinant{bits}), u)
      .normalized();
}

FockState apply_singlet_creation(const FockState& state, int j, int k,
                                 double prune_threshold) {
  const int m = state.num_orbitals();
  if (j < 0 || j >= m || k < 0 || k >= m)
    throw std::invalid_argument(
        "apply_singlet_creation: orbital index out of range");
  const FockState plus =
      apply_creation(apply_creation(state, {k, Spin::down}), {j, Spin::up});
  const FockState minus =
      apply_creation(apply_creation(state, {k, Spin::up}), {j, Spin::down});
  FockState::AmplitudeMap out;
  for (const auto& [bits, amp] : plus.amplitudes()) out[bits] += 0.5 * amp;
  for (const auto& [bits, amp] : minus.amplitudes()) out[bits] -= 0.5 * amp;
  return FockState(m, state.particles() + 2, std::move(out), prune_threshold);
}

FockState build_singlet_product(const OrbitalRotation& u, int n_electrons,
                                double prune_threshold) {
  const int m = u.dim();
  if (n_electrons < 0 || n_electrons % 2 != 0 || n_electrons > 2 * m)
    throw std::invalid_argument(
        "build_singlet_product: electron count must be even and fit the "
        "orbital space");
  const Eigen::MatrixXcd& mat = u.matrix();
  FockState state = FockState::vacuum(m);
  for (int i = 0; i < n_electrons / 2; ++i) {
    FockState::AmplitudeMap acc;
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const cplx coeff = mat(i, j) * mat(i, k);
        if (coeff == cplx(0.0)) continue;
        const FockState term = apply_singlet_creation(state, j, k, 0.0);
        for (const auto& [bits, amp] : term.amplitudes())
          acc[bits] += coeff * amp;
      }
    }
    state = FockState(m, state.particles() + 2, std::move(acc),
                      prune_threshold);
  }
  return state.normalized();
}

}  // namespace spinext
