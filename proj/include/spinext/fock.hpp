// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace spinext {

using cplx = std::complex<double>;

/// Amplitudes with modulus at or below this are dropped after operations that
/// can produce cancellations (rotations, singlet sums).
inline constexpr double kPruneThreshold = 1e-14;

/// Largest supported orbital count (2M occupation bits must fit a u64).
inline constexpr int kMaxOrbitals = 32;

enum class Spin : std::uint8_t { up = 0, down = 1 };

/// A spatial orbital paired with a spin label.
/// Canonical linear index: 2*orbital + (spin == down), orbital-major with
/// up before down.
struct SpinOrbital {
  int orbital = 0;
  Spin spin = Spin::up;

  int canonical() const { return 2 * orbital + static_cast<int>(spin); }

  friend bool operator==(const SpinOrbital&, const SpinOrbital&) = default;
};

/// Occupation bitmask over 2M spin-orbitals; bit k is the spin-orbital with
/// canonical index k. A determinant stands for the product of creation
/// operators applied to the vacuum in increasing canonical index, smallest
/// index leftmost:  |D> = d+_{i1} d+_{i2} ... d+_{ik} |vac>,  i1 < i2 < ... .
struct Determinant {
  std::uint64_t bits = 0;

  bool occupied(int canonical) const { return (bits >> canonical) & 1u; }
  int count() const { return std::popcount(bits); }

  /// Number of occupied spin-orbitals strictly below a canonical index;
  /// its parity is the fermionic sign picked up at that position.
  int count_below(int canonical) const {
    return std::popcount(bits & ((std::uint64_t{1} << canonical) - 1));
  }

  /// 2M-character 0/1 string, character k = canonical index k.
  std::string to_string(int num_orbitals) const;

  friend auto operator<=>(const Determinant&, const Determinant&) = default;
};

/// Sparse N-electron state in a fixed (num_orbitals, particles) sector.
/// Determinants absent from the map carry amplitude zero; the zero state
/// (empty map) is a valid member of every sector.
class FockState {
 public:
  using AmplitudeMap = std::unordered_map<std::uint64_t, cplx>;

  /// The zero state of a sector.
  FockState(int num_orbitals, int particles);

  /// Takes ownership of an amplitude map; validates that every determinant
  /// lies in the sector and prunes entries at or below prune_threshold.
  FockState(int num_orbitals, int particles, AmplitudeMap amplitudes,
            double prune_threshold = kPruneThreshold);

  /// Amplitude 1 on the empty determinant.
  static FockState vacuum(int num_orbitals);

  /// A single determinant with the given amplitude.
  static FockState single(int num_orbitals, Determinant det, cplx amp = 1.0);

  int num_orbitals() const { return num_orbitals_; }
  int particles() const { return particles_; }
  const AmplitudeMap& amplitudes() const { return amps_; }
  std::size_t term_count() const { return amps_.size(); }

  cplx amplitude(Determinant det) const;
  double norm() const;
  FockState normalized() const;
  FockState scaled(cplx factor) const;

  /// Terms in ascending determinant order; the deterministic view used by
  /// exporters and tests.
  std::vector<std::pair<Determinant, cplx>> sorted_terms() const;

 private:
  int num_orbitals_;
  int particles_;
  AmplitudeMap amps_;
};

/// d+_{so} |state>. Determinants already occupied at `so` are annihilated;
/// survivors pick up (-1)^(occupied below so).
FockState apply_creation(const FockState& state, SpinOrbital so);

/// d_{so} |state>, adjoint of apply_creation, same sign rule.
FockState apply_annihilation(const FockState& state, SpinOrbital so);

/// <bra|ket>, conjugate-linear in the first argument. Both states must live
/// in the same (num_orbitals, particles) sector.
cplx inner_product(const FockState& bra, const FockState& ket);

/// |<a|b>| for normalized inputs (modulus, not squared).
double fidelity(const FockState& a, const FockState& b);

/// A unitary change of orbital basis, c+_{i,s} = sum_j u(i,j) d+_{j,s}.
/// Row i holds the expansion of rotated orbital i on the reference basis.
class OrbitalRotation {
 public:
  explicit OrbitalRotation(Eigen::MatrixXcd u, double unitarity_tol = 1e-10);

  int dim() const { return static_cast<int>(u_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return u_; }

 private:
  Eigen::MatrixXcd u_;
};

/// Discrete Fourier unitary u(j,k) = exp(2*pi*i*j*k/dim)/sqrt(dim).
OrbitalRotation fourier_rotation(int dim);

/// Expresses a state given on the rotated basis (amplitudes attached to
/// c-basis determinants) on the reference d-basis. Spin sectors transform
/// independently; a single determinant expands into minors of u restricted
/// to its occupied rows, with reordering signs between the canonical
/// interleaved order and the spin-separated order on both sides.
FockState rotate_orbitals(const FockState& state, const OrbitalRotation& u,
                          double prune_threshold = kPruneThreshold);

/// Prod_{i=0}^{N/2-1} c+_{i,up} c+_{i,dn} |vac> expressed on the reference
/// basis via rotate_orbitals; normalized. n_electrons must be even.
FockState build_closed_shell(const OrbitalRotation& u, int n_electrons);

/// S+_{jk} |state> with S+_{jk} = (d+_{j,up} d+_{k,dn} - d+_{j,dn} d+_{k,up})/2.
/// Symmetric in (j, k); j == k reduces to d+_{j,up} d+_{j,dn}.
FockState apply_singlet_creation(const FockState& state, int j, int k,
                                 double prune_threshold = kPruneThreshold);

/// Prod_i (sum_{j,k} u(i,j) u(i,k) S+_{jk}) |vac>, normalized. Must agree
/// with build_closed_shell for the same unitary up to a global phase.
FockState build_singlet_product(const OrbitalRotation& u, int n_electrons,
                                double prune_threshold = kPruneThreshold);

}  // namespace spinext
