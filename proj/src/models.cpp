// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinext/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spinext/spin_basis.hpp"

namespace spinext {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::uint64_t> site_subsets(int m, int k) {
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

// Sites lo..hi inclusive; empty when lo > hi.
std::uint64_t site_range(int lo, int hi) {
  if (lo > hi) return 0;
  const int len = hi - lo + 1;
  const std::uint64_t block =
      len >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
  return block << lo;
}

std::uint64_t interleave(std::uint64_t site_mask, int spin_offset) {
  std::uint64_t out = 0;
  while (site_mask) {
    const int s = std::countr_zero(site_mask);
    out |= std::uint64_t{1} << (2 * s + spin_offset);
    site_mask &= site_mask - 1;
  }
  return out;
}

// First entry of maximal magnitude is made positive.
void fix_sign(Eigen::VectorXd& v) {
  const double mx = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= mx - 1e-12) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

// Deterministic vector inside a possibly degenerate ground space: the
// normalized projection of the lowest basis state that has support there.
Eigen::VectorXd ground_representative(const Eigen::VectorXd& evals,
                                      const Eigen::MatrixXd& evecs, double tol,
                                      int* multiplicity) {
  int mult = 1;
  while (mult < evals.size() && evals(mult) - evals(0) <= tol) ++mult;
  if (multiplicity) *multiplicity = mult;
  if (mult == 1) {
    Eigen::VectorXd v = evecs.col(0);
    fix_sign(v);
    return v;
  }
  for (Eigen::Index b = 0; b < evecs.rows(); ++b) {
    const Eigen::VectorXd coeffs = evecs.leftCols(mult).row(b).transpose();
    if (coeffs.norm() > 1e-8) {
      Eigen::VectorXd v = evecs.leftCols(mult) * coeffs;
      v.normalize();
      fix_sign(v);
      return v;
    }
  }
  throw std::runtime_error("ground_representative: projection failed");
}

struct LanczosOutcome {
  double e0 = 0.0;
  double e1 = std::numeric_limits<double>::infinity();
  Eigen::VectorXd vec;
};

// Plain Lanczos with full reorthogonalization and a fixed-seed start vector.
LanczosOutcome lanczos_lowest(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& matvec,
    Eigen::Index dim, double scale) {
  std::mt19937_64 rng(0x5eed0123456789ull);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) start(i) = normal(rng);
  start.normalize();

  const int max_iter = static_cast<int>(std::min<Eigen::Index>(dim, 250));
  std::vector<Eigen::VectorXd> basis{start};
  std::vector<double> alpha, beta;
  for (int k = 0; k < max_iter; ++k) {
    Eigen::VectorXd w = matvec(basis[k]);
    alpha.push_back(basis[k].dot(w));
    w -= alpha[k] * basis[k];
    if (k > 0) w -= beta[k - 1] * basis[k - 1];
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const Eigen::VectorXd& u : basis) w -= u.dot(w) * u;
    const double b = w.norm();

    const int s = k + 1;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(s, s);
    for (int i = 0; i < s; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < s) {
        tri(i, i + 1) = beta[i];
        tri(i + 1, i) = beta[i];
      }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const double ritz_residual = std::abs(b * es.eigenvectors()(s - 1, 0));
    if (ritz_residual <= 1e-11 * scale || b <= 1e-13 * scale ||
        k + 1 == max_iter) {
      LanczosOutcome out;
      out.e0 = es.eigenvalues()(0);
      if (s > 1) out.e1 = es.eigenvalues()(1);
      Eigen::VectorXd full = Eigen::VectorXd::Zero(dim);
      for (int i = 0; i < s; ++i) full += es.eigenvectors()(i, 0) * basis[i];
      full.normalize();
      out.vec = std::move(full);
      return out;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw std::runtime_error("lanczos_lowest: iteration limit reached");
}

}  // namespace

LatticeSpec LatticeSpec::chain(int n, double t) {
  LatticeSpec s;
  s.sites = n;
  s.topology = LatticeTopology::chain;
  for (int i = 0; i + 1 < n; ++i) s.edges.push_back({i, i + 1, t});
  return s;
}

LatticeSpec LatticeSpec::chain(int n, double t_first, double t_second) {
  LatticeSpec s = chain(n, t_first);
  for (std::size_t b = 1; b < s.edges.size(); b += 2) s.edges[b].t = t_second;
  return s;
}

LatticeSpec LatticeSpec::ring(int n, double t) {
  if (n < 3)
    throw std::invalid_argument("LatticeSpec::ring: need at least three sites");
  LatticeSpec s = chain(n, t);
  s.topology = LatticeTopology::ring;
  s.edges.push_back({n - 1, 0, t});
  return s;
}

void LatticeSpec::validate() const {
  if (sites < 1 || sites > kMaxOrbitals)
    throw std::invalid_argument("LatticeSpec: site count out of range");
  if (!std::isfinite(onsite_repulsion) || onsite_repulsion < 0.0)
    throw std::invalid_argument(
        "LatticeSpec: onsite repulsion must be finite and non-negative");
  std::set<std::pair<int, int>> seen;
  UnionFind uf(sites);
  for (const LatticeEdge& e : edges) {
    if (e.i < 0 || e.i >= sites || e.j < 0 || e.j >= sites || e.i == e.j)
      throw std::invalid_argument("LatticeSpec: edge endpoints out of range");
    if (!std::isfinite(e.t))
      throw std::invalid_argument("LatticeSpec: hopping must be finite");
    if (!seen.insert(std::minmax(e.i, e.j)).second)
      throw std::invalid_argument("LatticeSpec: duplicate edge");
    uf.merge(e.i, e.j);
  }
  for (const DensityCoupling& d : density_density) {
    if (d.i < 0 || d.i >= sites || d.j < 0 || d.j >= sites || d.i == d.j)
      throw std::invalid_argument(
          "LatticeSpec: density coupling endpoints out of range");
    if (!std::isfinite(d.v))
      throw std::invalid_argument(
          "LatticeSpec: density coupling must be finite");
  }
  if (sites > 1) {
    const int root = uf.find(0);
    for (int s = 1; s < sites; ++s)
      if (uf.find(s) != root)
        throw std::invalid_argument("LatticeSpec: hopping graph is disconnected");
  }
}

Eigen::MatrixXd hopping_matrix(const LatticeSpec& lattice) {
  lattice.validate();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(lattice.sites, lattice.sites);
  for (const LatticeEdge& e : lattice.edges) {
    h(e.i, e.j) += e.t;
    h(e.j, e.i) += e.t;
  }
  return h;
}

TightBindingResult tight_binding_determinant(const LatticeSpec& lattice,
                                             int n_electrons) {
  lattice.validate();
  const int m = lattice.sites;
  if (n_electrons < 0 || n_electrons % 2 != 0 || n_electrons > 2 * m)
    throw std::invalid_argument(
        "tight_binding_determinant: electron count must be even and fit the "
        "lattice");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      hopping_matrix(lattice));
  const Eigen::VectorXd levels = es.eigenvalues();
  const int filled = n_electrons / 2;
  if (filled > 0 && filled < m) {
    const double scale = std::max(1.0, levels.cwiseAbs().maxCoeff());
    if (levels(filled) - levels(filled - 1) <= 1e-8 * scale)
      throw std::domain_error(
          "tight_binding_determinant: Fermi level is degenerate, no unique "
          "closed shell");
  }
  const Eigen::MatrixXcd u = es.eigenvectors().transpose().cast<cplx>();
  OrbitalRotation rotation{u};
  FockState state = build_closed_shell(rotation, n_electrons);
  return {std::move(state), std::move(rotation), levels};
}

namespace {

// Validated (n_up, n_dn) sector of a lattice Hamiltonian. Hop signs count
// occupied spin-orbitals between the endpoints in canonical (interleaved)
// order, evaluated on the source state.
struct HubbardOperator {
  const LatticeSpec& lattice;
  std::vector<std::uint64_t> up_masks;
  std::vector<std::uint64_t> dn_masks;
  std::int64_t nu = 0;
  std::int64_t nd = 0;
  std::int64_t dim = 0;
  double scale = 1.0;
  std::unordered_map<std::uint64_t, std::int64_t> up_index;
  std::unordered_map<std::uint64_t, std::int64_t> dn_index;

  HubbardOperator(const LatticeSpec& spec, int n_electrons, int two_sz)
      : lattice(spec) {
    lattice.validate();
    const int m = lattice.sites;
    if (n_electrons < 0 || n_electrons > 2 * m)
      throw std::invalid_argument(
          "hubbard sector: electron count out of range");
    if ((n_electrons + two_sz) % 2 != 0)
      throw std::invalid_argument(
          "hubbard sector: spin projection incompatible with the electron "
          "count");
    const int n_up = (n_electrons + two_sz) / 2;
    const int n_dn = n_electrons - n_up;
    if (n_up < 0 || n_dn < 0 || n_up > m || n_dn > m)
      throw std::invalid_argument("hubbard sector: sector is empty");

    up_masks = site_subsets(m, n_up);
    dn_masks = site_subsets(m, n_dn);
    nu = static_cast<std::int64_t>(up_masks.size());
    nd = static_cast<std::int64_t>(dn_masks.size());
    dim = nu * nd;
    up_index.reserve(up_masks.size());
    dn_index.reserve(dn_masks.size());
    for (std::int64_t i = 0; i < nu; ++i) up_index.emplace(up_masks[i], i);
    for (std::int64_t i = 0; i < nd; ++i) dn_index.emplace(dn_masks[i], i);

    double t_total = 0.0;
    for (const LatticeEdge& e : lattice.edges) t_total += std::abs(e.t);
    double v_total = 0.0;
    for (const DensityCoupling& d : lattice.density_density)
      v_total += std::abs(d.v);
    scale = std::max(
        1.0, 4.0 * t_total + lattice.onsite_repulsion * m + 4.0 * v_total);
  }

  double diag(std::int64_t iu, std::int64_t id) const {
    const std::uint64_t up = up_masks[iu];
    const std::uint64_t dn = dn_masks[id];
    double value =
        lattice.onsite_repulsion * static_cast<double>(std::popcount(up & dn));
    for (const DensityCoupling& d : lattice.density_density) {
      const int ni = static_cast<int>((up >> d.i) & 1) +
                     static_cast<int>((dn >> d.i) & 1);
      const int nj = static_cast<int>((up >> d.j) & 1) +
                     static_cast<int>((dn >> d.j) & 1);
      value += d.v * ni * nj;
    }
    return value;
  }

  // Emits every hop amplitude out of (iu, id).
  template <class Emit>
  void for_each_hop(std::int64_t iu, std::int64_t id, Emit&& emit) const {
    const std::uint64_t up = up_masks[iu];
    const std::uint64_t dn = dn_masks[id];
    for (const LatticeEdge& e : lattice.edges) {
      const int a = std::min(e.i, e.j);
      const int b = std::max(e.i, e.j);
      const std::uint64_t move = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
      const bool up_can_hop = std::popcount(up & move) == 1;
      if (up_can_hop) {
        const int between =
            std::popcount(up & site_range(a + 1, b - 1)) +
            std::popcount(dn & site_range(a, b - 1));
        const double sign = (between & 1) ? -1.0 : 1.0;
        emit(up_index.at(up ^ move) * nd + id, e.t * sign);
      }
      const bool dn_can_hop = std::popcount(dn & move) == 1;
      if (dn_can_hop) {
        const int between =
            std::popcount(dn & site_range(a + 1, b - 1)) +
            std::popcount(up & site_range(a + 1, b));
        const double sign = (between & 1) ? -1.0 : 1.0;
        emit(iu * nd + dn_index.at(dn ^ move), e.t * sign);
      }
    }
  }

  Eigen::VectorXd matvec(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
    for (std::int64_t iu = 0; iu < nu; ++iu)
      for (std::int64_t id = 0; id < nd; ++id) {
        const std::int64_t idx = iu * nd + id;
        const double xv = x(idx);
        if (xv == 0.0) continue;
        y(idx) += diag(iu, id) * xv;
        for_each_hop(iu, id, [&](std::int64_t target, double amp) {
          y(target) += amp * xv;
        });
      }
    return y;
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (std::int64_t iu = 0; iu < nu; ++iu)
      for (std::int64_t id = 0; id < nd; ++id) {
        const std::int64_t idx = iu * nd + id;
        h(idx, idx) = diag(iu, id);
        for_each_hop(iu, id, [&](std::int64_t target, double amp) {
          h(target, idx) += amp;
        });
      }
    return h;
  }
};

}  // namespace

ElectronicGroundState hubbard_ground_state(const LatticeSpec& lattice,
                                           int n_electrons,
                                           const HubbardOptions& options) {
  const HubbardOperator op(lattice, n_electrons, options.two_sz);
  if (op.dim > options.dimension_cap)
    throw std::domain_error(
        "hubbard_ground_state: sector dimension exceeds the cap");
  const double tol = 1e-9 * op.scale;

  double energy = 0.0;
  bool degenerate = false;
  Eigen::VectorXd vec;
  if (op.dim <= options.dense_cap) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
    energy = es.eigenvalues()(0);
    int multiplicity = 1;
    vec = ground_representative(es.eigenvalues(), es.eigenvectors(), tol,
                                &multiplicity);
    degenerate = multiplicity > 1;
  } else {
    const LanczosOutcome lz = lanczos_lowest(
        [&](const Eigen::VectorXd& x) { return op.matvec(x); }, op.dim,
        op.scale);
    energy = lz.e0;
    vec = lz.vec;
    fix_sign(vec);
    degenerate = lz.e1 - lz.e0 <= tol;
  }

  const double residual = (op.matvec(vec) - energy * vec).norm();
  if (residual > 1e-9 * op.scale)
    throw std::runtime_error(
        "hubbard_ground_state: eigensolver residual too large");

  FockState::AmplitudeMap amps;
  for (std::int64_t iu = 0; iu < op.nu; ++iu)
    for (std::int64_t id = 0; id < op.nd; ++id) {
      const double a = vec(iu * op.nd + id);
      if (std::abs(a) <= kPruneThreshold) continue;
      const std::uint64_t bits =
          interleave(op.up_masks[iu], 0) | interleave(op.dn_masks[id], 1);
      amps.emplace(bits, cplx(a, 0.0));
    }
  return {energy, FockState(lattice.sites, n_electrons, std::move(amps)),
          degenerate, residual};
}

Eigen::MatrixXd hubbard_matrix(const LatticeSpec& lattice, int n_electrons,
                               int two_sz) {
  const HubbardOperator op(lattice, n_electrons, two_sz);
  if (op.dim > 4096)
    throw std::invalid_argument(
        "hubbard_matrix: dense export limited to 4096 basis states");
  return op.dense();
}

SpinSystemSpec SpinSystemSpec::ring(int n, double coupling) {
  if (n < 3)
    throw std::invalid_argument(
        "SpinSystemSpec::ring: need at least three spins");
  SpinSystemSpec s;
  s.count = n;
  for (int i = 0; i < n; ++i) s.couplings.push_back({i, (i + 1) % n, coupling});
  return s;
}

void SpinSystemSpec::validate() const {
  if (count < 2 || count > 16)
    throw std::invalid_argument(
        "SpinSystemSpec: spin count must be between 2 and 16");
  if (couplings.empty())
    throw std::invalid_argument("SpinSystemSpec: no couplings");
  std::set<std::pair<int, int>> seen;
  for (const SpinCoupling& c : couplings) {
    if (c.i < 0 || c.i >= count || c.j < 0 || c.j >= count || c.i == c.j)
      throw std::invalid_argument(
          "SpinSystemSpec: coupling endpoints out of range");
    if (!std::isfinite(c.coupling) || c.coupling <= 0.0)
      throw std::invalid_argument(
          "SpinSystemSpec: couplings must be positive and finite");
    if (!seen.insert(std::minmax(c.i, c.j)).second)
      throw std::invalid_argument("SpinSystemSpec: duplicate coupling");
  }
}

namespace {

struct SpinSector {
  std::vector<Eigen::Index> states;       // full-space indices, ascending
  std::vector<Eigen::Index> position;     // full index -> sector index or -1
};

SpinSector spin_sector(int n, int downs) {
  SpinSector sec;
  const Eigen::Index full = Eigen::Index{1} << n;
  sec.position.assign(full, -1);
  for (Eigen::Index b = 0; b < full; ++b)
    if (std::popcount(static_cast<std::uint64_t>(b)) == downs) {
      sec.position[b] = static_cast<Eigen::Index>(sec.states.size());
      sec.states.push_back(b);
    }
  return sec;
}

}  // namespace

SpinGroundState heisenberg_ground_state(const SpinSystemSpec& spec,
                                        const SpinSolveOptions& options) {
  spec.validate();
  const int n = spec.count;
  double j_total = 0.0;
  for (const SpinCoupling& c : spec.couplings) j_total += std::abs(c.coupling);
  const double scale = std::max(1.0, 0.75 * j_total);
  const double tol = 1e-9 * scale;

  const auto sector_matvec = [&](const SpinSector& sec,
                                 const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index p = 0; p < x.size(); ++p) {
      const Eigen::Index b = sec.states[p];
      const double xv = x(p);
      if (xv == 0.0) continue;
      for (const SpinCoupling& c : spec.couplings) {
        const Eigen::Index bi = Eigen::Index{1} << (n - 1 - c.i);
        const Eigen::Index bj = Eigen::Index{1} << (n - 1 - c.j);
        if (((b & bi) != 0) == ((b & bj) != 0)) {
          y(p) += 0.25 * c.coupling * xv;
        } else {
          y(p) -= 0.25 * c.coupling * xv;
          y(sec.position[b ^ bi ^ bj]) += 0.5 * c.coupling * xv;
        }
      }
    }
    return y;
  };

  // Scan from the lowest Sz (most down spins); ties keep the first sector.
  struct SectorOutcome {
    int downs = 0;
    double e0 = 0.0;
    std::vector<double> lowest;  // eigenvalues near the sector bottom
  };
  std::vector<SectorOutcome> outcomes;
  for (int k = n; k >= 0; --k) {
    const SpinSector sec = spin_sector(n, k);
    const Eigen::Index dim = static_cast<Eigen::Index>(sec.states.size());
    SectorOutcome oc;
    oc.downs = k;
    if (dim <= options.dense_cap) {
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
      for (Eigen::Index p = 0; p < dim; ++p) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
        e(p) = 1.0;
        h.col(p) = sector_matvec(sec, e);
      }
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      oc.e0 = es.eigenvalues()(0);
      for (Eigen::Index i = 0; i < dim; ++i)
        oc.lowest.push_back(es.eigenvalues()(i));
    } else {
      const LanczosOutcome lz = lanczos_lowest(
          [&](const Eigen::VectorXd& x) { return sector_matvec(sec, x); }, dim,
          scale);
      oc.e0 = lz.e0;
      oc.lowest = {lz.e0, lz.e1};
    }
    outcomes.push_back(std::move(oc));
  }

  double global_min = outcomes.front().e0;
  for (const SectorOutcome& oc : outcomes) global_min = std::min(global_min, oc.e0);
  int winner_downs = outcomes.front().downs;
  for (const SectorOutcome& oc : outcomes)
    if (oc.e0 <= global_min + tol) {
      winner_downs = oc.downs;
      break;
    }
  int multiplicity = 0;
  for (const SectorOutcome& oc : outcomes)
    for (const double e : oc.lowest)
      if (e <= global_min + tol) ++multiplicity;

  // Resolve the winning sector for its eigenvectors.
  const SpinSector sec = spin_sector(n, winner_downs);
  const Eigen::Index dim = static_cast<Eigen::Index>(sec.states.size());
  double energy = 0.0;
  Eigen::VectorXd vec;
  if (dim <= options.dense_cap) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index p = 0; p < dim; ++p) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
      e(p) = 1.0;
      h.col(p) = sector_matvec(sec, e);
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    energy = es.eigenvalues()(0);
    vec = ground_representative(es.eigenvalues(), es.eigenvectors(), tol,
                                nullptr);
  } else {
    const LanczosOutcome lz = lanczos_lowest(
        [&](const Eigen::VectorXd& x) { return sector_matvec(sec, x); }, dim,
        scale);
    energy = lz.e0;
    vec = lz.vec;
    fix_sign(vec);
  }

  Eigen::VectorXcd full_v =
      Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (Eigen::Index p = 0; p < dim; ++p) full_v(sec.states[p]) = vec(p);

  const Eigen::VectorXcd hv = apply_heisenberg(spec.couplings, full_v);
  const double residual = (hv - energy * full_v).norm();
  if (residual > 1e-9 * scale)
    throw std::runtime_error(
        "heisenberg_ground_state: eigensolver residual too large");

  return {energy, std::move(full_v), multiplicity > 1, residual};
}

Eigen::MatrixXd heisenberg_matrix(const SpinSystemSpec& spec) {
  spec.validate();
  if (spec.count > 12)
    throw std::invalid_argument(
        "heisenberg_matrix: dense export limited to 12 spins");
  const int n = spec.count;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (const SpinCoupling& c : spec.couplings) {
      const Eigen::Index bi = Eigen::Index{1} << (n - 1 - c.i);
      const Eigen::Index bj = Eigen::Index{1} << (n - 1 - c.j);
      if (((b & bi) != 0) == ((b & bj) != 0)) {
        h(b, b) += 0.25 * c.coupling;
      } else {
        h(b, b) -= 0.25 * c.coupling;
        h(b ^ bi ^ bj, b) += 0.5 * c.coupling;
      }
    }
  }
  return h;
}

}  // namespace spinext
