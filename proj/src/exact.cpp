#include "gsbench/exact.hpp"

#include <bit>
#include <cstdint>
#include <vector>

#include <fmt/core.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

void check_dense(int n) {
  if (n > kMaxDenseQubits)
    fail(ErrorKind::Resource, fmt::format("{} qubits exceeds the dense diagonalization limit of {}", n, kMaxDenseQubits));
}

SpectrumResult solve(const Eigen::MatrixXcd& m, const std::vector<std::size_t>& basis, int n_qubits,
                     bool keep_vector) {
  if (basis.empty()) fail(ErrorKind::Usage, "empty sector");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, keep_vector ? Eigen::ComputeEigenvectors
                                                                     : Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) fail(ErrorKind::Computation, "eigendecomposition failed");
  SpectrumResult r;
  r.n_qubits = n_qubits;
  r.ground_energy = eig.eigenvalues()(0);
  if (keep_vector) {
    Statevector v(n_qubits);
    v[0] = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) v[basis[i]] = eig.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    r.ground_vector = std::move(v);
  }
  return r;
}

// Sign of moving an annihilator/creator past the occupied modes below `p`.
int parity_below(std::uint64_t det, int p) { return std::popcount(det & ((std::uint64_t{1} << p) - 1)) % 2 ? -1 : 1; }

std::vector<std::uint64_t> strings_with(int n_orb, int n_set) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n_orb); ++s)
    if (std::popcount(s) == n_set) out.push_back(s);
  return out;
}

// Spin-orbital integrals in blocked ordering.
struct SpinIntegrals {
  int n;  // spatial orbitals
  const MOIntegrals& mo;

  double h(int p, int q) const {
    if (p / n != q / n) return 0.0;
    return mo.h(p % n, q % n);
  }
  // Antisymmetrized <pq||rs> = <pq|rs> - <pq|sr>, <pq|rs> = (pr|qs).
  double anti(int p, int q, int r, int s) const {
    double v = 0.0;
    if (p / n == r / n && q / n == s / n) v += mo.g(p % n, r % n, q % n, s % n);
    if (p / n == s / n && q / n == r / n) v -= mo.g(p % n, s % n, q % n, r % n);
    return v;
  }
};

std::vector<int> occupied(std::uint64_t det, int n_modes) {
  std::vector<int> out;
  for (int p = 0; p < n_modes; ++p)
    if ((det >> p) & 1U) out.push_back(p);
  return out;
}

double slater_condon(const SpinIntegrals& ints, std::uint64_t bra, std::uint64_t ket, int n_modes) {
  const std::uint64_t diff = bra ^ ket;
  const int n_diff = std::popcount(diff) / 2;
  if (n_diff > 2) return 0.0;
  if (n_diff == 0) {
    const auto occ = occupied(ket, n_modes);
    double e = 0.0;
    for (int i : occ) e += ints.h(i, i);
    for (std::size_t a = 0; a < occ.size(); ++a)
      for (std::size_t b = a + 1; b < occ.size(); ++b) e += ints.anti(occ[a], occ[b], occ[a], occ[b]);
    return e;
  }
  const std::uint64_t holes = ket & diff;       // occupied in ket only
  const std::uint64_t particles = bra & diff;   // occupied in bra only
  if (n_diff == 1) {
    const int m = std::countr_zero(holes), p = std::countr_zero(particles);
    // <bra| = a+_p a_m |ket>
    int sign = parity_below(ket, m);
    const std::uint64_t mid = ket & ~(std::uint64_t{1} << m);
    sign *= parity_below(mid, p);
    double v = ints.h(p, m);
    for (int k : occupied(ket & ~(std::uint64_t{1} << m), n_modes)) v += ints.anti(p, k, m, k);
    return sign * v;
  }
  const int m = std::countr_zero(holes), n2 = 63 - std::countl_zero(holes);
  const int p = std::countr_zero(particles), q = 63 - std::countl_zero(particles);
  // <bra| = a+_p a+_q a_n a_m |ket>  (m < n, p < q)
  std::uint64_t d = ket;
  int sign = parity_below(d, m);
  d &= ~(std::uint64_t{1} << m);
  sign *= parity_below(d, n2);
  d &= ~(std::uint64_t{1} << n2);
  sign *= parity_below(d, q);
  d |= std::uint64_t{1} << q;
  sign *= parity_below(d, p);
  return sign * ints.anti(p, q, m, n2);
}

}  // namespace

Eigen::MatrixXcd pauli_to_dense(const PauliSum& h) {
  check_dense(h.n_qubits);
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& t : h.terms) {
    const cplx base = t.coefficient * kIPow[std::popcount(t.x_mask & t.z_mask) % 4];
    for (std::size_t i = 0; i < dim; ++i) {
      const cplx v = (std::popcount(i & t.z_mask) % 2) ? -base : base;
      m(static_cast<Eigen::Index>(i ^ t.x_mask), static_cast<Eigen::Index>(i)) += v;
    }
  }
  return m;
}

SpectrumResult dense_ground_energy(const PauliSum& h, bool keep_vector) {
  const Eigen::MatrixXcd m = pauli_to_dense(h);
  std::vector<std::size_t> basis(static_cast<std::size_t>(m.rows()));
  for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
  return solve(m, basis, h.n_qubits, keep_vector);
}

SpectrumResult dense_ground_energy(const PauliSum& h, Sector sector, bool keep_vector) {
  check_dense(h.n_qubits);
  if (h.n_qubits % 2 != 0) fail(ErrorKind::Usage, "sector restriction needs blocked spin ordering (even qubits)");
  const int half = h.n_qubits / 2;
  const std::size_t alpha_mask = (std::size_t{1} << half) - 1;
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < (std::size_t{1} << h.n_qubits); ++i)
    if (std::popcount(i & alpha_mask) == sector.n_alpha && std::popcount(i >> half) == sector.n_beta)
      basis.push_back(i);
  if (basis.empty()) fail(ErrorKind::Usage, fmt::format("sector ({}, {}) is empty", sector.n_alpha, sector.n_beta));
  std::vector<Eigen::Index> position(std::size_t{1} << h.n_qubits, -1);
  for (std::size_t k = 0; k < basis.size(); ++k) position[basis[k]] = static_cast<Eigen::Index>(k);
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(k, k);
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& t : h.terms) {
    const cplx base = t.coefficient * kIPow[std::popcount(t.x_mask & t.z_mask) % 4];
    for (Eigen::Index col = 0; col < k; ++col) {
      const std::size_t i = basis[static_cast<std::size_t>(col)];
      const Eigen::Index row = position[i ^ t.x_mask];
      // Terms leaving the sector are dropped; they vanish for number-conserving h.
      if (row < 0) continue;
      block(row, col) += (std::popcount(i & t.z_mask) % 2) ? -base : base;
    }
  }
  return solve(block, basis, h.n_qubits, keep_vector);
}

double fci_determinant_oracle(const MOIntegrals& mo, Sector sector) {
  const std::size_t n = mo.n_orbitals;
  if (n > kMaxFciOrbitals)
    fail(ErrorKind::Resource, fmt::format("{} orbitals exceeds the FCI oracle limit of {}", n, kMaxFciOrbitals));
  const int ni = static_cast<int>(n);
  if (sector.n_alpha < 0 || sector.n_beta < 0 || sector.n_alpha > ni || sector.n_beta > ni)
    fail(ErrorKind::Usage, "sector does not fit the orbital space");
  const auto alphas = strings_with(ni, sector.n_alpha);
  const auto betas = strings_with(ni, sector.n_beta);
  std::vector<std::uint64_t> dets;
  for (auto a : alphas)
    for (auto b : betas) dets.push_back(a | (b << n));

  const SpinIntegrals ints{ni, mo};
  const auto dim = static_cast<Eigen::Index>(dets.size());
  Eigen::MatrixXd hm(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = slater_condon(ints, dets[static_cast<std::size_t>(i)], dets[static_cast<std::size_t>(j)], 2 * ni);
      hm(i, j) = hm(j, i) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0) + mo.e_core;
}

double fci_determinant_oracle(const MOIntegrals& mo) {
  return fci_determinant_oracle(mo, Sector::closed_shell(mo.n_electrons));
}

double fci_all_sectors(const MOIntegrals& mo) {
  const int n = static_cast<int>(mo.n_orbitals);
  double best = mo.e_core;  // vacuum
  for (int na = 0; na <= n; ++na)
    for (int nb = 0; nb <= n; ++nb) {
      if (na + nb == 0) continue;
      best = std::min(best, fci_determinant_oracle(mo, {na, nb}));
    }
  return best;
}

}  // namespace gsbench
