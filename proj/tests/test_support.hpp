#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsbench/exact.hpp"
#include "gsbench/fermion.hpp"
#include "gsbench/integrals.hpp"
#include "gsbench/integrals_io.hpp"
#include "gsbench/pauli.hpp"
#include "gsbench/scf.hpp"

namespace testing {

using gsbench::cplx;

inline std::string data_path(const std::string& rel) { return std::string(GSBENCH_DATA_DIR) + "/" + rel; }

struct Pipeline {
  gsbench::AOIntegrals ao;
  gsbench::SCFResult scf;
  gsbench::MOIntegrals mo;
  gsbench::FermionOperator fop;
  gsbench::PauliSum h;
};

inline Pipeline run_pipeline(const gsbench::Geometry& g, const std::string& basis = "sto-3g") {
  Pipeline p;
  p.ao = gsbench::build_ao_integrals(g, gsbench::assign_basis(g, gsbench::load_basis(basis)));
  p.scf = gsbench::scf_solve(p.ao);
  p.mo = gsbench::ao_to_mo(p.ao, p.scf.mo_coefficients);
  p.fop = gsbench::build_fermionic_hamiltonian(p.mo);
  p.h = gsbench::real_part_checked(gsbench::jordan_wigner(p.fop));
  return p;
}

inline Pipeline h2(double angstrom) { return run_pipeline(gsbench::diatomic("H", "H", angstrom)); }
inline Pipeline heh_plus(double angstrom) { return run_pipeline(gsbench::diatomic("He", "H", angstrom, 1)); }

/// Random MO integrals with full 8-fold symmetry (real orbitals).
inline gsbench::MOIntegrals random_mo(std::size_t n, int n_electrons, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  auto mo = gsbench::MOIntegrals::zeros(n, n_electrons);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) mo.h(p, q) = mo.h(q, p) = u(rng);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (r == p && s > q) continue;
          mo.g.set_symmetric(p, q, r, s, 0.5 * u(rng));
        }
  mo.e_core = u(rng);
  return mo;
}

/// Dense matrices built from explicit Kronecker products (qubit 0 is the
/// least significant index bit), independent of the library's Pauli code.
inline Eigen::MatrixXcd kron_pauli(const std::string& pattern) {
  using M = Eigen::Matrix2cd;
  const cplx i(0.0, 1.0);
  M id = M::Identity(), x, y, z;
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : pattern) {  // qubit 0 first -> least significant, so it ends up rightmost
    const M& m = c == 'X' ? x : c == 'Y' ? y : c == 'Z' ? z : id;
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index a = 0; a < 2; ++a)
      for (Eigen::Index b = 0; b < 2; ++b) next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = m(a, b) * out;
    out = next;
  }
  return out;
}

inline Eigen::MatrixXcd kron_dense(const gsbench::PauliSum& s) {
  const auto dim = Eigen::Index{1} << s.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : s.terms) m += t.coefficient * kron_pauli(t.pattern(s.n_qubits));
  return m;
}

/// Jordan-Wigner ladder operators as explicit matrices.
inline Eigen::MatrixXcd dense_annihilator(int p, int n) {
  const auto dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    if (!((s >> p) & 1U)) continue;
    int below = 0;
    for (int k = 0; k < p; ++k) below += static_cast<int>((s >> k) & 1U);
    m(static_cast<Eigen::Index>(s ^ (std::size_t{1} << p)), static_cast<Eigen::Index>(s)) = below % 2 ? -1.0 : 1.0;
  }
  return m;
}

/// Dense Fock-space matrix of a FermionOperator, built by acting with each
/// term's ladder operators on occupation bitstrings.
inline Eigen::MatrixXcd dense_fermion(const gsbench::FermionOperator& op) {
  const int n = op.n_modes;
  const auto dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = op.constant * Eigen::MatrixXcd::Identity(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (const auto& t : op.terms) {
      auto state = static_cast<std::uint64_t>(col);
      double sign = 1.0;
      bool alive = true;
      for (auto f = t.factors.rbegin(); f != t.factors.rend() && alive; ++f) {
        const std::uint64_t bit = std::uint64_t{1} << f->mode;
        if (static_cast<bool>(state & bit) == f->creation) {
          alive = false;
          break;
        }
        if (std::popcount(state & (bit - 1)) % 2) sign = -sign;
        state ^= bit;
      }
      if (alive) m(static_cast<Eigen::Index>(state), col) += sign * t.coefficient;
    }
  }
  return m;
}

/// Sector-restricted lowest eigenvalue of a dense Fock-space matrix
/// (blocked spin ordering).
inline double sector_min(const Eigen::MatrixXcd& m, int n_modes, int n_alpha, int n_beta) {
  const int half = n_modes / 2;
  std::vector<Eigen::Index> idx;
  for (Eigen::Index s = 0; s < m.rows(); ++s) {
    int a = 0, b = 0;
    for (int k = 0; k < half; ++k) a += static_cast<int>((s >> k) & 1);
    for (int k = half; k < n_modes; ++k) b += static_cast<int>((s >> k) & 1);
    if (a == n_alpha && b == n_beta) idx.push_back(s);
  }
  Eigen::MatrixXcd block(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(idx[i], idx[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block);
  return eig.eigenvalues()(0);
}

}  // namespace testing
