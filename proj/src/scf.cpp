#include "gsbench/scf.hpp"

#include <cmath>
#include <ostream>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

Eigen::MatrixXd build_fock(const AOIntegrals& ao, const Eigen::MatrixXd& d) {
  const std::size_t n = ao.n_ao;
  Eigen::MatrixXd f = ao.core_hamiltonian;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      double g = 0.0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) g += d(r, s) * (ao.eri(p, q, r, s) - 0.5 * ao.eri(p, r, q, s));
      f(p, q) += g;
      if (p != q) f(q, p) += g;
    }
  return f;
}

struct Orbitals {
  Eigen::MatrixXd c;
  Eigen::VectorXd e;
};

Orbitals diagonalize(const Eigen::MatrixXd& f, const Eigen::MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x.transpose() * f * x);
  return {x * eig.eigenvectors(), eig.eigenvalues()};
}

Eigen::MatrixXd density_from(const Eigen::MatrixXd& c, int n_occ) {
  const auto occ = c.leftCols(n_occ);
  return 2.0 * occ * occ.transpose();
}

}  // namespace

DIISHistory::DIISHistory(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) fail(ErrorKind::Usage, "DIIS capacity must be positive");
}

void DIISHistory::push(Eigen::MatrixXd fock, Eigen::MatrixXd error) {
  if (fock.rows() != error.rows() || fock.cols() != error.cols())
    fail(ErrorKind::Usage, "DIIS error matrix must match the Fock matrix shape");
  if (!focks_.empty() && (fock.rows() != focks_.front().rows() || fock.cols() != focks_.front().cols()))
    fail(ErrorKind::Usage, "DIIS entries must share one shape");
  if (focks_.size() == capacity_) drop_oldest();
  focks_.push_back(std::move(fock));
  errors_.push_back(std::move(error));
}

void DIISHistory::drop_oldest() {
  if (focks_.empty()) return;
  focks_.pop_front();
  errors_.pop_front();
}

DIISResult diis_extrapolate(const DIISHistory& history) {
  if (history.empty()) fail(ErrorKind::Usage, "DIIS extrapolation needs at least one entry");
  const std::size_t total = history.size();
  for (std::size_t first = 0; first < total; ++first) {
    const std::size_t m = total - first;
    Eigen::VectorXd coeff(m);
    if (m == 1) {
      coeff(0) = 1.0;
    } else {
      Eigen::MatrixXd b(m + 1, m + 1);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j)
          b(i, j) = b(j, i) = history.error(first + i).cwiseProduct(history.error(first + j)).sum();
      // Rescale so the solve is insensitive to the overall error magnitude.
      const double scale = b.topLeftCorner(m, m).diagonal().maxCoeff();
      if (!(scale > 0.0)) {
        // All residuals vanish; the latest Fock matrix is already converged.
        DIISResult r{history.fock(total - 1), Eigen::VectorXd::Zero(total)};
        r.coefficients(total - 1) = 1.0;
        return r;
      }
      b.topLeftCorner(m, m) /= scale;
      b.row(m).setConstant(-1.0);
      b.col(m).setConstant(-1.0);
      b(m, m) = 0.0;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
      rhs(m) = -1.0;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
      lu.setThreshold(1e-12);
      if (!lu.isInvertible()) continue;
      coeff = lu.solve(rhs).head(m);
    }
    DIISResult r{Eigen::MatrixXd::Zero(history.fock(0).rows(), history.fock(0).cols()),
                 Eigen::VectorXd::Zero(total)};
    for (std::size_t i = 0; i < m; ++i) {
      r.fock += coeff(i) * history.fock(first + i);
      r.coefficients(first + i) = coeff(i);
    }
    return r;
  }
  // unreachable: a single entry always succeeds
  fail(ErrorKind::Computation, "DIIS extrapolation failed");
}

SCFResult scf_solve(const AOIntegrals& ao, const SCFOptions& options) {
  const std::size_t n = ao.n_ao;
  if (n == 0) fail(ErrorKind::Usage, "empty basis");
  if (ao.n_electrons % 2 != 0)
    fail(ErrorKind::Usage, fmt::format("restricted HF needs an even electron count (got {})", ao.n_electrons));
  if (ao.n_electrons < 0 || static_cast<std::size_t>(ao.n_electrons) > 2 * n)
    fail(ErrorKind::Usage, "more electrons than the basis can hold");
  const int n_occ = ao.n_electrons / 2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(ao.overlap);
  const double s_min = s_eig.eigenvalues().minCoeff();
  if (!(s_min > 1e-10))
    fail(ErrorKind::LinearDependence, fmt::format("overlap matrix is not positive definite (min eigenvalue {:.3e})", s_min));
  const Eigen::MatrixXd x =
      s_eig.eigenvectors() * s_eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * s_eig.eigenvectors().transpose();

  Orbitals orb = diagonalize(ao.core_hamiltonian, x);
  Eigen::MatrixXd d = density_from(orb.c, n_occ);

  SCFResult result;
  DIISHistory diis(options.diis_capacity);
  double e_prev = 0.0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::MatrixXd f = build_fock(ao, d);
    const double energy = 0.5 * d.cwiseProduct(ao.core_hamiltonian + f).sum() + ao.e_nuclear;
    const Eigen::MatrixXd fds = f * d * ao.overlap;
    const Eigen::MatrixXd err = x.transpose() * (fds - fds.transpose()) * x;
    const double err_norm = n == 0 ? 0.0 : err.cwiseAbs().maxCoeff();
    const double de = iter == 1 ? energy : energy - e_prev;

    if (options.log)
      fmt::print(*options.log, "iter {} E={:.12f} dE={:.3e} err={:.3e}\n", iter, energy, de, err_norm);

    result.energy_history.push_back(energy);
    result.iterations = iter;
    result.e_hf = energy;
    result.density = d;
    result.mo_coefficients = orb.c;
    result.orbital_energies = orb.e;

    if (iter > 1 && std::abs(de) <= options.energy_tolerance && err_norm <= options.error_tolerance) {
      result.converged = true;
      // Report orbitals that diagonalize the converged Fock matrix.
      Orbitals final_orb = diagonalize(f, x);
      result.mo_coefficients = final_orb.c;
      result.orbital_energies = final_orb.e;
      break;
    }
    e_prev = energy;

    diis.push(f, err);
    orb = diagonalize(diis_extrapolate(diis).fock, x);
    d = density_from(orb.c, n_occ);
  }
  return result;
}

MOIntegrals ao_to_mo(const AOIntegrals& ao, const Eigen::MatrixXd& c) {
  const auto n = static_cast<Eigen::Index>(ao.n_ao);
  if (c.rows() != n || c.cols() < 1 || c.cols() > n)
    fail(ErrorKind::Usage, fmt::format("MO coefficients are {}x{}, basis has {} functions", c.rows(), c.cols(), n));
  const std::size_t m = static_cast<std::size_t>(c.cols());
  const std::size_t na = ao.n_ao;

  MOIntegrals mo;
  mo.n_orbitals = m;
  mo.n_electrons = ao.n_electrons;
  mo.e_core = ao.e_nuclear;
  mo.h = c.transpose() * ao.core_hamiltonian * c;

  // (pq|rs) -> (iq|rs) -> (ij|rs) -> (ij|ks) -> (ij|kl), one index per pass.
  std::vector<double> t1(m * na * na * na, 0.0), t2(m * m * na * na, 0.0), t3(m * m * m * na, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < na; ++p) {
      const double cpi = c(p, i);
      if (cpi == 0.0) continue;
      for (std::size_t q = 0; q < na; ++q)
        for (std::size_t r = 0; r < na; ++r)
          for (std::size_t s = 0; s < na; ++s) t1[((i * na + q) * na + r) * na + s] += cpi * ao.eri(p, q, r, s);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t q = 0; q < na; ++q) {
        const double cqj = c(q, j);
        if (cqj == 0.0) continue;
        for (std::size_t r = 0; r < na; ++r)
          for (std::size_t s = 0; s < na; ++s)
            t2[((i * m + j) * na + r) * na + s] += cqj * t1[((i * na + q) * na + r) * na + s];
      }
  for (std::size_t ij = 0; ij < m * m; ++ij)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t r = 0; r < na; ++r) {
        const double crk = c(r, k);
        if (crk == 0.0) continue;
        for (std::size_t s = 0; s < na; ++s) t3[(ij * m + k) * na + s] += crk * t2[(ij * na + r) * na + s];
      }
  mo.g = EriTensor(m);
  auto& g = mo.g.data();
  for (std::size_t ijk = 0; ijk < m * m * m; ++ijk)
    for (std::size_t l = 0; l < m; ++l) {
      double v = 0.0;
      for (std::size_t s = 0; s < na; ++s) v += c(s, l) * t3[ijk * na + s];
      g[ijk * m + l] = v;
    }
  mo.h = 0.5 * (mo.h + mo.h.transpose()).eval();
  return mo;
}

}  // namespace gsbench
