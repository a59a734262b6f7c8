#pragma once

#include <deque>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "gsbench/integrals.hpp"
#include "gsbench/integrals_io.hpp"

namespace gsbench {

struct SCFOptions {
  double energy_tolerance = 1e-10;
  double error_tolerance = 1e-8;
  int max_iterations = 200;
  std::size_t diis_capacity = 8;
  /// Receives `iter <k> E=<energy> dE=<delta> err=<diis-norm>` lines.
  std::ostream* log = nullptr;
};

struct SCFResult {
  Eigen::MatrixXd mo_coefficients;
  Eigen::VectorXd orbital_energies;
  Eigen::MatrixXd density;
  double e_hf = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Total energy after each iteration.
  std::vector<double> energy_history;
};

/// Bounded window of (Fock, error) pairs; the oldest entry is evicted.
class DIISHistory {
 public:
  explicit DIISHistory(std::size_t capacity = 8);

  void push(Eigen::MatrixXd fock, Eigen::MatrixXd error);
  void drop_oldest();

  std::size_t size() const noexcept { return focks_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return focks_.empty(); }
  const Eigen::MatrixXd& fock(std::size_t i) const { return focks_[i]; }
  const Eigen::MatrixXd& error(std::size_t i) const { return errors_[i]; }

 private:
  std::size_t capacity_;
  std::deque<Eigen::MatrixXd> focks_;
  std::deque<Eigen::MatrixXd> errors_;
};

struct DIISResult {
  Eigen::MatrixXd fock;
  /// One weight per retained entry (oldest first); entries dropped because
  /// the system was singular get weight 0.
  Eigen::VectorXd coefficients;
};

DIISResult diis_extrapolate(const DIISHistory& history);

SCFResult scf_solve(const AOIntegrals& ao, const SCFOptions& options = {});

/// h = C^T Hcore C and the quarter-by-quarter n^5 transform of (pq|rs).
MOIntegrals ao_to_mo(const AOIntegrals& ao, const Eigen::MatrixXd& c);

}  // namespace gsbench
