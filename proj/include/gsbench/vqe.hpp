#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "gsbench/ansatz.hpp"
#include "gsbench/optimize.hpp"
#include "gsbench/pauli.hpp"

namespace gsbench {

struct VQEConfig {
  OptimizerConfig optimizer;
  /// Receives `eval <k> E=<energy>` lines.
  std::ostream* progress = nullptr;
};

struct VQEResult {
  double energy = 0.0;
  std::vector<double> parameters;
  int evaluations = 0;
  /// Best energy so far after each objective evaluation.
  std::vector<double> history;
  bool converged = false;

  friend bool operator==(const VQEResult&, const VQEResult&) = default;
};

double ansatz_energy(const Ansatz& a, const PauliSum& h, std::span<const double> theta);

/// dE/dtheta_k = sum over gates g using slot k of
/// scale_g * (E(angle_g + pi/2) - E(angle_g - pi/2)) / 2.
std::vector<double> parameter_shift_gradient(const Ansatz& a, const PauliSum& h, std::span<const double> theta);

/// Minimizes <psi(theta)|h|psi(theta)> starting from theta = 0.
VQEResult vqe_solve(const PauliSum& h, const Ansatz& a, const VQEConfig& config = {});

}  // namespace gsbench
