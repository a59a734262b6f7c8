#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gsbench {

enum class OptimizerMethod { NelderMead, SPSA, GradientDescent };

OptimizerMethod parse_optimizer(const std::string& name);  // nm|nelder_mead|spsa|gd|gradient_descent
std::string to_string(OptimizerMethod m);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::NelderMead;
  /// Objective evaluations allowed (gradient evaluations count too).
  int max_evaluations = 2000;
  std::uint64_t seed = 0;

  // Nelder-Mead
  double simplex_step = 0.1;
  double spread_tolerance = 1e-9;
  /// A symmetric simplex can straddle a minimum with equal values, so the
  /// vertices must also lie this close to the best one.
  double simplex_tolerance = 1e-8;

  // SPSA; a negative stability constant means 0.1 * max_evaluations.
  double spsa_a = 0.1;
  double spsa_c = 0.1;
  double spsa_stability = -1.0;

  // Gradient descent
  double learning_rate = 0.1;
  double gradient_tolerance = 1e-6;
};

using Objective = std::function<double(std::span<const double>)>;
/// Returns the gradient and the number of objective-equivalent evaluations it
/// cost.
using Gradient = std::function<std::vector<double>(std::span<const double>, int& evaluations)>;

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Deterministic for fixed (objective, x0, config). Gradient descent uses
/// `gradient` when given, otherwise central differences with step 1e-6.
OptimizeResult minimize(const Objective& objective, std::vector<double> x0, const OptimizerConfig& config,
                        const Gradient& gradient = {});

}  // namespace gsbench
