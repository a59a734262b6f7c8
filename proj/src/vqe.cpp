#include "gsbench/vqe.hpp"

#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "gsbench/errors.hpp"

namespace gsbench {

double ansatz_energy(const Ansatz& a, const PauliSum& h, std::span<const double> theta) {
  return expectation(run_circuit(a.circuit, theta), h);
}

std::vector<double> parameter_shift_gradient(const Ansatz& a, const PauliSum& h, std::span<const double> theta) {
  constexpr double kShift = std::numbers::pi / 2.0;
  std::vector<double> grad(static_cast<std::size_t>(a.circuit.parameter_count()), 0.0);
  const auto& gates = a.circuit.gates();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const Gate& g = gates[k];
    if (!g.parameterized()) continue;
    const double plus = expectation(run_circuit(a.circuit, theta, static_cast<int>(k), kShift), h);
    const double minus = expectation(run_circuit(a.circuit, theta, static_cast<int>(k), -kShift), h);
    grad[static_cast<std::size_t>(g.slot)] += g.scale * 0.5 * (plus - minus);
  }
  return grad;
}

VQEResult vqe_solve(const PauliSum& h, const Ansatz& a, const VQEConfig& config) {
  if (h.n_qubits != a.circuit.n_qubits())
    fail(ErrorKind::Usage,
         fmt::format("Hamiltonian has {} qubits, ansatz has {}", h.n_qubits, a.circuit.n_qubits()));

  VQEResult result;
  double best = std::numeric_limits<double>::infinity();
  auto energy = [&](std::span<const double> theta) {
    const double e = ansatz_energy(a, h, theta);
    best = std::min(best, e);
    result.history.push_back(best);
    if (config.progress) fmt::print(*config.progress, "eval {} E={:.12f}\n", result.history.size(), e);
    return e;
  };

  const std::vector<double> theta0(static_cast<std::size_t>(a.parameter_count), 0.0);

  const bool identity_only =
      std::all_of(h.terms.begin(), h.terms.end(), [](const PauliTerm& t) { return t.is_identity(); });
  if (identity_only) {
    result.energy = energy(theta0);
    result.parameters = theta0;
    result.evaluations = 1;
    result.converged = true;
    return result;
  }

  const Gradient gradient = [&](std::span<const double> theta, int& cost) {
    int shifted = 0;
    for (const auto& g : a.circuit.gates())
      if (g.parameterized()) shifted += 2;
    cost = shifted;
    return parameter_shift_gradient(a, h, theta);
  };
  const auto opt = minimize(energy, theta0, config.optimizer, gradient);
  result.energy = opt.value;
  result.parameters = opt.x;
  result.evaluations = opt.evaluations;
  result.converged = opt.converged;
  return result;
}

}  // namespace gsbench
