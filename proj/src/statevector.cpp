#include "gsbench/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/core.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0) fail(ErrorKind::Usage, "negative qubit count");
  if (n_qubits > kMaxSimulatorQubits)
    fail(ErrorKind::Resource, fmt::format("{} qubits exceeds the simulator limit of {}", n_qubits, kMaxSimulatorQubits));
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void Statevector::check(int q) const {
  if (q < 0 || q >= n_qubits_) fail(ErrorKind::Usage, fmt::format("qubit {} out of range for {} qubits", q, n_qubits_));
}

void Statevector::apply_x(int q) {
  check(q);
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) std::swap(amps_[i], amps_[i + stride]);
}

void Statevector::apply_ry(int q, double theta) {
  check(q);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amps_[i], a1 = amps_[i + stride];
      amps_[i] = c * a0 - s * a1;
      amps_[i + stride] = s * a0 + c * a1;
    }
}

void Statevector::apply_rz(int q, double theta) {
  check(q);
  const cplx p0 = std::polar(1.0, -theta / 2.0), p1 = std::polar(1.0, theta / 2.0);
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      amps_[i] *= p0;
      amps_[i + stride] *= p1;
    }
}

void Statevector::apply_cnot(int control, int target) {
  check(control);
  check(target);
  if (control == target) fail(ErrorKind::Usage, "CNOT control equals target");
  const std::size_t cbit = std::size_t{1} << control, tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
}

void Statevector::apply_cz(int a, int b) {
  check(a);
  check(b);
  if (a == b) fail(ErrorKind::Usage, "CZ on a single qubit");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if ((i & mask) == mask) amps_[i] = -amps_[i];
}

Circuit& Circuit::push(Gate g) {
  auto check = [this](int q) {
    if (q < 0 || q >= n_qubits_) fail(ErrorKind::Usage, fmt::format("gate qubit {} out of range", q));
  };
  check(g.q0);
  if (g.kind == GateKind::CNOT || g.kind == GateKind::CZ) {
    check(g.q1);
    if (g.q0 == g.q1) fail(ErrorKind::Usage, "two-qubit gate on a single qubit");
  }
  if (g.slot >= 0) parameter_count_ = std::max(parameter_count_, g.slot + 1);
  gates_.push_back(g);
  return *this;
}

Circuit& Circuit::x(int q) { return push({GateKind::X, q}); }
Circuit& Circuit::ry(int q, double angle) { return push({GateKind::RY, q, -1, angle}); }
Circuit& Circuit::rz(int q, double angle) { return push({GateKind::RZ, q, -1, angle}); }
Circuit& Circuit::ry_param(int q, int slot, double scale) { return push({GateKind::RY, q, -1, 0.0, slot, scale}); }
Circuit& Circuit::rz_param(int q, int slot, double scale) { return push({GateKind::RZ, q, -1, 0.0, slot, scale}); }
Circuit& Circuit::cnot(int control, int target) { return push({GateKind::CNOT, control, target}); }
Circuit& Circuit::cz(int a, int b) { return push({GateKind::CZ, a, b}); }

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_) fail(ErrorKind::Usage, "appended circuit is wider");
  for (const auto& g : other.gates_) push(g);
  return *this;
}

Statevector run_circuit(const Circuit& c, std::span<const double> theta, int shifted_gate, double shift) {
  if (theta.size() != static_cast<std::size_t>(c.parameter_count()))
    fail(ErrorKind::Usage,
         fmt::format("circuit takes {} parameters, got {}", c.parameter_count(), theta.size()));
  Statevector psi(c.n_qubits());
  const auto& gates = c.gates();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const Gate& g = gates[k];
    double angle = g.angle;
    if (g.parameterized()) angle += g.scale * theta[static_cast<std::size_t>(g.slot)];
    if (static_cast<int>(k) == shifted_gate) angle += shift;
    switch (g.kind) {
      case GateKind::X: psi.apply_x(g.q0); break;
      case GateKind::RY: psi.apply_ry(g.q0, angle); break;
      case GateKind::RZ: psi.apply_rz(g.q0, angle); break;
      case GateKind::CNOT: psi.apply_cnot(g.q0, g.q1); break;
      case GateKind::CZ: psi.apply_cz(g.q0, g.q1); break;
    }
  }
  return psi;
}

cplx expectation_term(const Statevector& psi, const PauliTerm& t) {
  // P|i> = i^{#Y} (-1)^{|i & z|} |i ^ x>
  const std::uint64_t x = t.x_mask, z = t.z_mask;
  if (((x | z) >> psi.n_qubits()) != 0) fail(ErrorKind::Usage, "Pauli term acts outside the register");
  const auto amps = psi.amplitudes();
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const cplx v = std::conj(amps[i ^ x]) * amps[i];
    acc += (std::popcount(i & z) % 2) ? -v : v;
  }
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return t.coefficient * kIPow[std::popcount(x & z) % 4] * acc;
}

double expectation(const Statevector& psi, const PauliSum& h) {
  if (h.n_qubits != psi.n_qubits())
    fail(ErrorKind::Usage, fmt::format("Hamiltonian has {} qubits, state has {}", h.n_qubits, psi.n_qubits()));
  cplx e{0.0, 0.0};
  // States are normalized, so identity terms contribute their coefficient as is.
  for (const auto& t : h.terms) e += t.is_identity() ? t.coefficient : expectation_term(psi, t);
  if (std::abs(e.imag()) > 1e-10)
    fail(ErrorKind::Computation, fmt::format("expectation has imaginary residual {:.3e}", e.imag()));
  return e.real();
}

SampledEstimate sample_expectation_detailed(const Statevector& psi, const PauliSum& h, std::uint64_t shots,
                                            std::uint64_t seed) {
  if (shots < 1) fail(ErrorKind::Usage, "need at least one shot");
  if (h.n_qubits != psi.n_qubits()) fail(ErrorKind::Usage, "qubit count mismatch");
  std::mt19937_64 rng(seed);
  SampledEstimate out;
  double variance = 0.0;
  std::vector<double> cumulative(psi.dim());
  for (const auto& group : qwc_group(h)) {
    // Shared measurement basis of the group.
    std::uint64_t x_basis = 0, z_basis = 0;
    for (const auto& t : group) {
      x_basis |= t.x_mask;
      z_basis |= t.z_mask;
    }
    if (x_basis == 0 && z_basis == 0) {
      for (const auto& t : group) out.value += t.coefficient.real();
      continue;
    }
    Statevector phi = psi;
    for (int q = 0; q < psi.n_qubits(); ++q) {
      const bool xq = (x_basis >> q) & 1U, zq = (z_basis >> q) & 1U;
      if (xq && zq) {
        phi.apply_rz(q, -kHalfPi);
        phi.apply_ry(q, -kHalfPi);
      } else if (xq) {
        phi.apply_ry(q, -kHalfPi);
      }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < phi.dim(); ++i) {
      total += std::norm(phi[i]);
      cumulative[i] = total;
    }
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t s = 0; s < shots; ++s) {
      const double u = uniform01(rng) * total;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      const std::size_t outcome =
          std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), phi.dim() - 1);
      double shot_value = 0.0;
      for (const auto& t : group) {
        const int parity = std::popcount(outcome & (t.x_mask | t.z_mask)) % 2;
        shot_value += t.coefficient.real() * (parity ? -1.0 : 1.0);
      }
      sum += shot_value;
      sum_sq += shot_value * shot_value;
    }
    const double n = static_cast<double>(shots);
    const double mean = sum / n;
    out.value += mean;
    if (shots > 1) variance += std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) / n;
  }
  out.standard_error = std::sqrt(variance);
  return out;
}

double sample_expectation(const Statevector& psi, const PauliSum& h, std::uint64_t shots, std::uint64_t seed) {
  return sample_expectation_detailed(psi, h, shots, seed).value;
}

}  // namespace gsbench
