#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gsbench/pauli.hpp"

namespace gsbench {

inline constexpr int kMaxSimulatorQubits = 24;

/// 2^n amplitudes; bit k of the basis index is qubit k (qubit 0 least
/// significant).
class Statevector {
 public:
  explicit Statevector(int n_qubits);  // |0...0>

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  double norm() const;

  void apply_x(int q);
  void apply_ry(int q, double theta);
  void apply_rz(int q, double theta);
  void apply_cnot(int control, int target);
  void apply_cz(int a, int b);

  friend bool operator==(const Statevector&, const Statevector&) = default;

 private:
  void check(int q) const;

  int n_qubits_;
  std::vector<cplx> amps_;
};

enum class GateKind : std::uint8_t { X, RY, RZ, CNOT, CZ };

/// Rotation angle is `angle + scale * theta[slot]` when slot >= 0, otherwise
/// the fixed `angle`.
struct Gate {
  GateKind kind = GateKind::X;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;
  int slot = -1;
  double scale = 1.0;

  bool parameterized() const noexcept { return slot >= 0; }
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  /// One past the largest slot referenced.
  int parameter_count() const noexcept { return parameter_count_; }

  Circuit& x(int q);
  Circuit& ry(int q, double angle);
  Circuit& rz(int q, double angle);
  Circuit& ry_param(int q, int slot, double scale = 1.0);
  Circuit& rz_param(int q, int slot, double scale = 1.0);
  Circuit& cnot(int control, int target);
  Circuit& cz(int a, int b);
  Circuit& append(const Circuit& other);

 private:
  Circuit& push(Gate g);

  int n_qubits_ = 0;
  int parameter_count_ = 0;
  std::vector<Gate> gates_;
};

/// Runs from |0...0>. `shift` is added to the angle of gate `shifted_gate`
/// (used by the parameter-shift rule); pass -1 for none.
Statevector run_circuit(const Circuit& c, std::span<const double> theta, int shifted_gate = -1,
                        double shift = 0.0);

/// Sum of c <psi|P|psi> over terms in their stored order, without building
/// matrices. Throws Computation when the imaginary residual exceeds 1e-10.
double expectation(const Statevector& psi, const PauliSum& h);
cplx expectation_term(const Statevector& psi, const PauliTerm& t);

struct SampledEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Shot-based estimate: each qubit-wise commuting group is rotated to a
/// shared product basis and sampled `shots` times from one seeded
/// mt19937_64 stream.
SampledEstimate sample_expectation_detailed(const Statevector& psi, const PauliSum& h, std::uint64_t shots,
                                            std::uint64_t seed);
double sample_expectation(const Statevector& psi, const PauliSum& h, std::uint64_t shots, std::uint64_t seed);

}  // namespace gsbench
