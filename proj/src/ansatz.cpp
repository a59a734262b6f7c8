#include "gsbench/ansatz.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_closed_shell(int n_qubits, int n_electrons) {
  if (n_qubits < 0) fail(ErrorKind::Usage, "negative qubit count");
  if (n_electrons > 0 && n_qubits % 2 != 0) fail(ErrorKind::Usage, "blocked ordering needs an even qubit count");
  if (n_electrons < 0 || n_electrons % 2 != 0)
    fail(ErrorKind::Usage, fmt::format("reference state needs an even electron count (got {})", n_electrons));
  if (n_electrons > n_qubits) fail(ErrorKind::Usage, "more electrons than spin orbitals");
}

FermionOperator excitation_generator(const Excitation& ex, int n_modes) {
  FermionTerm t{cplx(1.0, 0.0), {}};
  for (int p : ex.to) t.factors.push_back({p, true});
  for (auto it = ex.from.rbegin(); it != ex.from.rend(); ++it) t.factors.push_back({*it, false});
  FermionTerm adj = t.adjoint();
  adj.coefficient = -adj.coefficient;
  FermionOperator g;
  g.n_modes = n_modes;
  g.terms = {t, adj};
  return g;
}

}  // namespace

std::string Ansatz::describe() const {
  if (kind == AnsatzKind::HardwareEfficient) return fmt::format("hea(depth={})", depth);
  return fmt::format("uccsd({} excitations)", excitations.size());
}

Circuit hf_reference_circuit(int n_qubits, int n_electrons) {
  check_closed_shell(n_qubits, n_electrons);
  Circuit c(n_qubits);
  const int half = n_qubits / 2, occ = n_electrons / 2;
  for (int i = 0; i < occ; ++i) c.x(i);
  for (int i = 0; i < occ; ++i) c.x(half + i);
  return c;
}

Ansatz hardware_efficient_ansatz(int n_qubits, int n_electrons, int depth) {
  if (depth < 0) fail(ErrorKind::Usage, "ansatz depth must be non-negative");
  Ansatz a;
  a.kind = AnsatzKind::HardwareEfficient;
  a.depth = depth;
  a.circuit = hf_reference_circuit(n_qubits, n_electrons);
  int slot = 0;
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q < n_qubits; ++q) a.circuit.ry_param(q, slot++);
    for (int q = 0; q + 1 < n_qubits; ++q) a.circuit.cz(q, q + 1);
  }
  for (int q = 0; q < n_qubits; ++q) a.circuit.ry_param(q, slot++);
  a.parameter_count = slot;
  return a;
}

std::vector<Excitation> uccsd_excitations(int n_qubits, int n_electrons) {
  check_closed_shell(n_qubits, n_electrons);
  const int n = n_qubits / 2, occ = n_electrons / 2;
  if (occ == n) fail(ErrorKind::Usage, "no virtual orbitals to excite into");
  std::vector<Excitation> out;
  // Singles within each spin block.
  for (int spin = 0; spin < 2; ++spin)
    for (int i = 0; i < occ; ++i)
      for (int a = occ; a < n; ++a) out.push_back({{spin * n + i}, {spin * n + a}});
  // Same-spin doubles.
  for (int spin = 0; spin < 2; ++spin)
    for (int i = 0; i < occ; ++i)
      for (int j = i + 1; j < occ; ++j)
        for (int a = occ; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            out.push_back({{spin * n + i, spin * n + j}, {spin * n + a, spin * n + b}});
  // Opposite-spin doubles (alpha i, beta j) -> (alpha a, beta b).
  for (int i = 0; i < occ; ++i)
    for (int j = 0; j < occ; ++j)
      for (int a = occ; a < n; ++a)
        for (int b = occ; b < n; ++b) out.push_back({{i, n + j}, {a, n + b}});
  return out;
}

void append_pauli_rotation(Circuit& c, const PauliTerm& p, int slot, double scale) {
  std::vector<int> support;
  for (std::uint64_t m = p.x_mask | p.z_mask; m; m &= m - 1) support.push_back(std::countr_zero(m));
  if (support.empty()) return;  // global phase
  for (int q : support) {
    const Pauli l = p.letter(q);
    if (l == Pauli::X) {
      c.ry(q, -kHalfPi);
    } else if (l == Pauli::Y) {
      c.rz(q, -kHalfPi);
      c.ry(q, -kHalfPi);
    }
  }
  for (std::size_t k = 0; k + 1 < support.size(); ++k) c.cnot(support[k], support[k + 1]);
  c.rz_param(support.back(), slot, scale);
  for (std::size_t k = support.size() - 1; k-- > 0;) c.cnot(support[k], support[k + 1]);
  for (int q : support) {
    const Pauli l = p.letter(q);
    if (l == Pauli::X) {
      c.ry(q, kHalfPi);
    } else if (l == Pauli::Y) {
      c.ry(q, kHalfPi);
      c.rz(q, kHalfPi);
    }
  }
}

Ansatz uccsd_ansatz(int n_qubits, int n_electrons) {
  Ansatz a;
  a.kind = AnsatzKind::UCCSD;
  a.excitations = uccsd_excitations(n_qubits, n_electrons);
  a.circuit = hf_reference_circuit(n_qubits, n_electrons);
  for (std::size_t k = 0; k < a.excitations.size(); ++k) {
    // JW(T - T^dagger) = sum_j i b_j P_j, and exp(i theta b P) is a
    // rotation by angle -2 b theta.
    const PauliSum gen = jordan_wigner(excitation_generator(a.excitations[k], n_qubits));
    for (const auto& t : gen.terms) {
      if (std::abs(t.coefficient.real()) > 1e-12)
        fail(ErrorKind::Computation, "excitation generator is not anti-Hermitian");
      append_pauli_rotation(a.circuit, t, static_cast<int>(k), -2.0 * t.coefficient.imag());
    }
  }
  a.parameter_count = static_cast<int>(a.excitations.size());
  return a;
}

}  // namespace gsbench
