#pragma once

#include <string>
#include <vector>

#include "gsbench/fermion.hpp"
#include "gsbench/pauli.hpp"
#include "gsbench/statevector.hpp"

namespace gsbench {

enum class AnsatzKind { HardwareEfficient, UCCSD };

/// Spin-orbital excitation: `from` orbitals emptied, `to` orbitals filled.
struct Excitation {
  std::vector<int> from;
  std::vector<int> to;
};

struct Ansatz {
  AnsatzKind kind = AnsatzKind::HardwareEfficient;
  Circuit circuit;
  int parameter_count = 0;
  int depth = 0;                        // hardware-efficient only
  std::vector<Excitation> excitations;  // UCCSD only

  std::string describe() const;
};

/// X on the occupied alpha prefix 0..n_e/2-1 and beta prefix n/2..n/2+n_e/2-1.
Circuit hf_reference_circuit(int n_qubits, int n_electrons);

/// HF prefix, `depth` x [RY layer, CZ chain], final RY layer.
Ansatz hardware_efficient_ansatz(int n_qubits, int n_electrons, int depth);

/// Spin-conserving singles and doubles in blocked ordering, one parameter per
/// excitation, each exp(theta (T - T^dagger)) compiled term-by-term into
/// Pauli rotations.
std::vector<Excitation> uccsd_excitations(int n_qubits, int n_electrons);
Ansatz uccsd_ansatz(int n_qubits, int n_electrons);

/// Appends exp(-i (angle + scale*theta[slot]) / 2 * P) using basis rotations
/// and a CNOT staircase. The Pauli term's coefficient is ignored.
void append_pauli_rotation(Circuit& c, const PauliTerm& p, int slot, double scale);

}  // namespace gsbench
