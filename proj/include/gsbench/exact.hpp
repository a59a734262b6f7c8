#pragma once

#include <optional>

#include <Eigen/Dense>

#include "gsbench/integrals_io.hpp"
#include "gsbench/pauli.hpp"
#include "gsbench/statevector.hpp"

namespace gsbench {

inline constexpr int kMaxDenseQubits = 14;
inline constexpr std::size_t kMaxFciOrbitals = 6;

struct SpectrumResult {
  double ground_energy = 0.0;
  std::optional<Statevector> ground_vector;
  int n_qubits = 0;
};

/// Computational-basis restriction for number-conserving Hamiltonians in
/// blocked spin ordering: alpha modes 0..n/2-1, beta modes n/2..n-1.
struct Sector {
  int n_alpha = 0;
  int n_beta = 0;

  static Sector closed_shell(int n_electrons) { return {n_electrons - n_electrons / 2, n_electrons / 2}; }
};

Eigen::MatrixXcd pauli_to_dense(const PauliSum& h);

/// Lowest eigenvalue over the whole 2^n space.
SpectrumResult dense_ground_energy(const PauliSum& h, bool keep_vector = false);
/// Lowest eigenvalue within one (N_alpha, N_beta) block.
SpectrumResult dense_ground_energy(const PauliSum& h, Sector sector, bool keep_vector = false);

/// Slater-Condon Hamiltonian over all determinants of the given sector.
double fci_determinant_oracle(const MOIntegrals& mo, Sector sector);
/// Closed-shell sector (N/2 alpha, N/2 beta).
double fci_determinant_oracle(const MOIntegrals& mo);
/// Minimum over every (N_alpha, N_beta) sector, i.e. the whole Fock space.
double fci_all_sectors(const MOIntegrals& mo);

}  // namespace gsbench
