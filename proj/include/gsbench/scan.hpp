#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsbench/ansatz.hpp"
#include "gsbench/database.hpp"
#include "gsbench/integrals_io.hpp"
#include "gsbench/optimize.hpp"

namespace gsbench {

struct FragmentAtom {
  std::string symbol;
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();  // Angstrom, relative to the fragment origin
};

struct ScanSpec {
  std::string molecule;                // label, e.g. "H2"
  std::vector<FragmentAtom> fragment_a;
  std::vector<FragmentAtom> fragment_b;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  int charge = 0;
  std::vector<double> bond_lengths;    // Angstrom, strictly ascending, each in (0, 10]
  std::string basis = "sto-3g";
  /// When set, integrals come from this FCIDUMP path with `{r}` replaced by
  /// the bond length printed with two decimals.
  std::optional<std::string> fcidump_pattern;
  std::vector<std::string> methods = {"hf", "vqe", "exact"};
  AnsatzKind ansatz = AnsatzKind::UCCSD;
  int depth = 1;
  OptimizerConfig optimizer;
  int frozen_core = 0;
  int workers = 1;

  Geometry geometry_at(double bond_length) const;
  void validate() const;
};

/// Evenly spaced lengths from `first` to `last` inclusive, rounded to 1e-10.
std::vector<double> length_grid(double first, double last, double step);

/// Everything derived from one set of MO integrals.
struct PointSolution {
  MOIntegrals mo;
  double e_hf = 0.0;
  std::optional<double> e_vqe;
  std::optional<double> e_exact;
  int n_qubits = 0;
  int evaluations = 0;
  std::string fermion_text;
  std::string pauli_text;
};

/// Energy of the closed-shell reference determinant for canonical MO integrals.
double reference_energy(const MOIntegrals& mo);

/// Runs the requested methods on one set of MO integrals (after optional
/// core freezing).
PointSolution solve_point(const MOIntegrals& mo, std::optional<double> e_hf, const ScanSpec& spec);

/// One record per length. Failed points carry `error` and are not stored;
/// all points failing raises Computation. Records are stored in `db` when
/// given.
std::vector<EnergyRecord> run_scan(const ScanSpec& spec, Database* db = nullptr, std::ostream* log = nullptr);

/// CSV `bond_length_angstrom,e_hf,e_vqe,e_exact`, ascending length, 12
/// significant digits, empty fields for absent energies.
std::string emit_curve(const std::vector<EnergyRecord>& records);

}  // namespace gsbench
