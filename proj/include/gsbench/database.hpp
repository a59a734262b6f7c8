#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gsbench/integrals.hpp"

namespace gsbench {

struct MethodInfo {
  std::vector<std::string> methods;  // subset of {hf, vqe, exact}
  std::string ansatz;                // "uccsd" or "hea"
  int depth = 0;
  std::string optimizer;
  std::uint64_t seed = 0;
  int max_evaluations = 0;
  int frozen_core = 0;
  double simplex_step = 0.1;  // Nelder-Mead only
  int evaluations = 0;  // outcome, not part of the record id

  friend bool operator==(const MethodInfo&, const MethodInfo&) = default;
};

struct HamiltonianRef {
  std::string fermion;  // path relative to the database root
  std::string pauli;

  friend bool operator==(const HamiltonianRef&, const HamiltonianRef&) = default;
};

struct EnergyRecord {
  std::string record_id;
  std::string molecule;
  Geometry geometry;
  double bond_length = 0.0;  // Angstrom
  std::string basis;
  int n_qubits = 0;
  std::optional<double> e_hf;
  std::optional<double> e_vqe;
  std::optional<double> e_exact;
  HamiltonianRef hamiltonian_ref;
  MethodInfo method;
  std::string created_at;
  int version = 0;      // assigned by Database::put
  std::string error;    // non-empty for failed scan points (never persisted)

  bool has_method(const std::string& m) const;
};

bool operator==(const EnergyRecord& a, const EnergyRecord& b);

/// SHA-256 over a canonical text of (molecule, geometry, basis, method
/// metadata without outcome fields).
std::string compute_record_id(const EnergyRecord& r);

std::string to_json(const EnergyRecord& r);
EnergyRecord record_from_json(const std::string& text);

std::string utc_timestamp();

struct RecordFilter {
  std::optional<std::string> molecule;
  std::optional<std::string> basis;
  std::optional<std::string> method;  // record must carry that energy
};

struct IndexEntry {
  std::string record_id;
  int version = 0;
  std::string file;  // relative to root
  std::string molecule;
  std::string basis;
  double bond_length = 0.0;
  std::string created_at;
};

/// Directory store: records/<id>/v<k>.json, hamiltonians/<id>.{fop,pauli},
/// and index.json replaced atomically on every put. Writers serialize through
/// an in-process mutex and an flock on <root>/.lock; readers never lock.
class Database {
 public:
  explicit Database(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Assigns record_id (when empty) and the next version; returns the id.
  std::string put(EnergyRecord record);
  /// Latest version, or a specific one.
  std::optional<EnergyRecord> get(const std::string& id, std::optional<int> version = std::nullopt) const;
  std::vector<IndexEntry> index() const;
  std::vector<EnergyRecord> query(const RecordFilter& filter = {}) const;

  HamiltonianRef store_hamiltonian(const std::string& id, const std::string& fermion_text,
                                   const std::string& pauli_text);

  /// Problems found: index entries pointing at missing/unreadable files,
  /// mismatched ids, or record files absent from the index. Empty when sound.
  std::vector<std::string> audit() const;

 private:
  std::filesystem::path root_;
  std::mutex write_mutex_;
};

/// Writes `text` to `path` via a sibling temporary and rename.
void write_atomically(const std::filesystem::path& path, const std::string& text);

}  // namespace gsbench
