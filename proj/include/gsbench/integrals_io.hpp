#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "gsbench/integrals.hpp"
#include "gsbench/tensor.hpp"

namespace gsbench {

/// Molecular-orbital integrals: h_pq, (pq|rs) in chemist notation and the
/// scalar core energy (nuclear repulsion plus anything folded in).
struct MOIntegrals {
  std::size_t n_orbitals = 0;
  int n_electrons = 0;
  Eigen::MatrixXd h;
  EriTensor g;
  double e_core = 0.0;

  static MOIntegrals zeros(std::size_t n_orbitals, int n_electrons);
};

/// FCIDUMP reader. Indices are 1-based on the wire; ORBSYM/ISYM/MS2 are
/// accepted and ignored. Every value is spread over its symmetry orbit.
MOIntegrals parse_fcidump(std::istream& in);
MOIntegrals parse_fcidump(const std::string& text);
MOIntegrals load_fcidump(const std::string& path);

/// Writes one line per symmetry orbit (largest-index-first representative)
/// with 17 significant digits; values below 1e-14 are skipped.
void write_fcidump(const MOIntegrals& mo, std::ostream& out);
std::string write_fcidump(const MOIntegrals& mo);
void save_fcidump(const MOIntegrals& mo, const std::string& path);

/// Native AO format: `NAO <n>` followed by `SECTION OVERLAP|CORE|ERI|ENUC|NELEC`
/// blocks holding `<value> <indices...>` entries, 1-based.
/// A missing NELEC or ENUC section means zero.
AOIntegrals read_ao_file(std::istream& in);
AOIntegrals read_ao_file(const std::string& text);
AOIntegrals load_ao_file(const std::string& path);
void write_ao_file(const AOIntegrals& ao, std::ostream& out);
std::string write_ao_file(const AOIntegrals& ao);

}  // namespace gsbench
