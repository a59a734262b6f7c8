#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsbench/integrals_io.hpp"

namespace gsbench {

using cplx = std::complex<double>;

struct FermionFactor {
  int mode = 0;
  bool creation = true;

  friend bool operator==(const FermionFactor&, const FermionFactor&) = default;
};

struct FermionTerm {
  cplx coefficient{0.0, 0.0};
  std::vector<FermionFactor> factors;

  FermionTerm adjoint() const;
  friend bool operator==(const FermionTerm&, const FermionTerm&) = default;
};

/// Sum of weighted products of creation/annihilation operators over
/// `n_modes` spin orbitals, plus a real constant.
struct FermionOperator {
  int n_modes = 0;
  double constant = 0.0;
  std::vector<FermionTerm> terms;

  bool is_hermitian(double tol = 1e-12) const;
};

/// Term order used for printing: degree first, then factor sequence by
/// (mode, creation-before-annihilation).
bool term_order_less(const FermionTerm& a, const FermionTerm& b);
void sort_terms(FermionOperator& op);

inline constexpr double kFermionDropTolerance = 1e-12;

/// Spin-orbital Hamiltonian with blocked spin ordering: spatial orbital p
/// maps to mode p (alpha) and p + n (beta). Two-body terms are emitted as
/// 1/2 <pq|rs> a+_p a+_q a_s a_r without further normal ordering.
FermionOperator build_fermionic_hamiltonian(const MOIntegrals& mo);

/// Folds the lowest `n_frozen` doubly occupied orbitals into e_core and an
/// effective one-body operator.
MOIntegrals freeze_core(const MOIntegrals& mo, int n_frozen);

/// `<coefficient> * ( +_p -_q ... )` per line, shortest round-trip
/// coefficient text, at most `limit` lines (0 = all). The constant is not a
/// term and is not printed.
std::string serialize_terms(const FermionOperator& op, std::size_t limit = 0);

/// Inverse of serialize_terms. `n_modes` is inferred as max mode + 1.
FermionOperator parse_terms(const std::string& text);

/// `.fop` file: `# n_modes`/`# constant` header comments plus the listing.
void write_fermion_operator(const FermionOperator& op, std::ostream& out);
FermionOperator read_fermion_operator(std::istream& in);

}  // namespace gsbench
