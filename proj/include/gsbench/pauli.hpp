#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gsbench/fermion.hpp"

namespace gsbench {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr int kMaxPauliQubits = 64;
inline constexpr double kPauliDropTolerance = 1e-12;

/// Weighted Pauli string stored as X/Z bit masks (Y sets both bits).
/// Identity letters are implicit.
struct PauliTerm {
  cplx coefficient{1.0, 0.0};
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  PauliTerm() = default;
  PauliTerm(cplx c, std::uint64_t x, std::uint64_t z) : coefficient(c), x_mask(x), z_mask(z) {}
  /// `letters` maps qubit -> X/Y/Z; identity entries are dropped.
  PauliTerm(cplx c, const std::map<int, Pauli>& letters);
  /// Pattern text with qubit 0 leftmost, e.g. "IXYZ".
  static PauliTerm from_pattern(cplx c, std::string_view pattern);

  Pauli letter(int qubit) const noexcept;
  int weight() const noexcept;
  bool is_identity() const noexcept { return x_mask == 0 && z_mask == 0; }
  bool same_pattern(const PauliTerm& o) const noexcept { return x_mask == o.x_mask && z_mask == o.z_mask; }
  std::string pattern(int n_qubits) const;
  std::map<int, Pauli> letters() const;
};

PauliTerm pauli_multiply(const PauliTerm& a, const PauliTerm& b);

/// True when the two strings commute as operators.
bool commutes(const PauliTerm& a, const PauliTerm& b) noexcept;
/// True when on every qubit the letters agree or one is the identity.
bool qubitwise_commutes(const PauliTerm& a, const PauliTerm& b) noexcept;

struct PauliSum {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;

  PauliSum() = default;
  explicit PauliSum(int n) : n_qubits(n) {}
  PauliSum(int n, std::vector<PauliTerm> t) : n_qubits(n), terms(std::move(t)) {}

  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator*=(cplx c);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  PauliSum adjoint() const;
  double max_imaginary() const;
  /// Coefficient of the identity string (0 when absent).
  cplx identity_coefficient() const;
};

/// Merges equal patterns, drops |c| < 1e-12, orders by (weight, pattern).
PauliSum canonicalize(const PauliSum& s);

/// a+_p -> (X_p - iY_p)/2 Z_{p-1}..Z_0, a_p -> (X_p + iY_p)/2 Z_{p-1}..Z_0.
PauliSum jordan_wigner(const FermionOperator& op);

/// Drops imaginary parts after checking they are below `tol`; throws
/// Computation otherwise. Used on the images of Hermitian operators.
PauliSum real_part_checked(const PauliSum& s, double tol = 1e-12);

/// Greedy first-fit partition into qubit-wise commuting groups. Groups keep
/// input order.
std::vector<std::vector<PauliTerm>> qwc_group(const PauliSum& s);

/// `<coeff> <pattern>` per line, qubit 0 leftmost.
std::string to_text(const PauliSum& s);
PauliSum parse_pauli_text(const std::string& text);

}  // namespace gsbench
