#include "gsbench/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <fmt/core.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

void check_qubit(int q) {
  if (q < 0 || q >= kMaxPauliQubits) fail(ErrorKind::Usage, fmt::format("qubit index {} out of range", q));
}

// i^k for k mod 4.
cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::string coefficient_text(cplx c) {
  if (c.imag() == 0.0) return fmt::format("{}", c.real());
  return fmt::format("({}{}{}j)", c.real(), c.imag() < 0.0 ? "" : "+", c.imag());
}

}  // namespace

PauliTerm::PauliTerm(cplx c, const std::map<int, Pauli>& letters) : coefficient(c) {
  for (auto [q, p] : letters) {
    check_qubit(q);
    if (p == Pauli::X || p == Pauli::Y) x_mask |= bit(q);
    if (p == Pauli::Z || p == Pauli::Y) z_mask |= bit(q);
  }
}

PauliTerm PauliTerm::from_pattern(cplx c, std::string_view pattern) {
  if (pattern.size() > kMaxPauliQubits) fail(ErrorKind::Usage, "Pauli pattern too long");
  PauliTerm t;
  t.coefficient = c;
  for (std::size_t q = 0; q < pattern.size(); ++q) {
    switch (pattern[q]) {
      case 'I': break;
      case 'X': t.x_mask |= bit(static_cast<int>(q)); break;
      case 'Y': t.x_mask |= bit(static_cast<int>(q)); t.z_mask |= bit(static_cast<int>(q)); break;
      case 'Z': t.z_mask |= bit(static_cast<int>(q)); break;
      default: fail(ErrorKind::Parse, fmt::format("bad Pauli letter '{}'", pattern[q]));
    }
  }
  return t;
}

Pauli PauliTerm::letter(int qubit) const noexcept {
  const bool x = (x_mask >> qubit) & 1U, z = (z_mask >> qubit) & 1U;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

int PauliTerm::weight() const noexcept { return std::popcount(x_mask | z_mask); }

std::string PauliTerm::pattern(int n_qubits) const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) s[static_cast<std::size_t>(q)] = "IXYZ"[static_cast<int>(letter(q))];
  return s;
}

std::map<int, Pauli> PauliTerm::letters() const {
  std::map<int, Pauli> out;
  for (std::uint64_t m = x_mask | z_mask; m; m &= m - 1) {
    const int q = std::countr_zero(m);
    out[q] = letter(q);
  }
  return out;
}

PauliTerm pauli_multiply(const PauliTerm& a, const PauliTerm& b) {
  // Per qubit, with letters as (x, z): the product picks up i^{+1} for the
  // cyclic orders XY, YZ, ZX and i^{-1} for the reversed ones.
  int phase = 0;
  for (std::uint64_t m = (a.x_mask | a.z_mask) & (b.x_mask | b.z_mask); m; m &= m - 1) {
    const int q = std::countr_zero(m);
    const int la = static_cast<int>(a.letter(q)), lb = static_cast<int>(b.letter(q));
    if (la == lb) continue;
    // X=1, Y=2, Z=3: (lb - la) mod 3 == 1 is cyclic.
    phase += ((lb - la + 3) % 3 == 1) ? 1 : -1;
  }
  return {a.coefficient * b.coefficient * i_power(phase), a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask};
}

bool commutes(const PauliTerm& a, const PauliTerm& b) noexcept {
  const int anti = std::popcount((a.x_mask & b.z_mask) ^ (a.z_mask & b.x_mask));
  return anti % 2 == 0;
}

bool qubitwise_commutes(const PauliTerm& a, const PauliTerm& b) noexcept {
  const std::uint64_t both = (a.x_mask | a.z_mask) & (b.x_mask | b.z_mask);
  return ((a.x_mask ^ b.x_mask) & both) == 0 && ((a.z_mask ^ b.z_mask) & both) == 0;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  n_qubits = std::max(n_qubits, o.n_qubits);
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  return *this;
}

PauliSum& PauliSum::operator*=(cplx c) {
  for (auto& t : terms) t.coefficient *= c;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  PauliSum out(std::max(a.n_qubits, b.n_qubits));
  out.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) out.terms.push_back(pauli_multiply(ta, tb));
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out = *this;
  for (auto& t : out.terms) t.coefficient = std::conj(t.coefficient);
  return out;
}

double PauliSum::max_imaginary() const {
  double m = 0.0;
  for (const auto& t : terms) m = std::max(m, std::abs(t.coefficient.imag()));
  return m;
}

cplx PauliSum::identity_coefficient() const {
  cplx c{0.0, 0.0};
  for (const auto& t : terms)
    if (t.is_identity()) c += t.coefficient;
  return c;
}

PauliSum canonicalize(const PauliSum& s) {
  std::vector<PauliTerm> sorted = s.terms;
  auto key_less = [](const PauliTerm& a, const PauliTerm& b) {
    const int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    // Lexicographic by letter with qubit 0 most significant, I < X < Y < Z.
    const std::uint64_t diff = (a.x_mask ^ b.x_mask) | (a.z_mask ^ b.z_mask);
    if (diff != 0) {
      const int q = std::countr_zero(diff);
      const auto la = a.letter(q), lb = b.letter(q);
      return la < lb;
    }
    return false;
  };
  std::stable_sort(sorted.begin(), sorted.end(), key_less);
  PauliSum out(s.n_qubits);
  for (const auto& t : sorted) {
    if (!out.terms.empty() && out.terms.back().same_pattern(t))
      out.terms.back().coefficient += t.coefficient;
    else
      out.terms.push_back(t);
  }
  std::erase_if(out.terms, [](const PauliTerm& t) { return std::abs(t.coefficient) < kPauliDropTolerance; });
  return out;
}

PauliSum jordan_wigner(const FermionOperator& op) {
  if (op.n_modes > kMaxPauliQubits) fail(ErrorKind::Resource, "too many modes for the Pauli representation");
  PauliSum out(op.n_modes);
  if (op.constant != 0.0) out.terms.emplace_back(cplx(op.constant, 0.0), 0, 0);

  auto ladder = [](const FermionFactor& f) {
    const std::uint64_t parity = bit(f.mode) - 1;  // Z on all lower modes
    const double ysign = f.creation ? -0.5 : 0.5;
    PauliSum s;
    s.terms.emplace_back(cplx(0.5, 0.0), bit(f.mode), parity);
    s.terms.emplace_back(cplx(0.0, ysign), bit(f.mode), parity | bit(f.mode));
    return s;
  };

  for (const auto& term : op.terms) {
    for (const auto& f : term.factors) check_qubit(f.mode);
    PauliSum product(op.n_modes, {PauliTerm(term.coefficient, 0, 0)});
    for (const auto& f : term.factors) product = canonicalize(product * ladder(f));
    out += product;
  }
  out.n_qubits = op.n_modes;
  return canonicalize(out);
}

PauliSum real_part_checked(const PauliSum& s, double tol) {
  if (s.max_imaginary() > tol)
    fail(ErrorKind::Computation,
         fmt::format("qubit operator is not Hermitian (imaginary part {:.3e})", s.max_imaginary()));
  PauliSum out = s;
  for (auto& t : out.terms) t.coefficient = {t.coefficient.real(), 0.0};
  return out;
}

std::vector<std::vector<PauliTerm>> qwc_group(const PauliSum& s) {
  std::vector<std::vector<PauliTerm>> groups;
  for (const auto& t : s.terms) {
    bool placed = false;
    for (auto& g : groups) {
      if (std::all_of(g.begin(), g.end(), [&](const PauliTerm& o) { return qubitwise_commutes(t, o); })) {
        g.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({t});
  }
  return groups;
}

std::string to_text(const PauliSum& s) {
  std::string out;
  for (const auto& t : s.terms) out += fmt::format("{} {}\n", coefficient_text(t.coefficient), t.pattern(s.n_qubits));
  return out;
}

PauliSum parse_pauli_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PauliSum out;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string coeff, pattern;
    if (!(ss >> coeff)) continue;
    if (coeff[0] == '#') continue;
    if (!(ss >> pattern)) fail(ErrorKind::Parse, fmt::format("line {}: expected '<coeff> <pattern>'", lineno));
    cplx c;
    if (coeff.back() == 'j') {
      const std::string body = coeff.substr(1, coeff.size() - 3);
      std::size_t split = std::string::npos;
      for (std::size_t i = body.size(); i-- > 1;)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
          split = i;
          break;
        }
      if (split == std::string::npos) fail(ErrorKind::Parse, fmt::format("line {}: bad coefficient", lineno));
      c = {std::stod(body.substr(0, split)), std::stod(body.substr(split))};
    } else {
      try {
        c = {std::stod(coeff), 0.0};
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, fmt::format("line {}: bad coefficient '{}'", lineno, coeff));
      }
    }
    out.n_qubits = std::max(out.n_qubits, static_cast<int>(pattern.size()));
    out.terms.push_back(PauliTerm::from_pattern(c, pattern));
  }
  return out;
}

}  // namespace gsbench
