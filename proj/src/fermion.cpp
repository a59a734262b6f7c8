#include "gsbench/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

std::string coefficient_text(cplx c) {
  if (c.imag() == 0.0) return fmt::format("{}", c.real());
  return fmt::format("({}{}{}j)", c.real(), c.imag() < 0.0 ? "" : "+", c.imag());
}

cplx parse_coefficient(const std::string& s, int lineno) {
  auto to_double = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.empty())
      fail(ErrorKind::Parse, fmt::format("line {}: malformed coefficient '{}'", lineno, s));
    return v;
  };
  if (s.size() > 2 && s.front() == '(' && s.back() == ')' && s[s.size() - 2] == 'j') {
    const std::string body = s.substr(1, s.size() - 3);
    // Split at the sign that starts the imaginary part (not an exponent sign).
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
        return {to_double(body.substr(0, i)), to_double(body.substr(i))};
    }
    fail(ErrorKind::Parse, fmt::format("line {}: malformed complex coefficient '{}'", lineno, s));
  }
  return {to_double(s), 0.0};
}

}  // namespace

FermionTerm FermionTerm::adjoint() const {
  FermionTerm t;
  t.coefficient = std::conj(coefficient);
  t.factors.assign(factors.rbegin(), factors.rend());
  for (auto& f : t.factors) f.creation = !f.creation;
  return t;
}

bool FermionOperator::is_hermitian(double tol) const {
  std::map<std::vector<std::pair<int, bool>>, cplx> index;
  auto key = [](const FermionTerm& t) {
    std::vector<std::pair<int, bool>> k;
    for (const auto& f : t.factors) k.emplace_back(f.mode, f.creation);
    return k;
  };
  for (const auto& t : terms) index[key(t)] += t.coefficient;
  for (const auto& t : terms) {
    const auto adj = t.adjoint();
    auto it = index.find(key(adj));
    if (it == index.end()) {
      if (std::abs(t.coefficient) > tol) return false;
      continue;
    }
    if (std::abs(it->second - std::conj(index[key(t)])) > tol) return false;
  }
  return true;
}

bool term_order_less(const FermionTerm& a, const FermionTerm& b) {
  if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const auto& fa = a.factors[i];
    const auto& fb = b.factors[i];
    if (fa.mode != fb.mode) return fa.mode < fb.mode;
    if (fa.creation != fb.creation) return fa.creation;
  }
  return false;
}

void sort_terms(FermionOperator& op) { std::stable_sort(op.terms.begin(), op.terms.end(), term_order_less); }

FermionOperator build_fermionic_hamiltonian(const MOIntegrals& mo) {
  const int n = static_cast<int>(mo.n_orbitals);
  FermionOperator op;
  op.n_modes = 2 * n;
  op.constant = mo.e_core;

  auto spatial = [n](int mode) { return mode % n; };
  auto spin = [n](int mode) { return mode / n; };

  for (int p = 0; p < 2 * n; ++p)
    for (int q = 0; q < 2 * n; ++q) {
      if (spin(p) != spin(q)) continue;
      const double v = mo.h(spatial(p), spatial(q));
      if (std::abs(v) < kFermionDropTolerance) continue;
      op.terms.push_back({cplx(v, 0.0), {{p, true}, {q, false}}});
    }

  // 1/2 <pq|rs> a+_p a+_q a_s a_r with <pq|rs> = (pr|qs), spin of p equals
  // spin of r and spin of q equals spin of s.
  for (int p = 0; p < 2 * n; ++p)
    for (int q = 0; q < 2 * n; ++q) {
      if (p == q) continue;
      for (int r = 0; r < 2 * n; ++r) {
        if (spin(r) != spin(p)) continue;
        for (int s = 0; s < 2 * n; ++s) {
          if (s == r || spin(s) != spin(q)) continue;
          const double v = 0.5 * mo.g(spatial(p), spatial(r), spatial(q), spatial(s));
          if (std::abs(v) < kFermionDropTolerance) continue;
          op.terms.push_back({cplx(v, 0.0), {{p, true}, {q, true}, {s, false}, {r, false}}});
        }
      }
    }
  sort_terms(op);
  return op;
}

MOIntegrals freeze_core(const MOIntegrals& mo, int n_frozen) {
  if (n_frozen < 0) fail(ErrorKind::Usage, "frozen orbital count must be non-negative");
  if (n_frozen == 0) return mo;
  if (mo.n_electrons % 2 != 0) fail(ErrorKind::Usage, "freeze_core needs a closed-shell electron count");
  if (2 * n_frozen > mo.n_electrons || static_cast<std::size_t>(n_frozen) > mo.n_orbitals)
    fail(ErrorKind::Usage, fmt::format("cannot freeze {} orbitals with {} electrons", n_frozen, mo.n_electrons));

  const std::size_t nf = static_cast<std::size_t>(n_frozen);
  const std::size_t na = mo.n_orbitals - nf;
  MOIntegrals out = MOIntegrals::zeros(na, mo.n_electrons - 2 * n_frozen);

  double core = mo.e_core;
  for (std::size_t i = 0; i < nf; ++i) {
    core += 2.0 * mo.h(i, i);
    for (std::size_t j = 0; j < nf; ++j) core += 2.0 * mo.g(i, i, j, j) - mo.g(i, j, j, i);
  }
  out.e_core = core;

  for (std::size_t p = 0; p < na; ++p)
    for (std::size_t q = 0; q < na; ++q) {
      double v = mo.h(p + nf, q + nf);
      for (std::size_t i = 0; i < nf; ++i) v += 2.0 * mo.g(p + nf, q + nf, i, i) - mo.g(p + nf, i, i, q + nf);
      out.h(p, q) = v;
    }
  for (std::size_t p = 0; p < na; ++p)
    for (std::size_t q = 0; q < na; ++q)
      for (std::size_t r = 0; r < na; ++r)
        for (std::size_t s = 0; s < na; ++s) out.g(p, q, r, s) = mo.g(p + nf, q + nf, r + nf, s + nf);
  return out;
}

std::string serialize_terms(const FermionOperator& op, std::size_t limit) {
  FermionOperator sorted = op;
  sort_terms(sorted);
  std::string out;
  std::size_t count = 0;
  for (const auto& t : sorted.terms) {
    if (limit != 0 && count == limit) break;
    out += coefficient_text(t.coefficient);
    out += " * (";
    for (const auto& f : t.factors) out += fmt::format(" {}_{}", f.creation ? '+' : '-', f.mode);
    out += " )\n";
    ++count;
  }
  return out;
}

namespace {

FermionTerm parse_term_line(const std::string& line, int lineno) {
  std::istringstream ss(line);
  std::string coeff, star, paren;
  if (!(ss >> coeff >> star >> paren) || star != "*" || paren != "(")
    fail(ErrorKind::Parse, fmt::format("line {}: expected '<coefficient> * ( ... )'", lineno));
  FermionTerm t;
  t.coefficient = parse_coefficient(coeff, lineno);
  std::string tok;
  bool closed = false;
  while (ss >> tok) {
    if (tok == ")") {
      closed = true;
      break;
    }
    if (tok.size() < 3 || (tok[0] != '+' && tok[0] != '-') || tok[1] != '_')
      fail(ErrorKind::Parse, fmt::format("line {}: malformed factor '{}'", lineno, tok));
    int mode = 0;
    try {
      std::size_t used = 0;
      mode = std::stoi(tok.substr(2), &used);
      if (used != tok.size() - 2 || mode < 0) throw std::invalid_argument("mode");
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, fmt::format("line {}: malformed factor '{}'", lineno, tok));
    }
    t.factors.push_back({mode, tok[0] == '+'});
  }
  if (!closed) fail(ErrorKind::Parse, fmt::format("line {}: missing ')'", lineno));
  return t;
}

}  // namespace

FermionOperator parse_terms(const std::string& text) {
  std::istringstream in(text);
  return read_fermion_operator(in);
}

void write_fermion_operator(const FermionOperator& op, std::ostream& out) {
  fmt::print(out, "# n_modes {}\n# constant {}\n", op.n_modes, op.constant);
  out << serialize_terms(op);
}

FermionOperator read_fermion_operator(std::istream& in) {
  FermionOperator op;
  std::string line;
  int lineno = 0;
  int declared_modes = -1;
  int max_mode = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "n_modes") ss >> declared_modes;
      else if (key == "constant") {
        std::string v;
        ss >> v;
        op.constant = parse_coefficient(v, lineno).real();
      }
      continue;
    }
    auto t = parse_term_line(line, lineno);
    for (const auto& f : t.factors) max_mode = std::max(max_mode, f.mode);
    op.terms.push_back(std::move(t));
  }
  op.n_modes = std::max(declared_modes, max_mode + 1);
  return op;
}

}  // namespace gsbench
