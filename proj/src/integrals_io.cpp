#include "gsbench/integrals_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

constexpr double kWriteCutoff = 1e-14;

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
  fail(ErrorKind::Parse, fmt::format("line {}: {}", lineno, what));
}

double parse_value(const std::string& token, int lineno) {
  // Fortran writers sometimes use D exponents.
  std::string t = token;
  for (auto& c : t)
    if (c == 'D' || c == 'd') c = 'e';
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    parse_fail(lineno, fmt::format("malformed number '{}'", token));
  }
  if (used != t.size() || !std::isfinite(v)) parse_fail(lineno, fmt::format("malformed number '{}'", token));
  return v;
}

long parse_index(const std::string& token, int lineno) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(token, &used);
  } catch (const std::exception&) {
    parse_fail(lineno, fmt::format("malformed index '{}'", token));
  }
  if (used != token.size()) parse_fail(lineno, fmt::format("malformed index '{}'", token));
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string fmt17(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

MOIntegrals MOIntegrals::zeros(std::size_t n_orbitals, int n_electrons) {
  MOIntegrals mo;
  mo.n_orbitals = n_orbitals;
  mo.n_electrons = n_electrons;
  mo.h = Eigen::MatrixXd::Zero(n_orbitals, n_orbitals);
  mo.g = EriTensor(n_orbitals);
  return mo;
}

MOIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  int lineno = 0;

  // Header: everything from &FCI up to &END (or a lone '/').
  std::string header;
  bool started = false, finished = false;
  while (!finished && std::getline(in, line)) {
    ++lineno;
    std::string u = upper(line);
    if (!started) {
      const auto pos = u.find("&FCI");
      if (pos == std::string::npos) {
        if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
        parse_fail(lineno, "expected '&FCI' header");
      }
      started = true;
      u = u.substr(pos + 4);
    }
    for (const char* end : {"&END", "/"}) {
      const auto e = u.find(end);
      if (e != std::string::npos) {
        u = u.substr(0, e);
        finished = true;
        break;
      }
    }
    header += u + ",";
  }
  if (!finished) fail(ErrorKind::Parse, "FCIDUMP header is not terminated by &END");

  long norb = -1, nelec = -1;
  {
    std::string key;
    std::istringstream ss(header);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) continue;  // continuation of ORBSYM lists
      std::string k = item.substr(0, eq), v = item.substr(eq + 1);
      k.erase(0, k.find_first_not_of(" \t\r"));
      k.erase(k.find_last_not_of(" \t\r") + 1);
      v.erase(0, v.find_first_not_of(" \t\r"));
      v.erase(v.find_last_not_of(" \t\r") + 1);
      if (k == "NORB") norb = parse_index(v, lineno);
      else if (k == "NELEC") nelec = parse_index(v, lineno);
    }
  }
  if (norb < 1) fail(ErrorKind::Parse, "FCIDUMP header lacks NORB");
  if (nelec < 0) fail(ErrorKind::Parse, "FCIDUMP header lacks NELEC");
  if (nelec > 2 * norb) fail(ErrorKind::Parse, "NELEC exceeds 2*NORB");

  MOIntegrals mo = MOIntegrals::zeros(static_cast<std::size_t>(norb), static_cast<int>(nelec));
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split(line);
    if (tok.empty()) continue;
    if (tok.size() != 5) parse_fail(lineno, "expected '<value> i j k l'");
    const double v = parse_value(tok[0], lineno);
    long idx[4];
    for (int k = 0; k < 4; ++k) {
      idx[k] = parse_index(tok[k + 1], lineno);
      if (idx[k] < 0 || idx[k] > norb) parse_fail(lineno, fmt::format("index {} out of range 0..{}", idx[k], norb));
    }
    // Orbital energies (`e i 0 0 0`) are not needed.
    if (idx[0] != 0 && idx[1] == 0 && idx[2] == 0 && idx[3] == 0) continue;
    const bool one_zero_pair = (idx[2] == 0) != (idx[3] == 0) || (idx[0] == 0) != (idx[1] == 0) ||
                               (idx[0] == 0 && idx[2] != 0);
    if (one_zero_pair) parse_fail(lineno, "index pattern must be 'i j k l', 'i j 0 0', 'i 0 0 0' or '0 0 0 0'");
    if (idx[0] == 0) {
      mo.e_core = v;
    } else if (idx[2] == 0) {
      const auto i = static_cast<std::size_t>(idx[0] - 1), j = static_cast<std::size_t>(idx[1] - 1);
      mo.h(i, j) = mo.h(j, i) = v;
    } else {
      mo.g.set_symmetric(static_cast<std::size_t>(idx[0] - 1), static_cast<std::size_t>(idx[1] - 1),
                         static_cast<std::size_t>(idx[2] - 1), static_cast<std::size_t>(idx[3] - 1), v);
    }
  }
  return mo;
}

MOIntegrals parse_fcidump(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

MOIntegrals load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, fmt::format("cannot open FCIDUMP '{}'", path));
  return parse_fcidump(in);
}

void write_fcidump(const MOIntegrals& mo, std::ostream& out) {
  const std::size_t n = mo.n_orbitals;
  fmt::print(out, " &FCI NORB={},NELEC={},MS2={},\n  ORBSYM=", n, mo.n_electrons, mo.n_electrons % 2);
  for (std::size_t i = 0; i < n; ++i) fmt::print(out, "1,");
  fmt::print(out, "\n  ISYM=1,\n &END\n");
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = i + 1; j-- > 0;)
      for (std::size_t k = i + 1; k-- > 0;)
        for (std::size_t l = k + 1; l-- > 0;) {
          if (k == i && l > j) continue;
          const double v = mo.g(i, j, k, l);
          if (std::abs(v) < kWriteCutoff) continue;
          fmt::print(out, "{} {} {} {} {}\n", fmt17(v), i + 1, j + 1, k + 1, l + 1);
        }
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = i + 1; j-- > 0;) {
      const double v = mo.h(i, j);
      if (std::abs(v) < kWriteCutoff) continue;
      fmt::print(out, "{} {} {} 0 0\n", fmt17(v), i + 1, j + 1);
    }
  fmt::print(out, "{} 0 0 0 0\n", fmt17(mo.e_core));
}

std::string write_fcidump(const MOIntegrals& mo) {
  std::ostringstream out;
  write_fcidump(mo, out);
  return out.str();
}

void save_fcidump(const MOIntegrals& mo, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, fmt::format("cannot write '{}'", path));
  write_fcidump(mo, out);
}

AOIntegrals read_ao_file(std::istream& in) {
  std::string line;
  int lineno = 0;
  AOIntegrals ao;
  long n = -1;
  std::string section;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const auto tok = split(hash == std::string::npos ? line : line.substr(0, hash));
    if (tok.empty()) continue;
    if (tok[0] == "NAO") {
      if (tok.size() != 2) parse_fail(lineno, "expected 'NAO <n>'");
      n = parse_index(tok[1], lineno);
      if (n < 1) parse_fail(lineno, "NAO must be positive");
      ao.n_ao = static_cast<std::size_t>(n);
      ao.overlap = Eigen::MatrixXd::Zero(n, n);
      ao.core_hamiltonian = Eigen::MatrixXd::Zero(n, n);
      ao.eri = EriTensor(ao.n_ao);
      continue;
    }
    if (tok[0] == "SECTION") {
      if (tok.size() != 2) parse_fail(lineno, "expected 'SECTION <name>'");
      section = tok[1];
      if (section != "OVERLAP" && section != "CORE" && section != "ERI" && section != "ENUC" && section != "NELEC")
        parse_fail(lineno, fmt::format("unknown section '{}'", section));
      continue;
    }
    if (n < 0) parse_fail(lineno, "data before 'NAO' line");
    if (section.empty()) parse_fail(lineno, "data outside a SECTION");
    auto index = [&](std::size_t k) {
      const long i = parse_index(tok[k], lineno);
      if (i < 1 || i > n) parse_fail(lineno, fmt::format("index {} out of range 1..{}", i, n));
      return static_cast<std::size_t>(i - 1);
    };
    if (section == "NELEC") {
      if (tok.size() != 1) parse_fail(lineno, "expected '<n_electrons>'");
      const long e = parse_index(tok[0], lineno);
      if (e < 0) parse_fail(lineno, "negative electron count");
      ao.n_electrons = static_cast<int>(e);
      continue;
    }
    const double v = parse_value(tok[0], lineno);
    if (section == "ENUC") {
      if (tok.size() != 1) parse_fail(lineno, "expected '<value>'");
      ao.e_nuclear = v;
    } else if (section == "ERI") {
      if (tok.size() != 5) parse_fail(lineno, "expected '<value> i j k l'");
      ao.eri.set_symmetric(index(1), index(2), index(3), index(4), v);
    } else {
      if (tok.size() != 3) parse_fail(lineno, "expected '<value> i j'");
      auto& m = section == "OVERLAP" ? ao.overlap : ao.core_hamiltonian;
      const auto i = index(1), j = index(2);
      m(i, j) = m(j, i) = v;
    }
  }
  if (n < 0) fail(ErrorKind::Parse, "AO file lacks 'NAO'");
  return ao;
}

AOIntegrals read_ao_file(const std::string& text) {
  std::istringstream in(text);
  return read_ao_file(in);
}

AOIntegrals load_ao_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, fmt::format("cannot open AO file '{}'", path));
  return read_ao_file(in);
}

void write_ao_file(const AOIntegrals& ao, std::ostream& out) {
  const std::size_t n = ao.n_ao;
  fmt::print(out, "NAO {}\n", n);
  fmt::print(out, "SECTION NELEC\n{}\n", ao.n_electrons);
  fmt::print(out, "SECTION ENUC\n{}\n", fmt17(ao.e_nuclear));
  for (const char* name : {"OVERLAP", "CORE"}) {
    const auto& m = std::string(name) == "OVERLAP" ? ao.overlap : ao.core_hamiltonian;
    fmt::print(out, "SECTION {}\n", name);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (m(i, j) != 0.0) fmt::print(out, "{} {} {}\n", fmt17(m(i, j)), i + 1, j + 1);
  }
  fmt::print(out, "SECTION ERI\n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k <= i; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
          if (k == i && l > j) continue;
          const double v = ao.eri(i, j, k, l);
          if (v != 0.0) fmt::print(out, "{} {} {} {} {}\n", fmt17(v), i + 1, j + 1, k + 1, l + 1);
        }
}

std::string write_ao_file(const AOIntegrals& ao) {
  std::ostringstream out;
  write_ao_file(ao, out);
  return out.str();
}

}  // namespace gsbench
