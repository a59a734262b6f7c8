#include "gsbench/integrals.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/core.h>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace {

constexpr std::array<std::string_view, 54> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si",
    "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni",
    "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo",
    "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe"};

constexpr double kPi = std::numbers::pi;

struct Primitive {
  double exponent;
  double weight;  // contraction coefficient x primitive norm x shell norm
};

std::vector<Primitive> normalized_primitives(const ContractedGaussian& g) {
  std::vector<Primitive> out;
  out.reserve(g.exponents.size());
  for (std::size_t i = 0; i < g.exponents.size(); ++i) {
    const double a = g.exponents[i];
    out.push_back({a, g.coefficients[i] * std::pow(2.0 * a / kPi, 0.75)});
  }
  double self = 0.0;
  for (const auto& p : out)
    for (const auto& q : out) self += p.weight * q.weight * std::pow(kPi / (p.exponent + q.exponent), 1.5);
  const double scale = 1.0 / std::sqrt(self);
  for (auto& p : out) p.weight *= scale;
  return out;
}

void check_shell(const ContractedGaussian& g) {
  if (g.angular_momentum != 0)
    fail(ErrorKind::UnsupportedBasis,
         fmt::format("only s-type functions are supported (got l={})", g.angular_momentum));
  if (g.exponents.empty() || g.exponents.size() != g.coefficients.size())
    fail(ErrorKind::Usage, "contracted Gaussian needs matching, non-empty exponent/coefficient lists");
  for (double a : g.exponents)
    if (!(a > 0.0) || !std::isfinite(a)) fail(ErrorKind::Usage, "Gaussian exponents must be positive");
}

struct Shell {
  Eigen::Vector3d center;
  std::vector<Primitive> prims;
};

double overlap_prims(const Shell& a, const Shell& b) {
  const double r2 = (a.center - b.center).squaredNorm();
  double sum = 0.0;
  for (const auto& pa : a.prims)
    for (const auto& pb : b.prims) {
      const double p = pa.exponent + pb.exponent;
      const double mu = pa.exponent * pb.exponent / p;
      sum += pa.weight * pb.weight * std::pow(kPi / p, 1.5) * std::exp(-mu * r2);
    }
  return sum;
}

double kinetic_prims(const Shell& a, const Shell& b) {
  const double r2 = (a.center - b.center).squaredNorm();
  double sum = 0.0;
  for (const auto& pa : a.prims)
    for (const auto& pb : b.prims) {
      const double p = pa.exponent + pb.exponent;
      const double mu = pa.exponent * pb.exponent / p;
      const double s = std::pow(kPi / p, 1.5) * std::exp(-mu * r2);
      sum += pa.weight * pb.weight * mu * (3.0 - 2.0 * mu * r2) * s;
    }
  return sum;
}

double attraction_prims(const Shell& a, const Shell& b, const Geometry& geometry) {
  const double r2 = (a.center - b.center).squaredNorm();
  double sum = 0.0;
  for (const auto& pa : a.prims)
    for (const auto& pb : b.prims) {
      const double p = pa.exponent + pb.exponent;
      const double mu = pa.exponent * pb.exponent / p;
      const Eigen::Vector3d centre = (pa.exponent * a.center + pb.exponent * b.center) / p;
      const double pre = 2.0 * kPi / p * std::exp(-mu * r2);
      double v = 0.0;
      for (const auto& atom : geometry.atoms)
        v -= atom.atomic_number * boys_f0(p * (centre - atom.position).squaredNorm());
      sum += pa.weight * pb.weight * pre * v;
    }
  return sum;
}

double eri_prims(const Shell& a, const Shell& b, const Shell& c, const Shell& d) {
  const double rab2 = (a.center - b.center).squaredNorm();
  const double rcd2 = (c.center - d.center).squaredNorm();
  double sum = 0.0;
  for (const auto& pa : a.prims)
    for (const auto& pb : b.prims) {
      const double p = pa.exponent + pb.exponent;
      const double kab = std::exp(-pa.exponent * pb.exponent / p * rab2);
      const Eigen::Vector3d P = (pa.exponent * a.center + pb.exponent * b.center) / p;
      for (const auto& pc : c.prims)
        for (const auto& pd : d.prims) {
          const double q = pc.exponent + pd.exponent;
          const double kcd = std::exp(-pc.exponent * pd.exponent / q * rcd2);
          const Eigen::Vector3d Q = (pc.exponent * c.center + pd.exponent * d.center) / q;
          const double t = p * q / (p + q) * (P - Q).squaredNorm();
          const double pre = 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q));
          sum += pa.weight * pb.weight * pc.weight * pd.weight * pre * kab * kcd * boys_f0(t);
        }
    }
  return sum;
}

std::string trim_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("GSBENCH_DATA_DIR"); env && *env) return env;
  return GSBENCH_DATA_DIR;
}

}  // namespace

int atomic_number(std::string_view symbol) {
  for (std::size_t i = 0; i < kElements.size(); ++i)
    if (kElements[i] == symbol) return static_cast<int>(i) + 1;
  fail(ErrorKind::Usage, fmt::format("unknown element symbol '{}'", symbol));
}

int Geometry::n_electrons() const {
  int z = 0;
  for (const auto& a : atoms) z += a.atomic_number;
  return z - charge;
}

Geometry Geometry::translated(const Eigen::Vector3d& shift) const {
  Geometry g = *this;
  for (auto& a : g.atoms) a.position += shift;
  return g;
}

Geometry parse_geometry(std::istream& in) {
  Geometry g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(trim_comment(line));
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "charge") {
      if (!(ss >> g.charge)) fail(ErrorKind::Parse, fmt::format("line {}: bad charge", lineno));
      continue;
    }
    Atom atom;
    atom.symbol = head;
    atom.atomic_number = atomic_number(head);
    double x, y, z;
    if (!(ss >> x >> y >> z) || !std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      fail(ErrorKind::Parse, fmt::format("line {}: expected '<symbol> <x> <y> <z>'", lineno));
    atom.position = Eigen::Vector3d(x, y, z) * kBohrPerAngstrom;
    g.atoms.push_back(std::move(atom));
  }
  if (g.atoms.empty()) fail(ErrorKind::Parse, "geometry has no atoms");
  if (g.n_electrons() < 0) fail(ErrorKind::Usage, "charge exceeds total nuclear charge");
  return g;
}

Geometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, fmt::format("cannot open geometry file '{}'", path));
  return parse_geometry(in);
}

Geometry diatomic(std::string_view a, std::string_view b, double bond_angstrom, int charge) {
  Geometry g;
  g.charge = charge;
  g.atoms.push_back({std::string(a), atomic_number(a), Eigen::Vector3d::Zero()});
  g.atoms.push_back({std::string(b), atomic_number(b),
                     Eigen::Vector3d(0.0, 0.0, bond_angstrom * kBohrPerAngstrom)});
  return g;
}

BasisSet parse_basis(std::istream& in, std::string name) {
  BasisSet basis;
  basis.name = std::move(name);
  std::string line;
  int lineno = 0;
  auto next_data_line = [&](std::istringstream& ss) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto body = trim_comment(line);
      if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
      ss = std::istringstream(body);
      return true;
    }
    return false;
  };
  std::istringstream ss;
  while (next_data_line(ss)) {
    std::string keyword, symbol, shell = "S";
    int n = 0;
    if (!(ss >> keyword >> symbol >> n) || keyword != "ELEMENT" || n < 1)
      fail(ErrorKind::Parse, fmt::format("line {}: expected 'ELEMENT <symbol> <n_primitives>'", lineno));
    ss >> shell;
    ContractedGaussian g;
    if (shell == "S") g.angular_momentum = 0;
    else if (shell == "P") g.angular_momentum = 1;
    else if (shell == "D") g.angular_momentum = 2;
    else fail(ErrorKind::Parse, fmt::format("line {}: unknown shell type '{}'", lineno, shell));
    atomic_number(symbol);
    for (int i = 0; i < n; ++i) {
      std::istringstream row;
      if (!next_data_line(row))
        fail(ErrorKind::Parse, fmt::format("line {}: basis block for {} is truncated", lineno, symbol));
      double e, c;
      if (!(row >> e >> c) || !(e > 0.0))
        fail(ErrorKind::Parse, fmt::format("line {}: expected '<exponent> <coefficient>'", lineno));
      g.exponents.push_back(e);
      g.coefficients.push_back(c);
    }
    basis.shells[symbol].push_back(std::move(g));
  }
  return basis;
}

BasisSet load_basis(const std::string& name_or_path) {
  std::filesystem::path path(name_or_path);
  std::string name = name_or_path;
  if (!std::filesystem::exists(path)) {
    path = data_dir() / "basis" / (name_or_path + ".basis");
  } else {
    name = path.stem().string();
  }
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, fmt::format("basis '{}' not found (looked at {})", name_or_path, path.string()));
  return parse_basis(in, name);
}

std::vector<std::vector<ContractedGaussian>> assign_basis(const Geometry& geometry,
                                                          const BasisSet& basis) {
  std::vector<std::vector<ContractedGaussian>> out;
  for (const auto& atom : geometry.atoms) {
    auto it = basis.shells.find(atom.symbol);
    if (it == basis.shells.end())
      fail(ErrorKind::UnsupportedBasis,
           fmt::format("basis '{}' has no functions for {}", basis.name, atom.symbol));
    auto shells = it->second;
    for (auto& s : shells) s.center = atom.position;
    out.push_back(std::move(shells));
  }
  return out;
}

double boys_f0(double x) {
  if (!std::isfinite(x) || x < 0.0) fail(ErrorKind::Domain, "boys_f0 needs a finite, non-negative argument");
  if (x <= 1e-6) return 1.0 - x / 3.0 + x * x / 10.0 - x * x * x / 42.0;
  const double s = std::sqrt(x);
  return 0.5 * std::sqrt(kPi) / s * std::erf(s);
}

double nuclear_repulsion(const Geometry& geometry) {
  double e = 0.0;
  for (std::size_t i = 0; i < geometry.atoms.size(); ++i)
    for (std::size_t j = i + 1; j < geometry.atoms.size(); ++j) {
      const double r = (geometry.atoms[i].position - geometry.atoms[j].position).norm();
      if (!(r > 1e-8))
        fail(ErrorKind::DegenerateGeometry, fmt::format("atoms {} and {} coincide", i, j));
      e += geometry.atoms[i].atomic_number * geometry.atoms[j].atomic_number / r;
    }
  return e;
}

double overlap(const ContractedGaussian& a, const ContractedGaussian& b) {
  check_shell(a);
  check_shell(b);
  return overlap_prims({a.center, normalized_primitives(a)}, {b.center, normalized_primitives(b)});
}

AOIntegrals build_ao_integrals(const Geometry& geometry,
                               const std::vector<std::vector<ContractedGaussian>>& basis) {
  if (basis.size() != geometry.atoms.size())
    fail(ErrorKind::Usage, "need one basis list per atom");
  AOIntegrals ao;
  ao.e_nuclear = nuclear_repulsion(geometry);
  ao.n_electrons = geometry.n_electrons();

  std::vector<Shell> shells;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].empty())
      fail(ErrorKind::Usage, fmt::format("atom {} ({}) has no basis functions", i, geometry.atoms[i].symbol));
    for (const auto& g : basis[i]) {
      check_shell(g);
      shells.push_back({g.center, normalized_primitives(g)});
    }
  }

  const std::size_t n = shells.size();
  ao.n_ao = n;
  ao.overlap.resize(n, n);
  ao.core_hamiltonian.resize(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      const double s = overlap_prims(shells[p], shells[q]);
      const double h = kinetic_prims(shells[p], shells[q]) + attraction_prims(shells[p], shells[q], geometry);
      ao.overlap(p, q) = ao.overlap(q, p) = s;
      ao.core_hamiltonian(p, q) = ao.core_hamiltonian(q, p) = h;
    }

  ao.eri = EriTensor(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (r == p && s > q) continue;
          ao.eri.set_symmetric(p, q, r, s, eri_prims(shells[p], shells[q], shells[r], shells[s]));
        }
  return ao;
}

}  // namespace gsbench
