#pragma once

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gsbench/tensor.hpp"

namespace gsbench {

inline constexpr double kBohrPerAngstrom = 1.8897259886;

/// Nuclear charge for an element symbol (H through Xe). Throws Usage for
/// unknown symbols.
int atomic_number(std::string_view symbol);

struct Atom {
  std::string symbol;
  int atomic_number = 1;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // Bohr
};

struct Geometry {
  std::vector<Atom> atoms;
  int charge = 0;

  int n_electrons() const;
  Geometry translated(const Eigen::Vector3d& shift) const;
};

/// Reads `<symbol> <x> <y> <z>` lines in Angstrom, with an optional
/// `charge <int>` header. Blank lines and `#` comments are skipped.
Geometry parse_geometry(std::istream& in);
Geometry load_geometry(const std::string& path);

/// Two atoms on the z axis separated by `bond_angstrom`.
Geometry diatomic(std::string_view a, std::string_view b, double bond_angstrom, int charge = 0);

/// One contracted shell. Coefficients multiply *normalized* primitives,
/// as in the usual basis-set tabulations.
struct ContractedGaussian {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<double> exponents;
  std::vector<double> coefficients;
  int angular_momentum = 0;
};

/// Shells per element as read from a basis file; centers are unset.
struct BasisSet {
  std::string name;
  std::map<std::string, std::vector<ContractedGaussian>> shells;
};

/// Basis file: blocks `ELEMENT <symbol> <n_primitives> [S|P|D]` followed by
/// n lines `<exponent> <coefficient>`. Several blocks may share an element.
BasisSet parse_basis(std::istream& in, std::string name = {});

/// `name_or_path` is a file path, or a name resolved as
/// `<data dir>/basis/<name>.basis` (data dir from $GSBENCH_DATA_DIR or the
/// build-time default).
BasisSet load_basis(const std::string& name_or_path);

/// Places the element shells on each atom.
std::vector<std::vector<ContractedGaussian>> assign_basis(const Geometry& geometry,
                                                          const BasisSet& basis);

struct AOIntegrals {
  std::size_t n_ao = 0;
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd core_hamiltonian;
  EriTensor eri;
  double e_nuclear = 0.0;
  int n_electrons = 0;
};

/// F0(x) = (1/2) sqrt(pi/x) erf(sqrt(x)), with a Taylor series below 1e-6.
double boys_f0(double x);

double nuclear_repulsion(const Geometry& geometry);

/// Overlap of two s functions including contraction normalization.
double overlap(const ContractedGaussian& a, const ContractedGaussian& b);

AOIntegrals build_ao_integrals(const Geometry& geometry,
                               const std::vector<std::vector<ContractedGaussian>>& basis);

}  // namespace gsbench
