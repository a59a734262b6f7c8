// gsbench: command-line front end for the ground-state workbench.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>

#include "gsbench/database.hpp"
#include "gsbench/errors.hpp"
#include "gsbench/exact.hpp"
#include "gsbench/fermion.hpp"
#include "gsbench/integrals.hpp"
#include "gsbench/integrals_io.hpp"
#include "gsbench/pauli.hpp"
#include "gsbench/scan.hpp"
#include "gsbench/scf.hpp"
#include "gsbench/vqe.hpp"

using namespace gsbench;

namespace {

struct InputOptions {
  std::string geometry;
  std::string basis = "sto-3g";
  std::string fcidump;
  std::string ao;
  int freeze = 0;
  bool verbose = false;

  void attach(CLI::App* app, bool allow_fcidump = true) {
    app->add_option("--geometry", geometry, "Geometry file (Angstrom)");
    app->add_option("--basis", basis, "Basis name or file")->capture_default_str();
    if (allow_fcidump) app->add_option("--fcidump", fcidump, "MO integrals in FCIDUMP format");
    app->add_option("--ao", ao, "AO integrals in the native format");
    app->add_flag("--verbose", verbose, "Print SCF iterations");
  }
};

struct Molecule {
  MOIntegrals mo;
  double e_hf = 0.0;
};

AOIntegrals load_ao(const InputOptions& in) {
  if (!in.ao.empty()) return load_ao_file(in.ao);
  if (in.geometry.empty()) fail(ErrorKind::Usage, "need --geometry, --ao or --fcidump");
  const Geometry g = load_geometry(in.geometry);
  return build_ao_integrals(g, assign_basis(g, load_basis(in.basis)));
}

Molecule load_molecule(const InputOptions& in) {
  Molecule m;
  if (!in.fcidump.empty()) {
    m.mo = load_fcidump(in.fcidump);
    m.e_hf = reference_energy(m.mo);
  } else {
    const AOIntegrals ao = load_ao(in);
    SCFOptions opts;
    if (in.verbose) opts.log = &std::cerr;
    const SCFResult scf = scf_solve(ao, opts);
    if (!scf.converged) fail(ErrorKind::Computation, "SCF did not converge");
    m.mo = ao_to_mo(ao, scf.mo_coefficients);
    m.e_hf = scf.e_hf;
  }
  m.mo = freeze_core(m.mo, in.freeze);
  return m;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail(ErrorKind::Io, fmt::format("cannot write '{}'", path));
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_lengths(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
    if (parts.size() != 3) fail(ErrorKind::Usage, "--lengths expects first:last:step or a comma list");
    return length_grid(parts[0], parts[1], parts[2]);
  }
  std::vector<double> out;
  for (const auto& s : split_list(spec)) out.push_back(std::stod(s));
  return out;
}

AnsatzKind parse_ansatz(const std::string& s) {
  if (s == "uccsd") return AnsatzKind::UCCSD;
  if (s == "hea") return AnsatzKind::HardwareEfficient;
  fail(ErrorKind::Usage, fmt::format("unknown ansatz '{}' (expected hea or uccsd)", s));
}

void print_record_summary(std::ostream& out, const EnergyRecord& r) {
  auto e = [](const std::optional<double>& v) { return v ? fmt::format("{:.10f}", *v) : std::string("-"); };
  fmt::print(out, "{} v{} {} r={} basis={} hf={} vqe={} exact={}\n", r.record_id, r.version, r.molecule,
             r.bond_length, r.basis, e(r.e_hf), e(r.e_vqe), e(r.e_exact));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state energy workbench: integrals, Hartree-Fock, VQE, exact diagonalization, scans"};
  app.require_subcommand(1);

  std::string output;
  InputOptions in;

  // integrals
  auto* integrals = app.add_subcommand("integrals", "Compute AO integrals and write the native AO format");
  integrals->add_option("--geometry", in.geometry, "Geometry file (Angstrom)")->required();
  integrals->add_option("--basis", in.basis, "Basis name or file")->capture_default_str();
  integrals->add_option("--output", output, "Output file (default stdout)");

  // scf
  auto* scf = app.add_subcommand("scf", "Restricted Hartree-Fock");
  in.attach(scf, false);
  scf->add_option("--output", output, "Write the MO integrals as FCIDUMP");

  // ham
  int limit = 0;
  bool pauli = false;
  auto* ham = app.add_subcommand("ham", "Print the second-quantized Hamiltonian");
  in.attach(ham);
  ham->add_option("--freeze", in.freeze, "Frozen core orbitals");
  ham->add_option("--limit", limit, "Print at most N terms (0 = all)");
  ham->add_flag("--pauli", pauli, "Print the Jordan-Wigner qubit form instead");
  ham->add_option("--output", output, "Output file (default stdout)");

  // vqe
  std::string ansatz_name = "uccsd", optimizer_name = "nm";
  int depth = 1, max_evals = 2000;
  double simplex_step = 0.1;
  std::uint64_t seed = 0;
  bool progress = false;
  auto* vqe = app.add_subcommand("vqe", "Variational quantum eigensolver on the built-in simulator");
  in.attach(vqe);
  vqe->add_option("--freeze", in.freeze, "Frozen core orbitals");
  vqe->add_option("--ansatz", ansatz_name, "hea or uccsd")->capture_default_str();
  vqe->add_option("--depth", depth, "Hardware-efficient layers")->capture_default_str();
  vqe->add_option("--optimizer", optimizer_name, "nm, spsa or gd")->capture_default_str();
  vqe->add_option("--seed", seed, "Optimizer seed")->capture_default_str();
  vqe->add_option("--max-evals", max_evals, "Evaluation budget")->capture_default_str();
  vqe->add_option("--simplex-step", simplex_step, "Initial Nelder-Mead simplex step")->capture_default_str();
  vqe->add_flag("--progress", progress, "Stream 'eval <k> E=<energy>' lines to stderr");

  // exact
  bool full_space = false;
  auto* exact = app.add_subcommand("exact", "Exact ground-state energy (dense and determinant FCI)");
  in.attach(exact);
  exact->add_option("--freeze", in.freeze, "Frozen core orbitals");
  exact->add_flag("--full-space", full_space, "Minimize over the whole Fock space, not the molecule's sector");

  // scan
  ScanSpec spec;
  std::string atoms = "H,H", lengths = "0.3:2.5:0.1", methods = "hf,vqe,exact", db_dir;
  auto* scan = app.add_subcommand("scan", "Bond-length scan of a diatomic");
  scan->add_option("--molecule", spec.molecule, "Label stored in records")->required();
  scan->add_option("--atoms", atoms, "The two atoms, e.g. He,H")->capture_default_str();
  scan->add_option("--charge", spec.charge, "Total charge")->capture_default_str();
  scan->add_option("--lengths", lengths, "first:last:step or a comma list (Angstrom)")->capture_default_str();
  scan->add_option("--basis", spec.basis, "Basis name or file")->capture_default_str();
  std::string fcidump_pattern;
  scan->add_option("--fcidump", fcidump_pattern, "FCIDUMP path pattern with {r} for the bond length");
  scan->add_option("--methods", methods, "Subset of hf,vqe,exact")->capture_default_str();
  scan->add_option("--ansatz", ansatz_name, "hea or uccsd")->capture_default_str();
  scan->add_option("--depth", depth, "Hardware-efficient layers")->capture_default_str();
  scan->add_option("--optimizer", optimizer_name, "nm, spsa or gd")->capture_default_str();
  scan->add_option("--seed", seed, "Optimizer seed")->capture_default_str();
  scan->add_option("--max-evals", max_evals, "Evaluation budget per point")->capture_default_str();
  scan->add_option("--simplex-step", simplex_step, "Initial Nelder-Mead simplex step")->capture_default_str();
  scan->add_option("--freeze", spec.frozen_core, "Frozen core orbitals");
  scan->add_option("--workers", spec.workers, "Parallel scan points")->capture_default_str();
  scan->add_option("--db", db_dir, "Database directory");
  scan->add_option("--output", output, "Write the curve CSV here (default stdout)");

  // db
  auto* db = app.add_subcommand("db", "Inspect or extend the record database");
  db->require_subcommand(1);
  std::string record_file, record_id;
  std::optional<int> version;
  RecordFilter filter;
  auto* db_put = db->add_subcommand("put", "Store a record JSON file");
  db_put->add_option("record", record_file, "Record JSON")->required();
  auto* db_get = db->add_subcommand("get", "Print a record");
  db_get->add_option("id", record_id, "Record id")->required();
  db_get->add_option("--version", version, "Version (default latest)");
  auto* db_list = db->add_subcommand("list", "List index entries");
  auto* db_query = db->add_subcommand("query", "Filter records");
  db_query->add_option("--molecule", filter.molecule, "Molecule label");
  db_query->add_option("--basis", filter.basis, "Basis label");
  db_query->add_option("--method", filter.method, "hf, vqe or exact");
  for (auto* sub : {db_put, db_get, db_list, db_query}) sub->add_option("--db", db_dir, "Database directory")->required();

  // curve
  std::string curve_molecule, curve_basis;
  auto* curve = app.add_subcommand("curve", "Emit a CSV energy curve from the database");
  curve->add_option("--db", db_dir, "Database directory")->required();
  curve->add_option("--molecule", curve_molecule, "Molecule label")->required();
  curve->add_option("--basis", curve_basis, "Basis label");
  curve->add_option("--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*integrals) {
      const AOIntegrals ao = load_ao(in);
      Output out(output);
      write_ao_file(ao, out.stream());
    } else if (*scf) {
      const AOIntegrals ao = load_ao(in);
      SCFOptions opts;
      if (in.verbose) opts.log = &std::cerr;
      const SCFResult r = scf_solve(ao, opts);
      fmt::print("converged {}\niterations {}\ne_hf {:.12f}\n", r.converged, r.iterations, r.e_hf);
      for (Eigen::Index i = 0; i < r.orbital_energies.size(); ++i)
        fmt::print("orbital {} {:.10f}\n", i, r.orbital_energies(i));
      if (!output.empty()) save_fcidump(ao_to_mo(ao, r.mo_coefficients), output);
      if (!r.converged) return 2;
    } else if (*ham) {
      const Molecule m = load_molecule(in);
      const FermionOperator op = build_fermionic_hamiltonian(m.mo);
      Output out(output);
      if (pauli) {
        PauliSum h = real_part_checked(jordan_wigner(op));
        if (limit > 0 && h.terms.size() > static_cast<std::size_t>(limit)) h.terms.resize(static_cast<std::size_t>(limit));
        out.stream() << to_text(h);
      } else {
        out.stream() << serialize_terms(op, static_cast<std::size_t>(limit));
      }
      fmt::print(std::cerr, "spin orbitals {}, terms {}, constant {}\n", op.n_modes, op.terms.size(), op.constant);
    } else if (*vqe) {
      const Molecule m = load_molecule(in);
      const PauliSum h = real_part_checked(jordan_wigner(build_fermionic_hamiltonian(m.mo)));
      const Ansatz a = parse_ansatz(ansatz_name) == AnsatzKind::UCCSD
                           ? uccsd_ansatz(h.n_qubits, m.mo.n_electrons)
                           : hardware_efficient_ansatz(h.n_qubits, m.mo.n_electrons, depth);
      VQEConfig cfg;
      cfg.optimizer.method = parse_optimizer(optimizer_name);
      cfg.optimizer.seed = seed;
      cfg.optimizer.max_evaluations = max_evals;
      cfg.optimizer.simplex_step = simplex_step;
      if (progress) cfg.progress = &std::cerr;
      const VQEResult r = vqe_solve(h, a, cfg);
      fmt::print("ansatz {}\nparameters {}\nevaluations {}\nconverged {}\ne_hf {:.12f}\ne_vqe {:.12f}\n",
                 a.describe(), a.parameter_count, r.evaluations, r.converged, m.e_hf, r.energy);
    } else if (*exact) {
      const Molecule m = load_molecule(in);
      const PauliSum h = real_part_checked(jordan_wigner(build_fermionic_hamiltonian(m.mo)));
      fmt::print("qubits {}\ne_hf {:.12f}\n", h.n_qubits, m.e_hf);
      if (full_space) {
        fmt::print("dense_full_space {:.12f}\n", dense_ground_energy(h).ground_energy);
        if (m.mo.n_orbitals <= kMaxFciOrbitals) fmt::print("fci_all_sectors {:.12f}\n", fci_all_sectors(m.mo));
      } else {
        const Sector sector = Sector::closed_shell(m.mo.n_electrons);
        fmt::print("dense {:.12f}\n", dense_ground_energy(h, sector).ground_energy);
        if (m.mo.n_orbitals <= kMaxFciOrbitals) fmt::print("fci {:.12f}\n", fci_determinant_oracle(m.mo, sector));
      }
    } else if (*scan) {
      const auto pair = split_list(atoms);
      if (pair.size() != 2) fail(ErrorKind::Usage, "--atoms expects two symbols, e.g. H,H");
      spec.fragment_a = {{pair[0], Eigen::Vector3d::Zero()}};
      spec.fragment_b = {{pair[1], Eigen::Vector3d::Zero()}};
      spec.bond_lengths = parse_lengths(lengths);
      spec.methods = split_list(methods);
      spec.ansatz = parse_ansatz(ansatz_name);
      spec.depth = depth;
      spec.optimizer.method = parse_optimizer(optimizer_name);
      spec.optimizer.seed = seed;
      spec.optimizer.max_evaluations = max_evals;
      spec.optimizer.simplex_step = simplex_step;
      if (!fcidump_pattern.empty()) spec.fcidump_pattern = fcidump_pattern;
      std::optional<Database> store;
      if (!db_dir.empty()) store.emplace(db_dir);
      const auto records = run_scan(spec, store ? &*store : nullptr, &std::cerr);
      std::vector<EnergyRecord> ok;
      for (const auto& r : records)
        if (r.error.empty()) ok.push_back(r);
      Output out(output);
      out.stream() << emit_curve(ok);
      if (ok.size() != records.size()) return 2;
    } else if (*db) {
      Database store(db_dir);
      if (*db_put) {
        std::ifstream f(record_file);
        if (!f) fail(ErrorKind::Io, fmt::format("cannot read '{}'", record_file));
        std::stringstream ss;
        ss << f.rdbuf();
        EnergyRecord r = record_from_json(ss.str());
        r.record_id.clear();
        r.created_at.clear();
        fmt::print("{}\n", store.put(r));
      } else if (*db_get) {
        const auto r = store.get(record_id, version);
        if (!r) fail(ErrorKind::Usage, fmt::format("no record '{}'", record_id));
        std::cout << to_json(*r);
      } else if (*db_list) {
        for (const auto& e : store.index())
          fmt::print("{} v{} {} {} r={} {}\n", e.record_id, e.version, e.molecule, e.basis, e.bond_length, e.created_at);
      } else if (*db_query) {
        for (const auto& r : store.query(filter)) print_record_summary(std::cout, r);
      }
    } else if (*curve) {
      Database store(db_dir);
      RecordFilter f;
      f.molecule = curve_molecule;
      if (!curve_basis.empty()) f.basis = curve_basis;
      Output out(output);
      out.stream() << emit_curve(store.query(f));
    }
  } catch (const Error& e) {
    fmt::print(std::cerr, "gsbench: {}\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "gsbench: {}\n", e.what());
    return 2;
  }
  return 0;
}
