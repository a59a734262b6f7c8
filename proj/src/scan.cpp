#include "gsbench/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "gsbench/errors.hpp"
#include "gsbench/exact.hpp"
#include "gsbench/fermion.hpp"
#include "gsbench/pauli.hpp"
#include "gsbench/scf.hpp"
#include "gsbench/vqe.hpp"

namespace gsbench {

namespace {

std::string fcidump_path(const std::string& pattern, double r) {
  std::string out = pattern;
  const auto pos = out.find("{r}");
  if (pos == std::string::npos) fail(ErrorKind::Usage, "FCIDUMP pattern needs a '{r}' placeholder");
  out.replace(pos, 3, fmt::format("{:.2f}", r));
  return out;
}

bool wants(const ScanSpec& spec, const std::string& m) {
  return std::find(spec.methods.begin(), spec.methods.end(), m) != spec.methods.end();
}

}  // namespace

Geometry ScanSpec::geometry_at(double bond_length) const {
  Geometry g;
  g.charge = charge;
  const Eigen::Vector3d dir = axis.normalized();
  for (const auto& a : fragment_a)
    g.atoms.push_back({a.symbol, atomic_number(a.symbol), a.offset * kBohrPerAngstrom});
  for (const auto& a : fragment_b)
    g.atoms.push_back({a.symbol, atomic_number(a.symbol), (a.offset + bond_length * dir) * kBohrPerAngstrom});
  return g;
}

void ScanSpec::validate() const {
  if (bond_lengths.empty()) fail(ErrorKind::Usage, "scan needs at least one bond length");
  for (std::size_t i = 0; i < bond_lengths.size(); ++i) {
    const double r = bond_lengths[i];
    if (!(r > 0.0 && r <= 10.0)) fail(ErrorKind::Usage, fmt::format("bond length {} outside (0, 10] Angstrom", r));
    if (i > 0 && !(r > bond_lengths[i - 1])) fail(ErrorKind::Usage, "bond lengths must be strictly ascending");
  }
  if (fragment_a.empty() || fragment_b.empty()) fail(ErrorKind::Usage, "scan needs two non-empty fragments");
  if (!(axis.norm() > 0.0)) fail(ErrorKind::Usage, "bond axis must be non-zero");
  if (methods.empty()) fail(ErrorKind::Usage, "scan needs at least one method");
  for (const auto& m : methods)
    if (m != "hf" && m != "vqe" && m != "exact") fail(ErrorKind::Usage, fmt::format("unknown method '{}'", m));
  if (workers < 1) fail(ErrorKind::Usage, "worker count must be positive");
  if (molecule.empty()) fail(ErrorKind::Usage, "scan needs a molecule label");
}

std::vector<double> length_grid(double first, double last, double step) {
  if (!(step > 0.0) || last < first) fail(ErrorKind::Usage, "bad length grid");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((last - first) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(std::round((first + static_cast<double>(i) * step) * 1e10) / 1e10);
  return out;
}

double reference_energy(const MOIntegrals& mo) {
  if (mo.n_electrons % 2 != 0) fail(ErrorKind::Usage, "reference energy needs a closed shell");
  const std::size_t occ = static_cast<std::size_t>(mo.n_electrons / 2);
  double e = mo.e_core;
  for (std::size_t i = 0; i < occ; ++i) {
    e += 2.0 * mo.h(i, i);
    for (std::size_t j = 0; j < occ; ++j) e += 2.0 * mo.g(i, i, j, j) - mo.g(i, j, j, i);
  }
  return e;
}

PointSolution solve_point(const MOIntegrals& full, std::optional<double> e_hf, const ScanSpec& spec) {
  PointSolution out;
  out.e_hf = e_hf ? *e_hf : reference_energy(full);
  out.mo = freeze_core(full, spec.frozen_core);

  const FermionOperator fop = build_fermionic_hamiltonian(out.mo);
  const PauliSum h = real_part_checked(jordan_wigner(fop));
  out.n_qubits = h.n_qubits;
  {
    std::ostringstream ss;
    write_fermion_operator(fop, ss);
    out.fermion_text = ss.str();
  }
  out.pauli_text = to_text(h);

  if (wants(spec, "exact"))
    out.e_exact = dense_ground_energy(h, Sector::closed_shell(out.mo.n_electrons)).ground_energy;
  if (wants(spec, "vqe")) {
    const Ansatz a = spec.ansatz == AnsatzKind::UCCSD
                         ? uccsd_ansatz(h.n_qubits, out.mo.n_electrons)
                         : hardware_efficient_ansatz(h.n_qubits, out.mo.n_electrons, spec.depth);
    VQEConfig cfg;
    cfg.optimizer = spec.optimizer;
    const VQEResult r = vqe_solve(h, a, cfg);
    out.e_vqe = r.energy;
    out.evaluations = r.evaluations;
  }
  return out;
}

std::vector<EnergyRecord> run_scan(const ScanSpec& spec, Database* db, std::ostream* log) {
  spec.validate();
  const std::size_t n = spec.bond_lengths.size();
  std::vector<EnergyRecord> records(n);
  std::mutex log_mutex;

  auto run_point = [&](std::size_t i) {
    const double r = spec.bond_lengths[i];
    EnergyRecord& rec = records[i];
    rec.molecule = spec.molecule;
    rec.bond_length = r;
    rec.basis = spec.fcidump_pattern ? "fcidump:" + spec.basis : spec.basis;
    rec.method = {spec.methods,
                  spec.ansatz == AnsatzKind::UCCSD ? "uccsd" : "hea",
                  spec.ansatz == AnsatzKind::UCCSD ? 0 : spec.depth,
                  to_string(spec.optimizer.method),
                  spec.optimizer.seed,
                  spec.optimizer.max_evaluations,
                  spec.frozen_core,
                  spec.optimizer.simplex_step,
                  0};
    try {
      rec.geometry = spec.geometry_at(r);
      MOIntegrals mo;
      std::optional<double> e_hf;
      if (spec.fcidump_pattern) {
        mo = load_fcidump(fcidump_path(*spec.fcidump_pattern, r));
        if (mo.n_electrons != rec.geometry.n_electrons())
          fail(ErrorKind::Usage, fmt::format("FCIDUMP has {} electrons, geometry has {}", mo.n_electrons,
                                             rec.geometry.n_electrons()));
      } else {
        const AOIntegrals ao = build_ao_integrals(rec.geometry, assign_basis(rec.geometry, load_basis(spec.basis)));
        const SCFResult scf = scf_solve(ao);
        if (!scf.converged) fail(ErrorKind::Computation, fmt::format("SCF did not converge at {} A", r));
        mo = ao_to_mo(ao, scf.mo_coefficients);
        e_hf = scf.e_hf;
      }
      const PointSolution sol = solve_point(mo, e_hf, spec);
      if (wants(spec, "hf")) rec.e_hf = sol.e_hf;
      rec.e_vqe = sol.e_vqe;
      rec.e_exact = sol.e_exact;
      rec.n_qubits = sol.n_qubits;
      rec.method.evaluations = sol.evaluations;
      rec.record_id = compute_record_id(rec);
      if (db) {
        rec.hamiltonian_ref = db->store_hamiltonian(rec.record_id, sol.fermion_text, sol.pauli_text);
        rec.created_at = utc_timestamp();
        db->put(rec);
        rec = *db->get(rec.record_id);
      }
      if (log) {
        std::lock_guard g(log_mutex);
        fmt::print(*log, "point r={:.4f} hf={} vqe={} exact={}\n", r, rec.e_hf ? fmt::format("{:.10f}", *rec.e_hf) : "-",
                   rec.e_vqe ? fmt::format("{:.10f}", *rec.e_vqe) : "-",
                   rec.e_exact ? fmt::format("{:.10f}", *rec.e_exact) : "-");
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.e_hf.reset();
      rec.e_vqe.reset();
      rec.e_exact.reset();
      if (log) {
        std::lock_guard g(log_mutex);
        fmt::print(*log, "point r={:.4f} failed: {}\n", r, e.what());
      }
    }
  };

  const int workers = std::min<int>(spec.workers, static_cast<int>(n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run_point(i);
      });
    for (auto& t : pool) t.join();
  }

  if (std::all_of(records.begin(), records.end(), [](const EnergyRecord& r) { return !r.error.empty(); }))
    fail(ErrorKind::Computation, fmt::format("all {} scan points failed; first: {}", n, records.front().error));
  return records;
}

std::string emit_curve(const std::vector<EnergyRecord>& records) {
  std::vector<const EnergyRecord*> sorted;
  for (const auto& r : records) {
    if (!sorted.empty() && (r.molecule != sorted.front()->molecule || r.basis != sorted.front()->basis))
      fail(ErrorKind::Usage, "curve records must share one molecule and basis");
    sorted.push_back(&r);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EnergyRecord* a, const EnergyRecord* b) { return a->bond_length < b->bond_length; });
  auto field = [](const std::optional<double>& v) { return v ? fmt::format("{:.12g}", *v) : std::string(); };
  std::string out = "bond_length_angstrom,e_hf,e_vqe,e_exact\n";
  for (const auto* r : sorted)
    out += fmt::format("{:.12g},{},{},{}\n", r->bond_length, field(r->e_hf), field(r->e_vqe), field(r->e_exact));
  return out;
}

}  // namespace gsbench
