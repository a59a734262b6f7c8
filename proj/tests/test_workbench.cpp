#include <catch_amalgamated.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "gsbench/database.hpp"
#include "gsbench/errors.hpp"
#include "gsbench/scan.hpp"
#include "test_support.hpp"

using namespace gsbench;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() / ("gsbench_wb_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

EnergyRecord sample_record(const std::string& molecule, double r, std::uint64_t seed = 0) {
  EnergyRecord rec;
  rec.molecule = molecule;
  rec.geometry = diatomic("H", "H", r);
  rec.bond_length = r;
  rec.basis = "sto-3g";
  rec.n_qubits = 4;
  rec.e_hf = -1.0 - r / 10.0;
  rec.e_exact = -1.1 - r / 10.0;
  rec.method = {{"hf", "exact"}, "uccsd", 0, "nelder_mead", seed, 2000, 0, 0.1, 0};
  return rec;
}

ScanSpec h2_spec(std::vector<double> lengths, std::vector<std::string> methods) {
  ScanSpec s;
  s.molecule = "H2";
  s.fragment_a = {{"H", Eigen::Vector3d::Zero()}};
  s.fragment_b = {{"H", Eigen::Vector3d::Zero()}};
  s.bond_lengths = std::move(lengths);
  s.methods = std::move(methods);
  return s;
}

ScanSpec lih_spec(std::vector<double> lengths) {
  ScanSpec s;
  s.molecule = "LiH";
  s.fragment_a = {{"Li", Eigen::Vector3d::Zero()}};
  s.fragment_b = {{"H", Eigen::Vector3d::Zero()}};
  s.bond_lengths = std::move(lengths);
  s.methods = {"hf", "exact"};
  s.fcidump_pattern = testing::data_path("fcidump/lih/lih_{r}.fcidump");
  return s;
}

// Index of the interior minimum when the sequence strictly decreases then
// strictly increases; -1 otherwise.
int single_interior_minimum(const std::vector<double>& e) {
  const auto it = std::min_element(e.begin(), e.end());
  const auto k = static_cast<int>(it - e.begin());
  if (k == 0 || k + 1 == static_cast<int>(e.size())) return -1;
  for (int i = 0; i < k; ++i)
    if (!(e[static_cast<std::size_t>(i)] > e[static_cast<std::size_t>(i + 1)])) return -1;
  for (std::size_t i = static_cast<std::size_t>(k); i + 1 < e.size(); ++i)
    if (!(e[i] < e[i + 1])) return -1;
  return k;
}

}  // namespace

TEST_CASE("empty store") {
  TempDir dir;
  Database db(dir.path);
  CHECK(db.query().empty());
  CHECK(db.index().empty());
  CHECK(db.audit().empty());
  CHECK_FALSE(db.get("nothing").has_value());
}

TEST_CASE("put then get returns the same record") {
  TempDir dir;
  Database db(dir.path);
  auto rec = sample_record("H2", 0.7354);
  rec.e_vqe = -1.13;
  const auto id = db.put(rec);
  CHECK(id == compute_record_id(rec));
  const auto back = db.get(id);
  REQUIRE(back);
  CHECK(back->version == 1);
  rec.record_id = id;
  rec.version = 1;
  rec.created_at = back->created_at;
  CHECK(*back == rec);
  CHECK_FALSE(back->created_at.empty());
}

TEST_CASE("repeated puts add versions under one id") {
  TempDir dir;
  Database db(dir.path);
  auto rec = sample_record("H2", 1.0);
  const auto a = db.put(rec);
  rec.e_hf = -0.9;
  const auto b = db.put(rec);
  CHECK(a == b);
  CHECK(db.index().size() == 2);
  CHECK(db.get(a)->version == 2);
  CHECK(db.get(a, 1)->e_hf == Approx(-1.1));
  CHECK(db.get(a, 2)->e_hf == -0.9);
  CHECK_FALSE(db.get(a, 3).has_value());
  CHECK(db.query().size() == 1);
  CHECK(db.audit().empty());
}

TEST_CASE("JSON form round-trips every field") {
  auto rec = sample_record("HeH+", 0.772, 7);
  rec.geometry = diatomic("He", "H", 0.772, 1);
  rec.e_vqe = -2.851024123456789;
  rec.e_hf.reset();
  rec.hamiltonian_ref = {"hamiltonians/x.fop", "hamiltonians/x.pauli"};
  rec.method.evaluations = 311;
  rec.record_id = compute_record_id(rec);
  rec.created_at = utc_timestamp();
  rec.version = 4;
  CHECK(record_from_json(to_json(rec)) == rec);
  CHECK_THROWS_AS(record_from_json("{\"record_id\": 3}"), Error);
}

TEST_CASE("record ids depend on content, not on outcomes") {
  auto a = sample_record("H2", 0.9);
  auto b = a;
  b.method.evaluations = 1234;
  b.e_exact = -5.0;
  CHECK(compute_record_id(a) == compute_record_id(b));
  CHECK(compute_record_id(a).size() == 64);
  b.method.seed = 1;
  CHECK(compute_record_id(a) != compute_record_id(b));
  auto c = a;
  c.basis = "other";
  CHECK(compute_record_id(a) != compute_record_id(c));
  auto d = a;
  d.geometry = diatomic("H", "H", 0.91);
  CHECK(compute_record_id(a) != compute_record_id(d));
}

TEST_CASE("query filters and ordering") {
  TempDir dir;
  Database db(dir.path);
  for (double r : {1.5, 0.5, 1.0}) db.put(sample_record("H2", r));
  auto heh = sample_record("HeH+", 0.8);
  heh.e_vqe = -1.0;
  heh.method.methods = {"hf", "vqe", "exact"};
  db.put(heh);
  auto other = sample_record("H2", 0.7);
  other.basis = "6-31g";
  db.put(other);

  const auto all = db.query();
  REQUIRE(all.size() == 5);
  CHECK(all[0].molecule == "H2");
  CHECK(all[0].bond_length == 0.5);
  CHECK(all[1].bond_length == 0.7);
  CHECK(all[3].bond_length == 1.5);
  CHECK(all[4].molecule == "HeH+");

  RecordFilter f;
  f.molecule = "H2";
  CHECK(db.query(f).size() == 4);
  f.basis = "sto-3g";
  CHECK(db.query(f).size() == 3);
  RecordFilter g;
  g.basis = "sto-3g";
  g.method = "vqe";
  const auto with_vqe = db.query(g);
  REQUIRE(with_vqe.size() == 1);
  CHECK(with_vqe[0].e_vqe.has_value());
}

TEST_CASE("concurrent writers keep the index complete") {
  TempDir dir;
  Database shared(dir.path);
  Database second(dir.path);  // separate instance: exercises the file lock
  std::vector<std::thread> pool;
  for (int w = 0; w < 6; ++w)
    pool.emplace_back([&, w] {
      for (int k = 0; k < 8; ++k) (w % 2 ? second : shared).put(sample_record("H2", 0.5 + 0.01 * (w * 8 + k)));
    });
  for (auto& t : pool) t.join();
  CHECK(shared.index().size() == 48);
  CHECK(shared.query().size() == 48);
  CHECK(shared.audit().empty());
}

TEST_CASE("audit reports damage") {
  TempDir dir;
  Database db(dir.path);
  const auto a = db.put(sample_record("H2", 0.6));
  const auto b = db.put(sample_record("H2", 0.8));
  REQUIRE(db.audit().empty());

  fs::remove(dir.path / "records" / a / "v1.json");
  auto problems = db.audit();
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("missing") != std::string::npos);

  auto bad = *db.get(b);
  bad.e_vqe = *bad.e_exact - 0.5;
  write_atomically(dir.path / "records" / b / "v1.json", to_json(bad));
  problems = db.audit();
  CHECK(std::any_of(problems.begin(), problems.end(),
                    [](const std::string& p) { return p.find("variational") != std::string::npos; }));

  bad = *db.get(b);
  bad.molecule = "D2";
  write_atomically(dir.path / "records" / b / "v1.json", to_json(bad));
  problems = db.audit();
  CHECK(std::any_of(problems.begin(), problems.end(),
                    [](const std::string& p) { return p.find("hash") != std::string::npos; }));
}

TEST_CASE("curve emission") {
  const auto one = emit_curve({sample_record("H2", 0.75)});
  CHECK(one == "bond_length_angstrom,e_hf,e_vqe,e_exact\n0.75,-1.075,,-1.175\n");

  std::vector<EnergyRecord> recs;
  for (double r : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) recs.push_back(sample_record("H2", r));
  const auto sorted = emit_curve(recs);
  std::mt19937_64 rng(3);
  std::shuffle(recs.begin(), recs.end(), rng);
  CHECK(emit_curve(recs) == sorted);

  recs.push_back(sample_record("LiH", 1.6));
  CHECK_THROWS_AS(emit_curve(recs), Error);
  CHECK(emit_curve({}) == "bond_length_angstrom,e_hf,e_vqe,e_exact\n");
}

TEST_CASE("length grid and spec validation") {
  const auto g = length_grid(0.3, 2.5, 0.1);
  REQUIRE(g.size() == 23);
  CHECK(g.front() == 0.3);
  CHECK(g[4] == 0.7);
  CHECK(g.back() == 2.5);

  auto s = h2_spec({0.5, 0.4}, {"hf"});
  CHECK_THROWS_AS(s.validate(), Error);
  s.bond_lengths = {};
  try {
    run_scan(s);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
  }
  s.bond_lengths = {0.5, 11.0};
  CHECK_THROWS_AS(s.validate(), Error);
  s.bond_lengths = {0.5};
  s.methods = {"ccsd"};
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("method gating") {
  const auto recs = run_scan(h2_spec({0.6, 0.9, 1.2}, {"hf"}));
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) {
    CHECK(r.error.empty());
    CHECK(r.e_hf.has_value());
    CHECK_FALSE(r.e_vqe.has_value());
    CHECK_FALSE(r.e_exact.has_value());
    CHECK(r.n_qubits == 4);
  }
}

TEST_CASE("scan stores records with Hamiltonians") {
  TempDir dir;
  Database db(dir.path);
  auto spec = h2_spec({0.7, 1.4}, {"hf", "vqe", "exact"});
  spec.workers = 2;
  std::ostringstream log;
  const auto recs = run_scan(spec, &db, &log);
  REQUIRE(recs.size() == 2);
  RecordFilter f;
  f.molecule = "H2";
  const auto stored = db.query(f);
  REQUIRE(stored.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(stored[i] == recs[i]);
    CHECK(*stored[i].e_vqe >= *stored[i].e_exact - 1e-9);
    CHECK(*stored[i].e_hf >= *stored[i].e_exact - 1e-9);
    CHECK(std::abs(*stored[i].e_vqe - *stored[i].e_exact) <= 1.6e-3);
    CHECK(stored[i].method.evaluations > 0);
    std::ifstream fop(dir.path / stored[i].hamiltonian_ref.fermion);
    const auto op = read_fermion_operator(fop);
    CHECK(op.n_modes == 4);
    CHECK(fs::exists(dir.path / stored[i].hamiltonian_ref.pauli));
  }
  CHECK(db.audit().empty());
  CHECK(log.str().find("point r=0.7000") != std::string::npos);
}

TEST_CASE("failed points are reported and skipped") {
  TempDir dir;
  Database db(dir.path);
  auto spec = lih_spec({1.6, 1.7, 1.8});  // no file for 1.70
  const auto recs = run_scan(spec, &db);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].error.empty());
  CHECK_FALSE(recs[1].error.empty());
  CHECK_FALSE(recs[1].e_exact.has_value());
  CHECK(recs[2].error.empty());
  CHECK(db.query().size() == 2);
  CHECK(recs[0].basis == "fcidump:sto-3g");

  auto all_bad = h2_spec({0.5, 0.6}, {"hf"});
  all_bad.fragment_a = {{"Ne", Eigen::Vector3d::Zero()}};
  all_bad.fragment_b = {{"Ne", Eigen::Vector3d::Zero()}};
  try {
    run_scan(all_bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Computation);
  }

  auto wrong = lih_spec({1.6});
  wrong.charge = 2;
  CHECK_THROWS_AS(run_scan(wrong), Error);
}

TEST_CASE("H2 exact curve has one minimum between 0.6 and 0.9 A") {
  const auto recs = run_scan(h2_spec(length_grid(0.3, 2.5, 0.1), {"hf", "exact"}));
  std::vector<double> e;
  for (const auto& r : recs) e.push_back(*r.e_exact);
  const int k = single_interior_minimum(e);
  REQUIRE(k > 0);
  CHECK(recs[static_cast<std::size_t>(k)].bond_length >= 0.6);
  CHECK(recs[static_cast<std::size_t>(k)].bond_length <= 0.9);

  // The CSV locates the same minimum.
  std::istringstream csv(emit_curve(recs));
  std::string line;
  std::getline(csv, line);
  double best = 1e9, at = -1;
  while (std::getline(csv, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    const double ex = std::stod(cols.at(3));
    if (ex < best) best = ex, at = std::stod(cols[0]);
  }
  CHECK(at == recs[static_cast<std::size_t>(k)].bond_length);
}

TEST_CASE("LiH curve from the shipped FCIDUMP files") {
  const auto recs = run_scan(lih_spec(length_grid(0.6, 4.0, 0.2)));
  REQUIRE(recs.size() == 18);
  std::vector<double> e;
  for (const auto& r : recs) {
    REQUIRE(r.error.empty());
    CHECK(*r.e_hf >= *r.e_exact - 1e-9);
    e.push_back(*r.e_exact);
  }
  const int k = single_interior_minimum(e);
  REQUIRE(k > 0);
  CHECK(recs[static_cast<std::size_t>(k)].bond_length == Approx(1.6));
  CHECK(e[static_cast<std::size_t>(k)] == Approx(-7.882324378883502).margin(1e-8));
}

TEST_CASE("frozen-core LiH scan point") {
  auto spec = lih_spec({1.6});
  spec.frozen_core = 1;
  spec.methods = {"hf", "vqe", "exact"};
  spec.optimizer.max_evaluations = 200;
  const auto recs = run_scan(spec);
  REQUIRE(recs[0].error.empty());
  CHECK(recs[0].n_qubits == 10);
  CHECK(*recs[0].e_exact == Approx(-7.882324378883502).margin(5e-3));
  CHECK(*recs[0].e_vqe >= *recs[0].e_exact - 1e-9);
  CHECK(*recs[0].e_vqe <= *recs[0].e_hf + 1e-9);
  CHECK(recs[0].method.evaluations <= 200);
}
