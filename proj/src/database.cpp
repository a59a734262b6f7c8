#include "gsbench/database.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <openssl/evp.h>

#include <json.hpp>

#include "gsbench/errors.hpp"

namespace gsbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json geometry_json(const Geometry& g) {
  json atoms = json::array();
  for (const auto& a : g.atoms)
    atoms.push_back({{"symbol", a.symbol},
                     {"atomic_number", a.atomic_number},
                     {"position_bohr", {a.position.x(), a.position.y(), a.position.z()}}});
  return {{"charge", g.charge}, {"atoms", atoms}};
}

Geometry geometry_from(const json& j) {
  Geometry g;
  g.charge = j.at("charge").get<int>();
  for (const auto& a : j.at("atoms")) {
    const auto& p = a.at("position_bohr");
    g.atoms.push_back({a.at("symbol").get<std::string>(), a.at("atomic_number").get<int>(),
                       Eigen::Vector3d(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>())});
  }
  return g;
}

json method_json(const MethodInfo& m, bool with_outcome) {
  json j = {{"methods", m.methods},     {"ansatz", m.ansatz},
            {"depth", m.depth},         {"optimizer", m.optimizer},
            {"seed", m.seed},           {"max_evaluations", m.max_evaluations},
            {"frozen_core", m.frozen_core}, {"simplex_step", m.simplex_step}};
  if (with_outcome) j["evaluations"] = m.evaluations;
  return j;
}

MethodInfo method_from(const json& j) {
  MethodInfo m;
  m.methods = j.at("methods").get<std::vector<std::string>>();
  m.ansatz = j.at("ansatz").get<std::string>();
  m.depth = j.at("depth").get<int>();
  m.optimizer = j.at("optimizer").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.max_evaluations = j.at("max_evaluations").get<int>();
  m.frozen_core = j.at("frozen_core").get<int>();
  m.simplex_step = j.value("simplex_step", 0.1);
  m.evaluations = j.value("evaluations", 0);
  return m;
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Computation, "SHA-256 failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorKind::Io, fmt::format("cannot read '{}'", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class FileLock {
 public:
  explicit FileLock(const fs::path& path) {
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) fail(ErrorKind::Io, fmt::format("cannot open lock file '{}'", path.string()));
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fail(ErrorKind::Io, "cannot lock database");
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

json index_entry_json(const IndexEntry& e) {
  return {{"record_id", e.record_id}, {"version", e.version},       {"file", e.file},
          {"molecule", e.molecule},   {"basis", e.basis},           {"bond_length_angstrom", e.bond_length},
          {"created_at", e.created_at}};
}

IndexEntry index_entry_from(const json& j) {
  return {j.at("record_id").get<std::string>(), j.at("version").get<int>(),   j.at("file").get<std::string>(),
          j.at("molecule").get<std::string>(),  j.at("basis").get<std::string>(),
          j.at("bond_length_angstrom").get<double>(), j.at("created_at").get<std::string>()};
}

std::vector<IndexEntry> read_index(const fs::path& root) {
  const fs::path p = root / "index.json";
  if (!fs::exists(p)) return {};
  std::vector<IndexEntry> out;
  try {
    const json doc = json::parse(read_file(p));
    for (const auto& e : doc.at("entries")) out.push_back(index_entry_from(e));
  } catch (const json::exception& ex) {
    fail(ErrorKind::Io, fmt::format("corrupt index '{}': {}", p.string(), ex.what()));
  }
  return out;
}

void write_index(const fs::path& root, const std::vector<IndexEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back(index_entry_json(e));
  write_atomically(root / "index.json", json{{"entries", arr}}.dump(1) + "\n");
}

}  // namespace

bool EnergyRecord::has_method(const std::string& m) const {
  if (m == "hf") return e_hf.has_value();
  if (m == "vqe") return e_vqe.has_value();
  if (m == "exact") return e_exact.has_value();
  return false;
}

bool operator==(const EnergyRecord& a, const EnergyRecord& b) {
  if (a.geometry.charge != b.geometry.charge || a.geometry.atoms.size() != b.geometry.atoms.size()) return false;
  for (std::size_t i = 0; i < a.geometry.atoms.size(); ++i) {
    const auto& x = a.geometry.atoms[i];
    const auto& y = b.geometry.atoms[i];
    if (x.symbol != y.symbol || x.atomic_number != y.atomic_number || x.position != y.position) return false;
  }
  return a.record_id == b.record_id && a.molecule == b.molecule && a.bond_length == b.bond_length &&
         a.basis == b.basis && a.n_qubits == b.n_qubits && a.e_hf == b.e_hf && a.e_vqe == b.e_vqe &&
         a.e_exact == b.e_exact && a.hamiltonian_ref == b.hamiltonian_ref && a.method == b.method &&
         a.created_at == b.created_at && a.version == b.version && a.error == b.error;
}

std::string compute_record_id(const EnergyRecord& r) {
  const json key = {{"molecule", r.molecule},
                    {"geometry", geometry_json(r.geometry)},
                    {"basis", r.basis},
                    {"method", method_json(r.method, false)}};
  return sha256_hex(key.dump());
}

std::string to_json(const EnergyRecord& r) {
  const json j = {{"record_id", r.record_id},
                  {"version", r.version},
                  {"molecule", r.molecule},
                  {"geometry", geometry_json(r.geometry)},
                  {"bond_length_angstrom", r.bond_length},
                  {"basis", r.basis},
                  {"n_qubits", r.n_qubits},
                  {"e_hf", optional_json(r.e_hf)},
                  {"e_vqe", optional_json(r.e_vqe)},
                  {"e_exact", optional_json(r.e_exact)},
                  {"hamiltonian_ref", {{"fermion", r.hamiltonian_ref.fermion}, {"pauli", r.hamiltonian_ref.pauli}}},
                  {"method", method_json(r.method, true)},
                  {"created_at", r.created_at}};
  return j.dump(2) + "\n";
}

EnergyRecord record_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    EnergyRecord r;
    r.record_id = j.at("record_id").get<std::string>();
    r.version = j.at("version").get<int>();
    r.molecule = j.at("molecule").get<std::string>();
    r.geometry = geometry_from(j.at("geometry"));
    r.bond_length = j.at("bond_length_angstrom").get<double>();
    r.basis = j.at("basis").get<std::string>();
    r.n_qubits = j.at("n_qubits").get<int>();
    r.e_hf = optional_from(j.at("e_hf"));
    r.e_vqe = optional_from(j.at("e_vqe"));
    r.e_exact = optional_from(j.at("e_exact"));
    r.hamiltonian_ref = {j.at("hamiltonian_ref").at("fermion").get<std::string>(),
                         j.at("hamiltonian_ref").at("pauli").get<std::string>()};
    r.method = method_from(j.at("method"));
    r.created_at = j.at("created_at").get<std::string>();
    return r;
  } catch (const json::exception& ex) {
    fail(ErrorKind::Parse, fmt::format("malformed record: {}", ex.what()));
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::system_clock::to_time_t(now);
  const auto micros =
      std::chrono::duration_cast<std::chrono::microseconds>(now.time_since_epoch()).count() % 1000000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}.{:06}Z", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                     tm.tm_hour, tm.tm_min, tm.tm_sec, micros);
}

void write_atomically(const fs::path& path, const std::string& text) {
  static std::atomic<unsigned long> counter{0};
  const fs::path tmp = path.string() + fmt::format(".tmp.{}.{}", ::getpid(), counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, fmt::format("cannot write '{}'", tmp.string()));
    out << text;
    out.flush();
    if (!out) fail(ErrorKind::Io, fmt::format("short write to '{}'", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::Io, fmt::format("cannot move '{}' into place", path.string()));
  }
}

Database::Database(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "records", ec);
  if (!ec) fs::create_directories(root_ / "hamiltonians", ec);
  if (ec) fail(ErrorKind::Io, fmt::format("cannot create database at '{}': {}", root_.string(), ec.message()));
}

std::string Database::put(EnergyRecord record) {
  if (record.molecule.empty()) fail(ErrorKind::Usage, "record needs a molecule label");
  if (record.record_id.empty()) record.record_id = compute_record_id(record);
  if (record.created_at.empty()) record.created_at = utc_timestamp();

  std::lock_guard guard(write_mutex_);
  FileLock lock(root_ / ".lock");
  auto entries = read_index(root_);
  int version = 0;
  for (const auto& e : entries)
    if (e.record_id == record.record_id) version = std::max(version, e.version);
  record.version = version + 1;
  record.error.clear();

  const fs::path rel = fs::path("records") / record.record_id / fmt::format("v{}.json", record.version);
  std::error_code ec;
  fs::create_directories(root_ / rel.parent_path(), ec);
  if (ec) fail(ErrorKind::Io, fmt::format("cannot create '{}'", (root_ / rel.parent_path()).string()));
  write_atomically(root_ / rel, to_json(record));

  entries.push_back({record.record_id, record.version, rel.generic_string(), record.molecule, record.basis,
                     record.bond_length, record.created_at});
  write_index(root_, entries);
  return record.record_id;
}

std::optional<EnergyRecord> Database::get(const std::string& id, std::optional<int> version) const {
  const IndexEntry* found = nullptr;
  const auto entries = read_index(root_);
  for (const auto& e : entries) {
    if (e.record_id != id) continue;
    if (version ? e.version == *version : (!found || e.version > found->version)) found = &e;
  }
  if (!found) return std::nullopt;
  return record_from_json(read_file(root_ / found->file));
}

std::vector<IndexEntry> Database::index() const { return read_index(root_); }

std::vector<EnergyRecord> Database::query(const RecordFilter& filter) const {
  std::map<std::string, IndexEntry> latest;
  for (auto& e : read_index(root_)) {
    if (filter.molecule && e.molecule != *filter.molecule) continue;
    if (filter.basis && e.basis != *filter.basis) continue;
    auto it = latest.find(e.record_id);
    if (it == latest.end() || it->second.version < e.version) latest[e.record_id] = e;
  }
  std::vector<EnergyRecord> out;
  for (const auto& [id, e] : latest) {
    auto r = record_from_json(read_file(root_ / e.file));
    if (filter.method && !r.has_method(*filter.method)) continue;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const EnergyRecord& a, const EnergyRecord& b) {
    if (a.molecule != b.molecule) return a.molecule < b.molecule;
    if (a.bond_length != b.bond_length) return a.bond_length < b.bond_length;
    return a.created_at < b.created_at;
  });
  return out;
}

HamiltonianRef Database::store_hamiltonian(const std::string& id, const std::string& fermion_text,
                                           const std::string& pauli_text) {
  HamiltonianRef ref{(fs::path("hamiltonians") / (id + ".fop")).generic_string(),
                     (fs::path("hamiltonians") / (id + ".pauli")).generic_string()};
  write_atomically(root_ / ref.fermion, fermion_text);
  write_atomically(root_ / ref.pauli, pauli_text);
  return ref;
}

std::vector<std::string> Database::audit() const {
  std::vector<std::string> problems;
  std::set<std::pair<std::string, int>> seen;
  std::vector<IndexEntry> entries;
  try {
    entries = read_index(root_);
  } catch (const Error& e) {
    return {e.what()};
  }
  for (const auto& e : entries) {
    if (!seen.insert({e.record_id, e.version}).second)
      problems.push_back(fmt::format("duplicate index entry {} v{}", e.record_id, e.version));
    const fs::path p = root_ / e.file;
    if (!fs::exists(p)) {
      problems.push_back(fmt::format("missing record file {}", e.file));
      continue;
    }
    try {
      const auto r = record_from_json(read_file(p));
      if (r.record_id != e.record_id || r.version != e.version)
        problems.push_back(fmt::format("record file {} does not match its index entry", e.file));
      if (compute_record_id(r) != r.record_id)
        problems.push_back(fmt::format("record {} has a stale content hash", e.file));
      if (r.e_exact && ((r.e_hf && *r.e_hf < *r.e_exact - 1e-9) || (r.e_vqe && *r.e_vqe < *r.e_exact - 1e-9)))
        problems.push_back(fmt::format("record {} violates the variational bound", e.file));
      for (const auto& h : {r.hamiltonian_ref.fermion, r.hamiltonian_ref.pauli})
        if (!h.empty() && !fs::exists(root_ / h)) problems.push_back(fmt::format("record {} references missing {}", e.file, h));
    } catch (const Error& ex) {
      problems.push_back(fmt::format("record file {}: {}", e.file, ex.what()));
    }
  }
  return problems;
}

}  // namespace gsbench
