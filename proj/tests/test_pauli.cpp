#include <catch_amalgamated.hpp>

#include <random>

#include "gsbench/errors.hpp"
#include "test_support.hpp"

using namespace gsbench;
using Catch::Approx;

namespace {

const cplx I(0.0, 1.0);

PauliTerm P(std::string_view pattern, cplx c = 1.0) { return PauliTerm::from_pattern(c, pattern); }

FermionOperator single(cplx c, std::vector<FermionFactor> f, int n) {
  FermionOperator op;
  op.n_modes = n;
  op.terms.push_back({c, std::move(f)});
  return op;
}

bool same_sum(const PauliSum& a, const PauliSum& b, double tol = 1e-15) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (!a.terms[i].same_pattern(b.terms[i]) || std::abs(a.terms[i].coefficient - b.terms[i].coefficient) > tol)
      return false;
  return true;
}

PauliTerm random_term(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::string s;
  for (int q = 0; q < n; ++q) s += "IXYZ"[letter(rng)];
  return P(s);
}

}  // namespace

TEST_CASE("single-qubit products") {
  const auto xy = pauli_multiply(P("X"), P("Y"));
  CHECK(xy.same_pattern(P("Z")));
  CHECK(xy.coefficient == I);
  const auto yx = pauli_multiply(P("Y"), P("X"));
  CHECK(yx.coefficient == -I);
  CHECK(pauli_multiply(P("Y"), P("Z")).same_pattern(P("X")));
  CHECK(pauli_multiply(P("Y"), P("Z")).coefficient == I);
  CHECK(pauli_multiply(P("Z"), P("X")).same_pattern(P("Y")));
  CHECK(pauli_multiply(P("Z"), P("X")).coefficient == I);

  const auto zz = pauli_multiply(P("Z"), P("Z"));
  CHECK(zz.is_identity());
  CHECK(zz.coefficient == cplx(1.0));

  const auto two = pauli_multiply(P("XY"), P("YY"));
  CHECK(two.same_pattern(P("ZI")));
  CHECK(two.coefficient == I);
}

TEST_CASE("products agree with dense matrices") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_term(rng, 3), b = random_term(rng, 3);
    const auto ab = pauli_multiply(a, b);
    const Eigen::MatrixXcd want = testing::kron_pauli(a.pattern(3)) * testing::kron_pauli(b.pattern(3));
    const Eigen::MatrixXcd got = ab.coefficient * testing::kron_pauli(ab.pattern(3));
    CHECK((want - got).cwiseAbs().maxCoeff() == 0.0);
    const bool dense_commute = (want - testing::kron_pauli(b.pattern(3)) * testing::kron_pauli(a.pattern(3)))
                                   .cwiseAbs()
                                   .maxCoeff() == 0.0;
    CHECK(commutes(a, b) == dense_commute);
  }
}

TEST_CASE("pattern helpers") {
  const auto t = P("IXYZ", 0.5);
  CHECK(t.letter(0) == Pauli::I);
  CHECK(t.letter(1) == Pauli::X);
  CHECK(t.letter(2) == Pauli::Y);
  CHECK(t.letter(3) == Pauli::Z);
  CHECK(t.weight() == 3);
  CHECK(t.pattern(4) == "IXYZ");
  CHECK(t.pattern(6) == "IXYZII");
  const PauliTerm u(0.5, t.letters());
  CHECK(u.same_pattern(t));
  CHECK_THROWS_AS(P("IXQ"), Error);
}

TEST_CASE("Jordan-Wigner examples") {
  const auto number = jordan_wigner(single(1.0, {{0, true}, {0, false}}, 1));
  REQUIRE(number.terms.size() == 2);
  CHECK(number.terms[0].is_identity());
  CHECK(number.terms[0].coefficient == cplx(0.5));
  CHECK(number.terms[1].same_pattern(P("Z")));
  CHECK(number.terms[1].coefficient == cplx(-0.5));

  const auto create = jordan_wigner(single(1.0, {{0, true}}, 1));
  REQUIRE(create.terms.size() == 2);
  CHECK(create.terms[0].same_pattern(P("X")));
  CHECK(create.terms[0].coefficient == cplx(0.5));
  CHECK(create.terms[1].same_pattern(P("Y")));
  CHECK(create.terms[1].coefficient == -0.5 * I);

  FermionOperator hop;
  hop.n_modes = 2;
  hop.terms.push_back({1.0, {{0, true}, {1, false}}});
  hop.terms.push_back({1.0, {{1, true}, {0, false}}});
  const auto h = jordan_wigner(hop);
  REQUIRE(h.terms.size() == 2);
  CHECK(h.terms[0].same_pattern(P("XX")));
  CHECK(h.terms[0].coefficient == cplx(0.5));
  CHECK(h.terms[1].same_pattern(P("YY")));
  CHECK(h.terms[1].coefficient == cplx(0.5));
  CHECK((testing::kron_dense(h) - testing::dense_fermion(hop)).cwiseAbs().maxCoeff() <= 1e-15);

  FermionOperator c;
  c.n_modes = 2;
  c.constant = -0.75;
  const auto k = jordan_wigner(c);
  CHECK(k.identity_coefficient() == cplx(-0.75));
}

TEST_CASE("ladder operators anticommute") {
  for (int n = 1; n <= 4; ++n)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const auto a = testing::kron_dense(jordan_wigner(single(1.0, {{p, false}}, n)));
        const auto ad = testing::kron_dense(jordan_wigner(single(1.0, {{q, true}}, n)));
        const auto dim = a.rows();
        const Eigen::MatrixXcd anti = a * ad + ad * a;
        const Eigen::MatrixXcd want = (p == q ? 1.0 : 0.0) * Eigen::MatrixXcd::Identity(dim, dim);
        CHECK((anti - want).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((a - testing::dense_annihilator(p, n)).cwiseAbs().maxCoeff() <= 1e-15);
      }
}

TEST_CASE("Jordan-Wigner preserves the spectrum of random Hermitian operators") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> deg(1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    std::uniform_int_distribution<int> mode(0, n - 1);
    FermionOperator op;
    op.n_modes = n;
    op.constant = u(rng);
    for (int k = 0; k < 6; ++k) {
      FermionTerm t{cplx(u(rng), u(rng)), {}};
      const int d = deg(rng);
      for (int j = 0; j < d; ++j) t.factors.push_back({mode(rng), true});
      for (int j = 0; j < d; ++j) t.factors.push_back({mode(rng), false});
      op.terms.push_back(t);
      auto a = t.adjoint();
      op.terms.push_back(a);
    }
    REQUIRE(op.is_hermitian());
    const auto q = jordan_wigner(op);
    CHECK(q.max_imaginary() <= 1e-12);
    const auto h = real_part_checked(q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(testing::kron_dense(h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(testing::dense_fermion(op));
    CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(dense_ground_energy(h).ground_energy == Approx(e2.eigenvalues()(0)).margin(1e-9));
  }
}

TEST_CASE("H2 Hamiltonian maps to a real Pauli sum") {
  const auto p = testing::h2(0.7354);
  CHECK(p.h.n_qubits == 4);
  CHECK(p.h.terms.size() == 15);
  const auto raw = jordan_wigner(p.fop);
  CHECK(raw.max_imaginary() <= 1e-12);
  CHECK((testing::kron_dense(p.h) - testing::dense_fermion(p.fop)).cwiseAbs().maxCoeff() <= 1e-12);

  PauliSum bad(1, {PauliTerm(cplx(1.0, 0.1), 1, 0)});
  try {
    real_part_checked(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Computation);
  }
}

TEST_CASE("canonicalize merges, drops and orders") {
  const auto doubled = canonicalize(PauliSum(1, {P("X"), P("X")}));
  REQUIRE(doubled.terms.size() == 1);
  CHECK(doubled.terms[0].coefficient == cplx(2.0));

  CHECK(canonicalize(PauliSum(1, {P("X"), P("X", -1.0)})).terms.empty());
  CHECK(canonicalize(PauliSum(1, {P("Z", 1e-13)})).terms.empty());

  const auto ordered = canonicalize(PauliSum(3, {P("ZZI"), P("IIX"), P("III", 2.0), P("XII"), P("ZII")}));
  REQUIRE(ordered.terms.size() == 5);
  CHECK(ordered.terms[0].is_identity());
  CHECK(ordered.terms[1].weight() == 1);
  CHECK(ordered.terms[4].same_pattern(P("ZZI")));
}

TEST_CASE("canonicalize is idempotent") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    PauliSum s(4);
    for (int k = 0; k < 12; ++k) {
      auto t = random_term(rng, 4);
      t.coefficient = cplx(u(rng), u(rng));
      s.terms.push_back(t);
    }
    const auto once = canonicalize(s);
    CHECK(same_sum(once, canonicalize(once), 0.0));
    CHECK((testing::kron_dense(once) - testing::kron_dense(s)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("sum algebra") {
  const PauliSum a(2, {P("XI"), P("IZ", 2.0)});
  const PauliSum b(2, {P("YI"), P("II", -1.0)});
  const auto prod = a * b;
  CHECK((testing::kron_dense(prod) - testing::kron_dense(a) * testing::kron_dense(b)).cwiseAbs().maxCoeff() <= 1e-14);
  const auto sum = a + b;
  CHECK((testing::kron_dense(sum) - testing::kron_dense(a) - testing::kron_dense(b)).cwiseAbs().maxCoeff() <= 1e-14);
  auto scaled = a;
  scaled *= I;
  CHECK((testing::kron_dense(scaled.adjoint()) - testing::kron_dense(scaled).adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("qubit-wise commuting groups") {
  const auto groups = qwc_group(PauliSum(2, {P("ZI"), P("ZZ"), P("XI")}));
  REQUIRE(groups.size() == 2);
  REQUIRE(groups[0].size() == 2);
  CHECK(groups[0][0].same_pattern(P("ZI")));
  CHECK(groups[0][1].same_pattern(P("ZZ")));
  REQUIRE(groups[1].size() == 1);
  CHECK(groups[1][0].same_pattern(P("XI")));

  CHECK(qwc_group(PauliSum(2, {P("XY"), P("XY"), P("XY")})).size() == 1);
  CHECK(qubitwise_commutes(P("XI"), P("IZ")));
  CHECK_FALSE(qubitwise_commutes(P("XX"), P("YY")));
  CHECK(commutes(P("XX"), P("YY")));
}

TEST_CASE("H2 grouping is small and every group commutes") {
  const auto p = testing::h2(0.7354);
  const auto groups = qwc_group(p.h);
  CHECK(groups.size() <= 5);
  std::size_t total = 0;
  for (const auto& g : groups) {
    total += g.size();
    for (const auto& a : g)
      for (const auto& b : g) {
        const auto ma = testing::kron_pauli(a.pattern(4)), mb = testing::kron_pauli(b.pattern(4));
        CHECK((ma * mb - mb * ma).cwiseAbs().maxCoeff() == 0.0);
      }
  }
  CHECK(total == p.h.terms.size());
}

TEST_CASE("text form round trip") {
  const auto p = testing::heh_plus(1.0);
  const auto text = to_text(p.h);
  const auto back = parse_pauli_text(text);
  CHECK(back.n_qubits == p.h.n_qubits);
  CHECK(same_sum(back, p.h, 0.0));
  CHECK_THROWS_AS(parse_pauli_text("0.5 XQ\n"), Error);
}
