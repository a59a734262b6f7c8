#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "gsbench/ansatz.hpp"
#include "gsbench/errors.hpp"
#include "gsbench/statevector.hpp"
#include "test_support.hpp"

using namespace gsbench;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

PauliSum single(std::string_view pattern, double c = 1.0) {
  return PauliSum(static_cast<int>(pattern.size()), {PauliTerm::from_pattern(c, pattern)});
}

Eigen::VectorXcd as_vector(const Statevector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

Statevector random_state(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-pi, pi);
  Circuit c(n);
  for (int layer = 0; layer < 3; ++layer) {
    for (int q = 0; q < n; ++q) c.ry(q, u(rng)).rz(q, u(rng));
    for (int q = 0; q + 1 < n; ++q) c.cnot(q, q + 1);
  }
  return run_circuit(c, {});
}

}  // namespace

TEST_CASE("basic gates") {
  Circuit x(2);
  x.x(0);
  auto s = run_circuit(x, {});
  CHECK(s[1] == cplx(1.0));
  CHECK(std::abs(s[0]) + std::abs(s[2]) + std::abs(s[3]) == 0.0);

  Circuit ry(1);
  ry.ry(0, pi);
  s = run_circuit(ry, {});
  CHECK(std::abs(s[1] - cplx(1.0)) <= 1e-12);
  CHECK(std::abs(s[0]) <= 1e-12);

  Circuit bell(2);
  bell.x(0).cnot(0, 1);
  s = run_circuit(bell, {});
  CHECK(s[3] == cplx(1.0));
}

TEST_CASE("rotation matrices") {
  Statevector s(1);
  s.apply_ry(0, 0.3);
  CHECK(s[0].real() == Approx(std::cos(0.15)).margin(1e-15));
  CHECK(s[1].real() == Approx(std::sin(0.15)).margin(1e-15));
  s.apply_rz(0, 0.8);
  CHECK(std::abs(s[0] - std::cos(0.15) * std::exp(cplx(0, -0.4))) <= 1e-15);
  CHECK(std::abs(s[1] - std::sin(0.15) * std::exp(cplx(0, 0.4))) <= 1e-15);

  Statevector t(2);
  t.apply_x(0);
  t.apply_x(1);
  t.apply_cz(0, 1);
  CHECK(t[3] == cplx(-1.0));
}

TEST_CASE("gates preserve the norm") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-pi, pi);
  Statevector s(5);
  for (int k = 0; k < 200; ++k) {
    const int q = static_cast<int>(rng() % 5), r = static_cast<int>((q + 1 + rng() % 4) % 5);
    switch (rng() % 5) {
      case 0: s.apply_x(q); break;
      case 1: s.apply_ry(q, u(rng)); break;
      case 2: s.apply_rz(q, u(rng)); break;
      case 3: s.apply_cnot(q, r); break;
      default: s.apply_cz(q, r); break;
    }
    CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("parameterized circuits") {
  Circuit c(2);
  c.ry_param(0, 0).rz_param(1, 1, -2.0).ry(1, 0.2);
  CHECK(c.parameter_count() == 2);
  const std::vector<double> theta{0.4, 0.1};
  const auto s = run_circuit(c, theta);
  Statevector want(2);
  want.apply_ry(0, 0.4);
  want.apply_rz(1, -0.2);
  want.apply_ry(1, 0.2);
  CHECK(s == want);
  const std::vector<double> short_theta{0.4};
  CHECK_THROWS_AS(run_circuit(c, short_theta), Error);
  const auto shifted = run_circuit(c, theta, 0, pi / 2);
  Statevector want2(2);
  want2.apply_ry(0, 0.4 + pi / 2);
  want2.apply_rz(1, -0.2);
  want2.apply_ry(1, 0.2);
  CHECK(shifted == want2);
}

TEST_CASE("resource guard") {
  try {
    Statevector s(kMaxSimulatorQubits + 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
}

TEST_CASE("expectation examples") {
  CHECK(expectation(Statevector(1), single("Z")) == 1.0);
  Statevector plus(1);
  plus.apply_ry(0, pi / 2);
  CHECK(expectation(plus, single("X")) == Approx(1.0).margin(1e-15));
  CHECK(expectation(Statevector(3), PauliSum(3, {PauliTerm(-2.5, 0, 0)})) == -2.5);
  CHECK_THROWS_AS(expectation(Statevector(2), single("Z")), Error);
}

TEST_CASE("expectation matches dense matrices and is linear") {
  std::mt19937_64 rng(19);
  const auto p = testing::heh_plus(0.9);
  const auto dense = testing::kron_dense(p.h);
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = random_state(4, rng);
    const auto v = as_vector(psi);
    const double want = (v.adjoint() * dense * v)(0, 0).real();
    CHECK(expectation(psi, p.h) == Approx(want).margin(1e-12));

    PauliSum a(4), b(4);
    for (std::size_t k = 0; k < p.h.terms.size(); ++k) (k % 2 ? a : b).terms.push_back(p.h.terms[k]);
    CHECK(std::abs(expectation(psi, a) + expectation(psi, b) - expectation(psi, p.h)) <= 1e-10);
  }
}

TEST_CASE("HF state energy equals the SCF energy") {
  const auto p = testing::h2(0.7354);
  const auto hf = run_circuit(hf_reference_circuit(4, 2), {});
  CHECK(hf[0b0101] == cplx(1.0));
  CHECK(expectation(hf, p.h) == Approx(p.scf.e_hf).margin(1e-8));
}

TEST_CASE("sampling a deterministic outcome is exact") {
  CHECK(sample_expectation(Statevector(1), single("Z"), 1, 0) == 1.0);
  CHECK(sample_expectation(Statevector(1), single("Z"), 1000, 77) == 1.0);
  Statevector one(2);
  one.apply_x(1);
  CHECK(sample_expectation(one, single("IZ", 0.5), 50, 3) == -0.5);
  CHECK(sample_expectation(one, PauliSum(2, {PauliTerm(4.0, 0, 0)}), 10, 3) == 4.0);
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  std::mt19937_64 rng(2);
  const auto p = testing::h2(0.7354);
  const auto psi = random_state(4, rng);
  const double a = sample_expectation(psi, p.h, 5000, 1234);
  const double b = sample_expectation(psi, p.h, 5000, 1234);
  CHECK(a == b);
  CHECK(a != sample_expectation(psi, p.h, 5000, 1235));
}

TEST_CASE("sampled H2 ground-state energy is within three standard errors") {
  const auto p = testing::h2(0.7354);
  const auto ground = dense_ground_energy(p.h, Sector{1, 1}, true);
  REQUIRE(ground.ground_vector);
  const double exact = expectation(*ground.ground_vector, p.h);
  CHECK(exact == Approx(ground.ground_energy).margin(1e-10));
  const auto est = sample_expectation_detailed(*ground.ground_vector, p.h, 100000, 2024);
  CHECK(est.standard_error > 0.0);
  CHECK(std::abs(est.value - exact) <= 3.0 * est.standard_error);
}

TEST_CASE("sampling error shrinks with the square root of shots") {
  const auto p = testing::h2(1.2);
  std::mt19937_64 rng(31);
  const auto psi = random_state(4, rng);
  const double exact = expectation(psi, p.h);
  double small = 0.0, large = 0.0, se_small = 0.0, se_large = 0.0;
  const int seeds = 8;
  for (int s = 0; s < seeds; ++s) {
    const auto a = sample_expectation_detailed(psi, p.h, 10000, 100 + s);
    const auto b = sample_expectation_detailed(psi, p.h, 1000000, 200 + s);
    small += std::abs(a.value - exact);
    large += std::abs(b.value - exact);
    se_small += a.standard_error;
    se_large += b.standard_error;
  }
  CHECK(se_small / se_large == Approx(10.0).epsilon(0.05));
  CHECK(small / large > 4.0);
  CHECK(small / large < 25.0);
}
