#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "pqell/elliptic.hpp"

using namespace pqell;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<std::pair<double, double>> kPairs = {{2, 2}, {3, 2}, {2, 3}, {1.5, 4}};

double K(const PQParams& pq, double k, EllipticMethod m = EllipticMethod::automatic) {
  return K_pq(pq, Modulus(k), m).value;
}
double E(const PQParams& pq, double k, EllipticMethod m = EllipticMethod::automatic) {
  return E_pq(pq, Modulus(k), m).value;
}

}  // namespace

TEST_CASE("Modulus validation") {
  CHECK_NOTHROW(Modulus(0.0));
  CHECK_THROWS_AS(Modulus(1.0), DomainError);
  CHECK_THROWS_AS(Modulus(-0.1), DomainError);
  const ModulusPower m = Modulus(0.5).power(2.0);
  CHECK_THAT(m.kq, WithinAbs(0.25, 1e-16));
  CHECK_THAT(m.complement, WithinAbs(0.75, 1e-16));
  const ModulusPower tiny = ModulusPower::from_complement(1e-20);
  CHECK(tiny.complement == 1e-20);
  CHECK(tiny.kq == 1.0);
}

TEST_CASE("classical case matches the standard library") {
  const PQParams classic(2, 2);
  for (int i = 0; i <= 9; ++i) {
    const double k = 0.1 * i;
    CHECK_THAT(K(classic, k, EllipticMethod::series), WithinAbs(std::comp_ellint_1(k), 1e-13));
    CHECK_THAT(K(classic, k, EllipticMethod::quadrature), WithinAbs(std::comp_ellint_1(k), 1e-12));
    CHECK_THAT(E(classic, k, EllipticMethod::series), WithinAbs(std::comp_ellint_2(k), 1e-13));
    CHECK_THAT(E(classic, k, EllipticMethod::quadrature), WithinAbs(std::comp_ellint_2(k), 1e-12));
  }
  CHECK_THAT(K(classic, 0.999), WithinRel(std::comp_ellint_1(0.999), 1e-12));
}

TEST_CASE("values at k = 0") {
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    CHECK_THAT(K(pq, 0.0), WithinAbs(pi_pq(pq) / 2.0, 1e-14));
    CHECK_THAT(E(pq, 0.0), WithinAbs(pi_pq(pq) / 2.0, 1e-14));
  }
}

TEST_CASE("series and quadrature agree") {
  std::vector<PQParams> params;
  for (auto [p, q] : kPairs) params.emplace_back(p, q);
  params.push_back(PQParams::conjugate_of(0.5, 0.5));
  for (const PQParams& pq : params) {
    for (int i = 0; i <= 9; ++i) {
      const double k = 0.1 * i;
      CHECK_THAT(K(pq, k, EllipticMethod::series), WithinAbs(K(pq, k, EllipticMethod::quadrature), 1e-10));
      CHECK_THAT(E(pq, k, EllipticMethod::series), WithinAbs(E(pq, k, EllipticMethod::quadrature), 1e-10));
    }
  }
}

TEST_CASE("method selection and error estimates") {
  const PQParams pq(3, 2);
  const EvalResult near = K_pq(pq, Modulus(0.5));
  CHECK(near.method == Method::series);
  CHECK(near.abs_err >= 0.0);
  CHECK(near.abs_err < 1e-12);
  const EvalResult far = K_pq(pq, Modulus(0.999));
  CHECK(far.method == Method::quadrature);
  CHECK_THROWS_AS(K_pq(pq, Modulus(0.999), EllipticMethod::series), DomainError);
}

TEST_CASE("limits toward k = 1") {
  const PQParams classic(2, 2);
  CHECK(K(classic, 0.999) > K(classic, 0.99));
  CHECK(K(classic, 0.99) > K(classic, 0.9));
  CHECK_THAT(E(classic, 0.9999), WithinAbs(1.0, 5e-3));
}

TEST_CASE("monotone in k with E <= K") {
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    double k_prev = K(pq, 0.0), e_prev = E(pq, 0.0);
    for (int i = 1; i <= 19; ++i) {
      const double k = 0.05 * i;
      const double kv = K(pq, k), ev = E(pq, k);
      CHECK(kv > k_prev);
      CHECK(ev < e_prev);
      CHECK(ev < kv);
      k_prev = kv;
      e_prev = ev;
    }
  }
}

TEST_CASE("derivatives match central differences") {
  const double h = 1e-6;
  auto check = [&](double p, double q, double k) {
    const PQParams pq(p, q);
    const double fd_k = (K(pq, k + h) - K(pq, k - h)) / (2.0 * h);
    const double fd_e = (E(pq, k + h) - E(pq, k - h)) / (2.0 * h);
    CHECK_THAT(dK_dk(pq, Modulus(k)), WithinAbs(fd_k, 1e-5));
    CHECK_THAT(dE_dk(pq, Modulus(k)), WithinAbs(fd_e, 1e-5));
  };
  check(2, 2, 0.5);
  check(3, 2, 0.3);
  check(2, 3, 0.7);
}

TEST_CASE("derivative signs and the k = 0 limit") {
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    CHECK(dK_dk(pq, Modulus(0.0)) == 0.0);
    CHECK(std::fabs(dK_dk(pq, Modulus(1e-6))) < 1e-4);
    for (int i = 1; i <= 9; ++i) CHECK(dE_dk(pq, Modulus(0.1 * i)) < 0.0);
  }
  CHECK_THROWS_AS(dK_dk(PQParams(2, 0.5), Modulus(0.0)), DomainError);
  CHECK_THROWS_AS(dE_dk(PQParams(2, 2), Modulus(0.0)), DomainError);
}

TEST_CASE("Legendre-type relation") {
  for (double k : {0.0, 0.3, 0.7}) CHECK(std::fabs(legendre_residual(2.5, 2.5, k)) <= 1e-14);
  CHECK(std::fabs(legendre_residual(3, 2, 0.5)) <= 1e-9);
  int points = 0;
  for (auto [p, q] : {std::pair{2.0, 3.0}, {3.0, 2.0}, {1.5, 4.0}, {4.0, 1.5}, {1.2, 5.0}, {6.0, 1.1}}) {
    for (double k : {0.0, 0.2, 0.5, 0.8, 0.95}) {
      CHECK(std::fabs(legendre_residual(p, q, k)) <= 1e-9);
      ++points;
    }
  }
  CHECK(points >= 27);
  CHECK_THROWS_AS(legendre_residual(-2, 2, 0.5), DomainError);
  CHECK_THROWS_AS(legendre_residual(2, 2, 1.0), DomainError);
}

TEST_CASE("moments of sin_pq") {
  const PQParams classic(2, 2);
  CHECK_THAT(moment_sin_pq(classic, 0), WithinAbs(pi / 2.0, 1e-14));
  // Integral of sin^2 over a quarter period.
  CHECK_THAT(moment_sin_pq(classic, 1), WithinAbs(pi / 4.0, 1e-14));
  for (auto [p, q] : {std::pair{2.0, 2.0}, {3.0, 2.0}, {1.5, 4.0}, {-2.0, 2.0}}) {
    const PQParams pq(p, q);
    for (int n = 0; n <= 5; ++n) {
      const double oracle = std::beta(n + 1.0 / q, 1.0 - 1.0 / p) / q;
      CHECK_THAT(moment_sin_pq(pq, n), WithinRel(oracle, 1e-12));
      CHECK_THAT(moment_sin_pq_integral(pq, n).value, WithinAbs(oracle, 1e-9));
    }
  }
}
