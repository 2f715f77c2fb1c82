#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "pqell/gen_trig.hpp"

using namespace pqell;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<std::pair<double, double>> kPairs = {
    {2, 2}, {3, 2}, {2, 3}, {1.5, 4}, {-2, 2}};

}  // namespace

TEST_CASE("PQParams validation") {
  CHECK_NOTHROW(PQParams(2, 2));
  CHECK_NOTHROW(PQParams(-2, 2));
  CHECK_THROWS_AS(PQParams(1, 2), DomainError);
  CHECK_THROWS_AS(PQParams(0.5, 2), DomainError);  // p* = -1
  CHECK_THROWS_AS(PQParams(0, 2), DomainError);
  CHECK_THROWS_AS(PQParams(2, 0), DomainError);
  CHECK_THROWS_AS(PQParams(2, -1), DomainError);
  CHECK_THROWS_AS(PQParams(std::nan(""), 2), DomainError);

  const PQParams neg(-2, 2);
  CHECK_THAT(neg.p_star(), WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(neg.inv_p_star(), WithinAbs(1.5, 1e-15));

  // p = 0.5 gives first index p* = -1; its own conjugate is 0.5 again.
  const PQParams c = PQParams::conjugate_of(0.5, 0.5);
  CHECK(c.p() == -1.0);
  CHECK(c.inv_p() == -1.0);
  CHECK(c.inv_p_star() == 2.0);
  CHECK_THROWS_AS(PQParams::conjugate_of(1.0, 2.0), DomainError);
}

TEST_CASE("pi_pq examples") {
  CHECK_THAT(pi_pq(PQParams(2, 2)), WithinRel(pi, 1e-15));
  // (2/3) B(2/3, 1/3) with Gamma(1/3) Gamma(2/3) = 2 pi / sqrt 3.
  CHECK_THAT(pi_pq(PQParams(3, 3)), WithinRel(4.0 * pi / (3.0 * std::sqrt(3.0)), 1e-14));
  CHECK_THAT(pi_pq(PQParams(2, 2)), WithinAbs(2.0 * arcsin_pq(PQParams(2, 2), 1.0), 1e-12));
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    CHECK_THAT(pi_pq(pq), WithinRel((2.0 / q) * std::beta(1.0 - 1.0 / p, 1.0 / q), 1e-13));
  }
}

TEST_CASE("arcsin_pq examples") {
  const PQParams classic(2, 2);
  CHECK(arcsin_pq(classic, 0.0) == 0.0);
  CHECK_THAT(arcsin_pq(classic, 0.5), WithinAbs(pi / 6.0, 1e-14));
  for (double x : {0.1, 0.4, 0.9, 0.999}) CHECK_THAT(arcsin_pq(classic, x), WithinAbs(std::asin(x), 1e-13));
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    CHECK_THAT(arcsin_pq(pq, 1.0), WithinAbs(pi_pq(pq) / 2.0, 1e-12));
  }
  CHECK_THROWS_AS(arcsin_pq(classic, 1.5), DomainError);
  CHECK_THROWS_AS(arcsin_pq(classic, -0.1), DomainError);
}

TEST_CASE("sin_pq and cos_pq examples") {
  const PQParams classic(2, 2);
  CHECK(sin_pq(classic, 0.0) == 0.0);
  CHECK(cos_pq(classic, 0.0) == 1.0);
  CHECK_THAT(sin_pq(classic, pi / 2.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(cos_pq(classic, pi / 3.0), WithinAbs(0.5, 1e-12));
  for (double t : {0.1, 0.5, 1.0, 1.5}) {
    CHECK_THAT(sin_pq(classic, t), WithinAbs(std::sin(t), 1e-12));
    CHECK_THAT(cos_pq(classic, t), WithinAbs(std::cos(t), 1e-12));
  }
  const PQParams pq(3, 2);
  CHECK_THAT(sin_pq(pq, arcsin_pq(pq, 0.7)), WithinAbs(0.7, 1e-9));
  CHECK_THROWS_AS(sin_pq(classic, 2.0), DomainError);
  CHECK_THROWS_AS(sin_pq(classic, -1e-3), DomainError);
}

TEST_CASE("tan_pq examples") {
  const PQParams classic(2, 2);
  CHECK(tan_pq(classic, 0.0) == 0.0);
  CHECK_THAT(tan_pq(classic, pi / 4.0), WithinAbs(1.0, 1e-12));
  CHECK_THAT(tan_pq(classic, pi / 3.0), WithinAbs(std::sqrt(3.0), 1e-11));
  CHECK_THROWS_AS(tan_pq(classic, pi_pq(classic) / 2.0), RangeError);
}

TEST_CASE("Pythagorean identity on a 50-point grid") {
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    const double half = pi_pq(pq) / 2.0;
    for (int i = 0; i < 50; ++i) {
      const double t = half * i / 49.0;
      const double s = sin_pq(pq, t), c = cos_pq(pq, t);
      CHECK_THAT(std::pow(c, q) + std::pow(s, q), WithinAbs(1.0, 1e-10));
    }
  }
}

TEST_CASE("sin_pq derivative is cos_pq^(q/p)") {
  const double h = 1e-6;
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    const double half = pi_pq(pq) / 2.0;
    for (int i = 1; i < 20; ++i) {
      const double t = half * i / 20.0;
      const double fd = (sin_pq(pq, t + h) - sin_pq(pq, t - h)) / (2.0 * h);
      const double exact = std::pow(cos_pq(pq, t), q / p);
      CHECK(std::fabs(fd - exact) <= 1e-6 * std::fmax(1.0, exact));
    }
  }
}

TEST_CASE("sin_pq is strictly increasing") {
  for (auto [p, q] : kPairs) {
    const PQParams pq(p, q);
    const double half = pi_pq(pq) / 2.0;
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double s = sin_pq(pq, half * i / 100.0);
      CHECK(s > prev);
      prev = s;
    }
  }
}
