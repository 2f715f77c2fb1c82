#include "pqell/gen_trig.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pqell/core_numerics.hpp"

namespace pqell {

namespace {

constexpr double kArcsinQuadTol = 1e-14;
constexpr double kInversionTol = 1e-14;

std::string describe(const PQParams& params) {
  std::ostringstream os;
  os.precision(17);
  os << "(p, q) = (" << params.p() << ", " << params.q() << ")";
  return os.str();
}

double half_period(const PQParams& params) { return 0.5 * pi_pq(params); }

void check_theta(const PQParams& params, double theta, double half,
                 const char* fn) {
  // A few ulps of slack so that pi_pq(params) / 2 itself is accepted after
  // round trips through other formulas.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() * half;
  if (!(theta >= 0.0) || theta > half + slack) {
    std::ostringstream os;
    os.precision(17);
    os << fn << ": theta = " << theta << " outside [0, " << half << "] for "
       << describe(params);
    throw DomainError(os.str());
  }
}

}  // namespace

PQParams::PQParams(double p, double q)
    : PQParams(p, q, 1.0 / p, 1.0 - 1.0 / p) {}

PQParams::PQParams(double p, double q, double inv_p, double inv_p_star)
    : p_(p), q_(q), p_star_(1.0 / inv_p_star), inv_p_(inv_p),
      inv_p_star_(inv_p_star) {
  if (!std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("PQParams: p and q must be finite");
  }
  if (p == 0.0 || p == 1.0) {
    throw DomainError("PQParams: p must differ from 0 and 1; got " +
                      describe(*this));
  }
  if (!(inv_p_star > 0.0)) {
    throw DomainError("PQParams: conjugate p* must be positive (p < 0 or p > 1); got " +
                      describe(*this));
  }
  if (!(q > 0.0)) {
    throw DomainError("PQParams: q must be positive; got " + describe(*this));
  }
}

PQParams PQParams::conjugate_of(double p, double q) {
  if (!(p > 0.0) || p == 1.0 || !std::isfinite(p)) {
    throw DomainError("PQParams::conjugate_of: p must be positive and differ from 1");
  }
  const double inv_first = 1.0 - 1.0 / p;  // 1/p*
  return PQParams(p / (p - 1.0), q, inv_first, 1.0 / p);
}

double pi_pq(const PQParams& params) {
  return 2.0 / params.q() * beta(params.inv_p_star(), 1.0 / params.q());
}

double arcsin_pq(const PQParams& params, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "arcsin_pq: x = " << x << " outside [0, 1]";
    throw DomainError(os.str());
  }
  if (x == 0.0) return 0.0;
  const double q = params.q();
  const double exponent = -params.inv_p();
  // t = x s; 1 - x^q s^q = (1 - x^q) + x^q (1 - s^q).
  const double xq = std::pow(x, q);
  const double one_minus_xq = one_minus_pow(x, 1.0 - x, q);
  const EvalResult r = integrate_singular(
      EndpointIntegrand([=](double s, double sc) {
        return std::pow(one_minus_xq + xq * one_minus_pow(s, sc, q), exponent);
      }),
      kArcsinQuadTol);
  return x * r.value;
}

double sin_pq(const PQParams& params, double theta) {
  const double half = half_period(params);
  check_theta(params, theta, half, "sin_pq");
  if (theta == 0.0) return 0.0;
  if (theta >= half) return 1.0;
  // Pin g(1) to the beta-function value so the bracket agrees with the
  // domain check above.
  auto g = [&](double x) { return x >= 1.0 ? half : arcsin_pq(params, x); };
  return invert_monotone(g, 0.0, 1.0, theta, kInversionTol);
}

double cos_pq(const PQParams& params, double theta) {
  const double s = sin_pq(params, theta);
  const double q = params.q();
  return std::pow(one_minus_pow(s, 1.0 - s, q), 1.0 / q);
}

double tan_pq(const PQParams& params, double theta) {
  const double half = half_period(params);
  check_theta(params, theta, half, "tan_pq");
  if (theta >= half) {
    throw RangeError("tan_pq: diverges at theta = pi_pq/2 for " +
                     describe(params));
  }
  const double s = sin_pq(params, theta);
  const double c = std::pow(one_minus_pow(s, 1.0 - s, params.q()), 1.0 / params.q());
  if (c == 0.0) {
    throw RangeError("tan_pq: cos_pq underflowed to zero for " + describe(params));
  }
  return s / c;
}

}  // namespace pqell
