#include "pqell/elliptic.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace pqell {

namespace {

void require_series_legal(const PQParams& params, const ModulusPower& m,
                          const char* fn) {
  if (!(params.inv_p_star() > 0.0)) {
    throw DomainError(std::string(fn) + ": series form needs 1/p* > 0");
  }
  if (m.kq > kEllipticSeriesLimit) {
    std::ostringstream os;
    os.precision(17);
    os << fn << ": series form needs k^q <= " << kEllipticSeriesLimit
       << "; got k^q = " << m.kq;
    throw DomainError(os.str());
  }
}

bool use_series(EllipticMethod method, const ModulusPower& m) {
  switch (method) {
    case EllipticMethod::series:
      return true;
    case EllipticMethod::quadrature:
      return false;
    case EllipticMethod::automatic:
      return m.kq <= kEllipticSeriesLimit;
  }
  return false;
}

}  // namespace

ModulusPower ModulusPower::from_complement(double complement) {
  if (!(complement > 0.0 && complement <= 1.0)) {
    throw DomainError("ModulusPower: 1 - k^q must lie in (0, 1]");
  }
  return {1.0 - complement, complement};
}

Modulus::Modulus(double k) : k_(k) {
  if (!(k >= 0.0 && k < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "Modulus: k = " << k << " outside [0, 1)";
    throw DomainError(os.str());
  }
}

ModulusPower Modulus::power(double q) const {
  if (k_ == 0.0) return {0.0, 1.0};
  const double log_k = std::log(k_);
  return {std::exp(q * log_k), -std::expm1(q * log_k)};
}

EvalResult K_pq(const PQParams& params, const Modulus& k, EllipticMethod method) {
  return K_pq(params, k.power(params.q()), method);
}

EvalResult K_pq(const PQParams& params, const ModulusPower& m,
                EllipticMethod method) {
  const double half = 0.5 * pi_pq(params);
  if (use_series(method, m)) {
    require_series_legal(params, m, "K_pq");
    const double a = params.inv_p_star();
    const double b = 1.0 / params.q();
    const EvalResult f = hyp2f1(HypSeriesSpec::of(a, b, a + b, m.kq));
    return {half * f.value, half * f.abs_err, Method::series};
  }
  const double q = params.q();
  const double e1 = -params.inv_p();
  const double e2 = -params.inv_p_star();
  const double kq = m.kq, kc = m.complement;
  // 1 - k^q t^q = (1 - k^q) + k^q (1 - t^q).
  return integrate_singular(EndpointIntegrand([=](double t, double tc) {
    const double omt = one_minus_pow(t, tc, q);
    return std::pow(omt, e1) * std::pow(kc + kq * omt, e2);
  }));
}

EvalResult E_pq(const PQParams& params, const Modulus& k, EllipticMethod method) {
  return E_pq(params, k.power(params.q()), method);
}

EvalResult E_pq(const PQParams& params, const ModulusPower& m,
                EllipticMethod method) {
  const double half = 0.5 * pi_pq(params);
  if (use_series(method, m)) {
    require_series_legal(params, m, "E_pq");
    const double b = 1.0 / params.q();
    const EvalResult f =
        hyp2f1(HypSeriesSpec::of(-params.inv_p(), b, params.inv_p_star() + b, m.kq));
    return {half * f.value, half * f.abs_err, Method::series};
  }
  const double q = params.q();
  const double e = params.inv_p();
  const double kq = m.kq, kc = m.complement;
  return integrate_singular(EndpointIntegrand([=](double t, double tc) {
    const double omt = one_minus_pow(t, tc, q);
    return std::pow(kc + kq * omt, e) * std::pow(omt, -e);
  }));
}

double dK_dk(const PQParams& params, const Modulus& k) {
  if (k.k() == 0.0) {
    if (params.q() > 1.0) return 0.0;
    throw DomainError("dK_dk: undefined at k = 0 unless q > 1");
  }
  const ModulusPower m = k.power(params.q());
  const double K = K_pq(params, m).value;
  const double E = E_pq(params, m).value;
  return (E - m.complement * K) / (k.k() * m.complement);
}

double dE_dk(const PQParams& params, const Modulus& k) {
  if (k.k() == 0.0) throw DomainError("dE_dk: undefined at k = 0");
  const ModulusPower m = k.power(params.q());
  const double K = K_pq(params, m).value;
  const double E = E_pq(params, m).value;
  return params.q() * params.inv_p() * (E - K) / k.k();
}

double legendre_residual(double p, double q, double k) {
  if (!(p > 1.0) || !(q > 1.0)) {
    throw DomainError("legendre_residual: p and q must exceed 1");
  }
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("legendre_residual: k must lie in [0, 1)");
  }
  const PQParams pq(p, q);
  const PQParams qp(q, p);
  // (k^{1/q})^q = (k^{1/p})^p = k, so both integrals see the same power.
  const ModulusPower m{k, 1.0 - k};
  const double E_pq_v = E_pq(pq, m).value;
  const double K_pq_v = K_pq(pq, m).value;
  const double E_qp_v = E_pq(qp, m).value;
  const double K_qp_v = K_pq(qp, m).value;
  const double lhs = p * E_pq_v * K_qp_v - q * K_pq_v * E_qp_v;
  return lhs - (p - q) * pi_pq(pq) * pi_pq(qp) / 4.0;
}

double moment_sin_pq(const PQParams& params, std::int64_t n) {
  if (!(params.inv_p_star() > 0.0)) {
    throw DomainError("moment_sin_pq: needs 1/p* > 0");
  }
  if (n < 0) throw DomainError("moment_sin_pq: n must be nonnegative");
  const double inv_q = 1.0 / params.q();
  return 0.5 * pi_pq(params) * pochhammer(inv_q, n) /
         pochhammer(params.inv_p_star() + inv_q, n);
}

EvalResult moment_sin_pq_integral(const PQParams& params, std::int64_t n) {
  if (n < 0) throw DomainError("moment_sin_pq_integral: n must be nonnegative");
  const double inv_q = 1.0 / params.q();
  const double e1 = static_cast<double>(n) + inv_q - 1.0;
  const double e2 = -params.inv_p();
  EvalResult r = integrate_singular(EndpointIntegrand([=](double t, double tc) {
    return std::pow(t, e1) * std::pow(tc, e2);
  }));
  r.value *= inv_q;
  r.abs_err *= inv_q;
  return r;
}

}  // namespace pqell
