#include "pqell/means.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "pqell/core_numerics.hpp"
#include "pqell/elliptic.hpp"
#include "pqell/gen_trig.hpp"

namespace pqell {

namespace {

constexpr double kLimitSwitch = 1e-8;
constexpr double kLogMeanCloseness = 1e-12;
constexpr double kAutoSeriesLimit = 0.9;
constexpr double kNakamuraRelTol = 1e-15;
constexpr std::int64_t kNakamuraMaxTerms = 2'000'000'000;

// x^p and 1 - x^p for x in (0, 1], both to full relative precision.
struct PowerSplit {
  double xp;
  double z;
};

PowerSplit split(double p, double x) {
  const double l = p * std::log(x);
  return {std::exp(l), -std::expm1(l)};
}

void check_x(double x, const char* fn) {
  if (!(x > 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << fn << ": x = " << x << " outside (0, 1]";
    throw DomainError(os.str());
  }
}

void check_p_in_P(double p, const char* fn) {
  if (!(p > 0.0) || p == 1.0 || !std::isfinite(p)) {
    throw DomainError(std::string(fn) + ": p must lie in (0, 1) or (1, inf)");
  }
}

// 1 / L(1, x).
double inv_log_mean_normalized(double x) {
  if (1.0 - x <= kLogMeanCloseness) return 1.0;
  const double log_x = x > 0.5 ? std::log1p(x - 1.0) : std::log(x);
  return -log_x / (1.0 - x);
}

double nakamura_sum(double p, const PowerSplit& s) {
  const double a = 1.0 / p;
  const double c = 2.0 / p;
  const double z = s.z;
  // From this index on the term ratio (a+k)^2 / ((c+k)(k+1)) z is below z,
  // so the remaining tail is at most next_term / (1 - z).
  const double ratio_bound_from = std::fmax(0.0, a * a - 2.0 * a);

  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;  // Neumaier compensation
  for (std::int64_t k = 0; k < kNakamuraMaxTerms; ++k) {
    const double dk = static_cast<double>(k);
    term = term * ((a + dk) * (a + dk) / (c + dk)) / (dk + 1.0) * z;
    const double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (dk + 1.0 > ratio_bound_from) {
      const double next = term * ((a + dk + 1.0) * (a + dk + 1.0) / (c + dk + 1.0)) /
                          (dk + 2.0) * z;
      if (next / s.xp <= kNakamuraRelTol * (sum + comp)) return sum + comp;
    }
  }
  throw NonConvergence("nakamura series: term budget exhausted");
}

double hyp(double a, double b, double c, double arg, double arg_complement) {
  HypSeriesSpec spec = HypSeriesSpec::of(a, b, c, arg);
  spec.arg_complement = arg_complement;
  return hyp2f1_eval(spec).value;
}

// y = ((1 - x^p) / (1 + x^p))^2 and 1 - y = 4 x^p / (1 + x^p)^2.
PowerSplit quadratic_argument(const PowerSplit& s) {
  const double r = s.z / (1.0 + s.xp);
  const double one_plus = 1.0 + s.xp;
  return {4.0 * s.xp / (one_plus * one_plus), r * r};
}

double mp_quadratic_form(double p, const PowerSplit& s, double third) {
  const PowerSplit y = quadratic_argument(s);
  const double a = 0.5 / p;
  const double prefactor = std::pow(0.5 * (1.0 + s.xp), -1.0 / p);
  return prefactor * hyp(a, a + 0.5, third, y.z, y.xp);
}

double mp_integral(double p, const PowerSplit& s) {
  const double xp = s.xp;
  const double e = -1.0 / p;
  const EvalResult r = integrate_halfline([=](double t) {
    const double tp = std::pow(t, p);
    return std::pow((tp + 1.0) * (tp + xp), e);
  });
  return c_p(p) * r.value;
}

double mp_elliptic(double p, const PowerSplit& s) {
  const PQParams params = PQParams::conjugate_of(p, p);
  const ModulusPower m = ModulusPower::from_complement(s.xp);
  const double k = K_pq(params, m, EllipticMethod::quadrature).value;
  return 2.0 / pi_pq(params) * k;
}

double kp_closed_normalized(double p, double x) {
  if (x == 1.0) return 1.0;
  const double log_x = std::log(x);
  if (std::fabs(p) <= kLimitSwitch) {
    // K_0(1, x) = x / L(1, x).
    return x * inv_log_mean_normalized(x);
  }
  if (std::fabs(p - 1.0) <= kLimitSwitch) return 1.0 / inv_log_mean_normalized(x);
  return (p - 1.0) / p * std::expm1(p * log_x) / std::expm1((p - 1.0) * log_x);
}

}  // namespace

PositivePair::PositivePair(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream os;
    os.precision(17);
    os << "PositivePair: need finite a, b > 0; got (" << a << ", " << b << ")";
    throw DomainError(os.str());
  }
  scale_ = std::fmax(a, b);
  x_ = std::fmin(a, b) / scale_;
}

double mean_log(const PositivePair& pair) {
  return pair.scale() / inv_log_mean_normalized(pair.x());
}

double mean_log_integral(const PositivePair& pair) {
  const double x = pair.x();
  const EvalResult r =
      integrate_halfline([=](double t) { return 1.0 / ((t + 1.0) * (t + x)); });
  return pair.scale() / r.value;
}

double mean_ag(const PositivePair& pair) {
  double a = 1.0;
  double b = pair.x();
  for (int i = 0; i < 64 && std::fabs(a - b) > 1e-15 * a; ++i) {
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
  }
  return pair.scale() * 0.5 * (a + b);
}

double mean_ag_integral(const PositivePair& pair) {
  const double x2 = pair.x() * pair.x();
  const EvalResult r = integrate_halfline(
      [=](double t) { return 1.0 / std::sqrt((t * t + 1.0) * (t * t + x2)); });
  return pair.scale() / (2.0 / std::numbers::pi * r.value);
}

double c_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("c_p: p must be positive");
  if (p == 1.0) return 1.0;
  return 2.0 / pi_pq(PQParams::conjugate_of(p, p));
}

double c_p_integral(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("c_p_integral: p must be positive");
  }
  const double e = -2.0 / p;
  const EvalResult r =
      integrate_halfline([=](double t) { return std::pow(1.0 + std::pow(t, p), e); });
  return 1.0 / r.value;
}

std::string_view to_string(MpMethod m) {
  switch (m) {
    case MpMethod::automatic:
      return "auto";
    case MpMethod::elliptic:
      return "elliptic";
    case MpMethod::hyp_base:
      return "hyp_base";
    case MpMethod::hyp_quad:
      return "hyp_quad";
    case MpMethod::integral:
      return "integral";
    case MpMethod::nakamura:
      return "nakamura";
  }
  return "unknown";
}

std::string_view to_string(KpMethod m) {
  switch (m) {
    case KpMethod::closed:
      return "closed";
    case KpMethod::integral:
      return "integral";
    case KpMethod::hyp_base:
      return "hyp_base";
    case KpMethod::hyp_quad:
      return "hyp_quad";
  }
  return "unknown";
}

MpMethod parse_mp_method(std::string_view name) {
  for (MpMethod m : {MpMethod::automatic, MpMethod::elliptic, MpMethod::hyp_base,
                     MpMethod::hyp_quad, MpMethod::integral, MpMethod::nakamura}) {
    if (to_string(m) == name) return m;
  }
  throw DomainError("unknown M_p method '" + std::string(name) + "'");
}

KpMethod parse_kp_method(std::string_view name) {
  for (KpMethod m :
       {KpMethod::closed, KpMethod::integral, KpMethod::hyp_base, KpMethod::hyp_quad}) {
    if (to_string(m) == name) return m;
  }
  throw DomainError("unknown K_p method '" + std::string(name) + "'");
}

double mp_reciprocal(double p, double x, MpMethod method) {
  check_p_in_P(p, "mp_reciprocal");
  check_x(x, "mp_reciprocal");
  if (x == 1.0) return 1.0;
  const PowerSplit s = split(p, x);
  switch (method) {
    case MpMethod::integral:
      return mp_integral(p, s);
    case MpMethod::elliptic:
      return mp_elliptic(p, s);
    case MpMethod::hyp_base:
      return hyp(1.0 / p, 1.0 / p, 2.0 / p, s.z, s.xp);
    case MpMethod::hyp_quad:
      return mp_quadratic_form(p, s, 1.0 / p + 0.5);
    case MpMethod::nakamura:
      return nakamura_sum(p, s);
    case MpMethod::automatic:
      break;
  }
  try {
    if (s.z <= kAutoSeriesLimit) return hyp(1.0 / p, 1.0 / p, 2.0 / p, s.z, s.xp);
    if (quadratic_argument(s).z <= kAutoSeriesLimit) return mp_quadratic_form(p, s, 1.0 / p + 0.5);
    return hyp(1.0 / p, 1.0 / p, 2.0 / p, s.z, s.xp);
  } catch (const NonConvergence&) {
    return mp_integral(p, s);
  }
}

double kp_reciprocal(double p, double x, KpMethod method) {
  check_x(x, "kp_reciprocal");
  if (!std::isfinite(p)) throw DomainError("kp_reciprocal: p must be finite");
  if (method == KpMethod::closed) return 1.0 / kp_closed_normalized(p, x);
  if (!(p > 0.0)) {
    throw DomainError("kp_reciprocal: integral and series forms need p > 0");
  }
  if (x == 1.0) return 1.0;
  const PowerSplit s = split(p, x);
  switch (method) {
    case KpMethod::integral: {
      const double xp = s.xp;
      const double e = -1.0 / p;
      return integrate_singular(EndpointIntegrand([=](double t, double tc) {
               return std::pow(tc + xp * t, e);
             }))
          .value;
    }
    case KpMethod::hyp_base:
      return hyp(1.0, 1.0 / p, 2.0, s.z, s.xp);
    case KpMethod::hyp_quad:
      return mp_quadratic_form(p, s, 1.5);
    case KpMethod::closed:
      break;
  }
  return 1.0 / kp_closed_normalized(p, x);
}

double mean_mp(const PositivePair& pair, double p, MpMethod method) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError("mean_mp: p must be finite and nonnegative");
  }
  if (p <= kLimitSwitch) return std::sqrt(pair.a()) * std::sqrt(pair.b());
  if (p == 1.0) return mean_log(pair);
  if (pair.x() == 1.0) return pair.scale();
  return pair.scale() / mp_reciprocal(p, pair.x(), method);
}

double mean_kp(const PositivePair& pair, double p, KpMethod method) {
  if (pair.x() == 1.0) return pair.scale();
  return pair.scale() / kp_reciprocal(p, pair.x(), method);
}

double nakamura_partial_sum(double p, double x, std::int64_t n_terms) {
  check_p_in_P(p, "nakamura_partial_sum");
  check_x(x, "nakamura_partial_sum");
  if (n_terms <= 0) return 0.0;
  const double a = 1.0 / p;
  const double c = 2.0 / p;
  const double z = split(p, x).z;
  double coef = 1.0;  // prod_{i<k} (a+i)^2 / (c+i) / k!
  double z_pow = 1.0;
  double sum = 1.0;
  for (std::int64_t k = 1; k < n_terms; ++k) {
    const double i = static_cast<double>(k - 1);
    coef *= (a + i) * (a + i) / (c + i) / static_cast<double>(k);
    z_pow *= z;
    sum += coef * z_pow;
  }
  return sum;
}

double quad_transform_check(double a, double b, double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("quad_transform_check: x must lie in [0, 1)");
  }
  const double lhs = hyp(a, b, 2.0 * a, x, 1.0 - x);
  const double r = x / (2.0 - x);
  // 1 - r^2 = 4 (1 - x) / (2 - x)^2
  const double rhs = std::pow(1.0 - 0.5 * x, -b) *
                     hyp(0.5 * b, 0.5 * (b + 1.0), a + 0.5, r * r,
                         4.0 * (1.0 - x) / ((2.0 - x) * (2.0 - x)));
  return std::fabs(lhs - rhs);
}

double third_parameter_difference(double p, double x) {
  check_p_in_P(p, "third_parameter_difference");
  check_x(x, "third_parameter_difference");
  const PowerSplit y = quadratic_argument(split(p, x));
  const double a = 0.5 / p;
  return hyp(a, a + 0.5, 1.0 / p + 0.5, y.z, y.xp) - hyp(a, a + 0.5, 1.5, y.z, y.xp);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Mp_greater:
      return "Mp_greater";
    case Verdict::equal:
      return "equal";
    case Verdict::Kp_greater:
      return "Kp_greater";
  }
  return "unknown";
}

MeanOrdering ordering(const PositivePair& pair, double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError("ordering: p must be finite and nonnegative");
  }
  const double gap = mean_mp(pair, p) - mean_kp(pair, p);
  const double tol = kOrderingRelTol * pair.scale();
  Verdict verdict = Verdict::equal;
  if (gap > tol) verdict = Verdict::Mp_greater;
  if (gap < -tol) verdict = Verdict::Kp_greater;
  return {verdict, p, pair, gap};
}

}  // namespace pqell
