#include "pqell/core_numerics.hpp"

#include <math.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace pqell {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::nearbyint(x) == x;
}

double distance_to_integer(double x) { return std::fabs(x - std::nearbyint(x)); }

std::string describe(const HypSeriesSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << "F(" << s.a << ", " << s.b << "; " << s.c << "; " << s.arg << ")";
  return os.str();
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::series:
      return "series";
    case Method::quadrature:
      return "quadrature";
    case Method::closed_form:
      return "closed_form";
  }
  return "unknown";
}

void HypSeriesSpec::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(arg)) {
    throw DomainError("hyp2f1: non-finite parameter in " + describe(*this));
  }
  if (is_nonpositive_integer(c)) {
    throw DomainError("hyp2f1: c is zero or a negative integer in " +
                      describe(*this));
  }
  const bool inside = std::fabs(arg) < 1.0;
  const bool boundary_ok = arg == 1.0 && c - a - b > 0.0;
  if (!inside && !boundary_ok) {
    throw DomainError("hyp2f1: argument outside the disc of convergence in " +
                      describe(*this));
  }
  if (!(rel_tol > 0.0)) throw DomainError("hyp2f1: rel_tol must be positive");
  if (max_terms < 1) throw DomainError("hyp2f1: max_terms must be >= 1");
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  int sign = 0;
  // lgamma_r leaves the global signgam alone.
  return ::lgamma_r(x, &sign);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Asymptotic series with Bernoulli-number coefficients.
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 -
                                                      inv2 / 12.0))))));
  return shift + std::log(x) - 0.5 * inv - tail;
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  const double g = std::tgamma(x);
  if (std::isinf(g)) return 0.0;
  return 1.0 / g;
}

double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError("beta: arguments must be positive");
  }
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

double pochhammer(double a, std::int64_t n) {
  if (n < 0) throw DomainError("pochhammer: n must be nonnegative");
  double r = 1.0;
  for (std::int64_t i = 0; i < n; ++i) r *= a + static_cast<double>(i);
  return r;
}

EvalResult hyp2f1(const HypSeriesSpec& spec) {
  spec.validate();
  const double a = spec.a, b = spec.b, c = spec.c, x = spec.arg;
  if (x == 0.0) return {1.0, 0.0, Method::series};

  // Near |arg| = 1 the neglected tail is about term / (1 - |arg|), so the
  // stopping test weighs each term by that factor.
  const double geometric = std::fabs(x) < 1.0 ? 1.0 / (1.0 - std::fabs(x)) : 1.0;
  double term = 1.0;
  double sum = 1.0;
  int small_run = 0;
  for (std::int64_t n = 0; n + 1 < spec.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    // (a+n)*(b+n) is commutative in floating point, so swapping a and b
    // reproduces every partial sum bit for bit.
    term = term * ((a + dn) * (b + dn)) / ((c + dn) * (dn + 1.0)) * x;
    sum += term;
    small_run = std::fabs(term) * geometric < spec.rel_tol * std::fabs(sum)
                    ? small_run + 1
                    : 0;
    if (small_run == 2) {
      const double m = dn + 1.0;
      const double next = term * ((a + m) * (b + m)) / ((c + m) * (m + 1.0)) * x;
      const double tail_factor = std::fabs(x) < 1.0 ? geometric : (m + 1.0) / (c - a - b);
      return {sum, std::fabs(next) * tail_factor, Method::series};
    }
  }
  throw NonConvergence("hyp2f1: max_terms reached before convergence of " +
                       describe(spec));
}

double hyp2f1_partial_sum(double a, double b, double c, double arg,
                          std::int64_t n_terms) {
  if (is_nonpositive_integer(c)) {
    throw DomainError("hyp2f1_partial_sum: c is zero or a negative integer");
  }
  if (n_terms <= 0) return 0.0;
  double term = 1.0;
  double sum = 1.0;
  for (std::int64_t n = 0; n + 1 < n_terms; ++n) {
    const double dn = static_cast<double>(n);
    term = term * ((a + dn) * (b + dn)) / ((c + dn) * (dn + 1.0)) * arg;
    sum += term;
  }
  return sum;
}

namespace {

// c = a + b: re-expansion with logarithmic terms around arg = 1.
EvalResult reflected_log_case(const HypSeriesSpec& s) {
  const double a = s.a, b = s.b;
  const double w = s.arg_complement.value_or(1.0 - s.arg);
  const double log_w = std::log(w);
  const double prefactor =
      std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b));

  double coef = 1.0;  // (a)_k (b)_k / (k!)^2 * w^k
  double psi_one = digamma(1.0);
  double psi_a = digamma(a);
  double psi_b = digamma(b);
  double sum = 0.0;
  int small_run = 0;
  for (std::int64_t k = 0; k < s.max_terms; ++k) {
    const double term = coef * (2.0 * psi_one - psi_a - psi_b - log_w);
    sum += term;
    small_run = std::fabs(term) < s.rel_tol * std::fabs(sum) ? small_run + 1 : 0;
    if (small_run == 2) {
      return {prefactor * sum,
              prefactor * std::fabs(term) / (1.0 - w) + kEps * std::fabs(prefactor * sum),
              Method::series};
    }
    const double dk = static_cast<double>(k);
    coef *= (a + dk) * (b + dk) / ((dk + 1.0) * (dk + 1.0)) * w;
    psi_one += 1.0 / (dk + 1.0);
    psi_a += 1.0 / (a + dk);
    psi_b += 1.0 / (b + dk);
  }
  throw NonConvergence("hyp2f1_reflected: max_terms reached for " + describe(s));
}

// c - a - b not an integer: two ordinary series in powers of 1 - arg.
EvalResult reflected_generic_case(const HypSeriesSpec& s) {
  const double a = s.a, b = s.b, c = s.c;
  const double gap = c - a - b;
  const double w = s.arg_complement.value_or(1.0 - s.arg);

  const double gamma_c = std::tgamma(c);
  const double first_coef =
      gamma_c * std::tgamma(gap) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
  const double second_coef =
      gamma_c * std::tgamma(-gap) * reciprocal_gamma(a) * reciprocal_gamma(b);

  HypSeriesSpec first = s;
  first.c = 1.0 - gap;
  first.arg = w;
  first.arg_complement.reset();
  HypSeriesSpec second = s;
  second.a = c - a;
  second.b = c - b;
  second.c = 1.0 + gap;
  second.arg = w;
  second.arg_complement.reset();

  const EvalResult f1 = hyp2f1(first);
  const EvalResult f2 = hyp2f1(second);
  const double w_pow = std::pow(w, gap);
  const double t1 = first_coef * f1.value;
  const double t2 = second_coef * w_pow * f2.value;
  const double value = t1 + t2;
  // Cancellation between the two branches scales rounding by their size.
  const double err = std::fabs(first_coef) * f1.abs_err +
                     std::fabs(second_coef * w_pow) * f2.abs_err +
                     8.0 * kEps * (std::fabs(t1) + std::fabs(t2));
  return {value, err, Method::series};
}

constexpr double kReflectionThreshold = 0.9;
constexpr double kMinIntegerDistance = 1e-3;

}  // namespace

EvalResult hyp2f1_reflected(const HypSeriesSpec& spec) {
  spec.validate();
  if (!(spec.arg >= 0.0 && spec.arg < 1.0)) {
    throw DomainError("hyp2f1_reflected: argument must lie in [0, 1)");
  }
  if (!(spec.a > 0.0) || !(spec.b > 0.0)) {
    throw DomainError("hyp2f1_reflected: a and b must be positive");
  }
  const double gap = spec.c - spec.a - spec.b;
  if (std::fabs(gap) <= 1e-12 * std::fmax(1.0, std::fabs(spec.c))) {
    return reflected_log_case(spec);
  }
  if (distance_to_integer(gap) < kMinIntegerDistance) {
    throw DomainError("hyp2f1_reflected: c - a - b is a nonzero integer in " +
                      describe(spec));
  }
  return reflected_generic_case(spec);
}

EvalResult hyp2f1_eval(const HypSeriesSpec& spec) {
  spec.validate();
  if (spec.arg > kReflectionThreshold && spec.arg < 1.0 && spec.a > 0.0 &&
      spec.b > 0.0) {
    const double gap = spec.c - spec.a - spec.b;
    const bool log_case =
        std::fabs(gap) <= 1e-12 * std::fmax(1.0, std::fabs(spec.c));
    if (log_case || distance_to_integer(gap) >= kMinIntegerDistance) {
      return hyp2f1_reflected(spec);
    }
  }
  return hyp2f1(spec);
}

double one_minus_pow(double t, double tc, double q) {
  if (t <= 0.0) return 1.0;
  if (t <= 0.5) return -std::expm1(q * std::log(t));
  return -std::expm1(q * std::log1p(-tc));
}

EvalResult integrate_singular(const EndpointIntegrand& f, double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate_singular: tol must be positive");
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  constexpr double kUMax = 6.5;
  constexpr int kMinLevel = 3;

  // Sum of w(u) * f over the nodes +-u; t and 1 - t are formed separately so
  // that neither endpoint is ever reached.
  auto pair_sum = [&](double u) -> double {
    const double v = kHalfPi * std::sinh(u);
    const double e = std::exp(-2.0 * v);
    const double near = e / (1.0 + e);
    const double far = 1.0 / (1.0 + e);
    // Subnormal distances to the endpoint add nothing but overflow risk.
    if (near < std::numeric_limits<double>::min()) return 0.0;
    const double w = std::numbers::pi * std::cosh(u) * near * far;
    if (w == 0.0) return 0.0;
    const double fa = f(far, near);
    const double fb = f(near, far);
    const double contrib = w * (fa + fb);
    if (!std::isfinite(contrib)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrate_singular: integrand not finite near t = " << near
         << " or t = 1 - " << near;
      throw DomainError(os.str());
    }
    return contrib;
  };

  double h = 1.0;
  double sum = std::numbers::pi / 4.0 * f(0.5, 0.5);
  if (!std::isfinite(sum)) {
    throw DomainError("integrate_singular: integrand not finite at t = 0.5");
  }
  for (int k = 1; k * h <= kUMax; ++k) sum += pair_sum(k * h);
  double prev = h * sum;

  for (int level = 1; level <= kQuadratureLevelCap; ++level) {
    h *= 0.5;
    for (int k = 1; k * h <= kUMax; k += 2) sum += pair_sum(k * h);
    const double current = h * sum;
    const double diff = std::fabs(current - prev);
    // Rounding in the node sum sets a floor below which levels cannot agree.
    const double floor = 16.0 * kEps * std::fabs(current);
    if (level >= kMinLevel && diff <= std::fmax(tol, floor)) {
      return {current, diff, Method::quadrature};
    }
    prev = current;
  }
  throw NonConvergence("integrate_singular: no agreement within tol after " +
                       std::to_string(kQuadratureLevelCap) + " levels");
}

EvalResult integrate_singular(const Integrand& f, double tol) {
  return integrate_singular(
      EndpointIntegrand([&f](double t, double) { return f(t); }), tol);
}

EvalResult integrate_halfline(const Integrand& f, double tol) {
  return integrate_singular(
      EndpointIntegrand([&f](double u, double uc) {
        const double val = f(u / uc);
        if (val == 0.0) return 0.0;
        return val / uc / uc;
      }),
      tol);
}

double invert_monotone(const std::function<double(double)>& g, double lo,
                       double hi, double target, double tol) {
  if (!(lo <= hi)) throw DomainError("invert_monotone: lo must not exceed hi");
  if (!(tol > 0.0)) throw DomainError("invert_monotone: tol must be positive");
  double g_lo = g(lo) - target;
  double g_hi = g(hi) - target;
  if (g_lo > tol || g_hi < -tol) {
    std::ostringstream os;
    os.precision(17);
    os << "invert_monotone: target " << target << " outside [" << g_lo + target
       << ", " << g_hi + target << "]";
    throw BracketError(os.str());
  }
  if (std::fabs(g_lo) <= tol) return lo;
  if (std::fabs(g_hi) <= tol) return hi;

  // Last two iterates feed the secant.
  double x_prev = lo, f_prev = g_lo;
  double x_cur = hi, f_cur = g_hi;
  double width_two_ago = 2.0 * (hi - lo);
  double width_one_ago = 2.0 * (hi - lo);

  for (int iter = 0; iter < 400; ++iter) {
    const double width = hi - lo;
    if (width <= 4.0 * kEps * std::fmax(std::fabs(lo), std::fabs(hi)) ||
        width <= std::numeric_limits<double>::min()) {
      return 0.5 * (lo + hi);
    }
    double x = std::numeric_limits<double>::quiet_NaN();
    if (f_cur != f_prev) x = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev);
    const bool stalled = width > 0.5 * width_two_ago;
    if (!(x > lo && x < hi) || stalled) x = lo + 0.5 * width;

    const double fx = g(x) - target;
    if (std::fabs(fx) <= tol) return x;
    if (fx < 0.0) {
      lo = x;
      g_lo = fx;
    } else {
      hi = x;
      g_hi = fx;
    }
    x_prev = x_cur;
    f_prev = f_cur;
    x_cur = x;
    f_cur = fx;
    width_two_ago = width_one_ago;
    width_one_ago = width;
  }
  return 0.5 * (lo + hi);
}

}  // namespace pqell
