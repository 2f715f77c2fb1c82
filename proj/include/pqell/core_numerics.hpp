#ifndef PQELL_CORE_NUMERICS_HPP
#define PQELL_CORE_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "pqell/errors.hpp"

namespace pqell {

enum class Method { series, quadrature, closed_form };

std::string_view to_string(Method m);

/// A computed value with an estimate of its absolute error.
///
/// Non-finite values are never stored here; operations that would produce
/// them throw instead.
struct EvalResult {
  double value = 0.0;
  double abs_err = 0.0;
  Method method = Method::closed_form;
};

/// Parameters of a Gauss hypergeometric series F(a, b; c; arg).
struct HypSeriesSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double arg = 0.0;
  double rel_tol = 1e-14;
  std::int64_t max_terms = 1'000'000;
  // 1 - arg when known more accurately than by subtraction; only the
  // expansions around arg = 1 use it.
  std::optional<double> arg_complement;

  static HypSeriesSpec of(double a, double b, double c, double arg) {
    HypSeriesSpec s;
    s.a = a;
    s.b = b;
    s.c = c;
    s.arg = arg;
    return s;
  }

  // Throws DomainError when the series is not well defined or does not
  // converge at `arg`.
  void validate() const;
};

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Euler's digamma function psi(x) for x > 0.
double digamma(double x);

// 1/Gamma(x) for any real x; zero at the poles 0, -1, -2, ...
double reciprocal_gamma(double x);

double beta(double x, double y);

// Rising factorial (a)_n, with (a)_0 = 1.
double pochhammer(double a, std::int64_t n);

/// Sums the Gauss hypergeometric series term by term.
///
/// Stops once two consecutive terms, each scaled by 1 / (1 - |arg|), fall
/// below rel_tol * |partial sum|. The error estimate is the first neglected
/// term times that same tail factor (or n / (c - a - b) at arg = 1). Throws
/// NonConvergence when max_terms is reached first.
EvalResult hyp2f1(const HypSeriesSpec& spec);

// The first `n_terms` partial sum of the series, with no stopping rule.
double hyp2f1_partial_sum(double a, double b, double c, double arg,
                          std::int64_t n_terms);

/// Evaluates F(a, b; c; arg) for 0 <= arg < 1 by the connection formulas
/// that re-expand the function in powers of (1 - arg).
///
/// Supports c - a - b = 0 (logarithmic case) and c - a - b not an integer.
/// Requires a, b > 0. Other cases throw DomainError.
EvalResult hyp2f1_reflected(const HypSeriesSpec& spec);

/// Picks the direct series for arg <= 0.9 and the reflected expansion above
/// it when that expansion applies; otherwise the direct series.
EvalResult hyp2f1_eval(const HypSeriesSpec& spec);

// Integrand over (0, 1) receiving both t and its complement 1 - t, so that
// endpoint singularities such as (1 - t^q)^(-1/p) can be evaluated without
// cancellation.
using EndpointIntegrand = std::function<double(double t, double tc)>;
using Integrand = std::function<double(double t)>;

inline constexpr int kQuadratureLevelCap = 12;
inline constexpr double kDefaultQuadratureTol = 1e-12;

/// Double-exponential (tanh-sinh) quadrature over (0, 1).
///
/// The integrand is never evaluated at 0 or 1. Levels halve the step size;
/// the result is accepted once two successive levels agree within `tol`,
/// and that difference is reported as abs_err. Throws NonConvergence after
/// kQuadratureLevelCap levels.
EvalResult integrate_singular(const EndpointIntegrand& f,
                              double tol = kDefaultQuadratureTol);
EvalResult integrate_singular(const Integrand& f,
                              double tol = kDefaultQuadratureTol);

// Integral over (0, inf) through t = u / (1 - u).
EvalResult integrate_halfline(const Integrand& f,
                              double tol = kDefaultQuadratureTol);

/// Solves g(x) = target for increasing continuous g on [lo, hi].
///
/// Secant steps inside a shrinking bracket; a step that would leave the
/// bracket (or that fails to halve it every second iteration) is replaced by
/// the bisection midpoint. Returns x with |g(x) - target| <= tol, or the
/// bracket midpoint once the bracket has collapsed to a few ulps.
double invert_monotone(const std::function<double(double)>& g, double lo,
                       double hi, double target, double tol);

// 1 - t^q computed from t and tc = 1 - t without cancellation.
double one_minus_pow(double t, double tc, double q);

}  // namespace pqell

#endif  // PQELL_CORE_NUMERICS_HPP
