#ifndef PQELL_MEANS_HPP
#define PQELL_MEANS_HPP

#include <cstdint>
#include <string_view>

#include "pqell/errors.hpp"

namespace pqell {

/// Two positive, finite reals fed to a binary mean.
///
/// Every mean here is symmetric and homogeneous, so evaluation works on the
/// normalized view (1, x) with x = min/max in (0, 1] and rescales by max.
class PositivePair {
 public:
  PositivePair(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }
  double x() const { return x_; }
  double scale() const { return scale_; }

 private:
  double a_;
  double b_;
  double x_;
  double scale_;
};

// Logarithmic mean (a - b) / (ln a - ln b), and a when |a - b| <= 1e-12 max.
double mean_log(const PositivePair& pair);

// 1 / int_0^inf dt / ((t + a)(t + b)).
double mean_log_integral(const PositivePair& pair);

// Arithmetic-geometric mean by the coupled iteration.
double mean_ag(const PositivePair& pair);

// Gauss: 1 / ((2/pi) int_0^inf dt / sqrt((t^2 + a^2)(t^2 + b^2))).
double mean_ag_integral(const PositivePair& pair);

/// Normalizing constant of M_p, 1 / int_0^inf (1 + t^p)^(-2/p) dt, in closed
/// form 2 / pi_{p*,p}; equals 1 at p = 1.
double c_p(double p);

// The same constant by half-line quadrature.
double c_p_integral(double p);

enum class MpMethod { automatic, elliptic, hyp_base, hyp_quad, integral, nakamura };
enum class KpMethod { closed, integral, hyp_base, hyp_quad };

std::string_view to_string(MpMethod m);
std::string_view to_string(KpMethod m);
MpMethod parse_mp_method(std::string_view name);
KpMethod parse_kp_method(std::string_view name);

/// 1 / M_p(1, x) for p in (0, 1) or (1, inf) and x in (0, 1].
///
///   integral  c_p int_0^inf ((t^p + 1)(t^p + x^p))^(-1/p) dt
///   elliptic  (2 / pi_{p*,p}) K_{p*,p} with k^p = 1 - x^p, by quadrature
///   hyp_base  F(1/p, 1/p; 2/p; 1 - x^p)
///   hyp_quad  ((1 + x^p)/2)^(-1/p) F(1/(2p), 1/(2p) + 1/2; 1/p + 1/2; y),
///             y = ((1 - x^p) / (1 + x^p))^2
///   nakamura  the product-form power series in 1 - x^p, summed directly
///   automatic hyp_base if 1 - x^p <= 0.9, else hyp_quad if y <= 0.9, else
///             hyp_base through the 1 - z expansion; integral on failure
double mp_reciprocal(double p, double x, MpMethod method = MpMethod::automatic);

/// 1 / K_p(1, x); closed works for every real p, the others need p > 0.
///
///   closed    p / (p - 1) (1 - x^{p-1}) / (1 - x^p) with limits at p = 0, 1
///   integral  int_0^1 ((1 - s) + x^p s)^(-1/p) ds
///   hyp_base  F(1, 1/p; 2; 1 - x^p)
///   hyp_quad  ((1 + x^p)/2)^(-1/p) F(1/(2p), 1/(2p) + 1/2; 3/2; y)
double kp_reciprocal(double p, double x, KpMethod method = KpMethod::closed);

/// Bhatia-Li mean. p = 0 (|p| <= 1e-8) gives sqrt(ab); p = 1 gives L(a, b).
double mean_mp(const PositivePair& pair, double p,
               MpMethod method = MpMethod::automatic);

/// Power difference mean ((p-1)/p) (a^p - b^p) / (a^{p-1} - b^{p-1}) with
/// K_0 = ab / L and K_1 = L when p is within 1e-8 of 0 or 1.
double mean_kp(const PositivePair& pair, double p,
               KpMethod method = KpMethod::closed);

/// Partial sum with `n_terms` terms of
///   sum_k prod_{i<k} (1/p + i)^2 / (2/p + i) (1 - x^p)^k / k!
double nakamura_partial_sum(double p, double x, std::int64_t n_terms);

/// |F(a, b; 2a; x) - (1 - x/2)^(-b) F(b/2, (b+1)/2; a + 1/2; (x/(2-x))^2)|
/// for x in [0, 1).
double quad_transform_check(double a, double b, double x);

/// F(1/(2p), 1/(2p) + 1/2; 1/p + 1/2; y) - F(1/(2p), 1/(2p) + 1/2; 3/2; y)
/// with y = ((1 - x^p) / (1 + x^p))^2, i.e. 1/M_p - 1/K_p up to the common
/// positive prefactor.
double third_parameter_difference(double p, double x);

enum class Verdict { Mp_greater, equal, Kp_greater };

std::string_view to_string(Verdict v);

struct MeanOrdering {
  Verdict verdict;
  double p;
  PositivePair pair;
  double gap;  // M_p - K_p
};

// Gaps within 1e-12 * max(a, b) count as equal.
inline constexpr double kOrderingRelTol = 1e-12;

MeanOrdering ordering(const PositivePair& pair, double p);

}  // namespace pqell

#endif  // PQELL_MEANS_HPP
