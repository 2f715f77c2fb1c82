#ifndef PQELL_GEN_TRIG_HPP
#define PQELL_GEN_TRIG_HPP

#include "pqell/errors.hpp"

namespace pqell {

/// Exponent pair (p, q) of the generalized trigonometric functions.
///
/// Admissible when q > 0 and the conjugate p* = p / (p - 1) is positive,
/// i.e. p < 0 or p > 1. The reciprocals 1/p and 1/p* are cached since every
/// formula uses them rather than p and p* themselves.
class PQParams {
 public:
  PQParams(double p, double q);

  /// The pair (p*, q) built from p without forming p* first, so that
  /// 1/p* = 1 - 1/p and (p*)* = p hold to rounding. Requires p > 0, p != 1.
  static PQParams conjugate_of(double p, double q);

  double p() const { return p_; }
  double q() const { return q_; }
  double p_star() const { return p_star_; }
  double inv_p() const { return inv_p_; }
  double inv_p_star() const { return inv_p_star_; }

 private:
  PQParams(double p, double q, double inv_p, double inv_p_star);

  double p_;
  double q_;
  double p_star_;
  double inv_p_;
  double inv_p_star_;
};

// Half-period (2/q) B(1/p*, 1/q).
double pi_pq(const PQParams& params);

// Integral of (1 - t^q)^(-1/p) over [0, x], x in [0, 1].
double arcsin_pq(const PQParams& params, double x);

// Inverse of arcsin_pq on [0, pi_pq/2].
double sin_pq(const PQParams& params, double theta);

double cos_pq(const PQParams& params, double theta);

// Throws RangeError at theta = pi_pq/2.
double tan_pq(const PQParams& params, double theta);

}  // namespace pqell

#endif  // PQELL_GEN_TRIG_HPP
