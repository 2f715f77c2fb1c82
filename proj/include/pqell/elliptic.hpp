#ifndef PQELL_ELLIPTIC_HPP
#define PQELL_ELLIPTIC_HPP

#include <cstdint>

#include "pqell/core_numerics.hpp"
#include "pqell/gen_trig.hpp"

namespace pqell {

/// The q-th power of an elliptic modulus together with its complement.
///
/// Integrands only ever see k^q, and near k = 1 the complement 1 - k^q must
/// be known to full relative precision, so it is carried separately.
struct ModulusPower {
  double kq = 0.0;
  double complement = 1.0;

  // Builds the pair from an accurately known complement 1 - k^q in (0, 1].
  static ModulusPower from_complement(double complement);
};

// Elliptic modulus k in [0, 1).
class Modulus {
 public:
  explicit Modulus(double k);

  double k() const { return k_; }
  ModulusPower power(double q) const;

 private:
  double k_;
};

enum class EllipticMethod { automatic, series, quadrature };

// Largest k^q for which the hypergeometric series is used.
inline constexpr double kEllipticSeriesLimit = 0.99;

/// Complete (p,q)-elliptic integral of the first kind.
///
/// series:     (pi_pq / 2) F(1/p*, 1/q; 1/p* + 1/q; k^q), needs k^q <= 0.99
/// quadrature: integral of (1 - t^q)^(-1/p) (1 - k^q t^q)^(-1/p*) over (0, 1)
/// automatic:  series when legal, quadrature otherwise
EvalResult K_pq(const PQParams& params, const Modulus& k,
                EllipticMethod method = EllipticMethod::automatic);
EvalResult K_pq(const PQParams& params, const ModulusPower& kq,
                EllipticMethod method = EllipticMethod::automatic);

/// Complete (p,q)-elliptic integral of the second kind.
///
/// series:     (pi_pq / 2) F(-1/p, 1/q; 1/p* + 1/q; k^q)
/// quadrature: integral of ((1 - k^q t^q) / (1 - t^q))^(1/p) over (0, 1)
EvalResult E_pq(const PQParams& params, const Modulus& k,
                EllipticMethod method = EllipticMethod::automatic);
EvalResult E_pq(const PQParams& params, const ModulusPower& kq,
                EllipticMethod method = EllipticMethod::automatic);

// dK/dk = (E - (1 - k^q) K) / (k (1 - k^q)). Returns 0 at k = 0 when q > 1.
double dK_dk(const PQParams& params, const Modulus& k);

// dE/dk = q (E - K) / (p k); undefined at k = 0.
double dE_dk(const PQParams& params, const Modulus& k);

/// p E_{p,q}(k^{1/q}) K_{q,p}(k^{1/p}) - q K_{p,q}(k^{1/q}) E_{q,p}(k^{1/p})
/// minus (p - q) pi_{p,q} pi_{q,p} / 4, for p, q > 1 and k in [0, 1).
/// Vanishes identically.
double legendre_residual(double p, double q, double k);

// Integral of sin_pq^{qn} over [0, pi_pq/2] in closed form:
// (pi_pq / 2) (1/q)_n / (1/p* + 1/q)_n.
double moment_sin_pq(const PQParams& params, std::int64_t n);

// The same moment as the beta integral (1/q) int_0^1 t^{n+1/q-1} (1-t)^{-1/p}
// dt, by quadrature.
EvalResult moment_sin_pq_integral(const PQParams& params, std::int64_t n);

}  // namespace pqell

#endif  // PQELL_ELLIPTIC_HPP
