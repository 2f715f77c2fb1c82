#include "pqell/verify.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "pqell/core_numerics.hpp"
#include "pqell/elliptic.hpp"
#include "pqell/gen_trig.hpp"
#include "pqell/means.hpp"

namespace pqell {

namespace {

constexpr double kFiniteDifferenceStep = 1e-6;
constexpr double kEndpointExclusion = 1e-3;

const std::array<double, 7> kMeanP = {0.25, 0.5, 0.75, 1.5, 2.0, 3.0, 5.0};
const std::array<double, 7> kMeanX = {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

class Collector {
 public:
  Collector(std::string suite, const VerifyOptions& options)
      : options_(options), start_(std::chrono::steady_clock::now()) {
    report_.suite = std::move(suite);
  }

  void add(std::string label, double residual, double tolerance) {
    const double tol = options_.tol_override.value_or(tolerance);
    const bool passed = std::isfinite(residual) && residual <= tol;
    record({std::move(label), residual, tol, passed});
  }

  // A case judged by a predicate rather than a tolerance.
  void add_check(std::string label, double residual, bool passed) {
    record({std::move(label), residual, 0.0, passed});
  }

  // Runs `body`; any exception becomes a failing case named `label`.
  void guard(const std::string& label, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record({label + " threw: " + e.what(),
              std::numeric_limits<double>::infinity(), 0.0, false});
    }
  }

  VerifyReport finish() {
    report_.elapsed = std::chrono::steady_clock::now() - start_;
    return std::move(report_);
  }

 private:
  void record(VerifyCase c) {
    ++report_.cases;
    if (!c.passed) ++report_.failures;
    if (std::isfinite(c.residual)) {
      report_.max_residual = std::fmax(report_.max_residual, c.residual);
    } else {
      report_.max_residual = std::numeric_limits<double>::infinity();
    }
    report_.details.push_back(std::move(c));
  }

  VerifyOptions options_;
  std::chrono::steady_clock::time_point start_;
  VerifyReport report_;
};

std::string pq_label(double p, double q) {
  return "(p,q)=(" + fmt(p) + "," + fmt(q) + ")";
}

void suite_legendre(Collector& c) {
  const std::array<std::pair<double, double>, 7> pairs = {
      {{2, 3}, {3, 2}, {1.5, 4}, {4, 1.5}, {2.5, 2.5}, {1.2, 5}, {5, 1.2}}};
  for (auto [p, q] : pairs) {
    for (double k : {0.0, 0.2, 0.5, 0.8, 0.95}) {
      const std::string label = pq_label(p, q) + " k=" + fmt(k);
      c.guard(label, [&] {
        c.add(label, std::fabs(legendre_residual(p, q, k)), 1e-9);
      });
    }
  }
}

void suite_derivatives(Collector& c) {
  const std::array<std::pair<double, double>, 4> pairs = {
      {{2, 2}, {3, 2}, {2, 3}, {1.5, 4}}};
  const double h = kFiniteDifferenceStep;
  for (auto [p, q] : pairs) {
    const PQParams params(p, q);
    for (int i = 1; i <= 9; ++i) {
      const double k = 0.1 * i;
      const std::string label = pq_label(p, q) + " k=" + fmt(k);
      c.guard(label, [&] {
        auto K = [&](double kk) { return K_pq(params, Modulus(kk)).value; };
        auto E = [&](double kk) { return E_pq(params, Modulus(kk)).value; };
        c.add(label + " dK/dk",
              std::fabs(dK_dk(params, Modulus(k)) - central_difference(K, k, h)), 1e-5);
        c.add(label + " dE/dk",
              std::fabs(dE_dk(params, Modulus(k)) - central_difference(E, k, h)), 1e-5);
      });
    }
  }
}

void suite_hypergeo(Collector& c) {
  std::vector<std::pair<std::string, PQParams>> params = {
      {pq_label(2, 2), PQParams(2, 2)},
      {pq_label(3, 2), PQParams(3, 2)},
      {pq_label(2, 3), PQParams(2, 3)},
      {pq_label(1.5, 4), PQParams(1.5, 4)},
      {"(p,q)=(-1,0.5) [first index p* of p=0.5]", PQParams::conjugate_of(0.5, 0.5)},
  };
  for (const auto& [name, pq] : params) {
    for (int i = 0; i <= 9; ++i) {
      const double k = 0.1 * i;
      const std::string label = name + " k=" + fmt(k);
      c.guard(label, [&] {
        const Modulus m(k);
        const double ks = K_pq(pq, m, EllipticMethod::series).value;
        const double kq = K_pq(pq, m, EllipticMethod::quadrature).value;
        const double es = E_pq(pq, m, EllipticMethod::series).value;
        const double eq = E_pq(pq, m, EllipticMethod::quadrature).value;
        c.add(label + " K series-quadrature", std::fabs(ks - kq), 1e-10);
        c.add(label + " E series-quadrature", std::fabs(es - eq), 1e-10);
      });
    }
  }
  for (double x : {0.1, 0.5, 0.9}) {
    const std::string label = "F(1,1;2;x) x=" + fmt(x);
    c.guard(label, [&] {
      const double f = hyp2f1(HypSeriesSpec::of(1.0, 1.0, 2.0, x)).value;
      c.add(label, std::fabs(f * x + std::log1p(-x)), 1e-10);
    });
  }
}

void suite_quadtransform(Collector& c) {
  std::vector<std::pair<double, double>> ab = {
      {1.0 / 3.0, 1.0 / 3.0}, {1.0, 1.0 / 3.0}, {0.5, 0.25}};
  for (double p : kMeanP) {
    ab.emplace_back(1.0 / p, 1.0 / p);
    ab.emplace_back(1.0, 1.0 / p);
  }
  for (auto [a, b] : ab) {
    for (double x : {0.0, 0.2, 0.5, 0.8}) {
      const std::string label = "(a,b)=(" + fmt(a) + "," + fmt(b) + ") x=" + fmt(x);
      c.guard(label, [&] { c.add(label, quad_transform_check(a, b, x), 1e-10); });
    }
  }
}

void suite_means_ordering(Collector& c) {
  std::vector<double> ps = {0.0};
  for (double p : kMeanP) {
    if (p == 1.5) ps.push_back(1.0);
    ps.push_back(p);
  }
  std::vector<PositivePair> pairs;
  for (double x : kMeanX) pairs.emplace_back(1.0, x);
  pairs.emplace_back(4.0, 1.0);
  pairs.emplace_back(0.3, 2.0);

  for (double p : ps) {
    const Verdict expected =
        p < 1.0 ? Verdict::Mp_greater : (p == 1.0 ? Verdict::equal : Verdict::Kp_greater);
    for (const PositivePair& pair : pairs) {
      const std::string label =
          "p=" + fmt(p) + " (a,b)=(" + fmt(pair.a()) + "," + fmt(pair.b()) + ")";
      c.guard(label, [&] {
        const MeanOrdering o = ordering(pair, p);
        if (expected == Verdict::equal) {
          c.add(label + " |M1-K1|", std::fabs(o.gap), 1e-10);
          return;
        }
        const double sign = expected == Verdict::Mp_greater ? 1.0 : -1.0;
        c.add_check(label + " verdict " + std::string(to_string(o.verdict)),
                    std::fmax(0.0, -sign * o.gap), o.verdict == expected);
      });
    }
  }
  // The inequality between the two hypergeometric forms that decides the
  // verdict: sign of the difference equals sign(3/2 - (1/p + 1/2)).
  for (double p : kMeanP) {
    for (double x : kMeanX) {
      const std::string label = "third parameter p=" + fmt(p) + " x=" + fmt(x);
      c.guard(label, [&] {
        const double d = third_parameter_difference(p, x);
        const double expected_sign = (1.5 - (1.0 / p + 0.5)) > 0 ? 1.0 : -1.0;
        c.add_check(label, std::fmax(0.0, -expected_sign * d), d * expected_sign > 0.0);
      });
    }
  }
}

void suite_means_bridge(Collector& c) {
  std::vector<double> xs = {0.01};
  for (int i = 1; i <= 9; ++i) xs.push_back(0.1 * i);
  for (double x : xs) {
    const PositivePair pair(1.0, x);
    const std::string lx = " x=" + fmt(x);
    c.guard("M2-AG" + lx, [&] {
      c.add("M2-AG" + lx, std::fabs(mean_mp(pair, 2.0) - mean_ag(pair)), 1e-10);
      c.add("M2(elliptic)-AG" + lx,
            std::fabs(mean_mp(pair, 2.0, MpMethod::elliptic) - mean_ag(pair)), 1e-10);
    });
    c.guard("M(1+-1e-5)-L" + lx, [&] {
      const double L = mean_log(pair);
      c.add("M(1+1e-5)-L" + lx, std::fabs(mean_mp(pair, 1.0 + 1e-5) - L), 1e-4);
      c.add("M(1-1e-5)-L" + lx, std::fabs(mean_mp(pair, 1.0 - 1e-5) - L), 1e-4);
    });
    c.guard("F(1,1;2;1-x)L-1" + lx, [&] {
      HypSeriesSpec spec = HypSeriesSpec::of(1.0, 1.0, 2.0, 1.0 - x);
      spec.arg_complement = x;
      c.add("F(1,1;2;1-x)L-1" + lx,
            std::fabs(hyp2f1_eval(spec).value * mean_log(pair) - 1.0), 1e-10);
    });
    c.guard("L-integral" + lx, [&] {
      c.add("L-integral" + lx, std::fabs(mean_log(pair) - mean_log_integral(pair)), 1e-10);
      c.add("AG-Gauss integral" + lx,
            std::fabs(mean_ag(pair) - mean_ag_integral(pair)), 1e-10);
    });
  }
  for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0}) {
    const std::string label = "c_p-integral p=" + fmt(p);
    c.guard(label, [&] { c.add(label, std::fabs(c_p(p) - c_p_integral(p)), 1e-10); });
  }
}

void suite_moments(Collector& c) {
  const std::array<std::pair<double, double>, 4> pairs = {
      {{2, 2}, {3, 2}, {1.5, 4}, {-2, 2}}};
  for (auto [p, q] : pairs) {
    const PQParams params(p, q);
    for (int n = 0; n <= 5; ++n) {
      const std::string label = pq_label(p, q) + " n=" + std::to_string(n);
      c.guard(label, [&] {
        c.add(label,
              std::fabs(moment_sin_pq(params, n) - moment_sin_pq_integral(params, n).value),
              1e-9);
      });
    }
  }
}

void suite_nakamura(Collector& c) {
  for (double p : kMeanP) {
    for (double x : kMeanX) {
      const std::string label = "p=" + fmt(p) + " x=" + fmt(x);
      c.guard(label, [&] {
        const double z = -std::expm1(p * std::log(x));
        for (int n : {1, 5, 20, 100}) {
          const double lhs = nakamura_partial_sum(p, x, n);
          const double rhs = hyp2f1_partial_sum(1.0 / p, 1.0 / p, 2.0 / p, z, n);
          c.add(label + " partial n=" + std::to_string(n), std::fabs(lhs - rhs), 1e-12);
        }
        c.add(label + " full sum vs hyp_base",
              std::fabs(mp_reciprocal(p, x, MpMethod::nakamura) -
                        mp_reciprocal(p, x, MpMethod::hyp_base)),
              1e-9);
      });
    }
  }
}

void suite_representations(Collector& c) {
  const std::array<MpMethod, 5> mp_methods = {MpMethod::integral, MpMethod::elliptic,
                                              MpMethod::hyp_base, MpMethod::hyp_quad,
                                              MpMethod::nakamura};
  const std::array<KpMethod, 4> kp_methods = {KpMethod::closed, KpMethod::integral,
                                              KpMethod::hyp_base, KpMethod::hyp_quad};
  for (double p : kMeanP) {
    for (double x : kMeanX) {
      const std::string label = "p=" + fmt(p) + " x=" + fmt(x);
      c.guard(label + " 1/M_p", [&] {
        std::array<double, 5> v{};
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = mp_reciprocal(p, x, mp_methods[i]);
        double spread = 0.0;
        for (double a : v)
          for (double b : v) spread = std::fmax(spread, std::fabs(a - b));
        c.add(label + " 1/M_p five forms", spread, 1e-9);
      });
      c.guard(label + " 1/K_p", [&] {
        std::array<double, 4> v{};
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = kp_reciprocal(p, x, kp_methods[i]);
        double spread = 0.0;
        for (double a : v)
          for (double b : v) spread = std::fmax(spread, std::fabs(a - b));
        c.add(label + " 1/K_p four forms", spread, 1e-9);
      });
    }
  }
}

void suite_trig(Collector& c) {
  const std::array<std::pair<double, double>, 5> pairs = {
      {{2, 2}, {3, 2}, {2, 3}, {1.5, 4}, {-2, 2}}};
  const double h = kFiniteDifferenceStep;
  constexpr int kGrid = 50;
  for (auto [p, q] : pairs) {
    const PQParams params(p, q);
    const std::string name = pq_label(p, q);
    const double half = 0.5 * pi_pq(params);
    const double s_exp = q / p;                            // sin' = cos^{q/p}
    const double c_exp = q * params.inv_p_star();          // q/p*
    auto cos_from_sin = [q](double s) {
      return std::pow(one_minus_pow(s, 1.0 - s, q), 1.0 / q);
    };

    c.guard(name + " half-period", [&] {
      c.add(name + " 2 arcsin(1) - pi_pq", std::fabs(2.0 * arcsin_pq(params, 1.0) - 2.0 * half),
            1e-10);
    });
    for (int i = 0; i < kGrid; ++i) {
      const double theta = half * i / (kGrid - 1);
      const std::string label = name + " theta=" + fmt(theta);
      c.guard(label, [&] {
        const double s = sin_pq(params, theta);
        const double co = cos_pq(params, theta);
        c.add(label + " cos^q+sin^q-1", std::fabs(std::pow(co, q) + std::pow(s, q) - 1.0),
              1e-10);
        if (theta < kEndpointExclusion || theta > half - kEndpointExclusion) return;

        const double s_plus = sin_pq(params, theta + h);
        const double s_minus = sin_pq(params, theta - h);
        const double c_plus = cos_from_sin(s_plus);
        const double c_minus = cos_from_sin(s_minus);
        // Tolerances are relative once the derivative itself exceeds 1.
        auto rel = [](double fd, double exact) {
          return std::fabs(fd - exact) / std::fmax(1.0, std::fabs(exact));
        };
        const double d_sin = (s_plus - s_minus) / (2.0 * h);
        c.add(label + " (sin)'", rel(d_sin, std::pow(co, s_exp)), 1e-6);
        const double d_cos_pow =
            (std::pow(c_plus, c_exp) - std::pow(c_minus, c_exp)) / (2.0 * h);
        c.add(label + " (cos^{q/p*})'", rel(d_cos_pow, -c_exp * std::pow(s, q - 1.0)), 1e-6);
        const double d_tan = (s_plus / c_plus - s_minus / c_minus) / (2.0 * h);
        c.add(label + " (tan)'", rel(d_tan, std::pow(co, -1.0 - c_exp)), 1e-6);
      });
    }
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const std::string label = name + " sin(arcsin(" + fmt(x) + "))";
      c.guard(label, [&] {
        c.add(label, std::fabs(sin_pq(params, arcsin_pq(params, x)) - x), 1e-9);
      });
    }
  }
}

struct SuiteEntry {
  SuiteInfo info;
  void (*run)(Collector&);
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries = {
      {{"legendre",
        "p E_{p,q} K_{q,p} - q K_{p,q} E_{q,p} = (p-q) pi_{p,q} pi_{q,p} / 4 (moduli "
        "k^{1/q}, k^{1/p}) on 7 (p,q) pairs x k in {0, .2, .5, .8, .95}; tol 1e-9"},
       suite_legendre},
      {{"derivatives",
        "closed-form dK/dk, dE/dk vs central differences (h = 1e-6) for (p,q) in "
        "{(2,2),(3,2),(2,3),(1.5,4)}, k = .1..0.9; tol 1e-5"},
       suite_derivatives},
      {{"hypergeo",
        "K_pq, E_pq series vs quadrature for (p,q) in {(2,2),(3,2),(2,3),(1.5,4),(-1,.5)}, "
        "k = 0..0.9; tol 1e-10"},
       suite_hypergeo},
      {{"quadtransform",
        "quadratic transformation F(a,b;2a;x) vs its (x/(2-x))^2 form, x in {0,.2,.5,.8}; "
        "tol 1e-10"},
       suite_quadtransform},
      {{"means-ordering",
        "sign of M_p - K_p for p in {0,.25,.5,.75,1,1.5,2,3,5} and the third-parameter "
        "inequality; |M_1 - K_1| <= 1e-10"},
       suite_means_ordering},
      {{"means-bridge",
        "M_2 = AG, M_{1+-1e-5} ~ L (1e-4), F(1,1;2;1-x) L = 1, integral forms of L, AG "
        "and c_p; tol 1e-10"},
       suite_means_bridge},
      {{"moments",
        "sin_pq moments: Pochhammer closed form vs beta-integral quadrature, n = 0..5; "
        "tol 1e-9"},
       suite_moments},
      {{"nakamura",
        "product-form series vs F(1/p,1/p;2/p;1-x^p): partial sums (1e-12) and full "
        "sums (1e-9)"},
       suite_nakamura},
      {{"representations",
        "five forms of 1/M_p and four forms of 1/K_p agree pairwise for p in "
        "{.25,.5,.75,1.5,2,3,5}, x in {.05,.1,.3,.5,.7,.9,.99}; tol 1e-9"},
       suite_representations},
      {{"trig",
        "cos^q + sin^q = 1 (1e-10), derivative identities by central differences "
        "(1e-6), sin/arcsin round trip (1e-9) for 5 (p,q) pairs incl. p = -2"},
       suite_trig},
  };
  return entries;
}

}  // namespace

const std::vector<SuiteInfo>& verify_suites() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

VerifyReport run_suite(std::string_view name, const VerifyOptions& options) {
  for (const auto& e : registry()) {
    if (e.info.name == name) {
      Collector c(std::string(name), options);
      e.run(c);
      return c.finish();
    }
  }
  throw std::invalid_argument("unknown verification suite '" + std::string(name) + "'");
}

}  // namespace pqell
