// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "pqell/core_numerics.hpp"
#include "pqell/elliptic.hpp"
#include "pqell/gen_trig.hpp"
#include "pqell/means.hpp"

using namespace pqell;

namespace {

constexpr double pi = std::numbers::pi;
const std::vector<double> kP = {0.25, 0.5, 0.75, 1.5, 2, 3, 5};
const std::vector<double> kX = {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst |residual| / tolerance ratio of a criterion.
class Gate {
 public:
  void check(double residual, double tol, const std::string& where) {
    const double ratio = std::isfinite(residual) ? residual / tol : INFINITY;
    if (ratio > worst_ratio_ || worst_.empty()) {
      worst_ratio_ = ratio;
      worst_ = where;
      worst_residual_ = residual;
      worst_tol_ = tol;
    }
    if (!(residual <= tol)) pass_ = false;
  }
  void require(bool ok, const std::string& where) {
    if (!ok) {
      pass_ = false;
      notes_ += (notes_.empty() ? "" : "; ") + where;
    }
  }
  Outcome outcome() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "worst %.3g (tol %.3g) at %s", worst_residual_, worst_tol_,
                  worst_.c_str());
    std::string d = worst_.empty() ? std::string() : buf;
    if (!notes_.empty()) d += (d.empty() ? "" : "; ") + std::string("failed: ") + notes_;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  double worst_ratio_ = -1.0;
  double worst_residual_ = 0.0;
  double worst_tol_ = 0.0;
  std::string worst_;
  std::string notes_;
};

std::string at(double p, double q, double v, const char* name = "k") {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%g,%g) %s=%g", p, q, name, v);
  return buf;
}

double K(const PQParams& pq, double k, EllipticMethod m = EllipticMethod::automatic) {
  return K_pq(pq, Modulus(k), m).value;
}
double E(const PQParams& pq, double k, EllipticMethod m = EllipticMethod::automatic) {
  return E_pq(pq, Modulus(k), m).value;
}

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::fabs(a - b) > 1e-16 * a; ++i) {
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return a;
}

Outcome classical() {
  Gate g;
  const PQParams pq(2, 2);
  for (int i = 0; i <= 9; ++i) {
    const double k = 0.1 * i;
    g.check(std::fabs(K(pq, k, EllipticMethod::series) - K(pq, k, EllipticMethod::quadrature)),
            1e-10, "K " + at(2, 2, k));
    g.check(std::fabs(E(pq, k, EllipticMethod::series) - E(pq, k, EllipticMethod::quadrature)),
            1e-10, "E " + at(2, 2, k));
  }
  g.check(std::fabs(K(pq, 0.0) - pi / 2), 1e-12, "K(0) - pi/2");
  g.check(std::fabs(E(pq, 0.0) - pi / 2), 1e-12, "E(0) - pi/2");
  return g.outcome();
}

Outcome legendre() {
  Gate g;
  const auto start = std::chrono::steady_clock::now();
  for (auto [p, q] : {std::pair{2.0, 3.0}, {3.0, 2.0}, {1.5, 4.0}, {4.0, 1.5}, {2.5, 2.5}}) {
    for (double k : {0.0, 0.2, 0.5, 0.8, 0.95}) {
      g.check(std::fabs(legendre_residual(p, q, k)), 1e-9, at(p, q, k));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  g.require(secs < 5.0, "runtime " + std::to_string(secs) + " s");
  return g.outcome();
}

Outcome derivatives() {
  Gate g;
  const double h = 1e-6;
  for (auto [p, q] : {std::pair{2.0, 2.0}, {3.0, 2.0}, {2.0, 3.0}}) {
    const PQParams pq(p, q);
    for (int i = 1; i <= 9; ++i) {
      const double k = 0.1 * i;
      const double fd_k = (K(pq, k + h) - K(pq, k - h)) / (2 * h);
      const double fd_e = (E(pq, k + h) - E(pq, k - h)) / (2 * h);
      g.check(std::fabs(dK_dk(pq, Modulus(k)) - fd_k), 1e-5, "dK " + at(p, q, k));
      g.check(std::fabs(dE_dk(pq, Modulus(k)) - fd_e), 1e-5, "dE " + at(p, q, k));
    }
  }
  return g.outcome();
}

Outcome moments() {
  Gate g;
  for (auto [p, q] : {std::pair{2.0, 2.0}, {3.0, 2.0}, {1.5, 4.0}}) {
    const PQParams pq(p, q);
    for (int n = 0; n <= 5; ++n) {
      g.check(std::fabs(moment_sin_pq(pq, n) - moment_sin_pq_integral(pq, n).value), 1e-9,
              at(p, q, n, "n"));
    }
  }
  return g.outcome();
}

Outcome chain() {
  Gate g;
  const std::vector<MpMethod> mp = {MpMethod::integral, MpMethod::elliptic, MpMethod::hyp_base,
                                    MpMethod::hyp_quad, MpMethod::nakamura};
  const std::vector<KpMethod> kp = {KpMethod::closed, KpMethod::integral, KpMethod::hyp_base,
                                    KpMethod::hyp_quad};
  for (double p : kP) {
    for (double x : kX) {
      char where[64];
      std::snprintf(where, sizeof where, "p=%g x=%g", p, x);
      std::vector<double> m, k;
      for (MpMethod method : mp) m.push_back(mp_reciprocal(p, x, method));
      for (KpMethod method : kp) k.push_back(kp_reciprocal(p, x, method));
      for (double a : m)
        for (double b : m) g.check(std::fabs(a - b), 1e-9, std::string("1/M_p ") + where);
      for (double a : k)
        for (double b : k) g.check(std::fabs(a - b), 1e-9, std::string("1/K_p ") + where);
    }
  }
  return g.outcome();
}

Outcome gauss_bridge() {
  Gate g;
  std::vector<double> xs = {0.01};
  for (int i = 1; i <= 9; ++i) xs.push_back(0.1 * i);
  for (double x : xs) {
    const PositivePair pr(1.0, x);
    const std::string w = "x=" + std::to_string(x);
    g.check(std::fabs(mean_mp(pr, 2.0) - agm(1.0, x)), 1e-10, "M_2 - AG " + w);
    g.check(std::fabs(mean_mp(pr, 1.0 + 1e-5) - mean_log(pr)), 1e-4, "M_{1+1e-5} - L " + w);
    g.check(std::fabs(mean_mp(pr, 1.0 - 1e-5) - mean_log(pr)), 1e-4, "M_{1-1e-5} - L " + w);
  }
  return g.outcome();
}

Outcome ordering_gate() {
  Gate g;
  for (double p : kP) {
    for (double x : kX) {
      const double gap = mean_mp(PositivePair(1, x), p) - mean_kp(PositivePair(1, x), p);
      const bool ok = p < 1 ? gap > 0 : gap < 0;
      g.require(ok, "p=" + std::to_string(p) + " x=" + std::to_string(x));
    }
  }
  for (double x : kX) {
    const PositivePair pr(1, x);
    g.check(std::fabs(mean_mp(pr, 1.0) - mean_kp(pr, 1.0)), 1e-10, "|M_1 - K_1| x=" + std::to_string(x));
  }
  const PositivePair four(4, 1);
  g.require(mean_mp(four, 0.0) > mean_kp(four, 0.0), "M_0(4,1) > K_0(4,1)");
  return g.outcome();
}

Outcome quadratic() {
  Gate g;
  for (auto [a, b] : {std::pair{1.0 / 3, 1.0 / 3}, {1.0, 1.0 / 3}, {0.5, 0.25}}) {
    for (double x : {0.0, 0.2, 0.5, 0.8}) {
      g.check(quad_transform_check(a, b, x), 1e-10,
              "(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ") x=" + std::to_string(x));
    }
  }
  return g.outcome();
}

Outcome trig() {
  Gate g;
  const double h = 1e-6;
  for (auto [p, q] : {std::pair{2.0, 2.0}, {3.0, 2.0}, {2.0, 3.0}, {1.5, 4.0}, {-2.0, 2.0}}) {
    const PQParams pq(p, q);
    const double half = pi_pq(pq) / 2;
    const double r = q * (1.0 - 1.0 / p);  // q / p*
    auto cosine = [&](double t) { return cos_pq(pq, t); };
    for (int i = 0; i < 50; ++i) {
      const double t = half * i / 49.0;
      const double s = sin_pq(pq, t), c = cosine(t);
      g.check(std::fabs(std::pow(c, q) + std::pow(s, q) - 1), 1e-10, "Pythagorean " + at(p, q, t, "theta"));
      if (t < 1e-3 || t > half - 1e-3) continue;
      // Finite differences are compared relative to max(1, |derivative|).
      auto rel = [](double fd, double exact) {
        return std::fabs(fd - exact) / std::fmax(1.0, std::fabs(exact));
      };
      const double d_sin = (sin_pq(pq, t + h) - sin_pq(pq, t - h)) / (2 * h);
      g.check(rel(d_sin, std::pow(c, q / p)), 1e-6, "(sin)' " + at(p, q, t, "theta"));
      const double d_cos =
          (std::pow(cosine(t + h), r) - std::pow(cosine(t - h), r)) / (2 * h);
      g.check(rel(d_cos, -r * std::pow(s, q - 1)), 1e-6, "(cos^{q/p*})' " + at(p, q, t, "theta"));
      const double d_tan = (tan_pq(pq, t + h) - tan_pq(pq, t - h)) / (2 * h);
      g.check(rel(d_tan, std::pow(c, -1 - r)), 1e-6, "(tan)' " + at(p, q, t, "theta"));
    }
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      g.check(std::fabs(sin_pq(pq, arcsin_pq(pq, x)) - x), 1e-9, "round trip " + at(p, q, x, "x"));
    }
  }
  return g.outcome();
}

struct Capture {
  int status = -1;
  std::string out;
};

Capture capture(const std::string& args) {
  Capture c;
  FILE* pipe = popen((std::string(PQELL_CLI_PATH) + " " + args).c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) c.out.append(buf, n);
  const int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

Outcome cli() {
  Gate g;
  const auto start = std::chrono::steady_clock::now();
  const Capture verify = capture("verify all 2>/dev/null");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  g.require(verify.status == 0, "verify all exit " + std::to_string(verify.status));
  g.check(secs, 60.0, "verify all wall time (s)");
  const std::string table = "table --fn Mp --p 0.25:5:8 --x 0.05:0.99:8";
  const Capture a = capture(table), b = capture(table);
  g.require(a.status == 0 && b.status == 0, "table exit status");
  g.require(!a.out.empty() && a.out == b.out, "table output differs between runs");
  return g.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"classical degeneration K_{2,2}, E_{2,2}", classical},
      {"Legendre-type relation", legendre},
      {"derivative system", derivatives},
      {"moment formula", moments},
      {"representations of 1/M_p and 1/K_p", chain},
      {"Gauss bridge and p -> 1 limit", gauss_bridge},
      {"ordering of M_p and K_p", ordering_gate},
      {"quadratic transformation", quadratic},
      {"generalized trig identities", trig},
      {"CLI verify all and table determinism", cli},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first
              << "  [" << o.detail << "]\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
