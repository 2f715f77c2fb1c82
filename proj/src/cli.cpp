#include "pqell/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "pqell/core_numerics.hpp"
#include "pqell/elliptic.hpp"
#include "pqell/gen_trig.hpp"
#include "pqell/means.hpp"
#include "pqell/verify.hpp"

namespace pqell::cli {

namespace {

using ParamMap = std::map<std::string, double, std::less<>>;

double parse_number(std::string_view text, std::string_view flag) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("--" + std::string(flag) + ": '" + std::string(text) +
                     "' is not a finite number");
  }
  return v;
}

double need(const ParamMap& params, std::string_view name, std::string_view fn) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw UsageError(std::string(fn) + " requires --" + std::string(name));
  }
  return it->second;
}

EllipticMethod elliptic_method(std::string_view m) {
  if (m == "auto") return EllipticMethod::automatic;
  if (m == "series") return EllipticMethod::series;
  if (m == "quadrature") return EllipticMethod::quadrature;
  throw UsageError("unknown method '" + std::string(m) +
                   "' (expected auto, series or quadrature)");
}

MpMethod mp_method(std::string_view m) {
  try {
    return parse_mp_method(m);
  } catch (const DomainError&) {
    throw UsageError("unknown method '" + std::string(m) +
                     "' (expected auto, elliptic, hyp_base, hyp_quad, integral or nakamura)");
  }
}

KpMethod kp_method(std::string_view m) {
  if (m == "auto") return KpMethod::closed;
  try {
    return parse_kp_method(m);
  } catch (const DomainError&) {
    throw UsageError("unknown method '" + std::string(m) +
                     "' (expected closed, integral, hyp_base or hyp_quad)");
  }
}

// (a, b) from --a/--b, or (1, x) from --x.
PositivePair pair_of(const ParamMap& params, std::string_view fn) {
  if (params.count("a") || params.count("b")) {
    return PositivePair(need(params, "a", fn), need(params, "b", fn));
  }
  if (params.count("x")) return PositivePair(1.0, params.find("x")->second);
  throw UsageError(std::string(fn) + " requires --a and --b (or --x)");
}

PQParams pq_of(const ParamMap& params, std::string_view fn) {
  return PQParams(need(params, "p", fn), need(params, "q", fn));
}

Evaluation from(const EvalResult& r) { return {r.value, r.abs_err}; }

using Evaluator = std::function<Evaluation(const ParamMap&, std::string_view)>;

const std::vector<std::pair<std::string_view, Evaluator>>& evaluators() {
  static const std::vector<std::pair<std::string_view, Evaluator>> table = {
      {"pi_pq",
       [](const ParamMap& p, std::string_view) {
         const PQParams pq = pq_of(p, "pi_pq");
         const double v = pi_pq(pq);
         return Evaluation{v, std::fabs(v - 2.0 * arcsin_pq(pq, 1.0))};
       }},
      {"sin_pq",
       [](const ParamMap& p, std::string_view) {
         const PQParams pq = pq_of(p, "sin_pq");
         const double theta = need(p, "x", "sin_pq");
         const double v = sin_pq(pq, theta);
         return Evaluation{v, std::fabs(arcsin_pq(pq, v) - theta)};
       }},
      {"cos_pq",
       [](const ParamMap& p, std::string_view) {
         const PQParams pq = pq_of(p, "cos_pq");
         const double theta = need(p, "x", "cos_pq");
         const double v = cos_pq(pq, theta);
         const double s = sin_pq(pq, theta);
         return Evaluation{v, std::fabs(std::pow(v, pq.q()) + std::pow(s, pq.q()) - 1.0)};
       }},
      {"tan_pq",
       [](const ParamMap& p, std::string_view) {
         const PQParams pq = pq_of(p, "tan_pq");
         const double theta = need(p, "x", "tan_pq");
         const double v = tan_pq(pq, theta);
         return Evaluation{v, std::fabs(v - sin_pq(pq, theta) / cos_pq(pq, theta))};
       }},
      {"arcsin_pq",
       [](const ParamMap& p, std::string_view) {
         const PQParams pq = pq_of(p, "arcsin_pq");
         const double x = need(p, "x", "arcsin_pq");
         const double v = arcsin_pq(pq, x);
         return Evaluation{v, std::fabs(sin_pq(pq, v) - x)};
       }},
      {"K_pq",
       [](const ParamMap& p, std::string_view m) {
         return from(K_pq(pq_of(p, "K_pq"), Modulus(need(p, "k", "K_pq")),
                          elliptic_method(m)));
       }},
      {"E_pq",
       [](const ParamMap& p, std::string_view m) {
         return from(E_pq(pq_of(p, "E_pq"), Modulus(need(p, "k", "E_pq")),
                          elliptic_method(m)));
       }},
      {"L",
       [](const ParamMap& p, std::string_view) {
         const PositivePair pr = pair_of(p, "L");
         const double v = mean_log(pr);
         return Evaluation{v, std::fabs(v - mean_log_integral(pr))};
       }},
      {"AG",
       [](const ParamMap& p, std::string_view) {
         const PositivePair pr = pair_of(p, "AG");
         const double v = mean_ag(pr);
         return Evaluation{v, std::fabs(v - mean_ag_integral(pr))};
       }},
      {"Mp",
       [](const ParamMap& p, std::string_view m) {
         const PositivePair pr = pair_of(p, "Mp");
         const double order = need(p, "p", "Mp");
         const MpMethod method = mp_method(m);
         const double v = mean_mp(pr, order, method);
         const MpMethod other =
             method == MpMethod::integral ? MpMethod::hyp_base : MpMethod::integral;
         return Evaluation{v, std::fabs(v - mean_mp(pr, order, other))};
       }},
      {"Kp",
       [](const ParamMap& p, std::string_view m) {
         const PositivePair pr = pair_of(p, "Kp");
         const double order = need(p, "p", "Kp");
         const KpMethod method = kp_method(m);
         const double v = mean_kp(pr, order, method);
         // The integral forms need p > 0; elsewhere the closed form stands alone.
         if (order <= 0.0) return Evaluation{v, 0.0};
         const KpMethod other =
             method == KpMethod::closed ? KpMethod::integral : KpMethod::closed;
         return Evaluation{v, std::fabs(v - mean_kp(pr, order, other))};
       }},
      {"hyp2f1",
       [](const ParamMap& p, std::string_view) {
         return from(hyp2f1_eval(
             HypSeriesSpec::of(need(p, "a", "hyp2f1"), need(p, "b", "hyp2f1"),
                               need(p, "c", "hyp2f1"), need(p, "x", "hyp2f1"))));
       }},
      {"ordering",
       [](const ParamMap& p, std::string_view) {
         const MeanOrdering o = ordering(pair_of(p, "ordering"), need(p, "p", "ordering"));
         const double sign = o.verdict == Verdict::Mp_greater ? 1.0
                             : o.verdict == Verdict::Kp_greater ? -1.0
                                                                : 0.0;
         return Evaluation{sign, 0.0};
       }},
      {"c_p",
       [](const ParamMap& p, std::string_view) {
         const double order = need(p, "p", "c_p");
         const double v = c_p(order);
         return Evaluation{v, std::fabs(v - c_p_integral(order))};
       }},
  };
  return table;
}

std::string_view canonical(std::string_view fn) {
  if (fn == "Kpq") return "K_pq";
  if (fn == "Epq") return "E_pq";
  return fn;
}

struct Axis {
  std::string name;
  GridSpec grid;
};

}  // namespace

GridSpec GridSpec::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
    throw UsageError("grid '" + std::string(text) + "' is not start:stop:count");
  }
  GridSpec g;
  g.start = parse_number(text.substr(0, c1), "grid start");
  g.stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "grid stop");
  const std::string_view count = text.substr(c2 + 1);
  auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), g.count);
  if (ec != std::errc() || ptr != count.data() + count.size()) {
    throw UsageError("grid count '" + std::string(count) + "' is not an integer");
  }
  if (g.count < 2) throw UsageError("grid '" + std::string(text) + "' needs count >= 2");
  if (!(g.start < g.stop)) {
    throw UsageError("grid '" + std::string(text) + "' needs start < stop");
  }
  return g;
}

double GridSpec::at(int i) const {
  return std::lerp(start, stop, static_cast<double>(i) / (count - 1));
}

const std::vector<std::string_view>& function_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& [name, fn] : evaluators()) out.push_back(name);
    return out;
  }();
  return names;
}

Evaluation evaluate(std::string_view fn, const ParamMap& params, std::string_view method) {
  const std::string_view name = canonical(fn);
  for (const auto& [n, f] : evaluators()) {
    if (n == name) return f(params, method);
  }
  throw UsageError("unknown function '" + std::string(fn) + "'");
}

std::string format_double(double v, int digits) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

int cmd_eval(const Request& req, std::ostream& out, std::ostream& err) {
  try {
    ParamMap params;
    for (const auto& [name, text] : req.params) {
      if (text.find(':') != std::string::npos) {
        throw UsageError("--" + name + ": grids are only accepted by 'table'");
      }
      params[name] = parse_number(text, name);
    }
    const Evaluation e = evaluate(req.fn, params, req.method);
    out << format_double(e.value, 15) << " (abs_err " << format_double(e.abs_err, 15) << ")\n";
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_table(const Request& req, const std::optional<std::string>& out_path,
              std::ostream& out, std::ostream& err) {
  std::vector<Axis> axes;
  ParamMap fixed;
  std::vector<std::vector<double>> rows;
  try {
    for (std::string_view name : kAxisOrder) {
      auto it = req.params.find(name);
      if (it == req.params.end()) continue;
      if (it->second.find(':') != std::string::npos) {
        axes.push_back({std::string(name), GridSpec::parse(it->second)});
      } else {
        fixed[std::string(name)] = parse_number(it->second, name);
      }
    }
    if (axes.size() > 2) throw UsageError("table accepts at most two grid axes");
    if (req.jobs < 1) throw UsageError("--jobs must be at least 1");
    const bool known = std::any_of(function_names().begin(), function_names().end(),
                                   [&](std::string_view n) { return n == canonical(req.fn); });
    if (!known) throw UsageError("unknown function '" + req.fn + "'");

    std::size_t n_rows = 1;
    for (const Axis& a : axes) n_rows *= static_cast<std::size_t>(a.grid.count);
    rows.assign(n_rows, {});

    // Row r enumerates the axes with the last one varying fastest.
    auto point = [&](std::size_t r) {
      std::vector<double> coords(axes.size());
      for (std::size_t i = axes.size(); i-- > 0;) {
        const auto count = static_cast<std::size_t>(axes[i].grid.count);
        coords[i] = axes[i].grid.at(static_cast<int>(r % count));
        r /= count;
      }
      return coords;
    };

    std::vector<std::string> errors(n_rows);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t r; (r = next.fetch_add(1)) < n_rows;) {
        std::vector<double> coords = point(r);
        ParamMap params = fixed;
        for (std::size_t i = 0; i < axes.size(); ++i) params[axes[i].name] = coords[i];
        try {
          coords.push_back(evaluate(req.fn, params, req.method).value);
          rows[r] = std::move(coords);
        } catch (const std::exception& e) {
          errors[r] = e.what();
        }
      }
    };
    // Usage errors do not depend on the grid point; surface them up front.
    {
      std::vector<double> coords = point(0);
      ParamMap params = fixed;
      for (std::size_t i = 0; i < axes.size(); ++i) params[axes[i].name] = coords[i];
      try {
        evaluate(req.fn, params, req.method);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception&) {
      }
    }
    if (req.jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (int j = 0; j < req.jobs; ++j) pool.emplace_back(worker);
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (!errors[r].empty()) {
        std::string where;
        const std::vector<double> coords = point(r);
        for (std::size_t i = 0; i < axes.size(); ++i) {
          where += (i ? ", " : "") + axes[i].name + "=" + format_double(coords[i], 17);
        }
        err << "error at row " << r + 1 << (where.empty() ? "" : " (" + where + ")") << ": "
            << errors[r] << '\n';
        return kExitFailure;
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  std::ostringstream csv;
  for (const Axis& a : axes) csv << a.name << ',';
  csv << "value\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      csv << (i ? "," : "") << format_double(row[i], 17);
    }
    csv << '\n';
  }
  if (!out_path) {
    out << csv.str();
    return kExitOk;
  }
  std::ofstream file(*out_path, std::ios::binary);
  file << csv.str();
  file.close();
  if (!file) {
    err << "error: cannot write '" << *out_path << "'\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_verify(std::string_view suite, std::optional<double> tol, bool verbose,
               std::ostream& out, std::ostream& err) {
  std::vector<std::string_view> names;
  if (suite == "all") {
    for (const SuiteInfo& s : verify_suites()) names.push_back(s.name);
  } else {
    const auto& all = verify_suites();
    if (std::none_of(all.begin(), all.end(), [&](const SuiteInfo& s) { return s.name == suite; })) {
      err << "usage error: unknown suite '" << suite << "'\n";
      return kExitUsage;
    }
    names.push_back(suite);
  }
  if (tol && !(*tol > 0.0)) {
    err << "usage error: --tol must be positive\n";
    return kExitUsage;
  }

  VerifyOptions options;
  options.tol_override = tol;
  std::vector<std::string> failures;
  int total_cases = 0;
  int total_failures = 0;
  double total_seconds = 0.0;
  for (std::string_view name : names) {
    const VerifyReport report = run_suite(name, options);
    if (verbose) {
      for (const VerifyCase& c : report.details) {
        out << report.suite << "  " << (c.passed ? "ok  " : "FAIL") << "  " << c.label
            << "  residual=" << format_double(c.residual, 3)
            << " tol=" << format_double(c.tolerance, 3) << '\n';
      }
    }
    for (const VerifyCase& c : report.details) {
      if (!c.passed && failures.size() < 10) {
        failures.push_back(report.suite + ": " + c.label + "  residual=" +
                           format_double(c.residual, 3) + " tol=" +
                           format_double(c.tolerance, 3));
      }
    }
    err << report.suite << ": " << report.cases << " cases, " << report.failures
        << " failures, max_residual " << format_double(report.max_residual, 3) << ", "
        << format_double(report.elapsed.count(), 3) << " s  "
        << (report.ok() ? "PASS" : "FAIL") << '\n';
    total_cases += report.cases;
    total_failures += report.failures;
    total_seconds += report.elapsed.count();
  }
  if (names.size() > 1) {
    err << "total: " << total_cases << " cases, " << total_failures << " failures, "
        << format_double(total_seconds, 3) << " s\n";
  }
  if (total_failures == 0) return kExitOk;
  err << "first failing cases:\n";
  for (const std::string& f : failures) err << "  " << f << '\n';
  return kExitFailure;
}

}  // namespace pqell::cli
