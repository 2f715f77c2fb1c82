#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "pqell/cli.hpp"
#include "pqell/verify.hpp"

namespace {

std::string suites_help() {
  std::string text = "Suites (each embeds its default grid):\n";
  for (const auto& s : pqell::verify_suites()) {
    text += "  " + std::string(s.name) + "\n      " + std::string(s.description) + "\n";
  }
  text += "  all\n      every suite above, in order\n";
  return text;
}

std::string functions_help() {
  return "Functions and their flags:\n"
         "  pi_pq --p --q            sin_pq|cos_pq|tan_pq|arcsin_pq --p --q --x\n"
         "  K_pq|Kpq, E_pq|Epq --p --q --k [--method auto|series|quadrature]\n"
         "  L, AG --a --b            Mp --a --b --p [--method auto|elliptic|hyp_base|"
         "hyp_quad|integral|nakamura]\n"
         "  Kp --a --b --p [--method closed|integral|hyp_base|hyp_quad]\n"
         "  hyp2f1 --a --b --c --x   ordering --p (--a --b | --x)   c_p --p\n"
         "Means also accept --x in place of --a 1 --b x.\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized (p,q)-trigonometric functions, (p,q)-elliptic integrals "
               "and the M_p / K_p means."};
  app.require_subcommand(1);

  pqell::cli::Request req;
  std::optional<std::string> out_path;
  std::optional<double> tol;
  bool verbose = false;
  std::string suite;

  auto add_value_flags = [&](CLI::App* cmd, bool grids) {
    cmd->add_option("--fn", req.fn, "function name")->required();
    for (std::string_view axis : pqell::cli::kAxisOrder) {
      const std::string name(axis);
      cmd->add_option_function<std::string>(
          "--" + name, [&req, name](const std::string& v) { req.params[name] = v; },
          grids ? "value or start:stop:count" : "value");
    }
    cmd->add_option("--method", req.method, "evaluation method")->default_val("auto");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one function value");
  add_value_flags(eval, false);
  eval->footer(functions_help());

  CLI::App* table = app.add_subcommand("table", "write a CSV table over up to two grid axes");
  add_value_flags(table, true);
  table->add_option("--out", out_path, "output file (default stdout)");
  table->add_option("--jobs", req.jobs, "worker threads; output is identical for any value")
      ->default_val(1);
  table->footer(functions_help());

  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite, "suite name or 'all'")->required();
  verify->add_option("--tol", tol, "override every case tolerance");
  verify->add_flag("--verbose", verbose, "print each case residual");
  verify->footer(suites_help());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pqell::cli::kExitUsage;
  }

  if (*eval) return pqell::cli::cmd_eval(req, std::cout, std::cerr);
  if (*table) return pqell::cli::cmd_table(req, out_path, std::cout, std::cerr);
  return pqell::cli::cmd_verify(suite, tol, verbose, std::cout, std::cerr);
}
