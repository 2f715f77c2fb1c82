#ifndef PQELL_VERIFY_HPP
#define PQELL_VERIFY_HPP

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqell {

struct VerifyCase {
  std::string label;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::string suite;
  int cases = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::chrono::duration<double> elapsed{0.0};
  std::vector<VerifyCase> details;

  bool ok() const { return failures == 0; }
};

struct VerifyOptions {
  // Replaces every per-case tolerance of the suite when set.
  std::optional<double> tol_override;
};

struct SuiteInfo {
  std::string_view name;
  std::string_view description;
};

// Named suites with their built-in grids, in run order for `all`.
const std::vector<SuiteInfo>& verify_suites();

// Throws std::invalid_argument for an unknown suite name.
VerifyReport run_suite(std::string_view name, const VerifyOptions& options = {});

// Central difference (f(x + h) - f(x - h)) / (2h).
template <class F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace pqell

#endif  // PQELL_VERIFY_HPP
