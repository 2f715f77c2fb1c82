#ifndef PQELL_CLI_HPP
#define PQELL_CLI_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pqell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Bad command line: unknown function, missing flag, malformed grid.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// start:stop:count, affinely spaced and inclusive of both endpoints.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  static GridSpec parse(std::string_view text);
  double at(int i) const;
};

// Numeric flags in the order they appear as table columns.
inline constexpr std::string_view kAxisOrder[] = {"p", "q", "k", "a", "b", "x", "c"};

/// Raw flag values; each is a number, or a GridSpec for `table`.
struct Request {
  std::string fn;
  std::map<std::string, std::string, std::less<>> params;
  std::string method = "auto";
  int jobs = 1;
};

struct Evaluation {
  double value = 0.0;
  double abs_err = 0.0;
};

// Names accepted by --fn.
const std::vector<std::string_view>& function_names();

/// Evaluates `fn` at the given scalar parameters.
///
/// abs_err is the routine's own estimate where it has one, otherwise the
/// discrepancy against an independent evaluation route. The ordering
/// function returns the sign of M_p - K_p (+1, 0, -1). Throws UsageError
/// for an unknown function, method or missing parameter.
Evaluation evaluate(std::string_view fn,
                    const std::map<std::string, double, std::less<>>& params,
                    std::string_view method);

// Each command returns its exit code and reports errors on `err`.
int cmd_eval(const Request& req, std::ostream& out, std::ostream& err);
int cmd_table(const Request& req, const std::optional<std::string>& out_path,
              std::ostream& out, std::ostream& err);
int cmd_verify(std::string_view suite, std::optional<double> tol, bool verbose,
               std::ostream& out, std::ostream& err);

// Shortest text with `digits` significant digits, independent of locale.
std::string format_double(double v, int digits);

}  // namespace pqell::cli

#endif  // PQELL_CLI_HPP
