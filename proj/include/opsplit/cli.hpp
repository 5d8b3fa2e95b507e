#pragma once

// Config files, CSV writers and the three subcommands behind the `opsplit`
// executable. Commands write to the given streams and return the process exit
// code, so tests can drive them without spawning a process.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "opsplit/algorithms.hpp"
#include "opsplit/equivalence.hpp"
#include "opsplit/problems.hpp"
#include "opsplit/prox.hpp"

namespace opsplit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitBadInput = 2,
  kExitNumericalFailure = 3,
};

using Json = nlohmann::json;

// Raised for malformed or inconsistent config documents.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<Method> method;  // required by `run`, ignored by `verify`
  ProblemBundle problem;
  StartState start;
  std::size_t iterations = 100;
  std::optional<double> stop_tol;
  Tolerance tolerance;
  std::optional<std::string> output;
};

RealVector vector_from_json(const Json& j);
DenseOperator operator_from_json(const Json& j);
ProxFunction prox_from_json(const Json& j);
ProblemBundle problem_from_json(const Json& j);
RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);

Json to_json(const RealVector& v);
Json to_json(const DenseOperator& m);
Json to_json(const ProxFunction& fn);
Json to_json(const ProblemBundle& bundle);

// Start vectors for `method`, falling back to the bundle's suggested start
// when the config leaves them out. Throws ConfigError when neither is given.
StartState resolve_start(Method method, const RunConfig& config);

// Shortest decimal that reads back to the same double; '.' separator always.
std::string format_double(double v);

void write_trace_csv(std::ostream& os, const AnyTrace& trace);
void write_report_csv(std::ostream& os, const EquivalenceReport& report);

struct Overrides {
  std::optional<std::size_t> iterations;
  std::optional<double> tol;
  std::optional<std::string> out;
};

// CSV goes to the output path (flag, then config) or to `out` when none is set;
// messages go to `err`.
int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err);

// Summary lines go to `out` when the CSV report is written to a file and to
// `err` when the report itself is written to `out`.
int cmd_verify(const std::string& theorem, const std::string& config_path, const Overrides& overrides,
               std::ostream& out, std::ostream& err);

int cmd_counterexample(double alpha, double beta, std::size_t iterations, std::ostream& out, std::ostream& err);

}  // namespace opsplit::cli
