#include <fstream>
#include <memory>
#include <ostream>

#include "opsplit/cli.hpp"
#include "opsplit/diagnostics.hpp"
#include "opsplit/error.hpp"

namespace opsplit::cli {

namespace {

void header(std::ostream& os, const char* name, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) os << ',' << name << '_' << i;
}

void cells(std::ostream& os, const RealVector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) os << ',' << format_double(v[i]);
}

void cells(std::ostream& os, const std::optional<RealVector>& v, std::size_t dim) {
  if (v) {
    cells(os, *v);
  } else {
    for (std::size_t i = 0; i < dim; ++i) os << ',';
  }
}

template <class State, class Get>
std::size_t optional_dim(const Trace<State>& t, Get get) {
  for (const State& s : t.states) {
    if (const auto& v = get(s)) return v->dim();
  }
  return 0;
}

template <class State, class Columns, class Row>
void write_rows(std::ostream& os, const Trace<State>& t, Columns columns, Row row) {
  os << "iter";
  columns();
  os << ",residual\n";
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    os << k;
    row(t.states[k]);
    os << ',';
    if (k > 0) os << format_double(t.residuals[k - 1]);
    os << '\n';
  }
}

void write(std::ostream& os, const Trace<DRState>& t) {
  const std::size_t n = t.states.front().x.dim();
  write_rows(
      os, t, [&] { header(os, "x", n), header(os, "y", n); },
      [&](const DRState& s) { cells(os, s.x), cells(os, s.y); });
}

void write(std::ostream& os, const Trace<ADMMState>& t) {
  const std::size_t na = t.states.front().a.dim();
  const std::size_t nb = optional_dim(t, [](const ADMMState& s) -> const auto& { return s.b; });
  write_rows(
      os, t, [&] { header(os, "b", nb), header(os, "a", na), header(os, "u", na); },
      [&](const ADMMState& s) { cells(os, s.b, nb), cells(os, s.a), cells(os, s.u); });
}

void write(std::ostream& os, const Trace<ADMMIntermediateState>& t) {
  const std::size_t na = t.states.front().a.dim();
  const std::size_t nb = optional_dim(t, [](const ADMMIntermediateState& s) -> const auto& { return s.b; });
  write_rows(
      os, t, [&] { header(os, "b", nb), header(os, "w", na), header(os, "a", na), header(os, "u", na); },
      [&](const ADMMIntermediateState& s) { cells(os, s.b, nb), cells(os, s.w, na), cells(os, s.a), cells(os, s.u); });
}

void write(std::ostream& os, const Trace<CPState>& t) {
  const std::size_t nu = t.states.front().u.dim();
  const std::size_t nv = t.states.front().v.dim();
  write_rows(
      os, t, [&] { header(os, "u", nu), header(os, "v", nv); },
      [&](const CPState& s) { cells(os, s.u), cells(os, s.v); });
}

void write(std::ostream& os, const Trace<DykstraState>& t) {
  const std::size_t n = t.states.front().x.dim();
  write_rows(
      os, t, [&] { header(os, "x", n), header(os, "y", n), header(os, "p", n), header(os, "q", n); },
      [&](const DykstraState& s) { cells(os, s.x), cells(os, s.y, n), cells(os, s.p), cells(os, s.q); });
}

void write(std::ostream& os, const Trace<PointState>& t) {
  const std::size_t n = t.states.front().x.dim();
  write_rows(
      os, t, [&] { header(os, "x", n); }, [&](const PointState& s) { cells(os, s.x); });
}

struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = nullptr;
  bool to_file() const { return file != nullptr; }
};

Sink open_sink(const std::optional<std::string>& path, std::ostream& fallback) {
  Sink s;
  if (!path) {
    s.stream = &fallback;
    return s;
  }
  s.file = std::make_unique<std::ofstream>(*path);
  if (!*s.file) throw ConfigError("cannot open output '" + *path + "'");
  s.stream = s.file.get();
  return s;
}

RunConfig load_with_overrides(const std::string& path, const Overrides& o) {
  RunConfig c = load_config(path);
  if (o.iterations) c.iterations = *o.iterations;
  if (o.out) c.output = o.out;
  return c;
}

class WarningsTo {
 public:
  explicit WarningsTo(std::ostream& err)
      : previous_(set_warning_handler([&err](std::string_view m) { err << "warning: " << m << '\n'; })) {}
  ~WarningsTo() { set_warning_handler(std::move(previous_)); }
  WarningsTo(const WarningsTo&) = delete;
  WarningsTo& operator=(const WarningsTo&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace

void write_trace_csv(std::ostream& os, const AnyTrace& trace) {
  std::visit([&os](const auto& t) { write(os, t); }, trace);
}

void write_report_csv(std::ostream& os, const EquivalenceReport& report) {
  os << "iter,discrepancy,scale,bound,pass\n";
  for (std::size_t k = 0; k < report.discrepancies.size(); ++k) {
    const double bound = report.tolerance.abs + report.tolerance.rel * report.scales[k];
    os << k << ',' << format_double(report.discrepancies[k]) << ',' << format_double(report.scales[k]) << ','
       << format_double(bound) << ',' << (report.discrepancies[k] <= bound ? 1 : 0) << '\n';
  }
}

int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& out, std::ostream& err) {
  const WarningsTo route(err);
  std::optional<RunConfig> loaded;
  StartState start;
  Sink sink;
  try {
    loaded = load_with_overrides(config_path, overrides);
    if (overrides.tol) loaded->stop_tol = overrides.tol;
    if (!loaded->method) throw ConfigError("missing field 'method'");
    start = resolve_start(*loaded->method, *loaded);
    sink = open_sink(loaded->output, out);
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  const RunConfig& config = *loaded;
  try {
    const AnyTrace trace = run(*config.method, config.problem, start, config.iterations, config.stop_tol);
    write_trace_csv(*sink.stream, trace);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumericalFailure : kExitBadInput;
  }
  sink.stream->flush();
  if (!*sink.stream) {
    err << "error: failed writing the trace\n";
    return kExitBadInput;
  }
  return kExitOk;
}

namespace {

EquivalenceReport dispatch_verify(Theorem theorem, const RunConfig& c) {
  const ProblemBundle& p = c.problem;
  const std::size_t n = c.iterations;
  auto need_form = [&](ProblemForm form) {
    if (p.form != form) {
      throw ConfigError(to_string(theorem) + " needs a " + to_string(form) + " problem, got " + to_string(p.form));
    }
  };
  switch (theorem) {
    case Theorem::dr_admm:
    case Theorem::pr_admm_int: {
      need_form(ProblemForm::composite_l);
      const RealVector x0 = *resolve_start(Method::dr, c).x0;
      return theorem == Theorem::dr_admm ? verify_dr_admm(p.f, p.g, p.op, x0, n, c.tolerance)
                                         : verify_pr_admm_intermediate(p.f, p.g, p.op, x0, n, c.tolerance);
    }
    case Theorem::admm_dr:
    case Theorem::admm_int_pr: {
      need_form(ProblemForm::composite_l);
      const StartState s = resolve_start(Method::admm, c);
      return theorem == Theorem::admm_dr ? verify_admm_dr(p.f, p.g, p.op, *s.a0, *s.u0, n, c.tolerance)
                                         : verify_admm_intermediate_pr(p.f, p.g, p.op, *s.a0, *s.u0, n, c.tolerance);
    }
    case Theorem::cp_dr_id: {
      if (!p.op.is_identity()) throw ConfigError("cp-dr-id needs the identity operator");
      const StartState s = resolve_start(Method::cp, c);
      return verify_cp_dr_identity_case(p.f, p.g, *s.u0, *s.v0, n, c.tolerance);
    }
    case Theorem::cp_dr_lift: {
      if (p.form == ProblemForm::composite_l && !p.op.is_identity()) {
        throw ConfigError("cp-dr-lift needs a composite-A problem");
      }
      const StartState s = resolve_start(Method::cp, c);
      return verify_cp_lifted_dr(p.f, p.g, p.op, *s.u0, *s.v0, n, c.tolerance);
    }
    case Theorem::dykstra_map_subspace: {
      need_form(ProblemForm::feasibility);
      auto u = p.f.affine_set();
      auto v = p.g.affine_set();
      if (!u || !v || !u->basis || !v->basis || max_abs(u->offset) != 0.0 || max_abs(v->offset) != 0.0) {
        throw ConfigError("dykstra-map-subspace needs f and g to be subspace indicators");
      }
      const RealVector x0 = *resolve_start(Method::dykstra, c).x0;
      return verify_dykstra_subspace_closed_form(*u->basis, *v->basis, x0, n, c.tolerance);
    }
  }
  throw ConfigError("unknown theorem");
}

}  // namespace

int cmd_verify(const std::string& theorem_name, const std::string& config_path, const Overrides& overrides,
               std::ostream& out, std::ostream& err) {
  const WarningsTo route(err);
  const auto theorem = parse_theorem(theorem_name);
  if (!theorem) {
    err << "error: unknown theorem tag '" << theorem_name << "'\n";
    return kExitBadInput;
  }
  std::optional<RunConfig> loaded;
  Sink sink;
  try {
    loaded = load_with_overrides(config_path, overrides);
    if (overrides.tol) loaded->tolerance.abs = *overrides.tol;
    sink = open_sink(loaded->output, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }

  EquivalenceReport report;
  try {
    report = dispatch_verify(*theorem, *loaded);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }

  write_report_csv(*sink.stream, report);
  std::ostream& summary = sink.to_file() ? out : err;
  summary << to_string(report.theorem) << ": " << report.iterations << " iterates, max discrepancy "
          << format_double(report.max_discrepancy) << ", tolerance abs " << format_double(report.tolerance.abs)
          << " rel " << format_double(report.tolerance.rel) << '\n'
          << (report.pass ? "PASS" : "FAIL") << '\n';
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_counterexample(double alpha, double beta, std::size_t iterations, std::ostream& out, std::ostream& err) {
  const WarningsTo route(err);
  CounterexampleResult r;
  try {
    r = dykstra_map_counterexample(alpha, beta, iterations);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumericalFailure : kExitBadInput;
  }
  auto point = [](const RealVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + ")";
  };
  out << "map " << point(r.map_limit) << '\n'
      << "dykstra " << point(r.dykstra_limit) << '\n'
      << "separation " << format_double(r.separation) << '\n'
      << (r.distinct ? "distinct" : "not distinct") << '\n';
  return r.distinct ? kExitOk : kExitVerificationFailed;
}

}  // namespace opsplit::cli
