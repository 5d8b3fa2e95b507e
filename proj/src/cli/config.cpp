#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "opsplit/cli.hpp"
#include "opsplit/error.hpp"

namespace opsplit::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a non-empty list of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(number(e, what));
  return out;
}

std::vector<double> bounds(const Json& j, std::size_t dim, double missing, const char* what) {
  if (j.is_null()) return std::vector<double>(dim, missing);
  if (!j.is_array() || j.size() != dim) bad(std::string(what) + " must be null or a list of length " + std::to_string(dim));
  std::vector<double> out;
  for (const Json& e : j) out.push_back(e.is_null() ? missing : number(e, what));
  return out;
}

Json bounds_to_json(const std::vector<double>& b) {
  Json out = Json::array();
  for (double v : b) {
    if (std::isinf(v)) {
      out.push_back(nullptr);
    } else {
      out.push_back(v);
    }
  }
  return out;
}

std::optional<RealVector> optional_vector(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return vector_from_json(*it);
}

RealVector required_vector(const std::optional<RealVector>& v, const char* name, Method m) {
  if (!v) bad(to_string(m) + " needs start field '" + name + "'");
  return *v;
}

}  // namespace

RealVector vector_from_json(const Json& j) {
  try {
    return RealVector(numbers(j, "vector"));
  } catch (const Error& e) {
    bad(e.what());
  }
}

DenseOperator operator_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("a matrix must be a non-empty list of rows");
  std::vector<std::vector<double>> rows;
  for (const Json& r : j) rows.push_back(numbers(r, "matrix row"));
  try {
    return DenseOperator::from_rows(rows);
  } catch (const Error& e) {
    bad(e.what());
  }
}

ProxFunction prox_from_json(const Json& j) {
  const std::string kind = text(field(j, "kind"), "kind");
  try {
    if (kind == "zero") return ProxFunction::zero(count(field(j, "dim"), "dim"));
    if (kind == "half-squared-norm") return ProxFunction::half_squared_norm(count(field(j, "dim"), "dim"));
    if (kind == "quadratic") {
      DenseOperator q = operator_from_json(field(j, "Q"));
      if (j.contains("center")) {
        if (j.contains("c")) bad("quadratic takes either 'center' or 'c', not both");
        return ProxFunction::centered_quadratic(q, vector_from_json(j["center"]));
      }
      RealVector c = j.contains("c") ? vector_from_json(j["c"]) : RealVector::zeros(q.rows());
      const double constant = j.contains("constant") ? number(j["constant"], "constant") : 0.0;
      return ProxFunction::quadratic(std::move(q), std::move(c), constant);
    }
    if (kind == "indicator-subspace" || kind == "indicator-affine") {
      std::vector<RealVector> columns;
      const Json& vs = field(j, "vectors");
      if (!vs.is_array() || vs.empty()) bad("'vectors' must be a non-empty list of spanning vectors");
      for (const Json& v : vs) columns.push_back(vector_from_json(v));
      DenseOperator basis = DenseOperator::from_columns(columns);
      if (kind == "indicator-subspace") return ProxFunction::indicator_subspace(std::move(basis));
      return ProxFunction::indicator_affine(std::move(basis), vector_from_json(field(j, "offset")));
    }
    if (kind == "indicator-halfspace") {
      return ProxFunction::indicator_halfspace(vector_from_json(field(j, "normal")), number(field(j, "offset"), "offset"));
    }
    if (kind == "indicator-box") {
      const Json& lo = field(j, "lo");
      const Json& hi = field(j, "hi");
      std::size_t dim = 0;
      if (lo.is_array()) dim = lo.size();
      else if (hi.is_array()) dim = hi.size();
      else if (j.contains("dim")) dim = count(j["dim"], "dim");
      else bad("indicator-box needs 'dim' when both bounds are null");
      const double inf = std::numeric_limits<double>::infinity();
      return ProxFunction::indicator_box(bounds(lo, dim, -inf, "lo"), bounds(hi, dim, inf, "hi"));
    }
    if (kind == "indicator-point") return ProxFunction::indicator_point(vector_from_json(field(j, "point")));
    if (kind == "l1") return ProxFunction::l1(count(field(j, "dim"), "dim"), number(field(j, "weight"), "weight"));
    if (kind == "half-squared-distance") return ProxFunction::half_squared_distance(prox_from_json(field(j, "set")));
    if (kind == "conjugate") return prox_from_json(field(j, "of")).conjugate();
    if (kind == "reflection") return prox_from_json(field(j, "of")).reflect();
    if (kind == "translation") return prox_from_json(field(j, "of")).translate(vector_from_json(field(j, "shift")));
    if (kind == "separable-pair") {
      return ProxFunction::separable_pair(prox_from_json(field(j, "first")), prox_from_json(field(j, "second")));
    }
  } catch (const Error& e) {
    bad(kind + ": " + e.what());
  }
  bad("unknown function kind '" + kind + "'");
}

Json to_json(const RealVector& v) { return Json(v.entries()); }

Json to_json(const DenseOperator& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Json columns_to_json(const DenseOperator& basis) {
  Json vs = Json::array();
  for (std::size_t c = 0; c < basis.cols(); ++c) vs.push_back(to_json(basis.column(c)));
  return vs;
}

}  // namespace

Json to_json(const ProxFunction& fn) {
  Json j;
  j["kind"] = to_string(fn.kind());
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, params::Zero>) {
          j["dim"] = p.dim;
        } else if constexpr (std::is_same_v<P, params::Quadratic>) {
          j["Q"] = to_json(p.q);
          j["c"] = to_json(p.linear);
          j["constant"] = p.constant;
        } else if constexpr (std::is_same_v<P, params::Subspace>) {
          j["vectors"] = columns_to_json(p.basis);
        } else if constexpr (std::is_same_v<P, params::Affine>) {
          j["vectors"] = columns_to_json(p.basis);
          j["offset"] = to_json(p.offset);
        } else if constexpr (std::is_same_v<P, params::Halfspace>) {
          j["normal"] = to_json(p.normal);
          j["offset"] = p.offset;
        } else if constexpr (std::is_same_v<P, params::Box>) {
          j["lo"] = bounds_to_json(p.lo);
          j["hi"] = bounds_to_json(p.hi);
        } else if constexpr (std::is_same_v<P, params::Point>) {
          j["point"] = to_json(p.point);
        } else if constexpr (std::is_same_v<P, params::L1>) {
          j["dim"] = p.dim;
          j["weight"] = p.weight;
        } else if constexpr (std::is_same_v<P, params::HalfSquaredDistance>) {
          j["set"] = to_json(p.set);
        } else if constexpr (std::is_same_v<P, params::Conjugate> || std::is_same_v<P, params::Reflection>) {
          j["of"] = to_json(p.inner);
        } else if constexpr (std::is_same_v<P, params::Translation>) {
          j["of"] = to_json(p.inner);
          j["shift"] = to_json(p.shift);
        } else if constexpr (std::is_same_v<P, params::SeparablePair>) {
          j["first"] = to_json(p.first);
          j["second"] = to_json(p.second);
        }
      },
      fn.params().data);
  return j;
}

Json to_json(const ProblemBundle& bundle) {
  Json j;
  j["form"] = to_string(bundle.form);
  j["f"] = to_json(bundle.f);
  j["g"] = to_json(bundle.g);
  j["op"] = to_json(bundle.op);
  j["seed"] = bundle.seed;
  if (bundle.start) j["start"] = to_json(*bundle.start);
  return j;
}

ProblemBundle problem_from_json(const Json& j) {
  if (!j.is_object()) bad("'problem' must be an object");
  if (j.contains("generator")) {
    const std::string gen = text(j["generator"], "generator");
    if (gen == "counterexample") {
      return make_counterexample(number(field(j, "alpha"), "alpha"), number(field(j, "beta"), "beta"));
    }
    if (gen == "random-quadratic") {
      const std::string form_name = text(field(j, "form"), "form");
      auto form = parse_problem_form(form_name);
      if (!form || *form == ProblemForm::feasibility) bad("random-quadratic needs form composite-L or composite-A");
      RandomFKind f_kind = RandomFKind::quadratic;
      if (j.contains("f_kind")) {
        const std::string k = text(j["f_kind"], "f_kind");
        if (k == "l1") f_kind = RandomFKind::l1;
        else if (k != "quadratic") bad("f_kind must be 'quadratic' or 'l1'");
      }
      return make_random_quadratic(count(field(j, "seed"), "seed"), count(field(j, "dim_x"), "dim_x"),
                                   count(field(j, "dim_y"), "dim_y"), *form, f_kind);
    }
    if (gen == "random-subspaces") {
      const std::uint64_t seed = count(field(j, "seed"), "seed");
      SubspacePair sp = make_random_subspaces(seed, count(field(j, "dim"), "dim"), count(field(j, "dim_u"), "dim_u"),
                                              count(field(j, "dim_v"), "dim_v"));
      ProblemBundle b{ProblemForm::feasibility, sp.u, sp.v, DenseOperator::identity(sp.u.dim()), seed, std::nullopt};
      validate(b);
      return b;
    }
    bad("unknown generator '" + gen + "'");
  }
  const std::string form_name = text(field(j, "form"), "form");
  auto form = parse_problem_form(form_name);
  if (!form) bad("unknown problem form '" + form_name + "'");
  ProxFunction f = prox_from_json(field(j, "f"));
  ProxFunction g = prox_from_json(field(j, "g"));
  DenseOperator op = j.contains("op") ? operator_from_json(j["op"]) : DenseOperator::identity(f.dim());
  ProblemBundle b{*form, std::move(f), std::move(g), std::move(op), 0, std::nullopt};
  if (j.contains("seed")) b.seed = count(j["seed"], "seed");
  b.start = optional_vector(j, "start");
  validate(b);
  return b;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) bad("config must be an object");
  RunConfig c{std::nullopt, problem_from_json(field(j, "problem")), {}, 100, std::nullopt, {}, std::nullopt};
  if (j.contains("method")) {
    const std::string name = text(j["method"], "method");
    c.method = parse_method(name);
    if (!c.method) bad("unknown method '" + name + "'");
  }
  if (j.contains("start")) {
    const Json& s = j["start"];
    if (!s.is_object()) bad("'start' must be an object");
    c.start.x0 = optional_vector(s, "x0");
    c.start.a0 = optional_vector(s, "a0");
    c.start.u0 = optional_vector(s, "u0");
    c.start.v0 = optional_vector(s, "v0");
  }
  if (j.contains("iterations")) c.iterations = count(j["iterations"], "iterations");
  if (j.contains("stop_tol") && !j["stop_tol"].is_null()) c.stop_tol = number(j["stop_tol"], "stop_tol");
  if (j.contains("tolerance")) {
    const Json& t = j["tolerance"];
    if (t.contains("abs")) c.tolerance.abs = number(t["abs"], "tolerance.abs");
    if (t.contains("rel")) c.tolerance.rel = number(t["rel"], "tolerance.rel");
  }
  if (j.contains("output") && !j["output"].is_null()) c.output = text(j["output"], "output");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    bad("cannot parse '" + path + "': " + e.what());
  }
  return config_from_json(j);
}

StartState resolve_start(Method method, const RunConfig& config) {
  StartState s = config.start;
  const std::optional<RealVector>& fallback = config.problem.start;
  switch (method) {
    case Method::dr:
    case Method::pr:
    case Method::dykstra:
    case Method::map:
    case Method::fb:
      if (!s.x0) s.x0 = fallback;
      required_vector(s.x0, "x0", method);
      break;
    case Method::admm:
    case Method::admm_int:
      if (!s.a0 && !s.u0 && fallback) {
        auto [a0, u0] = dr_to_admm_start(*fallback, oracle(config.problem.f));
        s.a0 = std::move(a0);
        s.u0 = std::move(u0);
      }
      required_vector(s.a0, "a0", method);
      required_vector(s.u0, "u0", method);
      break;
    case Method::cp:
      if (!s.u0) s.u0 = fallback;
      if (!s.v0 && fallback) s.v0 = RealVector::zeros(config.problem.g.dim());
      required_vector(s.u0, "u0", method);
      required_vector(s.v0, "v0", method);
      break;
  }
  return s;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace opsplit::cli
