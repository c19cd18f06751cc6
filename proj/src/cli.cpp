#include "persp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "persp/catalog.hpp"
#include "persp/demo.hpp"
#include "persp/oracle.hpp"
#include "persp/prox_perspective.hpp"

namespace persp {

namespace {

using json = nlohmann::ordered_json;

constexpr double kValidationDeviation = 5e-4;
constexpr double kValidationGap = 1e-8;

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- JSON <-> values

double read_number(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw BadInput(what + " must be a number or \"+inf\"/\"-inf\"");
}

double read_finite(const json& j, const std::string& what) {
  const double v = read_number(j, what);
  if (!std::isfinite(v)) throw BadInput(what + " must be finite");
  return v;
}

json write_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json write_number(ExtReal v) { return write_number(v.value()); }

json write_vec(const Vec& v) {
  json a = json::array();
  for (double e : v) a.push_back(write_number(e));
  return a;
}

Vec read_vec(const json& j, const std::string& what) {
  if (j.is_array()) {
    std::vector<double> out;
    for (const auto& e : j) out.push_back(read_finite(e, what));
    return Vec(std::move(out));
  }
  return Vec{read_finite(j, what)};
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw BadInput("malformed JSON in " + what + ": " + e.what());
  }
}

// Inline JSON when the argument looks like a document, a file path otherwise.
json load_json_arg(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return parse_text(arg, what);
  }
  std::ifstream f(arg);
  if (!f) throw BadInput("cannot open " + what + " file '" + arg + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str(), what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw BadInput(where + ": missing \"" + key + "\"");
  return j.at(key);
}

// --- problem description

struct Problem {
  std::shared_ptr<const BaseFunction> base;
  std::shared_ptr<const ScalingFunction> scaling;
  double gamma = 1.0;
  std::optional<std::pair<std::size_t, std::size_t>> dims;
};

std::pair<double, double> read_interval(const json& params, const std::string& where) {
  if (!params.contains("I")) return {0.0, std::numeric_limits<double>::infinity()};
  const json& I = params.at("I");
  if (!I.is_array() || I.size() != 2) throw BadInput(where + ": I must be [lo, hi]");
  return {read_number(I[0], where + ".I"), read_number(I[1], where + ".I")};
}

Problem parse_problem(const json& j) {
  if (!j.is_object()) throw BadInput("spec must be a JSON object");
  Problem pr;
  try {
    const json& b = field(j, "base", "spec");
    const std::string bname = field(b, "name", "spec.base").get<std::string>();
    const json bparams = b.value("params", json::object());
    if (bname == "power") {
      pr.base = std::make_shared<PowerBase>(read_finite(field(bparams, "p", "power"), "power.p"));
    } else if (bname == "huber") {
      pr.base = std::make_shared<HuberBase>(read_finite(field(bparams, "alpha", "huber"), "huber.alpha"));
    } else if (bname == "abs") {
      pr.base = std::make_shared<AbsBase>();
    } else {
      throw BadInput("unknown base function '" + bname + "' (expected power, huber, abs)");
    }

    const json& s = field(j, "scaling", "spec");
    const std::string sname = field(s, "name", "spec.scaling").get<std::string>();
    const json sparams = s.value("params", json::object());
    if (sname == "root") {
      const auto [lo, hi] = read_interval(sparams, "root");
      if (lo != 0.0) throw BadInput("root: the interval must be [0, hi]");
      pr.scaling = std::make_shared<RootScaling>(read_finite(field(sparams, "q", "root"), "root.q"), hi);
    } else if (sname == "sqrt") {
      pr.scaling = std::make_shared<SqrtScaling>(read_finite(field(sparams, "beta", "sqrt"), "sqrt.beta"));
    } else if (sname == "identity-interval") {
      const auto [lo, hi] = read_interval(sparams, "identity-interval");
      pr.scaling = std::make_shared<IdentityIntervalScaling>(lo, hi);
    } else {
      throw BadInput("unknown scaling function '" + sname + "' (expected root, sqrt, identity-interval)");
    }

    if (j.contains("gamma")) pr.gamma = read_finite(j.at("gamma"), "gamma");
    if (!(pr.gamma > 0.0)) throw BadInput("gamma must be > 0");
    if (j.contains("dims")) {
      const json& d = j.at("dims");
      if (!d.is_array() || d.size() != 2 || !d[0].is_number_unsigned() || !d[1].is_number_unsigned()) {
        throw BadInput("dims must be [n, m] with positive integers");
      }
      pr.dims = {{d[0].get<std::size_t>(), d[1].get<std::size_t>()}};
    }
  } catch (const json::type_error& e) {
    throw BadInput(std::string("spec: ") + e.what());
  }
  return pr;
}

PerspectivePair make_pair(const Problem& pr, std::size_t n, std::size_t m) {
  if (pr.dims && (pr.dims->first != n || pr.dims->second != m)) {
    throw BadInput("point dimensions (" + std::to_string(n) + ", " + std::to_string(m) +
                   ") disagree with spec dims");
  }
  return PerspectivePair(pr.base, pr.scaling, n, m);
}

struct Point {
  Vec x, y;
};

Point parse_point(const json& j) {
  return {read_vec(field(j, "x", "point"), "point.x"), read_vec(field(j, "y", "point"), "point.y")};
}

// --- tolerances

void apply_tolerances(const std::vector<std::string>& items, RootConfig& rc, OracleConfig& oc) {
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw BadInput("--tol expects key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw BadInput("--tol " + key + ": not a number");
    }
    if (key == "eta_tol") rc.eta_tol = v;
    else if (key == "residual_tol") rc.residual_tol = v;
    else if (key == "max_iter") rc.max_iter = static_cast<int>(v);
    else if (key == "classify_tol") rc.classify_tol = v;
    else if (key == "initial_hi") rc.initial_hi = v;
    else if (key == "radius_factor") oc.radius_factor = v;
    else if (key == "coarse_points_per_dim") oc.coarse_points_per_dim = static_cast<int>(v);
    else if (key == "refine_tol") oc.refine_tol = v;
    else if (key == "max_refine_iters") oc.max_refine_iters = static_cast<int>(v);
    else if (key == "max_grid_points") oc.max_grid_points = static_cast<long>(v);
    else throw BadInput("--tol: unknown key '" + key + "'");
  }
  try {
    rc.validate();
    oc.validate();
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
}

// --- commands

struct Options {
  std::string spec_arg, point_arg, demo_arg, out_path;
  int seeds = 200;
  std::vector<std::string> tols;
};

class Inputs {
 public:
  Inputs(const Options& o, std::istream& in) : opts_(o), in_(in) {}

  json get(const std::string& arg, const char* key) {
    if (!arg.empty()) return load_json_arg(arg, key);
    const json& d = document();
    if (!d.is_object() || !d.contains(key)) {
      throw BadInput(std::string("no ") + key + " given (use --" + key + " or a JSON document on stdin)");
    }
    return d.at(key);
  }
  json spec() { return get(opts_.spec_arg, "spec"); }
  json point() { return get(opts_.point_arg, "point"); }
  json demo() { return get(opts_.demo_arg, "demo"); }

 private:
  const json& document() {
    if (!doc_) {
      std::stringstream ss;
      ss << in_.rdbuf();
      const std::string text = ss.str();
      if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw BadInput("no input: pass --spec/--point or a JSON document on stdin");
      }
      doc_ = parse_text(text, "standard input");
    }
    return *doc_;
  }

  const Options& opts_;
  std::istream& in_;
  std::optional<json> doc_;
};

void cmd_eval(Inputs& inputs, std::ostream& out) {
  const Problem pr = parse_problem(inputs.spec());
  const Point pt = parse_point(inputs.point());
  const PerspectivePair pair = make_pair(pr, pt.x.size(), pt.y.size());
  json j;
  j["value"] = write_number(perspective_eval(pair, pt.x, pt.y));
  j["preperspective_value"] = write_number(preperspective_eval(pair, pt.x, pt.y));
  j["conjugate_value_at_point"] = write_number(perspective_conj_eval(pair, pt.x, pt.y));
  out << j.dump() << '\n';
}

void cmd_prox(Inputs& inputs, const RootConfig& rc, std::ostream& out) {
  const Problem pr = parse_problem(inputs.spec());
  const Point pt = parse_point(inputs.point());
  const PerspectivePair pair = make_pair(pr, pt.x.size(), pt.y.size());
  const ProxResult r = prox_perspective(pair, pr.gamma, pt.x, pt.y, rc);
  json j;
  j["p"] = write_vec(r.p);
  j["q"] = write_vec(r.q);
  j["eta"] = write_number(r.eta);
  j["case_label"] = to_string(r.label);
  j["iterations"] = r.root_iterations;
  j["certificate_gap"] = write_number(r.certificate_gap);
  out << j.dump() << '\n';
}

void cmd_trace_root(Inputs& inputs, const RootConfig& rc, std::ostream& out) {
  const Problem pr = parse_problem(inputs.spec());
  const Point pt = parse_point(inputs.point());
  const PerspectivePair pair = make_pair(pr, pt.x.size(), pt.y.size());
  const CaseLabel label = classify(pair, pr.gamma, pt.x, pt.y, rc);
  if (label != CaseLabel::Omega4 && label != CaseLabel::Xi4) {
    out << "closed-form case, no root trace\n";
    return;
  }
  std::vector<RootStep> trace;
  if (label == CaseLabel::Omega4) {
    solve_eta_case_i(pair, pr.gamma, pt.x, pt.y, rc, &trace);
  } else {
    solve_eta_case_iii(pair, pr.gamma, pt.x, pt.y, rc, &trace);
  }
  out << "iter,eta_lo,eta_hi,eta_mid,T_mid\n";
  for (const RootStep& s : trace) {
    out << s.iter << ',' << csv_number(s.lo) << ',' << csv_number(s.hi) << ','
        << csv_number(s.mid) << ',' << csv_number(s.value) << '\n';
  }
}

struct SeedOutcome {
  double deviation = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
  int error = kExitOk;
  std::string message;
};

int cmd_validate(Inputs& inputs, const Options& opts, const RootConfig& rc,
                 const OracleConfig& oc, std::ostream& out, std::ostream& err) {
  const Problem pr = parse_problem(inputs.spec());
  if (!pr.dims) throw BadInput("validate: spec must give dims [n, m]");
  const auto [n, m] = *pr.dims;
  if (n < 1 || n > 3 || m != 1) throw BadInput("validate: dims must satisfy 1 <= n <= 3, m = 1");
  if (opts.seeds < 1) throw BadInput("validate: --seeds must be >= 1");
  const PerspectivePair pair = make_pair(pr, n, m);

  const auto count = static_cast<std::size_t>(opts.seeds);
  std::vector<SeedOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      SeedOutcome& o = outcomes[i];
      std::mt19937_64 rng(i);
      std::uniform_real_distribution<double> unif(-3.0, 3.0);
      Vec x(n), y(m);
      for (std::size_t k = 0; k < n; ++k) x[k] = unif(rng);
      for (std::size_t k = 0; k < m; ++k) y[k] = unif(rng);
      try {
        const ProxResult r = prox_perspective(pair, pr.gamma, x, y, rc);
        const auto [po, qo] = brute_force_prox(
            [&](const Vec& u, const Vec& v) { return perspective_eval(pair, u, v); }, pr.gamma, x,
            y, oc);
        o.deviation = distance(concat(r.p, r.q), concat(po, qo));
        o.gap = r.certificate_gap;
        o.relative_gap = r.certificate_gap / (1.0 + x.squared_norm() + y.squared_norm());
      } catch (const OracleError& e) {
        o.error = kExitOracleFailure;
        o.message = e.what();
      } catch (const std::exception& e) {
        o.error = kExitSolverFailure;
        o.message = e.what();
      }
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, count);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < count; ++i) {
    if (outcomes[i].error != kExitOk) {
      err << "seed " << i << ": " << outcomes[i].message << '\n';
      return outcomes[i].error;
    }
  }

  double max_dev = 0.0, sum_dev = 0.0, worst_gap = 0.0, worst_rel = 0.0;
  std::size_t worst_seed = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const SeedOutcome& o = outcomes[i];
    sum_dev += o.deviation;
    if (o.deviation > max_dev) {
      max_dev = o.deviation;
      worst_seed = i;
    }
    worst_gap = std::max(worst_gap, o.gap);
    worst_rel = std::max(worst_rel, o.relative_gap);
  }
  const bool passed = max_dev <= kValidationDeviation && worst_rel <= kValidationGap;
  json j;
  j["seeds"] = opts.seeds;
  j["max_deviation"] = write_number(max_dev);
  j["mean_deviation"] = write_number(sum_dev / static_cast<double>(count));
  j["worst_seed"] = worst_seed;
  j["worst_certificate_gap"] = write_number(worst_gap);
  j["worst_relative_certificate_gap"] = write_number(worst_rel);
  j["passed"] = passed;
  out << j.dump() << '\n';
  return passed ? kExitOk : kExitValidationFailure;
}

DemoSpec parse_demo(const json& j, std::optional<std::size_t> n_hint) {
  if (!j.is_object()) throw BadInput("demo must be a JSON object");
  DemoSpec d;
  if (j.contains("A")) {
    const json& A = j.at("A");
    if (!A.is_array() || A.empty()) throw BadInput("demo.A must be a nonempty array of rows");
    for (const auto& row : A) d.A.push_back(read_vec(row, "demo.A").raw());
    d.b = read_vec(field(j, "b", "demo"), "demo.b").raw();
  } else {
    const std::size_t n = j.contains("cols") ? j.at("cols").get<std::size_t>() : n_hint.value_or(2);
    const std::size_t k = j.contains("rows") ? j.at("rows").get<std::size_t>() : 20;
    const std::uint64_t seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    d = make_random_demo(k, n, seed);
  }
  if (j.contains("y0")) d.y0 = read_finite(j.at("y0"), "demo.y0");
  if (j.contains("kappa")) d.kappa = read_finite(j.at("kappa"), "demo.kappa");
  if (j.contains("tau")) d.tau = read_finite(j.at("tau"), "demo.tau");
  if (j.contains("iterations")) d.iterations = j.at("iterations").get<int>();
  if (j.contains("w0")) d.w0 = read_vec(j.at("w0"), "demo.w0");
  if (j.contains("sigma0")) d.sigma0 = read_finite(j.at("sigma0"), "demo.sigma0");
  if (d.A.empty() || d.A.front().empty()) throw BadInput("demo: design matrix is empty");
  return d;
}

void cmd_demo(Inputs& inputs, const RootConfig& rc, std::ostream& out) {
  const Problem pr = parse_problem(inputs.spec());
  DemoSpec d;
  try {
    d = parse_demo(inputs.demo(), pr.dims ? std::optional(pr.dims->first) : std::nullopt);
  } catch (const json::exception& e) {
    throw BadInput(std::string("demo: ") + e.what());
  }
  const PerspectivePair pair = make_pair(pr, d.A.front().size(), 1);
  const DemoResult res = run_concomitant_demo(d, pair, pr.gamma, rc);
  out << "iter,objective,step_norm\n";
  for (const DemoRow& row : res.rows) {
    out << row.iter << ',' << csv_number(row.objective) << ',' << csv_number(row.step_norm) << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Perspective functions: evaluation, proximity operators and validation", "persp"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", opts.spec_arg, "problem spec (inline JSON or file)");
    sub->add_option("--out", opts.out_path, "write output to this file");
    sub->add_option("--tol", opts.tols, "override a tolerance, key=value (repeatable)");
  };
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--point", opts.point_arg, "point {\"x\": [...], \"y\": [...]} (inline JSON or file)");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate the perspective, preperspective and conjugate");
  CLI::App* prox = app.add_subcommand("prox", "proximity operator of gamma times the perspective");
  CLI::App* trace = app.add_subcommand("trace-root", "trace the scalar root search as CSV");
  CLI::App* validate = app.add_subcommand("validate", "compare the solver with the brute-force oracle");
  CLI::App* demo = app.add_subcommand("demo-concomitant", "forward-backward location/scale fit, CSV");
  for (CLI::App* sub : {eval, prox, trace, validate, demo}) add_common(sub);
  for (CLI::App* sub : {eval, prox, trace}) add_point(sub);
  validate->add_option("--seeds", opts.seeds, "number of random points")->check(CLI::PositiveNumber);
  demo->add_option("--demo", opts.demo_arg, "demo problem (inline JSON or file)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    RootConfig rc;
    OracleConfig oc;
    apply_tolerances(opts.tols, rc, oc);
    Inputs inputs(opts, in);

    std::ofstream file;
    if (!opts.out_path.empty()) {
      file.open(opts.out_path);
      if (!file) throw BadInput("cannot write to '" + opts.out_path + "'");
    }
    std::ostream& sink = opts.out_path.empty() ? out : file;

    int code = kExitOk;
    if (*eval) cmd_eval(inputs, sink);
    else if (*prox) cmd_prox(inputs, rc, sink);
    else if (*trace) cmd_trace_root(inputs, rc, sink);
    else if (*validate) code = cmd_validate(inputs, opts, rc, oc, sink, err);
    else if (*demo) cmd_demo(inputs, rc, sink);
    sink.flush();
    return code;
  } catch (const BadInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {  // includes bad pairs, dimensions, demo setup
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (bracket [" << csv_number(e.lo()) << ", "
        << csv_number(e.hi()) << "], residual " << csv_number(e.residual()) << ")\n";
    return kExitSolverFailure;
  } catch (const OracleError& e) {
    err << "oracle error: " << e.what() << '\n';
    return kExitOracleFailure;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

}  // namespace persp
