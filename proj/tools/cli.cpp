#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "carnot/casimir.hpp"
#include "carnot/errors.hpp"
#include "carnot/flow.hpp"
#include "carnot/orbit.hpp"
#include "carnot/poisson.hpp"
#include "carnot/serialize.hpp"

namespace carnot::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format;
  int rank = 0;
  int step = 0;
  bool verify = false;
  std::string block;
  std::string file;
  std::string point_file;
  std::string stratum_file;
  bool example = false;
  bool example_degenerate = false;
  std::string preset;
  std::string metric_file;
  std::string csv_file;
  double T = 10;
  double dt = 1e-3;
  double conservation_tol = 1e-8;
  BehaviorTolerances behavior;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool json_output(const Options& o) { return o.format == "json"; }

GradedAlgebra algebra(const Options& o) {
  if (o.rank < 2) throw UsageError("rank must be at least 2");
  if (o.step < 2 || o.step > 4) throw UsageError("step must be 2, 3 or 4");
  return build_algebra(o.rank, o.step);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int cmd_dims(const Options& o, std::ostream& out) {
  if (o.rank < 2) throw UsageError("rank must be at least 2");
  if (o.step < 2 || o.step > 4) throw UsageError("step must be 2, 3 or 4");
  if (json_output(o)) {
    out << dims_json(o.rank, o.step);
    return ok;
  }
  std::uint64_t total = 0;
  out << "rank " << o.rank << ", step " << o.step << "\n";
  for (int m = 1; m <= o.step; ++m) {
    const auto d = graded_dimension(o.rank, m);
    total += d;
    out << "  g" << m << ": " << d << "\n";
  }
  out << "total: " << total << "\n";
  return ok;
}

int cmd_basis(const Options& o, std::ostream& out) {
  const auto alg = algebra(o);
  if (json_output(o)) {
    out << basis_json(alg);
    return ok;
  }
  for (std::size_t i = 0; i < alg.dimension(); ++i)
    out << i << "\t" << alg.degree_of(i) << "\t" << alg.name(i) << "\n";
  return ok;
}

int cmd_bivector(const Options& o, std::ostream& out) {
  const auto alg = algebra(o);
  PolyMatrix m;
  std::string name = "B";
  if (o.block.empty()) {
    m = bivector(alg);
  } else {
    int a = 0, b = 0;
    char comma = 0;
    std::istringstream in(o.block);
    if (!(in >> a >> comma >> b) || comma != ',' || a < 1 || b < 1 || a > o.step || b > o.step)
      throw UsageError("--block expects m,n with 1 <= m, n <= step");
    m = block(alg, a, b);
    name = "B" + std::to_string(a) + std::to_string(b);
  }
  if (json_output(o)) {
    out << matrix_json(m, name);
    return ok;
  }
  out << name << " (" << m.rows() << " x " << m.cols() << ")\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << m.row_labels()[i] << ":";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : " ") << format_polynomial(m(i, j));
    out << "\n";
  }
  return ok;
}

int cmd_casimirs(const Options& o, std::ostream& out) {
  const auto alg = algebra(o);
  const CasimirSet set = complete_system(alg);
  std::vector<VerifiedFunction> fs;
  bool all = true;
  for (auto& f : set.all()) {
    VerifiedFunction v{f, std::nullopt};
    if (o.verify) {
      v.check = is_casimir(alg, f.polynomial);
      all = all && v.check->casimir;
    }
    fs.push_back(std::move(v));
  }
  if (json_output(o)) {
    out << casimirs_json(alg, fs);
  } else {
    for (const auto& f : fs) {
      out << "[" << f.function.role << ", degree " << f.function.polynomial.total_degree() << "] "
          << format_polynomial(f.function.polynomial);
      if (f.check) out << (f.check->casimir ? "  (verified)" : "  (NOT a Casimir)");
      out << "\n";
    }
    out << fs.size() << " functions (" << set.linear.size() << " linear, " << set.minor.size() << " minor, "
        << set.quadratic_on_levels.size() << " quadratic)";
    if (o.verify) out << (all ? ", all verified" : ", verification FAILED");
    out << "\n";
  }
  return all ? ok : verification_failure;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto alg = algebra(o);
  std::istringstream in(read_file(o.file));
  std::vector<VerifyLine> results;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    VerifyLine v;
    v.line = line;
    v.text = text;
    try {
      v.polynomial = parse_polynomial(alg, text);
    } catch (const ParseError& e) {
      throw InputError(o.file + ": line " + std::to_string(line) + ": " + e.what());
    }
    v.check = is_casimir(alg, v.polynomial);
    results.push_back(std::move(v));
  }
  const bool all = std::all_of(results.begin(), results.end(), [](const VerifyLine& v) { return v.check.casimir; });
  if (json_output(o)) {
    out << verify_json(alg, results);
  } else {
    for (const auto& v : results) {
      out << "line " << v.line << ": " << (v.check.casimir ? "true" : "false");
      if (!v.check.casimir)
        out << " (witness {x" << v.check.generator << ", f} = " << format_polynomial(v.check.witness) << ")";
      out << "\n";
    }
  }
  return all ? ok : verification_failure;
}

void print_report(const Point& p, const OrbitReport& r, std::ostream& out) {
  out << "type: " << r.type_label << "\n";
  out << "dimension: " << r.orbit_dim << "\n";
  out << "rank B12: " << r.rank_b12 << ", k1 = " << r.k1 << ", k2 = " << r.k2 << "\n";
  for (std::size_t i = 0; i < r.quadrics.size(); ++i) {
    const auto& q = r.quadrics[i];
    out << "quadric " << i + 1 << ": rank " << q.rank << ", inertia (" << q.inertia.positive << ", " << q.inertia.negative
        << ", " << q.inertia.zero << ")\n";
  }
  if (r.det_d_sign) out << "sign det D: " << *r.det_d_sign << "\n";
  out << "defining functions (rank " << r.defining_rank << " at p):\n";
  for (const auto& f : r.defining_functions) out << "  " << format_polynomial(f) << "\n";
  (void)p;
}

int orbit_on_stratum(const Options& o, const Stratum& s, std::ostream& out) {
  const OrbitAnalysis a = stepwise_reduce(s);
  const auto kc = kernel_casimirs_on_stratum(a);
  const auto cons = orbit_constructions(a);
  const auto h2 = verify_constancy(a, ConstancySubspace::h2);
  const auto kd = verify_constancy(a, ConstancySubspace::ker_d);
  if (json_output(o)) {
    out << stratum_analysis_json(a, kc, cons);
  } else {
    out << "stratum: " << s.description() << "\n";
    for (const auto& c : s.conditions()) out << "  " << c << "\n";
    out << "rank B12: " << a.rank << ", dim h1: " << a.h1_basis.size() << ", dim k: " << a.kernel_k.size() << "\n";
    out << "kernel Casimirs:\n";
    for (const auto& f : kc) out << "  " << format_polynomial(f) << "\n";
    out << "orbit functions:\n";
    for (const auto& c : cons) out << "  " << format_polynomial(c.function) << "  (rank D = " << c.d_rank << ")\n";
    out << "h2 constancy: " << (h2.holds ? "holds" : "fails") << "\n";
    out << "Ker D constancy: " << (kd.holds ? "holds" : "fails") << "\n";
    for (const auto& w : h2.witnesses) out << "  " << w << "\n";
    for (const auto& w : kd.witnesses) out << "  " << w << "\n";
  }
  return h2.holds && kd.holds ? ok : verification_failure;
}

int cmd_orbit(Options o, std::ostream& out) {
  const int sources = (!o.point_file.empty()) + (!o.stratum_file.empty()) + o.example + o.example_degenerate;
  if (sources != 1)
    throw UsageError("orbit needs exactly one of --point, --stratum, --example-5.1, --example-5.1-degenerate");
  if (o.example || o.example_degenerate) {
    if (o.rank == 0) o.rank = 3;
    if (o.step == 0) o.step = 3;
    if (o.rank != 3 || o.step != 3) throw UsageError("the preset strata live in rank 3, step 3");
  }
  const auto alg = algebra(o);
  if (o.step != 3) throw UsageError("orbit classification requires step 3");
  if (!o.point_file.empty()) {
    const Point p = parse_point_json(alg, read_file(o.point_file));
    const OrbitReport r = classify_orbit(p);
    if (json_output(o))
      out << orbit_report_json(p, r);
    else
      print_report(p, r, out);
    return ok;
  }
  const Stratum s = o.stratum_file.empty() ? rank3_preset_stratum(alg, o.example_degenerate)
                                           : parse_stratum_json(alg, read_file(o.stratum_file));
  return orbit_on_stratum(o, s, out);
}

int cmd_flow(Options o, std::ostream& out) {
  Point p0;
  if (!o.preset.empty()) {
    if (!o.point_file.empty()) throw UsageError("--preset and --point are exclusive");
    if (o.rank == 0) o.rank = 2;
    if (o.step == 0) o.step = 3;
    const auto alg = algebra(o);
    p0 = Point(alg);
    if (o.preset == "cartan-circle") {
      if (o.rank != 2 || o.step != 3) throw UsageError("cartan-circle lives in rank 2, step 3");
      p0.set("x1", 1);
      p0.set("x12", 1);
    } else if (o.preset == "zero-bracket") {
      p0.set("x1", 1);
    } else {
      throw UsageError("unknown preset '" + o.preset + "'");
    }
  } else if (!o.point_file.empty()) {
    p0 = parse_point_json(algebra(o), read_file(o.point_file));
  } else {
    throw UsageError("flow needs --preset or --point");
  }
  const GradedAlgebra& alg = p0.algebra();
  if (o.step < 3) throw UsageError("flow requires step 3 or 4");
  if (!(o.dt > 0) || !(o.T > 0)) throw UsageError("-T and --dt must be positive");
  const ControlSpec spec =
      o.metric_file.empty() ? ControlSpec::identity(o.rank) : ControlSpec(parse_matrix_json(read_file(o.metric_file)));
  if (spec.dimension() != static_cast<std::size_t>(o.rank)) throw UsageError("metric must be rank x rank");

  const Trajectory traj = integrate_vertical(alg, spec, p0, o.T, o.dt);
  const auto casimirs = complete_system(alg).all();
  const ConservationReport report = conservation_report(casimirs, spec, traj, o.conservation_tol);
  const Behavior behavior = behavior_classify(traj, o.behavior);

  if (!o.csv_file.empty()) {
    const std::string csv = trajectory_csv(alg, traj);
    if (o.csv_file == "-") {
      out << csv;
    } else {
      std::ofstream f(o.csv_file);
      if (!f) throw InputError("cannot write '" + o.csv_file + "'");
      f << csv;
    }
  }
  if (json_output(o)) {
    out << flow_json(alg, o.T, o.dt, report, behavior);
  } else if (o.csv_file != "-") {
    out << "conservation (tolerance " << sci(report.tolerance) << "): " << (report.pass ? "pass" : "FAIL") << "\n";
    for (const auto& e : report.entries) {
      out << "  " << (e.pass ? "ok  " : "FAIL") << " drift " << sci(e.max_drift) << "  " << e.name;
      if (e.first_violation) out << "  (first violation at step " << *e.first_violation << ")";
      out << "\n";
    }
    out << "behavior: " << to_string(behavior.kind);
    if (behavior.period) out << ", period ≈ " << fixed(*behavior.period, 4);
    out << "\n";
  }
  return report.pass ? ok : verification_failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("CARNOT_OUTPUT_FORMAT")) o.format = env;
  if (o.format.empty()) o.format = "text";

  CLI::App app{"Casimir functions and coadjoint orbits of free Carnot groups", "carnot"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format (text or json; default from CARNOT_OUTPUT_FORMAT)")
      ->check(CLI::IsMember({"text", "json"}));

  auto with_algebra = [&](CLI::App* c, bool required) {
    auto* r = c->add_option("-r,--rank", o.rank, "Number of generators");
    auto* s = c->add_option("-s,--step", o.step, "Nilpotency step");
    if (required) {
      r->required();
      s->required();
    }
  };

  auto* dims = app.add_subcommand("dims", "Graded dimensions");
  with_algebra(dims, true);
  auto* basis = app.add_subcommand("basis", "Hall basis with degrees");
  with_algebra(basis, true);
  auto* biv = app.add_subcommand("bivector", "Poisson bivector or one of its blocks");
  with_algebra(biv, true);
  biv->add_option("--block", o.block, "Block m,n between degrees m and n");
  auto* cas = app.add_subcommand("casimirs", "Complete system of Casimir functions");
  with_algebra(cas, true);
  cas->add_flag("--verify", o.verify, "Check every function before printing");
  auto* ver = app.add_subcommand("verify", "Check whether polynomials are Casimir functions");
  with_algebra(ver, true);
  ver->add_option("file", o.file, "One polynomial per line")->required();
  auto* orb = app.add_subcommand("orbit", "Classify the orbit through a point or analyse a stratum");
  with_algebra(orb, false);
  orb->add_option("--point", o.point_file, "Point file {name: \"a/b\"}");
  orb->add_option("--stratum", o.stratum_file, "Stratum file");
  orb->add_flag("--example-5.1", o.example, "Preset stratum with nondegenerate D");
  orb->add_flag("--example-5.1-degenerate", o.example_degenerate, "Preset stratum with degenerate D");
  auto* flow = app.add_subcommand("flow", "Integrate the vertical subsystem");
  with_algebra(flow, false);
  flow->add_option("--preset", o.preset, "cartan-circle or zero-bracket");
  flow->add_option("--point", o.point_file, "Initial point file");
  flow->add_option("-T,--time", o.T, "Final time")->capture_default_str();
  flow->add_option("--dt", o.dt, "Step size")->capture_default_str();
  flow->add_option("--metric", o.metric_file, "SPD matrix M as JSON rows; U = {u : u^T M u <= 1}");
  flow->add_option("--csv", o.csv_file, "Write the trajectory as CSV ('-' for stdout)");
  flow->add_option("--conservation-tol", o.conservation_tol, "Drift tolerance")->capture_default_str();
  flow->add_option("--constancy-tol", o.behavior.constancy, "Constancy tolerance")->capture_default_str();
  flow->add_option("--periodicity-tol", o.behavior.periodicity, "Return tolerance")->capture_default_str();
  flow->add_option("--velocity-tol", o.behavior.velocity, "Velocity tolerance")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  if (o.format != "text" && o.format != "json") {
    err << "error: unknown output format '" << o.format << "'\n";
    return usage_error;
  }

  try {
    if (dims->parsed()) return cmd_dims(o, out);
    if (basis->parsed()) return cmd_basis(o, out);
    if (biv->parsed()) return cmd_bivector(o, out);
    if (cas->parsed()) return cmd_casimirs(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    if (orb->parsed()) return cmd_orbit(o, out);
    if (flow->parsed()) return cmd_flow(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << " (last valid step " << e.last_valid_index() << ")\n";
    return verification_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return verification_failure;
  }
  return usage_error;
}

}  // namespace carnot::cli
