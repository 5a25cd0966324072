#include "carnot/serialize.hpp"

#include <cstdio>
#include <json.hpp>

#include "carnot/errors.hpp"

namespace carnot {

using json = nlohmann::ordered_json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json poly_list(const std::vector<Polynomial>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(format_polynomial(f));
  return a;
}

json poly_vector(const PolyVector& v) {
  json a = json::array();
  for (const auto& f : v) a.push_back(format_polynomial(f));
  return a;
}

json poly_matrix(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(poly_vector(m.row(i)));
  return rows;
}

json check_json(const CasimirCheck& c) {
  json j;
  j["casimir"] = c.casimir;
  if (!c.casimir) {
    j["generator"] = "x" + std::to_string(c.generator);
    j["witness"] = format_polynomial(c.witness);
  }
  return j;
}

Rational rational_value(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InputError("coordinate values must be integers or rational strings");
}

LieElement single_coordinate(const GradedAlgebra& alg, const std::string& name) {
  auto e = alg.resolve_symbol(name);
  if (!e) throw InputError("unknown coordinate '" + name + "'");
  return *e;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string dims_json(int rank, int step) {
  json j;
  j["schema"] = "carnot/dims@1";
  j["rank"] = rank;
  j["step"] = step;
  json d = json::array();
  std::uint64_t total = 0;
  for (int m = 1; m <= step; ++m) {
    const auto k = graded_dimension(rank, m);
    d.push_back(k);
    total += k;
  }
  j["dimensions"] = d;
  j["total"] = total;
  return dump(j);
}

std::string basis_json(const GradedAlgebra& alg) {
  json j;
  j["schema"] = "carnot/basis@1";
  j["rank"] = alg.rank();
  j["step"] = alg.step();
  json b = json::array();
  for (std::size_t i = 0; i < alg.dimension(); ++i) {
    json e;
    e["index"] = i;
    e["degree"] = alg.degree_of(i);
    e["name"] = alg.name(i);
    b.push_back(e);
  }
  j["basis"] = b;
  return dump(j);
}

std::string matrix_json(const PolyMatrix& m, std::string_view name) {
  json j;
  j["schema"] = "carnot/matrix@1";
  j["name"] = name;
  j["rows"] = m.row_labels();
  j["cols"] = m.col_labels();
  j["entries"] = poly_matrix(m);
  return dump(j);
}

std::string casimirs_json(const GradedAlgebra& alg, const std::vector<VerifiedFunction>& functions) {
  json j;
  j["schema"] = "carnot/casimirs@1";
  j["rank"] = alg.rank();
  j["step"] = alg.step();
  json a = json::array();
  bool all = true;
  for (const auto& f : functions) {
    json e;
    e["role"] = f.function.role;
    e["degree"] = f.function.polynomial.total_degree();
    e["provenance"] = f.function.provenance;
    e["polynomial"] = format_polynomial(f.function.polynomial);
    if (f.check) {
      e["verified"] = f.check->casimir;
      all = all && f.check->casimir;
    }
    a.push_back(e);
  }
  j["count"] = functions.size();
  j["functions"] = a;
  if (!functions.empty() && functions.front().check) j["all_verified"] = all;
  return dump(j);
}

std::string verify_json(const GradedAlgebra& alg, const std::vector<VerifyLine>& lines) {
  json j;
  j["schema"] = "carnot/verify@1";
  j["rank"] = alg.rank();
  j["step"] = alg.step();
  json a = json::array();
  for (const auto& l : lines) {
    json e;
    e["line"] = l.line;
    e["polynomial"] = format_polynomial(l.polynomial);
    e.update(check_json(l.check));
    a.push_back(e);
  }
  j["results"] = a;
  return dump(j);
}

std::string orbit_report_json(const Point& p, const OrbitReport& r) {
  const GradedAlgebra& alg = p.algebra();
  json j;
  j["schema"] = "carnot/orbit-report@1";
  j["rank"] = alg.rank();
  j["step"] = alg.step();
  json pt;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (sgn(p[i]) != 0) pt[alg.name(i)] = to_string(p[i]);
  j["point"] = pt.is_null() ? json::object() : pt;
  j["rank_b12"] = r.rank_b12;
  j["k1"] = r.k1;
  j["k2"] = r.k2;
  j["orbit_dim"] = r.orbit_dim;
  j["type"] = r.type_label;
  json q = json::array();
  for (const auto& d : r.quadrics) {
    json e;
    e["rank"] = d.rank;
    e["positive"] = d.inertia.positive;
    e["negative"] = d.inertia.negative;
    e["zero"] = d.inertia.zero;
    q.push_back(e);
  }
  j["quadrics"] = q;
  j["det_d_sign"] = r.det_d_sign ? json(*r.det_d_sign) : json(nullptr);
  j["defining_functions"] = poly_list(r.defining_functions);
  j["defining_rank"] = r.defining_rank;
  return dump(j);
}

std::string stratum_analysis_json(const OrbitAnalysis& a, const std::vector<Polynomial>& kernel_casimirs,
                                  const std::vector<GammaConstruction>& constructions) {
  const GradedAlgebra& alg = a.stratum.algebra();
  json j;
  j["schema"] = "carnot/stratum-analysis@1";
  j["rank"] = alg.rank();
  j["step"] = alg.step();
  j["description"] = a.stratum.description();
  j["conditions"] = a.stratum.conditions();
  j["rank_b12"] = a.rank;
  j["reduced_b12"] = poly_matrix(a.reduced_b12);
  json h1 = json::array();
  for (const auto& v : a.h1_basis) h1.push_back(poly_vector(v));
  j["h1"] = h1;
  j["c_matrix"] = poly_matrix(a.c_matrix);
  j["kernel_casimirs"] = poly_list(kernel_casimirs);
  json g = json::array();
  for (const auto& c : constructions) {
    json e;
    e["gamma"] = poly_vector(c.gamma);
    e["d_matrix"] = poly_matrix(c.d_matrix);
    e["d_rank"] = c.d_rank;
    e["function"] = format_polynomial(c.function);
    g.push_back(e);
  }
  j["orbit_functions"] = g;
  return dump(j);
}

std::string flow_json(const GradedAlgebra& alg, double T, double dt, const ConservationReport& report, const Behavior& behavior) {
  json j;
  j["schema"] = "carnot/flow@1";
  j["rank"] = alg.rank();
  j["step"] = alg.step();
  j["T"] = T;
  j["dt"] = dt;
  json c;
  c["tolerance"] = report.tolerance;
  c["pass"] = report.pass;
  json e = json::array();
  for (const auto& d : report.entries) {
    json x;
    x["function"] = d.name;
    x["max_drift"] = d.max_drift;
    x["max_index"] = d.max_index;
    x["first_violation"] = d.first_violation ? json(*d.first_violation) : json(nullptr);
    x["pass"] = d.pass;
    e.push_back(x);
  }
  c["entries"] = e;
  j["conservation"] = c;
  json b;
  b["kind"] = to_string(behavior.kind);
  b["period"] = behavior.period ? json(*behavior.period) : json(nullptr);
  j["behavior"] = b;
  return dump(j);
}

std::string trajectory_csv(const GradedAlgebra& alg, const Trajectory& traj) {
  std::string out = "t";
  for (std::size_t i = 0; i < alg.dimension(); ++i) out += "," + alg.name(i);
  out += "\n";
  char buf[40];
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[i]);
    out += buf;
    for (double x : traj.states[i]) {
      std::snprintf(buf, sizeof buf, ",%.17g", x);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

Point parse_point_json(const GradedAlgebra& alg, std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw InputError("point file must be a JSON object");
  Point p(alg);
  for (const auto& [name, value] : j.items()) {
    const LieElement e = single_coordinate(alg, name);
    if (e.terms().size() != 1 || e.terms().begin()->second != 1)
      throw InputError("'" + name + "' is not a single basis coordinate");
    p[e.terms().begin()->first] = rational_value(value);
  }
  return p;
}

Stratum parse_stratum_json(const GradedAlgebra& alg, std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw InputError("stratum file must be a JSON object");
  Stratum s(alg, j.value("description", std::string("user stratum")));
  if (j.contains("set_zero")) {
    for (const auto& n : j.at("set_zero")) {
      if (!n.is_string()) throw InputError("set_zero entries must be names");
      s.set_zero(n.get<std::string>());
    }
  }
  if (j.contains("identify")) {
    for (const auto& pair : j.at("identify")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
        throw InputError("identify entries must be [name, name] pairs");
      s.identify(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  if (j.contains("witness_point")) s.set_witness(parse_point_json(alg, j.at("witness_point").dump()));
  return s;
}

RationalMatrix parse_matrix_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  RationalMatrix m(n, j[0].size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols()) throw InputError("matrix rows must have equal length");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rational_value(j[i][k]);
  }
  return m;
}

}  // namespace carnot
