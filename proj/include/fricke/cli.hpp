#pragma once

// Command-line front end: argument parsing, dispatch to the library, and
// JSON/text reports. Exit codes: 0 ok, 1 cap-exceeded, 2 error.

#include "fricke/braid.hpp"
#include "fricke/charvariety.hpp"
#include "fricke/connection.hpp"
#include "fricke/groebner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fricke::cli {

using json = nlohmann::json;

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by parse_command for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, text };

struct Command {
  std::string name;
  Format format = Format::json;
  std::optional<BoundaryTraces> a;
  std::optional<PairTraces> v;
  std::size_t cap = 10000;
  std::optional<SubgroupSpec> gens;
  std::vector<std::string> compare;
  std::string residues_path;
  std::optional<Complex> t;
  double tol = 1e-10;
  std::array<Rational, 4> theta{};
  std::vector<std::string> polys;
  bool batch = false;
  GroebnerLimits limits;
};

struct Report {
  std::string status = "ok";  // ok | cap-exceeded | error
  json body;

  int exit_code() const { return status == "ok" ? 0 : status == "cap-exceeded" ? 1 : 2; }
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

template <std::size_t N>
std::array<Rational, N> parse_rational_list(const std::string& flag, const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != N)
    throw UsageError(flag + ": expected " + std::to_string(N) + " comma-separated rationals, got '" +
                     text + "'");
  std::array<Rational, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    try {
      out[i] = parse_rational(parts[i]);
    } catch (const ParseError& e) {
      throw UsageError(flag + ": malformed rational '" + parts[i] + "'");
    }
  }
  return out;
}

inline Complex parse_complex_flag(const std::string& flag, const std::string& text) {
  auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2)
    throw UsageError(flag + ": expected 're' or 're,im', got '" + text + "'");
  double re = 0, im = 0;
  try {
    std::size_t used = 0;
    re = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("trailing");
    if (parts.size() == 2) {
      im = std::stod(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("trailing");
    }
  } catch (const std::exception&) {
    throw UsageError(flag + ": malformed complex literal '" + text + "'");
  }
  return {re, im};
}

/// Validates argv (program name first) into a Command.
inline Command parse_command(const std::vector<std::string>& argv) {
  CLI::App app{"Exact computations on the character variety of the four-punctured sphere",
               "fricke"};
  app.require_subcommand(1);

  Command cmd;
  std::string format = "json";
  std::string a_text, v_text, compare_text, t_text, theta_text;
  std::optional<std::string> gens_text;
  std::size_t max_pairs = cmd.limits.max_pairs;
  unsigned max_degree = cmd.limits.max_degree;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    return sub;
  };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--max-pairs", max_pairs, "S-pair budget");
    sub->add_option("--max-degree", max_degree, "intermediate degree cap");
  };

  auto* classify = add_common(app.add_subcommand("classify", "classify a trace point"));
  classify->add_option("--a", a_text, "a1,a2,a3,a4");
  classify->add_option("--v", v_text, "v1,v2,v3");
  classify->add_flag("--stdin", cmd.batch, "read TracePoint JSON objects, one per line");

  auto* orbit = add_common(app.add_subcommand("orbit", "enumerate a braid orbit"));
  orbit->add_option("--a", a_text)->required();
  orbit->add_option("--v", v_text)->required();
  orbit->add_option("--cap", cmd.cap)->check(CLI::PositiveNumber);

  auto* fideal = add_common(app.add_subcommand("fixed-ideal", "ideal of the fixed locus of a subgroup"));
  fideal->add_option("--gens", gens_text, "subgroup generators, e.g. t2;t1t1;t3t3")->required();
  fideal->add_option("--compare", compare_text, "';'-separated generators to compare against");
  add_limits(fideal);

  auto* fpoints = add_common(app.add_subcommand("fixed-points", "rational fixed points at given a"));
  fpoints->add_option("--a", a_text)->required();
  fpoints->add_option("--gens", gens_text)->required();
  add_limits(fpoints);

  auto* hol = add_common(app.add_subcommand("holonomy", "numerical monodromy of a residue tuple"));
  hol->add_option("--residues", cmd.residues_path, "ResidueTuple JSON file")->required();
  hol->add_option("--t", t_text, "fourth puncture, 're' or 're,im'");
  hol->add_option("--tol", cmd.tol)->check(CLI::PositiveNumber);

  auto* pvi = add_common(app.add_subcommand("pvi-params", "Painleve VI parameters of exponents"));
  pvi->add_option("--theta", theta_text, "th1,th2,th3,th4")->required();

  auto* family = add_common(app.add_subcommand("family-check", "constant-parameter deformation ideal"));
  family->add_option("--theta0", theta_text, "th1,th2,th3,th4")->required();
  family->add_option("--poly", cmd.polys, "polynomial in th1..th4 to test for membership");
  add_limits(family);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    throw HelpRequested(sub ? sub->help() : app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cmd.name = app.get_subcommands().front()->get_name();
  cmd.format = format == "text" ? Format::text : Format::json;
  cmd.limits = {max_pairs, max_degree};
  if (!a_text.empty()) cmd.a = parse_rational_list<4>("--a", a_text);
  if (!v_text.empty()) cmd.v = parse_rational_list<3>("--v", v_text);
  if (gens_text) {
    try {
      cmd.gens = SubgroupSpec::parse(*gens_text);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--gens: ") + e.what());
    }
  }
  if (!compare_text.empty()) cmd.compare = split(compare_text, ';');
  if (!t_text.empty()) cmd.t = parse_complex_flag("--t", t_text);
  if (!theta_text.empty())
    cmd.theta = parse_rational_list<4>(cmd.name == "pvi-params" ? "--theta" : "--theta0", theta_text);
  if (cmd.name == "classify" && !cmd.batch && (!cmd.a || !cmd.v))
    throw UsageError("classify: --a and --v are required unless --stdin is given");
  return cmd;
}

// JSON helpers.

template <std::size_t N>
json rationals_json(const std::array<Rational, N>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

template <std::size_t N>
json complex_list_json(const std::array<Complex, N>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(complex_json(x));
  return out;
}

inline json label_json(const ClassLabel& l) {
  return {{"class", to_string(l.kind)},
          {"flags", {{"real", l.real}, {"box", l.box}, {"overlap", l.overlap}}}};
}

inline json order_json(const MonomialOrder& order, const Ring& ring) {
  return {{"kind", to_string(order.kind())},
          {"variables", order.priority_names(ring)},
          {"block_size", order.block_size()}};
}

inline json polys_json(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline TracePoint trace_point_from_json(const json& j) {
  auto read = [&](const char* key, std::size_t n) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != n)
      throw UsageError(std::string("TracePoint JSON needs \"") + key + "\" with " + std::to_string(n) +
                       " entries");
    std::vector<Rational> xs;
    for (const auto& e : j[key]) {
      if (!e.is_string()) throw UsageError("TracePoint entries must be rational strings");
      xs.push_back(parse_rational(e.get<std::string>()));
    }
    return xs;
  };
  auto a = read("a", 4);
  auto v = read("v", 3);
  return {{a[0], a[1], a[2], a[3]}, {v[0], v[1], v[2]}};
}

inline json trace_point_json(const TracePoint& pt) {
  return {{"a", rationals_json(pt.a)}, {"v", rationals_json(pt.v)}};
}

inline Matrix2 matrix_from_json(const json& m) {
  auto entry = [&](std::size_t r, std::size_t c) {
    const auto& z = m.at(r).at(c);
    if (z.is_number()) return Complex(z.get<double>(), 0);
    if (!z.is_array() || z.size() != 2) throw UsageError("complex entries must be [re, im] pairs");
    return Complex(z[0].get<double>(), z[1].get<double>());
  };
  if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
    throw UsageError("residue matrices must be 2x2 row-major arrays");
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

inline json matrix_json(const Matrix2& m) {
  return json::array({json::array({complex_json(m.a), complex_json(m.b)}),
                      json::array({complex_json(m.c), complex_json(m.d)})});
}

/// {"X": [M1, M2, M3] or [M1, M2, M3, M4], "t": [re, im] (optional)}.
inline std::pair<ResidueTuple, std::optional<Complex>> residues_from_json(const json& j) {
  if (!j.contains("X") || !j["X"].is_array() || (j["X"].size() != 3 && j["X"].size() != 4))
    throw UsageError("ResidueTuple JSON needs \"X\" with 3 or 4 matrices");
  std::vector<Matrix2> ms;
  for (const auto& m : j["X"]) ms.push_back(matrix_from_json(m));
  ResidueTuple x = ms.size() == 3 ? ResidueTuple::from_finite(ms[0], ms[1], ms[2])
                                  : ResidueTuple{{ms[0], ms[1], ms[2], ms[3]}};
  std::optional<Complex> t;
  if (j.contains("t")) {
    const auto& z = j["t"];
    t = z.is_number() ? Complex(z.get<double>(), 0) : Complex(z.at(0).get<double>(), z.at(1).get<double>());
  }
  return {x, t};
}

// Subcommand implementations.

template <class T>
const T& need(const std::optional<T>& value, const char* flag) {
  if (!value) throw UsageError(std::string(flag) + " is required");
  return *value;
}

inline json classify_body(const TracePoint& pt) {
  json body = {{"input", trace_point_json(pt)}};
  bool on = on_variety(pt);
  body["on_variety"] = on;
  if (!on) throw OffVarietyError();
  auto label = classify(pt);
  body.update(label_json(label));
  if (label.box) {
    auto describe = [](const AlgebraicInterval& i) {
      return json{{"center", to_string(i.center)},
                  {"radicand", to_string(i.radicand)},
                  {"approx", json::array({i.lower_approx(), i.upper_approx()})}};
    };
    body["intervals"] = json::array({describe(su2_interval(pt.a[0], pt.a[1])),
                                     describe(su2_interval(pt.a[2], pt.a[3]))});
  }
  return body;
}

inline Report run_classify(const Command& cmd, std::istream& in) {
  Report r;
  if (!cmd.batch) {
    r.body = classify_body({need(cmd.a, "--a"), need(cmd.v, "--v")});
    return r;
  }
  json results = json::array();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json entry;
    try {
      entry = classify_body(trace_point_from_json(json::parse(line)));
      entry["status"] = "ok";
    } catch (const std::exception& e) {
      entry = {{"status", "error"}, {"message", e.what()}, {"line", lineno}};
      r.status = "error";
    }
    results.push_back(entry);
  }
  r.body = {{"batch", true}, {"results", results}};
  return r;
}

inline Report run_orbit(const Command& cmd) {
  TracePoint pt{need(cmd.a, "--a"), need(cmd.v, "--v")};
  auto orbit = enumerate_orbit(pt, cmd.cap);
  Report r;
  r.status = orbit.status == OrbitStatus::complete ? "ok" : "cap-exceeded";
  json points = json::array();
  for (const auto& v : orbit.points) points.push_back(rationals_json(v));
  r.body = {{"input", trace_point_json(pt)},
            {"cap", cmd.cap},
            {"size", orbit.points.size()},
            {"orbit_status", to_string(orbit.status)},
            {"points", points},
            {"level_sizes", orbit.level_sizes}};
  return r;
}

inline Report run_fixed_ideal(const Command& cmd) {
  auto gb = fixed_ideal(need(cmd.gens, "--gens"), cmd.limits);
  Report r;
  r.body = {{"gens", cmd.gens->to_string()},
            {"ideal", {{"order", order_json(gb.order(), *gb.ring())}, {"generators", polys_json(gb.basis())}}},
            {"basis_size", gb.basis().size()},
            {"pairs_considered", gb.stats().pairs_considered}};
  if (!cmd.compare.empty()) {
    Ideal given(trace_ring());
    for (const auto& s : cmd.compare) given.add(parse_polynomial(s, trace_ring()));
    auto cmp = compare_ideals(gb.ideal(), given, gb.order(), cmd.limits);
    r.body["comparison"] = {{"given", cmd.compare},
                            {"computed_in_given", cmp.first_in_second},
                            {"given_in_computed", cmp.second_in_first},
                            {"equal", cmp.equal()},
                            {"computed_not_in_given", polys_json(cmp.first_not_in_second)},
                            {"given_not_in_computed", polys_json(cmp.second_not_in_first)}};
  }
  return r;
}

inline Report run_fixed_points(const Command& cmd) {
  auto fp = fixed_points_at(need(cmd.a, "--a"), need(cmd.gens, "--gens"), cmd.limits);
  Report r;
  r.body = {{"a", rationals_json(*cmd.a)}, {"gens", cmd.gens->to_string()}, {"zero_dimensional", fp.zero_dimensional}};
  if (!fp.zero_dimensional) {
    r.status = "error";
    r.body["message"] = "specialized fixed ideal is not zero-dimensional";
    r.body["basis"] = polys_json(fp.basis);
    return r;
  }
  json points = json::array();
  for (const auto& v : fp.points) {
    json p = {{"v", rationals_json(v)}};
    p.update(label_json(classify({*cmd.a, v})));
    points.push_back(p);
  }
  json residual = json::array();
  for (const auto& f : fp.residual) {
    json assignment = json::object();
    for (const auto& [k, x] : f.assignment) assignment[k] = to_string(x);
    residual.push_back({{"assignment", assignment}, {"variable", f.variable}, {"factor", f.factor.to_string()}});
  }
  r.body["points"] = points;
  r.body["residual"] = residual;
  return r;
}

inline Report run_holonomy(const Command& cmd) {
  std::ifstream file(cmd.residues_path);
  if (!file) throw UsageError("--residues: cannot open '" + cmd.residues_path + "'");
  json input;
  try {
    input = json::parse(file);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("--residues: invalid JSON: ") + e.what());
  }
  auto [x, file_t] = residues_from_json(input);
  Complex t = cmd.t ? *cmd.t : file_t ? *file_t : Complex(0.5, 0);
  auto res = holonomy(x, {t}, cmd.tol);
  auto tc = traces(res.monodromy);
  auto theta = theta_of(x);
  auto expected = exp_map(theta);
  double local = 0;
  for (std::size_t i = 0; i < 4; ++i) local = std::max(local, std::abs(tc.a[i] - expected[i]));
  json monodromy = json::array();
  for (const auto& m : res.monodromy.A) monodromy.push_back(matrix_json(m));
  Report r;
  r.body = {{"t", complex_json(t)},
            {"tolerance", cmd.tol},
            {"a", complex_list_json(tc.a)},
            {"v", complex_list_json(tc.v)},
            {"fricke_residual", tc.residual},
            {"det_residual", res.det_residual},
            {"product_residual", res.product_residual},
            {"error_estimate", res.error_estimate},
            {"steps", res.steps},
            {"theta", complex_list_json(theta)},
            {"expected_a", complex_list_json(expected)},
            {"local_trace_residual", local},
            {"reordered", res.reordered},
            {"monodromy", monodromy}};
  r.body.update(label_json(classify_approximate(tc.a, tc.v, 1e-6)));
  return r;
}

inline Report run_pvi_params(const Command& cmd) {
  auto r4 = pvi_params(cmd.theta);
  Report r;
  r.body = {{"theta", rationals_json(cmd.theta)}, {"r", rationals_json(r4)}};
  return r;
}

inline Report run_family_check(const Command& cmd) {
  auto ideal = family_constraints(cmd.theta);
  auto gb = buchberger(ideal, MonomialOrder::grevlex(*theta_ring()), cmd.limits);
  std::map<std::string, Rational> at;
  for (std::size_t i = 0; i < 4; ++i) at["th" + std::to_string(i + 1)] = cmd.theta[i];
  json checks = json::array();
  for (const auto& s : cmd.polys) {
    auto p = parse_polynomial(s, theta_ring());
    checks.push_back({{"poly", p.to_string()}, {"member", ideal_member(p, gb)},
                      {"vanishes_at_theta0", p.evaluate(at) == 0}});
  }
  Report r;
  r.body = {{"theta0", rationals_json(cmd.theta)},
            {"ideal", {{"order", order_json(gb.order(), *gb.ring())}, {"generators", polys_json(ideal.generators())}}},
            {"groebner_basis", polys_json(gb.basis())},
            {"checks", checks}};
  return r;
}

/// Runs a parsed command. Library errors become error reports.
inline Report execute(const Command& cmd, std::istream& in = std::cin) {
  Report r;
  try {
    if (cmd.name == "classify") r = run_classify(cmd, in);
    else if (cmd.name == "orbit") r = run_orbit(cmd);
    else if (cmd.name == "fixed-ideal") r = run_fixed_ideal(cmd);
    else if (cmd.name == "fixed-points") r = run_fixed_points(cmd);
    else if (cmd.name == "holonomy") r = run_holonomy(cmd);
    else if (cmd.name == "pvi-params") r = run_pvi_params(cmd);
    else if (cmd.name == "family-check") r = run_family_check(cmd);
    else throw UsageError("unknown subcommand '" + cmd.name + "'");
  } catch (const std::exception& e) {
    r.status = "error";
    r.body = {{"message", e.what()}};
  }
  r.body["command"] = cmd.name;
  r.body["status"] = r.status;
  return r;
}

inline Report usage_error_report(const std::string& message) {
  Report r;
  r.status = "error";
  r.body = {{"status", "error"}, {"message", message}};
  return r;
}

namespace detail {

inline void render_text(std::ostream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& val = it.value();
      std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (val.is_object() || (val.is_array() && !val.empty() && val.front().is_object()))
        render_text(os, val, key);
      else
        os << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace detail

inline std::string emit_report(const Report& r, Format format) {
  if (format == Format::json) return r.body.dump() + "\n";
  std::ostringstream os;
  detail::render_text(os, r.body, "");
  return os.str();
}

/// Whole program: parse, execute, print, return exit code.
inline int main(const std::vector<std::string>& argv, std::istream& in, std::ostream& out) {
  Command cmd;
  try {
    cmd = parse_command(argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const std::exception& e) {
    auto r = usage_error_report(e.what());
    out << emit_report(r, Format::json);
    return r.exit_code();
  }
  auto r = execute(cmd, in);
  out << emit_report(r, cmd.format);
  return r.exit_code();
}

}  // namespace fricke::cli
