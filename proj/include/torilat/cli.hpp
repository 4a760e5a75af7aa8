#pragma once

// Batch front end: `torilat <command> <problem.json> [options]`.
// Result documents go to stdout (or --out), a short human summary to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torilat/torilat.hpp"

namespace torilat::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kValidation = 2, kCap = 3, kInternal = 4 };

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"parameterize", "degenerate-lattice", "ci-check", "torus-ideal",
                                              "subgroup-info", "code",  "hilbert-table",      "point-ideal"};
  return names;
}

struct Options {
  std::string command;
  std::string problem_path;
  std::optional<std::string> alpha;
  bool min_distance = false;
  Int cap = kDefaultDistanceCap;
  std::optional<std::string> out_path;
};

namespace parse {

inline Int integer(const Json& j, const std::string& what) {
  require(j.is_number_integer(), what + ": expected an integer");
  return j.get<Int>();
}

inline IntVector vector(const Json& j, const std::string& what) {
  require(j.is_array(), what + ": expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

/// A list of equal-length integer vectors.
inline std::vector<IntVector> rows(const Json& j, const std::string& what, std::optional<std::size_t> width = {}) {
  require(j.is_array(), what + ": expected an array of integer arrays");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(vector(j[i], what + "[" + std::to_string(i) + "]"));
    if (!width) width = out.back().size();
    require(out.back().size() == *width, what + ": rows must all have length " + std::to_string(*width));
  }
  return out;
}

inline const Json& field(const Json& j, const std::string& key, const std::string& context) {
  require(j.is_object() && j.contains(key), context + ": missing \"" + key + "\"");
  return j.at(key);
}

inline ToricSetup setup(const Json& problem) {
  const Json& variety = field(problem, "variety", "problem");
  const Int q = integer(field(field(problem, "field", "problem"), "q", "field"), "field.q");
  std::optional<std::vector<Cone>> cones;
  if (variety.contains("max_cones")) {
    cones.emplace();
    for (const auto& c : rows(variety.at("max_cones"), "variety.max_cones")) {
      Cone cone;
      for (Int idx : c) {
        require(idx >= 1, "variety.max_cones: ray indices are 1-based");
        cone.push_back(static_cast<std::size_t>(idx - 1));
      }
      cones->push_back(std::move(cone));
    }
  }
  const bool has_rays = variety.contains("rays"), has_beta = variety.contains("beta");
  require(has_rays != has_beta, "variety: give exactly one of \"rays\" or \"beta\"");
  if (has_rays) return setup_from_rays(rows(variety.at("rays"), "variety.rays"), q, std::move(cones));
  auto b = rows(variety.at("beta"), "variety.beta");
  require(!b.empty(), "variety.beta: empty degree matrix");
  return setup_from_beta(IntMatrix::from_rows(b), q, std::move(cones));
}

/// Basis vectors listed one per entry, returned as the columns of a matrix.
inline IntMatrix lattice(const Json& problem, std::size_t r) {
  return IntMatrix::from_columns(rows(field(problem, "lattice", "problem"), "lattice", r), r);
}

inline Int subgroup_order(const Json& problem, const ToricSetup& s) {
  return problem.contains("h") ? integer(problem.at("h"), "h") : s.field().unit_order();
}

inline Degree degree_from_string(const std::string& text, const ToricSetup& s) {
  IntVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(item, &used));
      require(item.find_first_not_of(" \t", used) == std::string::npos, "");
    } catch (const std::exception&) {
      throw ValidationError("--alpha: cannot parse \"" + text + "\" as comma-separated integers");
    }
  }
  return make_degree(std::move(v), s);
}

inline Degree degree(const Json& j, const ToricSetup& s) {
  if (j.is_object())
    return make_degree(vector(field(j, "free", "alpha"), "alpha.free"), s,
                       j.contains("torsion") ? vector(j.at("torsion"), "alpha.torsion") : IntVector{});
  return make_degree(vector(j, "alpha"), s);
}

inline Degree alpha(const Json& problem, const Options& opt, const ToricSetup& s) {
  if (opt.alpha) return degree_from_string(*opt.alpha, s);
  require(problem.contains("alpha"), "no degree given: pass --alpha or set \"alpha\" in the problem");
  return degree(problem.at("alpha"), s);
}

/// Inclusive range [from, to], stepping by +1 or -1.
inline IntVector range(const Json& j, const std::string& what) {
  IntVector ends = vector(j, what);
  require(ends.size() == 2, what + ": expected [from, to]");
  IntVector out;
  const Int step = ends[0] <= ends[1] ? 1 : -1;
  for (Int x = ends[0];; x += step) {
    out.push_back(x);
    if (x == ends[1]) break;
  }
  return out;
}

}  // namespace parse

namespace emit {

inline Json matrix(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m.row_list()) out.push_back(row);
  return out;
}

/// Basis columns listed one per entry.
inline Json basis(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& c : m.column_list()) out.push_back(c);
  return out;
}

inline Json degree(const Degree& d) { return Json{{"free", d.free}, {"torsion", d.torsion}}; }

inline Json binomials(const std::vector<Binomial>& bs) {
  Json out = Json::array();
  for (const auto& b : bs) out.push_back(Json{{"m", b.m}, {"scale", b.scale}, {"text", b.to_string()}});
  return out;
}

inline Json point(const TorusPoint& p) { return Json{{"canon", p.canon}, {"rep", p.rep}}; }

inline Json setup(const ToricSetup& s) {
  Json out{{"q", s.q()}, {"eta", s.field().generator()}, {"phi", matrix(s.phi())}, {"beta", matrix(s.beta())}};
  Json tors = Json::array();
  for (const auto& t : s.torsion()) tors.push_back(Json{{"coeffs", t.coeffs}, {"modulus", t.modulus}});
  out["torsion"] = std::move(tors);
  return out;
}

}  // namespace emit

/// Pretty printer that keeps arrays of scalars on one line.
inline void write(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' '), inner(static_cast<std::size_t>(indent + 2), ' ');
  auto scalar_array = [](const Json& a) {
    return std::none_of(a.begin(), a.end(), [](const Json& x) { return x.is_structured(); });
  };
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << inner << Json(it.key()).dump() << ": ";
      write(os, it.value(), indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << '}';
  } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << inner;
      write(os, j[i], indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << ']';
  } else if (j.is_array()) {
    os << '[';
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
    os << ']';
  } else {
    os << j.dump();
  }
}

inline std::string to_text(const Json& j) {
  std::ostringstream os;
  write(os, j);
  os << '\n';
  return os.str();
}

struct Outcome {
  Json doc;
  std::string summary;
};

/// Chooses the point set Y described by the problem: a degenerate torus ("a", "h"),
/// the closure of explicit points ("points"), the torus zero set of a lattice
/// ("lattice"), or the whole torus.
inline std::pair<PointSet, Json> point_source(const Json& problem, const ToricSetup& s) {
  const std::size_t r = s.num_rays();
  if (problem.contains("a")) {
    Int h = parse::subgroup_order(problem, s);
    auto y = degenerate_torus(parse::vector(problem.at("a"), "a"), h, s);
    Json src{{"kind", "degenerate-torus"}, {"a", problem.at("a")}, {"h", h}, {"d", y.d}};
    src["predicted_order"] = y.predicted_order ? Json(*y.predicted_order) : Json(nullptr);
    return {std::move(y.points), std::move(src)};
  }
  if (problem.contains("points")) {
    std::vector<TorusPoint> gens;
    for (auto& rep : parse::rows(problem.at("points"), "points", r)) gens.push_back(make_point(std::move(rep), s));
    return {subgroup_closure(gens, s), Json{{"kind", "closure"}, {"generators", problem.at("points")}}};
  }
  if (problem.contains("lattice")) {
    IntMatrix l = parse::lattice(problem, r);
    return {zero_set_in_torus(l, s), Json{{"kind", "zero-set"}, {"lattice", emit::basis(l)}}};
  }
  return {all_torus_points(s), Json{{"kind", "torus"}}};
}

inline Outcome cmd_parameterize(const Json& problem, const ToricSetup& s) {
  IntMatrix l = parse::lattice(problem, s.num_rays());
  IntMatrix a = parameterize_zero_set(l, s);
  PointSet y = points_from_parameterization(a, s.field().unit_order(), s);
  PointSet z = zero_set_in_torus(l, s);
  ensure(y == z, "parameterized points differ from the zero set of the lattice");
  Json doc{{"A", emit::matrix(a)}, {"points", y.size()}, {"matches_zero_set", true}};
  return {std::move(doc), "A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", " +
                              std::to_string(y.size()) + " torus points in the zero set"};
}

inline Outcome cmd_degenerate_lattice(const Json& problem, const ToricSetup& s) {
  IntVector a = parse::vector(parse::field(problem, "a", "problem"), "a");
  Int h = parse::subgroup_order(problem, s);
  DegenerateLattice dl = degenerate_lattice(a, h, s);
  DegenerateTorus y = degenerate_torus(a, h, s);
  bool ci = complete_intersection(dl.lattice, s);
  Json gens = emit::binomials(dl.generators.binomials);
  Json doc{{"h", h},
           {"d", dl.d},
           {"D", emit::matrix(dl.D)},
           {"toric_basis", emit::basis(dl.toric_basis)},
           {"lattice", emit::basis(dl.lattice)},
           {"generators", gens},
           {"complete_intersection", ci},
           {"order", y.points.size()}};
  doc["predicted_order"] = y.predicted_order ? Json(*y.predicted_order) : Json(nullptr);
  std::string summary = "d = (";
  for (std::size_t i = 0; i < dl.d.size(); ++i) summary += (i ? "," : "") + std::to_string(dl.d[i]);
  summary += "), |Y| = " + std::to_string(y.points.size()) + ", generators:";
  for (const auto& b : dl.generators.binomials) summary += " [" + b.to_string() + "]";
  summary += ci ? ", complete intersection" : ", not a complete intersection";
  return {std::move(doc), std::move(summary)};
}

/// Γ is read from "matrix" (row-major) or from "lattice" (basis vectors as columns).
inline Outcome cmd_ci_check(const Json& problem, const std::optional<ToricSetup>& s) {
  IntMatrix g;
  if (problem.contains("matrix")) {
    g = IntMatrix::from_rows(parse::rows(problem.at("matrix"), "matrix"));
  } else {
    auto basis = parse::rows(parse::field(problem, "lattice", "problem"), "lattice");
    require(!basis.empty(), "lattice: empty basis");
    g = IntMatrix::from_columns(basis);
  }
  const bool mixed = is_mixed(g), dominating = is_dominating(g);
  Json doc{{"matrix", emit::matrix(g)}, {"mixed", mixed}, {"dominating", dominating},
           {"mixed_dominating", mixed && dominating}};
  std::string summary = std::string(mixed ? "mixed" : "not mixed") + ", " + (dominating ? "dominating" : "not dominating");
  if (s && g.rows() == s->num_rays() && is_homogeneous(g, *s)) {
    bool ci = complete_intersection(g, *s);
    doc["complete_intersection"] = ci;
    summary += ci ? "; the lattice ideal is a complete intersection" : "; the lattice ideal is not a complete intersection";
  }
  return {std::move(doc), std::move(summary)};
}

inline Outcome cmd_torus_ideal(const ToricSetup& s) {
  auto ti = torus_ideal(s);
  std::string summary = "I(T_X) generators:";
  for (const auto& b : ti.binomials) summary += " [" + b.to_string() + "]";
  return {Json{{"lattice", emit::basis(ti.basis)}, {"generators", emit::binomials(ti.binomials)}}, summary};
}

inline Outcome cmd_subgroup_info(const Json& problem, const ToricSetup& s) {
  auto [y, source] = point_source(problem, s);
  GroupStructure g = group_structure(y, s);
  ensure(points_from_parameterization(g.Q, g.h, s) == y, "parameterization does not reproduce the subgroup");
  Json gens = Json::array();
  for (const auto& p : g.generators) gens.push_back(emit::point(p));
  IntMatrix lat = vanishing_lattice(y, s);
  Json doc{{"source", std::move(source)},
           {"order", y.size()},
           {"invariant_factors", g.orders},
           {"generators", std::move(gens)},
           {"Q", emit::matrix(g.Q)},
           {"h", g.h},
           {"vanishing_lattice", emit::basis(lat)}};
  std::string summary = "|Y| = " + std::to_string(y.size()) + ", invariant factors [";
  for (std::size_t i = 0; i < g.orders.size(); ++i) summary += (i ? "," : "") + std::to_string(g.orders[i]);
  return {std::move(doc), summary + "], h = " + std::to_string(g.h)};
}

inline Outcome cmd_code(const Json& problem, const Options& opt, const ToricSetup& s) {
  Degree alpha = parse::alpha(problem, opt, s);
  auto [y, source] = point_source(problem, s);
  CodeSummary c = code_parameters(y, alpha, s, opt.min_distance, opt.cap);
  Json doc{{"source", std::move(source)}, {"alpha", emit::degree(alpha)}, {"N", c.N}, {"k", c.k}};
  doc["d"] = c.d ? Json(*c.d) : Json(nullptr);
  doc["F0"] = c.F0;
  if (!c.notice.empty()) doc["notice"] = c.notice;
  std::string summary = "alpha = " + alpha.to_string() + ": N = " + std::to_string(c.N) + ", k = " + std::to_string(c.k);
  if (c.d) summary += ", d = " + std::to_string(*c.d);
  if (!c.notice.empty()) summary += " (" + c.notice + ")";
  return {std::move(doc), std::move(summary)};
}

inline Outcome cmd_hilbert_table(const Json& problem, const ToricSetup& s) {
  const Json& ranges = parse::field(problem, "ranges", "problem");
  IntVector first = parse::range(parse::field(ranges, "first", "ranges"), "ranges.first");
  IntVector second = parse::range(parse::field(ranges, "second", "ranges"), "ranges.second");
  auto [y, source] = point_source(problem, s);
  auto grid = hilbert_table(y, first, second, s);
  Json doc{{"source", std::move(source)}, {"order", y.size()}, {"first", first}, {"second", second}, {"grid", grid}};
  std::ostringstream os;
  os << "H_Y over " << second.size() << "x" << first.size() << " degrees, |Y| = " << y.size();
  for (const auto& row : grid) {
    os << "\n ";
    for (Int v : row) os << ' ' << (v < 10 ? "0" : "") << v;
  }
  return {std::move(doc), os.str()};
}

inline Outcome cmd_point_ideal(const Json& problem, const ToricSetup& s) {
  TorusPoint p = make_point(parse::vector(parse::field(problem, "point", "problem"), "point"), s);
  require(p.rep.size() == s.num_rays(), "point: expected " + std::to_string(s.num_rays()) + " exponents");
  auto gens = point_ideal(p, s);
  for (const auto& b : gens) ensure(evaluate_binomial(b, p, s) == 0, "point-ideal generator does not vanish at P");
  std::string summary = "I([P]) generators:";
  for (const auto& b : gens) summary += " [" + b.to_string() + "]";
  return {Json{{"point", emit::point(p)}, {"generators", emit::binomials(gens)}}, summary};
}

inline Json load_spec(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open problem file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("problem file " + path + " is not valid JSON: " + e.what());
  }
}

inline Outcome dispatch(const Options& opt, const Json& problem, const std::optional<ToricSetup>& s) {
  if (opt.command == "ci-check") return cmd_ci_check(problem, s);
  if (opt.command == "parameterize") return cmd_parameterize(problem, *s);
  if (opt.command == "degenerate-lattice") return cmd_degenerate_lattice(problem, *s);
  if (opt.command == "torus-ideal") return cmd_torus_ideal(*s);
  if (opt.command == "subgroup-info") return cmd_subgroup_info(problem, *s);
  if (opt.command == "code") return cmd_code(problem, opt, *s);
  if (opt.command == "hilbert-table") return cmd_hilbert_table(problem, *s);
  return cmd_point_ideal(problem, *s);
}

/// Full result document for a parsed invocation; throws torilat::Error.
inline Json execute(const Options& opt, std::ostream& err) {
  Json problem = load_spec(opt.problem_path);
  require(problem.is_object(), "problem file must contain a JSON object");
  std::optional<ToricSetup> s;
  if (opt.command != "ci-check" || problem.contains("variety")) s = parse::setup(problem);
  if (s && !torsion_orders_not_coprime(*s).empty())
    err << "warning: class group torsion order is not coprime to q\n";

  Outcome o = dispatch(opt, problem, s);
  Json doc{{"command", opt.command}};
  if (s) doc["setup"] = emit::setup(*s);
  doc["result"] = std::move(o.doc);
  err << opt.command << ": " << o.summary << '\n';
  return doc;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Lattice ideals, degenerate tori and evaluation codes on toric varieties over F_q", "torilat"};
  Options opt;
  app.add_option("command", opt.command, "one of: parameterize, degenerate-lattice, ci-check, torus-ideal, "
                                         "subgroup-info, code, hilbert-table, point-ideal")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("problem", opt.problem_path, "problem description (JSON)")->required();
  app.add_option("--alpha", opt.alpha, "degree, comma-separated free coordinates, e.g. 5,10");
  app.add_flag("--min-distance", opt.min_distance, "compute the minimum distance (code)");
  app.add_option("--cap", opt.cap, "largest number of projective messages for --min-distance")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out_path, "write the result document here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    Json doc = execute(opt, err);
    std::string text = to_text(doc);
    if (opt.out_path) {
      std::ofstream f(*opt.out_path, std::ios::binary);
      require(f.good(), "cannot write " + *opt.out_path);
      f << text;
    } else {
      out << text;
    }
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCap;
  } catch (const OverflowError& e) {
    err << "error: integer overflow: " << e.what() << '\n';
    return kInternal;
  } catch (const InvariantError& e) {
    err << "error: internal invariant failed: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace torilat::cli
