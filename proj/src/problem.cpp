#include "raamkit/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "raamkit/combinatorics.hpp"

namespace raamkit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing");
  return *it;
}

long long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<long long>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

MatrixC real_grid(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  MatrixC out;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array()) field_error(rp, "expected an array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      out = MatrixC::Zero(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      field_error(rp, "ragged row");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(i, c) = as_double(row[static_cast<std::size_t>(c)],
                            rp + "[" + std::to_string(c) + "]");
    }
  }
  if (rows == 0) out = MatrixC(0, 0);
  return out;
}

}  // namespace

Graph graph_from_json(const json& j) {
  const long long n = as_int(require(j, "n", "graph"), "graph.n");
  const json& edges = require(j, "edges", "graph");
  if (!edges.is_array()) field_error("graph.edges", "expected an array");
  std::vector<std::pair<int, int>> e;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "graph.edges[" + std::to_string(k) + "]";
    if (!edges[k].is_array() || edges[k].size() != 2) {
      field_error(path, "expected a pair [i, j]");
    }
    e.emplace_back(static_cast<int>(as_int(edges[k][0], path + "[0]")),
                   static_cast<int>(as_int(edges[k][1], path + "[1]")));
  }
  try {
    return Graph(static_cast<int>(n), e);
  } catch (const InvalidGraph& err) {
    throw ValidationError(std::string("graph: ") + err.what());
  }
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  return json{{"n", g.n()}, {"edges", edges}};
}

GammaFamily family_from_json(GraphPtr g, const json& j) {
  const long long dim = as_int(require(j, "dim", "family"), "family.dim");
  if (dim < 1) throw ValidationError("family.dim must be >= 1");
  const json& mats = require(j, "matrices", "family");
  if (!mats.is_array()) field_error("family.matrices", "expected an array");
  if (static_cast<int>(mats.size()) != g->n()) {
    throw ValidationError("family has " + std::to_string(mats.size()) +
                          " matrices for a graph on " + std::to_string(g->n()) +
                          " vertices");
  }
  std::vector<MatrixC> gens;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const std::string path = "family.matrices[" + std::to_string(k) + "]";
    MatrixC m = real_grid(require(mats[k], "re", path), path + ".re");
    if (auto it = mats[k].find("im"); it != mats[k].end()) {
      const MatrixC im = real_grid(*it, path + ".im");
      if (im.rows() != m.rows() || im.cols() != m.cols()) {
        throw ValidationError(path + ": re and im shapes differ");
      }
      m += Complex(0.0, 1.0) * im;
    }
    if (m.rows() != dim || m.cols() != dim) {
      throw ValidationError(path + " is not " + std::to_string(dim) + "x" +
                            std::to_string(dim));
    }
    if (!m.allFinite()) throw ValidationError(path + " has non-finite entries");
    gens.push_back(std::move(m));
  }
  return GammaFamily(std::move(g), std::move(gens));
}

json family_to_json(const GammaFamily& f) {
  json mats = json::array();
  for (const auto& m : f.generators()) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json rr = json::array();
      json ri = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        rr.push_back(m(i, c).real());
        ri.push_back(m(i, c).imag());
      }
      re.push_back(rr);
      im.push_back(ri);
    }
    mats.push_back({{"re", re}, {"im", im}});
  }
  return json{{"dim", f.dim()}, {"matrices", mats}};
}

ProblemSpec parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!root.is_object()) field_error("<root>", "expected an object");

  ProblemSpec spec;
  spec.graph = make_graph(graph_from_json(require(root, "graph", "<root>")));
  if (auto it = root.find("family"); it != root.end() && !it->is_null()) {
    spec.family = family_from_json(spec.graph, *it);
  }
  if (auto it = root.find("options"); it != root.end()) {
    const json& o = *it;
    if (!o.is_object()) field_error("options", "expected an object");
    if (o.contains("truncation")) {
      const auto m = as_int(o["truncation"], "options.truncation");
      if (m < 0) throw ValidationError("options.truncation must be >= 0");
      spec.options.truncation = static_cast<int>(m);
    }
    if (o.contains("r_grid")) {
      const json& g = o["r_grid"];
      if (!g.is_array() || g.empty()) {
        field_error("options.r_grid", "expected a non-empty array");
      }
      spec.options.r_grid.clear();
      for (std::size_t k = 0; k < g.size(); ++k) {
        const double r = as_double(g[k], "options.r_grid[" + std::to_string(k) + "]");
        if (!(r >= 0.0 && r < 1.0)) {
          throw ValidationError("options.r_grid[" + std::to_string(k) +
                                "] = " + format_double(r) + " is outside [0,1)");
        }
        spec.options.r_grid.push_back(r);
      }
    }
    if (o.contains("tol")) {
      spec.options.tol = as_double(o["tol"], "options.tol");
      if (!(spec.options.tol > 0.0)) throw ValidationError("options.tol must be > 0");
    }
    if (o.contains("guard")) {
      const auto g = as_int(o["guard"], "options.guard");
      if (g < 1) throw ValidationError("options.guard must be >= 1");
      spec.options.guard = static_cast<std::size_t>(g);
    }
  }
  if (auto it = root.find("vn_terms"); it != root.end()) {
    if (!it->is_array()) field_error("vn_terms", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = "vn_terms[" + std::to_string(k) + "]";
      const json& t = (*it)[k];
      Complex coeff{1.0, 0.0};
      if (t.contains("re")) coeff.real(as_double(t["re"], path + ".re"));
      if (t.contains("im")) coeff.imag(as_double(t["im"], path + ".im"));
      const json& p = require(t, "p", path);
      const json& q = require(t, "q", path);
      if (!p.is_string() || !q.is_string()) field_error(path, "p and q must be strings");
      try {
        spec.vn_terms.push_back({coeff, parse_element(spec.graph, p.get<std::string>()),
                                 parse_element(spec.graph, q.get<std::string>())});
      } catch (const BadVertex& e) {
        throw ValidationError(path + ": " + e.what());
      }
    }
  }
  return spec;
}

ProblemSpec parse_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::optional<std::size_t> guard_from_env() {
  const char* raw = std::getenv("RAAMKIT_GUARD");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) {
    throw ValidationError(std::string("RAAMKIT_GUARD must be a positive integer, got '") +
                          raw + "'");
  }
  return static_cast<std::size_t>(v);
}

Suite parse_suite(std::string_view name) {
  static constexpr std::pair<std::string_view, Suite> kNames[] = {
      {"graph", Suite::Graph},         {"identities", Suite::Identities},
      {"brehmer", Suite::Brehmer},     {"property-p", Suite::PropertyP},
      {"cauchy", Suite::Cauchy},       {"poisson", Suite::Poisson},
      {"fixtures", Suite::Fixtures},   {"all", Suite::All}};
  for (auto [n, s] : kNames) {
    if (n == name) return s;
  }
  throw ValidationError("unknown suite '" + std::string(name) + "'");
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Graph: return "graph";
    case Suite::Identities: return "identities";
    case Suite::Brehmer: return "brehmer";
    case Suite::PropertyP: return "property-p";
    case Suite::Cauchy: return "cauchy";
    case Suite::Poisson: return "poisson";
    case Suite::Fixtures: return "fixtures";
    case Suite::All: return "all";
  }
  return "?";
}

int RunReport::exit_code() const {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.outcome == Outcome::Fail) return 1;
    if (r.outcome == Outcome::Inconclusive) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

ordered_json to_json(const CheckReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["outcome"] = to_string(r.outcome);
  j["passed"] = r.passed();
  if (r.min_eigenvalue) j["min_eigenvalue"] = format_double(*r.min_eigenvalue);
  if (r.residual) j["residual"] = format_double(*r.residual);
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  return j;
}

ordered_json RunReport::to_json() const {
  ordered_json j;
  j["suite"] = suite;
  ordered_json list = ordered_json::array();
  std::size_t passed = 0, failed = 0, inconclusive = 0;
  for (const auto& r : reports) {
    list.push_back(raamkit::to_json(r));
    switch (r.outcome) {
      case Outcome::Pass: ++passed; break;
      case Outcome::Fail: ++failed; break;
      case Outcome::Inconclusive: ++inconclusive; break;
    }
  }
  j["reports"] = list;
  j["summary"] = {{"total", reports.size()},
                  {"passed", passed},
                  {"failed", failed},
                  {"inconclusive", inconclusive},
                  {"exit_code", exit_code()}};
  if (!data.empty()) j["data"] = data;
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << '[' << to_string(r.outcome) << "] " << r.name;
    if (r.min_eigenvalue) os << " min_eig=" << format_double(*r.min_eigenvalue);
    if (r.residual) os << " residual=" << format_double(*r.residual);
    for (const auto& [k, v] : r.parameters) os << ' ' << k << '=' << v;
    os << '\n';
  }
  os << suite << ": " << reports.size() << " checks, exit code " << exit_code()
     << '\n';
  return os.str();
}

namespace {

VectorC random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  VectorC h(d);
  for (int i = 0; i < d; ++i) h(i) = Complex(n01(rng), n01(rng));
  return h / h.norm();
}

// Random contractions with no commutation structure.
GammaFamily random_family(const GraphPtr& g, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  std::vector<MatrixC> gens;
  for (int v = 1; v <= g->n(); ++v) {
    MatrixC m(d, d);
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < d; ++c) m(i, c) = Complex(n01(rng), n01(rng));
    gens.push_back(m / (operator_norm(m) * 1.01));
  }
  return GammaFamily(g, std::move(gens));
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

const GammaFamily& need_family(const ProblemSpec& spec, Suite s) {
  if (!spec.family) {
    throw ValidationError(std::string("suite '") + to_string(s) +
                          "' needs a family in the problem file");
  }
  return *spec.family;
}

CheckReport failure(std::string name, const std::string& why) {
  CheckReport r(std::move(name));
  r.outcome = Outcome::Fail;
  r.param("error", why);
  return r;
}

void run_graph(const ProblemSpec& spec, RunReport& out) {
  const Graph& g = *spec.graph;
  const auto comps = complement_components(g);
  const int omega = clique_number(g);
  ordered_json comp_json = ordered_json::array();
  int omega_sum = 0;
  for (auto c : comps) {
    comp_json.push_back(c.members());
    omega_sum += clique_number(g.restricted(c));
  }
  ordered_json cliques = ordered_json::array();
  for (auto c : enumerate_cliques(g)) cliques.push_back(c.members());
  out.data["n"] = g.n();
  out.data["edges"] = graph_to_json(g)["edges"];
  out.data["complement_components"] = comp_json;
  out.data["clique_number"] = omega;
  out.data["cliques"] = cliques;

  CheckReport rep("component-clique-sum");
  rep.outcome = omega_sum == omega ? Outcome::Pass : Outcome::Fail;
  rep.param("omega", omega).param("component_sum", omega_sum);
  out.reports.push_back(std::move(rep));
}

void run_identities(const ProblemSpec& spec, RunReport& out) {
  ordered_json table = ordered_json::array();
  for (int u = 1; u <= 6; ++u) {
    const BigInt n_u = alternating_cover_sum(u);
    table.push_back({{"u", u}, {"n_U", n_u.str()}});
    CheckReport rep("alternating-cover-sum");
    rep.outcome = n_u == (u == 1 ? -1 : 0) ? Outcome::Pass : Outcome::Fail;
    rep.param("u", u).param("value", n_u.str());
    out.reports.push_back(std::move(rep));

    bool agree = true;
    long long cases = 0;
    for (int k = 1; k <= u; ++k) {
      const auto top = static_cast<int>(binomial(u, k));
      for (int m = 1; m <= top; ++m, ++cases) {
        agree = agree && cover_count_enum(u, m, k) == cover_count_formula(u, m, k);
      }
    }
    CheckReport agreement("cover-count-agreement");
    agreement.outcome = agree ? Outcome::Pass : Outcome::Fail;
    agreement.param("u", u).param("cases", cases);
    out.reports.push_back(std::move(agreement));
  }
  out.data["n_U"] = table;

  const int omega = clique_number(*spec.graph);
  for (int m = 1; m <= std::min(3, spec.options.truncation); ++m) {
    CheckReport rep("counting-lemma");
    try {
      const auto level = enumerate_norm_level(spec.graph, m, spec.options.guard);
      const auto best = max_joinable_subset(level, spec.options.guard);
      const auto expected = static_cast<long long>(binomial(omega + m - 1, m));
      rep.outcome = best.size == expected ? Outcome::Pass : Outcome::Fail;
      rep.param("m", m).param("c_F", best.size).param("expected", expected);
    } catch (const GuardExceeded& e) {
      rep = failure("counting-lemma", e.what());
      rep.param("m", m);
    }
    out.reports.push_back(std::move(rep));
  }

  const auto gens = generators_of(spec.graph, spec.graph->vertices());
  if (spec.family) {
    out.reports.push_back(key_estimate_check(*spec.family, gens));
  } else {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 3; ++t) {
      auto rep = key_estimate_check(random_family(spec.graph, 3, rng), gens);
      rep.param("family", "random#" + std::to_string(t));
      out.reports.push_back(std::move(rep));
    }
  }
}

void run_brehmer(const GammaFamily& f, double tol, RunReport& out) {
  out.reports.push_back(validate_family(f));
  append(out.reports, weak_brehmer_check(f, tol));
  append(out.reports, brehmer_clique_check(f, tol));
}

void run_cauchy(const GammaFamily& f, const ProblemOptions& o, int level,
                RunReport& out) {
  const TruncatedFock fk(f.graph_ptr(), level, o.guard);
  std::mt19937_64 rng(99);
  for (double r : o.r_grid) {
    for (int t = 0; t < 10; ++t) {
      out.reports.push_back(cauchy_bound_check(f, r, random_unit(f.dim(), rng), fk));
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(fk.size(), 5); ++i) {
      const VectorC h = random_unit(f.dim(), rng);
      const VectorC k = random_unit(f.dim(), rng);
      out.reports.push_back(cauchy_pairing_check(f, r, fk.at(i), h, k, fk));
    }
  }
  for (int m = 1; m <= std::min(3, level); ++m) {
    out.reports.push_back(level_sum_check(f, m, o.tol));
  }
}

void run_poisson(const GammaFamily& f, const ProblemOptions& o, int level,
                 const std::vector<VnTerm>& vn_terms, RunReport& out) {
  const TruncatedFock fk(f.graph_ptr(), level, o.guard);
  const auto one = MonoidElement::identity(f.graph_ptr());
  std::vector<MonoidElement> small{one};
  for (const auto& g : generators_of(f.graph_ptr(), f.graph().vertices())) {
    if (level >= 1) small.push_back(g);
  }
  for (double r : o.r_grid) {
    PoissonKernelMatrix kernel;
    try {
      kernel = poisson_kernel(f, r, fk, o.tol);
    } catch (const NotPropertyP& e) {
      auto rep = failure("poisson-kernel", e.what());
      rep.param("r", r);
      out.reports.push_back(std::move(rep));
      continue;
    }
    out.reports.push_back(unit_resolution_check(f, r, level, 1e-10));
    for (const auto& p : small) {
      for (const auto& q : small) {
        out.reports.push_back(poisson_reproduce_check(f, kernel, fk, p, q, 1e-10));
      }
    }
  }
  std::vector<VnTerm> terms = vn_terms;
  if (terms.empty()) {
    for (const auto& g : generators_of(f.graph_ptr(), f.graph().vertices())) {
      out.reports.push_back(vn_certificate(f, std::vector<VnTerm>{{1.0, g, one}}, level));
    }
  } else {
    out.reports.push_back(vn_certificate(f, terms, level));
  }
}

void run_fixtures(const ProblemSpec& spec, RunReport& out) {
  const int fixture_level = std::min(spec.options.truncation, 2);
  const GammaFamily f = truncated_shift_family(spec.graph, fixture_level, 1.0,
                                               spec.options.guard);
  out.data["fixture_level"] = fixture_level;
  out.data["fixture_dim"] = f.dim();
  run_brehmer(f, spec.options.tol, out);
  append(out.reports, property_p_scan(f, spec.options.r_grid, spec.options.tol));
  run_cauchy(f, spec.options, fixture_level + 1, out);
  ProblemOptions o = spec.options;
  run_poisson(f, o, fixture_level + 1, {}, out);
  if (spec.options.truncation >= 1) {
    const TruncatedFock fk(spec.graph, std::min(spec.options.truncation, 4),
                           spec.options.guard);
    append(out.reports, nica_covariance_check(fk));
  }
}

}  // namespace

RunReport run_report(const ProblemSpec& spec, Suite suite) {
  RunReport out;
  out.suite = to_string(suite);
  const auto& o = spec.options;
  switch (suite) {
    case Suite::Graph:
      run_graph(spec, out);
      break;
    case Suite::Identities:
      run_identities(spec, out);
      break;
    case Suite::Brehmer:
      run_brehmer(need_family(spec, suite), o.tol, out);
      break;
    case Suite::PropertyP:
      append(out.reports, property_p_scan(need_family(spec, suite), o.r_grid, o.tol));
      break;
    case Suite::Cauchy:
      run_cauchy(need_family(spec, suite), o, o.truncation, out);
      break;
    case Suite::Poisson:
      run_poisson(need_family(spec, suite), o, o.truncation, spec.vn_terms, out);
      break;
    case Suite::Fixtures:
      run_fixtures(spec, out);
      break;
    case Suite::All: {
      std::vector<Suite> parts{Suite::Graph, Suite::Identities};
      if (spec.family) {
        parts.insert(parts.end(),
                     {Suite::Brehmer, Suite::PropertyP, Suite::Cauchy, Suite::Poisson});
      }
      parts.push_back(Suite::Fixtures);
      for (Suite s : parts) {
        RunReport sub = run_report(spec, s);
        append(out.reports, std::move(sub.reports));
        if (!sub.data.empty()) out.data[to_string(s)] = sub.data;
      }
      break;
    }
  }
  return out;
}

}  // namespace raamkit
