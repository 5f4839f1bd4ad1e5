#include "raamkit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "raamkit/combinatorics.hpp"

namespace raamkit {

GammaFamily::GammaFamily(GraphPtr g, std::vector<MatrixC> generators)
    : graph_(std::move(g)), dim_(0), generators_(std::move(generators)) {
  if (!graph_) throw InvalidGraph("null graph");
  if (static_cast<int>(generators_.size()) != graph_->n()) {
    throw DimensionMismatch("expected " + std::to_string(graph_->n()) +
                            " matrices, got " +
                            std::to_string(generators_.size()));
  }
  dim_ = static_cast<int>(generators_.front().rows());
  if (dim_ < 1) throw DimensionMismatch("matrices must be at least 1x1");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& m = generators_[i];
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw DimensionMismatch("matrix " + std::to_string(i + 1) + " is " +
                              std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", expected " +
                              std::to_string(dim_) + "x" +
                              std::to_string(dim_));
    }
  }
}

GammaFamily GammaFamily::zero(GraphPtr g, int dim) {
  const int n = g->n();
  return GammaFamily(std::move(g),
                     std::vector<MatrixC>(n, MatrixC::Zero(dim, dim)));
}

GammaFamily GammaFamily::scalar(GraphPtr g, int dim,
                                std::span<const Complex> t) {
  std::vector<MatrixC> gens;
  for (auto c : t) gens.push_back(c * MatrixC::Identity(dim, dim));
  return GammaFamily(std::move(g), std::move(gens));
}

const MatrixC& GammaFamily::generator(int v) const {
  if (v < 1 || v > static_cast<int>(generators_.size())) {
    throw BadVertex("vertex " + std::to_string(v));
  }
  return generators_[v - 1];
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

CheckReport& CheckReport::param(std::string key, std::string value) {
  parameters.emplace_back(std::move(key), std::move(value));
  return *this;
}

CheckReport& CheckReport::param(std::string key, double value) {
  return param(std::move(key), format_double(value));
}

CheckReport& CheckReport::param(std::string key, long long value) {
  return param(std::move(key), std::to_string(value));
}

std::string CheckReport::get(const std::string& key) const {
  for (const auto& [k, v] : parameters) {
    if (k == key) return v;
  }
  return {};
}

const MatrixC& WordEvaluator::operator()(const MonoidElement& p) {
  if (auto it = words_.find(p); it != words_.end()) return it->second;
  MatrixC value;
  if (p.is_identity()) {
    value = MatrixC::Identity(family_->dim(), family_->dim());
  } else {
    const int v = p.first_vertex();
    const auto head = MonoidElement::generator(p.graph_ptr(), v);
    value = family_->generator(v) * (*this)(left_quotient(head, p));
  }
  return words_.emplace(p, std::move(value)).first->second;
}

const MatrixC& WordEvaluator::range(const MonoidElement& p) {
  if (auto it = ranges_.find(p); it != ranges_.end()) return it->second;
  const MatrixC& t = (*this)(p);
  MatrixC value = t * t.adjoint();
  return ranges_.emplace(p, std::move(value)).first->second;
}

CheckReport validate_family(const GammaFamily& f, double tol) {
  CheckReport rep("validate-family");
  double commutator = 0.0;
  for (auto [i, j] : f.graph().edges()) {
    const MatrixC c = f.generator(i) * f.generator(j) -
                      f.generator(j) * f.generator(i);
    commutator = std::max(commutator, operator_norm(c));
  }
  double excess = 0.0;
  for (int v = 1; v <= f.graph().n(); ++v) {
    excess = std::max(excess, operator_norm(f.generator(v)) - 1.0);
  }
  rep.residual = commutator;
  rep.outcome =
      (commutator <= tol && excess <= tol) ? Outcome::Pass : Outcome::Fail;
  rep.param("max_commutator", commutator)
      .param("max_norm_excess", excess)
      .param("tol", tol);
  return rep;
}

MatrixC evaluate_word(const GammaFamily& f, const MonoidElement& p) {
  if (p.graph_ptr() != f.graph_ptr() && !(p.graph() == f.graph())) {
    throw GraphMismatch("element and family use different graphs");
  }
  MatrixC out = MatrixC::Identity(f.dim(), f.dim());
  for (const auto& s : p.syllables()) {
    for (int e = 0; e < s.exponent; ++e) out = out * f.generator(s.vertex);
  }
  return out;
}

namespace {

struct ZedExpansion {
  std::span<const MonoidElement> elems;
  WordEvaluator& eval;
  std::size_t guard;
  std::size_t visited = 0;
  MatrixC sum;

  // Adds every subset extending the current one with indices ≥ start;
  // supersets of an infinite join contribute nothing and are pruned.
  void extend(std::size_t start, const MonoidElement& join, int size) {
    for (std::size_t i = start; i < elems.size(); ++i) {
      const JoinResult j = lcm(join, elems[i]);
      if (!j.finite()) continue;
      if (++visited > guard) {
        throw GuardExceeded("Z expansion visited more than " +
                            std::to_string(guard) + " subsets");
      }
      const double sign = (size + 1) % 2 == 0 ? 1.0 : -1.0;
      sum += sign * eval.range(j.value());
      extend(i + 1, j.value(), size + 1);
    }
  }
};

}  // namespace

MatrixC zed(const GammaFamily& f, std::span<const MonoidElement> elems,
            std::size_t guard) {
  WordEvaluator eval(f);
  ZedExpansion z{elems, eval, guard, 0,
                 MatrixC::Identity(f.dim(), f.dim())};
  z.extend(0, MonoidElement::identity(f.graph_ptr()), 0);
  return z.sum;
}

double min_eigenvalue(const MatrixC& a) {
  const MatrixC h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const MatrixC& a) {
  const MatrixC h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double operator_norm(const MatrixC& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<MatrixC> svd(a);
  return svd.singularValues()(0);
}

double psd_tolerance(const MatrixC& a, double base) {
  const double row = a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
  return base * static_cast<double>(a.rows()) * std::max(1.0, row);
}

CheckReport psd_check(const MatrixC& a, double tol, std::string name) {
  if (a.rows() != a.cols()) {
    throw NotSquare("psd check on a " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " matrix");
  }
  CheckReport rep(std::move(name));
  const double lmin = min_eigenvalue(a);
  rep.min_eigenvalue = lmin;
  rep.outcome = lmin >= -tol ? Outcome::Pass : Outcome::Fail;
  rep.param("tol", tol);
  return rep;
}

CheckReport brehmer_set_check(const GammaFamily& f,
                              std::span<const MonoidElement> elems,
                              double base_tol) {
  const MatrixC z = zed(f, elems);
  auto rep = psd_check(z, psd_tolerance(z, base_tol), "brehmer-set");
  rep.param("size", static_cast<long long>(elems.size()));
  return rep;
}

std::vector<MonoidElement> generators_of(const GraphPtr& g, VertexSet s) {
  std::vector<MonoidElement> out;
  for (int v : s.members()) out.push_back(MonoidElement::generator(g, v));
  return out;
}

namespace {

void clique_conditions(const GammaFamily& f, const Graph& sub,
                       const std::string& name, int component,
                       double base_tol, std::vector<CheckReport>& out) {
  for (VertexSet w : enumerate_cliques(sub)) {
    const VertexSet nbhd = common_neighborhood(sub, w);
    if (nbhd.empty()) continue;  // maximal clique: Z = I
    const auto gens = generators_of(f.graph_ptr(), nbhd);
    const MatrixC z = zed(f, gens);
    auto rep = psd_check(z, psd_tolerance(z, base_tol), name);
    if (component > 0) rep.param("component", component);
    rep.param("clique", to_string(w))
        .param("neighborhood", to_string(nbhd))
        .param("implied_by_contractivity",
               std::string(nbhd.size() == 1 ? "true" : "false"));
    out.push_back(std::move(rep));
  }
}

}  // namespace

std::vector<CheckReport> weak_brehmer_check(const GammaFamily& f,
                                            double base_tol) {
  std::vector<CheckReport> out;
  const auto comps = complement_components(f.graph());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    clique_conditions(f, f.graph().restricted(comps[c]), "weak-brehmer",
                      static_cast<int>(c + 1), base_tol, out);
  }
  return out;
}

std::vector<CheckReport> brehmer_clique_check(const GammaFamily& f,
                                              double base_tol) {
  std::vector<CheckReport> out;
  clique_conditions(f, f.graph(), "brehmer", 0, base_tol, out);
  return out;
}

MatrixC delta_operator(const GammaFamily& f, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw ValidationError("r must lie in [0,1)");
  WordEvaluator eval(f);
  MatrixC sum = MatrixC::Zero(f.dim(), f.dim());
  // only cliques have a finite join, equal to the product of their generators
  for (VertexSet c : enumerate_cliques(f.graph())) {
    const auto word = c.members();
    const auto join = normal_form(f.graph_ptr(), word);
    const double coeff =
        (c.size() % 2 == 0 ? 1.0 : -1.0) * std::pow(r, 2.0 * c.size());
    sum += coeff * eval.range(join);
  }
  return sum;
}

std::vector<CheckReport> property_p_scan(const GammaFamily& f,
                                         std::span<const double> r_grid,
                                         double base_tol) {
  std::vector<CheckReport> out;
  std::vector<std::pair<double, bool>> results;
  for (double r : r_grid) {
    const MatrixC delta = delta_operator(f, r);
    auto rep = psd_check(delta, psd_tolerance(delta, base_tol), "delta-psd");
    rep.param("r", r);
    results.emplace_back(r, rep.passed());
    out.push_back(std::move(rep));
  }
  std::sort(results.begin(), results.end());
  // failures should form a prefix of the ascending grid
  std::size_t prefix = 0;
  while (prefix < results.size() && !results[prefix].second) ++prefix;
  const bool monotone =
      std::all_of(results.begin() + static_cast<std::ptrdiff_t>(prefix),
                  results.end(), [](const auto& x) { return x.second; });
  CheckReport summary("property-p-summary");
  summary.outcome =
      (monotone && prefix < results.size()) ? Outcome::Pass : Outcome::Fail;
  summary.param("grid_points", static_cast<long long>(results.size()))
      .param("failing_prefix", static_cast<long long>(prefix))
      .param("monotone", std::string(monotone ? "true" : "false"));
  if (prefix > 0) {
    summary.param("rho_estimate", results[prefix - 1].first);
  } else {
    summary.param("rho_estimate", std::string("none"));
  }
  out.push_back(std::move(summary));
  return out;
}

CheckReport key_estimate_check(const GammaFamily& f,
                               std::span<const MonoidElement> elems,
                               double tol) {
  CheckReport rep("key-estimate");
  const auto best = max_joinable_subset(elems);
  const int c = best.size;
  WordEvaluator eval(f);
  MatrixC lhs = static_cast<double>(c) * MatrixC::Identity(f.dim(), f.dim());
  for (const auto& p : elems) lhs -= eval.range(p);
  MatrixC rhs = MatrixC::Zero(f.dim(), f.dim());
  for (int k = 1; k <= c; ++k) {
    const auto level = finite_joins(level_joins(elems, k));
    rhs += zed(f, level);
  }
  const double residual = operator_norm(lhs - rhs);
  rep.residual = residual;
  rep.outcome = residual <= tol ? Outcome::Pass : Outcome::Fail;
  rep.param("c_F", c)
      .param("size", static_cast<long long>(elems.size()))
      .param("tol", tol);
  return rep;
}

}  // namespace raamkit
