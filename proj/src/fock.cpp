#include "raamkit/fock.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "raamkit/combinatorics.hpp"

namespace raamkit {

namespace {

// Canonical word minus its last letter, with that letter.
std::pair<MonoidElement, int> split_last(const MonoidElement& p) {
  auto w = p.word();
  const int v = w.back();
  w.pop_back();
  return {normal_form(p.graph_ptr(), w), v};
}

void require_level(const MonoidElement& x, int level, const char* what) {
  if (x.norm() > level) {
    throw ValidationError(std::string(what) + " has norm above the truncation");
  }
}

}  // namespace

TruncatedFock::TruncatedFock(GraphPtr g, int level, std::size_t guard)
    : graph_(std::move(g)), level_(level) {
  if (level < 0) throw ValidationError("truncation level must be >= 0");
  basis_ = enumerate_ball(graph_, level, guard);
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::optional<std::size_t> TruncatedFock::index(const MonoidElement& q) const {
  if (auto it = index_.find(q); it != index_.end()) return it->second;
  return std::nullopt;
}

TruncatedFock build_fock(GraphPtr g, int level, std::size_t guard) {
  return TruncatedFock(std::move(g), level, guard);
}

std::vector<std::pair<std::size_t, std::size_t>> shift_pairs(
    const TruncatedFock& fk, const MonoidElement& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < fk.size(); ++i) {
    const auto& q = fk.at(i);
    if (q.norm() + p.norm() > fk.level()) break;  // shortlex: norms ascend
    out.emplace_back(i, *fk.index(multiply(p, q)));
  }
  return out;
}

MatrixC lambda_compressed(const TruncatedFock& fk, const MonoidElement& p) {
  if (p.graph_ptr() != fk.graph_ptr() && !(p.graph() == fk.graph())) {
    throw GraphMismatch("element and Fock space use different graphs");
  }
  const auto n = static_cast<Eigen::Index>(fk.size());
  MatrixC out = MatrixC::Zero(n, n);
  for (auto [src, dst] : shift_pairs(fk, p)) {
    out(static_cast<Eigen::Index>(dst), static_cast<Eigen::Index>(src)) = 1.0;
  }
  return out;
}

std::vector<CheckReport> nica_covariance_check(const TruncatedFock& fk,
                                               double tol, int random_pairs,
                                               std::uint64_t seed) {
  if (fk.level() < 1) throw ValidationError("Nica check needs M >= 1");
  const Graph& g = fk.graph();
  const auto n = static_cast<Eigen::Index>(fk.size());
  std::vector<MatrixC> lam;
  for (int v = 1; v <= g.n(); ++v) {
    lam.push_back(lambda_compressed(fk, MonoidElement::generator(fk.graph_ptr(), v)));
  }
  // max |entry| over columns s with |s| ≤ max_norm
  auto column_residual = [&](const MatrixC& diff, int max_norm) {
    double res = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (fk.at(static_cast<std::size_t>(c)).norm() > max_norm) break;
      res = std::max(res, diff.col(c).cwiseAbs().maxCoeff());
    }
    return res;
  };

  std::vector<CheckReport> out;
  for (int i = 1; i <= g.n(); ++i) {
    for (int j = 1; j <= g.n(); ++j) {
      CheckReport rep("nica-pair");
      const MatrixC lhs = lam[i - 1].adjoint() * lam[j - 1];
      double res = 0.0;
      std::string relation;
      if (i == j) {
        // λ_i^*λ_i is the projection onto the interior, on every column
        MatrixC proj = MatrixC::Zero(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
          if (fk.at(static_cast<std::size_t>(c)).norm() < fk.level()) proj(c, c) = 1.0;
        }
        res = (lhs - proj).cwiseAbs().maxCoeff();
        relation = "self";
      } else if (g.adjacent(i, j)) {
        res = column_residual(lhs - lam[j - 1] * lam[i - 1].adjoint(),
                              fk.level() - 1);
        relation = "edge";
      } else {
        res = column_residual(lhs, fk.level() - 1);
        relation = "non-edge";
      }
      rep.residual = res;
      rep.outcome = res <= tol ? Outcome::Pass : Outcome::Fail;
      rep.param("i", i).param("j", j).param("relation", relation).param("tol", tol);
      out.push_back(std::move(rep));
    }
  }

  std::vector<std::size_t> interior;
  for (std::size_t k = 0; k < fk.size(); ++k) {
    if (fk.at(k).norm() < fk.level()) interior.push_back(k);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, interior.size() - 1);
  for (int t = 0; t < random_pairs; ++t) {
    const auto& p = fk.at(interior[pick(rng)]);
    const auto& q = fk.at(interior[pick(rng)]);
    const MatrixC lhs = lambda_compressed(fk, p).adjoint() * lambda_compressed(fk, q);
    const JoinResult r = lcm(p, q);
    MatrixC rhs = MatrixC::Zero(n, n);
    if (r.finite()) {
      rhs = lambda_compressed(fk, left_quotient(p, r.value())) *
            lambda_compressed(fk, left_quotient(q, r.value())).adjoint();
    }
    const double res = column_residual(lhs - rhs, fk.level() - q.norm());
    CheckReport rep("nica-general");
    rep.residual = res;
    rep.outcome = res <= tol ? Outcome::Pass : Outcome::Fail;
    rep.param("p", to_string(p)).param("q", to_string(q))
        .param("join", to_string(r)).param("tol", tol);
    out.push_back(std::move(rep));
  }
  return out;
}

GammaFamily truncated_shift_family(GraphPtr g, int level, double scale,
                                   std::size_t guard) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ValidationError("scale must lie in (0,1]");
  }
  const TruncatedFock fk(g, level, guard);
  std::vector<MatrixC> gens;
  for (int v = 1; v <= g->n(); ++v) {
    gens.push_back(scale * lambda_compressed(fk, MonoidElement::generator(g, v)));
  }
  return GammaFamily(std::move(g), std::move(gens));
}

std::vector<MatrixC> adjoint_words(const GammaFamily& f,
                                   const TruncatedFock& fk) {
  std::vector<MatrixC> out;
  out.reserve(fk.size());
  for (std::size_t i = 0; i < fk.size(); ++i) {
    const auto& p = fk.at(i);
    if (p.is_identity()) {
      out.push_back(MatrixC::Identity(f.dim(), f.dim()));
      continue;
    }
    // T_p = T_q T_v  ⇒  T_p^* = T_v^* T_q^*
    auto [q, v] = split_last(p);
    out.push_back(f.generator(v).adjoint() * out[*fk.index(q)]);
  }
  return out;
}

VectorC cauchy_apply(const GammaFamily& f, double r, const VectorC& h,
                     const TruncatedFock& fk) {
  if (!(r >= 0.0 && r < 1.0)) throw ValidationError("r must lie in [0,1)");
  if (h.size() != f.dim()) throw DimensionMismatch("vector size != family dimension");
  const Eigen::Index d = f.dim();
  std::vector<VectorC> adj;  // T_p^* h
  adj.reserve(fk.size());
  VectorC out(static_cast<Eigen::Index>(fk.size()) * d);
  for (std::size_t i = 0; i < fk.size(); ++i) {
    const auto& p = fk.at(i);
    if (p.is_identity()) {
      adj.push_back(h);
    } else {
      auto [q, v] = split_last(p);
      adj.push_back(f.generator(v).adjoint() * adj[*fk.index(q)]);
    }
    out.segment(static_cast<Eigen::Index>(i) * d, d) =
        std::pow(r, p.norm()) * adj.back();
  }
  return out;
}

VectorC cauchy_apply(const GammaFamily& f, double r, const VectorC& h, int level) {
  return cauchy_apply(f, r, h, TruncatedFock(f.graph_ptr(), level));
}

CheckReport cauchy_bound_check(const GammaFamily& f, double r,
                               const VectorC& h, const TruncatedFock& fk,
                               double tol) {
  const int omega = clique_number(f.graph());
  const double norm2 = cauchy_apply(f, r, h, fk).squaredNorm();
  const double bound = h.squaredNorm() / std::pow(1.0 - r * r, omega);
  CheckReport rep("cauchy-bound");
  rep.residual = std::max(0.0, norm2 - bound);
  rep.outcome = norm2 <= bound + tol ? Outcome::Pass : Outcome::Fail;
  rep.param("r", r).param("omega", omega).param("level", fk.level())
      .param("norm2", norm2).param("bound", bound);
  return rep;
}

CheckReport cauchy_pairing_check(const GammaFamily& f, double r,
                                 const MonoidElement& p, const VectorC& h,
                                 const VectorC& k, const TruncatedFock& fk,
                                 double tol) {
  const auto idx = fk.index(p);
  if (!idx) throw ValidationError("p lies outside the truncation");
  const Eigen::Index d = f.dim();
  const VectorC ck = cauchy_apply(f, r, k, fk);
  // ⟨x, y⟩ linear in x
  const Complex lhs = ck.segment(static_cast<Eigen::Index>(*idx) * d, d).dot(h);
  const Complex rhs = k.dot(std::pow(r, p.norm()) * evaluate_word(f, p) * h);
  CheckReport rep("cauchy-pairing");
  rep.residual = std::abs(lhs - rhs);
  rep.outcome = *rep.residual <= tol ? Outcome::Pass : Outcome::Fail;
  rep.param("p", to_string(p)).param("r", r);
  return rep;
}

CheckReport level_sum_check(const GammaFamily& f, int m, double base_tol) {
  const int omega = clique_number(f.graph());
  WordEvaluator eval(f);
  MatrixC sum = MatrixC::Zero(f.dim(), f.dim());
  for (const auto& p : enumerate_norm_level(f.graph_ptr(), m)) sum += eval.range(p);
  const double bound = static_cast<double>(binomial(omega + m - 1, m));
  const MatrixC gap = bound * MatrixC::Identity(f.dim(), f.dim()) - sum;
  auto rep = psd_check(gap, psd_tolerance(gap, base_tol), "level-sum");
  rep.param("m", m).param("bound", bound);
  return rep;
}

double tail_bound(int omega, double r, int level) {
  if (!(r >= 0.0 && r < 1.0)) throw ValidationError("r must lie in [0,1)");
  if (omega < 1) throw ValidationError("omega must be >= 1");
  const double r2 = r * r;
  if (r2 == 0.0) return 0.0;
  const double first_power = std::pow(r2, level + 1);
  if (omega == 1) return first_power / (1.0 - r2);
  // C(ω+m−1, m) at m = M+1
  double coeff = 1.0;
  const double m0 = level + 1;
  for (int i = 1; i < omega; ++i) coeff *= (m0 + i) / i;
  double term = coeff * first_power;
  double sum = 0.0;
  for (long long m = level + 1; m < level + 100000000LL; ++m) {
    sum += term;
    const double ratio = r2 * (omega + static_cast<double>(m)) / (static_cast<double>(m) + 1.0);
    term *= ratio;
    if (ratio < 1.0 && term < 1e-16 * sum) break;
  }
  return sum;
}

MatrixC delta_sqrt(const GammaFamily& f, double r, double base_tol) {
  const MatrixC delta = delta_operator(f, r);
  const double tol = psd_tolerance(delta, base_tol);
  const MatrixC h = (delta + delta.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -tol) {
    throw NotPropertyP("Delta_r has eigenvalue " + format_double(ev.minCoeff()) +
                       " at r=" + format_double(r));
  }
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

PoissonKernelMatrix poisson_kernel(const GammaFamily& f, double r,
                                   const TruncatedFock& fk, double base_tol) {
  const MatrixC root = delta_sqrt(f, r, base_tol);
  const auto adj = adjoint_words(f, fk);
  const Eigen::Index d = f.dim();
  PoissonKernelMatrix k{MatrixC(static_cast<Eigen::Index>(fk.size()) * d, d), r,
                        fk.level()};
  for (std::size_t i = 0; i < fk.size(); ++i) {
    k.matrix.middleRows(static_cast<Eigen::Index>(i) * d, d) =
        std::pow(r, fk.at(i).norm()) * root * adj[i];
  }
  return k;
}

PoissonKernelMatrix poisson_kernel(const GammaFamily& f, double r, int level,
                                   double base_tol) {
  return poisson_kernel(f, r, TruncatedFock(f.graph_ptr(), level), base_tol);
}

CheckReport unit_resolution_check(const GammaFamily& f, double r, int level,
                                  double tol) {
  const TruncatedFock fk(f.graph_ptr(), level);
  const MatrixC delta = delta_operator(f, r);
  const auto adj = adjoint_words(f, fk);
  const Eigen::Index d = f.dim();
  const MatrixC id = MatrixC::Identity(d, d);
  MatrixC partial = MatrixC::Zero(d, d);
  MatrixC increment = MatrixC::Zero(d, d);
  bool monotone = true;
  double worst_increment = 0.0;
  int current = 0;
  auto close_level = [&] {
    const double lmin = min_eigenvalue(increment);
    worst_increment = std::min(worst_increment, lmin);
    if (lmin < -psd_tolerance(increment)) monotone = false;
    partial += increment;
    increment.setZero();
  };
  for (std::size_t i = 0; i < fk.size(); ++i) {
    const auto& p = fk.at(i);
    if (p.norm() != current) {
      close_level();
      current = p.norm();
    }
    increment += std::pow(r, 2 * p.norm()) * adj[i].adjoint() * delta * adj[i];
  }
  close_level();
  const double residual = operator_norm(partial - id);
  const double upper = max_eigenvalue(partial);
  const int omega = clique_number(f.graph());
  const double allowance = operator_norm(delta) * tail_bound(omega, r, level);
  const bool bounded = upper <= 1.0 + tol + psd_tolerance(partial);
  CheckReport rep("unit-resolution");
  rep.residual = residual;
  rep.min_eigenvalue = worst_increment;
  rep.outcome = (residual <= tol + allowance && monotone && bounded)
                    ? Outcome::Pass
                    : Outcome::Fail;
  rep.param("r", r).param("level", level).param("allowance", allowance)
      .param("monotone", std::string(monotone ? "true" : "false"))
      .param("max_eigenvalue", upper).param("tol", tol);
  return rep;
}

MatrixC apply_shift_pair(const TruncatedFock& fk, const MonoidElement& p,
                         const MonoidElement& q, const MatrixC& x, int dim) {
  const Eigen::Index d = dim;
  if (x.rows() != static_cast<Eigen::Index>(fk.size()) * d) {
    throw DimensionMismatch("block matrix rows != |basis|·d");
  }
  MatrixC y = MatrixC::Zero(x.rows(), x.cols());
  const int reach = std::max(p.norm(), q.norm());
  for (std::size_t i = 0; i < fk.size(); ++i) {
    const auto& s = fk.at(i);
    if (s.norm() + reach > fk.level()) break;
    const auto ps = *fk.index(multiply(p, s));
    const auto qs = *fk.index(multiply(q, s));
    y.middleRows(static_cast<Eigen::Index>(ps) * d, d) =
        x.middleRows(static_cast<Eigen::Index>(qs) * d, d);
  }
  // norms of ps or qs above M fall outside the truncation and map to zero
  return y;
}

CheckReport poisson_reproduce_check(const GammaFamily& f,
                                    const PoissonKernelMatrix& kernel,
                                    const TruncatedFock& fk,
                                    const MonoidElement& p,
                                    const MonoidElement& q, double tol) {
  require_level(p, fk.level(), "p");
  require_level(q, fk.level(), "q");
  const double r = kernel.r;
  const MatrixC y = apply_shift_pair(fk, p, q, kernel.matrix, f.dim());
  const MatrixC lhs = kernel.matrix.adjoint() * y;
  const double scale = std::pow(r, p.norm() + q.norm());
  const MatrixC rhs = scale * evaluate_word(f, p) * evaluate_word(f, q).adjoint();
  const int omega = clique_number(f.graph());
  const double allowance =
      scale * operator_norm(delta_operator(f, r)) *
      tail_bound(omega, r, fk.level() - std::max(p.norm(), q.norm()));
  CheckReport rep("poisson-reproduce");
  rep.residual = operator_norm(lhs - rhs);
  rep.outcome = *rep.residual <= tol + allowance ? Outcome::Pass : Outcome::Fail;
  rep.param("p", to_string(p)).param("q", to_string(q)).param("r", r)
      .param("level", fk.level()).param("allowance", allowance).param("tol", tol);
  return rep;
}

CheckReport poisson_reproduce_check(const GammaFamily& f, double r, int level,
                                    const MonoidElement& p,
                                    const MonoidElement& q, double tol) {
  const TruncatedFock fk(f.graph_ptr(), level);
  return poisson_reproduce_check(f, poisson_kernel(f, r, fk), fk, p, q, tol);
}

CheckReport poisson_positivity_check(const PoissonKernelMatrix& kernel,
                                     const MatrixC& a, int dim,
                                     double base_tol) {
  const Eigen::Index d = dim;
  const Eigen::Index n = kernel.matrix.rows() / d;
  if (a.rows() != n || a.cols() != n) {
    throw DimensionMismatch("argument must act on the truncated space");
  }
  // (A ⊗ I)K with K viewed as n stacked d×d blocks
  MatrixC stacked(n, d * d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index a_ = 0; a_ < d; ++a_)
      for (Eigen::Index b = 0; b < d; ++b)
        stacked(i, a_ * d + b) = kernel.matrix(i * d + a_, b);
  const MatrixC mixed = a * stacked;
  MatrixC y(n * d, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index a_ = 0; a_ < d; ++a_)
      for (Eigen::Index b = 0; b < d; ++b)
        y(i * d + a_, b) = mixed(i, a_ * d + b);
  const MatrixC image = kernel.matrix.adjoint() * y;
  auto rep = psd_check(image, psd_tolerance(image, base_tol), "poisson-positivity");
  rep.param("r", kernel.r).param("level", kernel.level);
  return rep;
}

CheckReport vn_certificate(const GammaFamily& f, std::span<const VnTerm> terms,
                           int level) {
  if (terms.empty()) throw EmptyInput("no terms");
  const TruncatedFock fk(f.graph_ptr(), level);
  const auto n = static_cast<Eigen::Index>(fk.size());
  MatrixC lam = MatrixC::Zero(n, n);
  MatrixC tee = MatrixC::Zero(f.dim(), f.dim());
  for (const auto& t : terms) {
    lam += t.coeff * lambda_compressed(fk, t.p) * lambda_compressed(fk, t.q).adjoint();
    tee += t.coeff * evaluate_word(f, t.p) * evaluate_word(f, t.q).adjoint();
  }
  const double lower = operator_norm(lam);
  const double rhs = operator_norm(tee);
  const bool certified = rhs <= lower + 1e-12 * std::max(1.0, lower);
  CheckReport rep("vn-certificate");
  rep.outcome = certified ? Outcome::Pass : Outcome::Inconclusive;
  rep.residual = std::max(0.0, rhs - lower);
  rep.param("status", std::string(certified ? "CERTIFIED" : "INCONCLUSIVE"))
      .param("T_norm", rhs).param("lambda_norm_lower", lower).param("level", level);
  return rep;
}

int default_truncation(const GammaFamily& f, double r, double tol,
                       std::size_t guard) {
  const int omega = clique_number(f.graph());
  const double dnorm = operator_norm(delta_operator(f, r));
  int level = 0;
  while (dnorm * tail_bound(omega, r, level) >= tol && level < 100000) ++level;
  auto fits = [&](int m) {
    try {
      enumerate_ball(f.graph_ptr(), m, guard);
      return true;
    } catch (const GuardExceeded&) {
      return false;
    }
  };
  if (fits(level)) return level;
  int lo = 0;
  int hi = level;  // lo fits, hi does not
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace raamkit
