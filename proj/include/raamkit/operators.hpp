#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "raamkit/monoid.hpp"

namespace raamkit {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

/// Commutation and contractivity are validated loosely: fixtures are
/// constructed, not measured.
inline constexpr double kFamilyTol = 1e-8;
/// Base coefficient of the PSD tolerance policy, see psd_tolerance().
inline constexpr double kPsdTol = 1e-9;
/// Cap on the number of finite-join subsets visited while expanding Z(F).
inline constexpr std::size_t kDefaultSubsetGuard = std::size_t{1} << 22;

/// A tuple (T_1..T_n) of d×d matrices indexed by the vertices of a graph.
/// Construction checks shapes only; see validate_family for the relations.
class GammaFamily {
 public:
  /// Throws DimensionMismatch unless there are n square matrices of one size.
  GammaFamily(GraphPtr g, std::vector<MatrixC> generators);

  static GammaFamily zero(GraphPtr g, int dim);
  static GammaFamily scalar(GraphPtr g, int dim, std::span<const Complex> t);

  const Graph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  int dim() const { return dim_; }
  /// T_v, 1-based.
  const MatrixC& generator(int v) const;
  const std::vector<MatrixC>& generators() const { return generators_; }

 private:
  GraphPtr graph_;
  int dim_;
  std::vector<MatrixC> generators_;
};

enum class Outcome { Pass, Fail, Inconclusive };

const char* to_string(Outcome o);

/// Outcome of one positivity or identity check.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  std::string name;
  Outcome outcome = Outcome::Fail;
  std::optional<double> min_eigenvalue;
  std::optional<double> residual;
  std::vector<std::pair<std::string, std::string>> parameters;

  bool passed() const { return outcome == Outcome::Pass; }
  CheckReport& param(std::string key, std::string value);
  CheckReport& param(std::string key, double value);
  CheckReport& param(std::string key, long long value);
  CheckReport& param(std::string key, int value) {
    return param(std::move(key), static_cast<long long>(value));
  }
  /// Value of a parameter, or empty.
  std::string get(const std::string& key) const;
};

/// 17 significant digits.
std::string format_double(double x);

/// Evaluates T_p for a fixed family, caching every word it has seen.
class WordEvaluator {
 public:
  explicit WordEvaluator(const GammaFamily& f) : family_(&f) {}

  const MatrixC& operator()(const MonoidElement& p);
  /// T_p T_p^*.
  const MatrixC& range(const MonoidElement& p);

 private:
  const GammaFamily* family_;
  std::unordered_map<MonoidElement, MatrixC, MonoidElementHash> words_;
  std::unordered_map<MonoidElement, MatrixC, MonoidElementHash> ranges_;
};

CheckReport validate_family(const GammaFamily& f, double tol = kFamilyTol);

MatrixC evaluate_word(const GammaFamily& f, const MonoidElement& p);

/// Z(F) = Σ_{U ⊆ F} (−1)^{|U|} T_{∨U} T_{∨U}^*, U over index subsets and
/// T_{∨U} = 0 when ∨U = ∞.
MatrixC zed(const GammaFamily& f, std::span<const MonoidElement> elems,
            std::size_t guard = kDefaultSubsetGuard);

double min_eigenvalue(const MatrixC& a);
double max_eigenvalue(const MatrixC& a);
/// Largest singular value.
double operator_norm(const MatrixC& a);

/// base · d · max(1, max absolute row sum).
double psd_tolerance(const MatrixC& a, double base = kPsdTol);

/// Passes iff the least eigenvalue of (A+A^*)/2 is ≥ −tol. Throws NotSquare.
CheckReport psd_check(const MatrixC& a, double tol,
                      std::string name = "psd");

/// Z over an arbitrary finite list, checked for positivity under the
/// tolerance policy.
CheckReport brehmer_set_check(const GammaFamily& f,
                              std::span<const MonoidElement> elems,
                              double base_tol = kPsdTol);

/// Z(N_{Γ_i}(W)) ⪰ 0 for every non-maximal clique W of every subgraph Γ_i
/// spanned by a connected component of the complement graph.
std::vector<CheckReport> weak_brehmer_check(const GammaFamily& f,
                                            double base_tol = kPsdTol);

/// Z(N_Γ(W)) ⪰ 0 for every non-maximal clique W of the whole graph.
std::vector<CheckReport> brehmer_clique_check(const GammaFamily& f,
                                              double base_tol = kPsdTol);

/// Δ_r = Σ_{U ⊆ generators} (−1)^{|U|} r^{2|U|} T_{∨U} T_{∨U}^*.
MatrixC delta_operator(const GammaFamily& f, double r);

/// One report per grid point, then a summary report named
/// "property-p-summary" carrying the empirical threshold estimate.
std::vector<CheckReport> property_p_scan(const GammaFamily& f,
                                         std::span<const double> r_grid,
                                         double base_tol = kPsdTol);

/// Residual of c_F·I − Σ_{p∈F} T_p T_p^* = Σ_{k=1}^{c_F} Z(F_k), an identity
/// valid for every family.
CheckReport key_estimate_check(const GammaFamily& f,
                               std::span<const MonoidElement> elems,
                               double tol = 1e-10);

/// Generators e_v for v in s, ascending.
std::vector<MonoidElement> generators_of(const GraphPtr& g, VertexSet s);

}  // namespace raamkit
