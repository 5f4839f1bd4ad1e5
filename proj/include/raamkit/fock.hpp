#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "raamkit/operators.hpp"

namespace raamkit {

/// Span of e_q, |q| ≤ M, inside ℓ²(A_Γ^+), ordered shortlex. Immutable.
class TruncatedFock {
 public:
  TruncatedFock(GraphPtr g, int level, std::size_t guard = kDefaultBallGuard);

  const Graph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  int level() const { return level_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<MonoidElement>& basis() const { return basis_; }
  const MonoidElement& at(std::size_t i) const { return basis_[i]; }
  std::optional<std::size_t> index(const MonoidElement& q) const;

 private:
  GraphPtr graph_;
  int level_;
  std::vector<MonoidElement> basis_;
  std::unordered_map<MonoidElement, std::size_t, MonoidElementHash> index_;
};

/// Throws GuardExceeded if the ball holds more than `guard` elements.
TruncatedFock build_fock(GraphPtr g, int level,
                         std::size_t guard = kDefaultBallGuard);

/// (source, target) index pairs of the compressed shift e_q ↦ e_{pq}.
std::vector<std::pair<std::size_t, std::size_t>> shift_pairs(
    const TruncatedFock& fk, const MonoidElement& p);

/// P_M λ_p P_M as a dense 0/1 matrix.
MatrixC lambda_compressed(const TruncatedFock& fk, const MonoidElement& p);

/// Nica relations for the compressed left-regular representation on the
/// interior {|q| ≤ M−1}: one report per ordered vertex pair, then
/// `random_pairs` reports for the general rule λ_p^*λ_q = λ_{p⁻¹r}λ_{q⁻¹r}^*.
std::vector<CheckReport> nica_covariance_check(const TruncatedFock& fk,
                                               double tol = 1e-12,
                                               int random_pairs = 20,
                                               std::uint64_t seed = 7);

/// T_v = scale · P_M λ_v P_M on the ball of radius M.
GammaFamily truncated_shift_family(GraphPtr g, int level, double scale = 1.0,
                                   std::size_t guard = kDefaultBallGuard);

/// T_p^* for every basis element p of fk, in basis order.
std::vector<MatrixC> adjoint_words(const GammaFamily& f,
                                   const TruncatedFock& fk);

/// Σ_{|p| ≤ M} e_p ⊗ r^{|p|} T_p^* h, block p at rows [index(p)·d, +d).
VectorC cauchy_apply(const GammaFamily& f, double r, const VectorC& h,
                     const TruncatedFock& fk);
VectorC cauchy_apply(const GammaFamily& f, double r, const VectorC& h, int level);

/// ‖C_r h‖² on the truncation against (1−r²)^{−ω}‖h‖².
CheckReport cauchy_bound_check(const GammaFamily& f, double r,
                               const VectorC& h, const TruncatedFock& fk,
                               double tol = 1e-9);

/// ⟨(λ_p⊗I)(e_1⊗h), C_r k⟩ against ⟨r^{|p|} T_p h, k⟩.
CheckReport cauchy_pairing_check(const GammaFamily& f, double r,
                                 const MonoidElement& p, const VectorC& h,
                                 const VectorC& k, const TruncatedFock& fk,
                                 double tol = 1e-12);

/// Σ_{|p|=m} T_p T_p^* ⪯ C(ω+m−1, m)·I.
CheckReport level_sum_check(const GammaFamily& f, int m,
                            double base_tol = kPsdTol);

/// Σ_{m>M} C(ω+m−1, m) r^{2m}.
double tail_bound(int omega, double r, int level);

struct PoissonKernelMatrix {
  MatrixC matrix;  // (|basis|·d) × d
  double r = 0.0;
  int level = 0;
};

/// Δ_r^{1/2} with eigenvalues in [−tol, 0) clamped to zero. Throws
/// NotPropertyP if Δ_r has an eigenvalue below −tol.
MatrixC delta_sqrt(const GammaFamily& f, double r, double base_tol = kPsdTol);

/// h ↦ Σ_{|p|≤M} e_p ⊗ r^{|p|} Δ_r^{1/2} T_p^* h.
PoissonKernelMatrix poisson_kernel(const GammaFamily& f, double r,
                                   const TruncatedFock& fk,
                                   double base_tol = kPsdTol);
PoissonKernelMatrix poisson_kernel(const GammaFamily& f, double r, int level,
                                   double base_tol = kPsdTol);

/// ‖Σ_{|p|≤M} r^{2|p|} T_p Δ_r T_p^* − I‖ against tol + ‖Δ_r‖·tail_bound,
/// plus monotonicity of the partial sums in M.
CheckReport unit_resolution_check(const GammaFamily& f, double r, int level,
                                  double tol = 1e-10);

/// (λ_p λ_q^* ⊗ I) X on the truncation, X with |basis|·d rows.
MatrixC apply_shift_pair(const TruncatedFock& fk, const MonoidElement& p,
                         const MonoidElement& q, const MatrixC& x, int dim);

/// ‖K^*(λ_p λ_q^* ⊗ I)K − r^{|p|+|q|} T_p T_q^*‖ against tol plus the
/// discarded tail r^{|p|+|q|}·‖Δ_r‖·tail_bound(ω, r, M − max(|p|,|q|)).
CheckReport poisson_reproduce_check(const GammaFamily& f, double r, int level,
                                    const MonoidElement& p,
                                    const MonoidElement& q, double tol = 1e-10);
CheckReport poisson_reproduce_check(const GammaFamily& f,
                                    const PoissonKernelMatrix& kernel,
                                    const TruncatedFock& fk,
                                    const MonoidElement& p,
                                    const MonoidElement& q, double tol = 1e-10);

/// K^*(A ⊗ I)K ⪰ 0 for a PSD matrix A on the truncated space.
CheckReport poisson_positivity_check(const PoissonKernelMatrix& kernel,
                                     const MatrixC& a, int dim,
                                     double base_tol = kPsdTol);

struct VnTerm {
  Complex coeff;
  MonoidElement p;
  MonoidElement q;
};

/// Compares R = ‖Σ a T_p T_q^*‖ with L_M = ‖Σ a λ_p λ_q^*‖ on the
/// M-truncation, a lower bound for the untruncated norm. Pass means
/// certified (R ≤ L_M); otherwise the outcome is Inconclusive, never Fail.
/// Meaningful for families satisfying weak Brehmer and property (P).
CheckReport vn_certificate(const GammaFamily& f,
                           std::span<const VnTerm> terms, int level);

/// Smallest M with ‖Δ_r‖·tail_bound(ω, r, M) < tol whose ball fits the guard;
/// the largest admissible M when none does.
int default_truncation(const GammaFamily& f, double r, double tol,
                       std::size_t guard = kDefaultBallGuard);

}  // namespace raamkit
