#ifndef QDISK_DERIVATIONS_HPP
#define QDISK_DERIVATIONS_HPP

#include <functional>
#include <map>
#include <vector>

#include "qdisk/compact_op.hpp"

namespace qdisk {

/// An n-covariant derivation on the smooth compacts, determined by the
/// coefficient sequence beta_j of its generator: [sum_j beta_j P_{j,j+n}, .]
/// for n >= 0 and [sum_j beta_j P_{j-n,j}, .] for n < 0.
struct CovariantDerivation {
  int n = 0;
  std::vector<cplx> beta;
  double growth_c = 1.0;  // |beta_j| <= growth_c (1+j)^growth_n over support
  int growth_n = 0;

  CovariantDerivation(int n_, std::vector<cplx> beta_, double c = 0.0, int p = 0);

  /// Generator as a window matrix.
  Matrix generator(int dim) const;
};

/// A general derivation with coefficient table beta_{n,j} and growth data
/// |beta_{n,l}| <= growth_const (1+l)^r / (1+|n|)^p.
struct GeneralDerivation {
  std::map<std::pair<int, int>, cplx> betas;  // (n, j) -> beta
  double growth_const = 1.0;
  int r = 0, p = 0;

  GeneralDerivation(std::map<std::pair<int, int>, cplx> betas_, double c, int r_, int p_);

  Matrix generator(int dim) const;
};

CompactOp apply_covariant(const CovariantDerivation& d, const CompactOp& a);
CompactOp apply_general(const GeneralDerivation& d, const CompactOp& a);

/// A derivation given only by its action on window operators.
using DerivationAction = std::function<CompactOp(const CompactOp&)>;

/// n-th Fourier component of a black-box derivation, carrying its own
/// aliasing data: covariance modes are recovered modulo quad_points, so the
/// extraction is exact only when the band of d stays below the Nyquist bound.
struct FourierComponentAction {
  DerivationAction apply;
  int n = 0;
  int quad_points = 0;  // modes n and n + quad_points are indistinguishable
  int nyquist_band() const { return (quad_points - 1) / 2; }

  CompactOp operator()(const CompactOp& a) const { return apply(a); }
};

/// Uniform quadrature over the circle action; exact for band-limited d.
FourierComponentAction fourier_component(const DerivationAction& d, int n, int quad_points);

struct LiftResiduals {
  double compatibility = 0.0;  // ||cU + U*b|| on the window
  double comm_u = 0.0;         // max entry of [alpha,U] - b on the interior
  double comm_ustar = 0.0;     // max entry of [alpha,U*] - c on the interior
};

/// Result of solving delta = [alpha, .] from b = delta(U), c = delta(U*):
/// alpha = T(f) + alpha_tilde with the gauge alpha_0(0) = 0.
struct LiftResult {
  Symbol f;
  CompactOp alpha_tilde;
  Matrix alpha_realized;
  LiftResiduals residuals;
};

/// Prefix-sum solve of the lifting recurrences.  Requires cU + U*b = 0
/// within tolerance (the necessary condition for a derivation).
LiftResult lift_derivation(const CompactOp& b, const CompactOp& c, double tol = 1e-10);

/// Lift of the circle vector field F (1/2 pi i) d/dx, acting as the
/// commutator with T(F_+)K + K T(F_-).  The result is structured: the symbol
/// part is F (1/2 pi i) q(a)' exactly, the compact part is read off the
/// window with a certified finite support.
ToeplitzElem vector_field_lift(const Symbol& F, const ToeplitzElem& a);

struct ClassifyResult {
  Symbol F;
  LiftResult inner;
  double symbol_residual = 0.0;  // leftover symbol after removing the lift part
};

/// Decomposes a derivation given by its generator values b = delta(U),
/// c = delta(U*) into the vector-field lift delta_F plus an inner part.
ClassifyResult classify_derivation(const ToeplitzElem& b, const ToeplitzElem& c,
                                   double tol = 1e-9);

}  // namespace qdisk

#endif
