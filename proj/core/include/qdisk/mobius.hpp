#ifndef QDISK_MOBIUS_HPP
#define QDISK_MOBIUS_HPP

#include <array>

#include "qdisk/compact_op.hpp"

namespace qdisk {

/// Group element (alpha, beta) with |alpha|^2 - |beta|^2 = 1, acting on the
/// disk by z -> (alpha z + beta) / (conj(beta) z + conj(alpha)).
struct SU11Element {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};

  SU11Element(cplx a, cplx b);

  /// Geometric ratio |beta/alpha| < 1 controlling every tail in this module.
  double contraction() const { return std::abs(beta) / std::abs(alpha); }
};

/// Matrix product of the underlying 2x2 matrices; composition of the Mobius
/// maps g and h is the map of product(g, h).
SU11Element group_product(const SU11Element& g, const SU11Element& h);

struct MobiusSymbol {
  Symbol value;      // one-sided expansion, frequencies n >= 0
  double tail_bound; // sum of |coefficients| beyond the band
};

/// One-sided Fourier expansion of the Mobius map on the circle, truncated at
/// band.  Coefficients are geometric with ratio contraction(g).
MobiusSymbol mobius_symbol(const SU11Element& g, int band);

/// Margin for identities involving only W_g and its adjoint: entries within
/// dim - margin see none of the banded truncation tail.  Grows as the
/// contraction ratio approaches 1.
int central_margin(const SU11Element& g, int dim);

/// W_g = (alpha U + beta)(conj(beta) U + conj(alpha))^{-1}.  Both factors are
/// analytic, so the symbol is exact and the compact part is a truncation tail.
ToeplitzElem mobius_isometry(const SU11Element& g, int dim);

/// Window realization of W_g through the exact triangular product; every
/// entry below the window edge is the true operator entry.
Matrix mobius_isometry_window(const SU11Element& g, int dim);

/// Unit vector spanning ker W_g*: F_0[k] = (-conj(beta))^k / conj(alpha)^{k+1}.
Vector kernel_vector(const SU11Element& g, int dim);

struct ImplementingUnitary {
  Matrix u;                 // columns F_k = W_g^k F_0
  double gram_residual;     // max |(U^H U - I)_{ij}| over the certified columns
  int central;              // certified column count: window mass loss < 1e-12
};

/// Unitary with U E_k = F_k implementing the automorphism.  Columns are built
/// by repeated application of W_g with no re-orthogonalization; every window
/// entry is exact, the per-column truncation loss is measured from the column
/// norm, and the certified count is reported.  IllConditioned is thrown when
/// fewer than four columns certify or the Gram residual exceeds 1e-6.
ImplementingUnitary implementing_unitary(const SU11Element& g, int dim);

struct ConjugationResult {
  CompactOp value;
  std::array<double, 4> decay_profile;  // max |a_{k,l}| (1+k)^r (1+l)^r, r=1..4
};

/// U_g a U_g^{-1} for a finitely supported a sitting well inside the window.
ConjugationResult conjugate(const SU11Element& g, const CompactOp& a);

/// Conjugation of an arbitrary window matrix; only the central block of the
/// result is meaningful.
Matrix conjugate_window(const ImplementingUnitary& ug, const Matrix& m);

/// Entrywise [K, .] on a window realization.
Matrix delta_k_window(const Matrix& m);

std::array<double, 4> decay_profile(const Matrix& m, int rows, int cols);

struct MobiusReport {
  Symbol w_symbol;
  double w_tail_bound = 0.0;
  double w_compact_max = 0.0;
  std::vector<cplx> f0;
  double f0_norm_deficit = 0.0;      // 1 - ||F_0||^2 on the window
  double kernel_residual = 0.0;      // ||W_g* F_0||
  double isometry_residual = 0.0;    // ||W_g* W_g - I|| central block
  double conjugation_residual = 0.0; // ||U_g U U_g^{-1} - W_g|| central block
  double gram_residual = 0.0;
  double delta_k_identity_residual = 0.0;  // delta_K(W_g) = U (conj(a)+conj(b)U)^{-2}
  std::array<double, 4> decay_profile{};   // of rho_g(P_{0,0})
  int dim = 0;
  int central = 0;
};

MobiusReport mobius_report(const SU11Element& g, int dim);

}  // namespace qdisk

#endif
