#ifndef QDISK_OPERATORS_HPP
#define QDISK_OPERATORS_HPP

#include <map>
#include <utility>

#include "qdisk/compact_op.hpp"

namespace qdisk {

/// Matrix unit P_{k,l} : E_l -> E_k.
CompactOp unit(int k, int l, int dim);

/// Orthogonal projection onto span{E_0, ..., E_{n-1}}.
CompactOp proj_below(int n, int dim);

/// Unilateral shift U E_k = E_{k+1} realized on the window.  U*U = I holds
/// exactly on the window; UU* = I - P_{0,0} except in the last column.
Matrix shift(int dim);

/// Label operator K E_k = k E_k realized on the window.
Matrix label_operator(int dim);

/// Window realization of the Toeplitz matrix T(f)_{k,l} = f_{k-l}.
Matrix toeplitz_matrix(const Symbol& f, int dim);

/// Window realization of T(f) + c.
Matrix realize(const ToeplitzElem& a, int dim);
inline Matrix realize(const ToeplitzElem& a) { return realize(a, a.dim()); }

ToeplitzElem toeplitz(const Symbol& f, int dim);
ToeplitzElem from_compact(const CompactOp& c);
ToeplitzElem identity_elem(int dim);

/// Resummation between matrix coefficients and Fourier modes:
/// a_{k,l} = a_{k-l}(l) for k >= l and a_{k-l}(k) for k < l.
CompactOp to_matrix(const FourierModes& modes, int dim);
FourierModes to_modes(const CompactOp& a);

/// Finite-rank product defect T(f)T(g) - T(fg), assembled from the explicit
/// formula -sum_{n<0} g_n (U*)^{-n} T(f_+) P_{<-n}.
CompactOp product_defect(const Symbol& f, const Symbol& g, int dim);

/// Structured product: symbol part is the exact convolution, compact part is
/// defect(f,g) + T(f) c_b + c_a T(g) + c_a c_b.  Throws SupportOverflow when
/// any finite block would leave the window.
ToeplitzElem mul(const ToeplitzElem& a, const ToeplitzElem& b);

inline Symbol quotient(const ToeplitzElem& a) { return a.symbol; }

/// Circle action: conjugation by the diagonal unitary e^{2 pi i theta K},
/// so rho_theta(U) = e^{2 pi i theta} U and diagonals are fixed.
CompactOp rho_theta(const CompactOp& a, double theta);
ToeplitzElem rho_theta(const ToeplitzElem& a, double theta);

/// Left multiplication by T(f) on a finitely supported operator; exact, the
/// result rows grow by band(f).
CompactOp toeplitz_left(const Symbol& f, const CompactOp& c);
/// Right multiplication by T(g); the result columns grow by band(g).
CompactOp toeplitz_right(const CompactOp& c, const Symbol& g);

/// Integral-kernel Fourier coefficients: \hat a_{k,-l} = a_{k,l}.
std::map<std::pair<int, int>, cplx> kernel_coeffs(const CompactOp& a);

/// Reads a finitely supported operator off a window computation whose entries
/// are trustworthy only below dim - trust_margin.  The nonzero extent must
/// come to rest well inside the trusted region, otherwise SupportOverflow:
/// the window cannot certify the support.  Entries outside the certified
/// block (including the untrusted edge) are dropped.
CompactOp certify_finite_support(const Matrix& residual_window, int trust_margin,
                                 double rel_tol = 1e-12);

/// Expectation onto the diagonal algebra.  On matrix coefficients the
/// averaging over the circle action is exactly diagonal extraction.
CompactOp diagonal_expectation(const CompactOp& a);

}  // namespace qdisk

#endif
