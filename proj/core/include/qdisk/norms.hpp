#ifndef QDISK_NORMS_HPP
#define QDISK_NORMS_HPP

#include <string>

#include "qdisk/compact_op.hpp"

namespace qdisk {

/// delta_K(a) = [K, a]:  entries (k - l) a_{k,l}.  On a Toeplitz element the
/// symbol is differentiated; the two rules agree on realizations.
CompactOp delta_k(const CompactOp& a);
ToeplitzElem delta_k(const ToeplitzElem& a);

/// partial_l(a) = [(I+K)^l, a]: entries ((1+k)^l - (1+l')^l) a_{k,l'}.
CompactOp partial_l(const CompactOp& a, int l);

/// Operator norm ||a (I+K)^N||, exact for finitely supported a.  Throws
/// SupportOverflow when the declared support touches the window edge, since
/// such operators are usually truncations of something larger.
double norm_0N(const CompactOp& a, int N);

/// Weighted Hilbert-Schmidt seminorm
/// sqrt( sum_{k,l} (1+l)^{2N} (k-l)^{2j} |a_{k,l}|^2 ).
double hs_weighted(const CompactOp& a, int j, int N);

/// ||a||_{M,N} = sum_j C(M,j) ||delta_K^j(a)||_{0,N}.
double norm_MN(const CompactOp& a, int M, int N);

/// Fixed constant with S^2 = S + pi^2/3 - 1, making the Toeplitz norms
/// submultiplicative.
double s_constant();

/// ||T(f)+c||_{M,N} = S ||f||_{C^{M+N+2}} + ||c||_{M,N}.
double toeplitz_norm_MN(const ToeplitzElem& a, int M, int N);

struct NormReport {
  std::string kind;  // opN | hsN | MN | partial_l | toeplitzMN
  int M = 0, N = 0, j = 0, l = 0;
  double value = 0.0;
};

/// Plain operator norm of a window matrix (largest singular value).
double op_norm(const Matrix& m);

/// Weighted vector norm ||x||_N = ||(I+K)^N x||.
double vec_norm_N(const Vector& x, int N);

}  // namespace qdisk

#endif
