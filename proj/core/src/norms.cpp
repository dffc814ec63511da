#include "qdisk/norms.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "qdisk/errors.hpp"

namespace qdisk {

CompactOp delta_k(const CompactOp& a) {
  Matrix m = a.matrix();
  for (int k = 0; k < a.support_rows(); ++k)
    for (int l = 0; l < a.support_cols(); ++l) m(k, l) *= static_cast<double>(k - l);
  return CompactOp(std::move(m), a.support_rows(), a.support_cols());
}

ToeplitzElem delta_k(const ToeplitzElem& a) {
  return {derivative(a.symbol), delta_k(a.compact)};
}

CompactOp partial_l(const CompactOp& a, int l) {
  Matrix m = a.matrix();
  for (int k = 0; k < a.support_rows(); ++k)
    for (int c = 0; c < a.support_cols(); ++c)
      m(k, c) *= std::pow(1.0 + k, l) - std::pow(1.0 + c, l);
  return CompactOp(std::move(m), a.support_rows(), a.support_cols());
}

double op_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

double vec_norm_N(const Vector& x, int N) {
  double acc = 0.0;
  for (int k = 0; k < x.size(); ++k)
    acc += std::pow(1.0 + k, 2 * N) * std::norm(x(k));
  return std::sqrt(acc);
}

double norm_0N(const CompactOp& a, int N) {
  if (a.support_rows() >= a.dim() || a.support_cols() >= a.dim())
    throw SupportOverflow("norm_0N: support touches window edge");
  const int r = a.support_rows(), c = a.support_cols();
  if (r == 0 || c == 0) return 0.0;
  Matrix block = a.matrix().topLeftCorner(r, c);
  for (int l = 0; l < c; ++l) block.col(l) *= std::pow(1.0 + l, N);
  return op_norm(block);
}

double hs_weighted(const CompactOp& a, int j, int N) {
  double acc = 0.0;
  for (int k = 0; k < a.support_rows(); ++k)
    for (int l = 0; l < a.support_cols(); ++l)
      acc += std::pow(1.0 + l, 2 * N) * std::pow(static_cast<double>(k - l), 2 * j) *
             std::norm(a.entry(k, l));
  return std::sqrt(acc);
}

double norm_MN(const CompactOp& a, int M, int N) {
  double acc = 0.0;
  CompactOp d = a;
  for (int j = 0; j <= M; ++j) {
    acc += binomial(M, j) * norm_0N(d, N);
    if (j < M) d = delta_k(d);
  }
  return acc;
}

double s_constant() {
  constexpr double pi = std::numbers::pi;
  return 0.5 + std::sqrt((4.0 * pi * pi - 9.0) / 12.0);
}

double toeplitz_norm_MN(const ToeplitzElem& a, int M, int N) {
  return s_constant() * cl_norm(a.symbol, M + N + 2).value + norm_MN(a.compact, M, N);
}

}  // namespace qdisk
