#include "qdisk/compact_op.hpp"

#include <algorithm>

#include "qdisk/errors.hpp"

namespace qdisk {

CompactOp::CompactOp(int dim) : m_(Matrix::Zero(dim, dim)), rows_(0), cols_(0) {}

CompactOp::CompactOp(Matrix m, int support_rows, int support_cols)
    : m_(std::move(m)), rows_(support_rows), cols_(support_cols) {
  if (m_.rows() != m_.cols()) throw Error("CompactOp window must be square");
  if (rows_ > dim() || cols_ > dim())
    throw SupportOverflow("declared support exceeds window");
}

CompactOp CompactOp::from_matrix(Matrix m, double tol) {
  int rows = 0, cols = 0;
  for (int k = 0; k < m.rows(); ++k)
    for (int l = 0; l < m.cols(); ++l)
      if (std::abs(m(k, l)) > tol) {
        rows = std::max(rows, k + 1);
        cols = std::max(cols, l + 1);
      } else {
        m(k, l) = cplx{0.0, 0.0};
      }
  return CompactOp(std::move(m), rows, cols);
}

bool CompactOp::is_zero(double tol) const { return max_abs() <= tol; }

void CompactOp::set(int k, int l, cplx v) {
  if (k < 0 || l < 0 || k >= dim() || l >= dim())
    throw IndexOutOfWindow("CompactOp::set outside window");
  m_(k, l) = v;
  rows_ = std::max(rows_, k + 1);
  cols_ = std::max(cols_, l + 1);
}

CompactOp CompactOp::adjoint() const { return CompactOp(m_.adjoint(), cols_, rows_); }

CompactOp CompactOp::operator+(const CompactOp& b) const {
  if (dim() != b.dim()) throw Error("CompactOp window mismatch");
  return CompactOp(m_ + b.m_, std::max(rows_, b.rows_), std::max(cols_, b.cols_));
}

CompactOp CompactOp::operator-(const CompactOp& b) const {
  if (dim() != b.dim()) throw Error("CompactOp window mismatch");
  return CompactOp(m_ - b.m_, std::max(rows_, b.rows_), std::max(cols_, b.cols_));
}

CompactOp CompactOp::operator*(cplx s) const { return CompactOp(m_ * s, rows_, cols_); }

CompactOp CompactOp::operator*(const CompactOp& b) const {
  if (dim() != b.dim()) throw Error("CompactOp window mismatch");
  // Both supports lie inside the window, so the inner sum never reaches past
  // it: the dense product is the true operator product.
  return CompactOp(m_ * b.m_, rows_, b.cols_);
}

double CompactOp::max_abs() const {
  double m = 0.0;
  for (int k = 0; k < rows_; ++k)
    for (int l = 0; l < cols_; ++l) m = std::max(m, std::abs(m_(k, l)));
  return m;
}

CompactOp CompactOp::trimmed(double tol) const {
  Matrix m = m_;
  return from_matrix(std::move(m), tol);
}

CompactOp CompactOp::resized(int new_dim) const {
  if (new_dim < std::max(rows_, cols_))
    throw SupportOverflow("resize would cut declared support");
  Matrix m = Matrix::Zero(new_dim, new_dim);
  const int c = std::min(new_dim, dim());
  m.topLeftCorner(c, c) = m_.topLeftCorner(c, c);
  return CompactOp(std::move(m), rows_, cols_);
}

DiagonalOp DiagonalOp::shifted(int s) const {
  std::vector<cplx> shifted_values;
  const int n = static_cast<int>(values_.size());
  for (int k = 0; k + s < n; ++k) shifted_values.push_back(values_[k + s]);
  return DiagonalOp(std::move(shifted_values), tail_);
}

Matrix DiagonalOp::realize(int dim) const {
  Matrix m = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = value(k);
  return m;
}

}  // namespace qdisk
