#ifndef QDISK_COMPACT_OP_HPP
#define QDISK_COMPACT_OP_HPP

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "qdisk/symbol.hpp"

namespace qdisk {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A finitely supported operator on l^2(Z>=0), stored as a dense window of
/// size dim with a declared support (row/col bounds, exclusive).  Entries
/// outside the declared support are zero, so window arithmetic on these
/// values is exact operator arithmetic, not a truncation.
class CompactOp {
 public:
  CompactOp() = default;
  explicit CompactOp(int dim);
  CompactOp(Matrix m, int support_rows, int support_cols);
  static CompactOp zero(int dim) { return CompactOp(dim); }

  /// Declares support from the actual nonzero extent of m (|entry| > tol).
  static CompactOp from_matrix(Matrix m, double tol = 0.0);

  int dim() const { return static_cast<int>(m_.rows()); }
  int support_rows() const { return rows_; }
  int support_cols() const { return cols_; }
  bool is_zero(double tol = 1e-14) const;

  const Matrix& matrix() const { return m_; }
  cplx entry(int k, int l) const { return m_(k, l); }

  void set(int k, int l, cplx v);  // grows declared support

  CompactOp adjoint() const;  // swaps support bounds
  CompactOp operator+(const CompactOp& b) const;
  CompactOp operator-(const CompactOp& b) const;
  CompactOp operator*(cplx s) const;
  CompactOp operator*(const CompactOp& b) const;  // exact; support (a.rows, b.cols)

  double max_abs() const;

  /// Re-declares support from the nonzero extent, dropping |entries| <= tol.
  CompactOp trimmed(double tol = 0.0) const;

  /// Pads or rejects to a new window size; growing is always safe.
  CompactOp resized(int new_dim) const;

 private:
  Matrix m_;
  int rows_ = 0, cols_ = 0;
};

/// Diagonal operator f(K) given by a value table and an eventually constant
/// tail; value(k) = table[k] for k < table length, tail afterwards.
class DiagonalOp {
 public:
  DiagonalOp() = default;
  DiagonalOp(std::vector<cplx> values, cplx tail) : values_(std::move(values)), tail_(tail) {}

  static DiagonalOp constant(cplx v) { return DiagonalOp({}, v); }

  cplx value(int k) const {
    return k < static_cast<int>(values_.size()) ? values_[k] : tail_;
  }
  cplx tail() const { return tail_; }

  /// f(K + s I), i.e. value(k) -> value(k + s).
  DiagonalOp shifted(int s) const;

  Matrix realize(int dim) const;

 private:
  std::vector<cplx> values_;
  cplx tail_{0.0, 0.0};
};

/// Fourier-mode data of an operator: mode n maps to the finitely supported
/// sequence a_n(k), k >= 0.
struct FourierModes {
  std::map<int, std::vector<cplx>> modes;

  bool empty() const { return modes.empty(); }
};

/// An element T(f) + c of the smooth Toeplitz algebra.  The Toeplitz part is
/// kept as its symbol (never materialized as an infinite matrix); only the
/// compact correction lives in the window.
struct ToeplitzElem {
  Symbol symbol;
  CompactOp compact;

  int dim() const { return compact.dim(); }

  ToeplitzElem adjoint() const { return {symbol.conj_reflect(), compact.adjoint()}; }
  ToeplitzElem operator+(const ToeplitzElem& b) const {
    return {symbol + b.symbol, compact + b.compact};
  }
  ToeplitzElem operator-(const ToeplitzElem& b) const {
    return {symbol - b.symbol, compact - b.compact};
  }
  ToeplitzElem operator*(cplx s) const { return {symbol * s, compact * s}; }
};

}  // namespace qdisk

#endif
