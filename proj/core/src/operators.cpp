#include "qdisk/operators.hpp"

#include <cmath>
#include <numbers>

#include "qdisk/errors.hpp"

namespace qdisk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CompactOp unit(int k, int l, int dim) {
  if (k < 0 || l < 0 || k >= dim || l >= dim)
    throw IndexOutOfWindow("unit: indices outside window");
  CompactOp p(dim);
  p.set(k, l, cplx{1.0, 0.0});
  return p;
}

CompactOp proj_below(int n, int dim) {
  if (n < 0 || n > dim) throw IndexOutOfWindow("proj_below: bound outside window");
  CompactOp p(dim);
  for (int k = 0; k < n; ++k) p.set(k, k, cplx{1.0, 0.0});
  return p;
}

Matrix shift(int dim) {
  Matrix u = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) u(k + 1, k) = cplx{1.0, 0.0};
  return u;
}

Matrix label_operator(int dim) {
  Matrix k = Matrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) k(j, j) = cplx{static_cast<double>(j), 0.0};
  return k;
}

Matrix toeplitz_matrix(const Symbol& f, int dim) {
  Matrix t = Matrix::Zero(dim, dim);
  for (int n = -f.band(); n <= f.band(); ++n) {
    const cplx v = f.coeff(n);
    if (v == cplx{0.0, 0.0}) continue;
    for (int l = std::max(0, -n); l < dim && l + n < dim; ++l) t(l + n, l) = v;
  }
  return t;
}

Matrix realize(const ToeplitzElem& a, int dim) {
  Matrix m = toeplitz_matrix(a.symbol, dim);
  const int c = std::min(dim, a.compact.dim());
  if (std::max(a.compact.support_rows(), a.compact.support_cols()) > dim)
    throw SupportOverflow("realize: compact support exceeds requested window");
  m.topLeftCorner(c, c) += a.compact.matrix().topLeftCorner(c, c);
  return m;
}

ToeplitzElem toeplitz(const Symbol& f, int dim) { return {f, CompactOp(dim)}; }

ToeplitzElem from_compact(const CompactOp& c) { return {Symbol{}, c}; }

ToeplitzElem identity_elem(int dim) { return {Symbol::constant(1.0), CompactOp(dim)}; }

CompactOp to_matrix(const FourierModes& modes, int dim) {
  CompactOp a(dim);
  for (const auto& [n, seq] : modes.modes) {
    for (int k = 0; k < static_cast<int>(seq.size()); ++k) {
      if (seq[k] == cplx{0.0, 0.0}) continue;
      const int row = n >= 0 ? k + n : k;
      const int col = n >= 0 ? k : k - n;
      if (row >= dim || col >= dim)
        throw SupportOverflow("to_matrix: mode entry outside window");
      a.set(row, col, a.entry(row, col) + seq[k]);
    }
  }
  return a;
}

FourierModes to_modes(const CompactOp& a) {
  FourierModes out;
  const int rows = a.support_rows(), cols = a.support_cols();
  for (int n = -(cols - 1); n < rows; ++n) {
    std::vector<cplx> seq;
    bool any = false;
    const int len = n >= 0 ? rows - n : cols + n;
    for (int k = 0; k < len; ++k) {
      const int row = n >= 0 ? k + n : k;
      const int col = n >= 0 ? k : k - n;
      const cplx v = a.entry(row, col);
      seq.push_back(v);
      if (v != cplx{0.0, 0.0}) any = true;
    }
    while (!seq.empty() && seq.back() == cplx{0.0, 0.0}) seq.pop_back();
    if (any) out.modes[n] = std::move(seq);
  }
  return out;
}

CompactOp product_defect(const Symbol& f, const Symbol& g, int dim) {
  const SymbolSplit fs = split(f);
  const Symbol& fp = fs.plus;
  CompactOp d(dim);
  if (f.band() + g.band() > dim)
    throw SupportOverflow("product_defect: bands exceed window");
  for (int n = -1; n >= -g.band(); --n) {
    const cplx gn = g.coeff(n);
    if (gn == cplx{0.0, 0.0}) continue;
    // (U*)^{-n} T(f_+) P_{<-n} has entries (l + m + n, l) for l < -n, m in
    // the support of f_+; rows below zero are annihilated by the co-shift.
    for (int l = 0; l < -n; ++l) {
      for (int m = 0; m <= fp.band(); ++m) {
        const cplx fm = fp.coeff(m);
        if (fm == cplx{0.0, 0.0}) continue;
        const int row = l + m + n;
        if (row < 0) continue;
        d.set(row, l, d.entry(row, l) - gn * fm);
      }
    }
  }
  return d;
}

CompactOp toeplitz_left(const Symbol& f, const CompactOp& c) {
  const int dim = c.dim();
  if (c.support_rows() + f.band() > dim)
    throw SupportOverflow("toeplitz_left: rows would leave window");
  const Matrix prod = toeplitz_matrix(f, dim) * c.matrix();
  return CompactOp(prod, std::min(dim, c.support_rows() + f.band()), c.support_cols());
}

CompactOp toeplitz_right(const CompactOp& c, const Symbol& g) {
  const int dim = c.dim();
  if (c.support_cols() + g.band() > dim)
    throw SupportOverflow("toeplitz_right: columns would leave window");
  const Matrix prod = c.matrix() * toeplitz_matrix(g, dim);
  return CompactOp(prod, c.support_rows(), std::min(dim, c.support_cols() + g.band()));
}

ToeplitzElem mul(const ToeplitzElem& a, const ToeplitzElem& b) {
  if (a.dim() != b.dim()) throw Error("mul: window mismatch");
  const int dim = a.dim();
  CompactOp compact = product_defect(a.symbol, b.symbol, dim);
  compact = compact + toeplitz_left(a.symbol, b.compact);
  compact = compact + toeplitz_right(a.compact, b.symbol);
  compact = compact + a.compact * b.compact;
  return {product(a.symbol, b.symbol), compact.trimmed()};
}

CompactOp rho_theta(const CompactOp& a, double theta) {
  Matrix m = a.matrix();
  for (int k = 0; k < a.support_rows(); ++k)
    for (int l = 0; l < a.support_cols(); ++l)
      m(k, l) *= std::polar(1.0, kTwoPi * theta * (k - l));
  return CompactOp(std::move(m), a.support_rows(), a.support_cols());
}

ToeplitzElem rho_theta(const ToeplitzElem& a, double theta) {
  std::map<int, cplx> rotated;
  for (int n = -a.symbol.band(); n <= a.symbol.band(); ++n)
    rotated[n] = a.symbol.coeff(n) * std::polar(1.0, kTwoPi * theta * n);
  return {Symbol(std::move(rotated)).trimmed(), rho_theta(a.compact, theta)};
}

std::map<std::pair<int, int>, cplx> kernel_coeffs(const CompactOp& a) {
  std::map<std::pair<int, int>, cplx> out;
  for (int k = 0; k < a.support_rows(); ++k)
    for (int l = 0; l < a.support_cols(); ++l) {
      const cplx v = a.entry(k, l);
      if (v != cplx{0.0, 0.0}) out[{k, -l}] = v;
    }
  return out;
}

CompactOp certify_finite_support(const Matrix& residual_window, int trust_margin,
                                 double rel_tol) {
  const int dim = static_cast<int>(residual_window.rows());
  const int trust = dim - trust_margin;
  if (trust <= 8) throw SupportOverflow("window too small for the requested margin");

  double scale = 0.0;
  for (int k = 0; k < trust; ++k)
    for (int l = 0; l < trust; ++l) scale = std::max(scale, std::abs(residual_window(k, l)));
  const double thresh = std::max(rel_tol * scale, 1e-300);

  int rows = 0, cols = 0;
  for (int k = 0; k < trust; ++k)
    for (int l = 0; l < trust; ++l)
      if (std::abs(residual_window(k, l)) > thresh) {
        rows = std::max(rows, k + 1);
        cols = std::max(cols, l + 1);
      }
  if (rows > trust - 8 || cols > trust - 8)
    throw SupportOverflow("compact part reaches the untrusted window edge");

  Matrix clean = Matrix::Zero(dim, dim);
  clean.topLeftCorner(rows, cols) = residual_window.topLeftCorner(rows, cols);
  return CompactOp(std::move(clean), rows, cols);
}

CompactOp diagonal_expectation(const CompactOp& a) {
  CompactOp d(a.dim());
  const int n = std::min(a.support_rows(), a.support_cols());
  for (int k = 0; k < n; ++k) {
    const cplx v = a.entry(k, k);
    if (v != cplx{0.0, 0.0}) d.set(k, k, v);
  }
  return d;
}

}  // namespace qdisk
