#include "qdisk/mobius.hpp"

#include <cmath>

#include "qdisk/errors.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"

namespace qdisk {

SU11Element::SU11Element(cplx a, cplx b) : alpha(a), beta(b) {
  const double defect = std::abs(std::norm(a) - std::norm(b) - 1.0);
  if (defect > 1e-12)
    throw Error("SU(1,1) constraint |alpha|^2 - |beta|^2 = 1 violated by " +
                std::to_string(defect));
}

SU11Element group_product(const SU11Element& g, const SU11Element& h) {
  return {g.alpha * h.alpha + g.beta * std::conj(h.beta),
          g.alpha * h.beta + g.beta * std::conj(h.alpha)};
}

MobiusSymbol mobius_symbol(const SU11Element& g, int band) {
  if (band < 1) throw Error("mobius_symbol: band must be >= 1");
  const cplx q = -std::conj(g.beta) / std::conj(g.alpha);
  const cplx a2 = std::conj(g.alpha) * std::conj(g.alpha);
  std::map<int, cplx> coeffs;
  coeffs[0] = g.beta / std::conj(g.alpha);
  cplx qp{1.0, 0.0};  // q^{n-1}
  for (int n = 1; n <= band; ++n) {
    coeffs[n] = qp / a2;
    qp *= q;
  }
  // remaining coefficients are q^{n-1}/conj(alpha)^2, a geometric tail
  const double r = std::abs(q);
  const double tail =
      r < 1.0 ? std::pow(r, band) / (std::abs(a2) * (1.0 - r)) : std::numeric_limits<double>::infinity();
  return {Symbol(std::move(coeffs)).trimmed(), tail};
}

int central_margin(const SU11Element& g, int dim) {
  const double r = g.contraction();
  int eff = 4;
  if (r > 0.0) eff = static_cast<int>(std::ceil(std::log(1e-9) / std::log(r))) + 4;
  const int margin = std::max(8, eff);
  if (margin >= dim - 4)
    throw IllConditioned("window of size " + std::to_string(dim) +
                         " too small for contraction " + std::to_string(r));
  return margin;
}

Matrix mobius_isometry_window(const SU11Element& g, int dim) {
  const Matrix u = shift(dim);
  Matrix num = g.alpha * u + g.beta * Matrix::Identity(dim, dim);
  Matrix den = std::conj(g.beta) * u + std::conj(g.alpha) * Matrix::Identity(dim, dim);
  // den is lower triangular with a geometric inverse; the window inverse of
  // a lower-triangular Toeplitz matrix is the window of the true inverse.
  Matrix den_inv =
      den.triangularView<Eigen::Lower>().solve(Matrix::Identity(dim, dim));
  return num * den_inv;
}

ToeplitzElem mobius_isometry(const SU11Element& g, int dim) {
  const double r = g.contraction();
  int band = dim - 8;
  if (r > 0.0)
    band = std::min(band, static_cast<int>(std::ceil(std::log(1e-13) / std::log(r))));
  band = std::max(band, 1);
  const MobiusSymbol sym = mobius_symbol(g, band);
  const Matrix m = mobius_isometry_window(g, dim);
  CompactOp compact = CompactOp::from_matrix(m - toeplitz_matrix(sym.value, dim));
  return {sym.value, std::move(compact)};
}

Vector kernel_vector(const SU11Element& g, int dim) {
  Vector f0(dim);
  const cplx q = -std::conj(g.beta) / std::conj(g.alpha);
  cplx v = 1.0 / std::conj(g.alpha);
  for (int k = 0; k < dim; ++k) {
    f0(k) = v;
    v *= q;
  }
  return f0;
}

ImplementingUnitary implementing_unitary(const SU11Element& g, int dim) {
  const Matrix w = mobius_isometry_window(g, dim);
  Matrix u(dim, dim);
  Vector col = kernel_vector(g, dim);
  for (int k = 0; k < dim; ++k) {
    u.col(k) = col;
    if (k + 1 < dim) col = w * col;
  }
  // W is lower triangular with exact window entries, so every column entry
  // below dim is the true coefficient of F_k; the only error is the mass the
  // true column carries past the window.  The mass F_k spreads right at a
  // rate set by the derivative of the circle map, so the usable column count
  // is read off the column norms rather than fixed a priori.
  int usable = 0;
  while (usable < dim && std::abs(1.0 - u.col(usable).squaredNorm()) < 1e-12) ++usable;
  if (usable == 0)
    throw IllConditioned("window of size " + std::to_string(dim) +
                         " certifies no columns of the implementing unitary");

  ImplementingUnitary out{std::move(u), 0.0, usable};
  const Matrix gram = out.u.adjoint() * out.u;
  for (int i = 0; i < out.central; ++i)
    for (int j = 0; j < out.central; ++j) {
      const cplx expect = i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
      out.gram_residual = std::max(out.gram_residual, std::abs(gram(i, j) - expect));
    }
  if (out.gram_residual > 1e-6)
    throw IllConditioned("implementing unitary lost orthonormality: residual " +
                         std::to_string(out.gram_residual));
  return out;
}

std::array<double, 4> decay_profile(const Matrix& m, int rows, int cols) {
  std::array<double, 4> profile{};
  for (int k = 0; k < rows; ++k)
    for (int l = 0; l < cols; ++l) {
      const double a = std::abs(m(k, l));
      if (a == 0.0) continue;
      double w = 1.0;
      for (int r = 0; r < 4; ++r) {
        w *= (1.0 + k) * (1.0 + l);
        profile[r] = std::max(profile[r], a * w);
      }
    }
  return profile;
}

ConjugationResult conjugate(const SU11Element& g, const CompactOp& a) {
  const int dim = a.dim();
  const ImplementingUnitary ug = implementing_unitary(g, dim);
  // only the certified columns of U_g touch the operand
  if (std::max(a.support_rows(), a.support_cols()) > ug.central)
    throw SupportOverflow("conjugate: operand support reaches uncertified columns");
  const Matrix result = ug.u * a.matrix() * ug.u.adjoint();
  ConjugationResult out{CompactOp::from_matrix(result), decay_profile(result, dim, dim)};
  return out;
}

Matrix conjugate_window(const ImplementingUnitary& ug, const Matrix& m) {
  return ug.u * m * ug.u.adjoint();
}

Matrix delta_k_window(const Matrix& m) {
  Matrix out = m;
  for (int k = 0; k < m.rows(); ++k)
    for (int l = 0; l < m.cols(); ++l) out(k, l) *= static_cast<double>(k - l);
  return out;
}

MobiusReport mobius_report(const SU11Element& g, int dim) {
  MobiusReport rep;
  rep.dim = dim;
  const int w_central = dim - central_margin(g, dim);

  const ToeplitzElem w_elem = mobius_isometry(g, dim);
  rep.w_symbol = w_elem.symbol;
  rep.w_tail_bound = mobius_symbol(g, w_elem.symbol.band()).tail_bound;
  rep.w_compact_max = w_elem.compact.max_abs();

  const Matrix w = mobius_isometry_window(g, dim);
  const Vector f0 = kernel_vector(g, dim);
  rep.f0.assign(f0.data(), f0.data() + dim);
  rep.f0_norm_deficit = std::abs(1.0 - f0.squaredNorm());
  rep.kernel_residual = (w.adjoint() * f0).norm();

  const Matrix iso = w.adjoint() * w - Matrix::Identity(dim, dim);
  rep.isometry_residual = op_norm(iso.topLeftCorner(w_central, w_central));

  const ImplementingUnitary ug = implementing_unitary(g, dim);
  rep.central = ug.central;
  rep.gram_residual = ug.gram_residual;
  const Matrix conj_u = conjugate_window(ug, shift(dim)) - w;
  rep.conjugation_residual = op_norm(conj_u.topLeftCorner(ug.central, ug.central));

  // delta_K(W_g) = U (conj(alpha) + conj(beta) U)^{-2}
  const Matrix u = shift(dim);
  Matrix den = std::conj(g.beta) * u + std::conj(g.alpha) * Matrix::Identity(dim, dim);
  Matrix den_inv = den.triangularView<Eigen::Lower>().solve(Matrix::Identity(dim, dim));
  const Matrix rhs = u * den_inv * den_inv;
  rep.delta_k_identity_residual =
      op_norm((delta_k_window(w) - rhs).topLeftCorner(w_central, w_central));

  const ConjugationResult p00 = conjugate(g, unit(0, 0, dim));
  rep.decay_profile = p00.decay_profile;
  return rep;
}

}  // namespace qdisk
