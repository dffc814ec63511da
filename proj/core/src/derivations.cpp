#include "qdisk/derivations.hpp"

#include <cmath>
#include <numbers>

#include "qdisk/errors.hpp"
#include "qdisk/operators.hpp"

namespace qdisk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs_entry(const Matrix& m, int rows, int cols) {
  double acc = 0.0;
  for (int k = 0; k < rows; ++k)
    for (int l = 0; l < cols; ++l) acc = std::max(acc, std::abs(m(k, l)));
  return acc;
}
}  // namespace

CovariantDerivation::CovariantDerivation(int n_, std::vector<cplx> beta_, double c, int p)
    : n(n_), beta(std::move(beta_)), growth_c(c), growth_n(p) {
  if (growth_c <= 0.0) {
    // derive a valid certificate over the support
    growth_c = 1e-300;
    for (std::size_t j = 0; j < beta.size(); ++j)
      growth_c = std::max(growth_c, std::abs(beta[j]) / std::pow(1.0 + j, growth_n));
  } else {
    for (std::size_t j = 0; j < beta.size(); ++j)
      if (std::abs(beta[j]) > growth_c * std::pow(1.0 + j, growth_n) * (1.0 + 1e-12))
        throw GrowthViolation("covariant derivation: certificate fails at j=" +
                              std::to_string(j));
  }
}

Matrix CovariantDerivation::generator(int dim) const {
  const int len = static_cast<int>(beta.size());
  if (len + std::abs(n) > dim)
    throw SupportOverflow("covariant generator outside window");
  Matrix g = Matrix::Zero(dim, dim);
  for (int j = 0; j < len; ++j) {
    if (n >= 0)
      g(j, j + n) = beta[j];
    else
      g(j - n, j) = beta[j];
  }
  return g;
}

GeneralDerivation::GeneralDerivation(std::map<std::pair<int, int>, cplx> betas_, double c,
                                     int r_, int p_)
    : betas(std::move(betas_)), growth_const(c), r(r_), p(p_) {
  for (const auto& [nj, v] : betas) {
    const auto [n, j] = nj;
    const double bound =
        growth_const * std::pow(1.0 + j, r) / std::pow(1.0 + std::abs(n), p);
    if (std::abs(v) > bound * (1.0 + 1e-12))
      throw GrowthViolation("general derivation: growth bound fails at (n,j)=(" +
                            std::to_string(n) + "," + std::to_string(j) + ")");
  }
}

Matrix GeneralDerivation::generator(int dim) const {
  Matrix g = Matrix::Zero(dim, dim);
  for (const auto& [nj, v] : betas) {
    const auto [n, j] = nj;
    const int row = n >= 0 ? j : j - n;
    const int col = n >= 0 ? j + n : j;
    if (row >= dim || col >= dim)
      throw SupportOverflow("general generator outside window");
    g(row, col) += v;
  }
  return g;
}

CompactOp apply_covariant(const CovariantDerivation& d, const CompactOp& a) {
  const int dim = a.dim();
  const Matrix g = d.generator(dim);
  const int len = static_cast<int>(d.beta.size());
  const int grow_rows = d.n >= 0 ? std::min(len, dim) : std::min(len + (-d.n), dim);
  const int grow_cols = d.n >= 0 ? std::min(len + d.n, dim) : std::min(len, dim);
  const Matrix comm = g * a.matrix() - a.matrix() * g;
  return CompactOp(comm, std::max(a.support_rows(), grow_rows),
                   std::max(a.support_cols(), grow_cols));
}

CompactOp apply_general(const GeneralDerivation& d, const CompactOp& a) {
  const int dim = a.dim();
  const Matrix g = d.generator(dim);
  const Matrix comm = g * a.matrix() - a.matrix() * g;
  // commutator entries can reach one generator-step beyond a's support
  return CompactOp::from_matrix(comm);
}

FourierComponentAction fourier_component(const DerivationAction& d, int n, int quad_points) {
  DerivationAction apply = [d, n, quad_points](const CompactOp& a) {
    CompactOp acc(a.dim());
    for (int q = 0; q < quad_points; ++q) {
      const double theta = static_cast<double>(q) / quad_points;
      CompactOp term = rho_theta(d(rho_theta(a, theta)), -theta);
      const cplx phase = std::polar(1.0 / quad_points, -kTwoPi * n * theta);
      acc = acc + term * phase;
    }
    return acc;
  };
  return {std::move(apply), n, quad_points};
}

namespace {

// Running suffix sums of a mode sequence: tail(k) = sum_{j>=k} seq[j].
std::vector<cplx> suffix_sums(const std::vector<cplx>& seq) {
  std::vector<cplx> tail(seq.size() + 1, cplx{0.0, 0.0});
  for (int j = static_cast<int>(seq.size()) - 1; j >= 0; --j)
    tail[j] = tail[j + 1] + seq[j];
  return tail;
}

}  // namespace

LiftResult lift_derivation(const CompactOp& b, const CompactOp& c, double tol) {
  if (b.dim() != c.dim()) throw Error("lift_derivation: window mismatch");
  const int dim = b.dim();
  if (b.support_rows() >= dim || c.support_cols() >= dim)
    throw SupportOverflow("lift_derivation: supports touch window edge");

  const Matrix u = shift(dim);
  const Matrix compat = c.matrix() * u + u.adjoint() * b.matrix();
  LiftResult out;
  out.residuals.compatibility = max_abs_entry(compat, dim, dim - 1);
  if (out.residuals.compatibility > tol)
    throw CompatibilityViolation("lift_derivation: ||cU + U*b|| = " +
                                 std::to_string(out.residuals.compatibility));

  const FourierModes mb = to_modes(b);
  const FourierModes mc = to_modes(c);

  // gamma_{n-1}(k+1) = -beta_{n+1}(k) for n > 0 and the mirrored relation for
  // n < 0 follow from the compatibility condition; alpha is assembled from
  // the prefix sums with the gauge alpha_0(0) = 0.
  std::map<int, cplx> f_coeffs;
  FourierModes alpha_tail;

  for (const auto& [m, beta_m] : mb.modes) {
    // b mode m feeds the alpha mode n = m - 1 <= 0
    const int n = m - 1;
    if (n > 0) continue;
    const auto tail = suffix_sums(beta_m);
    if (n == 0) {
      f_coeffs[0] += tail[0];
      std::vector<cplx> at(beta_m.size(), cplx{0.0, 0.0});
      for (std::size_t k = 0; k < beta_m.size(); ++k) at[k] = -tail[k];
      alpha_tail.modes[0] = std::move(at);
    } else {
      f_coeffs[n] += tail[0];
      std::vector<cplx> at(beta_m.size(), cplx{0.0, 0.0});
      for (std::size_t k = 0; k + 1 < beta_m.size(); ++k) at[k] = -tail[k + 1];
      alpha_tail.modes[n] = std::move(at);
    }
  }
  for (const auto& [m, gamma_m] : mc.modes) {
    // c mode m feeds the alpha mode n = m + 1 >= 1
    const int n = m + 1;
    if (n < 1) continue;
    const auto tail = suffix_sums(gamma_m);
    f_coeffs[n] += -tail[0];
    std::vector<cplx> at(gamma_m.size(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k + 1 < gamma_m.size(); ++k) at[k] = tail[k + 1];
    alpha_tail.modes[n] = std::move(at);
  }

  out.f = Symbol(std::move(f_coeffs)).trimmed();
  out.alpha_tilde = to_matrix(alpha_tail, dim).trimmed();
  out.alpha_realized = toeplitz_matrix(out.f, dim) + out.alpha_tilde.matrix();

  const int margin = out.f.band() + 2;
  const int interior = dim - margin;
  const Matrix comm_u = out.alpha_realized * u - u * out.alpha_realized - b.matrix();
  const Matrix comm_us = out.alpha_realized * u.adjoint() - u.adjoint() * out.alpha_realized -
                         c.matrix();
  out.residuals.comm_u = max_abs_entry(comm_u, interior, interior);
  out.residuals.comm_ustar = max_abs_entry(comm_us, interior, interior);
  return out;
}

ToeplitzElem vector_field_lift(const Symbol& F, const ToeplitzElem& a) {
  const int dim = a.dim();
  const SymbolSplit fs = split(F);
  const Matrix k_op = label_operator(dim);
  const Matrix g = toeplitz_matrix(fs.plus, dim) * k_op + k_op * toeplitz_matrix(fs.minus, dim);
  const Matrix aw = realize(a);
  const Matrix comm = g * aw - aw * g;

  // the symbol part is exact symbol calculus; the compact remainder is read
  // off the window away from the band-corrupted edge
  const Symbol h = product(F, derivative(a.symbol));
  const int margin = F.band() + a.symbol.band() + 2;
  return {h, certify_finite_support(comm - toeplitz_matrix(h, dim), margin)};
}

ClassifyResult classify_derivation(const ToeplitzElem& b, const ToeplitzElem& c, double tol) {
  if (b.dim() != c.dim()) throw Error("classify_derivation: window mismatch");
  const int dim = b.dim();

  // delta(U*U) = 0 is the admissibility condition; check it structurally.
  const ToeplitzElem z = toeplitz(Symbol::mode(1), dim);
  const ToeplitzElem zbar = toeplitz(Symbol::mode(-1), dim);
  const ToeplitzElem cond = mul(c, z) + mul(zbar, b);
  const double cond_res = std::max(cond.symbol.max_abs_coeff(), cond.compact.max_abs());
  if (cond_res > tol)
    throw CompatibilityViolation("classify: delta(U*U) residual = " +
                                 std::to_string(cond_res));

  ClassifyResult out;
  out.F = quotient(b).freq_shift(-1);

  ToeplitzElem b_rest = b - mul(z, toeplitz(out.F, dim));
  ToeplitzElem c_rest = c + mul(toeplitz(out.F, dim), zbar);
  out.symbol_residual =
      std::max(b_rest.symbol.max_abs_coeff(), c_rest.symbol.max_abs_coeff());
  if (out.symbol_residual > tol)
    throw CompatibilityViolation("classify: lift part leaves a symbol residual " +
                                 std::to_string(out.symbol_residual));

  out.inner = lift_derivation(b_rest.compact, c_rest.compact, tol);
  return out;
}

}  // namespace qdisk
