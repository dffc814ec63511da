#include "qdisk/calculus.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>

#include "qdisk/errors.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"

namespace qdisk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int support_block(const CompactOp& c) {
  return std::max(c.support_rows(), c.support_cols());
}

void check_enclosed(const std::vector<cplx>& points, const Contour& contour) {
  for (const cplx& z : points)
    if (std::abs(z - contour.center) > contour.radius * 0.98)
      throw ContourTooTight("spectrum point " + std::to_string(z.real()) + "+" +
                            std::to_string(z.imag()) + "i too close to the contour");
}

Matrix cauchy_quadrature(const Matrix& m, const ScalarFn& f, const Contour& contour) {
  const int dim = static_cast<int>(m.rows());
  const int q_count = contour.nodes;
  Matrix acc = Matrix::Zero(dim, dim);
  const Matrix id = Matrix::Identity(dim, dim);
  for (int q = 0; q < q_count; ++q) {
    const cplx rot = std::polar(1.0, kTwoPi * q / q_count);
    const cplx zeta = contour.center + contour.radius * rot;
    Eigen::PartialPivLU<Matrix> lu(zeta * id - m);
    const Matrix resolvent = lu.solve(id);
    // crude conditioning check: a resolvent blowing up means the contour
    // passes through the window spectrum
    if (!resolvent.allFinite() || resolvent.norm() > 1e14)
      throw Singular("resolvent ill-conditioned at a quadrature node");
    acc += (f(zeta) * contour.radius * rot / static_cast<double>(q_count)) * resolvent;
  }
  return acc;
}

std::vector<cplx> window_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  std::vector<cplx> out(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

// Adaptive symbol for x -> g(h(x)) with rapidly decaying coefficients.
Symbol composed_symbol(const Symbol& h, const std::function<cplx(cplx)>& g, int max_band) {
  const int grid = std::max(512, 8 * (max_band + 1));
  std::vector<cplx> samples(grid);
  for (int q = 0; q < grid; ++q)
    samples[q] = g(h.eval(static_cast<double>(q) / grid));
  Symbol full = symbol_from_samples(samples, max_band);
  // trim the numerically-zero geometric tail
  const double thresh = 1e-15 * std::max(1.0, full.max_abs_coeff());
  std::map<int, cplx> kept;
  for (int n = -full.band(); n <= full.band(); ++n)
    if (std::abs(full.coeff(n)) > thresh) kept[n] = full.coeff(n);
  return Symbol(std::move(kept)).trimmed();
}

}  // namespace

Contour default_contour(const Matrix& window) {
  double rad = 0.0;
  for (const cplx& z : window_eigenvalues(window)) rad = std::max(rad, std::abs(z));
  return {cplx{0.0, 0.0}, std::max(1.0, 1.25 * rad), 64};
}

CompactOp invert_one_plus(const CompactOp& c) {
  const int s = support_block(c);
  const int dim = c.dim();
  if (s == 0) return CompactOp(dim);
  const Matrix block = c.matrix().topLeftCorner(s, s);
  const Matrix one_plus = Matrix::Identity(s, s) + block;
  const Eigen::JacobiSVD<Matrix> svd(one_plus);
  const double smin = svd.singularValues()(s - 1);
  if (smin < 1e-12 * std::max(1.0, svd.singularValues()(0)))
    throw Singular("invert_one_plus: I + c singular, sigma_min = " + std::to_string(smin));
  Matrix inv_block = one_plus.partialPivLu().solve(Matrix::Identity(s, s));
  Matrix out = Matrix::Zero(dim, dim);
  out.topLeftCorner(s, s) = inv_block - Matrix::Identity(s, s);
  return CompactOp(std::move(out), s, s);
}

ToeplitzInverse invert_toeplitz(const ToeplitzElem& a, int target_band) {
  const int dim = a.dim();
  const Symbol& f = a.symbol;
  if (target_band <= 0) target_band = std::min(dim / 2, std::max(16, 4 * (f.band() + 1)));

  ToeplitzInverse out;
  const ReciprocalResult recip = reciprocal(f, target_band);  // throws NearZeroSymbol
  out.symbol_residual = recip.residual;

  const Matrix aw = realize(a);
  const Eigen::JacobiSVD<Matrix> svd(aw);
  const double smin = svd.singularValues()(dim - 1);
  if (smin < 1e-12 * std::max(1.0, svd.singularValues()(0)))
    throw Singular("invert_toeplitz: window matrix singular, sigma_min = " +
                   std::to_string(smin));
  const Matrix inv = aw.partialPivLu().solve(Matrix::Identity(dim, dim));

  CompactOp b = CompactOp::from_matrix(inv - toeplitz_matrix(recip.value, dim));
  out.value = {recip.value, std::move(b)};

  const int margin = std::max(8, f.band() + 4);
  const int central = std::max(1, dim - margin);
  const Matrix check = aw * inv - Matrix::Identity(dim, dim);
  for (int k = 0; k < central; ++k)
    for (int l = 0; l < central; ++l)
      out.window_residual = std::max(out.window_residual, std::abs(check(k, l)));

  // The rapid-decay diagnostic must not see the reciprocal's truncation tail
  // (constant along diagonals) or the finite-section edge corruption, both of
  // which the polynomial weights amplify as the window grows.  Measure
  // against the full-band reciprocal on a fixed block, where the entries
  // converge with dim.
  out.decay_profile = [&] {
    const ReciprocalResult full = reciprocal(f, central - 1);
    const Matrix b_full = inv - toeplitz_matrix(full.value, dim);
    const int block = std::min(central, 32);
    std::array<double, 4> profile{};
    for (int k = 0; k < block; ++k)
      for (int l = 0; l < block; ++l) {
        const double v = std::abs(b_full(k, l));
        if (v == 0.0) continue;
        double w = 1.0;
        for (int r = 0; r < 4; ++r) {
          w *= (1.0 + k) * (1.0 + l);
          profile[r] = std::max(profile[r], v * w);
        }
      }
    return profile;
  }();
  return out;
}

CompactOp holo_calc(const CompactOp& c, const ScalarFn& f, const Contour& contour) {
  if (std::abs(f(cplx{0.0, 0.0})) > 1e-12)
    throw Error("holo_calc on a compact operand requires f(0) = 0");
  const int s = support_block(c);
  const int dim = c.dim();
  if (s == 0) return CompactOp(dim);
  const Matrix block = c.matrix().topLeftCorner(s, s);
  std::vector<cplx> spectrum = window_eigenvalues(block);
  spectrum.push_back(cplx{0.0, 0.0});  // tail of the window
  check_enclosed(spectrum, contour);
  const Matrix fb = cauchy_quadrature(block, f, contour);
  Matrix out = Matrix::Zero(dim, dim);
  out.topLeftCorner(s, s) = fb;
  return CompactOp(std::move(out), s, s);
}

ToeplitzElem holo_calc(const ToeplitzElem& a, const ScalarFn& f, const Contour& contour) {
  const int dim = a.dim();
  const Matrix aw = realize(a);
  std::vector<cplx> spectrum = window_eigenvalues(aw);
  // the symbol curve carries the essential spectrum; it must be enclosed for
  // the quotient of the result to be f o symbol
  const int grid = 16 * (a.symbol.band() + 1);
  for (int q = 0; q < grid; ++q)
    spectrum.push_back(a.symbol.eval(static_cast<double>(q) / grid));
  check_enclosed(spectrum, contour);

  const Matrix m = cauchy_quadrature(aw, f, contour);
  const Symbol sym = composed_symbol(a.symbol, f, dim / 2);
  CompactOp compact = CompactOp::from_matrix(m - toeplitz_matrix(sym, dim));
  return {sym, std::move(compact)};
}

Matrix expm_minus_identity(const Matrix& m) {
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();  // induced 1-norm
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5 && squarings < 60) {
    scale *= 0.5;
    ++squarings;
  }
  const Matrix x = m * scale;
  // Taylor to stagnation; ||x|| <= 1/2 so ~20 terms reach machine precision
  Matrix term = x;
  Matrix acc = x;
  for (int k = 2; k <= 24; ++k) {
    term = (term * x) / static_cast<double>(k);
    acc += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * std::max(1.0, acc.cwiseAbs().maxCoeff()))
      break;
  }
  for (int s = 0; s < squarings; ++s) acc = acc * acc + 2.0 * acc;  // (E-I) doubling
  return acc;
}

CompactOp exp_compact(const CompactOp& c) {
  const int s = support_block(c);
  const int dim = c.dim();
  if (s == 0) return CompactOp(dim);
  const Matrix block = expm_minus_identity(c.matrix().topLeftCorner(s, s));
  Matrix out = Matrix::Zero(dim, dim);
  out.topLeftCorner(s, s) = block;
  return CompactOp(std::move(out), s, s);
}

ToeplitzElem exp_unitary(const ToeplitzElem& a, double t) {
  const int dim = a.dim();
  const cplx it{0.0, t};
  const Symbol sym = composed_symbol(a.symbol, [&](cplx z) { return std::exp(it * z); },
                                     dim / 2);
  const Matrix ew =
      expm_minus_identity(it * realize(a)) + Matrix::Identity(dim, dim);
  CompactOp compact = CompactOp::from_matrix(ew - toeplitz_matrix(sym, dim));
  return {sym, std::move(compact)};
}

double smooth_bump(double x, double lo, double hi) {
  if (x <= lo || x >= hi) return 0.0;
  const double u = 2.0 * (x - lo) / (hi - lo) - 1.0;  // (-1, 1)
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

namespace {
double smooth_step01(double t) {
  auto sigma = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  return sigma(t) / (sigma(t) + sigma(1.0 - t));
}
}  // namespace

cplx PeriodicExtension::eval(double x) const {
  cplx acc{0.0, 0.0};
  for (int n = -n_max; n <= n_max; ++n)
    acc += coeffs[n + n_max] * std::polar(1.0, kTwoPi * n * x / L);
  return acc;
}

cplx PeriodicExtension::coeff(int n) const {
  if (std::abs(n) > n_max) return {0.0, 0.0};
  return coeffs[n + n_max];
}

PeriodicExtension make_periodic_extension(const RealFn& f, double spectral_radius,
                                          double L, int grid) {
  const double R = spectral_radius;
  if (L <= 0.0) L = 3.0 * std::max(R, 1.0) + 1.0;
  if (L <= 2.0 * R)
    throw BadExtension("period L must exceed twice the spectral radius");
  const double blend = std::min(L / 8.0, 0.5 * (L / 2.0 - R));

  PeriodicExtension ext;
  ext.L = L;
  ext.spectral_radius = R;

  // samples of f blended to zero outside [-R-blend, R+blend], over one period
  std::vector<cplx> samples(grid);
  for (int q = 0; q < grid; ++q) {
    double x = L * q / grid;
    if (x > L / 2.0) x -= L;  // principal interval [-L/2, L/2)
    double w = 1.0;
    const double ax = std::abs(x);
    if (ax >= R + blend)
      w = 0.0;
    else if (ax > R)
      w = 1.0 - smooth_step01((ax - R) / blend);
    samples[q] = w * f(x);
  }

  // discrete transform, then trim the rapidly decaying tail
  const int max_n = grid / 2 - 1;
  std::vector<cplx> all(2 * max_n + 1);
  double top = 0.0;
  for (int n = -max_n; n <= max_n; ++n) {
    cplx acc{0.0, 0.0};
    for (int q = 0; q < grid; ++q)
      acc += samples[q] * std::polar(1.0, -kTwoPi * n * q / grid);
    all[n + max_n] = acc / static_cast<double>(grid);
    top = std::max(top, std::abs(all[n + max_n]));
  }
  int keep = 0;
  for (int n = 0; n <= max_n; ++n)
    if (std::abs(all[n + max_n]) > 1e-16 * top || std::abs(all[-n + max_n]) > 1e-16 * top)
      keep = n;
  ext.n_max = keep;
  ext.coeffs.assign(all.begin() + (max_n - keep), all.begin() + (max_n + keep + 1));

  for (int q = 0; q <= 256; ++q) {
    const double x = -R + 2.0 * R * q / 256.0;
    ext.reproduction_error =
        std::max(ext.reproduction_error, std::abs(ext.eval(x) - f(x)));
  }
  return ext;
}

namespace {
void require_reproduction(const PeriodicExtension& ext, double needed_radius) {
  if (ext.spectral_radius < needed_radius)
    throw BadExtension("extension built for radius " +
                       std::to_string(ext.spectral_radius) + " but operand needs " +
                       std::to_string(needed_radius));
  if (ext.reproduction_error > 1e-7)
    throw BadExtension("extension does not reproduce f: error " +
                       std::to_string(ext.reproduction_error));
}
}  // namespace

CompactOp smooth_calc_sa(const CompactOp& c, const PeriodicExtension& ext) {
  const int s = support_block(c);
  const int dim = c.dim();
  if (s == 0) return CompactOp(dim);
  const Matrix block = c.matrix().topLeftCorner(s, s);
  if ((block - block.adjoint()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, block.cwiseAbs().maxCoeff()))
    throw NotSelfAdjoint("smooth_calc_sa: operand is not self-adjoint");
  const double norm = op_norm(block);
  if (ext.L <= 2.0 * norm) throw BadExtension("period too small: L <= 2||c||");
  require_reproduction(ext, norm);
  if (std::abs(ext.eval(0.0)) > 1e-9)
    throw BadExtension("compact operand requires f(0) = 0");

  Matrix acc = Matrix::Zero(s, s);
  for (int n = 1; n <= ext.n_max; ++n) {
    const cplx fp = ext.coeff(n), fm = ext.coeff(-n);
    if (std::abs(fp) == 0.0 && std::abs(fm) == 0.0) continue;
    const Matrix en = expm_minus_identity((cplx{0.0, kTwoPi * n / ext.L}) * block);
    // e^{-i t c} - I is the adjoint of e^{i t c} - I for self-adjoint c
    acc += fp * en + fm * en.adjoint();
  }
  // the n = 0 term f_0 (e^0 - I) vanishes
  Matrix out = Matrix::Zero(dim, dim);
  out.topLeftCorner(s, s) = acc;
  return CompactOp(std::move(out), s, s);
}

ToeplitzElem smooth_calc_sa(const ToeplitzElem& a, const PeriodicExtension& ext) {
  const int dim = a.dim();
  if (!a.symbol.is_real(1e-10))
    throw NotSelfAdjoint("smooth_calc_sa: symbol is not real");
  const Matrix aw = realize(a);
  if ((aw - aw.adjoint()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, aw.cwiseAbs().maxCoeff()))
    throw NotSelfAdjoint("smooth_calc_sa: operand is not self-adjoint");
  const double norm = op_norm(aw);
  if (ext.L <= 2.0 * norm) throw BadExtension("period too small: L <= 2||a||");
  require_reproduction(ext, norm);

  Symbol sym;
  CompactOp compact(dim);
  ToeplitzElem id = identity_elem(dim);
  for (int n = 1; n <= ext.n_max; ++n) {
    const cplx fp = ext.coeff(n), fm = ext.coeff(-n);
    if (std::abs(fp) == 0.0 && std::abs(fm) == 0.0) continue;
    const ToeplitzElem en = exp_unitary(a, kTwoPi * n / ext.L);
    const ToeplitzElem en_adj = en.adjoint();
    sym = sym + (en.symbol - Symbol::constant(1.0)) * fp +
          (en_adj.symbol - Symbol::constant(1.0)) * fm;
    compact = compact + en.compact * fp + en_adj.compact * fm;
  }
  sym = sym + Symbol::constant(ext.eval(0.0));
  return {sym.trimmed(), compact};
}

}  // namespace qdisk
