#include "qdisk/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "qdisk/errors.hpp"

namespace qdisk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Symbol::Symbol(std::map<int, cplx> coeffs) {
  if (coeffs.empty()) return;
  int b = 0;
  for (const auto& [n, v] : coeffs) b = std::max(b, std::abs(n));
  band_ = b;
  c_.assign(2 * b + 1, cplx{0.0, 0.0});
  for (const auto& [n, v] : coeffs) c_[n + b] = v;
}

Symbol::Symbol(std::initializer_list<std::pair<const int, cplx>> coeffs)
    : Symbol(std::map<int, cplx>(coeffs)) {}

Symbol Symbol::constant(cplx value) { return Symbol{{0, value}}; }

Symbol Symbol::mode(int n, cplx value) { return Symbol{{n, value}}; }

cplx Symbol::coeff(int n) const {
  if (c_.empty() || std::abs(n) > band_) return {0.0, 0.0};
  return c_[n + band_];
}

bool Symbol::is_zero(double tol) const {
  for (const cplx& v : c_)
    if (std::abs(v) > tol) return false;
  return true;
}

cplx Symbol::eval(double x) const {
  cplx acc{0.0, 0.0};
  for (int n = -band_; n <= band_; ++n) {
    if (c_.empty()) break;
    const cplx v = c_[n + band_];
    if (v == cplx{0.0, 0.0}) continue;
    acc += v * std::polar(1.0, kTwoPi * n * x);
  }
  return acc;
}

Symbol Symbol::operator+(const Symbol& g) const {
  std::map<int, cplx> out;
  for (int n = -band_; n <= band_; ++n) out[n] += coeff(n);
  for (int n = -g.band_; n <= g.band_; ++n) out[n] += g.coeff(n);
  return Symbol(std::move(out)).trimmed();
}

Symbol Symbol::operator-(const Symbol& g) const { return *this + (g * cplx{-1.0, 0.0}); }

Symbol Symbol::operator*(cplx scale) const {
  Symbol out = *this;
  for (cplx& v : out.c_) v *= scale;
  return out;
}

Symbol Symbol::trimmed() const {
  int b = 0;
  bool any = false;
  for (int n = -band_; n <= band_; ++n) {
    if (coeff(n) != cplx{0.0, 0.0}) {
      b = std::max(b, std::abs(n));
      any = true;
    }
  }
  if (!any) return Symbol{};
  std::map<int, cplx> out;
  for (int n = -b; n <= b; ++n) out[n] = coeff(n);
  return Symbol(std::move(out));
}

Symbol Symbol::conj_reflect() const {
  std::map<int, cplx> out;
  for (int n = -band_; n <= band_; ++n) out[n] = std::conj(coeff(-n));
  return Symbol(std::move(out)).trimmed();
}

Symbol Symbol::freq_shift(int m) const {
  std::map<int, cplx> out;
  for (int n = -band_; n <= band_; ++n) out[n + m] = coeff(n);
  return Symbol(std::move(out)).trimmed();
}

bool Symbol::is_real(double tol) const {
  for (int n = -band_; n <= band_; ++n)
    if (std::abs(coeff(n) - std::conj(coeff(-n))) > tol) return false;
  return true;
}

double Symbol::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& v : c_) m = std::max(m, std::abs(v));
  return m;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

ClNormValue cl_norm(const Symbol& f, int l, int grid_points) {
  const int grid = grid_points > 0 ? grid_points : 16 * (f.band() + 1);
  ClNormValue out{l, 0.0};
  Symbol d = f;
  for (int j = 0; j <= l; ++j) {
    double sup = 0.0;
    for (int q = 0; q < grid; ++q)
      sup = std::max(sup, std::abs(d.eval(static_cast<double>(q) / grid)));
    out.value += binomial(l, j) * sup;
    d = derivative(d);
  }
  return out;
}

double weighted_l1(const Symbol& f, int l) {
  double acc = 0.0;
  for (int n = -f.band(); n <= f.band(); ++n)
    acc += std::abs(f.coeff(n)) * std::pow(1.0 + std::abs(n), l);
  return acc;
}

Symbol product(const Symbol& f, const Symbol& g) {
  std::map<int, cplx> out;
  for (int n = -f.band(); n <= f.band(); ++n) {
    const cplx fn = f.coeff(n);
    if (fn == cplx{0.0, 0.0}) continue;
    for (int m = -g.band(); m <= g.band(); ++m) {
      const cplx gm = g.coeff(m);
      if (gm == cplx{0.0, 0.0}) continue;
      out[n + m] += fn * gm;
    }
  }
  return Symbol(std::move(out)).trimmed();
}

Symbol derivative(const Symbol& f) {
  std::map<int, cplx> out;
  for (int n = -f.band(); n <= f.band(); ++n) out[n] = static_cast<double>(n) * f.coeff(n);
  return Symbol(std::move(out)).trimmed();
}

SymbolSplit split(const Symbol& f) {
  std::map<int, cplx> plus, minus;
  for (int n = -f.band(); n <= f.band(); ++n) {
    if (n >= 0)
      plus[n] = f.coeff(n);
    else
      minus[n] = f.coeff(n);
  }
  return {Symbol(std::move(plus)).trimmed(), Symbol(std::move(minus)).trimmed()};
}

Symbol symbol_from_samples(const std::vector<cplx>& samples, int band) {
  const int grid = static_cast<int>(samples.size());
  std::map<int, cplx> out;
  for (int n = -band; n <= band; ++n) {
    cplx acc{0.0, 0.0};
    for (int q = 0; q < grid; ++q)
      acc += samples[q] * std::polar(1.0, -kTwoPi * n * q / grid);
    out[n] = acc / static_cast<double>(grid);
  }
  return Symbol(std::move(out)).trimmed();
}

ReciprocalResult reciprocal(const Symbol& f, int target_band, double min_modulus) {
  const int grid = std::max({8 * target_band, 8 * (f.band() + 1), 64});
  std::vector<cplx> values(grid);
  double min_abs = std::numeric_limits<double>::infinity();
  for (int q = 0; q < grid; ++q) {
    values[q] = f.eval(static_cast<double>(q) / grid);
    min_abs = std::min(min_abs, std::abs(values[q]));
  }
  if (min_abs < min_modulus)
    throw NearZeroSymbol("reciprocal: min |f| on grid = " + std::to_string(min_abs));

  std::vector<cplx> inv(grid);
  for (int q = 0; q < grid; ++q) inv[q] = 1.0 / values[q];
  ReciprocalResult out;
  out.value = symbol_from_samples(inv, target_band);

  const Symbol check = product(f, out.value);
  const int fine = 2 * grid;
  for (int q = 0; q < fine; ++q) {
    const double x = static_cast<double>(q) / fine;
    out.residual = std::max(out.residual, std::abs(check.eval(x) - 1.0));
  }
  return out;
}

}  // namespace qdisk
