#ifndef QDISK_SYMBOL_HPP
#define QDISK_SYMBOL_HPP

#include <complex>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace qdisk {

using cplx = std::complex<double>;

/// A smooth function on R/Z represented by its finitely supported Fourier
/// coefficients f_n, |n| <= band.  Values are immutable after construction;
/// all symbol calculus is exact coefficient arithmetic.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::map<int, cplx> coeffs);
  Symbol(std::initializer_list<std::pair<const int, cplx>> coeffs);

  static Symbol constant(cplx value);
  static Symbol mode(int n, cplx value = 1.0);  // value * e^{2 pi i n x}

  int band() const { return band_; }
  cplx coeff(int n) const;
  const std::vector<cplx>& raw() const { return c_; }

  /// All coefficients below the absolute zero tolerance.
  bool is_zero(double tol = kZeroTol) const;

  cplx eval(double x) const;  // sum f_n e^{2 pi i n x}

  Symbol operator+(const Symbol& g) const;
  Symbol operator-(const Symbol& g) const;
  Symbol operator*(cplx scale) const;
  Symbol operator-() const { return *this * cplx{-1.0, 0.0}; }

  /// Removes exactly-zero outer coefficients so band stays tight.
  Symbol trimmed() const;

  /// Coefficients of the complex conjugate: conj(f)_n = conj(f_{-n}).
  Symbol conj_reflect() const;

  /// Shifts frequencies: (shift(m) f)_n = f_{n-m}, i.e. multiplies by z^m.
  Symbol freq_shift(int m) const;

  bool is_real(double tol = kZeroTol) const;  // f = conj(f)

  double max_abs_coeff() const;

  static constexpr double kZeroTol = 1e-12;

 private:
  std::vector<cplx> c_;  // index n+band_, n in [-band_, band_]
  int band_ = 0;         // c_ has size 2*band_+1 whenever nonempty
};

struct ClNormValue {
  int l = 0;
  double value = 0.0;
};

/// C^l norm: sum_{j<=l} C(l,j) sup_x |((1/2 pi i) d/dx)^j f|, sup taken on a
/// uniform grid.  The grid is an oversampled under-approximation of the true
/// sup; grid_points <= 0 picks the default 16*(band+1).
ClNormValue cl_norm(const Symbol& f, int l, int grid_points = 0);

/// sum_n |f_n| (1+|n|)^l, the weighted-l1 companion norm.
double weighted_l1(const Symbol& f, int l);

Symbol product(const Symbol& f, const Symbol& g);  // coefficient convolution

Symbol derivative(const Symbol& f);  // (1/2 pi i) d/dx, i.e. f_n -> n f_n

struct SymbolSplit {
  Symbol plus;   // frequencies n >= 0
  Symbol minus;  // frequencies n < 0
};
SymbolSplit split(const Symbol& f);

struct ReciprocalResult {
  Symbol value;
  double residual = 0.0;  // sup |f * value - 1| on the sampling grid
};

/// Fourier coefficients of 1/f by grid sampling, truncated to target_band.
/// Throws NearZeroSymbol when min |f| on the grid is below min_modulus.
ReciprocalResult reciprocal(const Symbol& f, int target_band,
                            double min_modulus = 1e-8);

/// Truncated Fourier coefficients of a grid-sampled function.  The sampler
/// receives x in [0,1).  Exact for trigonometric polynomials below the
/// Nyquist band of the grid.
Symbol symbol_from_samples(const std::vector<cplx>& samples, int band);

double binomial(int n, int k);

}  // namespace qdisk

#endif
