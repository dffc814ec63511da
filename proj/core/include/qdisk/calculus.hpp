#ifndef QDISK_CALCULUS_HPP
#define QDISK_CALCULUS_HPP

#include <array>
#include <functional>

#include "qdisk/compact_op.hpp"

namespace qdisk {

using ScalarFn = std::function<cplx(cplx)>;
using RealFn = std::function<double(double)>;

struct Contour {
  cplx center{0.0, 0.0};
  double radius = 1.0;
  int nodes = 64;
};

/// Circle of radius 1.25 x (window spectral radius) around 0, 64 nodes.
Contour default_contour(const Matrix& window);

/// (I + c)^{-1} - I, exact on the support block.  Throws Singular when I + c
/// is not invertible there.
CompactOp invert_one_plus(const CompactOp& c);

struct ToeplitzInverse {
  ToeplitzElem value;
  double symbol_residual = 0.0;  // sup |f (1/f) - 1| from the reciprocal
  double window_residual = 0.0;  // max |a . value - I| on the central block
  std::array<double, 4> decay_profile{};  // of the compact part, central block
};

/// a^{-1} = T(1/f) + b.  Requires both an invertible window matrix and a
/// nonvanishing symbol; the compact part is read off the window and its
/// rapid-decay profile is reported rather than assumed.
ToeplitzInverse invert_toeplitz(const ToeplitzElem& a, int target_band = 0);

/// Cauchy-integral functional calculus by trapezoid quadrature over the
/// contour.  For a compact operand f(0) = 0 is required.
CompactOp holo_calc(const CompactOp& c, const ScalarFn& f, const Contour& contour);
ToeplitzElem holo_calc(const ToeplitzElem& a, const ScalarFn& f, const Contour& contour);

/// e^c - I by the scaled-and-squared power series, exact on the support block.
CompactOp exp_compact(const CompactOp& c);

/// e^{i t a} for a Toeplitz element: the symbol part is the exact exponential
/// of the symbol, the compact defect is read off the window realization.
ToeplitzElem exp_unitary(const ToeplitzElem& a, double t);

/// Smooth L-periodic extension of f, represented by its Fourier data.
/// Reproduces f on [-spectral_radius, spectral_radius]; outside, f is blended
/// to zero by a smooth bump so the coefficients decay rapidly.
struct PeriodicExtension {
  double L = 0.0;
  std::vector<cplx> coeffs;  // index n + n_max, n in [-n_max, n_max]
  int n_max = 0;
  double spectral_radius = 0.0;
  double reproduction_error = 0.0;

  cplx eval(double x) const;
  cplx coeff(int n) const;
};

PeriodicExtension make_periodic_extension(const RealFn& f, double spectral_radius,
                                          double L = 0.0, int grid = 2048);

/// Smooth functional calculus of a self-adjoint element by the Fourier
/// method f(a) = sum_n f_n (e^{2 pi i n a / L} - I) + f(0) I.
CompactOp smooth_calc_sa(const CompactOp& c, const PeriodicExtension& ext);
ToeplitzElem smooth_calc_sa(const ToeplitzElem& a, const PeriodicExtension& ext);

/// C^infty bump supported on [lo, hi], equal to exp(-1/t)-style smoothstep.
double smooth_bump(double x, double lo, double hi);

/// Matrix exponential by scaling and squaring of the Taylor series; returns
/// e^M - I to avoid cancellation for small M.
Matrix expm_minus_identity(const Matrix& m);

}  // namespace qdisk

#endif
