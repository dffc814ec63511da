#ifndef QDISK_RANDOM_OPS_HPP
#define QDISK_RANDOM_OPS_HPP

#include "qdisk/compact_op.hpp"
#include "qdisk/rng.hpp"

namespace qdisk {

inline Symbol random_symbol(CounterRng& rng, int band, double scale = 1.0) {
  std::map<int, cplx> coeffs;
  for (int n = -band; n <= band; ++n) coeffs[n] = scale * rng.complex_in_disk();
  return Symbol(std::move(coeffs));
}

inline Symbol random_real_symbol(CounterRng& rng, int band, double scale = 1.0) {
  std::map<int, cplx> coeffs;
  coeffs[0] = cplx{scale * rng.uniform(-1.0, 1.0), 0.0};
  for (int n = 1; n <= band; ++n) {
    const cplx v = scale * rng.complex_in_disk();
    coeffs[n] = v;
    coeffs[-n] = std::conj(v);
  }
  return Symbol(std::move(coeffs));
}

/// Nonvanishing symbol with prescribed winding: z^w (1 + small perturbation).
inline Symbol random_nonvanishing_symbol(CounterRng& rng, int band, int winding) {
  std::map<int, cplx> coeffs;
  coeffs[0] = cplx{1.0, 0.0};
  double budget = 0.7;  // keeps sum of perturbations below 1
  for (int n = -band; n <= band; ++n) {
    if (n == 0) continue;
    const double amp = budget * rng.uniform() / (2 * band);
    coeffs[n] = std::polar(amp, rng.uniform(0.0, 6.28318));
  }
  return Symbol(std::move(coeffs)).freq_shift(winding);
}

inline CompactOp random_compact(CounterRng& rng, int dim, int support, double scale = 1.0) {
  CompactOp a(dim);
  for (int k = 0; k < support; ++k)
    for (int l = 0; l < support; ++l) a.set(k, l, scale * rng.complex_in_disk());
  return a;
}

inline CompactOp random_selfadjoint_compact(CounterRng& rng, int dim, int support,
                                            double scale = 1.0) {
  CompactOp a = random_compact(rng, dim, support, scale);
  return (a + a.adjoint()) * cplx{0.5, 0.0};
}

inline Matrix random_unitary(CounterRng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_in_disk();
  const Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ();
}

/// Admissible generator data (b, c) = (delta(U), delta(U*)) for an inner
/// derivation: the constraint cU + U*b = 0 pins c_{k,l+1} = -b_{k+1,l},
/// leaving b itself and the first column of c free.
inline std::pair<CompactOp, CompactOp> random_admissible_pair(CounterRng& rng, int dim,
                                                              int support) {
  CompactOp b = random_compact(rng, dim, support);
  CompactOp c(dim);
  for (int k = 0; k < support; ++k) c.set(k, 0, rng.complex_in_disk());
  for (int k = 0; k + 1 < dim; ++k)
    for (int l = 0; l + 1 < dim; ++l) {
      const cplx v = -b.entry(k + 1, l);
      if (v != cplx{0.0, 0.0}) c.set(k, l + 1, v);
    }
  return {std::move(b), std::move(c)};
}

}  // namespace qdisk

#endif
