#ifndef QDISK_KHOMOLOGY_HPP
#define QDISK_KHOMOLOGY_HPP

#include <optional>
#include <vector>

#include "qdisk/compact_op.hpp"

namespace qdisk {

/// Kernel/cokernel dimensions of a truncated operator, decided from singular
/// values.  The decision is accepted only when the zero and nonzero clusters
/// are separated by a factor >= 1e3 and the split is stable under scaling the
/// cut by 10 either way; otherwise determinate = false and the dimensions are
/// not to be trusted.
struct IndexResult {
  int ker_dim = 0;
  int coker_dim = 0;
  int index = 0;
  bool determinate = true;
  double gap = 0.0;                     // nonzero/zero cluster separation
  std::vector<double> singular_values;  // smallest few, for the record
};

/// Counts numerical-zero singular values of a rectangular section.
IndexResult count_kernel_pair(const Matrix& ker_section, const Matrix& coker_section);

/// Winding number of a nonvanishing symbol, by the argument principle on the
/// sampling grid.
int winding_number(const Symbol& f, int grid_points = 0);

/// Index pairing of the odd Fredholm module over C(R/Z) with [f]: the
/// compression P_{>=0} M_f P_{>=0} on a bilateral window of half-width L,
/// with a domain margin against edge-induced kernel vectors.  Returns
/// -winding(f); in particular -1 for f = z.
IndexResult index_odd_circle(const Symbol& f, int half_width);

/// K-theory index map ind([u]_1) computed from the lift T(u): the difference
/// of the kernel-projection traces of the partial-isometry part, i.e.
/// dim ker T(u) - dim ker T(u)*.  Reproduces -1 for u = z.
IndexResult index_map_K1(const Symbol& u, int dim);

struct EvenModulePairings {
  IndexResult pairing_p00;       // expected 1
  IndexResult pairing_identity;  // expected 0
  double relation_residual;      // max over U_i* U_j = delta_ij I on the interior
  double completeness_residual;  // U_1 U_1* + U_2 U_2* = I on the window
};

/// Even Fredholm module over the compacts from a Cuntz pair U_1 E_k = E_{2k},
/// U_2 E_k = E_{2k+1}.  An optional unitary basis change (block-supported on
/// the first half of the window) replaces the realization; the pairings are
/// realization-independent.
EvenModulePairings even_module_over_K(int dim, const Matrix* basis_change = nullptr);

/// Weighted-shift data for the spectral triple over the unitized compacts.
struct WeightedShiftSpec {
  std::vector<double> alpha, beta, mu, w, wp;

  static WeightedShiftSpec defaults(int table_len);

  struct Validation {
    bool alpha_beta_nonzero = false;       // alpha(k), beta(k) != 0
    bool mu_relation = false;              // alpha = beta mu(k+1)/mu(k), mu(0)=1
    bool weights_positive = false;
    double summability = 0.0;              // sum |beta-alpha|^2 w' over the table
    bool summability_converged = false;
    double beta_ratio_bound = 0.0;         // sup of the sampled ratio condition
    double cross_sum = 0.0;                // the mu/weight double sum over the table
    bool cross_sum_converged = false;
  };
  Validation validate() const;  // throws SpecViolation on hard violations
};

/// Index of the weighted unilateral shift d f(k) = -alpha(k) f(k+1) between
/// the weighted spaces; 1 for every valid spec.
IndexResult weighted_shift_index(const WeightedShiftSpec& spec, int dim);

struct DIndexResult {
  IndexResult numerical;
  int proxy_N = 0;  // finite-table proxy for the weight-sum threshold
};

/// Numerical index of D f = U beta(K) f - f U alpha(K) on the truncated
/// Fourier-mode coefficient space {f_n(k) : |n| <= band, k < dim}, reported
/// alongside the finite-table proxy for the predicted value.  D raises the
/// mode by one, so the truncated operator splits into bidiagonal blocks; a
/// block contributes a kernel direction when its smallest singular value is
/// isolated from the rest, a verdict required to persist from dim/2 to dim.
DIndexResult spectral_triple_D_index(const WeightedShiftSpec& spec, int band, int dim);

/// One bidiagonal block of the truncated D (input mode m, output mode m+1),
/// in the weight-normalized coordinates.  The truncated operator is the
/// direct sum of these blocks.
Matrix spectral_triple_mode_block(const WeightedShiftSpec& spec, int m, int dim, int margin);

struct CirclePairingResult {
  IndexResult circle;             // [1]_0 over C(R/Z): expected 1
  IndexResult toeplitz_pullback;  // [I]_0 over the Toeplitz algebra: expected 1
  double grading_residual = 0.0;  // Gamma F + F Gamma
};

/// The finite-dimensional even module: evaluation at a boundary point, F = 0.
CirclePairingResult even_module_circle_pairing();

}  // namespace qdisk

#endif
