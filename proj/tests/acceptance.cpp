// Acceptance suite: each numbered criterion prints exactly one line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "qdisk/calculus.hpp"
#include "qdisk/derivations.hpp"
#include "qdisk/json_io.hpp"
#include "qdisk/khomology.hpp"
#include "qdisk/mobius.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"
#include "qdisk/random_ops.hpp"
#include "qdisk/suite.hpp"

using namespace qdisk;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
int g_failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, what.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// 1. golden index integers, stable under dim doubling, under 30 s
void criterion_golden_indices() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (int dim : {64, 128}) {
    const IndexResult odd = index_odd_circle(Symbol::mode(1), dim);
    const IndexResult k1 = index_map_K1(Symbol::mode(1), dim);
    const EvenModulePairings even = even_module_over_K(dim);
    const CirclePairingResult circle = even_module_circle_pairing();
    const IndexResult ws = weighted_shift_index(WeightedShiftSpec::defaults(2 * dim + 8), dim);
    const bool ok = odd.determinate && odd.index == -1 && k1.determinate && k1.index == -1 &&
                    even.pairing_p00.index == 1 && even.pairing_identity.index == 0 &&
                    circle.circle.index == 1 && ws.determinate && ws.index == 1;
    if (!ok) pass = false;
    detail += "dim " + std::to_string(dim) + ": odd=" + std::to_string(odd.index) +
              " K1=" + std::to_string(k1.index) + " evenK=(" +
              std::to_string(even.pairing_p00.index) + "," +
              std::to_string(even.pairing_identity.index) + ") circle=" +
              std::to_string(circle.circle.index) + " shift=" + std::to_string(ws.index) + "; ";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 30.0) pass = false;
  report(1, "golden index pairings (-1, -1, (1,0), 1, 1), stable under doubling", pass,
         detail + fmt(secs) + " s");
}

// 2. ||P_{0,l}||_{M,N} = (1+l)^{M+N} to 1e-12 relative
void criterion_norm_golden() {
  const int dim = 64;
  double worst = 0.0;
  for (int l = 0; l <= 10; ++l)
    for (int M = 0; M <= 6; ++M)
      for (int N = 0; M + N <= 6; ++N) {
        const double expect = std::pow(1.0 + l, M + N);
        worst = std::max(worst, std::abs(norm_MN(unit(0, l, dim), M, N) - expect) / expect);
      }
  report(2, "||P_{0,l}||_{M,N} = (1+l)^{M+N} for l <= 10, M+N <= 6", worst < 1e-12,
         "max relative error " + fmt(worst));
}

// 3. ten norm inequalities, 200 seeded cases each, zero violations at 1e-9
void criterion_inequalities() {
  const auto start = std::chrono::steady_clock::now();
  const int dim = 48;
  const double pi = std::numbers::pi;
  const double tol = 1e-9;
  int violations = 0;
  auto check = [&](double lhs, double rhs) {
    if (lhs > rhs + tol * std::max({1.0, lhs, rhs})) ++violations;
  };
  for (int i = 0; i < 200; ++i) {
    CounterRng rng(202, "acceptance/inequalities", i);
    const CompactOp a = random_compact(rng, dim, rng.range(1, 10));
    const CompactOp b = random_compact(rng, dim, rng.range(1, 10));
    const Symbol f = random_symbol(rng, rng.range(0, 5));
    const Symbol g = random_symbol(rng, rng.range(0, 5));
    const int M = rng.range(0, 3), N = rng.range(0, 3);

    check(norm_0N(a, N), norm_0N(a, N + 1));                                      // 1
    check(norm_0N(a, N), hs_weighted(a, 0, N));                                   // 2a
    check(hs_weighted(a, 0, N), std::sqrt(pi * pi / 6.0) * norm_0N(a, N + 1));    // 2b
    check(norm_0N(a * b, N), norm_0N(a, 0) * norm_0N(b, N));                      // 3
    double star = 0.0;
    CompactOp d = a;
    for (int j = 0; j <= N; ++j) {
      star += binomial(N, j) * norm_0N(d, N);
      if (j < N) d = delta_k(d);
    }
    check(norm_0N(a.adjoint(), N), star);                                         // 4
    check(norm_MN(a * b, M, N), norm_MN(a, M, 0) * norm_MN(b, M, N));             // 5
    check(norm_MN(delta_k(a), M, N), norm_MN(a, M + 1, N));                       // 6
    check(norm_MN(a.adjoint(), M, N), norm_MN(a, M + N, N));                      // 7
    check(norm_MN(toeplitz_left(f, a), M, N), cl_norm(f, M).value * norm_MN(a, M, N));  // 8
    check(norm_MN(toeplitz_right(a, f), M, N),
          cl_norm(f, M + N).value * norm_MN(a, M, N));                            // 9
    check(norm_MN(product_defect(f, g, dim), M, N),
          (pi * pi / 3.0 - 1.0) * cl_norm(g, M + N + 2).value * cl_norm(f, M).value);  // 10
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(3, "ten norm inequalities on 200 seeded operators each",
         violations == 0 && secs < 120.0,
         std::to_string(violations) + " violations, " + fmt(secs) + " s");
}

// 4. lifting residuals below 1e-10 on 50 admissible pairs; classification of
// the label derivation
void criterion_lifting() {
  const int dim = 64;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    CounterRng rng(202, "acceptance/lift", i);
    const auto [b, c] = random_admissible_pair(rng, dim, rng.range(2, 12));
    const LiftResult lift = lift_derivation(b, c);
    worst = std::max({worst, lift.residuals.comm_u, lift.residuals.comm_ustar});
  }
  bool classify_ok = false;
  {
    const ToeplitzElem b = toeplitz(Symbol::mode(1), dim);
    const ToeplitzElem c = toeplitz(Symbol::mode(-1), dim) * cplx{-1.0, 0.0};
    const ClassifyResult got = classify_derivation(b, c);
    classify_ok = got.F.band() == 0 && std::abs(got.F.coeff(0) - 1.0) < 1e-12 &&
                  got.inner.f.is_zero(1e-12) && got.inner.alpha_tilde.max_abs() < 1e-12;
  }
  report(4, "lift residuals < 1e-10 on 50 pairs; label derivation classifies to F = 1",
         worst < 1e-10 && classify_ok, "max residual " + fmt(worst));
}

// 5. Fourier components reconstruct band-limited derivations and are covariant
void criterion_fourier_components() {
  const int dim = 64;
  double recon = 0.0, covar = 0.0;
  for (int i = 0; i < 5; ++i) {
    CounterRng rng(202, "acceptance/fourier", i);
    std::map<std::pair<int, int>, cplx> betas;
    const int band = 5;
    for (int n = -band; n <= band; ++n)
      betas[{n, rng.range(0, 5)}] = rng.complex_in_disk(2.0);
    const GeneralDerivation d(betas, 4.0, 2, 0);
    const DerivationAction action = [&d](const CompactOp& x) { return apply_general(d, x); };
    // operands from the generating family: units and a random compact
    std::vector<CompactOp> operands = {unit(0, 0, dim), unit(3, 1, dim), unit(2, 6, dim),
                                       random_compact(rng, dim, 8)};
    for (const CompactOp& a : operands) {
      CompactOp sum(dim);
      for (int n = -band - 1; n <= band + 1; ++n) {
        const FourierComponentAction comp = fourier_component(action, n, 16);
        const CompactOp cn = comp(a);
        sum = sum + cn;
        for (int t = 0; t < 16; ++t) {
          const double theta = t / 16.0;
          const CompactOp lhs = rho_theta(comp(rho_theta(a, theta)), -theta);
          covar = std::max(covar,
                           (lhs - cn * std::polar(1.0, kTwoPi * n * theta)).max_abs());
        }
      }
      recon = std::max(recon, (sum - action(a)).max_abs());
    }
  }
  report(5, "band-limited Fourier components reconstruct and are n-covariant",
         recon < 1e-10 && covar < 1e-10,
         "reconstruction " + fmt(recon) + ", covariance " + fmt(covar));
}

// 6. Mobius identities at the worked group element
void criterion_mobius() {
  const SU11Element g{cplx{1.25, 0.0}, cplx{0.75, 0.0}};
  const MobiusReport rep = mobius_report(g, 64);
  const bool pass = rep.isometry_residual < 1e-8 && rep.kernel_residual < 1e-8 &&
                    rep.conjugation_residual < 1e-7 && rep.delta_k_identity_residual < 1e-8;
  report(6, "Mobius identities at g = (5/4, 3/4), dim 64", pass,
         "W*W-I " + fmt(rep.isometry_residual) + ", W*F0 " + fmt(rep.kernel_residual) +
             ", conj " + fmt(rep.conjugation_residual) + ", delta_K " +
             fmt(rep.delta_k_identity_residual));
}

// 7. functional calculus cross-validation and exponential estimates
void criterion_calculus() {
  const int dim = 64;
  double smooth_err = 0.0, holo_err = 0.0;
  bool estimates = true;
  for (int i = 0; i < 20; ++i) {
    CounterRng rng(202, "acceptance/calculus", i);
    const CompactOp c = random_selfadjoint_compact(rng, dim, rng.range(2, 10), 1.5);
    const int s = std::max(c.support_rows(), c.support_cols());
    const Matrix block = c.matrix().topLeftCorner(s, s);
    const double radius = op_norm(block) + 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(block);

    const std::vector<RealFn> fns = {
        [](double x) { return x * x; },
        [radius](double x) { return std::sin(std::numbers::pi * x / (radius + 1.0)); },
        [radius](double x) { return smooth_bump(x, radius / 4.0, radius + 1.0); }};
    for (const RealFn& f : fns) {
      const PeriodicExtension ext = make_periodic_extension(f, radius);
      const CompactOp got = smooth_calc_sa(c, ext);
      Matrix fl = Matrix::Zero(s, s);
      for (int k = 0; k < s; ++k) fl(k, k) = f(es.eigenvalues()(k));
      const Matrix oracle = es.eigenvectors() * fl * es.eigenvectors().adjoint();
      smooth_err = std::max(
          smooth_err, (got.matrix().topLeftCorner(s, s) - oracle).cwiseAbs().maxCoeff());
    }

    // polynomial holomorphic calculus vs direct evaluation
    const CompactOp sq = holo_calc(
        c, [](cplx z) { return z * z + 0.5 * z; },
        Contour{cplx{0.0, 0.0}, 2.5 * op_norm(block) + 1.0, 96});
    holo_err =
        std::max(holo_err, (sq - (c * c + c * cplx{0.5, 0.0})).max_abs());

    // exponential estimates on the same sample
    const CompactOp eic = exp_compact(c * cplx{0.0, 1.0});
    for (int N = 0; N <= 2; ++N)
      if (norm_0N(eic, N) > norm_0N(c, N) * (1 + 1e-9)) estimates = false;
    for (int M = 1; M <= 2; ++M) {
      double lhs = op_norm(Matrix::Identity(dim, dim) + eic.matrix());
      CompactOp d = eic;
      for (int j = 1; j <= M; ++j) {
        d = delta_k(d);
        lhs += binomial(M, j) * norm_0N(d, 0);
      }
      double bound = 1.0;
      for (int j = 1; j <= M; ++j)
        bound *= std::pow(1.0 + norm_MN(c, j, 0), std::pow(2.0, M - j));
      if (lhs > bound * (1 + 1e-9)) estimates = false;
    }
  }
  report(7, "smooth calculus vs eigendecomposition, polynomial contours, exp estimates",
         smooth_err < 1e-8 && holo_err < 1e-10 && estimates,
         "smooth " + fmt(smooth_err) + ", holo " + fmt(holo_err));
}

// 8. exact algebraic identities at 1e-12
void criterion_exactness() {
  const int dim = 48;
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    CounterRng rng(202, "acceptance/exactness", i);
    const int k = rng.range(0, 20), l = rng.range(0, 20), r = rng.range(0, 20),
              s = rng.range(0, 20);
    const CompactOp prod = unit(k, l, dim) * unit(r, s, dim);
    const CompactOp expect = l == r ? unit(k, s, dim) : CompactOp(dim);
    worst = std::max(worst, (prod - expect).max_abs());
    worst = std::max(worst, (unit(k, l, dim).adjoint() - unit(l, k, dim)).max_abs());

    std::vector<cplx> vals;
    for (int j = 0; j < dim; ++j) vals.push_back(rng.complex_in_disk(3.0));
    const DiagonalOp fk(vals, rng.complex_in_disk(3.0));
    const Matrix u = shift(dim);
    worst = std::max(
        worst, (fk.realize(dim) * u - u * fk.shifted(1).realize(dim)).cwiseAbs().maxCoeff());

    const double theta = rng.uniform();
    const CompactOp a = random_compact(rng, dim, 10);
    const CompactOp b = random_compact(rng, dim, 10);
    worst = std::max(
        worst,
        (rho_theta(a * b, theta) - rho_theta(a, theta) * rho_theta(b, theta)).max_abs());

    const Symbol fp = split(random_symbol(rng, rng.range(1, 5))).plus;
    const Symbol gp = split(random_symbol(rng, rng.range(1, 5))).plus;
    worst = std::max(worst, product_defect(fp, gp, dim).max_abs());
  }
  report(8, "unit relations, label commutation, circle action, analytic products exact",
         worst < 1e-12, "max deviation " + fmt(worst));
}

// 9. byte-identical reports for identical (seed, config)
void criterion_reproducibility() {
  SuiteConfig cfg;
  cfg.seed = 77;
  cfg.dim = 48;
  cfg.suites = {"symbols", "operators", "norms"};
  const std::string a = report_to_json(run_property_suite(cfg)).dump();
  const std::string b = report_to_json(run_property_suite(cfg)).dump();
  report(9, "byte-identical reports for identical seed and config", a == b,
         std::to_string(a.size()) + " bytes");
}

}  // namespace

int main() {
  criterion_golden_indices();
  criterion_norm_golden();
  criterion_inequalities();
  criterion_lifting();
  criterion_fourier_components();
  criterion_mobius();
  criterion_calculus();
  criterion_exactness();
  criterion_reproducibility();
  std::printf("%s\n", g_failures == 0 ? "acceptance: all criteria passed"
                                      : "acceptance: FAILURES PRESENT");
  return g_failures == 0 ? 0 : 1;
}
