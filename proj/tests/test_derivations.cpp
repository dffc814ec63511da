#include <doctest.h>

#include <numbers>

#include "qdisk/derivations.hpp"
#include "qdisk/errors.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"
#include "qdisk/random_ops.hpp"

using namespace qdisk;

namespace {
constexpr int kDim = 48;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("covariant derivations") {
  SUBCASE("beta_j = j reproduces the label commutator") {
    std::vector<cplx> beta;
    for (int j = 0; j < kDim; ++j) beta.push_back(cplx{double(j), 0.0});
    const CovariantDerivation d(0, beta);
    CounterRng rng(13, "cov", 0);
    const CompactOp a = random_compact(rng, kDim, 12);
    CHECK((apply_covariant(d, a) - delta_k(a)).max_abs() < 1e-14);
    CHECK((apply_covariant(d, unit(5, 2, kDim)) - unit(5, 2, kDim) * cplx{3.0, 0.0}).max_abs() ==
          0.0);
  }
  SUBCASE("constant beta acts as zero") {
    const CovariantDerivation d(0, std::vector<cplx>(16, cplx{3.7, -0.4}));
    CounterRng rng(13, "cov", 1);
    CHECK(apply_covariant(d, random_compact(rng, kDim, 10)).max_abs() < 1e-15);
  }
  SUBCASE("single off-diagonal generator") {
    // n = 1, beta = delta_{j,0}: [P_{0,1}, P_{1,1}] = P_{0,1}
    const CovariantDerivation d(1, {cplx{1.0, 0.0}});
    CHECK((apply_covariant(d, unit(1, 1, kDim)) - unit(0, 1, kDim)).max_abs() == 0.0);
  }
  SUBCASE("matrix commutator oracle for both signs of n") {
    CounterRng rng(13, "cov-oracle", 0);
    for (int i = 0; i < 20; ++i) {
      const int n = rng.range(-4, 4);
      std::vector<cplx> beta;
      for (int j = 0; j < 6; ++j) beta.push_back(rng.complex_in_disk(2.0));
      const CovariantDerivation d(n, beta);
      const CompactOp a = random_compact(rng, kDim, 10);
      const Matrix g = d.generator(kDim);
      const Matrix comm = g * a.matrix() - a.matrix() * g;
      CHECK((apply_covariant(d, a).matrix() - comm).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("general derivations validate growth data") {
  std::map<std::pair<int, int>, cplx> betas;
  betas[{2, 3}] = cplx{1.0, 0.0};
  CHECK_NOTHROW(GeneralDerivation(betas, 2.0, 1, 0));
  betas[{0, 4}] = cplx{50.0, 0.0};
  CHECK_THROWS_AS(GeneralDerivation(betas, 2.0, 1, 0), GrowthViolation);
}

TEST_CASE("generators outside the window are refused") {
  const CovariantDerivation d(6, std::vector<cplx>(kDim, cplx{1.0, 0.0}));
  CounterRng rng(13, "overflow", 0);
  const CompactOp a = random_compact(rng, kDim, 4);
  CHECK_THROWS_AS(apply_covariant(d, a), SupportOverflow);
}

TEST_CASE("fourier components carry their aliasing data") {
  const DerivationAction dk = [](const CompactOp& x) { return delta_k(x); };
  const FourierComponentAction comp = fourier_component(dk, 0, 16);
  CHECK(comp.quad_points == 16);
  CHECK(comp.nyquist_band() == 7);
}

TEST_CASE("single mode general derivation equals the covariant one") {
  CounterRng rng(13, "single-mode", 0);
  const int n = 2, j = 3;
  const cplx v = rng.complex_in_disk(2.0);
  std::map<std::pair<int, int>, cplx> betas{{{n, j}, v}};
  const GeneralDerivation d(betas, 3.0, 2, 0);
  std::vector<cplx> beta(j + 1, cplx{0.0, 0.0});
  beta[j] = v;
  const CovariantDerivation dc(n, beta);
  const CompactOp a = random_compact(rng, kDim, 10);
  CHECK((apply_general(d, a) - apply_covariant(dc, a)).max_abs() == 0.0);
}

TEST_CASE("fourier components pick out covariance modes") {
  CounterRng rng(13, "fourier", 0);
  std::vector<cplx> beta;
  for (int j = 0; j < 5; ++j) beta.push_back(rng.complex_in_disk(2.0));
  const CovariantDerivation d2(2, beta);
  const DerivationAction action = [&d2](const CompactOp& x) { return apply_covariant(d2, x); };
  const CompactOp a = random_compact(rng, kDim, 8);

  const CompactOp same = fourier_component(action, 2, 16)(a);
  CHECK((same - action(a)).max_abs() < 1e-12);
  for (int n : {-2, -1, 0, 1, 3}) {
    CHECK(fourier_component(action, n, 16)(a).max_abs() < 1e-12);
  }
}

TEST_CASE("lifting") {
  SUBCASE("zero data lifts to zero") {
    const LiftResult lift = lift_derivation(CompactOp(kDim), CompactOp(kDim));
    CHECK(lift.f.is_zero());
    CHECK(lift.alpha_tilde.max_abs() == 0.0);
  }
  SUBCASE("rank-one worked example") {
    CompactOp b(kDim), c(kDim);
    b.set(1, 0, cplx{-1.0, 0.0});
    c.set(0, 1, cplx{1.0, 0.0});
    const LiftResult lift = lift_derivation(b, c);
    CHECK(lift.f.band() == 0);
    CHECK(std::abs(lift.f.coeff(0) + 1.0) < 1e-15);
    CHECK((lift.alpha_tilde - unit(0, 0, kDim)).max_abs() < 1e-15);
    // alpha = P00 - I generates the same derivation as [P00, .]
    const Matrix u = shift(kDim);
    const Matrix comm = lift.alpha_realized * u - u * lift.alpha_realized;
    CHECK((comm - b.matrix()).topLeftCorner(kDim - 2, kDim - 2).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("incompatible data is rejected") {
    CompactOp b(kDim), c(kDim);
    b.set(1, 0, cplx{1.0, 0.0});
    c.set(0, 1, cplx{1.0, 0.0});  // should be -1
    CHECK_THROWS_AS(lift_derivation(b, c), CompatibilityViolation);
  }
  SUBCASE("residuals on seeded admissible pairs") {
    for (int i = 0; i < 25; ++i) {
      CounterRng rng(13, "lift", i);
      const auto [b, c] = random_admissible_pair(rng, kDim, rng.range(2, 10));
      const LiftResult lift = lift_derivation(b, c);
      CHECK(lift.residuals.comm_u < 1e-10);
      CHECK(lift.residuals.comm_ustar < 1e-10);
      // gauge: alpha_0(0) = f_0 + alpha_tilde(0,0) = 0
      CHECK(std::abs(lift.f.coeff(0) + lift.alpha_tilde.entry(0, 0)) < 1e-12);
    }
  }
}

TEST_CASE("vector field lift") {
  const ToeplitzElem u_elem = toeplitz(Symbol::mode(1), kDim);

  SUBCASE("constant field is the label derivation") {
    const ToeplitzElem du = vector_field_lift(Symbol::constant(1.0), u_elem);
    CHECK((realize(du) - realize(u_elem)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("mode-one field sends U to U^2") {
    const ToeplitzElem du = vector_field_lift(Symbol::mode(1), u_elem);
    const Matrix u = shift(kDim);
    CHECK((realize(du) - u * u).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(du.symbol.coeff(2) - 1.0) < 1e-15);
  }
  SUBCASE("quotient is the vector field applied to the symbol") {
    CounterRng rng(13, "vf", 0);
    for (int i = 0; i < 10; ++i) {
      const Symbol F = random_symbol(rng, 2);
      const Symbol g = random_symbol(rng, 2);
      const ToeplitzElem a{g, random_compact(rng, kDim, 5)};
      const Symbol got = quotient(vector_field_lift(F, a));
      const Symbol expect = product(F, derivative(g));
      CHECK((got - expect).max_abs_coeff() < 1e-12);
    }
  }
}

TEST_CASE("classification") {
  SUBCASE("label derivation classifies as F = 1 with no inner part") {
    const ToeplitzElem b = toeplitz(Symbol::mode(1), kDim);
    const ToeplitzElem c = toeplitz(Symbol::mode(-1), kDim) * cplx{-1.0, 0.0};
    const ClassifyResult got = classify_derivation(b, c);
    CHECK(got.F.band() == 0);
    CHECK(std::abs(got.F.coeff(0) - 1.0) < 1e-14);
    CHECK(got.inner.f.is_zero(1e-14));
    CHECK(got.inner.alpha_tilde.max_abs() < 1e-14);
  }
  SUBCASE("compact generator data classifies as F = 0") {
    CompactOp bt(kDim), ct(kDim);
    bt.set(1, 0, cplx{-1.0, 0.0});
    ct.set(0, 1, cplx{1.0, 0.0});
    const ClassifyResult got = classify_derivation(from_compact(bt), from_compact(ct));
    CHECK(got.F.is_zero(1e-14));
    CHECK(std::abs(got.inner.f.coeff(0) + 1.0) < 1e-14);
    CHECK((got.inner.alpha_tilde - unit(0, 0, kDim)).max_abs() < 1e-14);
  }
  SUBCASE("delta_F generator data classifies back to F") {
    const Symbol F = Symbol::mode(1);
    const ToeplitzElem z = toeplitz(Symbol::mode(1), kDim);
    const ToeplitzElem b = mul(z, toeplitz(F, kDim));  // U T(F) = delta_F(U)
    const ToeplitzElem c = mul(toeplitz(F, kDim), z.adjoint()) * cplx{-1.0, 0.0};
    const ClassifyResult got = classify_derivation(b, c);
    CHECK((got.F - F).max_abs_coeff() < 1e-14);
    CHECK(got.inner.f.is_zero(1e-12));
    CHECK(got.inner.alpha_tilde.max_abs() < 1e-12);
  }
  SUBCASE("violating delta(U*U) = 0 is rejected") {
    const ToeplitzElem b = toeplitz(Symbol::mode(1), kDim);
    const ToeplitzElem c = toeplitz(Symbol::mode(-1), kDim);  // sign breaks the condition
    CHECK_THROWS_AS(classify_derivation(b, c), CompatibilityViolation);
  }
}

TEST_CASE("n-covariance of the classified components") {
  CounterRng rng(13, "ncov", 0);
  for (int i = 0; i < 10; ++i) {
    const int n = rng.range(-3, 3);
    std::vector<cplx> beta;
    for (int j = 0; j < 5; ++j) beta.push_back(rng.complex_in_disk());
    const CovariantDerivation d(n, beta);
    const CompactOp a = random_compact(rng, kDim, 8);
    for (int t = 0; t < 16; ++t) {
      const double theta = t / 16.0;
      const CompactOp lhs = rho_theta(apply_covariant(d, rho_theta(a, theta)), -theta);
      const CompactOp rhs = apply_covariant(d, a) * std::polar(1.0, kTwoPi * n * theta);
      CHECK((lhs - rhs).max_abs() < 1e-12);
    }
  }
}
