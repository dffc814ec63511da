#include <doctest.h>

#include <numbers>

#include "qdisk/errors.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"
#include "qdisk/random_ops.hpp"

using namespace qdisk;

namespace {
constexpr int kDim = 48;
}

TEST_CASE("label commutator") {
  CHECK((delta_k(unit(3, 1, kDim)) - unit(3, 1, kDim) * cplx{2.0, 0.0}).max_abs() == 0.0);

  // delta_K(U) = U and delta_K(U*) = -U* on realizations
  const ToeplitzElem u_elem = toeplitz(Symbol::mode(1), kDim);
  CHECK((realize(delta_k(u_elem)) - realize(u_elem)).cwiseAbs().maxCoeff() == 0.0);
  const ToeplitzElem us = u_elem.adjoint();
  CHECK((realize(delta_k(us)) + realize(us)).cwiseAbs().maxCoeff() == 0.0);

  CounterRng rng(9, "delta-diag", 0);
  CHECK(delta_k(diagonal_expectation(random_compact(rng, kDim, 10))).max_abs() == 0.0);

  // the matrix rule and the symbol rule agree on realizations
  const Symbol f = random_symbol(rng, 4);
  const CompactOp c = random_compact(rng, kDim, 8);
  const ToeplitzElem a{f, c};
  Matrix direct = realize(a);
  for (int k = 0; k < kDim; ++k)
    for (int l = 0; l < kDim; ++l) direct(k, l) *= static_cast<double>(k - l);
  CHECK((realize(delta_k(a)) - direct).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial_l") {
  CounterRng rng(9, "partial", 0);
  const CompactOp a = random_compact(rng, kDim, 10);
  CHECK((partial_l(a, 1) - delta_k(a)).max_abs() == 0.0);

  // direct commutator oracle
  const CompactOp p01 = unit(0, 1, kDim);
  CHECK((partial_l(p01, 2) + p01 * cplx{3.0, 0.0}).max_abs() == 0.0);
  for (int l = 1; l <= 4; ++l) {
    Matrix weights = Matrix::Zero(kDim, kDim);
    for (int k = 0; k < kDim; ++k) weights(k, k) = std::pow(1.0 + k, l);
    const Matrix comm = weights * a.matrix() - a.matrix() * weights;
    CHECK((partial_l(a, l).matrix() - comm).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("norm golden values") {
  for (int l = 0; l <= 10; ++l)
    for (int M = 0; M <= 3; ++M)
      for (int N = 0; N + M <= 6; ++N) {
        const double got = norm_MN(unit(0, l, kDim), M, N);
        CHECK(got == doctest::Approx(std::pow(1.0 + l, M + N)).epsilon(1e-12));
      }
  CHECK(norm_0N(unit(0, 0, kDim), 5) == doctest::Approx(1.0));
  for (int n = 1; n <= 10; ++n)
    for (int N = 0; N <= 4; ++N)
      CHECK(norm_0N(proj_below(n, kDim), N) == doctest::Approx(std::pow(n, N)));
}

TEST_CASE("norm_0N refuses window-filling supports") {
  CompactOp full(kDim);
  full.set(kDim - 1, 0, cplx{1.0, 0.0});
  CHECK_THROWS_AS(norm_0N(full, 1), SupportOverflow);
}

TEST_CASE("hs_weighted is the weighted coefficient sum") {
  CounterRng rng(9, "hs", 0);
  const CompactOp a = random_compact(rng, kDim, 9);
  for (int j = 0; j <= 2; ++j)
    for (int N = 0; N <= 2; ++N) {
      double acc = 0.0;
      for (int k = 0; k < 9; ++k)
        for (int l = 0; l < 9; ++l)
          acc += std::pow(1.0 + l, 2 * N) * std::pow(double(k - l), 2 * j) *
                 std::norm(a.entry(k, l));
      CHECK(hs_weighted(a, j, N) == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
    }
}

TEST_CASE("norm inequalities on random finitely supported operators") {
  CounterRng rng(9, "ineq", 0);
  const double pi = std::numbers::pi;
  for (int i = 0; i < 40; ++i) {
    const CompactOp a = random_compact(rng, kDim, rng.range(1, 9));
    const CompactOp b = random_compact(rng, kDim, rng.range(1, 9));
    const int M = rng.range(0, 2), N = rng.range(0, 2);
    const double slack = 1e-9;

    CHECK(norm_0N(a, 0) == doctest::Approx(op_norm(a.matrix())).epsilon(1e-12));
    CHECK(norm_0N(a, N) <= norm_0N(a, N + 1) * (1 + slack));
    CHECK(norm_0N(a, N) <= hs_weighted(a, 0, N) * (1 + slack));
    CHECK(hs_weighted(a, 0, N) <= std::sqrt(pi * pi / 6.0) * norm_0N(a, N + 1) * (1 + slack));
    CHECK(norm_0N(a * b, N) <= norm_0N(a, 0) * norm_0N(b, N) * (1 + slack));
    CHECK(norm_MN(a, M + 1, N) ==
          doctest::Approx(norm_MN(a, M, N) + norm_MN(delta_k(a), M, N)).epsilon(1e-11));
    CHECK(norm_MN(a * b, M, N) <= norm_MN(a, M, 0) * norm_MN(b, M, N) * (1 + slack));
    CHECK(norm_MN(delta_k(a), M, N) <= norm_MN(a, M + 1, N) * (1 + slack));
    CHECK(norm_MN(a.adjoint(), M, N) <= norm_MN(a, M + N, N) * (1 + slack));
  }
}

TEST_CASE("toeplitz element norms") {
  const double s = s_constant();
  // S solves S^2 = S + pi^2/3 - 1
  CHECK(s * s == doctest::Approx(s + std::numbers::pi * std::numbers::pi / 3.0 - 1.0));

  // identity element: ||1||_{C^2} = 1 and no compact part
  const ToeplitzElem id = identity_elem(kDim);
  CHECK(toeplitz_norm_MN(id, 0, 0) == doctest::Approx(s));

  const ToeplitzElem zero{Symbol{}, CompactOp(kDim)};
  CHECK(toeplitz_norm_MN(zero, 2, 1) == 0.0);
}
