#include <doctest.h>

#include "qdisk/errors.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"
#include "qdisk/random_ops.hpp"

using namespace qdisk;

namespace {
constexpr int kDim = 32;
}

TEST_CASE("matrix units") {
  const CompactOp p00 = unit(0, 0, kDim);
  CHECK((p00 * p00 - p00).max_abs() == 0.0);

  const CompactOp left = unit(0, 1, kDim) * unit(1, 3, kDim);
  CHECK((left - unit(0, 3, kDim)).max_abs() == 0.0);

  CHECK((unit(0, 1, kDim) * unit(2, 3, kDim)).max_abs() == 0.0);

  CHECK_THROWS_AS(unit(kDim, 0, kDim), IndexOutOfWindow);

  // adjoint swaps support bounds
  const CompactOp p = unit(2, 5, kDim);
  CHECK(p.support_rows() == 3);
  CHECK(p.support_cols() == 6);
  CHECK(p.adjoint().support_rows() == 6);
  CHECK(p.adjoint().support_cols() == 3);
}

TEST_CASE("shift and label operator") {
  const Matrix u = shift(kDim);
  const Matrix uu = u.adjoint() * u;
  CHECK((uu - Matrix::Identity(kDim, kDim)).topLeftCorner(kDim - 1, kDim - 1)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  const Matrix uustar = u * u.adjoint();
  const Matrix expect = Matrix::Identity(kDim, kDim) - unit(0, 0, kDim).matrix();
  CHECK((uustar - expect).topLeftCorner(kDim - 1, kDim - 1).cwiseAbs().maxCoeff() == 0.0);

  const Matrix klab = label_operator(kDim);
  const Matrix p31 = unit(3, 1, kDim).matrix();
  CHECK((klab * p31 - 3.0 * p31).cwiseAbs().maxCoeff() == 0.0);
  CHECK((p31 * klab - 1.0 * p31).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("toeplitz realization") {
  const ToeplitzElem tz = toeplitz(Symbol::mode(1), kDim);
  CHECK((realize(tz) - shift(kDim)).cwiseAbs().maxCoeff() == 0.0);

  const ToeplitzElem three = toeplitz(Symbol::constant(3.0), kDim);
  CHECK((realize(three) - 3.0 * Matrix::Identity(kDim, kDim)).cwiseAbs().maxCoeff() == 0.0);

  // adjoint of T(f) is T(conj-reflect f)
  CounterRng rng(5, "toeplitz-adjoint", 0);
  const Symbol f = random_symbol(rng, 3);
  const ToeplitzElem tf = toeplitz(f, kDim);
  CHECK((realize(tf.adjoint()) - realize(tf).adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("mode resummation") {
  SUBCASE("diagonal delta") {
    FourierModes m;
    m.modes[0] = {cplx{1.0, 0.0}};
    CHECK((to_matrix(m, kDim) - unit(0, 0, kDim)).max_abs() == 0.0);
  }
  SUBCASE("mode two at k = 1 lands at (3,1)") {
    FourierModes m;
    m.modes[2] = {cplx{0.0, 0.0}, cplx{1.0, 0.0}};
    CHECK((to_matrix(m, kDim) - unit(3, 1, kDim)).max_abs() == 0.0);
  }
  SUBCASE("round trip") {
    CounterRng rng(5, "modes", 0);
    for (int i = 0; i < 10; ++i) {
      const CompactOp a = random_compact(rng, kDim, rng.range(1, 12));
      CHECK((to_matrix(to_modes(a), kDim) - a).max_abs() == 0.0);
    }
  }
  SUBCASE("overflow") {
    FourierModes m;
    m.modes[kDim] = {cplx{1.0, 0.0}};
    CHECK_THROWS_AS(to_matrix(m, kDim), SupportOverflow);
  }
}

TEST_CASE("structured product") {
  const ToeplitzElem z = toeplitz(Symbol::mode(1), kDim);
  const ToeplitzElem zbar = toeplitz(Symbol::mode(-1), kDim);

  SUBCASE("T(z) T(zbar) = 1 - P00") {
    const ToeplitzElem prod = mul(z, zbar);
    CHECK(std::abs(prod.symbol.coeff(0) - 1.0) < 1e-15);
    CHECK(prod.symbol.band() == 0);
    CHECK((prod.compact + unit(0, 0, kDim)).max_abs() < 1e-15);
  }
  SUBCASE("T(zbar) T(z) = 1") {
    const ToeplitzElem prod = mul(zbar, z);
    CHECK(std::abs(prod.symbol.coeff(0) - 1.0) < 1e-15);
    CHECK(prod.compact.max_abs() == 0.0);
  }
  SUBCASE("element times compact stays compact") {
    CounterRng rng(5, "elem-compact", 0);
    const ToeplitzElem a{random_symbol(rng, 3), CompactOp(kDim)};
    const ToeplitzElem c = from_compact(random_compact(rng, kDim, 6));
    const ToeplitzElem prod = mul(a, c);
    CHECK(prod.symbol.is_zero());
    CHECK(prod.compact.support_rows() <= 6 + 3);
  }
  SUBCASE("dense oracle on an enlarged window") {
    CounterRng rng(5, "dense-oracle", 0);
    for (int i = 0; i < 20; ++i) {
      const int ba = rng.range(0, 4), bb = rng.range(0, 4);
      const ToeplitzElem a{random_symbol(rng, ba), random_compact(rng, kDim, rng.range(0, 8))};
      const ToeplitzElem b{random_symbol(rng, bb), random_compact(rng, kDim, rng.range(0, 8))};
      const int big = kDim + ba + bb;
      const Matrix oracle = (realize(a, big) * realize(b, big)).topLeftCorner(kDim, kDim);
      CHECK((realize(mul(a, b), kDim) - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("support overflow is refused") {
    CounterRng rng(5, "overflow", 0);
    ToeplitzElem a{random_symbol(rng, 3), CompactOp(kDim)};
    CompactOp c(kDim);
    c.set(kDim - 1, kDim - 1, cplx{1.0, 0.0});
    CHECK_THROWS_AS(mul(a, from_compact(c)), SupportOverflow);
  }
}

TEST_CASE("quotient map") {
  CounterRng rng(5, "quotient", 0);
  const Symbol f = random_symbol(rng, 3);
  const ToeplitzElem a{f, random_compact(rng, kDim, 5)};
  for (int n = -3; n <= 3; ++n) CHECK(quotient(a).coeff(n) == f.coeff(n));
  CHECK(quotient(from_compact(random_compact(rng, kDim, 5))).is_zero());
}

TEST_CASE("circle action") {
  const double theta = 0.3125;
  SUBCASE("on units") {
    const CompactOp rot = rho_theta(unit(3, 1, kDim), theta);
    const cplx expect = std::polar(1.0, 2.0 * 3.14159265358979323846 * theta * 2.0);
    CHECK(std::abs(rot.entry(3, 1) - expect) < 1e-15);
  }
  SUBCASE("diagonals are fixed") {
    CounterRng rng(5, "rho-diag", 0);
    const CompactOp d = diagonal_expectation(random_compact(rng, kDim, 8));
    CHECK((rho_theta(d, theta) - d).max_abs() == 0.0);
  }
  SUBCASE("half turn negates the shift") {
    const ToeplitzElem u_elem = toeplitz(Symbol::mode(1), kDim);
    CHECK((realize(rho_theta(u_elem, 0.5)) + shift(kDim)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("kernel coefficients re-index columns") {
  const auto kc = kernel_coeffs(unit(0, 0, kDim));
  REQUIRE(kc.size() == 1);
  CHECK(kc.count({0, 0}) == 1);

  const auto kc21 = kernel_coeffs(unit(2, 1, kDim));
  REQUIRE(kc21.size() == 1);
  CHECK(kc21.count({2, -1}) == 1);

  // linearity
  CounterRng rng(5, "kernel-lin", 0);
  const CompactOp a = random_compact(rng, kDim, 6);
  const CompactOp b = random_compact(rng, kDim, 6);
  auto ka = kernel_coeffs(a), kb = kernel_coeffs(b), kab = kernel_coeffs(a + b);
  for (const auto& [key, v] : kab) {
    cplx expect{0.0, 0.0};
    if (auto it = ka.find(key); it != ka.end()) expect += it->second;
    if (auto it = kb.find(key); it != kb.end()) expect += it->second;
    CHECK(std::abs(v - expect) < 1e-15);
  }
}

TEST_CASE("certified support extraction") {
  // a clean finite block in a noisy-edge window
  Matrix w = Matrix::Zero(kDim, kDim);
  w(2, 3) = cplx{1.0, 0.0};
  w(kDim - 1, kDim - 1) = cplx{100.0, 0.0};  // untrusted edge junk
  const CompactOp got = certify_finite_support(w, 4);
  CHECK(got.support_rows() == 3);
  CHECK(got.support_cols() == 4);
  CHECK(got.entry(2, 3) == cplx{1.0, 0.0});

  // support running into the trust boundary is refused
  Matrix bad = Matrix::Zero(kDim, kDim);
  for (int k = 0; k < kDim - 4; ++k) bad(k, k) = cplx{1.0, 0.0};
  CHECK_THROWS_AS(certify_finite_support(bad, 4), SupportOverflow);
}
