#include <doctest.h>

#include <numbers>

#include "qdisk/errors.hpp"
#include "qdisk/mobius.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"
#include "qdisk/random_ops.hpp"

using namespace qdisk;

namespace {
constexpr int kDim = 64;
const SU11Element kG{cplx{1.25, 0.0}, cplx{0.75, 0.0}};
}

TEST_CASE("su11 validation") {
  CHECK_THROWS_AS(SU11Element(cplx{1.0, 0.0}, cplx{0.5, 0.0}), Error);
  CHECK_NOTHROW(SU11Element(cplx{1.25, 0.0}, cplx{0.75, 0.0}));
  CHECK(kG.contraction() == doctest::Approx(0.6));
}

TEST_CASE("mobius symbol") {
  SUBCASE("identity element") {
    const MobiusSymbol s = mobius_symbol(SU11Element{cplx{1.0, 0.0}, cplx{0.0, 0.0}}, 5);
    CHECK(s.value.band() == 1);
    CHECK(std::abs(s.value.coeff(1) - 1.0) < 1e-15);
    CHECK(s.tail_bound == 0.0);
  }
  SUBCASE("closed form for the worked element") {
    // c_0 = beta/conj(alpha), c_n = q^{n-1}/conj(alpha)^2 with q = -3/5
    const MobiusSymbol s = mobius_symbol(kG, 20);
    CHECK(std::abs(s.value.coeff(0) - 0.6) < 1e-15);
    for (int n = 1; n <= 20; ++n) {
      const cplx expect = std::pow(cplx{-0.6, 0.0}, n - 1) / cplx{1.5625, 0.0};
      CHECK(std::abs(s.value.coeff(n) - expect) < 1e-14);
    }
    for (int n = -20; n < 0; ++n) CHECK(s.value.coeff(n) == cplx{0.0, 0.0});
  }
  SUBCASE("grid oracle") {
    const MobiusSymbol s = mobius_symbol(kG, 60);
    for (int q = 0; q < 64; ++q) {
      const double x = q / 64.0;
      const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * x);
      const cplx expect =
          (kG.alpha * z + kG.beta) / (std::conj(kG.beta) * z + std::conj(kG.alpha));
      CHECK(std::abs(s.value.eval(x) - expect) < 1e-12);
    }
  }
}

TEST_CASE("isometry window") {
  SUBCASE("identity gives the shift") {
    CHECK((mobius_isometry_window(SU11Element{cplx{1.0, 0.0}, cplx{0.0, 0.0}}, kDim) -
           shift(kDim))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
  }
  SUBCASE("W* W = I away from the band tail") {
    const Matrix w = mobius_isometry_window(kG, kDim);
    const Matrix iso = w.adjoint() * w - Matrix::Identity(kDim, kDim);
    const int c = kDim - central_margin(kG, kDim);
    CHECK(op_norm(iso.topLeftCorner(c, c)) < 1e-8);
  }
  SUBCASE("structured element has a tail-size compact part") {
    const ToeplitzElem w = mobius_isometry(kG, kDim);
    CHECK(w.compact.max_abs() < 1e-8);
  }
}

TEST_CASE("kernel vector") {
  SUBCASE("identity element gives E0") {
    const Vector f0 = kernel_vector(SU11Element{cplx{1.0, 0.0}, cplx{0.0, 0.0}}, kDim);
    CHECK(std::abs(f0(0) - 1.0) < 1e-15);
    CHECK(f0.tail(kDim - 1).norm() == 0.0);
  }
  SUBCASE("closed form and unit norm") {
    const Vector f0 = kernel_vector(kG, kDim);
    for (int k = 0; k < 10; ++k)
      CHECK(std::abs(f0(k) - 0.8 * std::pow(-0.6, k)) < 1e-15);
    CHECK(std::abs(f0.norm() - 1.0) < 1e-14);
  }
  SUBCASE("annihilated by W*") {
    const Matrix w = mobius_isometry_window(kG, kDim);
    CHECK((w.adjoint() * kernel_vector(kG, kDim)).norm() < 1e-8);
  }
}

TEST_CASE("implementing unitary") {
  const ImplementingUnitary ug = implementing_unitary(kG, kDim);
  CHECK(ug.central >= 4);
  CHECK(ug.gram_residual < 1e-8);

  // conjugation implements the automorphism on the certified block
  const Matrix w = mobius_isometry_window(kG, kDim);
  const Matrix diff = conjugate_window(ug, shift(kDim)) - w;
  CHECK(op_norm(diff.topLeftCorner(ug.central, ug.central)) < 1e-7);

  // identity element gives the identity matrix
  const ImplementingUnitary id = implementing_unitary(SU11Element{cplx{1.0, 0.0}, cplx{0.0, 0.0}},
                                                      kDim);
  CHECK((id.u - Matrix::Identity(kDim, kDim)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("conjugation of compact operators") {
  SUBCASE("identity fixes everything") {
    CounterRng rng(17, "conj", 0);
    const CompactOp a = random_compact(rng, kDim, 8);
    const ConjugationResult r =
        conjugate(SU11Element{cplx{1.0, 0.0}, cplx{0.0, 0.0}}, a);
    CHECK((r.value - a).max_abs() < 1e-15);
  }
  SUBCASE("rank-one projection maps to the kernel projection") {
    const ConjugationResult r = conjugate(kG, unit(0, 0, kDim));
    const Vector f0 = kernel_vector(kG, kDim);
    const Matrix expect = f0 * f0.adjoint();
    CHECK((r.value.matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);
    for (int t = 0; t < 4; ++t) CHECK(r.decay_profile[t] > 0.0);
  }
  SUBCASE("operands reaching uncertified columns are refused") {
    CompactOp wide(kDim);
    wide.set(kDim - 2, kDim - 2, cplx{1.0, 0.0});
    CHECK_THROWS_AS(conjugate(kG, wide), SupportOverflow);
  }
}

TEST_CASE("report for the worked element") {
  const MobiusReport rep = mobius_report(kG, kDim);
  CHECK(rep.isometry_residual < 1e-8);
  CHECK(rep.kernel_residual < 1e-8);
  CHECK(rep.conjugation_residual < 1e-7);
  CHECK(rep.delta_k_identity_residual < 1e-8);
  CHECK(rep.gram_residual < 1e-8);
  CHECK(rep.w_compact_max < 1e-8);
  CHECK(std::abs(rep.f0[0].real() - 0.8) < 1e-14);
  CHECK(rep.f0_norm_deficit < 1e-12);
}

TEST_CASE("group product is the 2x2 matrix product") {
  CounterRng rng(17, "group", 0);
  const cplx b1 = rng.complex_in_disk(0.4), b2 = rng.complex_in_disk(0.4);
  const SU11Element g1{std::sqrt(1.0 + std::norm(b1)), b1};
  const SU11Element g2{std::sqrt(1.0 + std::norm(b2)), b2};
  const SU11Element g12 = group_product(g1, g2);
  // constraint is preserved exactly by construction
  CHECK(std::abs(std::norm(g12.alpha) - std::norm(g12.beta) - 1.0) < 1e-12);
}
