#include <doctest.h>

#include <random>

#include "gaugekit/lie.hpp"

using namespace gaugekit;

namespace {

std::mt19937_64 rng(42);

AlgebraElement random_algebra(const LieGroupSpec& spec, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Vec c(spec.algebra_dim());
  for (int i = 0; i < c.size(); ++i) c(i) = nd(rng);
  return algebra_from_components(spec, c);
}

// Rodrigues rotation matrix about a unit axis, the independent route for
// SO(3) exponentials.
Mat rodrigues(const Eigen::Vector3d& axis, double angle) {
  Mat k = Mat::Zero(3, 3);
  k(0, 1) = -axis(2);
  k(0, 2) = axis(1);
  k(1, 0) = axis(2);
  k(1, 2) = -axis(0);
  k(2, 0) = -axis(1);
  k(2, 1) = axis(0);
  return Mat::Identity(3, 3) + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

}  // namespace

TEST_CASE("exp: identity and scalar cases") {
  for (auto spec : {LieGroupSpec::u1(), LieGroupSpec::so3(), LieGroupSpec::su2(), LieGroupSpec::gln(3)}) {
    AlgebraElement zero{spec, CMat::Zero(spec.n, spec.n)};
    GroupElement e = lie_exp(zero);
    CHECK((e.mat - spec.identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
  CMat z(1, 1);
  z(0, 0) = Complex(0.0, M_PI / 2.0);
  GroupElement g = lie_exp({LieGroupSpec::u1(), z});
  CHECK(std::abs(g.mat(0, 0) - std::exp(Complex(0.0, M_PI / 2.0))) < 1e-14);
}

TEST_CASE("exp: SO(3) z-rotation against the Rodrigues oracle") {
  auto spec = LieGroupSpec::so3();
  auto basis = spec.algebra_basis();  // L_x, L_y, L_z
  AlgebraElement z{spec, CMat((M_PI / 2.0) * basis[2])};
  GroupElement g = lie_exp(z);
  Mat expect = rodrigues(Eigen::Vector3d(0, 0, 1), M_PI / 2.0);
  CHECK((g.mat.real() - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(spec.membership_violation(g.mat) < 1e-12);
  // column images of a 90 degree z-rotation
  CHECK(std::abs(g.mat(1, 0).real() - 1.0) < 1e-12);  // e_x -> e_y
  CHECK(std::abs(g.mat(0, 1).real() + 1.0) < 1e-12);  // e_y -> -e_x
}

TEST_CASE("exp: non-finite input rejected") {
  CMat bad(1, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(lie_exp({LieGroupSpec::u1(), bad}), std::domain_error);
}

TEST_CASE("bracket: antisymmetry, abelian case, su(2) oracle") {
  auto su2 = LieGroupSpec::su2();
  auto e = su2.algebra_basis();
  AlgebraElement x{su2, e[0]}, y{su2, e[1]};
  CHECK(bracket(x, x).mat.cwiseAbs().maxCoeff() == 0.0);

  auto u1 = LieGroupSpec::u1();
  CMat a(1, 1), b(1, 1);
  a(0, 0) = Complex(0, 1.3);
  b(0, 0) = Complex(0, -0.4);
  CHECK(bracket({u1, a}, {u1, b}).mat.cwiseAbs().maxCoeff() < 1e-16);

  // direct 2x2 multiplication oracle: [i s1/2, i s2/2] = -i s3/2 = -e3
  CMat direct = e[0] * e[1] - e[1] * e[0];
  CHECK((bracket(x, y).mat - direct).cwiseAbs().maxCoeff() == 0.0);
  CHECK((direct + e[2]).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("bracket: dimension mismatch") {
  AlgebraElement a{LieGroupSpec::su2(), CMat::Zero(2, 2)};
  AlgebraElement b{LieGroupSpec::so3(), CMat::Zero(3, 3)};
  CHECK_THROWS_AS(bracket(a, b), std::invalid_argument);
}

TEST_CASE("Ad: identity, abelian, SO(3) conjugation oracle") {
  auto so3 = LieGroupSpec::so3();
  auto L = so3.algebra_basis();
  AlgebraElement lx{so3, L[0]};
  GroupElement e{so3, so3.identity()};
  CHECK((Ad(e, lx).mat - lx.mat).cwiseAbs().maxCoeff() == 0.0);

  auto u1 = LieGroupSpec::u1();
  CMat th(1, 1), zz(1, 1);
  th(0, 0) = std::exp(Complex(0, 0.7));
  zz(0, 0) = Complex(0, 2.0);
  CHECK((Ad({u1, th}, {u1, zz}).mat - zz).cwiseAbs().maxCoeff() < 1e-15);

  // Ad(R_z(pi/2)) L_x = L_y (matrix conjugation oracle)
  GroupElement rz = lie_exp({so3, CMat((M_PI / 2.0) * L[2])});
  CMat oracle = rz.mat * L[0] * rz.mat.adjoint();
  AlgebraElement got = Ad(rz, lx);
  CHECK((got.mat - oracle).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((got.mat - L[1]).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(so3.algebra_violation(got.mat) < 1e-10);
}

TEST_CASE("Ad: singular element rejected") {
  CMat z = CMat::Zero(2, 2);
  CHECK_THROWS_AS(Ad({LieGroupSpec::su2(), z}, {LieGroupSpec::su2(), CMat::Zero(2, 2)}),
                  std::domain_error);
}

TEST_CASE("invariant_inner: normalization and bilinearity") {
  auto u1 = LieGroupSpec::u1();
  CMat i1(1, 1);
  i1(0, 0) = Complex(0, 1);
  CHECK(invariant_inner({u1, i1}, {u1, i1}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(invariant_inner({u1, i1}, {u1, CMat::Zero(1, 1)}) == 0.0);

  auto su2 = LieGroupSpec::su2();
  auto e = su2.algebra_basis();
  // trace evaluation oracle: -2 tr(e3 e3) = 1
  double oracle = -su2.inner_normalization() * (e[2] * e[2]).trace().real();
  CHECK(invariant_inner({su2, e[2]}, {su2, e[2]}) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(invariant_inner({su2, e[2]}, {su2, e[2]}) == doctest::Approx(1.0).epsilon(1e-13));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(invariant_inner({su2, e[a]}, {su2, e[b]}) ==
            doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-13));
}

TEST_CASE("log: identity, U(1) principal branch, SO(3) axis-angle oracle") {
  for (auto spec : {LieGroupSpec::u1(), LieGroupSpec::so3(), LieGroupSpec::su2()}) {
    GroupElement e{spec, spec.identity()};
    CHECK(lie_log(e).mat.cwiseAbs().maxCoeff() < 1e-14);
  }
  for (double th : {-3.0, -1.0, 0.3, 2.9}) {
    CMat g(1, 1);
    g(0, 0) = std::exp(Complex(0, th));
    CHECK(lie_log({LieGroupSpec::u1(), g}).mat(0, 0).imag() == doctest::Approx(th).epsilon(1e-13));
  }
  auto so3 = LieGroupSpec::so3();
  auto L = so3.algebra_basis();
  GroupElement rz{so3, rodrigues(Eigen::Vector3d(0, 0, 1), M_PI / 2.0).cast<Complex>()};
  AlgebraElement lg = lie_log(rz);
  CHECK((lg.mat - CMat((M_PI / 2.0) * L[2])).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("log: branch domain guard") {
  auto so3 = LieGroupSpec::so3();
  GroupElement flip{so3, rodrigues(Eigen::Vector3d(0, 0, 1), M_PI).cast<Complex>()};
  CHECK_THROWS_AS(lie_log(flip), std::domain_error);
}

TEST_CASE("reproject: idempotence and polar recovery") {
  auto u1 = LieGroupSpec::u1();
  CMat z(1, 1);
  z(0, 0) = 1.001 * std::exp(Complex(0, 0.9));
  GroupElement r = reproject({u1, z});
  CHECK(std::abs(r.mat(0, 0) - std::exp(Complex(0, 0.9))) < 1e-12);
  GroupElement r2 = reproject(r);
  CHECK((r.mat - r2.mat).cwiseAbs().maxCoeff() < 1e-14);

  auto so3 = LieGroupSpec::so3();
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement z3 = random_algebra(so3);
    GroupElement g = lie_exp(z3);
    Mat noise(3, 3);
    for (int i = 0; i < 9; ++i) noise(i / 3, i % 3) = nd(rng);
    GroupElement noisy{so3, g.mat + 1e-5 * noise.cast<Complex>()};
    GroupElement rec = reproject(noisy);
    CHECK(so3.membership_violation(rec.mat) < 1e-13);
    CHECK((rec.mat - g.mat).cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("reproject: rank-deficient input rejected") {
  CMat z = CMat::Zero(1, 1);
  CHECK_THROWS_AS(reproject({LieGroupSpec::u1(), z}), std::domain_error);
}

TEST_CASE("property: Jacobi identity on random triples") {
  for (auto spec : {LieGroupSpec::so3(), LieGroupSpec::su2(), LieGroupSpec::gln(3)}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_algebra(spec), y = random_algebra(spec), z = random_algebra(spec);
      CMat j = bracket(x, bracket(y, z)).mat + bracket(y, bracket(z, x)).mat +
               bracket(z, bracket(x, y)).mat;
      CHECK(j.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("property: Ad is an algebra map") {
  for (auto spec : {LieGroupSpec::so3(), LieGroupSpec::su2()}) {
    for (int trial = 0; trial < 30; ++trial) {
      GroupElement g = lie_exp(random_algebra(spec));
      auto x = random_algebra(spec), y = random_algebra(spec);
      CMat lhs = Ad(g, bracket(x, y)).mat;
      CMat rhs = bracket(Ad(g, x), Ad(g, y)).mat;
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("property: exp/log round trip inside the branch domain") {
  for (auto spec : {LieGroupSpec::u1(), LieGroupSpec::so3(), LieGroupSpec::su2()}) {
    for (int trial = 0; trial < 30; ++trial) {
      AlgebraElement z = random_algebra(spec, 0.4);
      GroupElement g = lie_exp(z);
      AlgebraElement back = lie_log(g);
      CHECK((back.mat - z.mat).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((lie_exp(back).mat - g.mat).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("property: Ad-invariance of the inner product, 100 draws per group") {
  for (auto spec : {LieGroupSpec::u1(), LieGroupSpec::so3(), LieGroupSpec::su2()}) {
    for (int trial = 0; trial < 100; ++trial) {
      GroupElement g = lie_exp(random_algebra(spec));
      auto x = random_algebra(spec), y = random_algebra(spec);
      double a = invariant_inner(Ad(g, x), Ad(g, y));
      double b = invariant_inner(x, y);
      CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("membership and algebra constraints at tolerance") {
  auto su2 = LieGroupSpec::su2();
  GroupElement g = lie_exp(random_algebra(su2));
  CHECK(su2.is_member(g.mat));
  CHECK(su2.algebra_violation(random_algebra(su2).mat) < 1e-12);

  CMat notsu(2, 2);
  notsu << 2, 0, 0, 0.5;
  CHECK(!su2.is_member(notsu));
}
