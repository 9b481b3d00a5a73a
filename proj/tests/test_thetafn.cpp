#include <doctest.h>

#include "qmf/thetafn.hpp"

using namespace qmf;

namespace {

cplx brute_shimura(const ThetaSpec& s, cplx tau) {
  cplx sum = 0.0;
  for (long m = -400; m <= 400; ++m) {
    const long n = s.h + m * s.N;
    const double x = double(n) * n * s.A / (2.0 * s.N * s.N);
    if (x * tau.imag() * 2 * kPi > 80.0) continue;
    sum += std::pow(double(n), s.nu) * std::exp(2.0 * kPi * kI * tau * x);
  }
  return sum;
}

cplx brute_theta12(int which, const Eigen::Vector2d& a, cplx w1, cplx w2) {
  cplx sum = 0.0;
  for (int m1 = -30; m1 <= 30; ++m1)
    for (int m2 = -30; m2 <= 30; ++m2) {
      const double n1 = a(0) + m1, n2 = a(1) + m2;
      if (which == 1) {
        const double x = 2 * n1 + n2;
        sum += x * n2 * std::exp(1.5 * kPi * kI * x * x * w1 + 0.5 * kPi * kI * n2 * n2 * w2);
      } else {
        const double x = 3 * n1 + 2 * n2;
        sum += x * n1 * std::exp(0.5 * kPi * kI * x * x * w1 + 1.5 * kPi * kI * n1 * n1 * w2);
      }
    }
  return sum;
}

}  // namespace

TEST_CASE("Shimura theta against its defining sum") {
  for (const ThetaSpec s : {ThetaSpec{1, 4, 1, 4}, ThetaSpec{0, 12, 3, 12}, ThetaSpec{1, 2, 2, 4}})
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 0.7), cplx(-0.2, 0.4)})
      CHECK(std::abs(theta_shimura(s, UpperHalfPoint(tau)) - brute_shimura(s, tau)) < 1e-12);
}

TEST_CASE("direct and dual evaluation agree") {
  const UnaryTheta t{0.25, 1.0, 1, 2.0, 0.1, 1.0};
  for (cplx w : {cplx(0.1, 0.05), cplx(-0.4, 0.3), cplx(0.0, 1.0)}) CHECK(std::abs(t.direct(w) - t.dual(w)) < 1e-11 * (1 + std::abs(t.direct(w))));
  const UnaryTheta t0{0.0, 1.0, 0, 1.0, 0.0, 1.0};
  CHECK(std::abs(t0.direct(cplx(0, 0.2)) - t0.dual(cplx(0, 0.2))) < 1e-12);
}

TEST_CASE("theta inversion for the acceptance specs") {
  const std::vector<ThetaSpec> specs{{0, 4, 1, 4}, {1, 4, 2, 4}, {0, 12, 3, 12}, {1, 12, 5, 12}, {1, 2, 2, 4}, {0, 6, 5, 6}};
  for (const auto& s : specs)
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 0.7)}) CHECK(theta_shimura_S_check(s, UpperHalfPoint(tau)).passed);
}

TEST_CASE("dropping the inversion phase is detected") {
  const auto r = theta_shimura_S_check({1, 4, 1, 4}, UpperHalfPoint(0.3, 0.7), true);
  CHECK_FALSE(r.passed);
  CHECK(r.abs_err > 1e-3);
}

TEST_CASE("rescaling by 3 and its wrong factor") {
  for (long h : {1L, 3L}) CHECK(theta_rescale_check(h, 2, UpperHalfPoint(0.2, 0.6)).passed);
  CHECK_FALSE(theta_rescale_check(1, 2, UpperHalfPoint(0.2, 0.6), 1.0).passed);
}

TEST_CASE("rank-two thetas against lattice sums") {
  const UpperHalfPoint w1(0.1, 0.8), w2(-0.2, 0.6);
  for (const Eigen::Vector2d a : {Eigen::Vector2d(0.5, 1.0 / 3), Eigen::Vector2d(1.0 / 6, 2.0 / 3)}) {
    CHECK(std::abs(theta_2d(Theta2DKind::Theta1, a, w1, w2) - brute_theta12(1, a, w1.value(), w2.value())) < 1e-11);
    CHECK(std::abs(theta_2d(Theta2DKind::Theta2, a, w1, w2) - brute_theta12(2, a, w1.value(), w2.value())) < 1e-11);
  }
}

TEST_CASE("f_jp inversion and companion limits") {
  for (long p : {2L, 3L, 4L})
    for (long j = 1; j < p; ++j) CHECK(f_jp_S_check(j, p, UpperHalfPoint(0.1, 0.9)).passed);
  // F* decays like the leading Gamma term as v grows
  const cplx c = false_theta_companion(1, 2, UpperHalfPoint(0.0, 20.0));
  CHECK(std::abs(c) < 1e-3);
}

TEST_CASE("root_of_unity and spec validation") {
  CHECK(std::abs(root_of_unity(8, 3) - std::polar(1.0, 2 * kPi * 3 / 8)) < 1e-15);
  CHECK(std::abs(root_of_unity(6, 6) - 1.0) < 1e-15);
  CHECK_THROWS_AS((ThetaSpec{2, 4, 1, 4}.validate()), DomainError);
  CHECK_THROWS_AS((ThetaSpec{1, 3, 1, 4}.validate()), DomainError);
  CHECK_THROWS_AS((ThetaSpec{1, 2, 1, 4}.validate()), DomainError);
  CHECK_THROWS_AS(UpperHalfPoint(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(f_jp(2, 2, UpperHalfPoint(0.0, 1.0)), DomainError);
}
