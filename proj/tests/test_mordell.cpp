#include <doctest.h>

#include "qmf/eichler.hpp"
#include "qmf/mordell.hpp"

using namespace qmf;

namespace {

// Trapezoid rule on [-L, L]; exponentially accurate for integrands analytic in a strip.
cplx trapezoid(const std::function<cplx(double)>& f, double L = 8.0, double h = 2e-3) {
  cplx s = 0.0;
  const int n = static_cast<int>(L / h);
  for (int i = -n; i <= n; ++i) s += f(i * h);
  return s * h;
}

cplx cot(cplx z) { return std::cos(z) / std::sin(z); }

}  // namespace

TEST_CASE("one-dimensional Mordell integral against the trapezoid rule") {
  for (long p : {2L, 3L, 4L})
    for (long j = 1; j < p; ++j) {
      const UpperHalfPoint tau(0.1, 0.9);
      const double a = kPi * j / (2.0 * p);
      const cplx ref = trapezoid([&](double w) {
        return cot(kPi * kI * w + a) * std::exp(2.0 * kPi * kI * double(p) * tau.value() * w * w);
      });
      CHECK(std::abs(mordell_1d(j, p, tau) - ref) < 1e-10);
      CHECK(check_mordell_1d_forms(j, p, tau).passed);
    }
}

TEST_CASE("h against the trapezoid rule and its elliptic shift") {
  const UpperHalfPoint tau(0.05, 1.0);
  const cplx t = tau.value();
  for (cplx z : {cplx(0.0), cplx(0.2, -0.1)}) {
    const cplx ref = trapezoid([&](double w) { return std::cosh(2.0 * kPi * z * w) / std::cosh(kPi * w) * std::exp(kPi * kI * t * w * w); });
    CHECK(std::abs(classical_h(z, tau) - ref) < 1e-11);
  }
  const cplx z(0.1, 0.0);
  const cplx lhs = classical_h(z, tau) + std::exp(-2.0 * kPi * kI * z - kPi * kI * t) * classical_h(z + t, tau);
  CHECK(std::abs(lhs - 2.0 * std::exp(-kPi * kI * z - kPi * kI * t / 4.0)) < 1e-10);
  CHECK_THROWS_AS(classical_h(cplx(0.6, 0.0), tau), DomainError);
}

TEST_CASE("kernel parity and the limit of x F at integral shift") {
  for (double a : {0.25, 1.0 / 3}) {
    for (double x : {0.3, 2.0, 15.0}) {
      CHECK(kernel_FG(KernelKind::F, a, -x) == doctest::Approx(-kernel_FG(KernelKind::F, a, x)));
      CHECK(kernel_FG(KernelKind::G, a, -x) == doctest::Approx(kernel_FG(KernelKind::G, a, x)));
      CHECK(kernel_FG(KernelKind::Gstar, a, x) == doctest::Approx(x * kernel_FG(KernelKind::G, a, x)));
    }
  }
  CHECK(x_times_F(0.0, 1e-9) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(x_times_F(1.0, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(x_times_F(0.0, 0.5) == doctest::Approx(0.5 * kernel_FG(KernelKind::F, 0.0, 0.5)));
  CHECK_THROWS_AS(kernel_FG(KernelKind::F, 0.0, 0.0), DomainError);
  CHECK(std::isfinite(kernel_FG(KernelKind::F, 0.25, 400.0)));
}

TEST_CASE("sign-product term against direct quadrature") {
  const UpperHalfPoint tau(0.0, 1.0);
  // Q is even, so the four quadrants pair up: 2 (2 I_{++} - 2 I_{+-})
  auto quadrant = [](double s2) {
    return adaptive_integral_real(
        [s2](double w1) {
          return adaptive_integral_real(
              [&](double w2) { return std::exp(-2.0 * kPi * quadratic_form(Eigen::Vector2d(w1, s2 * w2))); },
              Path::from(0.0));
        },
        Path::from(0.0));
  };
  const double ref = 4.0 * (quadrant(1.0) - quadrant(-1.0));
  CHECK(std::abs(sign_product_term(tau) - ref) < 1e-9);
}

TEST_CASE("plane rule refinement does not move H1 and H2") {
  const Eigen::Vector2d a(0.5, 1.0 / 3);
  const UpperHalfPoint tau(0.1, 1.0);
  const PlaneRule rule;
  CHECK(std::abs(H1_mordell(a, tau, {}, rule) - H1_mordell(a, tau, {}, rule.refined())) < 1e-9);
  CHECK(std::abs(H2_mordell(a, tau, {}, rule) - H2_mordell(a, tau, {}, rule.refined())) < 1e-9);
}

TEST_CASE("H2 is odd in alpha") {
  const UpperHalfPoint tau(0.0, 1.0);
  for (const Eigen::Vector2d a : {Eigen::Vector2d(0.5, 1.0 / 3), Eigen::Vector2d(1.0 / 3, 1.0 / 3)}) {
    CHECK(std::abs(H2_mordell(-a, tau) + H2_mordell(a, tau)) < 1e-9);
    CHECK(std::abs(H2_eichler(-a, tau) + H2_eichler(a, tau)) < 1e-9);
  }
}

TEST_CASE("H2 Eichler and Mordell representations agree") {
  for (const Eigen::Vector2d a : {Eigen::Vector2d(0.5, 1.0 / 3), Eigen::Vector2d(0.0, 0.5)})
    CHECK(check_H2(a, UpperHalfPoint(0.1, 1.0)).passed);
}

TEST_CASE("H1 representations differ by the sign-product term") {
  for (const Eigen::Vector2d a : {Eigen::Vector2d(0.5, 1.0 / 3), Eigen::Vector2d(0.0, 0.5)}) {
    const UpperHalfPoint tau(0.1, 1.0);
    const cplx d = H1_eichler(a, tau) - H1_mordell(a, tau);
    CHECK(std::abs(d - sign_product_term(tau)) < 1e-7);
    CHECK_FALSE(check_H1(a, tau).passed);
  }
}

TEST_CASE("errormod and the Eichler form of the cot integral") {
  CHECK(check_errormod(0.25, 0.25, UpperHalfPoint(0.0, 1.0)).passed);
  CHECK(check_errormod(1.0 / 6, 1.0 / 3, UpperHalfPoint(0.1, 0.9)).passed);
  CHECK(check_mordell_1d_eichler(1, 3, UpperHalfPoint(0.0, 2.0)).passed);
}

TEST_CASE("box lattice sums approach the Mordell side") {
  const Eigen::Vector2d a(0.5, 1.0 / 3);
  const cplx m = H1_mordell(a, UpperHalfPoint(0.0, 1.0));
  const double e4 = std::abs(m2_lattice_rep(a, 1.0, 4) - m), e8 = std::abs(m2_lattice_rep(a, 1.0, 8) - m);
  CHECK(e8 < 0.6 * e4);
}
