#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include "qmf/numquad.hpp"

using namespace qmf;

TEST_CASE("gauss_E agrees with erf") {
  for (double u : {-3.0, -0.7, 0.0, 0.2, 1.5, 4.0}) CHECK(gauss_E(u) == doctest::Approx(std::erf(std::sqrt(kPi) * u)).epsilon(1e-14));
}

TEST_CASE("gamma_half against boost") {
  for (double x : {0.0, 1e-6, 0.3, 2.0, 15.0}) {
    CHECK(gamma_half(x) == doctest::Approx(boost::math::tgamma(0.5, x)).epsilon(1e-13));
    CHECK(gamma_half_scaled(x) == doctest::Approx(boost::math::tgamma(0.5, x) * std::exp(x)).epsilon(1e-12));
  }
  CHECK(gamma_half_scaled(800.0) == doctest::Approx(1.0 / std::sqrt(800.0)).epsilon(1e-3));
}

TEST_CASE("M from E and from the contour integral") {
  for (double u : {-2.0, -0.4, 0.1, 0.9, 3.0}) {
    CHECK(m_func(u) == doctest::Approx(gauss_E(u) - sgn(u)).epsilon(1e-14));
    CHECK(std::abs(m_func_contour(u) - m_func(u)) < 1e-10);
  }
}

TEST_CASE("E2 with kappa = 0 factorizes") {
  for (auto [u1, u2] : {std::pair{0.3, -0.8}, std::pair{-1.1, 0.5}, std::pair{0.0, 0.0}}) {
    const double e2 = e2_func({0.0, u1, u2});
    CHECK(std::abs(e2 - gauss_E(u1) * gauss_E(u2)) < 1e-8);
  }
}

TEST_CASE("E2 symmetries") {
  const double k = std::sqrt(3.0);
  CHECK(std::abs(e2_func({k, 0.4, -0.3}) - e2_func({k, -0.4, 0.3})) < 1e-8);
  CHECK(std::abs(e2_func({k, 0.0, 0.0}) - 2.0 / kPi * std::atan(k)) < 1e-9);
  CHECK(std::abs(e2_func({0.5, 0.0, 0.0}) - 2.0 / kPi * std::atan(0.5)) < 1e-9);
  CHECK(std::abs(e2_func({k, 6.0, 6.0}) - 1.0) < 1e-8);
}

TEST_CASE("M2 reconstruction against the contour integral off the degenerate lines") {
  const double k = std::sqrt(3.0);
  for (auto [u1, u2] : {std::pair{0.8, 0.3}, std::pair{-1.2, 1.4}, std::pair{0.3, -0.5}})
    CHECK(std::abs(m2_func({k, u1, u2}) - m2_contour({k, u1, u2})) < 1e-8);
  CHECK_THROWS_AS(m2_contour({k, 0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(m2_contour({k, k * 0.5, 0.5}), DomainError);
}

TEST_CASE("scaled contour M2") {
  const ErrorFnArgs a{std::sqrt(3.0), 0.7, -0.4};
  CHECK(std::abs(m2_contour_scaled(a) * std::exp(-kPi * (0.49 + 0.16)) - m2_contour(a)) < 1e-10);
}

TEST_CASE("adaptive quadrature on finite and infinite paths") {
  auto gauss = [](double x) { return cplx(std::exp(-x * x), 0.0); };
  CHECK(std::abs(adaptive_integral(gauss, Path::real_line()) - std::sqrt(kPi)) < 1e-12);
  CHECK(std::abs(adaptive_integral(gauss, Path::from(0.0)) - std::sqrt(kPi) / 2.0) < 1e-12);
  CHECK(std::abs(adaptive_integral(gauss, Path::up_to(0.0)) - std::sqrt(kPi) / 2.0) < 1e-12);
  auto osc = [](double x) { return std::exp(kI * x); };
  CHECK(std::abs(adaptive_integral(osc, Path::finite(0.0, kPi)) - 2.0 * kI) < 1e-12);
  CHECK(adaptive_integral_real([](double x) { return std::exp(-x) * std::cos(x); }, Path::from(0.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("quadrature failure is reported") {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 2;
  CHECK_THROWS_AS(adaptive_integral([](double x) { return cplx(std::sin(200.0 * x) / std::sqrt(x), 0.0); },
                                    Path::finite(0.0, 1.0), cfg),
                  QuadratureError);
}

TEST_CASE("quadrature config validation") {
  QuadratureConfig cfg;
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_subdivisions = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("Gauss-Legendre and Chebyshev rules integrate polynomials") {
  const auto rule = composite_gauss_legendre(-1.0, 2.0, 3, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 6);
  CHECK(s == doctest::Approx((128.0 + 1.0) / 7.0).epsilon(1e-13));

  const auto& c = chebyshev_panel_rule(16);
  Eigen::VectorXd f = c.nodes.array().pow(4);
  CHECK(c.weights * f == doctest::Approx(0.4).epsilon(1e-13));
  const Eigen::VectorXd tail = c.tail * f;
  for (Eigen::Index i = 0; i < c.nodes.size(); ++i)
    CHECK(tail(i) == doctest::Approx((1.0 - std::pow(c.nodes(i), 5)) / 5.0).epsilon(1e-12));
}
