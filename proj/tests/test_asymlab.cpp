#include <doctest.h>

#include "qmf/asymlab.hpp"
#include "qmf/qexact.hpp"

using namespace qmf;

namespace {

// sum c e^{e (2 pi i x - t)} over the exact series
cplx series_at(const RationalQSeries& s, double x, double t) {
  cplx v = 0.0;
  for (const auto& [n, c] : s.coeffs()) {
    const double e = double(n) / s.denom();
    v += to_double(c) * std::exp(e * cplx(-t, 2.0 * kPi * x));
  }
  return v;
}

}  // namespace

TEST_CASE("radial evaluation against the exact series") {
  for (int p : {2, 3}) {
    const auto f1 = series_F1(p, Rational(90));
    const auto f2 = series_F2(p, Rational(90));
    for (auto [h, k] : {std::pair{0L, 1L}, std::pair{1L, 3L}}) {
      const auto a = RootOfUnityApproach::make(h, k, p);
      const double t = 0.6;
      CHECK(std::abs(radial_eval(SeriesKind::F1, a, t) - series_at(f1, double(h) / k, t)) < 1e-10);
      CHECK(std::abs(radial_eval(SeriesKind::F2, a, t) - series_at(f2, double(h) / k, t)) < 1e-10);
    }
  }
}

TEST_CASE("coefficient fit recovers a polynomial") {
  const auto grid = RootOfUnityApproach::default_grid();
  const std::vector<cplx> c{cplx(1.5, -0.5), cplx(-2.0, 0.25), cplx(0.75, 0.0), cplx(0.1, 0.3)};
  auto poly = [&](double t) {
    cplx v = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) v += c[m] * std::pow(t, double(m));
    return v;
  };
  const auto fit = asym_coeffs(poly, grid, 2);
  REQUIRE(fit.values.size() == 3);
  for (int m = 0; m < 3; ++m) {
    CHECK(std::abs(fit.values[m] - c[m]) < 1e-8);
    CHECK(fit.stderr_[m] < 1e-6);
  }
}

TEST_CASE("fit with too few points is rejected") {
  CHECK_THROWS((void)asym_coeffs([](double) { return cplx(1.0); }, {0.1, 0.05}, 2));
}

TEST_CASE("approach validation") {
  CHECK_THROWS_AS(RootOfUnityApproach::make(2, 4, 2), DomainError);
  CHECK_THROWS_AS(RootOfUnityApproach::make(1, 3, 1), DomainError);
  CHECK_THROWS_AS(RootOfUnityApproach::make(0, 1, 2, {0.5}), DomainError);
  const auto a = RootOfUnityApproach::make(-1, 3, 2);
  CHECK(a.h == 2);
  CHECK(a.t_grid.size() == 8);
  CHECK(a.t_grid.front() == doctest::Approx(0.2));
}

TEST_CASE("quantum values of F1 at p = 2") {
  for (auto [h, k] : {std::pair{0L, 1L}, std::pair{1L, 2L}}) {
    const auto q = quantum_value(SeriesKind::F1, h, k, 2);
    CHECK(q.report.passed);
    CHECK(std::abs(q.series_limit - q.eichler_limit) < 1e-3 * std::max(1.0, std::abs(q.series_limit)));
  }
}

TEST_CASE("first-order coefficient and the sign detector") {
  const auto a = RootOfUnityApproach::make(0, 1, 2);
  CHECK(check_asym_match(SeriesKind::F1, a, 1, 1e-2).passed);
  CHECK_FALSE(check_asym_match(SeriesKind::F1, a, 1, 1e-2, {}, true).passed);
}
