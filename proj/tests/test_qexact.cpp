#include <doctest.h>

#include "qmf/numquad.hpp"
#include "qmf/qexact.hpp"

using namespace qmf;

namespace {

// Direct numerical value of sum c q^e at real 0 < q < 1.
double value_at(const RationalQSeries& s, double q) {
  double v = 0.0;
  for (const auto& [n, c] : s.coeffs()) v += to_double(c) * std::pow(q, double(n) / s.denom());
  return v;
}

}  // namespace

TEST_CASE("Fjp leading terms") {
  const auto s = series_Fjp(1, 2, Rational(10));
  const std::string text = s.serialize();
  CHECK(text.substr(0, text.find('\n')) == "3/24 1/1");
  CHECK(s.coeff(Rational(1, 8)) == Rational(1));
  CHECK(s.coeff(Rational(9, 8)) == Rational(-1));
  CHECK(s.coeff(Rational(25, 8)) == Rational(1));
  CHECK(s.coeff(Rational(49, 8)) == Rational(-1));
}

TEST_CASE("F at p = 2, first coefficients by hand") {
  // (m1, m2) = (1, 1) gives q^{1/2}(1-q)^2(1-q^2); (2, 2) starts at q^{9/2} with weight 2
  const auto s = series_F(2, Rational(5));
  CHECK(s.coeff(Rational(1, 2)) == Rational(1));
  CHECK(s.coeff(Rational(3, 2)) == Rational(-2));
  CHECK(s.coeff(Rational(5, 2)) == Rational(0));
  CHECK(s.coeff(Rational(7, 2)) == Rational(2));
  CHECK(s.coeff(Rational(9, 2)) == Rational(1));
  CHECK(s.coeffs().size() == 4);
}

TEST_CASE("decomposition holds exactly") {
  for (int p : {2, 3, 5}) {
    const auto r = check_decomposition(p, Rational(30));
    CHECK(r.holds);
    CHECK_FALSE(r.first_failing_exponent.has_value());
  }
}

TEST_CASE("decomposition detects a perturbed component") {
  const int p = 3;
  const Rational order(20);
  auto f1 = series_F1(p, order / p);
  auto f2 = series_F2(p, order / p);
  f2.add_term(Rational(2), Rational(1, 7));
  const auto r = check_decomposition(p, order, f1, f2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.first_failing_exponent.has_value());
  CHECK(*r.first_failing_exponent == Rational(6));
}

TEST_CASE("F2 vanishes at p = 2") { CHECK(series_F2(2, Rational(40)).empty()); }

TEST_CASE("serialization round trip and determinism") {
  for (const auto& s : {series_F1(2, Rational(10)), series_Fs1s2(1, 2, 3, Rational(12)), series_F(5, Rational(8))}) {
    const std::string text = s.serialize();
    CHECK(text == s.serialize());
    CHECK(RationalQSeries::parse(text, s.order()) == s);
  }
  CHECK(series_F1(2, Rational(10)).serialize() == series_F1(2, Rational(10)).serialize());
}

TEST_CASE("parse rejects malformed lines") {
  CHECK_THROWS_AS(RationalQSeries::parse("1/2\n", Rational(3)), DomainError);
  CHECK_THROWS_AS(RationalQSeries::parse("a b\n", Rational(3)), DomainError);
}

TEST_CASE("arithmetic on series") {
  RationalQSeries a(4, Rational(3)), b(4, Rational(3));
  a.add_term(Rational(1, 4), Rational(2));
  a.add_term(Rational(5, 2), Rational(1));
  b.add_term(Rational(1, 4), Rational(-2));
  const auto c = a + b;
  CHECK(c.coeffs().size() == 1);
  CHECK(c.coeff(Rational(5, 2)) == Rational(1));
  CHECK((a - a).empty());
  CHECK(a.substitute_power(2).coeff(Rational(1, 2)) == Rational(2));
  CHECK(a.substitute_power(2).coeff(Rational(5)) == Rational(1));
  CHECK(a.substitute_power(2).order() == Rational(6));
  CHECK(a.truncated(Rational(1)).coeffs().size() == 1);
  CHECK(a.with_denom(12).coeff(Rational(1, 4)) == Rational(2));
  CHECK_THROWS_AS(a.add_term(Rational(1, 3), Rational(1)), DomainError);
  CHECK_THROWS_AS(a.with_denom(6), DomainError);
}

TEST_CASE("Fs1s2 numerically against a direct double sum") {
  const int p = 3, s1 = 1, s2 = 2;
  const double q = 0.35;
  double direct = 0.0;
  for (int m1 = 1; m1 < 40; ++m1)
    for (int m2 = 1; m2 < 40; ++m2) {
      if ((m1 - m2) % 3 != 0) continue;
      const double x = m1 - double(s1) / p, y = m2 - double(s2) / p;
      const int t = m1 + m2;
      direct += std::min(m1, m2) * std::pow(q, p / 3.0 * (x * x + y * y + x * y)) *
                (1 - std::pow(q, m1 * s1) - std::pow(q, m2 * s2) + std::pow(q, m1 * s1 + t * s2) +
                 std::pow(q, m2 * s2 + t * s1) - std::pow(q, t * (s1 + s2)));
    }
  CHECK(value_at(series_Fs1s2(s1, s2, p, Rational(60)), q) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(series_F(1, Rational(5)), DomainError);
  CHECK_THROWS_AS(series_F(2, Rational(0)), DomainError);
  CHECK_THROWS_AS(series_Fjp(2, 2, Rational(5)), DomainError);
  CHECK_THROWS_AS(series_Fs1s2(0, 1, 2, Rational(5)), DomainError);
}
