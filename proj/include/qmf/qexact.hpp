// Exact truncated q-series with rational exponents and coefficients.
#ifndef QMF_QEXACT_HPP
#define QMF_QEXACT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "qmf/alpha.hpp"

namespace qmf {

/// sum_n c_n q^{n/D}, known exactly for exponents n/D < order.
class RationalQSeries {
 public:
  RationalQSeries(std::int64_t denom, Rational order);

  std::int64_t denom() const { return denom_; }
  const Rational& order() const { return order_; }
  const std::map<std::int64_t, Rational>& coeffs() const { return coeffs_; }

  /// Adds c q^{exponent}; silently dropped when exponent >= order.
  void add_term(const Rational& exponent, const Rational& c);
  Rational coeff(const Rational& exponent) const;
  bool empty() const { return coeffs_.empty(); }

  /// q -> q^p.
  RationalQSeries substitute_power(std::int64_t p) const;
  /// Same series over a denominator that is a multiple of the current one.
  RationalQSeries with_denom(std::int64_t new_denom) const;
  RationalQSeries truncated(const Rational& new_order) const;

  RationalQSeries& operator+=(const RationalQSeries& other);
  RationalQSeries& operator*=(const Rational& c);
  friend RationalQSeries operator+(RationalQSeries a, const RationalQSeries& b) { return a += b; }
  friend RationalQSeries operator-(RationalQSeries a, const RationalQSeries& b) {
    RationalQSeries nb = b;
    nb *= Rational(-1);
    return a += nb;
  }
  friend RationalQSeries operator*(const Rational& c, RationalQSeries a) { return a *= c; }
  bool operator==(const RationalQSeries& other) const;

  /// One line per nonzero term, `<exp_num>/<denom> <coeff_num>/<coeff_den>`, sorted by exponent.
  std::string serialize() const;
  /// Inverse of serialize; the truncation order must be supplied separately.
  static RationalQSeries parse(const std::string& text, Rational order);

 private:
  std::int64_t denom_;
  Rational order_;
  std::map<std::int64_t, Rational> coeffs_;
};

/// lcm(4p, 3p, p^2), the exponent denominator shared by every series family.
std::int64_t series_denominator(int p);

/// Q(n) = 3 n1^2 + n2^2 + 3 n1 n2.
inline Rational quadratic_form(const Rational& n1, const Rational& n2) { return 3 * n1 * n1 + n2 * n2 + 3 * n1 * n2; }

RationalQSeries series_F(int p, const Rational& order);
RationalQSeries series_F1(int p, const Rational& order);
RationalQSeries series_F2(int p, const Rational& order);
RationalQSeries series_Fjp(int j, int p, const Rational& order);
RationalQSeries series_Fs1s2(int s1, int s2, int p, const Rational& order);

struct DecompositionResult {
  bool holds = false;
  std::optional<Rational> first_failing_exponent;
};

/// Exact check of F(q) = (2/p) F1(q^p) + 2 F2(q^p) below q^order.
DecompositionResult check_decomposition(int p, const Rational& order);
/// Same check with caller-supplied F1 and F2 (given to order/p).
DecompositionResult check_decomposition(int p, const Rational& order, const RationalQSeries& f1,
                                        const RationalQSeries& f2);

}  // namespace qmf

#endif  // QMF_QEXACT_HPP
