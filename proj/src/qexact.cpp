#include "qmf/qexact.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qmf/numquad.hpp"

namespace qmf {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void require_p(int p) {
  if (p < 2) throw DomainError("p must be at least 2");
}

void require_order(const Rational& order) {
  if (order <= Rational(0)) throw DomainError("series order must be positive");
}

// Largest integer s >= 0 with a s^2 - s < bound is below this value.
std::int64_t quadratic_bound(double a, double bound) {
  return static_cast<std::int64_t>(std::ceil((1.0 + std::sqrt(1.0 + 4.0 * a * std::max(bound, 0.0))) / (2.0 * a))) + 2;
}

}  // namespace

RationalQSeries::RationalQSeries(std::int64_t denom, Rational order) : denom_(denom), order_(order) {
  if (denom <= 0) throw DomainError("RationalQSeries: denominator must be positive");
}

void RationalQSeries::add_term(const Rational& exponent, const Rational& c) {
  if (exponent >= order_ || c == Rational(0)) return;
  const Rational scaled = exponent * denom_;
  if (scaled.denominator() != 1)
    throw DomainError("RationalQSeries: exponent " + to_string(exponent) + " not on the grid 1/" +
                      std::to_string(denom_));
  auto [it, inserted] = coeffs_.try_emplace(scaled.numerator(), c);
  if (!inserted) {
    it->second += c;
    if (it->second == Rational(0)) coeffs_.erase(it);
  }
}

Rational RationalQSeries::coeff(const Rational& exponent) const {
  const Rational scaled = exponent * denom_;
  if (scaled.denominator() != 1) return Rational(0);
  auto it = coeffs_.find(scaled.numerator());
  return it == coeffs_.end() ? Rational(0) : it->second;
}

RationalQSeries RationalQSeries::substitute_power(std::int64_t p) const {
  if (p <= 0) throw DomainError("substitute_power: power must be positive");
  RationalQSeries out(denom_, order_ * p);
  for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(n * p, c);
  return out;
}

RationalQSeries RationalQSeries::with_denom(std::int64_t new_denom) const {
  if (new_denom <= 0 || new_denom % denom_ != 0)
    throw DomainError("with_denom: new denominator must be a multiple of the old one");
  const std::int64_t f = new_denom / denom_;
  RationalQSeries out(new_denom, order_);
  for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(n * f, c);
  return out;
}

RationalQSeries RationalQSeries::truncated(const Rational& new_order) const {
  RationalQSeries out(denom_, std::min(order_, new_order));
  for (const auto& [n, c] : coeffs_)
    if (Rational(n, denom_) < out.order_) out.coeffs_.emplace(n, c);
  return out;
}

RationalQSeries& RationalQSeries::operator+=(const RationalQSeries& other) {
  const std::int64_t d = std::lcm(denom_, other.denom_);
  if (d != denom_) *this = with_denom(d);
  const RationalQSeries o = other.denom_ == d ? other : other.with_denom(d);
  order_ = std::min(order_, o.order_);
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (Rational(it->first, denom_) >= order_)
      it = coeffs_.erase(it);
    else
      ++it;
  }
  for (const auto& [n, c] : o.coeffs_) add_term(Rational(n, d), c);
  return *this;
}

RationalQSeries& RationalQSeries::operator*=(const Rational& c) {
  if (c == Rational(0)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& kv : coeffs_) kv.second *= c;
  return *this;
}

bool RationalQSeries::operator==(const RationalQSeries& other) const {
  const RationalQSeries diff = *this - other;
  return diff.empty();
}

std::string RationalQSeries::serialize() const {
  std::ostringstream os;
  for (const auto& [n, c] : coeffs_)
    os << n << '/' << denom_ << ' ' << c.numerator() << '/' << c.denominator() << '\n';
  return os.str();
}

RationalQSeries RationalQSeries::parse(const std::string& text, Rational order) {
  std::istringstream is(text);
  std::string line;
  std::optional<RationalQSeries> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::int64_t en = 0, ed = 0, cn = 0, cd = 0;
    char s1 = 0, s2 = 0;
    std::istringstream ls(line);
    if (!(ls >> en >> s1 >> ed >> cn >> s2 >> cd) || s1 != '/' || s2 != '/' || ed <= 0 || cd == 0)
      throw DomainError("RationalQSeries::parse: malformed line '" + line + "'");
    if (!out) out.emplace(ed, order);
    if (ed != out->denom_) throw DomainError("RationalQSeries::parse: mixed denominators");
    out->add_term(Rational(en, ed), Rational(cn, cd));
  }
  return out ? *out : RationalQSeries(1, order);
}

std::int64_t series_denominator(int p) {
  require_p(p);
  const std::int64_t pp = p;
  return std::lcm(std::lcm(4 * pp, 3 * pp), pp * pp);
}

RationalQSeries series_F(int p, const Rational& order) {
  require_p(p);
  require_order(order);
  RationalQSeries out(series_denominator(p), order);
  const Rational third_p(p, 3), ip(1, p);
  // m1^2 + m2^2 + m1 m2 >= (3/4) s^2 with s = m1 + m2, so E >= (p/4) s^2 - s
  const std::int64_t s_max = quadratic_bound(p / 4.0, to_double(order));
  for (std::int64_t s = 2; s <= s_max; ++s) {
    for (std::int64_t m1 = 1; m1 < s; ++m1) {
      const std::int64_t m2 = s - m1;
      if ((m1 - m2) % 3 != 0) continue;
      const Rational e = third_p * (m1 * m1 + m2 * m2 + m1 * m2) - m1 - m2 + ip;
      if (e >= order) continue;
      const Rational c(std::min(m1, m2));
      // (1 - q^{m1})(1 - q^{m2})(1 - q^{m1+m2})
      for (int mask = 0; mask < 8; ++mask) {
        std::int64_t shift = 0;
        int sign = 1;
        if (mask & 1) shift += m1, sign = -sign;
        if (mask & 2) shift += m2, sign = -sign;
        if (mask & 4) shift += m1 + m2, sign = -sign;
        out.add_term(e + shift, sign * c);
      }
    }
  }
  return out;
}

namespace {

enum class ConeWeight { F1, F2 };

RationalQSeries cone_part(int p, const Rational& order, ConeWeight kind) {
  require_p(p);
  require_order(order);
  RationalQSeries out(series_denominator(p), order);
  // Q(n) >= n1^2 and Q(n) >= n2^2 for n in the positive quadrant
  const std::int64_t k_max = static_cast<std::int64_t>(std::ceil(std::sqrt(to_double(order)))) + 2;
  for (const AlphaShift& a : alpha_set_S(p)) {
    for (std::int64_t k1 = 0; k1 <= k_max; ++k1) {
      const Rational n1 = a.a1 + k1;
      for (std::int64_t k2 = 0; k2 <= k_max; ++k2) {
        const Rational n2 = a.a2 + k2;
        const Rational e = quadratic_form(n1, n2);
        if (e >= order) {
          if (k2 > 0) break;
          continue;
        }
        if (kind == ConeWeight::F1)
          out.add_term(e, Rational(a.eps));
        else
          out.add_term(e, a.eta * n2);
      }
    }
  }
  // unary boundary term over m + 1/p
  const Rational ip(1, p);
  for (std::int64_t m = -k_max; m <= k_max; ++m) {
    const Rational x = Rational(m) + ip;
    const Rational e = x * x;
    if (kind == ConeWeight::F1)
      out.add_term(e, Rational(x > Rational(0) ? 1 : -1, 2));
    else
      out.add_term(e, -Rational(1, 2) * (x > Rational(0) ? x : -x));
  }
  return out;
}

}  // namespace

RationalQSeries series_F1(int p, const Rational& order) { return cone_part(p, order, ConeWeight::F1); }

RationalQSeries series_F2(int p, const Rational& order) { return cone_part(p, order, ConeWeight::F2); }

RationalQSeries series_Fjp(int j, int p, const Rational& order) {
  require_p(p);
  require_order(order);
  if (j < 1 || j > p - 1) throw DomainError("series_Fjp: need 1 <= j <= p-1");
  RationalQSeries out(series_denominator(p), order);
  const std::int64_t step = 2 * static_cast<std::int64_t>(p);
  const std::int64_t n_max = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * p * to_double(order)))) + step;
  for (std::int64_t n = j - step * floor_div(n_max, step) - step; n <= n_max; n += step) {
    if (n == 0) continue;
    out.add_term(Rational(n * n, 4 * static_cast<std::int64_t>(p)), Rational(n > 0 ? 1 : -1));
  }
  return out;
}

RationalQSeries series_Fs1s2(int s1, int s2, int p, const Rational& order) {
  require_p(p);
  require_order(order);
  if (s1 < 1 || s2 < 1 || s1 > p || s2 > p) throw DomainError("series_Fs1s2: need 1 <= s1, s2 <= p");
  RationalQSeries out(series_denominator(p), order);
  // x = m1 - s1/p >= 0, y = m2 - s2/p >= 0 and x^2 + y^2 + xy >= (3/4)(x + y)^2
  const double t_max = std::sqrt(4.0 * to_double(order) / p) + 2.0;
  const std::int64_t m_max = static_cast<std::int64_t>(std::ceil(t_max)) + 2;
  const Rational third_p(p, 3);
  for (std::int64_t m1 = 1; m1 <= m_max; ++m1) {
    for (std::int64_t m2 = 1; m2 <= m_max; ++m2) {
      if ((m1 - m2) % 3 != 0) continue;
      const Rational x = Rational(m1) - Rational(s1, p);
      const Rational y = Rational(m2) - Rational(s2, p);
      const Rational e = third_p * (x * x + y * y + x * y);
      if (e >= order) continue;
      const Rational c(std::min(m1, m2));
      const std::int64_t t = m1 + m2;
      out.add_term(e, c);
      out.add_term(e + m1 * s1, -c);
      out.add_term(e + m2 * s2, -c);
      out.add_term(e + m1 * s1 + t * s2, c);
      out.add_term(e + m2 * s2 + t * s1, c);
      out.add_term(e + t * (s1 + s2), -c);
    }
  }
  return out;
}

DecompositionResult check_decomposition(int p, const Rational& order, const RationalQSeries& f1,
                                        const RationalQSeries& f2) {
  require_p(p);
  if (f1.order() * p < order || f2.order() * p < order)
    throw DomainError("check_decomposition: F1 and F2 must be known to order/p");
  const RationalQSeries f = series_F(p, order);
  RationalQSeries rhs = Rational(2, p) * f1.substitute_power(p);
  rhs += Rational(2) * f2.substitute_power(p);
  const RationalQSeries diff = (f - rhs).truncated(order);
  DecompositionResult r;
  r.holds = diff.empty();
  if (!r.holds) r.first_failing_exponent = Rational(diff.coeffs().begin()->first, diff.denom());
  return r;
}

DecompositionResult check_decomposition(int p, const Rational& order) {
  const Rational sub = order / p;
  return check_decomposition(p, order, series_F1(p, sub), series_F2(p, sub));
}

}  // namespace qmf
