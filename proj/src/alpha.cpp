#include "qmf/alpha.hpp"

#include <stdexcept>

namespace qmf {

Rational frac(const Rational& r) {
  // floor for boost::rational with positive denominator
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && r.numerator() % r.denominator() != 0) --q;
  return r - Rational(q);
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

bool same_class(const Rational& x1, const Rational& x2, const Rational& y1, const Rational& y2) {
  return frac(x1) == frac(y1) && frac(x2) == frac(y2);
}

}  // namespace

AlphaShift AlphaShift::make(Rational a1, Rational a2, int p) {
  if (p < 2) throw std::domain_error("AlphaShift: p must be at least 2");
  const Rational one(1), ip(1, p);
  AlphaShift s{a1, a2, 1, -1};
  if (same_class(a1, a2, one - ip, 2 * ip) || same_class(a1, a2, ip, one - 2 * ip)) s.eps = -2;
  if (same_class(a1, a2, one - ip, 2 * ip) || same_class(a1, a2, Rational(0), one - ip) ||
      same_class(a1, a2, ip, one - ip))
    s.eta = 1;
  return s;
}

std::vector<AlphaShift> alpha_set_S(int p) {
  if (p < 2) throw std::domain_error("AlphaShift: p must be at least 2");
  const Rational one(1), ip(1, p);
  // weights attached to the listed representative (classes mod Z^2 coincide at p = 2)
  return {{one - ip, 2 * ip, -2, 1}, {ip, one - 2 * ip, -2, -1}, {one, ip, 1, -1},
          {Rational(0), one - ip, 1, 1}, {ip, one - ip, 1, 1}, {one - ip, ip, 1, -1}};
}

std::vector<AlphaShift> alpha_set_S_star(int p) {
  const Rational one(1), ip(1, p);
  if (p < 2) throw std::domain_error("AlphaShift: p must be at least 2");
  return {{one - ip, 2 * ip, -2, 1}, {Rational(0), one - ip, 1, 1}, {ip, one - ip, 1, 1}};
}

}  // namespace qmf
