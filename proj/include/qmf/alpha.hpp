// Rational shifts alpha in Q^2 and the weight tables attached to them.
#ifndef QMF_ALPHA_HPP
#define QMF_ALPHA_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>
#include <Eigen/Core>

namespace qmf {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }
/// Fractional part in [0, 1).
Rational frac(const Rational& r);
std::string to_string(const Rational& r);

/// A shift alpha with the weights eps(alpha) in {-2, 1} and eta(alpha) in {-1, 1}
/// of the rank-two false theta decomposition. The representative is kept as
/// given, since the positive-cone sums over alpha + N_0^2 depend on it; the
/// weights only depend on alpha mod Z^2.
struct AlphaShift {
  Rational a1, a2;
  int eps = 1;
  int eta = -1;

  static AlphaShift make(Rational a1, Rational a2, int p);

  std::pair<Rational, Rational> reduced() const { return {frac(a1), frac(a2)}; }
  Eigen::Vector2d vec() const { return {to_double(a1), to_double(a2)}; }
  AlphaShift negated() const { return {-a1, -a2, eps, eta}; }
};

/// The six shifts of the positive-cone decomposition, in their printed representatives.
std::vector<AlphaShift> alpha_set_S(int p);
/// The three shifts used by the double Eichler integrals.
std::vector<AlphaShift> alpha_set_S_star(int p);

}  // namespace qmf

#endif  // QMF_ALPHA_HPP
