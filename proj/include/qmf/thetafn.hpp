// Unary and rank-two theta functions.
#ifndef QMF_THETAFN_HPP
#define QMF_THETAFN_HPP

#include <vector>

#include <Eigen/Core>

#include "qmf/alpha.hpp"
#include "qmf/numquad.hpp"
#include "qmf/report.hpp"
#include "qmf/upper_half.hpp"

namespace qmf {

/// scale * sum_{n in shift + step Z} n^nu e(phase n) exp(pi i lambda n^2 w).
///
/// Every theta function in the library reduces to this form. Evaluation picks
/// between the direct sum and its Poisson dual, whichever needs fewer terms, so
/// points close to the cusp at 0 are cheap and accurate.
struct UnaryTheta {
  double shift = 0.0;
  double step = 1.0;
  int nu = 0;
  double lambda = 1.0;
  double phase = 0.0;
  cplx scale = 1.0;

  cplx operator()(cplx w) const;
  cplx direct(cplx w) const;
  cplx dual(cplx w) const;

  /// Weight nu + 1/2.
  double weight() const { return nu + 0.5; }
  bool has_zero_in_class() const;
  /// The value approached as Im w -> infinity.
  cplx constant_term() const;
  /// Decay rate r with |f(w) - constant| <= C exp(-r Im w).
  double decay_rate() const;
  /// Smallest |n| != 0 in the class.
  double min_nonzero_abs() const;
  /// Bound for C in the decay estimate.
  double decay_prefactor() const;

  UnaryTheta scaled(cplx c) const {
    UnaryTheta t = *this;
    t.scale *= c;
    return t;
  }
};

/// (nu, A, h, N) with A | N and N | hA.
struct ThetaSpec {
  int nu = 1;
  long A = 1;
  long h = 0;
  long N = 1;
  void validate() const;
  UnaryTheta theta() const;
};

enum class Theta2DKind { Theta1, Theta2, Theta3, Theta4, Theta5 };

/// One product term f(w1) g(w2) of a rank-two theta function.
struct ThetaProduct {
  UnaryTheta first;
  UnaryTheta second;
};

/// e^{2 pi i k / n}, from a per-denominator cache.
cplx root_of_unity(long n, long k);

cplx theta_shimura(const ThetaSpec& spec, const UpperHalfPoint& tau);

/// Both sides of the inversion formula for Theta_nu. `drop_phase` removes the
/// e(Akh/N^2) factor (used to exercise the detector).
IdentityReport theta_shimura_S_check(const ThetaSpec& spec, const UpperHalfPoint& tau, bool drop_phase = false,
                                     double tol = 1e-10);
/// Theta_1(2p,h,2p;3 tau) against factor * Theta_1(6p,3h,6p;tau).
IdentityReport theta_rescale_check(long h, long p, const UpperHalfPoint& tau, double factor = 1.0 / 3.0,
                                   double tol = 1e-12);

/// Rank-two theta functions as sums of products of unary thetas, obtained by
/// substituting the diagonal coordinates of the exponent.
std::vector<ThetaProduct> theta_2d_factors(Theta2DKind kind, const Eigen::Vector2d& alpha);
cplx theta_2d(Theta2DKind kind, const Eigen::Vector2d& alpha, const UpperHalfPoint& w1, const UpperHalfPoint& w2);

/// g_{a,b}(tau) = sum_{n in a+Z} n e^{2 pi i b n} q^{n^2/2}.
UnaryTheta g_ab_theta(double a, double b);
cplx g_ab(double a, double b, const UpperHalfPoint& tau);

/// f_{j,p}(tau) = (1/2p) sum_{n = j (2p)} n q^{n^2/4p}.
UnaryTheta f_jp_theta(long j, long p);
cplx f_jp(long j, long p, const UpperHalfPoint& tau);
/// Vector-valued S-transformation of f_{j,p}.
IdentityReport f_jp_S_check(long j, long p, const UpperHalfPoint& tau, double tol = 1e-10);

/// F*_{j,p}(tau), the non-holomorphic companion of the false theta F_{j,p}.
cplx false_theta_companion(long j, long p, const UpperHalfPoint& tau);

}  // namespace qmf

#endif  // QMF_THETAFN_HPP
