#ifndef QMF_UPPER_HALF_HPP
#define QMF_UPPER_HALF_HPP

#include <complex>

#include "qmf/numquad.hpp"

namespace qmf {

/// A point tau = u + iv of the upper half-plane.
class UpperHalfPoint {
 public:
  explicit UpperHalfPoint(cplx tau) : tau_(tau) {
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
      throw DomainError("UpperHalfPoint: Im(tau) must be positive");
  }
  UpperHalfPoint(double u, double v) : UpperHalfPoint(cplx(u, v)) {}

  cplx value() const { return tau_; }
  double re() const { return tau_.real(); }
  double im() const { return tau_.imag(); }

  /// -1/tau
  UpperHalfPoint s_image() const { return UpperHalfPoint(-1.0 / tau_); }
  UpperHalfPoint shifted(double d) const { return UpperHalfPoint(tau_ + d); }
  UpperHalfPoint scaled(double c) const { return UpperHalfPoint(tau_ * c); }

 private:
  cplx tau_;
};

/// Principal-branch (-i tau)^s.
inline cplx minus_i_pow(cplx tau, double s) { return std::pow(-kI * tau, s); }

}  // namespace qmf

#endif  // QMF_UPPER_HALF_HPP
