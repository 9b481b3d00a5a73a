// Special functions and quadrature engines shared by all evaluators.
#ifndef QMF_NUMQUAD_HPP
#define QMF_NUMQUAD_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qmf {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerances and limits for every quadrature in the library.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
  double envelope_cut = 1e-17;
  double taylor_radius = 1e-3;

  /// Throws DomainError if the invariants are violated.
  void validate() const;

  static QuadratureConfig one_dim() { return {}; }
  static QuadratureConfig two_dim() {
    QuadratureConfig c;
    c.abs_tol = 1e-8;
    c.rel_tol = 1e-10;
    return c;
  }
};

/// Arguments (kappa; u1, u2) of the two-dimensional error functions.
struct ErrorFnArgs {
  double kappa = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

/// E(u) = 2 int_0^u exp(-pi w^2) dw.
double gauss_E(double u);
/// Upper incomplete gamma Gamma(1/2, x), x >= 0.
double gamma_half(double x);
/// Gamma(1/2, x) * exp(x); finite for all x >= 0.
double gamma_half_scaled(double x);
/// M(u) = E(u) - sgn(u), u != 0.
double m_func(double u);
/// M(u) from its shifted-line contour integral (independent route).
double m_func_contour(double u, const QuadratureConfig& cfg = {});

double e2_func(const ErrorFnArgs& args, const QuadratureConfig& cfg = QuadratureConfig::two_dim());
/// M2 through E2 and the three correction terms; valid on the degenerate lines too.
double m2_func(const ErrorFnArgs& args, const QuadratureConfig& cfg = QuadratureConfig::two_dim());
/// M2 from the double contour integral; requires u2 != 0 and u1 != kappa*u2.
double m2_contour(const ErrorFnArgs& args, const QuadratureConfig& cfg = QuadratureConfig::two_dim());
/// exp(pi (u1^2 + u2^2)) M2, from the same contour integral; free of underflow for large arguments.
double m2_contour_scaled(const ErrorFnArgs& args, const QuadratureConfig& cfg = QuadratureConfig::two_dim());

/// Integration path for adaptive_integral.
struct Path {
  enum class Kind { Finite, UpperHalfLine, LowerHalfLine, RealLine };
  Kind kind = Kind::Finite;
  double a = 0.0;  // start (Finite, UpperHalfLine) or end (LowerHalfLine)
  double b = 1.0;  // end (Finite)

  static Path finite(double a, double b) { return {Kind::Finite, a, b}; }
  static Path from(double a) { return {Kind::UpperHalfLine, a, 0.0}; }
  static Path up_to(double b) { return {Kind::LowerHalfLine, b, 0.0}; }
  static Path real_line() { return {Kind::RealLine, 0.0, 0.0}; }
};

using ComplexIntegrand = std::function<cplx(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Infinite paths are mapped
/// onto finite intervals with t = s/(1-s). Deterministic for identical inputs.
cplx adaptive_integral(const ComplexIntegrand& f, const Path& path, const QuadratureConfig& cfg = {});

inline double adaptive_integral_real(const std::function<double(double)>& f, const Path& path,
                                     const QuadratureConfig& cfg = {}) {
  return adaptive_integral([&](double x) { return cplx(f(x), 0.0); }, path, cfg).real();
}

/// Composite Gauss-Legendre rule on [a, b]: `panels` panels of `order` points.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadRule gauss_legendre(int order);
QuadRule composite_gauss_legendre(double a, double b, int panels, int order);

/// Chebyshev (first kind) nodes on [-1, 1] together with the matrices that map
/// node values to the definite integral over [-1, 1] (`weights`) and to the
/// integral from each node to +1 (`tail`).
struct ChebyshevPanelRule {
  Eigen::VectorXd nodes;
  Eigen::RowVectorXd weights;
  Eigen::MatrixXd tail;
  Eigen::MatrixXd to_coeffs;
};
const ChebyshevPanelRule& chebyshev_panel_rule(int n);

}  // namespace qmf

#endif  // QMF_NUMQUAD_HPP
