// Radial limits of the rank-two false theta functions at roots of unity and
// extraction of their asymptotic expansions.
#ifndef QMF_ASYMLAB_HPP
#define QMF_ASYMLAB_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "qmf/numquad.hpp"
#include "qmf/report.hpp"

namespace qmf {

class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SeriesKind { F1, F2 };

/// q = e^{2 pi i h/k - t} for t on a decreasing grid.
struct RootOfUnityApproach {
  long h = 0;
  long k = 1;
  int p = 2;
  std::vector<double> t_grid;

  /// Reduces h mod k and checks gcd(h, k) = 1, p >= 2 and 0 < t <= 0.3 on the grid.
  static RootOfUnityApproach make(long h, long k, int p, std::vector<double> t_grid = default_grid());
  /// {0.2 2^-j : j = 0..7}
  static std::vector<double> default_grid();

  long p2() const;
  long p1() const { return p / p2(); }
};

struct AsymCoeffs {
  std::vector<cplx> values;
  std::vector<double> stderr_;
};

/// F1 or F2 at q = e^{2 pi i h/k - t} by direct summation, truncated where e^{-t Q} < envelope_cut.
cplx radial_eval(SeriesKind kind, const RootOfUnityApproach& a, double t, const QuadratureConfig& cfg = {});
/// Blackboard E1 or E2 at it/(2 pi) - x, with x = h/k by default.
cplx eichler_radial_eval(SeriesKind kind, const RootOfUnityApproach& a, double t, const QuadratureConfig& cfg = {});
cplx eichler_radial_eval_at(SeriesKind kind, double x, int p, double t, const QuadratureConfig& cfg = {});

/// Coefficients a_0..a_M of sum a_m t^m fitted by least squares over the grid.
/// Throws ConditioningError when the scaled Vandermonde matrix is ill-conditioned.
AsymCoeffs asym_coeffs(const std::function<cplx(double)>& evaluator, const std::vector<double>& t_grid, int M);

/// Coefficients of the series expansion against (-1)^m times those of the Eichler
/// integral, relative error of the worst coefficient; values below 1e-6 count as
/// zero. With `flip_sign` the comparison is made against +t^m.
IdentityReport check_asym_match(SeriesKind kind, const RootOfUnityApproach& a, int M, double tol,
                                const QuadratureConfig& cfg = {}, bool flip_sign = false);

struct QuantumValue {
  cplx series_limit;
  cplx eichler_limit;
  IdentityReport report;
};

/// t -> 0 limits of the series at e^{2 pi i ph/k - t} and of the Eichler integral at
/// it/(2 pi) - h/k; the pairing with it/(2 pi) - ph/k is listed as a variant.
QuantumValue quantum_value(SeriesKind kind, long h, long k, int p, double tol = 1e-3,
                           const QuadratureConfig& cfg = {});

}  // namespace qmf

#endif  // QMF_ASYMLAB_HPP
