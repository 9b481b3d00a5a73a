// Real-line Mordell integrals in one and two variables.
#ifndef QMF_MORDELL_HPP
#define QMF_MORDELL_HPP

#include <Eigen/Core>

#include "qmf/numquad.hpp"
#include "qmf/report.hpp"
#include "qmf/upper_half.hpp"

namespace qmf {

enum class KernelKind { F, G, Gstar };

/// F_a(x) = sinh(2 pi x)/(cosh(2 pi x) - cos(2 pi a)), G_a(x) = sin(2 pi a)/(same),
/// G*_a(x) = x G_a(x). Throws DomainError for F at a integral and x = 0.
double kernel_FG(KernelKind kind, double alpha, double x);
/// x F_a(x), finite at x = 0 for integral a.
double x_times_F(double alpha, double x);

/// Rank-two kernels; the branches with an integral component are regrouped so
/// that the value is finite on the lines w_j = 0.
double g1_kernel(const Eigen::Vector2d& alpha, const Eigen::Vector2d& w);
cplx g2_kernel(const Eigen::Vector2d& alpha, const Eigen::Vector2d& w);

/// Q(w) = 3 w1^2 + w2^2 + 3 w1 w2.
inline double quadratic_form(const Eigen::Vector2d& w) { return 3 * w(0) * w(0) + w(1) * w(1) + 3 * w(0) * w(1); }

/// Tensor Gauss-Legendre settings for the plane integrals.
struct PlaneRule {
  double panel_width = 0.25;
  int order = 16;
  PlaneRule refined() const { return {panel_width / 2, order}; }
};

/// int_{R^2} g1(alpha; w) e^{2 pi i tau Q(w)} dw.
cplx H1_mordell(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {},
                const PlaneRule& rule = {});
/// int_{R^2} cot(pi i w1 + pi a1) cot(pi i w2 + pi a2) e^{2 pi i tau Q(w)} dw, both a_j non-integral.
cplx H1_mordell_cot(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {},
                    const PlaneRule& rule = {});
/// 2 int_{R^2} sgn(w1) sgn(w2) e^{2 pi i tau Q(w)} dw = -4/(3 sqrt 3) (-i tau)^{-1}.
cplx sign_product_term(const UpperHalfPoint& tau);
cplx H2_mordell(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {},
                const PlaneRule& rule = {});

/// int_R cot(pi i w + pi j/2p) e^{2 pi i p tau w^2} dw.
cplx mordell_1d(long j, long p, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});
/// sin(pi j/p)/2 int_R e^{2 pi i p tau w^2} / (sinh(pi w + pi i j/2p) sinh(pi w - pi i j/2p)) dw.
cplx mordell_1d_sinh(long j, long p, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});

/// h(z; tau) = int_R cosh(2 pi z w)/cosh(pi w) e^{pi i tau w^2} dw, |Re z| < 1/2.
cplx classical_h(cplx z, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});

/// 2 sum_{n in alpha + Z^2, |n_j - alpha_j| <= r} M2(sqrt 3; sqrt(v/2)(sqrt 3 (2n1+n2), n2)) e^{2 pi Q(n) v}.
cplx m2_lattice_rep(const Eigen::Vector2d& alpha, double v, int r, const QuadratureConfig& cfg = {});

/// Cot form against the sinh-product form.
IdentityReport check_mordell_1d_forms(long j, long p, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});
/// Cot form against -i sqrt(2p) r_{f_{j,p}}; the opposite sign is listed as a variant.
IdentityReport check_mordell_1d_eichler(long j, long p, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});
/// h(a tau - b) against its Eichler integral representation.
IdentityReport check_errormod(double a, double b, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});
/// H1_eichler against H1_mordell; the reading with sign_product_term added to the
/// kernel is listed as a variant.
IdentityReport check_H1(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});
/// Cot-product form against the g1 form; the doubled cot-product is listed as a variant.
IdentityReport check_H1_cot(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});
IdentityReport check_H2(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg = {});
IdentityReport check_m2_lattice(const Eigen::Vector2d& alpha, double v, int r, const QuadratureConfig& cfg = {});

}  // namespace qmf

#endif  // QMF_MORDELL_HPP
