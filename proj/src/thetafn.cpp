#include "qmf/thetafn.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

namespace qmf {

namespace {

constexpr double kStopRel = 1e-19;

// sum_{j in Z} x_j^nu exp(quad x_j^2 + lin x_j), x_j = x0 + d j, Re(quad) < 0.
cplx gaussian_lattice_sum(double x0, double d, int nu, cplx quad, cplx lin) {
  x0 -= d * std::round(x0 / d);
  const double decay = -quad.real();
  // beyond |x| > x_peak the modulus x^nu e^{-decay x^2} (times the bounded linear phase) decreases
  const double x_peak = nu > 0 ? std::sqrt(nu / (2.0 * decay)) : 0.0;
  cplx sum = 0.0;
  double max_term = 0.0;
  for (double dir : {1.0, -1.0}) {
    const double dd = dir * d;
    double x = dir > 0 ? x0 : x0 - d;
    cplx e = std::exp(quad * x * x + lin * x);
    cplx ratio = std::exp(quad * (2.0 * x * dd + dd * dd) + lin * dd);
    const cplx ratio_step = std::exp(2.0 * quad * dd * dd);
    for (long j = 0;; ++j) {
      const cplx term = nu == 0 ? e : x * e;
      sum += term;
      max_term = std::max(max_term, std::abs(term));
      if (std::abs(x) > x_peak && std::abs(term) <= kStopRel * std::max(std::abs(sum), max_term)) break;
      if (j > 50'000'000) throw QuadratureError("theta sum did not converge");
      // refresh periodically to keep recurrence drift below a few ulps
      x += dd;
      if (j % 64 == 63) {
        e = std::exp(quad * x * x + lin * x);
        ratio = std::exp(quad * (2.0 * x * dd + dd * dd) + lin * dd);
      } else {
        e *= ratio;
        ratio *= ratio_step;
      }
    }
  }
  return sum;
}

}  // namespace

bool UnaryTheta::has_zero_in_class() const {
  const double r = shift / step;
  return std::abs(r - std::round(r)) < 1e-12;
}

cplx UnaryTheta::constant_term() const { return (nu == 0 && has_zero_in_class()) ? scale : cplx(0.0); }

double UnaryTheta::min_nonzero_abs() const {
  double c = std::fmod(shift, step);
  if (c < 0) c += step;
  if (has_zero_in_class()) return step;
  return std::min(c, step - c);
}

double UnaryTheta::decay_rate() const {
  const double n = min_nonzero_abs();
  return kPi * lambda * n * n;
}

double UnaryTheta::decay_prefactor() const {
  const double n = min_nonzero_abs();
  return 4.0 * std::abs(scale) * std::max(1.0, nu == 1 ? n : 1.0);
}

cplx UnaryTheta::direct(cplx w) const {
  return scale * gaussian_lattice_sum(shift, step, nu, kI * kPi * lambda * w, 2.0 * kPi * kI * phase);
}

cplx UnaryTheta::dual(cplx w) const {
  // Poisson summation with a = -i lambda w (Re a > 0, principal branch).
  const cplx a = -kI * lambda * w;
  const cplx pre = std::exp(2.0 * kPi * kI * shift * phase) / step;
  const cplx s = gaussian_lattice_sum(-phase, 1.0 / step, nu, -kPi / a, 2.0 * kPi * kI * shift);
  if (nu == 0) return scale * pre * std::pow(a, -0.5) * s;
  return scale * pre * (-kI) * std::pow(a, -1.5) * s;
}

cplx UnaryTheta::operator()(cplx w) const {
  if (!(w.imag() > 0.0)) throw DomainError("theta: argument must lie in the upper half-plane");
  return step * step * lambda * std::abs(w) < 1.0 ? dual(w) : direct(w);
}

void ThetaSpec::validate() const {
  if (nu != 0 && nu != 1) throw DomainError("ThetaSpec: nu must be 0 or 1");
  if (A <= 0 || N <= 0) throw DomainError("ThetaSpec: A and N must be positive");
  if (N % A != 0) throw DomainError("ThetaSpec: A must divide N");
  if ((h * A) % N != 0) throw DomainError("ThetaSpec: N must divide hA");
}

UnaryTheta ThetaSpec::theta() const {
  validate();
  return {static_cast<double>(h), static_cast<double>(N), nu,
          static_cast<double>(A) / (static_cast<double>(N) * static_cast<double>(N)), 0.0, 1.0};
}

cplx root_of_unity(long n, long k) {
  static std::mutex mu;
  static std::map<long, std::vector<cplx>> cache;
  if (n <= 0) throw DomainError("root_of_unity: order must be positive");
  const long r = ((k % n) + n) % n;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<cplx> table(n);
    for (long i = 0; i < n; ++i) table[i] = std::polar(1.0, 2.0 * kPi * i / n);
    it = cache.emplace(n, std::move(table)).first;
  }
  return it->second[r];
}

cplx theta_shimura(const ThetaSpec& spec, const UpperHalfPoint& tau) { return spec.theta()(tau.value()); }

IdentityReport theta_shimura_S_check(const ThetaSpec& spec, const UpperHalfPoint& tau, bool drop_phase,
                                     double tol) {
  spec.validate();
  const cplx t = tau.value();
  const cplx lhs = theta_shimura(spec, tau);
  const UpperHalfPoint st = tau.s_image();
  cplx sum = 0.0;
  const long n2 = spec.N * spec.N;
  for (long k = 0; k < spec.N; ++k) {
    if ((spec.A * k) % spec.N != 0) continue;
    const cplx ph = drop_phase ? cplx(1.0) : root_of_unity(n2, (spec.A * k % n2) * (spec.h % n2) % n2);
    sum += ph * theta_shimura({spec.nu, spec.A, k, spec.N}, st);
  }
  const cplx rhs = std::pow(-kI, spec.nu) * minus_i_pow(t, -0.5 - spec.nu) / std::sqrt(double(spec.A)) * sum;
  auto rep = IdentityReport::compare("theta_S", "theta inversion", lhs, rhs, tol);
  rep.variant = "nu=" + std::to_string(spec.nu) + ",A=" + std::to_string(spec.A) + ",h=" + std::to_string(spec.h) +
                ",N=" + std::to_string(spec.N);
  return rep;
}

IdentityReport theta_rescale_check(long h, long p, const UpperHalfPoint& tau, double factor, double tol) {
  const cplx lhs = theta_shimura({1, 2 * p, h, 2 * p}, tau.scaled(3.0));
  const cplx rhs = factor * theta_shimura({1, 6 * p, 3 * h, 6 * p}, tau);
  return IdentityReport::compare("theta_rescale", "theta rescaling by 3", lhs, rhs, tol);
}

std::vector<ThetaProduct> theta_2d_factors(Theta2DKind kind, const Eigen::Vector2d& alpha) {
  const double a1 = alpha(0), a2 = alpha(1);
  std::vector<ThetaProduct> out;
  for (int e = 0; e < 2; ++e) {
    // theta_1, theta_3: a = 2n1+n2, b = n2; theta_2, theta_4, theta_5: a = 3n1+2n2, b = n1.
    switch (kind) {
      case Theta2DKind::Theta1:
      case Theta2DKind::Theta3:
        out.push_back({{2 * a1 + a2 + e, 2.0, 1, 1.5},
                       {a2 + e, 2.0, kind == Theta2DKind::Theta1 ? 1 : 0, 0.5}});
        break;
      case Theta2DKind::Theta2:
      case Theta2DKind::Theta4:
        out.push_back({{3 * a1 + 2 * a2 + e, 2.0, 1, 0.5},
                       {a1 + e, 2.0, kind == Theta2DKind::Theta2 ? 1 : 0, 1.5}});
        break;
      case Theta2DKind::Theta5:
        out.push_back({{3 * a1 + 2 * a2 + e, 2.0, 0, 0.5}, {a1 + e, 2.0, 1, 1.5}});
        break;
    }
  }
  return out;
}

cplx theta_2d(Theta2DKind kind, const Eigen::Vector2d& alpha, const UpperHalfPoint& w1, const UpperHalfPoint& w2) {
  cplx sum = 0.0;
  for (const auto& t : theta_2d_factors(kind, alpha)) sum += t.first(w1.value()) * t.second(w2.value());
  return sum;
}

UnaryTheta g_ab_theta(double a, double b) { return {a, 1.0, 1, 1.0, b, 1.0}; }

cplx g_ab(double a, double b, const UpperHalfPoint& tau) { return g_ab_theta(a, b)(tau.value()); }

namespace {
void require_jp(long j, long p) {
  if (p < 2 || j < 1 || j > p - 1) throw DomainError("need 1 <= j <= p-1 and p >= 2");
}
}  // namespace

UnaryTheta f_jp_theta(long j, long p) {
  require_jp(j, p);
  return ThetaSpec{1, 2 * p, j, 2 * p}.theta().scaled(1.0 / (2.0 * p));
}

cplx f_jp(long j, long p, const UpperHalfPoint& tau) { return f_jp_theta(j, p)(tau.value()); }

IdentityReport f_jp_S_check(long j, long p, const UpperHalfPoint& tau, double tol) {
  const cplx lhs = f_jp(j, p, tau);
  const UpperHalfPoint st = tau.s_image();
  cplx sum = 0.0;
  for (long k = 1; k < p; ++k) sum += std::sin(kPi * k * j / p) * f_jp(k, p, st);
  const cplx rhs = std::sqrt(2.0 / p) * minus_i_pow(tau.value(), -1.5) * sum;
  return IdentityReport::compare("fjp_S", "vector-valued inversion of f_{j,p}", lhs, rhs, tol);
}

cplx false_theta_companion(long j, long p, const UpperHalfPoint& tau) {
  require_jp(j, p);
  const double u = tau.re(), v = tau.im();
  // term: sgn(n) Gamma(1/2, x) e^{x/2} e^{-i pi u n^2 / 2p} / sqrt(pi), x = pi n^2 v / p
  cplx sum = 0.0;
  for (double dir : {1.0, -1.0}) {
    for (long m = 0;; ++m) {
      const double n = dir > 0 ? double(j + 2 * p * m) : double(j - 2 * p * (m + 1));
      const double x = kPi * n * n * v / p;
      const double mag = gamma_half_scaled(x) * std::exp(-0.5 * x);
      const cplx term = sgn(n) * mag * std::polar(1.0, -kPi * u * n * n / (2.0 * p));
      sum += term;
      if (mag < 1e-19 * std::max(std::abs(sum), 1e-300)) break;
    }
  }
  return sum / std::sqrt(kPi);
}

}  // namespace qmf
