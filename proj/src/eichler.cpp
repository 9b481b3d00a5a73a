#include "qmf/eichler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace qmf {

namespace {

constexpr int kNodes = 48;
// Chebyshev coefficients from this degree on must be negligible, so products
// of two resolved functions are still integrated exactly by the panel rule.
constexpr int kResolvedDegree = 16;
constexpr int kInitialPanels = 16;

bool same_kernel(const EichlerKernelSpec& a, const EichlerKernelSpec& b) {
  const UnaryTheta &s = a.theta, &t = b.theta;
  return s.shift == t.shift && s.step == t.step && s.nu == t.nu && s.lambda == t.lambda && s.phase == t.phase &&
         s.scale == t.scale && a.kappa == b.kappa && a.arg_scale == b.arg_scale && a.arg_shift == b.arg_shift;
}

// Integration path w(s), s in [0, S]. Ray: w = x0 + i(y0 + s^2), upward to a
// truncation height with analytic constant-term tails. Segment: w = a (1-s)^2
// from a to the cusp 0.
struct Geometry {
  bool ray = true;
  double x0 = 0.0, y0 = 0.0;
  cplx seg_a = 0.0;
  double S = 1.0;
  cplx tau = 0.0;

  cplx w(double s) const { return ray ? cplx(x0, y0 + s * s) : seg_a * (1.0 - s) * (1.0 - s); }
  cplx dw(double s) const { return ray ? cplx(0.0, 2.0 * s) : -2.0 * seg_a * (1.0 - s); }
  double top_height() const { return y0 + S * S; }
  cplx z_top() const { return -kI * (cplx(x0, top_height()) + tau); }
};

// Truncation height for the ray so that every non-constant kernel part is
// below the envelope cut.
double truncation_height(const std::vector<const EichlerKernelSpec*>& funcs, double y0, double v,
                         const QuadratureConfig& cfg) {
  double Y = y0 + 1.0;
  for (const auto* f : funcs) {
    const double rate = f->theta.decay_rate() * f->arg_scale;
    if (!(rate > 0.0)) throw DomainError("Eichler kernel does not decay toward the cusp at infinity");
    const double kb = std::pow(y0 + v, f->kappa - 2.0);
    const double pref = f->theta.decay_prefactor() * std::max(1.0, kb);
    double y = y0 + 1.0;
    for (int it = 0; it < 3; ++it) y = std::log(pref * (2.0 + y) * (2.0 + y) / cfg.envelope_cut) / rate;
    Y = std::max(Y, y);
  }
  return Y;
}

// Node values of f(w) (-i(w+tau))^{kappa-2} dw/ds on every accepted panel.
struct PanelSet {
  std::vector<double> a, b;
  std::vector<Eigen::MatrixXcd> values;
};

class PanelBuilder {
 public:
  PanelBuilder(const std::vector<const EichlerKernelSpec*>& funcs, const Geometry& geo, const QuadratureConfig& cfg)
      : funcs_(funcs), geo_(geo), cfg_(cfg), rule_(chebyshev_panel_rule(kNodes)) {}

  PanelSet build() {
    const int nf = static_cast<int>(funcs_.size());
    std::vector<Eigen::MatrixXcd> init;
    const double h = geo_.S / kInitialPanels;
    scale_ = Eigen::VectorXd::Zero(nf);
    for (int i = 0; i < kInitialPanels; ++i) {
      init.push_back(evaluate(i * h, (i + 1) * h));
      for (int f = 0; f < nf; ++f) scale_(f) = std::max(scale_(f), init.back().col(f).cwiseAbs().maxCoeff());
    }
    for (int i = 0; i < kInitialPanels; ++i) refine(i * h, (i + 1) * h, std::move(init[i]));
    return std::move(out_);
  }

 private:
  Eigen::MatrixXcd evaluate(double a, double b) const {
    Eigen::MatrixXcd v(kNodes, funcs_.size());
    for (int j = 0; j < kNodes; ++j) {
      const double s = 0.5 * (a + b) + 0.5 * (b - a) * rule_.nodes(j);
      const cplx w = geo_.w(s);
      const cplx z = -kI * (w + geo_.tau);
      if (!(z.real() > 0.0)) throw QuadratureError("Eichler path left the principal-branch region");
      const cplx dw = geo_.dw(s);
      for (std::size_t f = 0; f < funcs_.size(); ++f) {
        const auto& k = *funcs_[f];
        v(j, f) = k(w) * std::pow(z, k.kappa - 2.0) * dw;
      }
    }
    return v;
  }

  bool resolved(const Eigen::MatrixXcd& v) const {
    const Eigen::MatrixXcd c = rule_.to_coeffs * v;
    const double rel = std::max(cfg_.rel_tol, 1e-15);
    for (Eigen::Index f = 0; f < v.cols(); ++f) {
      const double tail = c.col(f).tail(kNodes - kResolvedDegree).cwiseAbs().maxCoeff();
      if (tail > rel * scale_(f) && tail > cfg_.envelope_cut) return false;
    }
    return true;
  }

  void refine(double a, double b, Eigen::MatrixXcd v) {
    if (resolved(v) || (b - a) < 1e-9 * geo_.S) {
      if ((b - a) < 1e-9 * geo_.S && !resolved(v)) throw QuadratureError("Eichler panel refinement stalled");
      out_.a.push_back(a);
      out_.b.push_back(b);
      out_.values.push_back(std::move(v));
      return;
    }
    if (++splits_ > cfg_.max_subdivisions) throw QuadratureError("Eichler quadrature: max_subdivisions exceeded");
    const double m = 0.5 * (a + b);
    Eigen::MatrixXcd left = evaluate(a, m);
    Eigen::MatrixXcd right = evaluate(m, b);
    refine(a, m, std::move(left));
    refine(m, b, std::move(right));
  }

  const std::vector<const EichlerKernelSpec*>& funcs_;
  const Geometry& geo_;
  const QuadratureConfig& cfg_;
  const ChebyshevPanelRule& rule_;
  Eigen::VectorXd scale_;
  int splits_ = 0;
  PanelSet out_;
};

Geometry ray_geometry(const Endpoint& lower, const UpperHalfPoint& tau,
                      const std::vector<const EichlerKernelSpec*>& funcs, const QuadratureConfig& cfg) {
  Geometry g;
  g.tau = tau.value();
  if (lower.is_minus_conj_tau()) {
    g.x0 = -tau.re();
    g.y0 = tau.im();
  }
  const double Y = truncation_height(funcs, g.y0, tau.im(), cfg);
  g.S = std::sqrt(Y - g.y0);
  return g;
}

// int_{top}^{i infinity} c (-i(w+tau))^{kappa-2} dw
cplx constant_tail(cplx c, double kappa, const Geometry& g) {
  if (c == 0.0 || !g.ray) return 0.0;
  const double a = 2.0 - kappa;
  if (a <= 1.0) throw DomainError("Eichler integral diverges: constant term with kernel exponent <= 1");
  return c * kI * std::pow(g.z_top(), 1.0 - a) / (a - 1.0);
}

struct UniqueKernels {
  std::vector<EichlerKernelSpec> list;
  int index(const EichlerKernelSpec& k) {
    for (std::size_t i = 0; i < list.size(); ++i)
      if (same_kernel(list[i], k)) return static_cast<int>(i);
    list.push_back(k);
    return static_cast<int>(list.size()) - 1;
  }
  std::vector<const EichlerKernelSpec*> pointers() const {
    std::vector<const EichlerKernelSpec*> p;
    for (const auto& k : list) p.push_back(&k);
    return p;
  }
};

cplx double_integral(const std::vector<KernelProduct>& terms, Geometry geo, bool set_height, const Endpoint& lower,
                     const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  cfg.validate();
  UniqueKernels uk;
  struct Term {
    cplx coeff;
    int f, g;
  };
  std::vector<Term> ts;
  for (const auto& t : terms) {
    t.f.validate();
    t.g.validate();
    if (t.coeff == 0.0 || t.f.identically_zero() || t.g.identically_zero()) continue;
    ts.push_back({t.coeff, uk.index(t.f), uk.index(t.g)});
  }
  if (ts.empty()) return 0.0;
  const auto ptrs = uk.pointers();
  if (set_height) geo = ray_geometry(lower, tau, ptrs, cfg);
  const PanelSet ps = PanelBuilder(ptrs, geo, cfg).build();
  const auto& rule = chebyshev_panel_rule(kNodes);
  const std::size_t np = ps.a.size();

  // Inner integrals G_g(s_j) = int_{w(s_j)}^{top} g + constant tail, per distinct g.
  std::vector<int> inner;
  for (const auto& t : ts)
    if (std::find(inner.begin(), inner.end(), t.g) == inner.end()) inner.push_back(t.g);
  std::sort(inner.begin(), inner.end());
  std::vector<std::vector<Eigen::VectorXcd>> G(uk.list.size());
  for (int g : inner) {
    const auto& k = uk.list[g];
    std::vector<cplx> total(np);
    for (std::size_t P = 0; P < np; ++P)
      total[P] = 0.5 * (ps.b[P] - ps.a[P]) * (rule.weights * ps.values[P].col(g))(0);
    cplx suffix = constant_tail(k.constant_term(), k.kappa, geo);
    G[g].resize(np);
    for (std::size_t P = np; P-- > 0;) {
      const Eigen::VectorXcd local = 0.5 * (ps.b[P] - ps.a[P]) * (rule.tail * ps.values[P].col(g));
      G[g][P] = local.array() + suffix;
      suffix += total[P];
    }
  }

  cplx sum = 0.0;
  for (const auto& t : ts) {
    cplx acc = 0.0;
    for (std::size_t P = 0; P < np; ++P) {
      const Eigen::VectorXcd prod = ps.values[P].col(t.f).cwiseProduct(G[t.g][P]);
      acc += 0.5 * (ps.b[P] - ps.a[P]) * (rule.weights * prod)(0);
    }
    const auto &kf = uk.list[t.f], &kg = uk.list[t.g];
    const cplx cf = kf.constant_term(), cg = kg.constant_term();
    if (geo.ray && cf != 0.0 && cg != 0.0) {
      const double a1 = 2.0 - kf.kappa, a2 = 2.0 - kg.kappa;
      if (a1 + a2 <= 2.0) throw DomainError("double Eichler integral diverges at the cusp");
      acc += -cf * cg * std::pow(geo.z_top(), 2.0 - a1 - a2) / ((a2 - 1.0) * (a1 + a2 - 2.0));
    }
    sum += t.coeff * acc;
  }
  return sum;
}

}  // namespace

Endpoint Endpoint::cusp(const Rational& r) {
  if (r != Rational(0)) throw DomainError("Eichler integrals from cusps other than 0 are not implemented");
  return zero();
}

EichlerKernelSpec EichlerKernelSpec::of(const UnaryTheta& t, double arg_scale, double arg_shift) {
  return {t, t.weight(), arg_scale, arg_shift};
}

EichlerKernelSpec EichlerKernelSpec::shimura(const ThetaSpec& spec, double arg_scale) {
  return of(spec.theta(), arg_scale);
}

void EichlerKernelSpec::validate() const {
  if (std::abs(kappa - theta.weight()) > 1e-14) throw DomainError("Eichler kernel: weight must be nu + 1/2");
  if (!(arg_scale > 0.0)) throw DomainError("Eichler kernel: argument scale must be positive");
}

bool EichlerKernelSpec::identically_zero() const {
  if (theta.scale == 0.0) return true;
  if (theta.nu != 1 || theta.phase != 0.0) return false;
  // odd weight on a class closed under n -> -n
  const double r = 2.0 * theta.shift / theta.step;
  return std::abs(r - std::round(r)) < 1e-12;
}

EichlerKernelSpec EichlerKernelSpec::translated(double d) const {
  EichlerKernelSpec k = *this;
  k.arg_shift += arg_scale * d;
  return k;
}

cplx eichler_tail(const EichlerKernelSpec& f, const Endpoint& lower, const UpperHalfPoint& tau,
                  const QuadratureConfig& cfg) {
  cfg.validate();
  f.validate();
  if (f.identically_zero()) return 0.0;
  const std::vector<const EichlerKernelSpec*> ptrs{&f};
  const Geometry geo = ray_geometry(lower, tau, ptrs, cfg);
  const PanelSet ps = PanelBuilder(ptrs, geo, cfg).build();
  const auto& rule = chebyshev_panel_rule(kNodes);
  cplx sum = constant_tail(f.constant_term(), f.kappa, geo);
  for (std::size_t P = 0; P < ps.a.size(); ++P)
    sum += 0.5 * (ps.b[P] - ps.a[P]) * (rule.weights * ps.values[P].col(0))(0);
  return sum;
}

cplx eichler_double(const std::vector<KernelProduct>& terms, const Endpoint& lower, const UpperHalfPoint& tau,
                    const QuadratureConfig& cfg) {
  return double_integral(terms, Geometry{}, true, lower, tau, cfg);
}

cplx eichler_double(const EichlerKernelSpec& f, const EichlerKernelSpec& g, const Endpoint& lower,
                    const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  return eichler_double(std::vector<KernelProduct>{{1.0, f, g}}, lower, tau, cfg);
}

cplx eichler_double_segment(const std::vector<KernelProduct>& terms, const UpperHalfPoint& tau,
                            const QuadratureConfig& cfg) {
  Geometry geo;
  geo.ray = false;
  geo.seg_a = -std::conj(tau.value());
  geo.S = 1.0;
  geo.tau = tau.value();
  return double_integral(terms, geo, false, Endpoint::zero(), tau, cfg);
}

std::vector<KernelProduct> theta2d_products(Theta2DKind kind, const Eigen::Vector2d& alpha, cplx coeff,
                                            double arg_scale) {
  std::vector<KernelProduct> out;
  for (const auto& t : theta_2d_factors(kind, alpha))
    out.push_back({coeff, EichlerKernelSpec::of(t.first, arg_scale), EichlerKernelSpec::of(t.second, arg_scale)});
  return out;
}

namespace {

void append(std::vector<KernelProduct>& dst, const std::vector<KernelProduct>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

void require_not_both_integral(const Eigen::Vector2d& alpha) {
  if (is_integer(alpha(0)) && is_integer(alpha(1)))
    throw DomainError("alpha1 and alpha2 must not both be integers");
}

std::vector<KernelProduct> h1_products(const Eigen::Vector2d& alpha, cplx c) {
  auto v = theta2d_products(Theta2DKind::Theta1, alpha, c);
  append(v, theta2d_products(Theta2DKind::Theta2, alpha, c));
  return v;
}

std::vector<KernelProduct> h2_products(const Eigen::Vector2d& alpha, cplx c) {
  auto v = theta2d_products(Theta2DKind::Theta3, alpha, 2.0 * c);
  append(v, theta2d_products(Theta2DKind::Theta4, alpha, -c));
  append(v, theta2d_products(Theta2DKind::Theta5, alpha, c));
  return v;
}

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

cplx H1_eichler(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  require_not_both_integral(alpha);
  return eichler_double(h1_products(alpha, -kSqrt3), Endpoint::zero(), tau, cfg);
}

cplx H2_eichler(const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  require_not_both_integral(alpha);
  return eichler_double(h2_products(alpha, kSqrt3 * kI / (2.0 * kPi)), Endpoint::zero(), tau, cfg);
}

cplx calE_alpha(int kind, const Eigen::Vector2d& alpha, const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  if (kind == 1) return eichler_double(h1_products(alpha, -kSqrt3 / 4.0), Endpoint::minus_conj_tau(), tau, cfg);
  if (kind == 2)
    return eichler_double(h2_products(alpha, kSqrt3 / (8.0 * kPi)), Endpoint::minus_conj_tau(), tau, cfg);
  throw DomainError("calE: kind must be 1 or 2");
}

cplx calE(int kind, const UpperHalfPoint& tau, int p, bool blackboard, const QuadratureConfig& cfg) {
  if (p < 2) throw DomainError("calE: p must be at least 2");
  if (kind != 1 && kind != 2) throw DomainError("calE: kind must be 1 or 2");
  const UpperHalfPoint t = blackboard ? tau.scaled(1.0 / p) : tau;
  std::vector<KernelProduct> terms;
  for (const auto& a : alpha_set_S_star(p)) {
    if (kind == 1)
      append(terms, h1_products(a.vec(), -kSqrt3 / 4.0 * a.eps));
    else
      append(terms, h2_products(a.vec(), kSqrt3 / (8.0 * kPi)));
  }
  return eichler_double(terms, Endpoint::minus_conj_tau(), t.scaled(p), cfg);
}

void VectorIndex::validate() const {
  if (((k1 - k2) % 2 + 2) % 2 != 0) throw DomainError("vector index needs k1 = k2 mod 2");
}

namespace {

EichlerKernelSpec theta_kernel(int nu, long N, long h) { return EichlerKernelSpec::shimura({nu, N, h, N}); }

void add_pair(std::vector<KernelProduct>& v, cplx c, int nu2, int p, const VectorIndex& k) {
  v.push_back({c, theta_kernel(1, 2L * p, k.k1), theta_kernel(nu2, 6L * p, k.k2)});
}

}  // namespace

std::vector<KernelProduct> jk_products(JKKind kind, const VectorIndex& k, int p, cplx coeff, double reflection_sign) {
  k.validate();
  if (p < 2) throw DomainError("p must be at least 2");
  std::vector<KernelProduct> v;
  if (kind == JKKind::J) {
    const cplx c = -kSqrt3 / (4.0 * p) * coeff;
    for (int d = 0; d < 2; ++d) add_pair(v, c, 1, p, k.shifted(p, d));
  } else {
    const cplx c = -kSqrt3 / (8.0 * kPi) * coeff;
    const VectorIndex kr = k.reflected();
    for (int d = 0; d < 2; ++d) {
      add_pair(v, 2.0 * c, 0, p, k.shifted(p, d));
      add_pair(v, reflection_sign * c, 0, p, kr.shifted(p, d));
    }
  }
  return v;
}

std::vector<KernelProduct> rk_products(JKKind kind, const VectorIndex& k, int p, cplx coeff) {
  k.validate();
  std::vector<KernelProduct> v;
  add_pair(v, coeff, kind == JKKind::J ? 1 : 0, p, k);
  return v;
}

cplx JK_eval(JKKind kind, const VectorIndex& k, const UpperHalfPoint& tau, int p, const QuadratureConfig& cfg,
            double reflection_sign) {
  return eichler_double(jk_products(kind, k, p, 1.0, reflection_sign), Endpoint::minus_conj_tau(), tau, cfg);
}

ThetaFamily shimura_family(int nu, long N) {
  ThetaFamily fam;
  for (long k = 0; k < N; ++k) fam.kernels.push_back(theta_kernel(nu, N, k));
  fam.chi.phases.resize(N, N);
  for (long j = 0; j < N; ++j)
    for (long k = 0; k < N; ++k) fam.chi.phases(j, k) = root_of_unity(N, j * k);
  fam.chi.scale = std::pow(-kI, nu) / std::sqrt(double(N));
  return fam;
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string fmt_err(double e) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << e;
  return os.str();
}

struct Variant {
  std::string name;
  cplx rhs;
  bool printed = true;
};

// Report for the best of several readings of one identity; all residuals go to the notes.
// The report carries the best printed reading; derived readings only appear in the notes.
IdentityReport best_variant(std::string id, std::string anchor, cplx lhs, const std::vector<Variant>& vs, double tol,
                            Clock::time_point t0) {
  std::size_t best = vs.size(), best_derived = vs.size();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::size_t& slot = vs[i].printed ? best : best_derived;
    if (slot == vs.size() || std::abs(lhs - vs[i].rhs) < std::abs(lhs - vs[slot].rhs)) slot = i;
  }
  auto rep = IdentityReport::compare(std::move(id), std::move(anchor), lhs, vs[best].rhs, tol);
  rep.variant = vs[best].name;
  for (const auto& v : vs)
    rep.notes.push_back("variant " + v.name + (v.printed ? "" : " (derived)") + ": residual " +
                        fmt_err(std::abs(lhs - v.rhs)));
  if (!rep.passed && best_derived < vs.size() && std::abs(lhs - vs[best_derived].rhs) < tol)
    rep.notes.push_back("flagged: no printed reading passes; derived reading '" + vs[best_derived].name + "' passes");
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

cplx I_minus_r(const EichlerKernelSpec& f, const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  return eichler_tail(f, Endpoint::minus_conj_tau(), tau, cfg) - eichler_tail(f, Endpoint::zero(), tau, cfg);
}

// sum over k1 in [0, k1_range), k2 mod 6p, k1 = k2 (2) of phase(k) * products(k), evaluated at -1/tau.
template <class Phase>
cplx vector_sum(JKKind kind, int p, long k1_lo, long k1_hi, Phase phase, const UpperHalfPoint& tau,
                const QuadratureConfig& cfg, double reflection_sign = 1.0) {
  std::vector<KernelProduct> terms;
  for (long k1 = k1_lo; k1 < k1_hi; ++k1)
    for (long k2 = 0; k2 < 6L * p; ++k2) {
      if ((k1 - k2) % 2 != 0) continue;
      append(terms, jk_products(kind, {k1, k2}, p, phase(k1, k2), reflection_sign));
    }
  return eichler_double(terms, Endpoint::minus_conj_tau(), tau.s_image(), cfg);
}

cplx sum_H(int kind, int p, const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  std::vector<KernelProduct> terms;
  for (const auto& a : alpha_set_S_star(p)) {
    if (kind == 1)
      append(terms, h1_products(a.vec(), -kSqrt3 * a.eps));
    else
      append(terms, h2_products(a.vec(), kSqrt3 * kI / (2.0 * kPi)));
  }
  return eichler_double(terms, Endpoint::zero(), tau, cfg);
}

}  // namespace

IdentityReport check_S_double(const ThetaFamily& f, const ThetaFamily& g, int j, int l, const UpperHalfPoint& tau,
                              const QuadratureConfig& cfg, bool drop_cross_term) {
  const auto t0 = Clock::now();
  const auto& fj = f.kernels.at(j);
  const auto& gl = g.kernels.at(l);
  const cplx t = tau.value();
  std::vector<KernelProduct> sum_terms;
  for (std::size_t k = 0; k < f.kernels.size(); ++k)
    for (std::size_t m = 0; m < g.kernels.size(); ++m)
      sum_terms.push_back({f.chi(j, k) * g.chi(l, m), f.kernels[k], g.kernels[m]});
  const cplx transformed = eichler_double(sum_terms, Endpoint::minus_conj_tau(), tau.s_image(), cfg);
  const cplx lhs = eichler_double(fj, gl, Endpoint::minus_conj_tau(), tau, cfg) -
                   minus_i_pow(t, fj.kappa + gl.kappa - 4.0) * transformed;
  const cplx If = eichler_tail(fj, Endpoint::minus_conj_tau(), tau, cfg);
  const cplx rf = eichler_tail(fj, Endpoint::zero(), tau, cfg);
  const cplx rg = eichler_tail(gl, Endpoint::zero(), tau, cfg);
  cplx rhs = eichler_double(fj, gl, Endpoint::zero(), tau, cfg) - rf * rg;
  if (!drop_cross_term) rhs += If * rg;
  auto rep = IdentityReport::compare("eichler_S", "double Eichler integral under S", lhs, rhs, 1e-6);
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

IdentityReport check_S_theta(int p, long a, long b, int nu2, const UpperHalfPoint& tau, const QuadratureConfig& cfg,
                             bool drop_cross_term) {
  const ThetaFamily f = shimura_family(1, 2L * p);
  const ThetaFamily g = shimura_family(nu2, 6L * p);
  const long ja = ((a % (2L * p)) + 2L * p) % (2L * p);
  const long lb = ((b % (6L * p)) + 6L * p) % (6L * p);
  auto rep = check_S_double(f, g, static_cast<int>(ja), static_cast<int>(lb), tau, cfg, drop_cross_term);
  rep.variant = "Theta1(" + std::to_string(2 * p) + "," + std::to_string(a) + ") x Theta" + std::to_string(nu2) +
                "(" + std::to_string(6 * p) + "," + std::to_string(b) + ")";
  return rep;
}

IdentityReport check_T_shift(const EichlerKernelSpec& f, const EichlerKernelSpec& g, const UpperHalfPoint& tau,
                             const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  const cplx lhs = eichler_double(f, g, Endpoint::minus_conj_tau(), tau, cfg);
  const cplx rhs = eichler_double(f.translated(1.0), g.translated(1.0), Endpoint::minus_conj_tau(), tau.shifted(1.0),
                                  cfg);
  auto rep = IdentityReport::compare("eichler_T", "double Eichler integral under T", lhs, rhs, 1e-10);
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

IdentityReport check_path_split(const EichlerKernelSpec& f, const EichlerKernelSpec& g, const UpperHalfPoint& tau,
                                const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  const cplx lhs = eichler_double_segment({{1.0, f, g}}, tau, cfg);
  const cplx If = eichler_tail(f, Endpoint::minus_conj_tau(), tau, cfg);
  const cplx rf = eichler_tail(f, Endpoint::zero(), tau, cfg);
  const cplx rg = eichler_tail(g, Endpoint::zero(), tau, cfg);
  const cplx rhs = eichler_double(f, g, Endpoint::minus_conj_tau(), tau, cfg) + rf * rg -
                   eichler_double(f, g, Endpoint::zero(), tau, cfg) - If * rg;
  auto rep = IdentityReport::compare("eichler_split", "path splitting of the double integral", lhs, rhs, 1e-6);
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

IdentityReport check_lemma_E1(const UpperHalfPoint& tau, int p, const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  auto rep = IdentityReport::compare("lemma_E1_J", "E1 as a J-function", calE(1, tau, p, false, cfg),
                                     JK_eval(JKKind::J, {1, 3}, tau, p, cfg), 1e-6);
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

IdentityReport check_lemma_E2(const UpperHalfPoint& tau, int p, const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  const cplx e2 = calE(2, tau, p, false, cfg);
  auto rep = IdentityReport::compare("lemma_E2_K", "E2 as a K-function", e2, JK_eval(JKKind::K, {1, 3}, tau, p, cfg),
                                     1e-6);
  const cplx derived = JK_eval(JKKind::K, {1, 3}, tau, p, cfg, -1.0) / double(p);
  rep.notes.push_back("(1/p)(2 scriptJ_(1,3) - scriptJ_(2,0)): residual " + fmt_err(std::abs(e2 - derived)));
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

IdentityReport check_propJ(const VectorIndex& l, const UpperHalfPoint& tau, int p, const QuadratureConfig& cfg,
                           int phase_twist) {
  const auto t0 = Clock::now();
  l.validate();
  const cplx t = tau.value();
  const cplx lhs = JK_eval(JKKind::J, l, tau, p, cfg);
  auto phase = [&](long k1, long k2) {
    return root_of_unity(2L * p, k1 * (l.k1 + phase_twist)) * root_of_unity(6L * p, k2 * l.k2);
  };
  const cplx sum_lo = vector_sum(JKKind::J, p, 0, p, phase, tau, cfg);
  const cplx sum_hi = vector_sum(JKKind::J, p, p, 2L * p, phase, tau, cfg);
  const cplx pre = -1.0 / (kSqrt3 * p * (-kI * t));
  const double c = kSqrt3 / (4.0 * p);
  std::vector<KernelProduct> rterms;
  cplx prod = 0.0;
  for (int d = 0; d < 2; ++d) {
    const VectorIndex ld = l.shifted(p, d);
    append(rterms, rk_products(JKKind::J, ld, p, -c));
    prod += -c * I_minus_r(theta_kernel(1, 2L * p, ld.k1), tau, cfg) *
            eichler_tail(theta_kernel(1, 6L * p, ld.k2), Endpoint::zero(), tau, cfg);
  }
  const cplx rest = eichler_double(rterms, Endpoint::zero(), tau, cfg) + prod;
  auto rep = best_variant("propJ", "transformation of J", lhs,
                          {{"k1 mod p", pre * sum_lo + rest}, {"k1 mod 2p", pre * (sum_lo + sum_hi) + rest}}, 1e-5,
                          t0);
  rep.notes.push_back("r-term subscripts read as l (printed as k)");
  return rep;
}

IdentityReport check_corE1(const UpperHalfPoint& tau, int p, const QuadratureConfig& cfg, bool omit_h_term) {
  const auto t0 = Clock::now();
  const cplx t = tau.value();
  const cplx lhs = calE(1, tau, p, false, cfg);
  auto phase = [&](long k1, long k2) { return root_of_unity(2L * p, k1 + k2); };
  const cplx sum_lo = vector_sum(JKKind::J, p, 0, p, phase, tau, cfg);
  const cplx sum_hi = vector_sum(JKKind::J, p, p, 2L * p, phase, tau, cfg);
  const cplx pre = -1.0 / (kSqrt3 * p * (-kI * t));
  cplx h_tau = 0.0, h_ptau = 0.0;
  if (!omit_h_term) {
    h_tau = 0.25 * sum_H(1, p, tau, cfg);
    h_ptau = 0.25 * sum_H(1, p, tau.scaled(p), cfg);
  }
  const double c = kSqrt3 / (4.0 * p);
  cplx prod = 0.0;
  for (int d = 0; d < 2; ++d)
    prod += -c * I_minus_r(theta_kernel(1, 2L * p, 1 + p * d), tau, cfg) *
            eichler_tail(theta_kernel(1, 6L * p, 3 + 3L * p * d), Endpoint::zero(), tau, cfg);
  return best_variant("corE1", "transformation of E1", lhs,
                      {{"k1 mod p, H(tau)", pre * sum_lo + h_tau + prod},
                       {"k1 mod p, H(p tau)", pre * sum_lo + h_ptau + prod, false},
                       {"k1 mod 2p, H(tau)", pre * (sum_lo + sum_hi) + h_tau + prod},
                       {"k1 mod 2p, H(p tau)", pre * (sum_lo + sum_hi) + h_ptau + prod, false}},
                      1e-5, t0);
}

IdentityReport check_propK(const VectorIndex& l, const UpperHalfPoint& tau, int p, const QuadratureConfig& cfg,
                           bool flip_reflection, double reflection_sign) {
  const auto t0 = Clock::now();
  l.validate();
  const cplx t = tau.value();
  const cplx lhs = JK_eval(JKKind::K, l, tau, p, cfg, reflection_sign);
  auto phase = [&](long k1, long k2) {
    return root_of_unity(2L * p, k1 * l.k1) * root_of_unity(6L * p, k2 * l.k2);
  };
  const cplx sum_lo = vector_sum(JKKind::K, p, 0, p, phase, tau, cfg, reflection_sign);
  const cplx sum_hi = vector_sum(JKKind::K, p, p, 2L * p, phase, tau, cfg, reflection_sign);
  const cplx printed = kI / (2.0 * kSqrt3 * p);
  const cplx weighted = -kI / (kSqrt3 * p) * minus_i_pow(t, -2.0);
  const double c = kSqrt3 / (8.0 * kPi);
  const double refl = flip_reflection ? -reflection_sign : reflection_sign;
  const VectorIndex lr = l.reflected();
  std::vector<KernelProduct> rterms;
  cplx prod = 0.0;
  for (int d = 0; d < 2; ++d) {
    const VectorIndex ld = l.shifted(p, d), lrd = lr.shifted(p, d);
    append(rterms, rk_products(JKKind::K, ld, p, -2.0 * c));
    append(rterms, rk_products(JKKind::K, lrd, p, -c * refl));
    prod += -2.0 * c * I_minus_r(theta_kernel(1, 2L * p, ld.k1), tau, cfg) *
            eichler_tail(theta_kernel(0, 6L * p, ld.k2), Endpoint::zero(), tau, cfg);
    prod += -c * refl * I_minus_r(theta_kernel(1, 2L * p, lrd.k1), tau, cfg) *
            eichler_tail(theta_kernel(0, 6L * p, lrd.k2), Endpoint::zero(), tau, cfg);
  }
  const cplx rest = eichler_double(rterms, Endpoint::zero(), tau, cfg) + prod;
  auto rep = best_variant("propK", "transformation of K", lhs,
                          {{"k1 mod p, printed prefactor", printed * sum_lo + rest},
                           {"k1 mod 2p, printed prefactor", printed * (sum_lo + sum_hi) + rest},
                           {"k1 mod p, weight-2 prefactor", weighted * sum_lo + rest},
                           {"k1 mod 2p, weight-2 prefactor", weighted * (sum_lo + sum_hi) + rest}},
                          1e-5, t0);
  rep.notes.push_back("r-term subscripts read as l (printed as k)");
  rep.notes.push_back("weight-2 prefactor: -i (-i tau)^{-2} / (sqrt(3) p)");
  return rep;
}

IdentityReport check_corE2(const UpperHalfPoint& tau, int p, const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  const cplx t = tau.value();
  const cplx lhs = calE(2, tau, p, false, cfg);
  auto phase = [&](long k1, long k2) { return root_of_unity(2L * p, k1 + k2); };
  const cplx sum_lo = vector_sum(JKKind::K, p, 0, p, phase, tau, cfg);
  const cplx sum_hi = vector_sum(JKKind::K, p, p, 2L * p, phase, tau, cfg);
  const cplx sum_minus = vector_sum(JKKind::K, p, 0, p, phase, tau, cfg, -1.0);
  const cplx pre_printed = kI / (8.0 * kPi * p) * minus_i_pow(t, -2.0);
  const cplx pre_derived = -kI / (kSqrt3 * p * p) * minus_i_pow(t, -2.0);
  const cplx h_tau = 0.25 * kI * sum_H(2, p, tau, cfg);
  const cplx h_ptau = 0.25 * kI * sum_H(2, p, tau.scaled(p), cfg);
  const double c = kSqrt3 / (8.0 * kPi);
  cplx first = 0.0, second_printed = 0.0, second_derived = 0.0;
  for (int d = 0; d < 2; ++d) {
    const long pd = static_cast<long>(p) * d;
    first += 2.0 * I_minus_r(theta_kernel(1, 2L * p, 1 + pd), tau, cfg) *
             eichler_tail(theta_kernel(0, 6L * p, 3 + 3 * pd), Endpoint::zero(), tau, cfg);
    const cplx r0 = eichler_tail(theta_kernel(0, 6L * p, 3 * pd), Endpoint::zero(), tau, cfg);
    const EichlerKernelSpec f2 = theta_kernel(1, 2L * p, 2 + pd);
    const cplx I2 = eichler_tail(f2, Endpoint::minus_conj_tau(), tau, cfg);
    const cplx r2 = eichler_tail(f2, Endpoint::zero(), tau, cfg);
    const cplx r1 = eichler_tail(theta_kernel(1, 2L * p, 1 + pd), Endpoint::zero(), tau, cfg);
    second_printed += (I2 - r1) * r0;
    second_derived += (I2 - r2) * r0;
  }
  const cplx prod_derived = -c / p * (first - second_derived);
  std::vector<Variant> vs;
  for (int range = 0; range < 2; ++range)
    for (int h = 0; h < 2; ++h)
      for (int idx = 0; idx < 2; ++idx) {
        const cplx s = range == 0 ? sum_lo : sum_lo + sum_hi;
        const cplx prod = -c * (first - (idx == 0 ? second_printed : second_derived));
        vs.push_back({std::string("printed, ") + (range == 0 ? "k1 mod p" : "k1 mod 2p") +
                          (h == 0 ? ", H(tau)" : ", H(p tau)") + (idx == 0 ? "" : ", r index matching I"),
                      pre_printed * s + (h == 0 ? h_tau : h_ptau) + prod, h == 0 && idx == 0});
      }
  vs.push_back({"derived", pre_derived * sum_minus - h_ptau + prod_derived, false});
  auto rep = best_variant("corE2", "transformation of E2", lhs, vs, 1e-5, t0);
  rep.notes.push_back(
      "derived: E2 = (1/p)(2 scriptJ_(1,3) - scriptJ_(2,0)), transformed with prefactor -i (-i tau)^{-2}/(sqrt(3) p^2), "
      "H-term -(i/4) sum H2(p tau), product term (I - r)[Theta1(2p,2+p d)] with matching indices");
  return rep;
}

IdentityReport check_companion_eichler(long j, long p, const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  const cplx lhs = false_theta_companion(j, p, tau);
  const cplx rhs =
      -kI * std::sqrt(2.0 * p) * eichler_tail(EichlerKernelSpec::of(f_jp_theta(j, p)), Endpoint::minus_conj_tau(), tau, cfg);
  auto rep = IdentityReport::compare("companion_eichler", "false theta companion as an Eichler integral", lhs, rhs,
                                     1e-8);
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

IdentityReport check_companion_S(long j, long p, const UpperHalfPoint& tau, const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  const UpperHalfPoint st = tau.s_image();
  cplx sum = 0.0;
  for (long k = 1; k < p; ++k) sum += std::sin(kPi * k * j / p) * false_theta_companion(k, p, st);
  const cplx x = minus_i_pow(tau.value(), -0.5) * std::sqrt(2.0 / p) * sum;
  const cplx r =
      kI * std::sqrt(2.0 * p) * eichler_tail(EichlerKernelSpec::of(f_jp_theta(j, p)), Endpoint::zero(), tau, cfg);
  auto rep = best_variant("companion_S", "vector-valued inversion of the false theta companions",
                          false_theta_companion(j, p, tau), {{"printed signs", x + r}, {"derived signs", -x - r, false}}, 1e-8,
                          t0);
  rep.notes.push_back("derived signs: F*_j + (-i tau)^{-1/2} sqrt(2/p) sum_k sin(pi k j/p) F*_k(-1/tau) = -i sqrt(2p) r_f");
  return rep;
}

}  // namespace qmf
