#include "qmf/numquad.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <string>

namespace qmf {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(taylor_radius > 0.0))
    throw DomainError("QuadratureConfig: tolerances and taylor_radius must be positive");
  if (!(envelope_cut < abs_tol)) throw DomainError("QuadratureConfig: envelope_cut must be below abs_tol");
  if (max_subdivisions < 1) throw DomainError("QuadratureConfig: max_subdivisions must be positive");
}

namespace {

// Modified Lentz continued fraction for Gamma(1/2, x) e^x.
double gamma_half_cf(double x) {
  constexpr double a = 0.5;
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::sqrt(x) * h;
}

constexpr double kSwitchCF = 30.0;

// M(u) with the convention M(0) = E(0) - sgn(0) = 0 used by the M2 relation.
double m_ext(double u) { return u == 0.0 ? 0.0 : m_func(u); }

}  // namespace

double gamma_half(double x) {
  if (!(x >= 0.0)) throw DomainError("gamma_half: x must be nonnegative");
  if (x < kSwitchCF) return std::sqrt(kPi) * std::erfc(std::sqrt(x));
  return gamma_half_cf(x) * std::exp(-x);
}

double gamma_half_scaled(double x) {
  if (!(x >= 0.0)) throw DomainError("gamma_half_scaled: x must be nonnegative");
  if (x < kSwitchCF) return std::sqrt(kPi) * std::erfc(std::sqrt(x)) * std::exp(x);
  return gamma_half_cf(x);
}

double gauss_E(double u) {
  if (u == 0.0) return 0.0;
  const double x = kPi * u * u;
  // For small arguments 1 - Gamma/sqrt(pi) cancels; erf is the same quantity.
  if (x < 0.5) return std::erf(std::sqrt(kPi) * u);
  return sgn(u) * (1.0 - gamma_half(x) / std::sqrt(kPi));
}

double m_func(double u) {
  if (u == 0.0) throw DomainError("m_func: undefined at u = 0");
  return -sgn(u) * gamma_half(kPi * u * u) / std::sqrt(kPi);
}

double m_func_contour(double u, const QuadratureConfig& cfg) {
  if (u == 0.0) throw DomainError("m_func_contour: undefined at u = 0");
  // w = t - iu turns the exponent into -pi t^2 - pi u^2; the odd part of 1/(t - iu) drops out.
  const double a = std::abs(u);
  auto f = [&](double t) { return std::exp(-kPi * t * t) / (t * t + u * u); };
  double integral = 0.0;
  for (auto [lo, hi] : {std::pair{0.0, a}, std::pair{a, 8.0 + a}})
    integral += 2.0 * adaptive_integral_real(f, Path::finite(lo, hi), cfg);
  return -(u / kPi) * std::exp(-kPi * u * u) * integral;
}

double e2_func(const ErrorFnArgs& args, const QuadratureConfig& cfg) {
  const auto [kappa, u1, u2] = args;
  // Inner integral over w2 in closed form: int sgn(w2 + kappa w1) e^{-pi (w2-u2)^2} dw2 = E(u2 + kappa w1).
  auto f = [&](double w) { return std::exp(-kPi * (w - u1) * (w - u1)) * gauss_E(u2 + kappa * w); };
  constexpr double window = 8.0;
  double pos = 0.0, neg = 0.0;
  if (u1 + window > 0.0) pos = adaptive_integral_real(f, Path::finite(std::max(0.0, u1 - window), u1 + window), cfg);
  if (u1 - window < 0.0) neg = adaptive_integral_real(f, Path::finite(u1 - window, std::min(0.0, u1 + window)), cfg);
  return pos - neg;
}

double m2_func(const ErrorFnArgs& args, const QuadratureConfig& cfg) {
  const auto [kappa, u1, u2] = args;
  const double rot = (u2 + kappa * u1) / std::sqrt(1.0 + kappa * kappa);
  return e2_func(args, cfg) - sgn(u2) * m_ext(u1) - sgn(u1 - kappa * u2) * m_ext(rot) -
         sgn(u1) * sgn(u2 + kappa * u1);
}

double m2_contour_scaled(const ErrorFnArgs& args, const QuadratureConfig& cfg) {
  const auto [kappa, u1, u2] = args;
  const double b = u1 - kappa * u2;
  if (u2 == 0.0 || b == 0.0) throw DomainError("m2_contour: degenerate line, use m2_func");
  constexpr double window = 7.0;
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.abs_tol = cfg.abs_tol * 1e-2;
  // Inner integral over t1 of e^{-pi t1^2} / (t1 - a - i b), split at the near-pole a.
  auto inner = [&](double a) {
    auto g = [&](double t) { return std::exp(-kPi * t * t) / cplx(t - a, -b); };
    if (a <= -window || a >= window) return adaptive_integral(g, Path::finite(-window, window), inner_cfg);
    return adaptive_integral(g, Path::finite(-window, a), inner_cfg) +
           adaptive_integral(g, Path::finite(a, window), inner_cfg);
  };
  auto outer = [&](double t2) { return std::exp(-kPi * t2 * t2) * inner(kappa * t2) / cplx(t2, -u2); };
  cplx total = adaptive_integral(outer, Path::finite(-window, 0.0), cfg) +
               adaptive_integral(outer, Path::finite(0.0, window), cfg);
  return (-(1.0 / (kPi * kPi)) * total).real();
}

double m2_contour(const ErrorFnArgs& args, const QuadratureConfig& cfg) {
  return std::exp(-kPi * (args.u1 * args.u1 + args.u2 * args.u2)) * m2_contour_scaled(args, cfg);
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class G>
Segment gk15(const G& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = g(c);
  cplx kronrod = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const cplx f1 = g(c - dx);
    const cplx f2 = g(c + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

template <class G>
cplx adapt(const G& g, double a, double b, int initial, const QuadratureConfig& cfg) {
  std::priority_queue<Segment> heap;
  cplx total = 0.0;
  double err = 0.0;
  const double step = (b - a) / initial;
  for (int i = 0; i < initial; ++i) {
    Segment s = gk15(g, a + i * step, i + 1 == initial ? b : a + (i + 1) * step);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  int splits = 0;
  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (++splits > cfg.max_subdivisions)
      throw QuadratureError("adaptive_integral: subdivision limit reached (error " + std::to_string(err) + ")");
    Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) throw QuadratureError("adaptive_integral: interval underflow");
    Segment l = gk15(g, s.a, mid);
    Segment r = gk15(g, mid, s.b);
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum in a fixed order so that round-off is independent of the update history.
  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  cplx sum = 0.0;
  for (const auto& s : segs) sum += s.value;
  return sum;
}

void require_decay(const ComplexIntegrand& f, double origin, double direction, const QuadratureConfig& cfg) {
  for (int k = 0; k <= 24; ++k) {
    const double x = origin + direction * std::ldexp(1.0, k);
    if (std::abs(f(x)) < cfg.envelope_cut) return;
  }
  throw QuadratureError("adaptive_integral: integrand envelope never drops below envelope_cut");
}

}  // namespace

cplx adaptive_integral(const ComplexIntegrand& f, const Path& path, const QuadratureConfig& cfg) {
  switch (path.kind) {
    case Path::Kind::Finite:
      if (path.a == path.b) return 0.0;
      return adapt(f, path.a, path.b, 1, cfg);
    case Path::Kind::UpperHalfLine: {
      require_decay(f, path.a, 1.0, cfg);
      auto g = [&](double s) {
        const double d = 1.0 - s;
        return f(path.a + s / d) / (d * d);
      };
      return adapt(g, 0.0, 1.0, 8, cfg);
    }
    case Path::Kind::LowerHalfLine: {
      require_decay(f, path.a, -1.0, cfg);
      auto g = [&](double s) {
        const double d = 1.0 - s;
        return f(path.a - s / d) / (d * d);
      };
      return adapt(g, 0.0, 1.0, 8, cfg);
    }
    case Path::Kind::RealLine: {
      require_decay(f, 0.0, 1.0, cfg);
      require_decay(f, 0.0, -1.0, cfg);
      auto g = [&](double s) {
        const double d = 1.0 - s * s;
        return f(s / d) * (1.0 + s * s) / (d * d);
      };
      return adapt(g, -1.0, 1.0, 16, cfg);
    }
  }
  throw DomainError("adaptive_integral: unknown path kind");
}

// ---------------------------------------------------------------------------
// Fixed rules

QuadRule gauss_legendre(int order) {
  // Golub-Welsch via the symmetric Jacobi matrix.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  QuadRule rule;
  for (int i = 0; i < order; ++i) {
    rule.nodes.push_back(es.eigenvalues()(i));
    const double v0 = es.eigenvectors()(0, i);
    rule.weights.push_back(2.0 * v0 * v0);
  }
  return rule;
}

QuadRule composite_gauss_legendre(double a, double b, int panels, int order) {
  static std::mutex mu;
  static std::map<int, QuadRule> cache;
  QuadRule base;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order)).first;
    base = it->second;
  }
  QuadRule out;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      out.nodes.push_back(c + 0.5 * h * base.nodes[i]);
      out.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return out;
}

namespace {

ChebyshevPanelRule build_chebyshev(int n) {
  ChebyshevPanelRule r;
  r.nodes.resize(n);
  for (int j = 0; j < n; ++j) r.nodes(j) = std::cos(kPi * (j + 0.5) / n);
  // Discrete orthogonality of T_k on first-kind nodes.
  r.to_coeffs.resize(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) r.to_coeffs(k, j) = (k == 0 ? 1.0 : 2.0) / n * std::cos(k * kPi * (j + 0.5) / n);
  // Antiderivative P_k of T_k evaluated at x.
  auto cheb = [](int k, double x) { return std::cos(k * std::acos(std::clamp(x, -1.0, 1.0))); };
  auto anti = [&](int k, double x) {
    if (k == 0) return x;
    if (k == 1) return 0.5 * x * x;
    return cheb(k + 1, x) / (2.0 * (k + 1)) - cheb(k - 1, x) / (2.0 * (k - 1));
  };
  Eigen::MatrixXd ptail(n, n);
  Eigen::RowVectorXd pfull(n);
  for (int k = 0; k < n; ++k) {
    pfull(k) = anti(k, 1.0) - anti(k, -1.0);
    for (int j = 0; j < n; ++j) ptail(j, k) = anti(k, 1.0) - anti(k, r.nodes(j));
  }
  r.weights = pfull * r.to_coeffs;
  r.tail = ptail * r.to_coeffs;
  return r;
}

}  // namespace

const ChebyshevPanelRule& chebyshev_panel_rule(int n) {
  static std::mutex mu;
  static std::map<int, ChebyshevPanelRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_chebyshev(n)).first;
  return it->second;
}

}  // namespace qmf
