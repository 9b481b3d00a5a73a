#include "qmf/asymlab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "qmf/alpha.hpp"
#include "qmf/eichler.hpp"
#include "qmf/upper_half.hpp"

namespace qmf {

RootOfUnityApproach RootOfUnityApproach::make(long h, long k, int p, std::vector<double> t_grid) {
  if (k <= 0) throw DomainError("root of unity: k must be positive");
  if (std::gcd(h, k) != 1) throw DomainError("root of unity: gcd(h, k) must be 1");
  if (p < 2) throw DomainError("root of unity: p must be at least 2");
  if (t_grid.empty()) throw DomainError("root of unity: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] <= 0.3)) throw DomainError("root of unity: t must lie in (0, 0.3]");
    if (i > 0 && !(t_grid[i] < t_grid[i - 1])) throw DomainError("root of unity: t grid must decrease");
  }
  return {((h % k) + k) % k, k, p, std::move(t_grid)};
}

std::vector<double> RootOfUnityApproach::default_grid() {
  std::vector<double> g;
  for (int j = 0; j <= 7; ++j) g.push_back(0.2 * std::ldexp(1.0, -j));
  return g;
}

long RootOfUnityApproach::p2() const { return std::gcd(k, static_cast<long>(p)); }

namespace {

// e^{2 pi i h N/(k p^2) - t N/p^2} for the integer N = p^2 Q
struct RadialTerm {
  long h, modulus;
  double t, p2;
  cplx operator()(std::int64_t N) const {
    const std::int64_t r = ((static_cast<std::int64_t>(h) * (N % modulus)) % modulus + modulus) % modulus;
    return std::exp(cplx(-t * static_cast<double>(N) / p2, 2.0 * kPi * static_cast<double>(r) / modulus));
  }
};

std::int64_t scaled_integer(const Rational& r, int p) {
  const Rational s = r * Rational(p);
  if (s.denominator() != 1) throw DomainError("radial sum: shift not in (1/p) Z");
  return s.numerator();
}

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// Values below this are treated as zero in relative comparisons.
constexpr double kAbsFloor = 1e-6;

double relative(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kAbsFloor}); }

void set_relative(IdentityReport& rep) {
  rep.rel_err = relative(rep.lhs, rep.rhs);
  rep.passed = rep.rel_err < rep.tol;
}

std::string fmt(double e) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << e;
  return os.str();
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

cplx radial_eval(SeriesKind kind, const RootOfUnityApproach& a, double t, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) throw DomainError("radial_eval: t must be positive");
  const int p = a.p;
  const double p2 = double(p) * p;
  const double Nmax = -std::log(cfg.envelope_cut) * p2 / t;
  if (Nmax > 4e9) throw DomainError("radial_eval: t too small for the term budget");
  const RadialTerm term{a.h, a.k * p * p, t, p2};
  cplx sum = 0.0;
  for (const auto& s : alpha_set_S(p)) {
    const std::int64_t P1 = scaled_integer(s.a1, p), P2 = scaled_integer(s.a2, p);
    if (P1 < 0 || P2 < 0) throw DomainError("radial_eval: negative shift");
    const double w = kind == SeriesKind::F1 ? s.eps : s.eta;
    cplx part = 0.0;
    for (std::int64_t n1 = P1;; n1 += p) {
      if (3.0 * n1 * n1 > Nmax) break;
      for (std::int64_t n2 = P2;; n2 += p) {
        const std::int64_t N = 3 * n1 * n1 + n2 * n2 + 3 * n1 * n2;
        if (N > Nmax) break;
        part += kind == SeriesKind::F1 ? term(N) : (double(n2) / p) * term(N);
      }
    }
    sum += w * part;
  }
  // unary correction over m + 1/p, i.e. n = p m + 1
  cplx unary = 0.0;
  const auto L = static_cast<std::int64_t>(std::sqrt(Nmax) / p) + 2;
  for (std::int64_t m = -L; m <= L; ++m) {
    const std::int64_t n = 1 + p * m;
    if (double(n) * n > Nmax) continue;
    const cplx e = term(n * n);
    unary += kind == SeriesKind::F1 ? sgn(double(n)) * e : std::abs(double(n)) / p * e;
  }
  return kind == SeriesKind::F1 ? sum + 0.5 * unary : sum - 0.5 * unary;
}

cplx eichler_radial_eval_at(SeriesKind kind, double x, int p, double t, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("eichler_radial_eval: t must be positive");
  return calE(kind == SeriesKind::F1 ? 1 : 2, UpperHalfPoint(-x, t / (2.0 * kPi)), p, true, cfg);
}

cplx eichler_radial_eval(SeriesKind kind, const RootOfUnityApproach& a, double t, const QuadratureConfig& cfg) {
  return eichler_radial_eval_at(kind, double(a.h) / double(a.k), a.p, t, cfg);
}

namespace {

Eigen::VectorXcd polyfit(const std::vector<double>& t, const Eigen::VectorXcd& y, int degree, double scale,
                         double* sigma) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd V(n, degree + 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int m = 0; m <= degree; ++m) V(i, m) = std::pow(t[i] / scale, m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < 1e12)) throw ConditioningError("asym_coeffs: Vandermonde condition number " + fmt(cond));
  const Eigen::MatrixXcd Vc = V.cast<cplx>();
  Eigen::VectorXcd c = Vc.colPivHouseholderQr().solve(y);
  if (sigma) {
    const Eigen::Index dof = n - (degree + 1);
    *sigma = dof > 0 ? (Vc * c - y).norm() / std::sqrt(double(dof)) : 0.0;
  }
  for (int m = 0; m <= degree; ++m) c(m) /= std::pow(scale, m);
  return c;
}

}  // namespace

AsymCoeffs asym_coeffs(const std::function<cplx(double)>& evaluator, const std::vector<double>& t_grid, int M) {
  if (M < 0) throw DomainError("asym_coeffs: negative order");
  if (M + 2 > static_cast<int>(t_grid.size())) throw DomainError("asym_coeffs: need M <= grid size - 2");
  Eigen::VectorXcd y(static_cast<Eigen::Index>(t_grid.size()));
  for (std::size_t i = 0; i < t_grid.size(); ++i) y(static_cast<Eigen::Index>(i)) = evaluator(t_grid[i]);
  const double scale = *std::max_element(t_grid.begin(), t_grid.end());
  const int D = static_cast<int>(t_grid.size()) - 2;
  double sigma = 0.0;
  const Eigen::VectorXcd hi = polyfit(t_grid, y, D, scale, &sigma);
  const Eigen::VectorXcd lo = polyfit(t_grid, y, std::max(M, D - 1), scale, nullptr);

  // noise propagation through the degree-D fit
  const Eigen::Index n = static_cast<Eigen::Index>(t_grid.size());
  Eigen::MatrixXd V(n, D + 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int m = 0; m <= D; ++m) V(i, m) = std::pow(t_grid[i] / scale, m);
  const Eigen::MatrixXd cov = (V.transpose() * V).inverse();

  AsymCoeffs out;
  for (int m = 0; m <= M; ++m) {
    out.values.push_back(hi(m));
    const double noise = sigma * std::sqrt(cov(m, m)) / std::pow(scale, m);
    out.stderr_.push_back(std::max(std::abs(hi(m) - lo(m)), noise));
  }
  return out;
}

IdentityReport check_asym_match(SeriesKind kind, const RootOfUnityApproach& a, int M, double tol,
                                const QuadratureConfig& cfg, bool flip_sign) {
  const auto t0 = Clock::now();
  if (M < 0 || M > 2) throw DomainError("check_asym_match: M must lie in 0..2");
  const AsymCoeffs s = asym_coeffs([&](double t) { return radial_eval(kind, a, t, cfg); }, a.t_grid, M);
  const AsymCoeffs e = asym_coeffs([&](double t) { return eichler_radial_eval(kind, a, t, cfg); }, a.t_grid, M);
  double worst = -1.0;
  int worst_m = 0;
  std::vector<std::string> notes;
  for (int m = 0; m <= M; ++m) {
    const double sign = (m % 2 == 1 && !flip_sign) ? -1.0 : 1.0;
    const cplx target = sign * e.values[m];
    const double rel = relative(s.values[m], target);
    notes.push_back("m = " + std::to_string(m) + ": series " + fmt(s.values[m]) + " (stderr " + fmt(s.stderr_[m]) +
                    "), eichler " + fmt(target) + " (stderr " + fmt(e.stderr_[m]) + "), relative " + fmt(rel));
    if (rel > worst) {
      worst = rel;
      worst_m = m;
    }
  }
  const double sign = (worst_m % 2 == 1 && !flip_sign) ? -1.0 : 1.0;
  auto rep = IdentityReport::compare(kind == SeriesKind::F1 ? "asym_F1" : "asym_F2",
                                     "asymptotic expansion of the false theta function against its Eichler integral",
                                     s.values[worst_m], sign * e.values[worst_m], tol, true);
  set_relative(rep);
  rep.variant = "h/k = " + std::to_string(a.h) + "/" + std::to_string(a.k) + ", p = " + std::to_string(a.p) +
                ", m <= " + std::to_string(M) + (flip_sign ? ", +t^m" : ", (-t)^m");
  rep.notes = notes;
  rep.runtime_ms = elapsed_ms(t0);
  return rep;
}

QuantumValue quantum_value(SeriesKind kind, long h, long k, int p, double tol, const QuadratureConfig& cfg) {
  const auto t0 = Clock::now();
  const auto base = RootOfUnityApproach::make(h, k, p);
  // F(e^{2 pi i p h/k}) is approached along e^{2 pi i h'/k' - t} with h'/k' = ph/k
  const long g = std::gcd(p * base.h, base.k);
  const auto series_pt = RootOfUnityApproach::make(p * base.h / g, base.k / g, p);
  const int M = 2;
  const cplx s = asym_coeffs([&](double t) { return radial_eval(kind, series_pt, t, cfg); }, base.t_grid, M).values[0];
  auto limit = [&](double x) {
    return asym_coeffs([&](double t) { return eichler_radial_eval_at(kind, x, p, t, cfg); }, base.t_grid, M).values[0];
  };
  const double x_printed = double(base.h) / double(base.k);
  const double x_scaled = double(series_pt.h) / double(series_pt.k);
  const cplx e_printed = limit(x_printed);
  const cplx e_scaled = x_scaled == x_printed ? e_printed : limit(x_scaled);

  auto rel = relative;
  const bool use_scaled = rel(s, e_scaled) < rel(s, e_printed);
  const cplx e = use_scaled ? e_scaled : e_printed;
  auto rep = IdentityReport::compare(kind == SeriesKind::F1 ? "quantum_F1" : "quantum_F2",
                                     "quantum value as the radial limit of the series and of the Eichler integral", s,
                                     e, tol, true);
  set_relative(rep);
  rep.variant = "h/k = " + std::to_string(h) + "/" + std::to_string(k) + ", p = " + std::to_string(p) +
                (use_scaled ? ", Eichler integral at it/2pi - ph/k" : ", Eichler integral at it/2pi - h/k");
  rep.notes.push_back("Eichler integral at it/2pi - h/k: limit " + fmt(e_printed) + ", relative " +
                      fmt(rel(s, e_printed)));
  rep.notes.push_back("Eichler integral at it/2pi - ph/k: limit " + fmt(e_scaled) + ", relative " +
                      fmt(rel(s, e_scaled)));
  rep.notes.push_back("imaginary part of the Eichler limit: " + fmt(std::abs(e.imag())));
  rep.runtime_ms = elapsed_ms(t0);
  return {s, e, rep};
}

}  // namespace qmf
