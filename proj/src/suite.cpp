#include "qmf/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <thread>

#include "qmf/alpha.hpp"
#include "qmf/asymlab.hpp"
#include "qmf/eichler.hpp"
#include "qmf/mordell.hpp"
#include "qmf/qexact.hpp"
#include "qmf/thetafn.hpp"

namespace qmf {

std::vector<std::string> SuiteConfig::all_check_groups() {
  return {"asym",        "companion_S",  "corE1",     "corE2",      "decomposition", "errormod",  "H1_mordell",
          "H2_mordell",  "lemma_E1",     "lemma_E2",  "m2_lattice", "m2_relation",   "mordell_1d", "propJ",
          "propK",       "quantum",      "S_double",  "T_shift",    "theta_rescale", "theta_S"};
}

void SuiteConfig::validate() const {
  for (int p : p_values)
    if (p < 2) throw DomainError("config: p must be at least 2");
  for (cplx t : tau_values)
    if (!(t.imag() > 0.0) || !std::isfinite(t.real()) || !std::isfinite(t.imag()))
      throw DomainError("config: tau must lie in the upper half-plane");
  const auto known = all_check_groups();
  const std::set<std::string> ids(known.begin(), known.end());
  for (const auto& c : checks)
    if (!ids.count(c)) throw DomainError("config: unknown check '" + c + "'");
  for (const auto& [id, tol] : tolerances) {
    if (!ids.count(id)) throw DomainError("config: tolerance for unknown check '" + id + "'");
    if (!(tol > 0.0)) throw DomainError("config: tolerances must be positive");
  }
  if (parallelism < 1) throw DomainError("config: parallelism must be at least 1");
}

namespace {

double parse_real(const std::string& s, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw DomainError("cannot parse complex number '" + text + "'");
  return v;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw DomainError("cannot parse complex number ''");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  s.pop_back();
  // split before the last sign that does not belong to an exponent
  std::size_t split = 0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  const std::string re = s.substr(0, split), im = s.substr(split);
  const double im_val = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im, text);
  return {re.empty() ? 0.0 : parse_real(re, text), im_val};
}

std::string format_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

void to_json(nlohmann::json& j, const SuiteConfig& c) {
  std::vector<std::string> taus;
  for (cplx t : c.tau_values) taus.push_back(format_complex(t));
  j = nlohmann::json{{"p_values", c.p_values},
                     {"tau_values", taus},
                     {"tolerances", c.tolerances},
                     {"checks", c.checks},
                     {"parallelism", c.parallelism}};
}

void from_json(const nlohmann::json& j, SuiteConfig& c) {
  if (j.contains("p_values")) c.p_values = j.at("p_values").get<std::vector<int>>();
  if (j.contains("tau_values")) {
    c.tau_values.clear();
    for (const auto& t : j.at("tau_values")) {
      if (t.is_string())
        c.tau_values.push_back(parse_complex(t.get<std::string>()));
      else
        c.tau_values.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
    }
  }
  if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
  if (j.contains("parallelism")) c.parallelism = j.at("parallelism").get<int>();
}

IdentityReport check_m2_relation(double kappa, double u1, double u2, const QuadratureConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const QuadratureConfig qc = cfg;
  const bool on_u2 = u2 == 0.0, on_rot = u1 == kappa * u2;
  if (on_u2 && on_rot) throw DomainError("m2 relation: the two degenerate lines meet at the origin");
  cplx rhs;
  std::string variant = "off the degenerate lines";
  if (on_u2 || on_rot) {
    auto mean = [&](double d) {
      const ErrorFnArgs a = on_u2 ? ErrorFnArgs{kappa, u1, u2 + d} : ErrorFnArgs{kappa, u1 + d, u2};
      const ErrorFnArgs b = on_u2 ? ErrorFnArgs{kappa, u1, u2 - d} : ErrorFnArgs{kappa, u1 - d, u2};
      return 0.5 * (m2_contour(a, qc) + m2_contour(b, qc));
    };
    const double d = 1e-4;
    rhs = 2.0 * mean(d / 2) - mean(d);
    variant = on_u2 ? "line u2 = 0, two-sided limit" : "line u1 = kappa u2, two-sided limit";
  } else {
    rhs = m2_contour({kappa, u1, u2}, qc);
  }
  auto rep = IdentityReport::compare("m2_relation", "M2 through E2 and its contour integral",
                                     m2_func({kappa, u1, u2}, qc), rhs, 1e-8);
  rep.variant = variant;
  rep.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

struct Task {
  std::string group;
  std::string params;
  std::function<IdentityReport()> run;
};

std::string tau_param(cplx t) { return "tau=" + format_complex(t); }

std::string p_tau(int p, cplx t) { return "p=" + std::to_string(p) + "," + tau_param(t); }

std::string vec_param(const Eigen::Vector2d& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "alpha=(%.6g,%.6g)", a(0), a(1));
  return buf;
}

const std::vector<ThetaSpec>& theta_specs() {
  static const std::vector<ThetaSpec> specs = [] {
    std::vector<ThetaSpec> v;
    for (int nu : {0, 1})
      for (auto [A, h, N] : std::vector<std::array<long, 3>>{{4, 1, 4}, {4, 2, 4}, {12, 3, 12}, {12, 5, 12}, {2, 2, 4}, {6, 5, 6}})
        v.push_back({nu, A, h, N});
    return v;
  }();
  return specs;
}

std::vector<Eigen::Vector2d> mordell_alphas(const std::vector<int>& ps) {
  std::vector<Eigen::Vector2d> out{{0.5, 1.0 / 3.0}, {0.5, 1.0}, {0.0, 0.5}};
  for (int p : ps)
    for (const auto& a : alpha_set_S_star(p)) {
      const Eigen::Vector2d v = a.vec();
      if (std::none_of(out.begin(), out.end(), [&](const Eigen::Vector2d& w) { return (w - v).norm() < 1e-14; }))
        out.push_back(v);
    }
  return out;
}

IdentityReport decomposition_report(int p) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = check_decomposition(p, Rational(60));
  IdentityReport r;
  r.check_id = "decomposition";
  r.paper_anchor = "F = (2/p) F1(q^p) + 2 F2(q^p) as exact q-series";
  r.passed = res.holds;
  r.abs_err = res.holds ? 0.0 : 1.0;
  r.rel_err = r.abs_err;
  r.tol = 0.5;
  r.variant = "order 60";
  if (res.first_failing_exponent) r.notes.push_back("first differing exponent " + to_string(*res.first_failing_exponent));
  r.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void add_tasks(std::vector<Task>& tasks, const std::string& g, const SuiteConfig& c) {
  const QuadratureConfig qc{};
  auto add = [&](std::string params, std::function<IdentityReport()> f) { tasks.push_back({g, std::move(params), std::move(f)}); };
  auto pt = [](cplx t) { return UpperHalfPoint(t); };

  if (g == "decomposition") {
    for (int p : c.p_values) add("p=" + std::to_string(p), [p] { return decomposition_report(p); });
  } else if (g == "theta_S") {
    for (const auto& s : theta_specs())
      for (cplx t : c.tau_values) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "nu=%d,A=%ld,h=%ld,N=%ld,", s.nu, s.A, s.h, s.N);
        add(buf + tau_param(t), [s, t, pt] { return theta_shimura_S_check(s, pt(t)); });
      }
  } else if (g == "theta_rescale") {
    for (int p : c.p_values)
      for (long h : {1L, 2L * p - 1})
        for (cplx t : c.tau_values)
          add("h=" + std::to_string(h) + "," + p_tau(p, t), [h, p, t, pt] { return theta_rescale_check(h, p, pt(t)); });
  } else if (g == "m2_relation") {
    const double k = std::sqrt(3.0);
    const double grid[] = {-1.2, -0.5, 0.3, 0.8, 1.4};
    for (double u1 : grid)
      for (double u2 : grid) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "u=(%g,%g)", u1, u2);
        add(buf, [=] { return check_m2_relation(k, u1, u2, qc); });
      }
    for (double u1 : {-0.7, 0.4, 1.1}) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "u=(%g,0)", u1);
      add(buf, [=] { return check_m2_relation(k, u1, 0.0, qc); });
    }
    for (double u2 : {-0.4, 0.25, 0.6}) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "u=(sqrt3*%g,%g)", u2, u2);
      add(buf, [=] { return check_m2_relation(k, k * u2, u2, qc); });
    }
  } else if (g == "mordell_1d") {
    for (int p : c.p_values)
      for (long j = 1; j < p; ++j)
        for (cplx t : c.tau_values) {
          const std::string prm = "j=" + std::to_string(j) + "," + p_tau(p, t);
          add(prm + ",forms", [=] { return check_mordell_1d_forms(j, p, pt(t), qc); });
          add(prm + ",eichler", [=] { return check_mordell_1d_eichler(j, p, pt(t), qc); });
          add(prm + ",companion", [=] { return check_companion_eichler(j, p, pt(t), qc); });
        }
  } else if (g == "companion_S") {
    for (int p : c.p_values)
      for (long j = 1; j < p; ++j)
        for (cplx t : c.tau_values)
          add("j=" + std::to_string(j) + "," + p_tau(p, t), [=] { return check_companion_S(j, p, pt(t), qc); });
  } else if (g == "errormod") {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.25, 0.25}, {1.0 / 6.0, 1.0 / 3.0}})
      for (cplx t : c.tau_values) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "a=%.4g,b=%.4g,", a, b);
        add(buf + tau_param(t), [=] { return check_errormod(a, b, pt(t), qc); });
      }
  } else if (g == "T_shift" || g == "S_double") {
    for (int p : c.p_values)
      for (int nu2 : {1, 0})
        for (cplx t : c.tau_values) {
          const std::string prm = std::string(nu2 == 1 ? "Theta1xTheta1," : "Theta1xTheta0,") + p_tau(p, t);
          if (g == "T_shift")
            add(prm, [=] {
              return check_T_shift(EichlerKernelSpec::shimura({1, 2L * p, 1, 2L * p}),
                                   EichlerKernelSpec::shimura({nu2, 6L * p, 3, 6L * p}), pt(t), qc);
            });
          else
            add(prm, [=] { return check_S_theta(p, 1, 3, nu2, pt(t), qc); });
        }
  } else if (g == "lemma_E1" || g == "lemma_E2" || g == "corE1" || g == "corE2") {
    for (int p : c.p_values)
      for (cplx t : c.tau_values)
        add(p_tau(p, t), [=] {
          if (g == "lemma_E1") return check_lemma_E1(pt(t), p, qc);
          if (g == "lemma_E2") return check_lemma_E2(pt(t), p, qc);
          if (g == "corE1") return check_corE1(pt(t), p, qc);
          return check_corE2(pt(t), p, qc);
        });
  } else if (g == "propJ" || g == "propK") {
    for (int p : c.p_values)
      for (VectorIndex l : {VectorIndex{1, 1}, VectorIndex{1, 3}})
        for (cplx t : c.tau_values)
          add("l=(" + std::to_string(l.k1) + "," + std::to_string(l.k2) + ")," + p_tau(p, t), [=] {
            return g == "propJ" ? check_propJ(l, pt(t), p, qc) : check_propK(l, pt(t), p, qc);
          });
  } else if (g == "H1_mordell" || g == "H2_mordell") {
    for (const auto& a : mordell_alphas(c.p_values))
      for (cplx t : c.tau_values) {
        const std::string prm = vec_param(a) + "," + tau_param(t);
        if (g == "H1_mordell") {
          add(prm, [=] { return check_H1(a, pt(t), qc); });
          if (std::abs(a(0) - std::round(a(0))) > 1e-12 && std::abs(a(1) - std::round(a(1))) > 1e-12)
            add(prm + ",cot", [=] { return check_H1_cot(a, pt(t), qc); });
        } else {
          add(prm, [=] { return check_H2(a, pt(t), qc); });
        }
      }
  } else if (g == "m2_lattice") {
    for (cplx t : c.tau_values)
      if (t.real() == 0.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "v=%g,r=6", t.imag());
        add(buf, [=] { return check_m2_lattice({0.5, 1.0 / 3.0}, t.imag(), 6, qc); });
      }
  } else if (g == "asym") {
    for (int p : c.p_values)
      for (auto kind : {SeriesKind::F1, SeriesKind::F2})
        add(std::string(kind == SeriesKind::F1 ? "F1" : "F2") + ",h/k=0/1,p=" + std::to_string(p) + ",m<=1", [=] {
          return check_asym_match(kind, RootOfUnityApproach::make(0, 1, p), 1, 1e-2, qc);
        });
  } else if (g == "quantum") {
    for (int p : c.p_values)
      for (auto kind : {SeriesKind::F1, SeriesKind::F2})
        for (auto [h, k] : std::vector<std::pair<long, long>>{{0, 1}, {1, 2}, {1, 3}})
          add(std::string(kind == SeriesKind::F1 ? "F1" : "F2") + ",h/k=" + std::to_string(h) + "/" + std::to_string(k) +
                  ",p=" + std::to_string(p),
              [=] { return quantum_value(kind, h, k, p, 1e-3, qc).report; });
  }
}

int thread_count(const SuiteConfig& c, std::size_t tasks) {
  long n = c.parallelism;
  if (const char* env = std::getenv("QMF_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min(n, cap);
  }
  n = std::min<long>(n, static_cast<long>(std::max<std::size_t>(tasks, 1)));
  return static_cast<int>(std::max(1L, n));
}

}  // namespace

std::vector<IdentityReport> run_suite(const SuiteConfig& config) {
  config.validate();
  std::vector<Task> tasks;
  for (const auto& g : config.checks) add_tasks(tasks, g, config);

  std::vector<IdentityReport> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      IdentityReport r;
      try {
        r = t.run();
      } catch (const std::exception& e) {
        r.check_id = t.group;
        r.paper_anchor = "evaluation error";
        r.passed = false;
        r.abs_err = r.rel_err = std::numeric_limits<double>::infinity();
        r.notes.push_back(std::string("error: ") + e.what());
      }
      const std::string inner = r.check_id;
      r.check_id = t.group + "[" + t.params + "]";
      if (inner != t.group && !inner.empty()) r.notes.insert(r.notes.begin(), "report: " + inner);
      if (auto it = config.tolerances.find(t.group); it != config.tolerances.end()) {
        r.tol = it->second;
        r.passed = std::isfinite(r.abs_err) && (r.use_relative ? r.rel_err < r.tol : r.abs_err < r.tol);
      }
      out[i] = std::move(r);
    }
  };
  const int n = thread_count(config, tasks.size());
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::stable_sort(out.begin(), out.end(),
                   [](const IdentityReport& a, const IdentityReport& b) { return a.check_id < b.check_id; });
  return out;
}

}  // namespace qmf
