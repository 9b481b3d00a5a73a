#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmf/eichler.hpp"
#include "qmf/mordell.hpp"
#include "qmf/qexact.hpp"
#include "qmf/suite.hpp"

using namespace qmf;

namespace {

struct VerifyArgs {
  std::string config_file;
  std::vector<std::string> checks;
  std::vector<int> p_values;
  std::vector<std::string> taus;
  double tol = 0.0;
  std::string json_out;
};

struct SeriesArgs {
  std::string kind;
  int p = 2;
  int j = 1;
  int s1 = 0, s2 = 0;
  std::string order = "20";
  std::string out;
};

struct EvalArgs {
  std::string what;
  std::vector<double> alpha;
  std::string tau = "i";
  std::string z = "0";
  int p = 2;
  int j = 1;
};

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw DomainError("cannot parse rational '" + s + "'");
  }
}

int run_verify(const VerifyArgs& a) {
  SuiteConfig cfg;
  if (!a.config_file.empty()) {
    std::ifstream in(a.config_file);
    if (!in) throw DomainError("cannot open config file '" + a.config_file + "'");
    cfg = nlohmann::json::parse(in).get<SuiteConfig>();
  }
  if (!a.checks.empty()) cfg.checks = a.checks;
  if (!a.p_values.empty()) cfg.p_values = a.p_values;
  if (!a.taus.empty()) {
    cfg.tau_values.clear();
    for (const auto& t : a.taus) cfg.tau_values.push_back(parse_complex(t));
  }
  if (a.tol > 0.0)
    for (const auto& c : cfg.checks) cfg.tolerances[c] = a.tol;
  cfg.parallelism = std::max(1u, std::thread::hardware_concurrency());
  cfg.validate();

  const auto reports = run_suite(cfg);
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed;
    std::printf("%-4s %-60s err=%.3e tol=%.1e %s\n", r.passed ? "PASS" : "FAIL", r.check_id.c_str(),
                r.use_relative ? r.rel_err : r.abs_err, r.tol, r.variant.value_or("").c_str());
  }
  std::printf("%zu checks, %s\n", reports.size(), all ? "all passed" : "failures present");
  if (!a.json_out.empty()) {
    const std::string text = nlohmann::json(reports).dump(2) + "\n";
    if (a.json_out == "-") {
      std::cout << text;
    } else {
      std::ofstream out(a.json_out);
      if (!out) throw DomainError("cannot write '" + a.json_out + "'");
      out << text;
    }
  }
  return all ? 0 : 1;
}

int run_series(const SeriesArgs& a) {
  const Rational order = parse_rational(a.order);
  RationalQSeries s = [&] {
    if (a.kind == "F") return series_F(a.p, order);
    if (a.kind == "F1") return series_F1(a.p, order);
    if (a.kind == "F2") return series_F2(a.p, order);
    if (a.kind == "Fjp") return series_Fjp(a.j, a.p, order);
    if (a.kind == "Fs1s2") return series_Fs1s2(a.s1, a.s2, a.p, order);
    throw DomainError("unknown series kind '" + a.kind + "'");
  }();
  const std::string text = s.serialize();
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out);
    if (!out) throw DomainError("cannot write '" + a.out + "'");
    out << text;
  }
  return 0;
}

int run_eval(const EvalArgs& a) {
  const UpperHalfPoint tau(parse_complex(a.tau));
  auto alpha = [&] {
    if (a.alpha.size() != 2) throw DomainError("--alpha needs two components");
    return Eigen::Vector2d(a.alpha[0], a.alpha[1]);
  };
  cplx v;
  if (a.what == "H1")
    v = H1_eichler(alpha(), tau);
  else if (a.what == "H1m")
    v = H1_mordell(alpha(), tau);
  else if (a.what == "H2")
    v = H2_eichler(alpha(), tau);
  else if (a.what == "H2m")
    v = H2_mordell(alpha(), tau);
  else if (a.what == "E1")
    v = calE(1, tau, a.p, true);
  else if (a.what == "E2")
    v = calE(2, tau, a.p, true);
  else if (a.what == "h")
    v = classical_h(parse_complex(a.z), tau);
  else if (a.what == "mordell1d")
    v = mordell_1d(a.j, a.p, tau);
  else
    throw DomainError("unknown evaluation '" + a.what + "'");
  std::printf("%.17g %.17g\n", v.real(), v.imag());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-two false theta functions, Eichler and Mordell integrals"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--config", va.config_file, "JSON configuration file");
  verify->add_option("--check", va.checks, "check group to run (repeatable)");
  verify->add_option("--p", va.p_values, "value of p (repeatable)");
  verify->add_option("--tau", va.taus, "tau as RE+IMi (repeatable)");
  verify->add_option("--tol", va.tol, "tolerance override for every selected group");
  verify->add_option("--json", va.json_out, "write the JSON report to this file, '-' for stdout");

  SeriesArgs sa;
  auto* series = app.add_subcommand("series", "export an exact q-series");
  series->add_option("kind", sa.kind, "F, F1, F2, Fjp or Fs1s2")->required();
  series->add_option("--p", sa.p)->required();
  series->add_option("--j", sa.j);
  series->add_option("--s1", sa.s1);
  series->add_option("--s2", sa.s2);
  series->add_option("--order", sa.order, "truncation order, integer or a/b")->required();
  series->add_option("--out", sa.out);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate one function, printing RE IM");
  eval->add_option("what", ea.what, "H1, H1m, H2, H2m, E1, E2, h or mordell1d")->required();
  eval->add_option("--alpha", ea.alpha)->expected(2)->delimiter(',');
  eval->add_option("--tau", ea.tau);
  eval->add_option("--z", ea.z);
  eval->add_option("--p", ea.p);
  eval->add_option("--j", ea.j);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*verify) return run_verify(va);
    if (*series) return run_series(sa);
    if (*eval) return run_eval(ea);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
