#include <doctest.h>

#include "qmf/suite.hpp"

using namespace qmf;

TEST_CASE("complex parsing and formatting") {
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("0.3+0.7i") == cplx(0.3, 0.7));
  CHECK(parse_complex("0.1-1i") == cplx(0.1, -1.0));
  CHECK(parse_complex("-1.5") == cplx(-1.5, 0.0));
  CHECK(parse_complex("1e-3+2e1i") == cplx(1e-3, 20.0));
  CHECK(parse_complex(" 0.1+i ") == cplx(0.1, 1.0));
  for (const char* bad : {"", "abc", "1+2", "1+2j", "i2", "1++2i"}) CHECK_THROWS_AS(parse_complex(bad), DomainError);
  for (cplx z : {cplx(0.1, 0.9), cplx(-2.5, 1e-3), cplx(0.0, 2.0)}) CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("report comparison semantics") {
  auto r = IdentityReport::compare("x", "a", cplx(1.0, 0.0), cplx(1.0, 1e-7), 1e-6);
  CHECK(r.passed);
  CHECK(r.abs_err == doctest::Approx(1e-7));
  r = IdentityReport::compare("x", "a", cplx(100.0, 0.0), cplx(100.001, 0.0), 1e-4, true);
  CHECK(r.passed);
  CHECK(r.abs_err == doctest::Approx(1e-3));
  CHECK_FALSE(IdentityReport::compare("x", "a", 1.0, 1.0 + 2e-6, 1e-6).passed);
}

TEST_CASE("report JSON round trip") {
  auto r = IdentityReport::compare("theta_S[1]", "theta inversion", cplx(0.25, -1.0), cplx(0.25, -1.0 + 1e-12), 1e-10);
  r.variant = "nu=1";
  r.notes = {"first", "second"};
  const nlohmann::json j = r;
  CHECK(j.at("check_id") == "theta_S[1]");
  CHECK(j.contains("runtime_ms"));
  const auto back = j.get<IdentityReport>();
  CHECK(back.lhs == r.lhs);
  CHECK(back.rhs == r.rhs);
  CHECK(back.variant == r.variant);
  CHECK(back.notes == r.notes);
  CHECK(back.passed == r.passed);
}

TEST_CASE("configuration errors") {
  SuiteConfig c;
  c.tau_values = {cplx(1.0, 0.0)};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.p_values = {1};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.checks = {"no_such_check"};
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.tolerances["theta_S"] = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.parallelism = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  CHECK_THROWS_AS(run_suite(c), DomainError);
}

TEST_CASE("configuration JSON") {
  const auto j = nlohmann::json::parse(R"({"p_values": [3], "tau_values": ["0.3+0.7i"], "checks": ["theta_S"],
                                          "tolerances": {"theta_S": 1e-9}})");
  const auto c = j.get<SuiteConfig>();
  CHECK(c.p_values == std::vector<int>{3});
  CHECK(c.tau_values == std::vector<cplx>{cplx(0.3, 0.7)});
  CHECK(c.tolerances.at("theta_S") == 1e-9);
  CHECK(c.parallelism == 1);
  const auto again = nlohmann::json(c).get<SuiteConfig>();
  CHECK(again.tau_values == c.tau_values);
  CHECK(again.checks == c.checks);
  CHECK_THROWS(nlohmann::json::parse(R"({"tau_values": ["x"]})").get<SuiteConfig>());
}

TEST_CASE("empty check list gives an empty report") {
  SuiteConfig c;
  c.checks.clear();
  CHECK(run_suite(c).empty());
}

TEST_CASE("ordering and content do not depend on parallelism") {
  SuiteConfig c;
  c.checks = {"theta_S", "errormod", "decomposition", "theta_rescale"};
  c.tau_values = {cplx(0.3, 0.7)};
  auto strip = [](std::vector<IdentityReport> rs) {
    nlohmann::json j = rs;
    for (auto& r : j) r.erase("runtime_ms");
    return j;
  };
  const auto serial = run_suite(c);
  c.parallelism = 3;
  const auto parallel = run_suite(c);
  CHECK(strip(serial) == strip(parallel));
  for (std::size_t i = 1; i < serial.size(); ++i) CHECK(serial[i - 1].check_id <= serial[i].check_id);
  for (const auto& r : serial) CHECK(r.passed);
}

TEST_CASE("tolerance overrides decide the pass flag") {
  SuiteConfig c;
  c.checks = {"theta_rescale"};
  c.p_values = {2};
  c.tau_values = {cplx(0.3, 0.7)};
  c.tolerances["theta_rescale"] = 1e-300;
  for (const auto& r : run_suite(c)) {
    CHECK(r.tol == 1e-300);
    CHECK(r.passed == (r.abs_err < r.tol));
  }
}

TEST_CASE("M2 relation on and off the degenerate lines") {
  const double k = std::sqrt(3.0);
  CHECK(check_m2_relation(k, 0.8, -0.5).passed);
  CHECK(check_m2_relation(k, 0.4, 0.0).passed);
  CHECK(check_m2_relation(k, k * 0.25, 0.25).passed);
}
