// Configuration and execution of the verification suite.
#ifndef QMF_SUITE_HPP
#define QMF_SUITE_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmf/numquad.hpp"
#include "qmf/report.hpp"

namespace qmf {

struct SuiteConfig {
  std::vector<int> p_values{2, 3};
  std::vector<cplx> tau_values{cplx(0.0, 1.0), cplx(0.1, 1.0)};
  /// Per-group tolerance overrides, keyed by group id.
  std::map<std::string, double> tolerances;
  std::vector<std::string> checks = all_check_groups();
  int parallelism = 1;

  /// Throws DomainError for Im tau <= 0, p < 2, unknown group ids or parallelism < 1.
  void validate() const;

  static std::vector<std::string> all_check_groups();
};

void to_json(nlohmann::json& j, const SuiteConfig& c);
/// Missing fields keep their defaults.
void from_json(const nlohmann::json& j, SuiteConfig& c);

/// Runs every enabled group over the configured p and tau values. Evaluation errors
/// become failed reports; the result is sorted by check_id.
std::vector<IdentityReport> run_suite(const SuiteConfig& config);

/// Parses "a+bi", "a-bi", "bi", "i" or "a".
cplx parse_complex(const std::string& s);
std::string format_complex(cplx z);

/// M2 from its contour integral against the E2 reconstruction; on the lines u2 = 0
/// and u1 = kappa u2 the reconstruction is compared with the mean of the contour
/// values at distance delta on either side.
IdentityReport check_m2_relation(double kappa, double u1, double u2, const QuadratureConfig& cfg = {});

}  // namespace qmf

#endif  // QMF_SUITE_HPP
