#ifndef QMF_REPORT_HPP
#define QMF_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmf/numquad.hpp"

namespace qmf {

/// Outcome of one identity check. `passed` is derived from the errors and the
/// tolerance; `abs_err` is always |lhs - rhs|.
struct IdentityReport {
  std::string check_id;
  std::string paper_anchor;
  cplx lhs{};
  cplx rhs{};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool use_relative = false;
  bool passed = false;
  std::int64_t runtime_ms = 0;
  std::optional<std::string> variant;
  /// Free-form remarks (editorial notes, error messages, alternative residuals).
  std::vector<std::string> notes;

  /// Builds a report with errors and pass flag filled in.
  static IdentityReport compare(std::string id, std::string anchor, cplx lhs, cplx rhs, double tol,
                                bool relative = false);
};

void to_json(nlohmann::json& j, const IdentityReport& r);
void from_json(const nlohmann::json& j, IdentityReport& r);

}  // namespace qmf

#endif  // QMF_REPORT_HPP
