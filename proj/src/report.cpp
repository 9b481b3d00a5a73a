#include "qmf/report.hpp"

#include <algorithm>
#include <utility>

namespace qmf {

IdentityReport IdentityReport::compare(std::string id, std::string anchor, cplx lhs, cplx rhs, double tol,
                                       bool relative) {
  IdentityReport r;
  r.check_id = std::move(id);
  r.paper_anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
  r.tol = tol;
  r.use_relative = relative;
  r.passed = relative ? r.rel_err < tol : r.abs_err < tol;
  return r;
}

void to_json(nlohmann::json& j, const IdentityReport& r) {
  j = nlohmann::json{{"check_id", r.check_id},
                     {"paper_anchor", r.paper_anchor},
                     {"lhs", {r.lhs.real(), r.lhs.imag()}},
                     {"rhs", {r.rhs.real(), r.rhs.imag()}},
                     {"abs_err", r.abs_err},
                     {"rel_err", r.rel_err},
                     {"tol", r.tol},
                     {"passed", r.passed},
                     {"runtime_ms", r.runtime_ms},
                     {"variant", r.variant ? nlohmann::json(*r.variant) : nlohmann::json(nullptr)},
                     {"notes", r.notes}};
}

void from_json(const nlohmann::json& j, IdentityReport& r) {
  r.check_id = j.at("check_id").get<std::string>();
  r.paper_anchor = j.at("paper_anchor").get<std::string>();
  const auto& l = j.at("lhs");
  const auto& h = j.at("rhs");
  r.lhs = {l.at(0).get<double>(), l.at(1).get<double>()};
  r.rhs = {h.at(0).get<double>(), h.at(1).get<double>()};
  r.abs_err = j.at("abs_err").get<double>();
  r.rel_err = j.at("rel_err").get<double>();
  r.tol = j.at("tol").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  if (j.contains("variant") && !j.at("variant").is_null()) r.variant = j.at("variant").get<std::string>();
  if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
}

}  // namespace qmf
