#include "p8q/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace p8q {

namespace {

Report compare(std::string tag, const TruncSeries& lhs, const TruncSeries& rhs,
               std::optional<unsigned> e)
{
  Report r;
  r.tag = std::move(tag);
  r.order = std::min(lhs.order(), rhs.order());
  r.ring = lhs.ring();
  if (e) {
    r.mode = CheckMode::congruence;
    r.mod_exponent = *e;
  }
  const auto bad = e ? first_mismatch_mod2pow(lhs, rhs, *e) : first_mismatch(lhs, rhs);
  if (bad) {
    r.pass = false;
    r.first_fail_index = *bad;
    r.lhs_coeff = lhs.coeff(*bad).get_str();
    r.rhs_coeff = rhs.coeff(*bad).get_str();
  }
  return r;
}

} // namespace

std::string mode_string(const Report& r)
{
  switch (r.mode) {
  case CheckMode::exact_equality:
    return "exact";
  case CheckMode::congruence:
    return "mod2^" + std::to_string(r.mod_exponent);
  case CheckMode::valuation_bound:
    return "valuation";
  }
  return "exact";
}

std::string to_text(const Report& r)
{
  std::string s = (r.pass ? "PASS " : "FAIL ") + r.tag + "  order=" + std::to_string(r.order)
                  + "  mode=" + mode_string(r) + "  ring=" + to_string(r.ring);
  if (r.first_fail_index)
    s += "  first_fail_index=" + std::to_string(*r.first_fail_index);
  if (r.lhs_coeff)
    s += "  lhs=" + *r.lhs_coeff;
  if (r.rhs_coeff)
    s += "  rhs=" + *r.rhs_coeff;
  if (r.detail)
    s += "  (" + *r.detail + ")";
  return s;
}

bool all_pass(std::span<const Report> reports)
{
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass; });
}

Report equality_report(std::string tag, const TruncSeries& lhs, const TruncSeries& rhs)
{
  return compare(std::move(tag), lhs, rhs, std::nullopt);
}

Report congruence_report(std::string tag, const TruncSeries& lhs, const TruncSeries& rhs,
                         unsigned e)
{
  return compare(std::move(tag), lhs, rhs, e);
}

void to_json(nlohmann::json& j, const Report& r)
{
  j = nlohmann::json{{"tag", r.tag},
                     {"order", r.order},
                     {"mode", mode_string(r)},
                     {"ring", to_string(r.ring)},
                     {"pass", r.pass}};
  if (r.first_fail_index)
    j["first_fail_index"] = *r.first_fail_index;
  if (r.lhs_coeff)
    j["lhs_coeff"] = *r.lhs_coeff;
  if (r.rhs_coeff)
    j["rhs_coeff"] = *r.rhs_coeff;
  if (r.detail)
    j["detail"] = *r.detail;
}

void from_json(const nlohmann::json& j, Report& r)
{
  r = Report{};
  r.tag = j.at("tag").get<std::string>();
  r.order = j.at("order").get<std::size_t>();
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "exact") {
    r.mode = CheckMode::exact_equality;
  } else if (mode == "valuation") {
    r.mode = CheckMode::valuation_bound;
  } else if (mode.rfind("mod2^", 0) == 0) {
    r.mode = CheckMode::congruence;
    r.mod_exponent = static_cast<unsigned>(std::stoul(mode.substr(5)));
  } else {
    throw std::invalid_argument("report: unknown mode '" + mode + "'");
  }
  r.ring = parse_ring(j.value("ring", std::string("exact")));
  r.pass = j.at("pass").get<bool>();
  if (j.contains("first_fail_index"))
    r.first_fail_index = j.at("first_fail_index").get<std::size_t>();
  if (j.contains("lhs_coeff"))
    r.lhs_coeff = j.at("lhs_coeff").get<std::string>();
  if (j.contains("rhs_coeff"))
    r.rhs_coeff = j.at("rhs_coeff").get<std::string>();
  if (j.contains("detail"))
    r.detail = j.at("detail").get<std::string>();
}

} // namespace p8q
