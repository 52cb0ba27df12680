#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"

#include "p8q/series.hpp"

namespace p8q {

enum class CheckMode { exact_equality, congruence, valuation_bound };

/// Outcome of one verification case.
struct Report {
  std::string tag;
  std::size_t order = 0;
  CheckMode mode = CheckMode::exact_equality;
  unsigned mod_exponent = 0; // meaningful for CheckMode::congruence
  CoeffRing ring = CoeffRing::exact_integer;
  bool pass = true;
  std::optional<std::size_t> first_fail_index;
  std::optional<std::string> lhs_coeff;
  std::optional<std::string> rhs_coeff;
  std::optional<std::string> detail;

  friend bool operator==(const Report&, const Report&) = default;
};

/// "exact", "mod2^e" or "valuation".
std::string mode_string(const Report& r);

/// One-line human-readable rendering.
std::string to_text(const Report& r);

bool all_pass(std::span<const Report> reports);

/// lhs == rhs over their common order.
Report equality_report(std::string tag, const TruncSeries& lhs, const TruncSeries& rhs);
/// lhs == rhs mod 2^e over their common order.
Report congruence_report(std::string tag, const TruncSeries& lhs, const TruncSeries& rhs,
                         unsigned e);

void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

} // namespace p8q
