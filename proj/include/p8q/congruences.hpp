#pragma once

// Finite scans of the nine Ramanujan-type congruence families for p_8,
// p_8(step * n + residue) == 0 mod 2^e.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "p8q/series.hpp"
#include "p8q/tables.hpp"

namespace p8q {

/// n = k(3k-1)/2 for some integer k, i.e. 24n + 1 is a perfect square.
bool is_gen_pentagonal(std::uint64_t n);

struct CongruenceClaim {
  std::string id;
  unsigned alpha = 1;
  std::uint64_t step = 1;
  std::uint64_t residue = 0;
  unsigned mod_exponent = 0;
  bool pentagonal_exception = false;

  std::uint64_t argument(std::uint64_t n) const { return step * n + residue; }
  bool excludes(std::uint64_t n) const { return pentagonal_exception && is_gen_pentagonal(n); }
};

/// Family ids in scan order: E094 (alpha-independent), E095 ... E102.
const std::vector<std::string>& family_ids();

/// One family at one alpha.  Throws std::invalid_argument for an unknown id
/// or alpha outside [1, 29].
CongruenceClaim make_claim(std::string_view id, unsigned alpha);

/// All nine families at alpha; E094 appears once.
std::vector<CongruenceClaim> claims_for(unsigned alpha);

class OrderOverflow : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  CoeffRing ring = CoeffRing::mod2w;
  bool apply_exceptions = true;
  /// Largest p_8 index the scan may compute.
  std::size_t max_order = std::size_t{1} << 20;
};

struct Counterexample {
  std::uint64_t n = 0;
  std::uint64_t argument = 0;
  Valuation v2; // from an exact recomputation of p_8(argument)

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/// 2-adic valuation observed at an excluded index.  In the mod 2^64 ring a
/// residue of zero only certifies v2 >= 64, flagged by exact = false.
struct SkippedValuation {
  unsigned v2 = 0;
  bool exact = true;

  friend bool operator==(const SkippedValuation&, const SkippedValuation&) = default;
};

struct ScanResult {
  std::string id;
  unsigned alpha = 1;
  std::uint64_t step = 1;
  std::uint64_t residue = 0;
  unsigned mod_exponent = 0;
  CoeffRing ring = CoeffRing::mod2w;
  std::uint64_t n_max = 0;           // effective range scanned
  std::uint64_t n_max_requested = 0;
  bool pass = true;
  std::optional<Counterexample> counterexample;
  std::vector<std::uint64_t> skipped;
  std::vector<SkippedValuation> skipped_v2;
  std::optional<std::string> notice;

  friend bool operator==(const ScanResult&, const ScanResult&) = default;
};

/// Scan n = 0..n_max with a freshly computed p_8 prefix.
ScanResult scan_claim(const CongruenceClaim& claim, std::uint64_t n_max,
                      const ScanOptions& options = {});

/// Scan against a precomputed p_8 prefix (in options.ring).  If the prefix
/// is too short the range shrinks and the result carries a notice.
ScanResult scan_claim(const CongruenceClaim& claim, std::uint64_t n_max, const TruncSeries& p8,
                      const ScanOptions& options);

/// Every family at every alpha <= alpha_max, sharing one p_8 prefix.
/// Results are ordered by alpha, then family.
std::vector<ScanResult> scan_all(unsigned alpha_max, std::uint64_t n_max,
                                 const ScanOptions& options = {});

std::string to_text(const ScanResult& r);

void to_json(nlohmann::json& j, const ScanResult& r);
void from_json(const nlohmann::json& j, ScanResult& r);

} // namespace p8q
