#pragma once

// Euler products f_k = prod_{j>=1} (1 - q^{kj}), eta-quotient formulas built
// from them, and the 8-colour partition series 1/f_1^8.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "p8q/series.hpp"

namespace p8q {

/// coeff * q^qshift * prod_k f_k^{e_k}.
struct EtaTerm {
  mpz_class coeff = 1;
  std::size_t qshift = 0;
  std::map<unsigned, int> factors;

  /// Throws std::invalid_argument on k = 0 or a zero exponent.
  void validate() const;

  friend bool operator==(const EtaTerm&, const EtaTerm&) = default;
};

/// A formal sum of eta terms; empty means zero.
struct EtaFormula {
  std::vector<EtaTerm> terms;

  friend bool operator==(const EtaFormula&, const EtaFormula&) = default;
};

/// f_1 from the pentagonal number theorem: sum_k (-1)^k q^{k(3k-1)/2}.
TruncSeries euler_f1(std::size_t order, CoeffRing ring = CoeffRing::exact_integer);
TruncSeries euler_fk(unsigned k, std::size_t order, CoeffRing ring = CoeffRing::exact_integer);

TruncSeries eval_term(const EtaTerm& term, CoeffRing ring, std::size_t order);
TruncSeries eval_formula(const EtaFormula& formula, CoeffRing ring, std::size_t order);

/// sum_n p_8(n) q^n = 1/f_1^8.
TruncSeries p8_series(CoeffRing ring, std::size_t order);

/// p_8(0..n_max) by an unbounded-knapsack count over (part size, colour)
/// pairs.  Shares no code with the series machinery.
std::vector<mpz_class> p8_oracle(std::size_t n_max);

/// Post-processing applied to the left-hand side of a registry identity
/// before comparison.
struct LhsTransform {
  enum class Kind { none, extract, even_part };
  Kind kind = Kind::none;
  unsigned modulus = 1;
  unsigned residue = 0;

  friend bool operator==(const LhsTransform&, const LhsTransform&) = default;
};

struct RegistryEntry {
  std::string tag;
  std::string description;
  EtaFormula lhs;
  LhsTransform lhs_transform;
  EtaFormula rhs;
};

/// Identities bundled from data/identities.json, in file order.
const std::vector<RegistryEntry>& formula_registry();
const RegistryEntry* find_formula(std::string_view tag);

/// Parse a registry document (the format of data/identities.json).
std::vector<RegistryEntry> parse_registry(std::string_view json_text);

/// Both sides of a registry identity at the given order.  The left side has
/// its transform applied, so the two are directly comparable.
struct IdentitySides {
  TruncSeries lhs;
  TruncSeries rhs;
};
IdentitySides eval_identity(const RegistryEntry& entry, CoeffRing ring, std::size_t order);

} // namespace p8q
