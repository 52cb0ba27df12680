#pragma once

// The integer matrices m_{j,k} and x_{alpha,j} that carry the coefficients
// of the 2-dissection recurrences, and 2-adic valuations of their entries.

#include <compare>
#include <cstddef>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "p8q/report.hpp"

namespace p8q {

/// 2-adic valuation; +infinity for zero.
class Valuation {
public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(unsigned long v) : value_(v) {}

  static constexpr Valuation infinite() { return Valuation(); }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  /// Throws std::logic_error for the infinite valuation.
  unsigned long value() const;

  std::string to_string() const;

  friend Valuation operator+(Valuation a, Valuation b);
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

private:
  std::optional<unsigned long> value_;
};

Valuation v2(const mpz_class& n);

/// m_{j,k} from
///   m_{1,1} = 8,  m_{1,k} = 0 (k >= 2),
///   m_{2,1} = 1,  m_{2,2} = 128,  m_{2,k} = 0 (k >= 3),
///   m_{j,1} = 0 (j >= 3),
///   m_{j,k} = 16 m_{j-1,k-1} + m_{j-2,k-1} (j >= 3, k >= 2).
/// Entries are computed over a growing rectangle with no structural
/// shortcuts, so the zero pattern is an observable property.
class MTable {
public:
  mpz_class entry(std::size_t j, std::size_t k);

private:
  void extend(std::size_t rows, std::size_t cols);

  std::shared_mutex mutex_;
  std::size_t cols_ = 0;
  std::vector<std::vector<mpz_class>> rows_; // rows_[j-1][k-1]
};

/// x_{alpha,j} from x_{1,1} = 8, x_{1,k} = 0 (k >= 2) and
///   x_{alpha+1,j} = sum_i x_{alpha,i} m_{3i,i+j}    (alpha odd)
///   x_{alpha+1,j} = sum_i x_{alpha,i} m_{3i+1,i+j}  (alpha even).
class XTable {
public:
  explicit XTable(MTable& m) : m_(m) {}

  mpz_class entry(unsigned alpha, std::size_t j);

  /// Columns stored for row alpha: 2^alpha - 1.  Row alpha vanishes beyond
  /// this width because m_{j,k} = 0 for k > j.
  static std::size_t stored_width(unsigned alpha);

  /// Summation window for x_{alpha+1,j}: the indices i where the m factor
  /// can be nonzero, i.e. ceil(j/2) - 1 <= i <= 2j.
  static std::pair<std::size_t, std::size_t> window(std::size_t j);

  static constexpr unsigned max_alpha = 12;

private:
  mpz_class combine(unsigned alpha, std::size_t j, const std::vector<mpz_class>& prev);
  void extend(unsigned alpha);

  MTable& m_;
  std::shared_mutex mutex_;
  std::vector<std::vector<mpz_class>> rows_; // rows_[alpha-1][j-1]
};

/// Process-wide tables shared by the free functions below.
MTable& shared_m_table();
XTable& shared_x_table();

mpz_class m_entry(std::size_t j, std::size_t k);
mpz_class x_entry(unsigned alpha, std::size_t j);

/// Right-hand limits where x_{alpha,j} is claimed to vanish and its last
/// nonzero entry: (2^{alpha+1}-2)/3 for even alpha, (2^{alpha+1}-1)/3 for odd.
std::size_t x_support_bound(unsigned alpha);
/// Claimed value of the last nonzero entry: 2^{8(2^alpha - 1) - 5 alpha}.
mpz_class x_corner_value(unsigned alpha);

/// v2(m_{j,k}) >= 4(2k - j) - 1 for 1 <= k <= j <= 2k, j <= j_max.
Report check_lemma4(std::size_t j_max);

/// v2(x_{2j-1,k}) >= 3j + 7(k-1) and v2(x_{2j,k}) >= 3(j+1) + 8(k-1) for all
/// rows up to alpha_max, with equality at k = 1.
Report check_lemma5(unsigned alpha_max);

/// Zero above the diagonal, zero below k = j/2, m_{2j,j} = 1, m_{j,j} = 2^{4j-1}.
Report check_m_structure(std::size_t j_max);

/// Vanishing beyond x_support_bound and the corner values, for alpha <= alpha_max.
Report check_x_structure(unsigned alpha_max);

} // namespace p8q
