#pragma once

// Truncated formal power series in one variable q.
//
// A TruncSeries of order N stores a_0..a_N exactly; everything from q^{N+1}
// on is unknown.  Every operation returns the largest order its inputs
// actually determine, so comparisons never read past valid data.
//
// Two coefficient rings are supported: exact integers (GMP) and Z/2^64Z.
// The second is the homomorphic image of the first, and is the fast path
// for congruence scans modulo powers of two.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace p8q {

enum class CoeffRing { exact_integer, mod2w };

/// Word width w of the Z/2^w ring.
inline constexpr unsigned ring_width = 64;

std::string to_string(CoeffRing ring);
/// Accepts "exact" and "mod64"; throws std::invalid_argument otherwise.
CoeffRing parse_ring(const std::string& name);

class SeriesError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public SeriesError {
public:
  using SeriesError::SeriesError;
};

class NotInvertible : public SeriesError {
public:
  using SeriesError::SeriesError;
};

class InexactShift : public SeriesError {
public:
  using SeriesError::SeriesError;
};

class WidthExceeded : public SeriesError {
public:
  using SeriesError::SeriesError;
};

/// Reduce an exact integer into Z/2^64Z (two's complement for negatives).
std::uint64_t reduce_mod2w(const mpz_class& value);

class TruncSeries {
public:
  using ExactCoeffs = std::vector<mpz_class>;
  using WordCoeffs = std::vector<std::uint64_t>;

  /// The zero series of the exact ring at order 0.
  TruncSeries();

  static TruncSeries zero(CoeffRing ring, std::size_t order);
  static TruncSeries one(CoeffRing ring, std::size_t order);
  /// c * q^exponent; zero if exponent > order.
  static TruncSeries monomial(CoeffRing ring, std::size_t order, std::size_t exponent,
                              const mpz_class& c = 1);
  /// Order is coeffs.size() - 1; coeffs must be nonempty.
  static TruncSeries from_coeffs(CoeffRing ring, std::span<const mpz_class> coeffs);
  static TruncSeries from_words(WordCoeffs coeffs);
  static TruncSeries from_exact(ExactCoeffs coeffs);

  CoeffRing ring() const noexcept;
  std::size_t order() const noexcept;

  /// Coefficient as an exact integer.  In the mod2w ring this is the
  /// canonical residue in [0, 2^64).
  mpz_class coeff(std::size_t n) const;
  /// Coefficient reduced mod 2^64.
  std::uint64_t coeff_mod2w(std::size_t n) const;
  bool coeff_is_zero(std::size_t n) const;

  const ExactCoeffs& exact_coeffs() const;
  const WordCoeffs& word_coeffs() const;

  /// Drop coefficients above new_order (which must not exceed order()).
  TruncSeries truncated(std::size_t new_order) const;
  /// Image in another ring.  exact -> mod2w reduces; mod2w -> exact throws.
  TruncSeries to_ring(CoeffRing target) const;

  std::string to_string(std::size_t max_terms = 12) const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

private:
  explicit TruncSeries(std::variant<ExactCoeffs, WordCoeffs> coeffs);

  std::variant<ExactCoeffs, WordCoeffs> coeffs_;
};

TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries negate(const TruncSeries& a);
TruncSeries scale(const TruncSeries& a, const mpz_class& c);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries square(const TruncSeries& a);

/// Multiplicative inverse; the constant term must be a unit (+-1 exact, odd mod 2^64).
TruncSeries invert(const TruncSeries& a);

/// a^e by binary exponentiation; negative e inverts first.
TruncSeries pow(const TruncSeries& a, long e);

/// a(q^k).  Default order is k*(N+1) - 1, the largest index a determines;
/// a smaller cap may be requested.
TruncSeries substitute_power(const TruncSeries& a, unsigned k,
                             std::optional<std::size_t> order = std::nullopt);

/// Multiply by q^s.  For s < 0 the low |s| coefficients must vanish.
TruncSeries shift(const TruncSeries& a, long s);

/// Keep even-index coefficients in place and zero the odd ones.
TruncSeries huff_even(const TruncSeries& a);

/// sum_n a_{m n + r} q^n, of order floor((N - r) / m).  Requires r < m and r <= N.
TruncSeries extract_ap(const TruncSeries& a, unsigned m, unsigned r);

struct Divisibility {
  bool divisible = true;
  std::optional<std::size_t> first_failure;
};

/// Whether every represented coefficient is divisible by 2^e.
Divisibility divisible_by_2pow(const TruncSeries& a, unsigned e);

/// Smallest index, within the common order, at which a and b differ.
std::optional<std::size_t> first_mismatch(const TruncSeries& a, const TruncSeries& b);
/// Same, but comparing modulo 2^e.
std::optional<std::size_t> first_mismatch_mod2pow(const TruncSeries& a, const TruncSeries& b,
                                                  unsigned e);

inline TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) { return add(a, b); }
inline TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return sub(a, b); }
inline TruncSeries operator-(const TruncSeries& a) { return negate(a); }
inline TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }
inline TruncSeries operator*(const mpz_class& c, const TruncSeries& a) { return scale(a, c); }

} // namespace p8q
