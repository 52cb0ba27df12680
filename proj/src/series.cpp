#include "p8q/series.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>
#include <utility>

namespace p8q {

namespace {

using ExactCoeffs = TruncSeries::ExactCoeffs;
using WordCoeffs = TruncSeries::WordCoeffs;

bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
bool is_zero(std::uint64_t x) { return x == 0; }

void require_same_ring(const TruncSeries& a, const TruncSeries& b, const char* op)
{
  if (a.ring() != b.ring())
    throw RingMismatch(std::string(op) + ": operands live in different coefficient rings ("
                       + to_string(a.ring()) + " vs " + to_string(b.ring()) + ")");
}

// Apply f to the coefficient vectors of a and b, which must share a ring.
template <typename F>
TruncSeries visit_pair(const TruncSeries& a, const TruncSeries& b, F&& f)
{
  if (a.ring() == CoeffRing::exact_integer)
    return TruncSeries::from_exact(f(a.exact_coeffs(), b.exact_coeffs()));
  return TruncSeries::from_words(f(a.word_coeffs(), b.word_coeffs()));
}

template <typename F>
TruncSeries visit_one(const TruncSeries& a, F&& f)
{
  if (a.ring() == CoeffRing::exact_integer)
    return TruncSeries::from_exact(f(a.exact_coeffs()));
  return TruncSeries::from_words(f(a.word_coeffs()));
}

template <typename C>
std::vector<std::size_t> support(const std::vector<C>& a, std::size_t order)
{
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i <= order; ++i)
    if (!is_zero(a[i]))
      nz.push_back(i);
  return nz;
}

template <typename C>
void addmul(C& acc, const C& x, const C& y)
{
  if constexpr (std::is_same_v<C, mpz_class>)
    mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  else
    acc += x * y;
}

// Schoolbook Cauchy product to the given order.  The outer loop runs over
// the sparser operand so products with f_k stay cheap.
template <typename C>
std::vector<C> convolve(const std::vector<C>& a, const std::vector<C>& b, std::size_t order)
{
  auto sa = support(a, order);
  auto sb = support(b, order);
  const std::vector<C>* outer = &a;
  const std::vector<C>* inner = &b;
  if (sb.size() < sa.size()) {
    std::swap(outer, inner);
    std::swap(sa, sb);
  }
  std::vector<C> c(order + 1);
  if constexpr (std::is_same_v<C, mpz_class>) {
    for (std::size_t i : sa)
      for (std::size_t j : sb) {
        if (i + j > order)
          break;
        addmul(c[i + j], (*outer)[i], (*inner)[j]);
      }
  } else {
    // Dense inner loop vectorizes; zeros are cheaper to multiply than to test.
    for (std::size_t i : sa) {
      const C ai = (*outer)[i];
      const C* bj = inner->data();
      C* ci = c.data() + i;
      const std::size_t len = order - i + 1;
      for (std::size_t j = 0; j < len; ++j)
        ci[j] += ai * bj[j];
    }
  }
  return c;
}

template <typename C>
std::vector<C> self_convolve(const std::vector<C>& a, std::size_t order)
{
  std::vector<C> c(order + 1);
  if constexpr (std::is_same_v<C, mpz_class>) {
    auto sa = support(a, order);
    for (std::size_t x = 0; x < sa.size(); ++x) {
      const std::size_t i = sa[x];
      if (2 * i > order)
        break;
      for (std::size_t y = x + 1; y < sa.size(); ++y) {
        const std::size_t j = sa[y];
        if (i + j > order)
          break;
        addmul(c[i + j], a[i], a[j]);
      }
    }
    for (auto& v : c)
      v *= 2;
    for (std::size_t i : sa) {
      if (2 * i > order)
        break;
      addmul(c[2 * i], a[i], a[i]);
    }
  } else {
    for (std::size_t i = 0; 2 * i <= order; ++i) {
      const C ai = a[i];
      if (ai == 0)
        continue;
      C* ci = c.data() + i;
      for (std::size_t j = i + 1; i + j <= order; ++j)
        ci[j] += ai * a[j];
    }
    for (auto& v : c)
      v *= 2;
    for (std::size_t i = 0; 2 * i <= order; ++i)
      c[2 * i] += a[i] * a[i];
  }
  return c;
}

// Inverse of an odd word mod 2^64 by Newton iteration.
std::uint64_t word_inverse(std::uint64_t a)
{
  std::uint64_t x = a; // correct to 3 bits for odd a
  for (int i = 0; i < 5; ++i)
    x *= 2 - a * x;
  return x;
}

template <typename C>
std::vector<C> invert_coeffs(const std::vector<C>& a)
{
  const std::size_t order = a.size() - 1;
  C inv0;
  if constexpr (std::is_same_v<C, mpz_class>) {
    if (a[0] != 1 && a[0] != -1)
      throw NotInvertible("invert: constant term " + a[0].get_str() + " is not a unit");
    inv0 = a[0];
  } else {
    if ((a[0] & 1u) == 0)
      throw NotInvertible("invert: constant term is even in Z/2^64");
    inv0 = word_inverse(a[0]);
  }
  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k <= order; ++k)
    if (!is_zero(a[k]))
      nz.push_back(k);

  std::vector<C> b(order + 1);
  b[0] = inv0;
  C s;
  for (std::size_t n = 1; n <= order; ++n) {
    s = 0;
    for (std::size_t k : nz) {
      if (k > n)
        break;
      addmul(s, a[k], b[n - k]);
    }
    if constexpr (std::is_same_v<C, mpz_class>) {
      b[n] = -inv0 * s;
    } else {
      b[n] = (0 - inv0) * s;
    }
  }
  return b;
}

template <typename C>
void append_term(std::ostringstream& os, bool& first, const C& c, std::size_t n)
{
  mpz_class v(0);
  if constexpr (std::is_same_v<C, mpz_class>)
    v = c;
  else
    v = mpz_class(std::to_string(c));
  const bool negative = sgn(v) < 0;
  if (negative)
    v = -v;
  if (first)
    os << (negative ? "-" : "");
  else
    os << (negative ? " - " : " + ");
  first = false;
  if (n == 0 || v != 1)
    os << v.get_str();
  if (n > 0) {
    if (v != 1)
      os << "*";
    os << "q";
    if (n > 1)
      os << "^" << n;
  }
}

} // namespace

std::string to_string(CoeffRing ring)
{
  return ring == CoeffRing::exact_integer ? "exact" : "mod64";
}

CoeffRing parse_ring(const std::string& name)
{
  if (name == "exact")
    return CoeffRing::exact_integer;
  if (name == "mod64")
    return CoeffRing::mod2w;
  throw std::invalid_argument("unknown coefficient ring '" + name + "' (expected exact or mod64)");
}

std::uint64_t reduce_mod2w(const mpz_class& value)
{
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), value.get_mpz_t(), ring_width);
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_get_ui(r.get_mpz_t());
}

TruncSeries::TruncSeries() : coeffs_(ExactCoeffs(1)) {}

TruncSeries::TruncSeries(std::variant<ExactCoeffs, WordCoeffs> coeffs) : coeffs_(std::move(coeffs))
{
  std::visit(
      [](const auto& v) {
        if (v.empty())
          throw SeriesError("a truncated series needs at least one coefficient");
      },
      coeffs_);
}

TruncSeries TruncSeries::zero(CoeffRing ring, std::size_t order)
{
  if (ring == CoeffRing::exact_integer)
    return TruncSeries(ExactCoeffs(order + 1));
  return TruncSeries(WordCoeffs(order + 1, 0));
}

TruncSeries TruncSeries::one(CoeffRing ring, std::size_t order)
{
  return monomial(ring, order, 0, 1);
}

TruncSeries TruncSeries::monomial(CoeffRing ring, std::size_t order, std::size_t exponent,
                                  const mpz_class& c)
{
  if (ring == CoeffRing::exact_integer) {
    ExactCoeffs v(order + 1);
    if (exponent <= order)
      v[exponent] = c;
    return TruncSeries(std::move(v));
  }
  WordCoeffs v(order + 1, 0);
  if (exponent <= order)
    v[exponent] = reduce_mod2w(c);
  return TruncSeries(std::move(v));
}

TruncSeries TruncSeries::from_coeffs(CoeffRing ring, std::span<const mpz_class> coeffs)
{
  if (ring == CoeffRing::exact_integer)
    return TruncSeries(ExactCoeffs(coeffs.begin(), coeffs.end()));
  WordCoeffs v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs)
    v.push_back(reduce_mod2w(c));
  return TruncSeries(std::move(v));
}

TruncSeries TruncSeries::from_words(WordCoeffs coeffs) { return TruncSeries(std::move(coeffs)); }

TruncSeries TruncSeries::from_exact(ExactCoeffs coeffs) { return TruncSeries(std::move(coeffs)); }

CoeffRing TruncSeries::ring() const noexcept
{
  return std::holds_alternative<ExactCoeffs>(coeffs_) ? CoeffRing::exact_integer : CoeffRing::mod2w;
}

std::size_t TruncSeries::order() const noexcept
{
  return std::visit([](const auto& v) { return v.size() - 1; }, coeffs_);
}

mpz_class TruncSeries::coeff(std::size_t n) const
{
  if (n > order())
    throw std::out_of_range("coefficient index " + std::to_string(n) + " beyond order "
                            + std::to_string(order()));
  if (const auto* e = std::get_if<ExactCoeffs>(&coeffs_))
    return (*e)[n];
  return mpz_class(std::to_string(std::get<WordCoeffs>(coeffs_)[n]));
}

std::uint64_t TruncSeries::coeff_mod2w(std::size_t n) const
{
  if (n > order())
    throw std::out_of_range("coefficient index " + std::to_string(n) + " beyond order "
                            + std::to_string(order()));
  if (const auto* e = std::get_if<ExactCoeffs>(&coeffs_))
    return reduce_mod2w((*e)[n]);
  return std::get<WordCoeffs>(coeffs_)[n];
}

bool TruncSeries::coeff_is_zero(std::size_t n) const
{
  return std::visit([n](const auto& v) { return is_zero(v.at(n)); }, coeffs_);
}

const ExactCoeffs& TruncSeries::exact_coeffs() const
{
  if (const auto* e = std::get_if<ExactCoeffs>(&coeffs_))
    return *e;
  throw RingMismatch("series is not over the exact integers");
}

const WordCoeffs& TruncSeries::word_coeffs() const
{
  if (const auto* w = std::get_if<WordCoeffs>(&coeffs_))
    return *w;
  throw RingMismatch("series is not over Z/2^64");
}

TruncSeries TruncSeries::truncated(std::size_t new_order) const
{
  if (new_order > order())
    throw SeriesError("cannot extend a series from order " + std::to_string(order()) + " to "
                      + std::to_string(new_order));
  return visit_one(*this, [new_order](const auto& v) {
    return std::decay_t<decltype(v)>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(new_order + 1));
  });
}

TruncSeries TruncSeries::to_ring(CoeffRing target) const
{
  if (target == ring())
    return *this;
  if (target == CoeffRing::exact_integer)
    throw RingMismatch("a Z/2^64 series has no canonical exact lift");
  return from_coeffs(CoeffRing::mod2w, exact_coeffs());
}

std::string TruncSeries::to_string(std::size_t max_terms) const
{
  std::ostringstream os;
  bool first = true;
  std::size_t shown = 0;
  std::visit(
      [&](const auto& v) {
        for (std::size_t n = 0; n < v.size() && shown < max_terms; ++n) {
          if (is_zero(v[n]))
            continue;
          append_term(os, first, v[n], n);
          ++shown;
        }
      },
      coeffs_);
  if (first)
    os << "0";
  os << " + O(q^" << order() + 1 << ")";
  return os.str();
}

bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

TruncSeries add(const TruncSeries& a, const TruncSeries& b)
{
  require_same_ring(a, b, "add");
  const std::size_t order = std::min(a.order(), b.order());
  return visit_pair(a, b, [order](const auto& x, const auto& y) {
    std::decay_t<decltype(x)> c(order + 1);
    for (std::size_t n = 0; n <= order; ++n)
      c[n] = x[n] + y[n];
    return c;
  });
}

TruncSeries sub(const TruncSeries& a, const TruncSeries& b)
{
  require_same_ring(a, b, "sub");
  const std::size_t order = std::min(a.order(), b.order());
  return visit_pair(a, b, [order](const auto& x, const auto& y) {
    std::decay_t<decltype(x)> c(order + 1);
    for (std::size_t n = 0; n <= order; ++n)
      c[n] = x[n] - y[n];
    return c;
  });
}

TruncSeries negate(const TruncSeries& a)
{
  return visit_one(a, [](const auto& x) {
    auto c = x;
    for (auto& v : c)
      v = 0 - v;
    return c;
  });
}

TruncSeries scale(const TruncSeries& a, const mpz_class& c)
{
  if (a.ring() == CoeffRing::exact_integer) {
    auto v = a.exact_coeffs();
    for (auto& x : v)
      x *= c;
    return TruncSeries::from_exact(std::move(v));
  }
  const std::uint64_t w = reduce_mod2w(c);
  auto v = a.word_coeffs();
  for (auto& x : v)
    x *= w;
  return TruncSeries::from_words(std::move(v));
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b)
{
  require_same_ring(a, b, "mul");
  const std::size_t order = std::min(a.order(), b.order());
  return visit_pair(a, b, [order](const auto& x, const auto& y) { return convolve(x, y, order); });
}

TruncSeries square(const TruncSeries& a)
{
  return visit_one(a, [&a](const auto& x) { return self_convolve(x, a.order()); });
}

TruncSeries invert(const TruncSeries& a)
{
  return visit_one(a, [](const auto& x) { return invert_coeffs(x); });
}

TruncSeries pow(const TruncSeries& a, long e)
{
  if (e == 0)
    return TruncSeries::one(a.ring(), a.order());
  TruncSeries base = e < 0 ? invert(a) : a;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
  std::optional<TruncSeries> result;
  while (true) {
    if (n & 1u)
      result = result ? mul(*result, base) : base;
    n >>= 1;
    if (n == 0)
      break;
    base = square(base);
  }
  return *result;
}

TruncSeries substitute_power(const TruncSeries& a, unsigned k, std::optional<std::size_t> order)
{
  if (k == 0)
    throw std::invalid_argument("substitute_power: k must be positive");
  const std::size_t natural = k * (a.order() + 1) - 1;
  const std::size_t target = order ? std::min(*order, natural) : natural;
  return visit_one(a, [&](const auto& x) {
    std::decay_t<decltype(x)> c(target + 1);
    for (std::size_t n = 0; n * k <= target; ++n)
      c[n * k] = x[n];
    return c;
  });
}

TruncSeries shift(const TruncSeries& a, long s)
{
  if (s >= 0) {
    const auto t = static_cast<std::size_t>(s);
    return visit_one(a, [t](const auto& x) {
      std::decay_t<decltype(x)> c(x.size() + t);
      std::copy(x.begin(), x.end(), c.begin() + static_cast<std::ptrdiff_t>(t));
      return c;
    });
  }
  const auto t = static_cast<std::size_t>(-s);
  if (t > a.order())
    throw SeriesError("shift: dividing by q^" + std::to_string(t) + " leaves no known coefficients");
  for (std::size_t n = 0; n < t; ++n)
    if (!a.coeff_is_zero(n))
      throw InexactShift("shift: division by q^" + std::to_string(t)
                         + " is inexact (coefficient of q^" + std::to_string(n) + " is nonzero)");
  return visit_one(a, [t](const auto& x) {
    return std::decay_t<decltype(x)>(x.begin() + static_cast<std::ptrdiff_t>(t), x.end());
  });
}

TruncSeries huff_even(const TruncSeries& a)
{
  return visit_one(a, [](const auto& x) {
    auto c = x;
    for (std::size_t n = 1; n < c.size(); n += 2)
      c[n] = 0;
    return c;
  });
}

TruncSeries extract_ap(const TruncSeries& a, unsigned m, unsigned r)
{
  if (m == 0 || r >= m)
    throw std::invalid_argument("extract_ap: need 0 <= r < m");
  if (r > a.order())
    throw SeriesError("extract_ap: residue " + std::to_string(r) + " exceeds order "
                      + std::to_string(a.order()));
  const std::size_t order = (a.order() - r) / m;
  return visit_one(a, [&](const auto& x) {
    std::decay_t<decltype(x)> c(order + 1);
    for (std::size_t n = 0; n <= order; ++n)
      c[n] = x[m * n + r];
    return c;
  });
}

Divisibility divisible_by_2pow(const TruncSeries& a, unsigned e)
{
  if (a.ring() == CoeffRing::exact_integer) {
    const auto& v = a.exact_coeffs();
    for (std::size_t n = 0; n < v.size(); ++n)
      if (!mpz_divisible_2exp_p(v[n].get_mpz_t(), e))
        return {false, n};
    return {};
  }
  if (e > ring_width)
    throw WidthExceeded("divisible_by_2pow: 2^" + std::to_string(e) + " exceeds the ring modulus 2^64");
  const std::uint64_t mask = e == ring_width ? ~std::uint64_t{0} : (std::uint64_t{1} << e) - 1;
  const auto& v = a.word_coeffs();
  for (std::size_t n = 0; n < v.size(); ++n)
    if (v[n] & mask)
      return {false, n};
  return {};
}

std::optional<std::size_t> first_mismatch(const TruncSeries& a, const TruncSeries& b)
{
  require_same_ring(a, b, "compare");
  const std::size_t order = std::min(a.order(), b.order());
  if (a.ring() == CoeffRing::exact_integer) {
    const auto& x = a.exact_coeffs();
    const auto& y = b.exact_coeffs();
    for (std::size_t n = 0; n <= order; ++n)
      if (x[n] != y[n])
        return n;
    return std::nullopt;
  }
  const auto& x = a.word_coeffs();
  const auto& y = b.word_coeffs();
  for (std::size_t n = 0; n <= order; ++n)
    if (x[n] != y[n])
      return n;
  return std::nullopt;
}

std::optional<std::size_t> first_mismatch_mod2pow(const TruncSeries& a, const TruncSeries& b,
                                                  unsigned e)
{
  require_same_ring(a, b, "compare");
  return divisible_by_2pow(sub(a, b), e).first_failure;
}

} // namespace p8q
