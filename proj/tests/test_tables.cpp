#include "doctest.h"

#include <map>
#include <thread>

#include "p8q/tables.hpp"

using namespace p8q;

namespace {

mpz_class p2(unsigned e, long odd = 1)
{
  mpz_class r = odd;
  r <<= e;
  return r;
}

// Direct recursion on the defining rules with memoisation.
mpz_class m_ref(std::size_t j, std::size_t k)
{
  static std::map<std::pair<std::size_t, std::size_t>, mpz_class> memo;
  if (j == 0 || k == 0)
    return 0;
  if (j == 1)
    return k == 1 ? 8 : 0;
  if (j == 2)
    return k == 1 ? 1 : (k == 2 ? 128 : 0);
  if (k == 1)
    return 0;
  const auto key = std::make_pair(j, k);
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  mpz_class v = 16 * m_ref(j - 1, k - 1) + m_ref(j - 2, k - 1);
  memo.emplace(key, v);
  return v;
}

// Sums over a generous index range rather than the library's window.
std::vector<mpz_class> x_ref_row(unsigned alpha, std::size_t width)
{
  std::vector<mpz_class> row(width + 1, 0);
  row[1] = 8;
  for (unsigned a = 1; a < alpha; ++a) {
    std::vector<mpz_class> next(width + 1, 0);
    for (std::size_t j = 1; j <= width; ++j)
      for (std::size_t i = 1; i <= width; ++i) {
        if (row[i] == 0)
          continue;
        const std::size_t r = (a % 2 == 1) ? 3 * i : 3 * i + 1;
        next[j] += row[i] * m_ref(r, i + j);
      }
    row = std::move(next);
  }
  return row;
}

} // namespace

TEST_CASE("valuation")
{
  CHECK(v2(mpz_class(0)).is_infinite());
  CHECK(v2(mpz_class(12)).value() == 2);
  CHECK(v2(mpz_class(-8)).value() == 3);
  CHECK(v2(p2(100, 7)).value() == 100);
  CHECK(Valuation(3) < Valuation::infinite());
  CHECK(Valuation(3) < Valuation(4));
  CHECK((Valuation(3) + Valuation(4)) == Valuation(7));
  CHECK((Valuation(3) + Valuation::infinite()).is_infinite());
  CHECK(Valuation::infinite().to_string() == "inf");
  CHECK_THROWS(Valuation::infinite().value());
}

TEST_CASE("printed 8x8 window of m")
{
  const std::vector<std::vector<mpz_class>> printed{
      {p2(3), 0, 0, 0, 0, 0, 0, 0},
      {1, p2(7), 0, 0, 0, 0, 0, 0},
      {0, p2(3, 3), p2(11), 0, 0, 0, 0, 0},
      {0, 1, p2(9), p2(15), 0, 0, 0, 0},
      {0, 0, p2(3, 5), p2(11, 5), p2(19), 0, 0, 0},
      {0, 0, 1, p2(7, 9), p2(16, 3), p2(23), 0, 0},
      {0, 0, 0, p2(3, 7), p2(12, 7), p2(19, 7), p2(27), 0},
      {0, 0, 0, 1, p2(11), p2(17, 5), p2(26), p2(31)},
  };
  for (std::size_t j = 1; j <= 8; ++j)
    for (std::size_t k = 1; k <= 8; ++k) {
      CAPTURE(j);
      CAPTURE(k);
      CHECK(m_entry(j, k) == printed[j - 1][k - 1]);
    }
}

TEST_CASE("m agrees with direct recursion on a larger window")
{
  for (std::size_t j = 1; j <= 60; ++j)
    for (std::size_t k = 1; k <= 60; ++k)
      CHECK(m_entry(j, k) == m_ref(j, k));
}

TEST_CASE("independent MTable instances agree and grow on demand")
{
  MTable t;
  CHECK(t.entry(40, 25) == m_ref(40, 25));
  CHECK(t.entry(3, 2) == p2(3, 3));
  CHECK(t.entry(100, 70) == m_ref(100, 70));
}

TEST_CASE("printed rows of x")
{
  CHECK(x_entry(1, 1) == 8);
  for (std::size_t j = 2; j <= 6; ++j)
    CHECK(x_entry(1, j) == 0);
  CHECK(x_entry(2, 1) == p2(6, 3));
  CHECK(x_entry(2, 2) == p2(14));
  CHECK(x_entry(2, 3) == 0);
  CHECK(x_entry(3, 1) == p2(6, 3));
  CHECK(x_entry(3, 2) == p2(15, 31));
  CHECK(x_entry(3, 3) == p2(21, 227));
  CHECK(x_entry(3, 4) == p2(33, 7));
  CHECK(x_entry(3, 5) == p2(41));
  CHECK(x_entry(3, 6) == 0);
  CHECK(x_entry(4, 1) == p2(9, 1993));
  CHECK(x_entry(4, 2) == p2(17, 729187));
  CHECK(x_entry(4, 3) == p2(31, 265617));
  CHECK(x_entry(4, 4) == p2(38, 3070947));
}

TEST_CASE("x agrees with unwindowed sums")
{
  for (unsigned alpha = 1; alpha <= 6; ++alpha) {
    const auto row = x_ref_row(alpha, 48);
    for (std::size_t j = 1; j <= 48; ++j) {
      CAPTURE(alpha);
      CAPTURE(j);
      CHECK(x_entry(alpha, j) == row[j]);
    }
  }
}

TEST_CASE("x support bound and corner")
{
  CHECK(x_support_bound(1) == 1);
  CHECK(x_support_bound(2) == 2);
  CHECK(x_support_bound(3) == 5);
  CHECK(x_corner_value(3) == p2(41));
  for (unsigned alpha = 1; alpha <= 8; ++alpha) {
    CHECK(x_entry(alpha, x_support_bound(alpha)) == x_corner_value(alpha));
    CHECK(x_entry(alpha, x_support_bound(alpha) + 1) == 0);
  }
}

TEST_CASE("lemma checks")
{
  const auto l4 = check_lemma4(24);
  CHECK(l4.pass);
  CHECK(l4.tag == "L4");
  const auto l5 = check_lemma5(8);
  CHECK(l5.pass);
  CHECK(l5.tag == "L5");
  CHECK(check_m_structure(40).pass);
  CHECK(check_x_structure(8).pass);
}

TEST_CASE("lemma 5 equality at k = 1")
{
  for (unsigned j = 1; j <= 4; ++j) {
    CHECK(v2(x_entry(2 * j - 1, 1)).value() == 3 * j);
    CHECK(v2(x_entry(2 * j, 1)).value() == 3 * (j + 1));
  }
}

TEST_CASE("x rows outside the supported range")
{
  CHECK_THROWS(x_entry(0, 1));
  CHECK_THROWS(x_entry(XTable::max_alpha + 1, 1));
}

TEST_CASE("concurrent table reads match sequential evaluation")
{
  MTable m;
  XTable x(m);
  std::vector<std::thread> workers;
  std::vector<std::vector<mpz_class>> seen(4);
  for (std::size_t t = 0; t < 4; ++t)
    workers.emplace_back([&, t] {
      for (std::size_t j = 1; j <= 40; ++j)
        seen[t].push_back(m.entry(40 + t, j) + x.entry(static_cast<unsigned>(5 + t % 2), j));
    });
  for (auto& w : workers)
    w.join();
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t j = 1; j <= 40; ++j)
      CHECK(seen[t][j - 1] == m_ref(40 + t, j) + x_entry(static_cast<unsigned>(5 + t % 2), j));
}
