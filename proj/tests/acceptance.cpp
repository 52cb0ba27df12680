// Acceptance suite: one PASS/FAIL line per criterion.  All sizes and time
// limits are fixed below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "p8q/congruences.hpp"
#include "p8q/eta.hpp"
#include "p8q/identities.hpp"
#include "p8q/tables.hpp"

using namespace p8q;

namespace {

constexpr std::size_t c1_order = 2000;
constexpr double c1_seconds = 30.0;
constexpr std::size_t c3_identity_order = 500;
constexpr std::size_t c3_lemma_order = 300;
constexpr std::size_t c3_j_max = 12;
constexpr std::size_t c4_alpha1_order = 500;
constexpr std::size_t c4_alpha2_n_max = 100;
constexpr std::size_t c5_m_rows = 24;
constexpr unsigned c5_x_rows = 8;
constexpr std::uint64_t c6_n_max_alpha1 = 2000;
constexpr std::uint64_t c6_n_max_alpha2 = 200;
constexpr double c6_seconds = 60.0;
constexpr unsigned c6_alpha2_max_exponent = 16;
constexpr std::uint64_t c7_n_max = 30;
constexpr unsigned c8_k_max = 2;
constexpr unsigned c8_m_max = 6;
constexpr std::size_t c8_order = 300;
constexpr std::size_t c9_max_order = 500;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string note;
};

void fail(Outcome& o, const std::string& why)
{
  if (o.pass)
    o.note = why;
  o.pass = false;
}

void require_reports(Outcome& o, const std::vector<Report>& rs)
{
  if (rs.empty())
    fail(o, "no reports");
  for (const auto& r : rs)
    if (!r.pass)
      fail(o, to_text(r));
}

mpz_class pow2(unsigned e)
{
  mpz_class r = 1;
  r <<= e;
  return r;
}

// Results shared between criteria 6-8 and criterion 9.
std::vector<ScanResult> c6_alpha1, c6_alpha2;
ScanResult c7_result;
std::vector<Report> c8_reports;

Outcome criterion1()
{
  Outcome o;
  const auto t0 = Clock::now();
  const auto series = p8_series(CoeffRing::exact_integer, c1_order);
  const auto oracle = p8_oracle(c1_order);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (series.exact_coeffs() != oracle)
    fail(o, "series and oracle differ");
  if (secs >= c1_seconds)
    fail(o, "took " + std::to_string(secs) + " s");
  if (series.coeff(1) != 8 || series.coeff(3) != 192)
    fail(o, "p8(1) or p8(3) wrong");
  return o;
}

Outcome criterion2()
{
  Outcome o;
  const unsigned m[8][8][2] = {
      {{3, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
      {{0, 1}, {7, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
      {{0, 0}, {3, 3}, {11, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
      {{0, 0}, {0, 1}, {9, 1}, {15, 1}, {0, 0}, {0, 0}, {0, 0}, {0, 0}},
      {{0, 0}, {0, 0}, {3, 5}, {11, 5}, {19, 1}, {0, 0}, {0, 0}, {0, 0}},
      {{0, 0}, {0, 0}, {0, 1}, {7, 9}, {16, 3}, {23, 1}, {0, 0}, {0, 0}},
      {{0, 0}, {0, 0}, {0, 0}, {3, 7}, {12, 7}, {19, 7}, {27, 1}, {0, 0}},
      {{0, 0}, {0, 0}, {0, 0}, {0, 1}, {11, 1}, {17, 5}, {26, 1}, {31, 1}},
  };
  for (std::size_t j = 1; j <= 8; ++j)
    for (std::size_t k = 1; k <= 8; ++k) {
      const auto& [e, b] = m[j - 1][k - 1];
      if (m_entry(j, k) != pow2(e) * b)
        fail(o, "m_{" + std::to_string(j) + "," + std::to_string(k) + "} differs");
    }
  const std::vector<std::vector<std::pair<unsigned, unsigned long>>> x{
      {{3, 1}},
      {{6, 3}, {14, 1}},
      {{6, 3}, {15, 31}, {21, 227}, {33, 7}, {41, 1}},
  };
  for (unsigned a = 1; a <= 3; ++a) {
    for (std::size_t j = 1; j <= 8; ++j) {
      const mpz_class want = j <= x[a - 1].size() ? pow2(x[a - 1][j - 1].first) * x[a - 1][j - 1].second
                                                   : mpz_class(0);
      if (x_entry(a, j) != want)
        fail(o, "x_{" + std::to_string(a) + "," + std::to_string(j) + "} differs");
    }
  }
  if (x_entry(3, 5) != pow2(41))
    fail(o, "x_{3,5} is not 2^41");
  return o;
}

Outcome criterion3()
{
  Outcome o;
  for (const char* tag : {"E6", "E7", "E1", "E11", "E020", "E063"})
    require_reports(o, {verify_formula(tag, c3_identity_order)});
  const auto l1 = verify_lemma1(c3_j_max, c3_lemma_order);
  if (l1.size() != c3_j_max)
    fail(o, "L1 produced the wrong number of cases");
  require_reports(o, l1);
  require_reports(o, verify_H_powers(c3_j_max, c3_lemma_order));
  return o;
}

Outcome criterion4()
{
  Outcome o;
  require_reports(o, verify_theorem_T1(1, c4_alpha1_order));
  require_reports(o, verify_theorem_T1(2, c4_alpha2_n_max));
  return o;
}

Outcome criterion5()
{
  Outcome o;
  require_reports(o, {check_lemma4(c5_m_rows), check_lemma5(c5_x_rows)});
  for (unsigned j = 1; 2 * j <= c5_x_rows; ++j) {
    if (v2(x_entry(2 * j - 1, 1)) != Valuation(3 * j))
      fail(o, "no equality at k=1 for odd row " + std::to_string(2 * j - 1));
    if (v2(x_entry(2 * j, 1)) != Valuation(3 * (j + 1)))
      fail(o, "no equality at k=1 for even row " + std::to_string(2 * j));
  }
  return o;
}

Outcome criterion6()
{
  Outcome o;
  const auto t0 = Clock::now();
  c6_alpha1 = scan_all(1, c6_n_max_alpha1);
  auto both = scan_all(2, c6_n_max_alpha2);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::copy_if(both.begin(), both.end(), std::back_inserter(c6_alpha2),
               [](const ScanResult& r) { return r.alpha == 2; });
  if (c6_alpha1.size() != 9 || c6_alpha2.size() != 8)
    fail(o, "unexpected number of families");
  unsigned max_e = 0;
  for (const auto* set : {&c6_alpha1, &both})
    for (const auto& r : *set) {
      if (!r.pass || r.notice)
        fail(o, to_text(r));
      if (r.ring != CoeffRing::mod2w)
        fail(o, "scan did not use the mod 2^64 ring");
    }
  for (const auto& r : c6_alpha2)
    max_e = std::max(max_e, r.mod_exponent);
  if (max_e != c6_alpha2_max_exponent)
    fail(o, "largest modulus at alpha=2 is 2^" + std::to_string(max_e));
  if (secs >= c6_seconds)
    fail(o, "took " + std::to_string(secs) + " s");
  return o;
}

Outcome criterion7()
{
  Outcome o;
  ScanOptions opts;
  opts.apply_exceptions = false;
  c7_result = scan_claim(make_claim("E102", 1), c7_n_max, opts);
  if (c7_result.pass || !c7_result.counterexample)
    fail(o, "no counterexample without the exception");
  else if (c7_result.counterexample->n > c7_n_max || !is_gen_pentagonal(c7_result.counterexample->n))
    fail(o, "counterexample n=" + std::to_string(c7_result.counterexample->n) + " is not pentagonal");
  else
    o.note = "n=" + std::to_string(c7_result.counterexample->n) + ", v2(p8("
             + std::to_string(c7_result.counterexample->argument) + "))="
             + c7_result.counterexample->v2.to_string();
  return o;
}

Outcome criterion8()
{
  Outcome o;
  c8_reports = verify_binomial_congruence(c8_k_max, c8_m_max, c8_order, CoeffRing::mod2w);
  if (c8_reports.size() != c8_k_max * c8_m_max)
    fail(o, "unexpected number of cases");
  require_reports(o, c8_reports);
  return o;
}

Outcome criterion9()
{
  Outcome o;
  ScanOptions exact;
  exact.ring = CoeffRing::exact_integer;
  exact.max_order = c9_max_order;
  const auto p8 = p8_series(CoeffRing::exact_integer, c9_max_order);
  for (const auto* set : {&c6_alpha1, &c6_alpha2})
    for (const auto& w : *set) {
      const auto claim = make_claim(w.id, w.alpha);
      const auto e = scan_claim(claim, w.n_max, p8, exact);
      if (e.pass != w.pass)
        fail(o, "exact rerun disagrees on " + w.id);
    }

  exact.apply_exceptions = false;
  const auto e7 = scan_claim(make_claim("E102", 1), c7_n_max, p8, exact);
  if (e7.pass != c7_result.pass || e7.counterexample != c7_result.counterexample)
    fail(o, "exact rerun disagrees on the E102 counterexample");

  const auto e8 = verify_binomial_congruence(c8_k_max, c8_m_max, c8_order, CoeffRing::exact_integer);
  if (e8.size() != c8_reports.size())
    fail(o, "exact E103 rerun has a different case count");
  for (std::size_t i = 0; i < std::min(e8.size(), c8_reports.size()); ++i)
    if (e8[i].pass != c8_reports[i].pass || e8[i].tag != c8_reports[i].tag)
      fail(o, "exact rerun disagrees on " + e8[i].tag);
  return o;
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"p8 series equals the oracle to order 2000, p8(1)=8, p8(3)=192", criterion1},
      {"printed m window and x rows 1-3", criterion2},
      {"E6 E7 E1 E11 E020 E063 at order 500, L1 and L3 for j<=12 at order 300", criterion3},
      {"x-table generating functions at alpha=1 (order 500) and alpha=2 (n<=100)", criterion4},
      {"lemma 4 to j=24 and lemma 5 to alpha=8 with equality at k=1", criterion5},
      {"congruence scans alpha=1 n<=2000 and alpha=2 n<=200 in Z/2^64", criterion6},
      {"E102 without the exception fails at a pentagonal n<=30", criterion7},
      {"E103 for k<=2, m<=6 at order 300", criterion8},
      {"exact-integer reruns reproduce the verdicts of 6-8 at order<=500", criterion9},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %zu: %s  (%.2f s)  %s%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", secs,
                criteria[i].first.c_str(), o.note.empty() ? "" : "  -- ", o.note.c_str());
    if (!o.pass)
      ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
