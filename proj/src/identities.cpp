#include "p8q/identities.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "p8q/eta.hpp"
#include "p8q/tables.hpp"

namespace p8q {

namespace {

using Factors = std::map<unsigned, int>;

TruncSeries eta(CoeffRing ring, std::size_t order, Factors factors, const mpz_class& coeff = 1,
                std::size_t qshift = 0)
{
  return eval_term(EtaTerm{coeff, qshift, std::move(factors)}, ring, order);
}

std::uint64_t pow2(unsigned e) { return std::uint64_t{1} << e; }

std::string with_alpha(const std::string& tag, unsigned alpha)
{
  return tag + "(alpha=" + std::to_string(alpha) + ")";
}

// Sum of x * T^k for a list of coefficients x_1..x_K, by Horner.
TruncSeries polynomial_in(const TruncSeries& t, const std::vector<mpz_class>& coeffs)
{
  TruncSeries acc = TruncSeries::zero(t.ring(), t.order());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = mul(t, add(acc, TruncSeries::monomial(t.ring(), t.order(), 0, *it)));
  return acc;
}

Report x_divisibility(std::string tag, unsigned row, unsigned long base, unsigned long step)
{
  Report r;
  r.tag = std::move(tag);
  r.order = XTable::stored_width(row);
  r.mode = CheckMode::valuation_bound;
  for (std::size_t k = 1; k <= XTable::stored_width(row); ++k) {
    const unsigned long need = base + step * (k - 1);
    const Valuation v = v2(x_entry(row, k));
    if (v < Valuation(need)) {
      r.pass = false;
      r.detail = "x_{" + std::to_string(row) + "," + std::to_string(k) + "}: v2 = " + v.to_string()
                 + " < " + std::to_string(need);
      break;
    }
  }
  return r;
}

} // namespace

STPair build_s_t(std::size_t order, CoeffRing ring)
{
  TruncSeries u = eta(ring, order, {{4, 8}, {1, -8}});
  TruncSeries v = eta(ring, order, {{4, 24}, {2, -24}});
  TruncSeries s = shift(u, 1).truncated(order);
  TruncSeries t = shift(v, 2).truncated(order);
  return {std::move(s), std::move(t), std::move(u), std::move(v)};
}

Report verify_formula(std::string_view tag, std::size_t order)
{
  const RegistryEntry* entry = find_formula(tag);
  if (!entry)
    throw std::invalid_argument("unknown registry identity '" + std::string(tag) + "'");
  auto sides = eval_identity(*entry, CoeffRing::exact_integer, order);
  return equality_report(entry->tag, sides.lhs, sides.rhs);
}

std::vector<Report> verify_lemma0(std::size_t order)
{
  std::vector<Report> out;
  for (const char* tag : {"E6", "E7", "E1", "E11"})
    out.push_back(verify_formula(tag, order));
  return out;
}

std::vector<Report> verify_lemma1(std::size_t j_max, std::size_t order)
{
  const auto st = build_s_t(order);
  const CoeffRing ring = st.s.ring();
  const TruncSeries one = TruncSeries::one(ring, order);
  const TruncSeries sixteen = TruncSeries::monomial(ring, order, 0, 16);

  std::vector<Report> out;
  TruncSeries s_jm2 = one;  // S^{j-2}
  TruncSeries s_jm1 = st.s; // S^{j-1}
  for (std::size_t j = 1; j <= j_max; ++j) {
    const std::string tag = "L1(j=" + std::to_string(j) + ")";
    if (j == 1) {
      // T/S = q V/U carries no negative powers.
      TruncSeries t_over_s = shift(mul(st.v, invert(st.u)), 1).truncated(order);
      TruncSeries rhs = add(t_over_s, mul(st.t, sixteen));
      out.push_back(equality_report(tag, st.s, rhs));
      continue;
    }
    TruncSeries lhs = pow(st.s, static_cast<long>(j));
    TruncSeries rhs = mul(st.t, add(s_jm2, scale(s_jm1, 16)));
    out.push_back(equality_report(tag, lhs, rhs));
    s_jm2 = s_jm1;
    s_jm1 = lhs;
  }
  return out;
}

std::vector<Report> verify_H_powers(std::size_t j_max, std::size_t order)
{
  const auto st = build_s_t(order);
  const CoeffRing ring = st.s.ring();
  std::vector<Report> out;

  // Even-exponent part of 1/S = q^{-1} U^{-1} sits at the odd indices of U^{-1}.
  {
    TruncSeries even_part = extract_ap(invert(st.u), 2, 1);
    TruncSeries expected = TruncSeries::monomial(ring, even_part.order(), 0, -8);
    out.push_back(equality_report("H(1/S)", even_part, expected));
  }

  // Powers of T, shared across j.
  std::vector<TruncSeries> t_pow{TruncSeries::one(ring, order), st.t};
  TruncSeries s_pow = TruncSeries::one(ring, order);
  for (std::size_t j = 1; j <= j_max; ++j) {
    s_pow = mul(s_pow, st.s);
    while (t_pow.size() <= j)
      t_pow.push_back(mul(t_pow.back(), st.t));
    TruncSeries rhs = TruncSeries::zero(ring, order);
    for (std::size_t k = (j + 1) / 2; k <= j; ++k)
      rhs = add(rhs, scale(t_pow[k], m_entry(j, k)));
    std::string tag = j == 1 ? "E030" : j == 2 ? "E031" : j == 3 ? "E034" : "E039(j=" + std::to_string(j) + ")";
    out.push_back(equality_report(std::move(tag), huff_even(s_pow), rhs));
  }
  return out;
}

std::vector<Report> verify_theorem_L2(std::size_t order)
{
  return {verify_formula("E020", order), verify_formula("E063", order)};
}

std::vector<Report> verify_theorem_T1(unsigned alpha, std::size_t n_max)
{
  if (alpha == 0)
    throw std::invalid_argument("verify_theorem_T1: alpha must be positive");
  const CoeffRing ring = CoeffRing::exact_integer;

  struct Side {
    const char* tag;
    std::uint64_t step;
    std::uint64_t residue;
    unsigned row;
    std::size_t terms;
    unsigned prefactor_k; // 1/f_k^8
  };
  const std::uint64_t four_a = pow2(2 * alpha);
  const Side sides[] = {
      {"E004", pow2(2 * alpha - 1), (pow2(2 * alpha - 1) + 1) / 3, 2 * alpha - 1, (four_a - 1) / 3, 2},
      {"E005", four_a, (2 * four_a + 1) / 3, 2 * alpha, 2 * (four_a - 1) / 3, 1},
  };

  const std::size_t p8_order = four_a * n_max + (2 * four_a + 1) / 3;
  const TruncSeries p8 = p8_series(ring, p8_order);

  const std::size_t rhs_order = n_max + 1;
  // g = q f_2^24 / f_1^24
  const TruncSeries g = shift(eta(ring, n_max, {{2, 24}, {1, -24}}), 1);

  std::vector<Report> out;
  for (const auto& side : sides) {
    std::vector<mpz_class> x;
    for (std::size_t j = 1; j <= side.terms; ++j)
      x.push_back(x_entry(side.row, j));
    TruncSeries rhs = mul(eta(ring, rhs_order, {{side.prefactor_k, -8}}), polynomial_in(g, x));
    TruncSeries lhs = shift(extract_ap(p8, static_cast<unsigned>(side.step),
                                       static_cast<unsigned>(side.residue))
                                .truncated(n_max),
                            1);
    out.push_back(equality_report(with_alpha(side.tag, alpha), lhs, rhs));
  }
  return out;
}

std::vector<Report> verify_binomial_congruence(unsigned k_max, unsigned m_max, std::size_t order,
                                               CoeffRing ring)
{
  std::vector<Report> out;
  for (unsigned k = 1; k <= k_max; ++k) {
    const TruncSeries fk = euler_fk(k, order, ring);
    const TruncSeries f2k = euler_fk(2 * k, order, ring);
    for (unsigned m = 1; m <= m_max; ++m) {
      const std::string tag = "E103(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ")";
      out.push_back(congruence_report(tag, pow(fk, 1l << m), pow(f2k, 1l << (m - 1)), m));
    }
  }
  return out;
}

std::vector<Report> verify_proof_steps(unsigned alpha, std::size_t order, CoeffRing ring)
{
  if (alpha == 0)
    throw std::invalid_argument("verify_proof_steps: alpha must be positive");
  const mpz_class x_odd = x_entry(2 * alpha - 1, 1);
  const mpz_class x_even = x_entry(2 * alpha, 1);
  const unsigned a3 = 3 * alpha;
  const std::uint64_t half = pow2(2 * alpha - 1); // 2^{2 alpha - 1}
  const std::uint64_t quarter = pow2(2 * alpha);  // 2^{2 alpha}

  const TruncSeries p8 = p8_series(ring, pow2(2 * alpha + 1) * (order + 1));
  auto progression = [&](std::uint64_t step, std::uint64_t numerator) {
    return extract_ap(p8, static_cast<unsigned>(step), static_cast<unsigned>(numerator / 3))
        .truncated(order);
  };
  auto q_eta = [&](Factors f, const mpz_class& c) { return eta(ring, order, std::move(f), c); };

  std::vector<Report> out;
  auto congruent = [&](const std::string& tag, const TruncSeries& lhs, const TruncSeries& rhs,
                       unsigned e) { out.push_back(congruence_report(with_alpha(tag, alpha), lhs, rhs, e)); };

  congruent("E9", q_eta({{2, 16}, {1, -24}}, 1), q_eta({{2, 4}}, 1), 3);
  out.push_back(x_divisibility(with_alpha("E10", alpha), 2 * alpha - 1, a3, 7));

  congruent("E004m", progression(half, half + 1), q_eta({{2, 4}}, x_odd), a3 + 3);
  congruent("E13", progression(quarter, 2 * quarter + 1), TruncSeries::zero(ring, order), a3 + 3);
  const TruncSeries p14 = progression(quarter, half + 1);
  congruent("E14", p14, q_eta({{1, 4}}, x_odd), a3 + 3);

  const TruncSeries p106 = progression(2 * quarter, 7 * half + 1);
  congruent("E106a", p106, q_eta({{1, 2}, {4, 4}, {2, -2}}, -4 * x_odd), a3 + 3);
  congruent("E106b", p106, q_eta({{4, 4}, {2, -1}}, -4 * x_odd), a3 + 3);

  const TruncSeries p107 = progression(2 * quarter, half + 1);
  congruent("E107a", p107, q_eta({{2, 10}, {1, -2}, {4, -4}}, x_odd), a3 + 1);
  congruent("E107b", p107, q_eta({{2, 1}}, x_odd), a3 + 1);

  out.push_back(x_divisibility(with_alpha("E15", alpha), 2 * alpha, a3 + 3, 8));
  congruent("E109", progression(quarter, 2 * quarter + 1), q_eta({{2, 24}, {1, -32}}, x_even), a3 + 11);

  const TruncSeries p110 = progression(2 * quarter, 5 * quarter + 1);
  congruent("E110a", p110, q_eta({{2, 100}, {1, -84}, {4, -24}}, 32 * x_even), a3 + 10);
  congruent("E110b", p110, q_eta({{2, 10}}, 32 * x_even), a3 + 10);
  congruent("E111", p110, q_eta({{4, 5}}, 32 * x_even), a3 + 9);
  return out;
}

// ------------------------------------------------------------ catalog

namespace {

using Runner = std::function<std::vector<Report>(const VerifyOptions&)>;

struct CaseEntry {
  CaseInfo info;
  Runner run;
};

std::vector<Report> proof_steps_matching(const VerifyOptions& o, std::string_view prefix)
{
  std::vector<Report> out;
  for (unsigned alpha = 1; alpha <= o.alpha_max; ++alpha)
    for (auto& r : verify_proof_steps(alpha, o.order, o.congruence_ring)) {
      const auto base = r.tag.substr(0, r.tag.find('('));
      const bool match = prefix.empty() || base == prefix
                         || (base.size() == prefix.size() + 1 && base.starts_with(prefix)
                             && (base.back() == 'a' || base.back() == 'b'));
      if (match)
        out.push_back(std::move(r));
    }
  return out;
}

std::vector<Report> t1_matching(const VerifyOptions& o, std::string_view prefix)
{
  std::vector<Report> out;
  for (unsigned alpha = 1; alpha <= o.alpha_max; ++alpha)
    for (auto& r : verify_theorem_T1(alpha, o.order))
      if (prefix.empty() || r.tag.starts_with(prefix))
        out.push_back(std::move(r));
  return out;
}

std::vector<Report> single_h_power(const VerifyOptions& o, std::size_t j)
{
  auto all = verify_H_powers(j, o.order);
  return {all.back()};
}

const std::vector<CaseEntry>& catalog()
{
  static const std::vector<CaseEntry> entries = [] {
    std::vector<CaseEntry> v;
    for (const auto& e : formula_registry()) {
      const std::string tag = e.tag;
      v.push_back({{tag, e.description, true},
                   [tag](const VerifyOptions& o) { return std::vector<Report>{verify_formula(tag, o.order)}; }});
    }
    v.push_back({{"L1", "S^j = T(S^{j-2} + 16 S^{j-1}) for j <= j_max", true},
                 [](const VerifyOptions& o) { return verify_lemma1(o.j_max, o.order); }});
    v.push_back({{"E039", "H(S^j) = sum_k m_{j,k} T^k for j <= j_max, and H(1/S) = -8", true},
                 [](const VerifyOptions& o) { return verify_H_powers(o.j_max, o.order); }});
    v.push_back({{"E030", "H(S) = 8T", false}, [](const VerifyOptions& o) { return single_h_power(o, 1); }});
    v.push_back({{"E031", "H(S^2) = T + 128T^2", false}, [](const VerifyOptions& o) { return single_h_power(o, 2); }});
    v.push_back({{"E034", "H(S^3) = 24T^2 + 2048T^3", false},
                 [](const VerifyOptions& o) { return single_h_power(o, 3); }});
    v.push_back({{"T1", "x-table generating functions for alpha <= alpha_max", true},
                 [](const VerifyOptions& o) { return t1_matching(o, ""); }});
    v.push_back({{"E004", "odd-row x-table generating function", false},
                 [](const VerifyOptions& o) { return t1_matching(o, "E004"); }});
    v.push_back({{"E005", "even-row x-table generating function", false},
                 [](const VerifyOptions& o) { return t1_matching(o, "E005"); }});
    v.push_back({{"E103", "f_k^{2^m} = f_{2k}^{2^{m-1}} mod 2^m, k <= 2, m <= 6", true},
                 [](const VerifyOptions& o) { return verify_binomial_congruence(2, 6, o.order, o.congruence_ring); }});
    v.push_back({{"T4-steps", "congruence chain for alpha <= alpha_max", true},
                 [](const VerifyOptions& o) { return proof_steps_matching(o, ""); }});
    for (const char* step : {"E9", "E10", "E004m", "E13", "E14", "E106", "E107", "E15", "E109", "E110", "E111"}) {
      const std::string tag = step;
      v.push_back({{tag, "congruence step " + tag, false},
                   [tag](const VerifyOptions& o) { return proof_steps_matching(o, tag); }});
    }
    v.push_back({{"L4", "v2(m_{j,k}) >= 4(2k-j)-1", true},
                 [](const VerifyOptions& o) { return std::vector<Report>{check_lemma4(o.m_rows)}; }});
    v.push_back({{"L5", "x-table valuation bounds with equality at k = 1", true},
                 [](const VerifyOptions& o) { return std::vector<Report>{check_lemma5(o.x_rows)}; }});
    v.push_back({{"M-rules", "zero pattern, anti-diagonal and diagonal of m", true},
                 [](const VerifyOptions& o) { return std::vector<Report>{check_m_structure(o.m_rows)}; }});
    v.push_back({{"X-rules", "support bound and corner values of x", true},
                 [](const VerifyOptions& o) { return std::vector<Report>{check_x_structure(o.x_rows)}; }});
    return v;
  }();
  return entries;
}

} // namespace

const std::vector<CaseInfo>& verification_cases()
{
  static const std::vector<CaseInfo> infos = [] {
    std::vector<CaseInfo> v;
    for (const auto& e : catalog())
      v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool is_known_case(std::string_view tag)
{
  const auto& c = catalog();
  return std::any_of(c.begin(), c.end(), [tag](const CaseEntry& e) { return e.info.tag == tag; });
}

std::vector<Report> run_case(std::string_view tag, const VerifyOptions& options)
{
  for (const auto& e : catalog())
    if (e.info.tag == tag)
      return e.run(options);
  throw std::invalid_argument("unknown verification tag '" + std::string(tag) + "'");
}

std::vector<Report> run_all(const VerifyOptions& options)
{
  std::vector<Report> out;
  for (const auto& e : catalog()) {
    if (!e.info.in_all)
      continue;
    auto part = e.run(options);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

} // namespace p8q
