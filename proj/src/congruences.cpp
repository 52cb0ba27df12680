#include "p8q/congruences.hpp"

#include <algorithm>
#include <bit>

#include "p8q/eta.hpp"

namespace p8q {

bool is_gen_pentagonal(std::uint64_t n)
{
  mpz_class d(std::to_string(n));
  d = 24 * d + 1;
  return mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

const std::vector<std::string>& family_ids()
{
  static const std::vector<std::string> ids{"E094", "E095", "E096", "E097", "E098",
                                            "E099", "E100", "E101", "E102"};
  return ids;
}

CongruenceClaim make_claim(std::string_view id, unsigned alpha)
{
  if (alpha == 0 || alpha > 29)
    throw std::invalid_argument("congruence claims are defined for 1 <= alpha <= 29");
  const std::uint64_t half = std::uint64_t{1} << (2 * alpha - 1); // 2^{2a-1}
  const std::uint64_t quarter = 2 * half;                          // 2^{2a}
  const unsigned a3 = 3 * alpha;

  CongruenceClaim c;
  c.id = std::string(id);
  c.alpha = alpha;
  std::uint64_t numerator = 0;
  if (id == "E094") {
    c.step = 2; numerator = 3; c.mod_exponent = 3;
  } else if (id == "E095") {
    c.step = quarter; numerator = 2 * quarter + 1; c.mod_exponent = a3 + 3;
  } else if (id == "E096") {
    c.step = 2 * quarter; numerator = 7 * half + 1; c.mod_exponent = a3 + 2;
  } else if (id == "E097") {
    c.step = 2 * quarter; numerator = 5 * quarter + 1; c.mod_exponent = a3 + 8;
  } else if (id == "E098") {
    c.step = 4 * quarter; numerator = 13 * half + 1; c.mod_exponent = a3 + 1;
  } else if (id == "E099") {
    c.step = 4 * quarter; numerator = 19 * half + 1; c.mod_exponent = a3 + 3;
  } else if (id == "E100") {
    c.step = 4 * quarter; numerator = 11 * quarter + 1; c.mod_exponent = a3 + 10;
  } else if (id == "E101") {
    c.step = 8 * quarter; numerator = 17 * quarter + 1; c.mod_exponent = a3 + 9;
  } else if (id == "E102") {
    c.step = 4 * quarter; numerator = half + 1; c.mod_exponent = a3 + 1;
    c.pentagonal_exception = true;
  } else {
    throw std::invalid_argument("unknown congruence family '" + std::string(id) + "'");
  }
  if (numerator % 3 != 0)
    throw std::logic_error(c.id + ": residue numerator " + std::to_string(numerator)
                           + " is not divisible by 3");
  c.residue = numerator / 3;
  if (c.residue >= c.step)
    throw std::logic_error(c.id + ": residue is not reduced modulo the step");
  return c;
}

std::vector<CongruenceClaim> claims_for(unsigned alpha)
{
  std::vector<CongruenceClaim> out;
  for (const auto& id : family_ids())
    out.push_back(make_claim(id, alpha));
  return out;
}

ScanResult scan_claim(const CongruenceClaim& claim, std::uint64_t n_max, const ScanOptions& options)
{
  const std::uint64_t wanted = claim.argument(n_max);
  const std::size_t order = std::min<std::uint64_t>(wanted, options.max_order);
  if (claim.residue > order)
    throw OrderOverflow(claim.id + ": p_8(" + std::to_string(claim.residue)
                        + ") exceeds the maximum series order " + std::to_string(options.max_order));
  return scan_claim(claim, n_max, p8_series(options.ring, order), options);
}

ScanResult scan_claim(const CongruenceClaim& claim, std::uint64_t n_max, const TruncSeries& p8,
                      const ScanOptions& options)
{
  if (p8.ring() != options.ring)
    throw RingMismatch("scan_claim: p_8 prefix is not in the requested ring");
  if (options.ring == CoeffRing::mod2w && claim.mod_exponent > ring_width)
    throw WidthExceeded(claim.id + ": modulus 2^" + std::to_string(claim.mod_exponent)
                        + " exceeds the 2^64 ring; rerun with the exact ring");

  ScanResult r;
  r.id = claim.id;
  r.alpha = claim.alpha;
  r.step = claim.step;
  r.residue = claim.residue;
  r.mod_exponent = claim.mod_exponent;
  r.ring = options.ring;
  r.n_max_requested = n_max;
  r.n_max = n_max;

  const std::uint64_t limit = std::min<std::uint64_t>(p8.order(), options.max_order);
  if (claim.residue > limit)
    throw OrderOverflow(claim.id + ": p_8(" + std::to_string(claim.residue)
                        + ") exceeds the available series order " + std::to_string(limit));
  if (claim.argument(n_max) > limit) {
    r.n_max = (limit - claim.residue) / claim.step;
    r.notice = "n_max reduced from " + std::to_string(n_max) + " to " + std::to_string(r.n_max)
               + ": p_8 is only available up to index " + std::to_string(limit);
  }

  const unsigned e = claim.mod_exponent;
  const std::uint64_t mask = e >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << e) - 1;
  for (std::uint64_t n = 0; n <= r.n_max; ++n) {
    const std::uint64_t arg = claim.argument(n);
    const bool excluded = options.apply_exceptions && claim.excludes(n);
    if (options.ring == CoeffRing::exact_integer) {
      const mpz_class& value = p8.exact_coeffs()[arg];
      if (excluded) {
        r.skipped.push_back(n);
        r.skipped_v2.push_back({static_cast<unsigned>(v2(value).value()), true});
        continue;
      }
      if (!mpz_divisible_2exp_p(value.get_mpz_t(), e)) {
        r.pass = false;
        r.counterexample = Counterexample{n, arg, v2(value)};
        break;
      }
    } else {
      const std::uint64_t word = p8.word_coeffs()[arg];
      if (excluded) {
        r.skipped.push_back(n);
        if (word == 0)
          r.skipped_v2.push_back({ring_width, false});
        else
          r.skipped_v2.push_back({static_cast<unsigned>(std::countr_zero(word)), true});
        continue;
      }
      if (word & mask) {
        r.pass = false;
        // Mod 2^64 only bounds the valuation; recompute the coefficient exactly.
        const TruncSeries exact = p8_series(CoeffRing::exact_integer, arg);
        r.counterexample = Counterexample{n, arg, v2(exact.exact_coeffs()[arg])};
        break;
      }
    }
  }
  return r;
}

std::vector<ScanResult> scan_all(unsigned alpha_max, std::uint64_t n_max, const ScanOptions& options)
{
  if (alpha_max == 0)
    throw std::invalid_argument("scan_all: alpha_max must be at least 1");
  std::vector<CongruenceClaim> claims;
  for (unsigned alpha = 1; alpha <= alpha_max; ++alpha)
    for (auto& c : claims_for(alpha))
      if (c.id != "E094" || alpha == 1)
        claims.push_back(std::move(c));

  std::uint64_t wanted = 0;
  for (const auto& c : claims)
    wanted = std::max(wanted, c.argument(n_max));
  const std::size_t order = std::min<std::uint64_t>(wanted, options.max_order);
  const TruncSeries p8 = p8_series(options.ring, order);

  std::vector<ScanResult> out;
  for (const auto& c : claims)
    out.push_back(scan_claim(c, n_max, p8, options));
  return out;
}

std::string to_text(const ScanResult& r)
{
  std::string s = (r.pass ? "PASS " : "FAIL ") + r.id + "  alpha=" + std::to_string(r.alpha)
                  + "  p8(" + std::to_string(r.step) + "n+" + std::to_string(r.residue)
                  + ") == 0 mod 2^" + std::to_string(r.mod_exponent)
                  + "  n<=" + std::to_string(r.n_max) + "  ring=" + to_string(r.ring);
  if (!r.skipped.empty())
    s += "  skipped=" + std::to_string(r.skipped.size());
  if (r.counterexample)
    s += "  counterexample: n=" + std::to_string(r.counterexample->n) + " p8("
         + std::to_string(r.counterexample->argument) + ") has v2=" + r.counterexample->v2.to_string();
  if (r.notice)
    s += "  [" + *r.notice + "]";
  return s;
}

void to_json(nlohmann::json& j, const ScanResult& r)
{
  j = nlohmann::json{{"id", r.id},
                     {"alpha", r.alpha},
                     {"step", r.step},
                     {"residue", r.residue},
                     {"mod_exponent", r.mod_exponent},
                     {"ring", to_string(r.ring)},
                     {"n_max", r.n_max},
                     {"n_max_requested", r.n_max_requested},
                     {"verdict", r.pass ? "pass" : "fail"},
                     {"skipped", r.skipped}};
  auto sv = nlohmann::json::array();
  for (const auto& s : r.skipped_v2)
    sv.push_back({{"v2", s.v2}, {"exact", s.exact}});
  j["skipped_v2"] = std::move(sv);
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"n", c.n}, {"argument", c.argument}, {"v2", c.v2.to_string()}};
  }
  if (r.notice)
    j["notice"] = *r.notice;
}

void from_json(const nlohmann::json& j, ScanResult& r)
{
  r = ScanResult{};
  r.id = j.at("id").get<std::string>();
  r.alpha = j.at("alpha").get<unsigned>();
  r.step = j.at("step").get<std::uint64_t>();
  r.residue = j.at("residue").get<std::uint64_t>();
  r.mod_exponent = j.at("mod_exponent").get<unsigned>();
  r.ring = parse_ring(j.at("ring").get<std::string>());
  r.n_max = j.at("n_max").get<std::uint64_t>();
  r.n_max_requested = j.value("n_max_requested", r.n_max);
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict != "pass" && verdict != "fail")
    throw std::invalid_argument("scan result: verdict must be pass or fail");
  r.pass = verdict == "pass";
  r.skipped = j.at("skipped").get<std::vector<std::uint64_t>>();
  if (j.contains("skipped_v2"))
    for (const auto& s : j.at("skipped_v2"))
      r.skipped_v2.push_back({s.at("v2").get<unsigned>(), s.at("exact").get<bool>()});
  if (j.contains("counterexample")) {
    const auto& c = j.at("counterexample");
    const auto v = c.at("v2").get<std::string>();
    r.counterexample = Counterexample{c.at("n").get<std::uint64_t>(), c.at("argument").get<std::uint64_t>(),
                                      v == "inf" ? Valuation::infinite() : Valuation(std::stoul(v))};
  }
  if (j.contains("notice"))
    r.notice = j.at("notice").get<std::string>();
}

} // namespace p8q
