#include "p8q/eta.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace p8q {

namespace detail {
extern const std::string_view registry_json;
}

namespace {

using nlohmann::json;

class FactorCache {
public:
  FactorCache(CoeffRing ring, std::size_t order) : ring_(ring), order_(order) {}

  const TruncSeries& power(unsigned k, int e)
  {
    auto key = std::make_pair(k, e);
    auto it = powers_.find(key);
    if (it == powers_.end())
      it = powers_.emplace(key, pow(euler_fk(k, order_, ring_), e)).first;
    return it->second;
  }

private:
  CoeffRing ring_;
  std::size_t order_;
  std::map<std::pair<unsigned, int>, TruncSeries> powers_;
};

TruncSeries eval_term_cached(const EtaTerm& term, CoeffRing ring, std::size_t order,
                             FactorCache& cache)
{
  term.validate();
  if (term.qshift > order)
    return TruncSeries::zero(ring, order);
  TruncSeries product = TruncSeries::one(ring, order - term.qshift);
  for (const auto& [k, e] : term.factors)
    product = mul(product, cache.power(k, e).truncated(order - term.qshift));
  return shift(scale(product, term.coeff), static_cast<long>(term.qshift));
}

mpz_class coeff_from_json(const json& j)
{
  if (j.is_string())
    return mpz_class(j.get<std::string>());
  if (j.is_number_integer())
    return mpz_class(std::to_string(j.get<long long>()));
  throw std::invalid_argument("registry: coefficient must be an integer or a decimal string");
}

EtaFormula formula_from_json(const json& j)
{
  EtaFormula f;
  for (const auto& t : j.at("terms")) {
    EtaTerm term;
    term.coeff = coeff_from_json(t.at("coeff"));
    term.qshift = t.value("qshift", std::size_t{0});
    for (const auto& [k, e] : t.at("factors").items())
      term.factors[static_cast<unsigned>(std::stoul(k))] = e.get<int>();
    term.validate();
    f.terms.push_back(std::move(term));
  }
  return f;
}

LhsTransform transform_from_json(const json& j)
{
  LhsTransform t;
  if (!j.contains("transform"))
    return t;
  const auto& tj = j.at("transform");
  const auto kind = tj.at("kind").get<std::string>();
  if (kind == "extract") {
    t.kind = LhsTransform::Kind::extract;
    t.modulus = tj.at("modulus").get<unsigned>();
    t.residue = tj.at("residue").get<unsigned>();
    if (t.modulus == 0 || t.residue >= t.modulus)
      throw std::invalid_argument("registry: extract transform needs 0 <= residue < modulus");
  } else if (kind == "even_part") {
    t.kind = LhsTransform::Kind::even_part;
  } else if (kind != "none") {
    throw std::invalid_argument("registry: unknown transform '" + kind + "'");
  }
  return t;
}

} // namespace

void EtaTerm::validate() const
{
  for (const auto& [k, e] : factors) {
    if (k == 0)
      throw std::invalid_argument("eta term: f_0 is not defined");
    if (e == 0)
      throw std::invalid_argument("eta term: zero exponent on f_" + std::to_string(k));
  }
}

TruncSeries euler_f1(std::size_t order, CoeffRing ring)
{
  TruncSeries::ExactCoeffs c(order + 1);
  c[0] = 1;
  for (std::size_t k = 1;; ++k) {
    const std::size_t lo = k * (3 * k - 1) / 2;
    if (lo > order)
      break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[lo] = sign;
    const std::size_t hi = k * (3 * k + 1) / 2;
    if (hi <= order)
      c[hi] = sign;
  }
  return TruncSeries::from_coeffs(ring, c);
}

TruncSeries euler_fk(unsigned k, std::size_t order, CoeffRing ring)
{
  if (k == 0)
    throw std::invalid_argument("euler_fk: k must be positive");
  return substitute_power(euler_f1(order / k, ring), k, order);
}

TruncSeries eval_term(const EtaTerm& term, CoeffRing ring, std::size_t order)
{
  FactorCache cache(ring, order);
  return eval_term_cached(term, ring, order, cache);
}

TruncSeries eval_formula(const EtaFormula& formula, CoeffRing ring, std::size_t order)
{
  FactorCache cache(ring, order);
  TruncSeries sum = TruncSeries::zero(ring, order);
  for (const auto& term : formula.terms)
    sum = add(sum, eval_term_cached(term, ring, order, cache));
  return sum;
}

TruncSeries p8_series(CoeffRing ring, std::size_t order)
{
  return pow(invert(euler_f1(order, ring)), 8);
}

std::vector<mpz_class> p8_oracle(std::size_t n_max)
{
  std::vector<mpz_class> count(n_max + 1);
  count[0] = 1;
  for (std::size_t part = 1; part <= n_max; ++part)
    for (int colour = 0; colour < 8; ++colour)
      for (std::size_t n = part; n <= n_max; ++n)
        count[n] += count[n - part];
  return count;
}

std::vector<RegistryEntry> parse_registry(std::string_view json_text)
{
  const json doc = json::parse(json_text);
  if (doc.value("schema", std::string{}) != "p8q-identities/1")
    throw std::invalid_argument("registry: expected schema p8q-identities/1");
  std::vector<RegistryEntry> out;
  for (const auto& item : doc.at("identities")) {
    RegistryEntry e;
    e.tag = item.at("tag").get<std::string>();
    e.description = item.value("description", std::string{});
    e.lhs = formula_from_json(item.at("lhs"));
    e.lhs_transform = transform_from_json(item.at("lhs"));
    e.rhs = formula_from_json(item.at("rhs"));
    for (const auto& prev : out)
      if (prev.tag == e.tag)
        throw std::invalid_argument("registry: duplicate tag " + e.tag);
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<RegistryEntry>& formula_registry()
{
  static const std::vector<RegistryEntry> registry = parse_registry(detail::registry_json);
  return registry;
}

const RegistryEntry* find_formula(std::string_view tag)
{
  for (const auto& e : formula_registry())
    if (e.tag == tag)
      return &e;
  return nullptr;
}

IdentitySides eval_identity(const RegistryEntry& entry, CoeffRing ring, std::size_t order)
{
  TruncSeries rhs = eval_formula(entry.rhs, ring, order);
  switch (entry.lhs_transform.kind) {
  case LhsTransform::Kind::extract: {
    const auto& t = entry.lhs_transform;
    const std::size_t wide = t.modulus * order + t.residue;
    return {extract_ap(eval_formula(entry.lhs, ring, wide), t.modulus, t.residue), std::move(rhs)};
  }
  case LhsTransform::Kind::even_part:
    return {huff_even(eval_formula(entry.lhs, ring, order)), std::move(rhs)};
  case LhsTransform::Kind::none:
    break;
  }
  return {eval_formula(entry.lhs, ring, order), std::move(rhs)};
}

} // namespace p8q
