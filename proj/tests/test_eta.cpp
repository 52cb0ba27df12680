#include "doctest.h"

#include "oracles.hpp"
#include "p8q/eta.hpp"

using namespace p8q;

TEST_CASE("f_1 matches the naive product and the pentagonal sum")
{
  const std::size_t n = 300;
  const auto f1 = euler_f1(n);
  CHECK(f1.exact_coeffs() == oracle::naive_fk(1, n));
  CHECK(f1.exact_coeffs() == oracle::pentagonal_f1(n));
  CHECK(euler_f1(n, CoeffRing::mod2w) == f1.to_ring(CoeffRing::mod2w));
}

TEST_CASE("f_k matches the naive product")
{
  for (unsigned k : {1u, 2u, 3u, 4u, 8u, 16u})
    CHECK(euler_fk(k, 200).exact_coeffs() == oracle::naive_fk(k, 200));
  CHECK(euler_fk(2, 10) == substitute_power(euler_f1(5), 2, 10));
  CHECK_THROWS(euler_fk(0, 10));
}

TEST_CASE("p_8 small values")
{
  // Frozen from the sigma recurrence oracle.
  const std::vector<long> known{1, 8, 44, 192, 726, 2464, 7704, 22528, 62337, 164560, 417140};
  const auto p8 = p8_series(CoeffRing::exact_integer, known.size() - 1);
  for (std::size_t n = 0; n < known.size(); ++n)
    CHECK(p8.coeff(n) == known[n]);
  const auto oracle_values = oracle::p8_sigma(known.size() - 1);
  for (std::size_t n = 0; n < known.size(); ++n)
    CHECK(oracle_values[n] == known[n]);
}

TEST_CASE("p_8 series, knapsack oracle and sigma oracle agree")
{
  const std::size_t n = 400;
  const auto series = p8_series(CoeffRing::exact_integer, n);
  const auto knapsack = p8_oracle(n);
  const auto sigma = oracle::p8_sigma(n);
  CHECK(series.exact_coeffs() == knapsack);
  CHECK(knapsack == sigma);
  CHECK(p8_series(CoeffRing::mod2w, n) == series.to_ring(CoeffRing::mod2w));
}

TEST_CASE("eta term evaluation")
{
  EtaTerm t;
  t.coeff = -3;
  t.qshift = 2;
  t.factors = {{1, 2}, {2, -1}};
  const auto got = eval_term(t, CoeffRing::exact_integer, 60);
  const auto f1 = euler_f1(60);
  const auto want = shift(scale(mul(square(f1), invert(euler_fk(2, 60))), -3), 2).truncated(60);
  CHECK(got == want);

  EtaTerm bad;
  bad.factors = {{0, 1}};
  CHECK_THROWS(bad.validate());
  bad.factors = {{3, 0}};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("registry loads and every tag is unique")
{
  const auto& reg = formula_registry();
  REQUIRE(reg.size() >= 10);
  for (const char* tag : {"E6", "E7", "E1", "E11", "E020", "E063"})
    CHECK(find_formula(tag) != nullptr);
  CHECK(find_formula("nope") == nullptr);
  const auto* e020 = find_formula("E020");
  CHECK(e020->lhs_transform.kind == LhsTransform::Kind::extract);
  CHECK(e020->lhs_transform.modulus == 2);
  CHECK(e020->lhs_transform.residue == 1);
}

TEST_CASE("registry parser rejects malformed input")
{
  const std::string ok = R"({"schema":"p8q-identities/1","identities":[
    {"tag":"A","description":"","lhs":{"terms":[{"coeff":1,"qshift":0,"factors":{"1":1}}]},
     "rhs":{"terms":[{"coeff":"1","qshift":0,"factors":{"1":1}}]}}]})";
  CHECK(parse_registry(ok).size() == 1);

  std::string dup = R"({"schema":"p8q-identities/1","identities":[
    {"tag":"A","description":"","lhs":{"terms":[]},"rhs":{"terms":[]}},
    {"tag":"A","description":"","lhs":{"terms":[]},"rhs":{"terms":[]}}]})";
  CHECK_THROWS(parse_registry(dup));
  CHECK_THROWS(parse_registry("{not json"));
  CHECK_THROWS(parse_registry(R"({"schema":"p8q-identities/1","identities":[
    {"tag":"B","description":"","lhs":{"transform":{"kind":"extract","modulus":2,"residue":2},"terms":[]},
     "rhs":{"terms":[]}}]})"));
}

TEST_CASE("every registry identity holds at a moderate order in both rings")
{
  for (const auto& entry : formula_registry()) {
    CAPTURE(entry.tag);
    const auto ex = eval_identity(entry, CoeffRing::exact_integer, 120);
    CHECK_FALSE(first_mismatch(ex.lhs, ex.rhs).has_value());
    const auto w = eval_identity(entry, CoeffRing::mod2w, 120);
    CHECK_FALSE(first_mismatch(w.lhs, w.rhs).has_value());
  }
}

TEST_CASE("registry parser checks the schema")
{
  CHECK_THROWS(parse_registry(R"({"schema":"other","identities":[]})"));
  CHECK(parse_registry(R"({"schema":"p8q-identities/1","identities":[]})").empty());
}

TEST_CASE("f_1 is supported on generalised pentagonal indices with unit coefficients")
{
  const auto f1 = euler_f1(3000);
  for (std::size_t n = 0; n <= 3000; ++n) {
    const mpz_class& c = f1.exact_coeffs()[n];
    CHECK((c == 0 || c == 1 || c == -1));
    CHECK((c != 0) == oracle::pentagonal_by_enumeration(n));
  }
}

TEST_CASE("eval_formula distributes over term concatenation")
{
  EtaTerm a;
  a.coeff = 5;
  a.factors = {{1, -3}, {4, 2}};
  EtaTerm b;
  b.coeff = -2;
  b.qshift = 3;
  b.factors = {{2, 7}};
  const EtaFormula fa{{a}}, fb{{b}}, fab{{a, b}};
  for (const auto ring : {CoeffRing::exact_integer, CoeffRing::mod2w})
    CHECK(eval_formula(fab, ring, 80) == eval_formula(fa, ring, 80) + eval_formula(fb, ring, 80));
  CHECK(eval_formula(EtaFormula{}, CoeffRing::exact_integer, 5) == TruncSeries::zero(CoeffRing::exact_integer, 5));
}
