#pragma once

// Finite-order verification of the series identities and congruence steps
// for 1/f_1^8.  Every check compares two independently computed series and
// returns one Report per identity instance.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "p8q/report.hpp"
#include "p8q/series.hpp"

namespace p8q {

/// S = q f_4^8 / f_1^8 and T = q^2 f_4^24 / f_2^24, with their unit parts
/// U = S/q and V = T/q^2.  All four are exact to the requested order.
struct STPair {
  TruncSeries s;
  TruncSeries t;
  TruncSeries u;
  TruncSeries v;
};
STPair build_s_t(std::size_t order, CoeffRing ring = CoeffRing::exact_integer);

/// One registry identity as an exact equality.  Throws std::invalid_argument
/// for an unknown tag.
Report verify_formula(std::string_view tag, std::size_t order);

/// E6, E7 and the squared forms E1, E11.
std::vector<Report> verify_lemma0(std::size_t order);

/// S^j = T (S^{j-2} + 16 S^{j-1}) for j = 1..j_max; j = 1 uses 1/S = q^{-1} U^{-1}.
std::vector<Report> verify_lemma1(std::size_t j_max, std::size_t order);

/// H(S^j) = sum_k m_{j,k} T^k for j = 1..j_max, plus the seed H(1/S) = -8.
std::vector<Report> verify_H_powers(std::size_t j_max, std::size_t order);

/// Generating functions of p_8(2n+1) and p_8(4n+3).
std::vector<Report> verify_theorem_L2(std::size_t order);

/// Both x-table generating functions at one alpha, for n <= n_max.  The left
/// side is indexed by q^{n+1}; its constant term is checked to vanish.
std::vector<Report> verify_theorem_T1(unsigned alpha, std::size_t n_max);

/// f_k^{2^m} == f_{2k}^{2^{m-1}} mod 2^m for k <= k_max, m <= m_max.
std::vector<Report> verify_binomial_congruence(unsigned k_max, unsigned m_max, std::size_t order,
                                               CoeffRing ring = CoeffRing::mod2w);

/// The chain of congruences leading from the x-table generating functions
/// to the nine Ramanujan-type families, at one alpha.  Progressions are cut
/// out of p_8 directly with extract_ap.
std::vector<Report> verify_proof_steps(unsigned alpha, std::size_t order,
                                       CoeffRing ring = CoeffRing::mod2w);

// ------------------------------------------------------------ catalog

struct VerifyOptions {
  std::size_t order = 200;
  unsigned alpha_max = 1;        // alpha range for T1 and the proof steps
  std::size_t j_max = 12;        // Lemma L1 and H(S^j)
  std::size_t m_rows = 24;       // Lemma L4 and the m-table rules
  unsigned x_rows = 8;           // Lemma L5 and the x-table rules
  CoeffRing congruence_ring = CoeffRing::mod2w;
};

struct CaseInfo {
  std::string tag;
  std::string summary;
  bool in_all = true;
};

/// Every tag accepted by run_case, in run order.
const std::vector<CaseInfo>& verification_cases();
bool is_known_case(std::string_view tag);

/// Throws std::invalid_argument for an unknown tag.
std::vector<Report> run_case(std::string_view tag, const VerifyOptions& options);
std::vector<Report> run_all(const VerifyOptions& options);

} // namespace p8q
