#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "braidgen/garside.hpp"
#include "braidgen/word.hpp"

namespace braidgen {

/// Hypotheses of the two-generator theorem: n = 5 or n >= 7,
/// 2 <= k <= n-2, gcd(k, n) = 1. N = k(n-1) is the derived exponent.
struct RewriteParams {
  int n = 0;
  int k = 0;
  int N = 0;

  static RewriteParams make(int n, int k);  // throws BadParams
  static bool valid(int n, int k, std::string* why = nullptr);
  bool operator==(const RewriteParams&) const = default;
};

/// Symbols of the two-letter straight-line program. R_0 and S_0 are the base
/// letters; higher indices are defined by the fixed rules
///   S_{m+1} = R_m S_m R_m^{-1}        R_{m+1} = R_m S_m^N.
enum class SymKind : std::uint8_t { R, S };

struct SlpRule {
  SymKind kind;
  int m;  // index being defined (>= 1)
  bool operator==(const SlpRule&) const = default;
};

struct SlpTerm {
  SymKind kind;
  int m;
  long long exp;
  bool operator==(const SlpTerm&) const = default;
};

struct TwoGenSLP {
  RewriteParams params;
  std::vector<SlpRule> rules;  // derivation order; every root symbol defined
  std::vector<SlpTerm> root;

  bool operator==(const TwoGenSLP&) const = default;
  std::string to_text() const;  // "S1 = R0 S0 R0^-1" ... "ROOT = S0 S1"
};

TwoGenSLP parse_slp(const std::vector<std::string>& lines);

/// Flat letter over the two-letter alphabet {R, S}.
struct TwoGenLetter {
  SymKind kind;
  int sign;
  bool operator==(const TwoGenLetter&) const = default;
};

/// Flat length of the fully expanded root (saturating at ~1e18).
unsigned long long slp_flat_length(const TwoGenSLP& slp);

/// Fully expanded two-letter word; throws TooLong past max_len.
std::vector<TwoGenLetter> flatten(const TwoGenSLP& slp, unsigned long long max_len = 1000000);

/// Substitute R -> r_word(params, 0), S -> s_word(params, 0); free-reduced.
BraidWord expand_to_artin(const std::vector<TwoGenLetter>& flat, const RewriteParams& params);

/// r_m = alpha^k sigma_{1+mk}^{-N} and s_m = sigma_{1+mk} sigma_{1+(m+1)k}^{-1},
/// indices mod n with sigma_0 expanded.
BraidWord r_word(const RewriteParams& params, int m);
BraidWord s_word(const RewriteParams& params, int m);

/// Least l >= 0 with 1 + k l == i (mod n).
int telescope_length(const RewriteParams& params, int i);

/// SLP with root S_0 S_1 ... S_{l-1}, equal to sigma_1 sigma_i^{-1}.
TwoGenSLP theorem1_factor(const RewriteParams& params, int i);

/// The B_4 commutator-subgroup generators and the presentation relation
/// w = u c u^{-1} that eliminates w from the four-element generating set.
struct B4Generators {
  BraidWord g1, g2, g3;   // u^{-1}, v^{-1}, c^{-1}
  BraidWord u, v, w, c;
  bool relation_holds;    // equal(w, u c u^{-1})
};
B4Generators theorem2_b4_generators();

/// Strand-merging surjection B_4 -> B_3: sigma_1, sigma_3 -> sigma_1,
/// sigma_2 -> sigma_2 (signs preserved).
BraidWord psi_b4_to_b3(const BraidWord& w);

/// Word over the abstract alphabet {a, b, r} of the B_6 generating set.
struct ABRLetter {
  char sym;       // 'a', 'b' or 'r'
  long long exp;
  bool operator==(const ABRLetter&) const = default;
};

/// a = sigma_1 sigma_2^{-1}, b = sigma_1 sigma_3^{-1}, r = alpha^2 sigma_1^{-10} in B_6.
BraidWord b6_letter_word(char sym);
BraidWord substitute_abr(const std::vector<ABRLetter>& word);

/// Abstract word whose substitution equals sigma_1 sigma_i^{-1} in B_6.
std::vector<ABRLetter> theorem2_b6_factor(int i);

/// Least l such that sigma_l commutes with both sigma_i and sigma_j
/// (criterion: difference not congruent to +-1 mod n). With ring indices
/// (n = 5) l ranges over Z/5 including 0; otherwise over 1..n-1.
int choose_commuting_index(int n, int i, int j, bool ring);

/// conjugator . (sigma_a sigma_b^{-1})^{exponent} . conjugator^{-1}
struct ConjugateFactor {
  BraidWord conjugator;
  int core_a = 0;
  int core_b = 0;
  int exponent = 1;
};

/// Index pair (a, b) denoting sigma_a sigma_b^{-1}; residues mod n, with 0
/// meaning sigma_0 (n = 5 ring mode only).
using IndexPair = std::pair<int, int>;

/// Expand a conjugate into a product of sigma_a sigma_b^{-1} pairs by
/// recursion on the conjugator, using the two base-case formulas with a
/// commuting generator. Ring indices are used when n = 5.
std::vector<IndexPair> appendix_conjugate_expand(int n, const ConjugateFactor& factor);

/// Replace every pair containing index 0 using
/// sigma_i sigma_0^{-1} = (sigma_i sigma_1^{-1})(sigma_1 sigma_0^{-1}) and the
/// fixed 12-pair expansion of sigma_1 sigma_0^{-1} (n = 5).
std::vector<IndexPair> eliminate_sigma0(const std::vector<IndexPair>& pairs);

/// Letter over the alphabet {sigma_1 sigma_x^{-1} : 2 <= x <= n-1}.
struct Sigma1Letter {
  int target;  // x
  int sign;
  bool operator==(const Sigma1Letter&) const = default;
};

/// sigma_i sigma_j^{-1} = (sigma_1 sigma_i^{-1})^{-1}(sigma_1 sigma_j^{-1}).
std::vector<Sigma1Letter> pairs_to_sigma1_alphabet(const std::vector<IndexPair>& pairs);

/// Product of the pairs as a braid word (sigma_0 expanded), free-reduced.
BraidWord expand_pairs(int n, const std::vector<IndexPair>& pairs);

/// Factor a zero-exponent-sum word into sigma_1-conjugates of the building
/// blocks; the ordered product of the factors is freely equal to w.
std::vector<ConjugateFactor> telescope_decompose(const BraidWord& w);

BraidWord expand_conjugate_factor(const ConjugateFactor& f, int n);

/// Full pipeline: telescope -> conjugate expansion (-> sigma_0 elimination
/// when n = 5) -> sigma_1 alphabet -> Theorem-1 chains per letter.
TwoGenSLP rewrite_full(const RewriteParams& params, const BraidWord& w);

/// The sigma_1-alphabet word an input factors through; exposed so that
/// certificates can record the intermediate stages.
struct RewritePipeline {
  std::vector<ConjugateFactor> factors;
  std::vector<IndexPair> pairs;           // after sigma_0 elimination if any
  std::vector<Sigma1Letter> alphabet;
  std::vector<std::array<int, 6>> base_instances;  // (t, sign, a, b, l, m) wraps used
  std::vector<int> sigma0_elims;                   // i of every (i,0)/(0,i) replaced
  TwoGenSLP slp;
};
RewritePipeline rewrite_full_pipeline(const RewriteParams& params, const BraidWord& w);

/// Concatenated Theorem-1 chains for an alphabet word, with free cancellation
/// of adjacent inverse symbols; the deterministic root construction.
std::vector<SlpTerm> build_root_from_alphabet(const RewriteParams& params,
                                              const std::vector<Sigma1Letter>& alphabet);

}  // namespace braidgen
