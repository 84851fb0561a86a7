#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "braidgen/word.hpp"

namespace braidgen {

/// A permutation braid: positive braid in which each pair of strands crosses
/// at most once. In bijection with permutations; a left divisor of Delta.
struct CanonicalFactor {
  int n = 2;
  Permutation perm;

  bool operator==(const CanonicalFactor&) const = default;
  /// The unique positive reduced word for this factor (lexicographically
  /// least choice of descent at each step).
  BraidWord to_word() const;
};

/// Garside left normal form: Delta^p A_1 ... A_s with each A_i a canonical
/// factor strictly between identity and Delta, and each adjacent pair
/// left-weighted. Unique per group element; values are bit-comparable.
struct NormalForm {
  int n = 2;
  long long delta_power = 0;
  std::vector<CanonicalFactor> factors;

  bool operator==(const NormalForm&) const = default;
  std::size_t canonical_length() const { return factors.size(); }
  /// "D^p | perm1 | perm2 | ..." with permutations in one-line image notation.
  std::string to_string() const;
  BraidWord to_word() const;
};

/// Normal-form engines. All produce the identical (unique) normal form.
///  Naive:    letter-by-letter incremental absorption; the reference.
///  Serial:   divide-and-conquer merge of chunk normal forms.
///  Parallel: the same divide-and-conquer with OpenMP tasks.
///  Auto:     Parallel for long words when OpenMP has threads, else Serial.
enum class Engine { Auto, Naive, Serial, Parallel };

NormalForm normal_form(const BraidWord& w, Engine engine = Engine::Auto);

/// Word-problem solver: true iff w1 and w2 represent the same element of B_n.
bool equal(const BraidWord& w1, const BraidWord& w2, Engine engine = Engine::Auto);

bool is_identity(const BraidWord& w, Engine engine = Engine::Auto);

/// Delta (the half-twist) as a word.
BraidWord delta_word(int n);

NormalForm parse_normal_form(int n, const std::string& text);

}  // namespace braidgen
