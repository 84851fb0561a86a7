#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "braidgen/errors.hpp"

namespace braidgen {

/// A letter of a braid word: +i denotes sigma_i, -i denotes sigma_i^{-1}.
/// Zero is never stored.
using Letter = std::int32_t;

/// A word in the Artin generators sigma_1 .. sigma_{n-1} of B_n.
/// Plain data; all operations are free functions and leave inputs untouched.
struct BraidWord {
  int n = 2;
  std::vector<Letter> letters;

  bool operator==(const BraidWord&) const = default;
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
};

/// Permutation of {1,..,n}, stored 0-based (img[x] = image of x).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> img);
  static Permutation identity(int n);
  static Permutation transposition(int n, int i);  // swaps i, i+1 (1-based i)

  int degree() const { return static_cast<int>(img_.size()); }
  /// 1-based image: where strand x ends up.
  int operator()(int x) const { return img_[static_cast<std::size_t>(x - 1)] + 1; }
  const std::vector<std::uint8_t>& images() const { return img_; }

  /// Function composition: (p * q)(x) = p(q(x)), i.e. q acts first.
  Permutation operator*(const Permutation& q) const;
  Permutation inverse() const;
  bool is_identity() const;
  int sign() const;  // +1 even, -1 odd

  bool operator==(const Permutation&) const = default;
  std::string to_string() const;  // one-line image notation, 1-based

 private:
  std::vector<std::uint8_t> img_;
};

// ---- construction and elementary operations -------------------------------

/// Build a word from signed generator indices, exactly as given (no reduction).
BraidWord make_word(int n, const std::vector<Letter>& tokens);

/// Cancel adjacent sigma_i^e sigma_i^{-e} pairs until none remain.
BraidWord free_reduce(const BraidWord& w);

BraidWord concat(const BraidWord& w1, const BraidWord& w2);
BraidWord invert(const BraidWord& w);
/// g w g^{-1}, free-reduced.
BraidWord conjugate(const BraidWord& g, const BraidWord& w);
/// w^e (formal inverse for e < 0), free-reduced.
BraidWord word_power(const BraidWord& w, long long e);

/// Sum of letter signs; the abelianization map B_n -> Z.
long long exponent_sum(const BraidWord& w);

/// Image in the symmetric group, sigma_i -> (i, i+1).
/// First letter acts last: image(w1 w2) = image(w1) * image(w2).
Permutation permutation_image(const BraidWord& w);

/// The periodic element alpha = sigma_1 ... sigma_{n-1}, raised to k.
BraidWord alpha_power(int n, long long k);

/// alpha^k as a value; expands to a word of length |k|*(n-1).
struct RotationPower {
  int n;
  long long k;
  BraidWord expand() const { return alpha_power(n, k); }
};

/// Generator with cyclic index: for i != 0 mod n the single letter sigma_i^sign;
/// for i == 0 mod n the expanded half-twist alpha sigma_{n-1}^sign alpha^{-1},
/// free-reduced. sigma_0 is never a storable letter.
BraidWord sigma(int n, long long i, int sign);

/// Replace each letter sigma_i^e by sigma(n, i+m, e). Represents the same
/// element as conjugate(alpha_power(n, m), w).
BraidWord shift_conjugate(const BraidWord& w, long long m);

// ---- text format -----------------------------------------------------------
// Whitespace-separated signed integer tokens with optional caret-power suffix:
// "1 -3" is sigma_1 sigma_3^{-1}; "1^2 2 1^-3" is sigma_1^2 sigma_2 sigma_1^{-3}.
// Token "0" is permitted on input and expanded via sigma(n, 0, .).

BraidWord parse_word(int n, const std::string& text);
std::string word_to_string(const BraidWord& w);

}  // namespace braidgen
