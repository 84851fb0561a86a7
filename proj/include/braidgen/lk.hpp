#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "braidgen/word.hpp"

namespace braidgen {

/// Exact integer Laurent polynomial in two variables q, t.
/// Canonical form: terms sorted by (q-exponent, t-exponent), no zero
/// coefficients. Coefficients are 128-bit with overflow checking, so a
/// disagreement with garside_nf is always a genuine bug, never roundoff.
class LaurentPoly2 {
 public:
  struct Term {
    std::int32_t qe = 0;
    std::int32_t te = 0;
    __int128 c = 0;
    bool operator==(const Term&) const = default;
  };

  LaurentPoly2() = default;
  static LaurentPoly2 monomial(long long c, int qe, int te);
  static LaurentPoly2 one() { return monomial(1, 0, 0); }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  LaurentPoly2 operator+(const LaurentPoly2&) const;
  LaurentPoly2 operator-(const LaurentPoly2&) const;
  LaurentPoly2 operator*(const LaurentPoly2&) const;
  bool operator==(const LaurentPoly2&) const = default;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Matrix of the Lawrence-Krammer representation, dimension n(n-1)/2 over
/// LaurentPoly2. Basis vectors are indexed by strand pairs (r,s), r < s.
class LKMatrix {
 public:
  LKMatrix() = default;
  LKMatrix(int n, int dim);
  static LKMatrix identity(int n);

  int n() const { return n_; }
  int dim() const { return dim_; }
  const LaurentPoly2& at(int r, int c) const;
  LaurentPoly2& at(int r, int c);

  LKMatrix operator*(const LKMatrix&) const;
  bool operator==(const LKMatrix&) const = default;
  bool is_identity() const;

 private:
  int n_ = 0;
  int dim_ = 0;
  std::vector<LaurentPoly2> m_;  // column-major
};

/// Basis index of the strand pair (r,s), 1 <= r < s <= n.
int lk_basis_index(int n, int r, int s);

/// Representation matrix of sigma_i^{sign}.
LKMatrix lk_generator(int n, int i, int sign);

/// Product of generator matrices in word order.
/// Throws WordTooLong beyond max_letters (entry growth is rapid).
LKMatrix lk_matrix(const BraidWord& w, std::size_t max_letters = 64);

/// Independent equality oracle: faithfulness of the representation makes
/// matrix equality equivalent to braid equality.
bool equal_via_lk(const BraidWord& w1, const BraidWord& w2, std::size_t max_letters = 64);

}  // namespace braidgen
