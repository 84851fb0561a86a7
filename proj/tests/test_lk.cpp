#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "braidgen/lk.hpp"
#include "braidgen/word.hpp"

using namespace braidgen;

namespace {

BraidWord random_word(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> idx(1, n - 1);
  BraidWord w{n, {}};
  for (int i = 0; i < len; ++i) {
    const int g = idx(rng);
    w.letters.push_back((rng() & 1) ? g : -g);
  }
  return w;
}

LaurentPoly2 random_poly(std::mt19937_64& rng) {
  LaurentPoly2 p;
  const int terms = static_cast<int>(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    p = p + LaurentPoly2::monomial(static_cast<long long>(rng() % 11) - 5,
                                   static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3);
  }
  return p;
}

}  // namespace

TEST_CASE("Laurent polynomial ring axioms on sampled triples") {
  std::mt19937_64 rng(211);
  const LaurentPoly2 zero;
  for (int c = 0; c < 60; ++c) {
    const LaurentPoly2 a = random_poly(rng), b = random_poly(rng), d = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + d == a + (b + d));
    CHECK(a * b == b * a);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK(a - a == zero);
    CHECK(a * LaurentPoly2::one() == a);
    CHECK(a * zero == zero);
  }
}

TEST_CASE("generator matrices satisfy the braid relations") {
  for (int n : {3, 4, 5}) {
    for (int i = 1; i + 1 <= n - 1; ++i) {
      const LKMatrix a = lk_generator(n, i, 1);
      const LKMatrix b = lk_generator(n, i + 1, 1);
      CHECK(a * b * a == b * a * b);
    }
    for (int i = 1; i <= n - 1; ++i)
      for (int j = i + 2; j <= n - 1; ++j) {
        const LKMatrix a = lk_generator(n, i, 1);
        const LKMatrix b = lk_generator(n, j, 1);
        CHECK(a * b == b * a);
      }
  }
}

TEST_CASE("inverse generators") {
  for (int n : {3, 4, 5, 6}) {
    for (int i = 1; i <= n - 1; ++i) {
      CHECK((lk_generator(n, i, 1) * lk_generator(n, i, -1)).is_identity());
      CHECK((lk_generator(n, i, -1) * lk_generator(n, i, 1)).is_identity());
    }
  }
  CHECK_THROWS_AS(lk_generator(4, 4, 1), IndexOutOfRange);
}

TEST_CASE("generators are annihilated by (M-1)(M+q)(M-tq^2)") {
  // This cubic is what the inverse construction divides by.
  for (int n : {3, 4, 5}) {
    const int d = n * (n - 1) / 2;
    for (int i = 1; i <= n - 1; ++i) {
      const LKMatrix m = lk_generator(n, i, 1);
      const LKMatrix m2 = m * m;
      const LKMatrix m3 = m2 * m;
      const LaurentPoly2 a = LaurentPoly2::monomial(1, 1, 0) - LaurentPoly2::monomial(1, 0, 0) -
                             LaurentPoly2::monomial(1, 2, 1);
      const LaurentPoly2 b = LaurentPoly2::monomial(1, 2, 1) - LaurentPoly2::monomial(1, 3, 1) -
                             LaurentPoly2::monomial(1, 1, 0);
      const LaurentPoly2 c = LaurentPoly2::monomial(1, 3, 1);
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
          LaurentPoly2 v = m3.at(r, s) + a * m2.at(r, s) + b * m.at(r, s);
          if (r == s) v = v + c;
          CHECK(v.is_zero());
        }
    }
  }
}

TEST_CASE("lk_matrix basics") {
  CHECK(lk_matrix(BraidWord{4, {}}).is_identity());
  CHECK(lk_matrix(make_word(4, {1, -1})).is_identity());
  CHECK(lk_matrix(make_word(3, {1, 2, 1})) == lk_matrix(make_word(3, {2, 1, 2})));
  BraidWord longw{4, std::vector<Letter>(65, 1)};
  CHECK_THROWS_AS(lk_matrix(longw), WordTooLong);
  CHECK_NOTHROW(lk_matrix(longw, 100));
}

TEST_CASE("lk_matrix is a homomorphism") {
  std::mt19937_64 rng(223);
  for (int c = 0; c < 15; ++c) {
    const BraidWord a = random_word(rng, 5, 8);
    const BraidWord b = random_word(rng, 5, 8);
    CHECK(lk_matrix(concat(a, b), 128) == lk_matrix(a) * lk_matrix(b));
  }
}

TEST_CASE("equal_via_lk") {
  CHECK(equal_via_lk(make_word(3, {1, 2, 1}), make_word(3, {2, 1, 2})));
  CHECK_FALSE(equal_via_lk(make_word(3, {1}), make_word(3, {-1})));
  CHECK(equal_via_lk(make_word(5, {1, 3}), make_word(5, {3, 1})));
  CHECK_THROWS_AS(equal_via_lk(make_word(3, {1}), make_word(4, {1})), StrandCountMismatch);
}

TEST_CASE("the B6 conjugation display holds in the representation") {
  const BraidWord b = make_word(6, {1, -3});
  const BraidWord r = concat(alpha_power(6, 2), word_power(make_word(6, {1}), -10));
  const BraidWord lhs = conjugate(r, b);  // 25 letters, within the bound
  CHECK(lhs.size() <= 64);
  CHECK(equal_via_lk(lhs, make_word(6, {3, -5})));
}
