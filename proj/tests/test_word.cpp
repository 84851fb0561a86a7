#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

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

}  // namespace

TEST_CASE("make_word validates and preserves letters") {
  const BraidWord w = make_word(4, {1, -3});
  CHECK(w.n == 4);
  CHECK(w.letters == std::vector<Letter>{1, -3});

  CHECK_THROWS_AS(make_word(4, {1, -4}), IndexOutOfRange);
  CHECK_THROWS_AS(make_word(4, {0}), IndexOutOfRange);
  CHECK_THROWS_AS(make_word(1, {}), BadStrandCount);

  // alpha^2 sigma_1^{-10} in B_6, letters exactly as given.
  std::vector<Letter> tokens;
  for (int r = 0; r < 2; ++r)
    for (int i = 1; i <= 5; ++i) tokens.push_back(i);
  for (int r = 0; r < 10; ++r) tokens.push_back(-1);
  const BraidWord rw = make_word(6, tokens);
  CHECK(rw.letters.size() == 20);
  CHECK(rw.letters == concat(alpha_power(6, 2), word_power(make_word(6, {1}), -10)).letters);
}

TEST_CASE("free_reduce cancels adjacent inverse pairs only") {
  CHECK(free_reduce(make_word(3, {1, -1})).empty());
  CHECK(free_reduce(make_word(4, {1, -2, 2, 3})).letters == std::vector<Letter>{1, 3});
  // Idempotence on random words.
  std::mt19937_64 rng(7);
  for (int c = 0; c < 50; ++c) {
    const BraidWord w = random_word(rng, 5, 30);
    const BraidWord r = free_reduce(w);
    CHECK(free_reduce(r).letters == r.letters);
  }
}

TEST_CASE("concat, invert, conjugate") {
  CHECK(invert(make_word(4, {1, -3})).letters == std::vector<Letter>{3, -1});
  const BraidWord w = make_word(4, {2, -3, 1});
  CHECK(conjugate(BraidWord{4, {}}, w).letters == free_reduce(w).letters);
  CHECK_THROWS_AS(concat(make_word(3, {1}), make_word(4, {1})), StrandCountMismatch);

  std::mt19937_64 rng(11);
  for (int c = 0; c < 50; ++c) {
    const BraidWord a = random_word(rng, 6, 12);
    const BraidWord b = random_word(rng, 6, 12);
    CHECK(exponent_sum(concat(a, b)) == exponent_sum(a) + exponent_sum(b));
  }
}

TEST_CASE("exponent_sum") {
  CHECK(exponent_sum(make_word(4, {1, -3})) == 0);
  CHECK(exponent_sum(make_word(3, {1, 2})) == 2);
  for (int n : {5, 6, 8})
    for (int k : {1, 2, 3}) {
      const BraidWord w = concat(alpha_power(n, k), word_power(make_word(n, {1}), -static_cast<long long>(k) * (n - 1)));
      CHECK(exponent_sum(w) == 0);
    }
}

TEST_CASE("permutation_image") {
  const Permutation p1 = permutation_image(make_word(3, {1}));
  CHECK(p1(1) == 2);
  CHECK(p1(2) == 1);
  CHECK(p1(3) == 3);

  const Permutation p2 = permutation_image(make_word(4, {1, -3}));
  CHECK(p2(1) == 2);
  CHECK(p2(2) == 1);
  CHECK(p2(3) == 4);
  CHECK(p2(4) == 3);
  CHECK(p2.sign() == 1);

  // alpha in B_5 is the 5-cycle; compose the transpositions directly.
  Permutation expected = Permutation::transposition(5, 1) * Permutation::transposition(5, 2) *
                         Permutation::transposition(5, 3) * Permutation::transposition(5, 4);
  CHECK(permutation_image(alpha_power(5, 1)) == expected);
  CHECK(permutation_image(alpha_power(5, 1))(1) == 2);

  // Homomorphism and parity.
  std::mt19937_64 rng(13);
  for (int c = 0; c < 50; ++c) {
    const BraidWord a = random_word(rng, 6, 10);
    const BraidWord b = random_word(rng, 6, 10);
    CHECK(permutation_image(concat(a, b)) == permutation_image(a) * permutation_image(b));
    const int parity = static_cast<int>(((exponent_sum(a) % 2) + 2) % 2);
    CHECK(permutation_image(a).sign() == (parity == 0 ? 1 : -1));
  }
}

TEST_CASE("alpha_power") {
  CHECK(alpha_power(5, 1).letters == std::vector<Letter>{1, 2, 3, 4});
  CHECK(alpha_power(5, 0).empty());
  CHECK(alpha_power(6, 2).letters == std::vector<Letter>{1, 2, 3, 4, 5, 1, 2, 3, 4, 5});
  CHECK(alpha_power(4, -1).letters == std::vector<Letter>{-3, -2, -1});
  CHECK_THROWS_AS(alpha_power(2, 1), BadStrandCount);
}

TEST_CASE("sigma with cyclic index") {
  CHECK(sigma(5, 3, 1).letters == std::vector<Letter>{3});
  CHECK(sigma(5, 0, 1).letters == std::vector<Letter>{1, 2, 3, 4, -3, -2, -1});
  CHECK(sigma(5, 0, -1).letters == std::vector<Letter>{1, 2, 3, -4, -3, -2, -1});
  CHECK(sigma(7, 9, -1).letters == std::vector<Letter>{-2});
  CHECK(sigma(5, -1, 1).letters == std::vector<Letter>{4});
}

TEST_CASE("shift_conjugate") {
  CHECK(shift_conjugate(make_word(6, {1, -2}), 2).letters == std::vector<Letter>{3, -4});
  std::mt19937_64 rng(17);
  for (int c = 0; c < 30; ++c) {
    const BraidWord w = random_word(rng, 6, 15);
    CHECK(shift_conjugate(w, 0).letters == free_reduce(w).letters);
    const long long m = static_cast<long long>(rng() % 13) - 6;
    CHECK(exponent_sum(shift_conjugate(w, m)) == exponent_sum(w));
  }
}

TEST_CASE("text format round trip") {
  CHECK(parse_word(4, "1 -3").letters == std::vector<Letter>{1, -3});
  CHECK(parse_word(4, "1^2 2 1^-3").letters == std::vector<Letter>{1, 1, 2, -1, -1, -1});
  CHECK(parse_word(5, "0").letters == sigma(5, 0, 1).letters);
  CHECK(parse_word(5, "-0").letters == sigma(5, 0, -1).letters);
  CHECK(word_to_string(make_word(4, {1, 1, 2, -1, -1, -1})) == "1^2 2 1^-3");
  CHECK(word_to_string(BraidWord{4, {}}).empty());
  CHECK_THROWS_AS(parse_word(4, "1 junk"), ParseError);
  CHECK_THROWS_AS(parse_word(4, "5"), IndexOutOfRange);

  std::mt19937_64 rng(19);
  for (int c = 0; c < 50; ++c) {
    const BraidWord w = random_word(rng, 7, 25);
    CHECK(parse_word(7, word_to_string(w)).letters == w.letters);
  }
}

TEST_CASE("permutation basics") {
  const Permutation id = Permutation::identity(4);
  CHECK(id.is_identity());
  std::mt19937_64 rng(23);
  for (int c = 0; c < 40; ++c) {
    const Permutation p = permutation_image(random_word(rng, 6, 12));
    const Permutation q = permutation_image(random_word(rng, 6, 12));
    const Permutation r = permutation_image(random_word(rng, 6, 12));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * p.inverse() == Permutation::identity(6));
  }
}
