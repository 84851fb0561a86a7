#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "braidgen/garside.hpp"
#include "braidgen/garside_detail.hpp"
#include "braidgen/lk.hpp"
#include "braidgen/word.hpp"

using namespace braidgen;
namespace gd = braidgen::garside_detail;

namespace {

int inversions(const Permutation& p) {
  int inv = 0;
  const int n = p.degree();
  for (int x = 1; x <= n; ++x)
    for (int y = x + 1; y <= n; ++y)
      if (p(x) > p(y)) ++inv;
  return inv;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), std::uint8_t{0});
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Brute prefix order on permutation braids: c divides a iff lengths add up.
bool brute_divides(const Permutation& c, const Permutation& a) {
  const Permutation rest = c.inverse() * a;
  return inversions(c) + inversions(rest) == inversions(a);
}

Permutation w0(int n) {
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) img[x] = static_cast<std::uint8_t>(n - 1 - x);
  return Permutation(std::move(img));
}

BraidWord random_word(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> idx(1, n - 1);
  BraidWord w{n, {}};
  for (int i = 0; i < len; ++i) {
    const int g = idx(rng);
    w.letters.push_back((rng() & 1) ? g : -g);
  }
  return w;
}

void check_is_left_normal(const NormalForm& nf) {
  const Permutation id = Permutation::identity(nf.n);
  const Permutation full = w0(nf.n);
  for (std::size_t i = 0; i < nf.factors.size(); ++i) {
    CHECK(nf.factors[i].perm != id);
    CHECK(nf.factors[i].perm != full);
    if (i + 1 < nf.factors.size()) CHECK(gd::left_weighted(nf.factors[i].perm, nf.factors[i + 1].perm));
  }
}

}  // namespace

TEST_CASE("starting and finishing sets match the divisibility definition") {
  for (int n : {3, 4, 5}) {
    for (const Permutation& p : all_permutations(n)) {
      std::uint64_t s = 0, f = 0;
      for (int g = 1; g <= n - 1; ++g) {
        const Permutation t = Permutation::transposition(n, g);
        if (brute_divides(t, p)) s |= std::uint64_t{1} << (g - 1);
        if (inversions(p * t) + 1 == inversions(p)) f |= std::uint64_t{1} << (g - 1);
      }
      CHECK(gd::starting_set(p) == s);
      CHECK(gd::finishing_set(p) == f);
    }
  }
}

TEST_CASE("meet is the maximal common prefix") {
  for (int n : {3, 4}) {
    const auto perms = all_permutations(n);
    for (const Permutation& a : perms) {
      for (const Permutation& b : perms) {
        // Brute force: common prefixes, then their unique maximum.
        Permutation best = Permutation::identity(n);
        for (const Permutation& c : perms)
          if (brute_divides(c, a) && brute_divides(c, b) && inversions(c) > inversions(best)) best = c;
        // The lattice guarantees every common prefix divides the maximum.
        for (const Permutation& c : perms)
          if (brute_divides(c, a) && brute_divides(c, b)) CHECK(brute_divides(c, best));
        CHECK(gd::meet(a, b) == best);
      }
    }
  }
}

TEST_CASE("right complement and tau") {
  for (int n : {3, 4, 5}) {
    const Permutation full = w0(n);
    for (const Permutation& a : all_permutations(n)) {
      const Permutation da = gd::right_complement(a);
      CHECK(a * da == full);
      CHECK(inversions(a) + inversions(da) == inversions(full));
      CHECK(gd::tau(a) == full * a * full);
    }
  }
}

TEST_CASE("left-weighted fix: exhaustive postconditions") {
  for (int n : {3, 4}) {
    const auto perms = all_permutations(n);
    for (const Permutation& a0 : perms) {
      for (const Permutation& b0 : perms) {
        Permutation a = a0, b = b0;
        const bool changed = gd::fix(a, b);
        CHECK(gd::left_weighted(a, b));
        CHECK(a * b == a0 * b0);
        CHECK(inversions(a) + inversions(b) == inversions(a0) + inversions(b0));
        // Letters only moved from b into a, and exactly the meet moved.
        CHECK(brute_divides(a0, a));
        const Permutation c = a0.inverse() * a;
        CHECK(brute_divides(c, b0));
        CHECK(c == gd::meet(gd::right_complement(a0), b0));
        CHECK(changed == (inversions(c) > 0));
        if (!changed) {
          CHECK(a == a0);
          CHECK(b == b0);
        }
      }
    }
  }
}

TEST_CASE("normal form: fixed small cases") {
  CHECK(normal_form(BraidWord{4, {}}).to_string() == "D^0 |");
  CHECK(normal_form(make_word(3, {1, 2, 1})) == normal_form(make_word(3, {2, 1, 2})));
  CHECK(normal_form(make_word(3, {1, 2, 1})).delta_power == 1);
  CHECK(normal_form(make_word(3, {1, 2, 1})).factors.empty());

  const NormalForm nf = normal_form(make_word(3, {-1}));
  CHECK(nf.delta_power == -1);
  REQUIRE(nf.factors.size() == 1);
  CHECK(nf.factors[0].to_word().letters == std::vector<Letter>{1, 2});

  // B_2 is infinite cyclic on Delta = sigma_1.
  CHECK(normal_form(make_word(2, {1, 1, 1})).delta_power == 3);
  CHECK(is_identity(make_word(2, {1, -1})));
}

TEST_CASE("normal form: engines agree and round-trip") {
  std::mt19937_64 rng(101);
  for (int n : {2, 3, 4, 5, 7}) {
    for (int c = 0; c < 30; ++c) {
      const BraidWord w = random_word(rng, n, 1 + static_cast<int>(rng() % 120));
      const NormalForm a = normal_form(w, Engine::Naive);
      const NormalForm b = normal_form(w, Engine::Serial);
      const NormalForm d = normal_form(w, Engine::Parallel);
      CHECK(a == b);
      CHECK(b == d);
      check_is_left_normal(b);
      // Round trip: the normal form's own word has the same normal form.
      CHECK(normal_form(b.to_word()) == b);
    }
  }
}

TEST_CASE("engines agree on structured words") {
  // Periodic and cancellation-heavy shapes exercise the Delta bookkeeping.
  std::vector<BraidWord> words;
  words.push_back(word_power(make_word(3, {1, 2}), 700));       // Delta-power buildup
  words.push_back(alpha_power(7, 300));                         // periodic, positive
  words.push_back(word_power(delta_word(6), -80));              // negative Delta power
  {
    BraidWord w{7, {}};
    for (int i = 0; i < 400; ++i) {
      w.letters.push_back(1);
      w.letters.push_back(2);
    }
    for (int i = 0; i < 400; ++i) {
      w.letters.push_back(-1);
      w.letters.push_back(-2);
    }
    words.push_back(w);  // cancels to a short element through a long junction
  }
  words.push_back(concat(alpha_power(5, 120), invert(alpha_power(5, 119))));
  for (const BraidWord& w : words) {
    const NormalForm a = normal_form(w, Engine::Naive);
    const NormalForm b = normal_form(w, Engine::Serial);
    const NormalForm c = normal_form(w, Engine::Parallel);
    CHECK(a == b);
    CHECK(b == c);
    check_is_left_normal(b);
    CHECK(normal_form(b.to_word()) == b);
  }
  // The closed forms: (s1 s2)^3 = Delta^2 in B_3, alpha^n = Delta^2 in B_n.
  CHECK(normal_form(word_power(make_word(3, {1, 2}), 700)).delta_power == 466);
  CHECK(normal_form(alpha_power(7, 7)).delta_power == 2);
  CHECK(normal_form(alpha_power(7, 7)).factors.empty());
}

TEST_CASE("normal form properties") {
  std::mt19937_64 rng(103);
  const int n = 5;
  const BraidWord delta = delta_word(n);
  for (int c = 0; c < 25; ++c) {
    const BraidWord w = random_word(rng, n, 40);
    CHECK(equal(w, free_reduce(w)));
    CHECK(is_identity(concat(w, invert(w))));
    const NormalForm nf = normal_form(w);
    const NormalForm nfd = normal_form(concat(delta, w));
    CHECK(nfd.delta_power == nf.delta_power + 1);
    CHECK(nfd.factors.size() == nf.factors.size());
  }
}

TEST_CASE("equal is an equivalence relation on sampled words") {
  std::mt19937_64 rng(107);
  std::vector<BraidWord> words;
  for (int c = 0; c < 12; ++c) words.push_back(random_word(rng, 4, 10));
  for (const auto& a : words) CHECK(equal(a, a));
  for (const auto& a : words)
    for (const auto& b : words) CHECK(equal(a, b) == equal(b, a));
  for (const auto& a : words)
    for (const auto& b : words)
      for (const auto& c : words)
        if (equal(a, b) && equal(b, c)) CHECK(equal(a, c));
}

TEST_CASE("word problem basics") {
  CHECK(equal(make_word(5, {1, 3}), make_word(5, {3, 1})));
  CHECK_FALSE(equal(make_word(3, {1}), make_word(3, {2})));
  CHECK(is_identity(make_word(5, {1, 3, -1, -3})));
  CHECK_THROWS_AS(equal(make_word(3, {1}), make_word(4, {1})), StrandCountMismatch);
  // Braid relation at the word-problem level, all valid indices.
  for (int n : {3, 4, 5, 6, 7})
    for (int i = 1; i + 1 <= n - 1; ++i)
      CHECK(equal(make_word(n, {i, i + 1, i}), make_word(n, {i + 1, i, i + 1})));
}

TEST_CASE("sigma_0 closes the cyclic commutation pattern") {
  // sigma_0 commutes with sigma_j exactly when j is not 1 or n-1.
  for (int n : {5, 6, 7}) {
    const BraidWord s0 = sigma(n, 0, 1);
    for (int j = 1; j <= n - 1; ++j) {
      const BraidWord sj = make_word(n, {j});
      const bool expect = j != 1 && j != n - 1;
      CHECK(equal(concat(s0, sj), concat(sj, s0)) == expect);
    }
  }
}

TEST_CASE("engine strand-count limit") {
  BraidWord w{65, {1}};
  CHECK_THROWS_AS(normal_form(w), BadStrandCount);
  CHECK_NOTHROW(normal_form(BraidWord{64, {1}}));
}

TEST_CASE("garside agrees with the Lawrence-Krammer oracle on random pairs") {
  std::mt19937_64 rng(109);
  for (int n : {3, 4, 5}) {
    for (int c = 0; c < 40; ++c) {
      const BraidWord w1 = random_word(rng, n, static_cast<int>(rng() % 16));
      BraidWord w2 = random_word(rng, n, static_cast<int>(rng() % 16));
      if (c % 4 == 0) w2 = free_reduce(concat(w1, BraidWord{n, {}}));
      CHECK(equal(w1, w2) == equal_via_lk(w1, w2));
    }
  }
}

TEST_CASE("normal form text round trip") {
  std::mt19937_64 rng(113);
  for (int c = 0; c < 20; ++c) {
    const NormalForm nf = normal_form(random_word(rng, 5, 25));
    CHECK(parse_normal_form(5, nf.to_string()) == nf);
  }
}

TEST_CASE("delta word") {
  CHECK(delta_word(3).letters == std::vector<Letter>{1, 2, 1});
  CHECK(normal_form(delta_word(6)).delta_power == 1);
  CHECK(normal_form(delta_word(6)).factors.empty());
}
