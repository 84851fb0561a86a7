#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "braidgen/certify.hpp"

using namespace braidgen;

namespace {

Certificate roundtrip(const Certificate& cert) { return parse_json(emit_json(cert)); }

}  // namespace

TEST_CASE("claim counts follow 2(l-1)+1") {
  const RewriteParams p52 = RewriteParams::make(5, 2);
  CHECK(build_certificate(p52, 3).claims.size() == 1);  // l = 1, telescope only
  CHECK(build_certificate(p52, 3).claims[0].rule == Rule::TELESCOPE);
  CHECK(build_certificate(p52, 2).claims.size() == 5);  // l = 3

  const RewriteParams p72 = RewriteParams::make(7, 2);
  CHECK(build_certificate(p72, 6).claims.size() == 11);  // l = 6
}

TEST_CASE("built certificates verify") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 2}, {5, 3}, {7, 3}, {8, 3}}) {
    const RewriteParams p = RewriteParams::make(n, k);
    for (int i = 2; i <= n - 1; ++i) {
      const Certificate cert = build_certificate(p, i);
      const VerificationReport rep = verify_certificate(cert);
      CHECK(rep.pass);
      CHECK(rep.structural_error.empty());
      for (const auto& c : rep.claims) CHECK(c.pass);
    }
  }
}

TEST_CASE("claim words stay short") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 2}, {7, 5}, {11, 9}}) {
    const RewriteParams p = RewriteParams::make(n, k);
    const Certificate cert = build_certificate(p, 2);
    for (const auto& c : cert.claims) {
      CHECK(c.lhs.size() <= 4u * static_cast<unsigned>(p.n) * static_cast<unsigned>(p.N));
      CHECK(c.rhs.size() <= 4u * static_cast<unsigned>(p.n) * static_cast<unsigned>(p.N));
    }
  }
}

TEST_CASE("a single-letter perturbation fails exactly that claim") {
  const RewriteParams p = RewriteParams::make(5, 2);
  Certificate cert = build_certificate(p, 2);
  REQUIRE(cert.claims.size() == 5);
  const std::size_t victim = 2;
  Letter& letter = cert.claims[victim].rhs.letters.at(3);
  letter = letter == 1 ? 2 : 1;

  const VerificationReport rep = verify_certificate(cert);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_failing_claim == static_cast<int>(victim));
  for (std::size_t i = 0; i < rep.claims.size(); ++i) CHECK(rep.claims[i].pass == (i != victim));
}

TEST_CASE("json round trip is structurally identical") {
  const RewriteParams p = RewriteParams::make(7, 2);
  const Certificate cert = build_certificate(p, 4);
  const Certificate back = roundtrip(cert);
  CHECK(back.n == cert.n);
  CHECK(back.k == cert.k);
  REQUIRE(back.claims.size() == cert.claims.size());
  for (std::size_t i = 0; i < cert.claims.size(); ++i) {
    CHECK(back.claims[i].rule == cert.claims[i].rule);
    CHECK(back.claims[i].params == cert.claims[i].params);
    CHECK(back.claims[i].lhs == cert.claims[i].lhs);
    CHECK(back.claims[i].rhs == cert.claims[i].rhs);
  }
  CHECK(back.target == cert.target);
  CHECK(back.slp.rules == cert.slp.rules);
  CHECK(back.slp.root == cert.slp.root);
  CHECK(emit_json(back) == emit_json(cert));
  CHECK(verify_certificate(back).pass);
}

TEST_CASE("parse diagnostics") {
  CHECK_THROWS_AS(parse_json("{"), ParseError);
  CHECK_THROWS_AS(parse_json(R"({"n": 5, "k": 2, "claims": [{"rule": "NO_SUCH_RULE",
    "params": {}, "lhs": "1", "rhs": "1"}], "slp": [], "target": ""})"),
                  ParseError);
  // Invalid (n,k) with a conclusion present.
  CHECK_THROWS_AS(parse_json(R"({"n": 6, "k": 2, "claims": [],
    "slp": ["ROOT = S0"], "target": "1 -3"})"),
                  ParseError);
  // Word with out-of-range generator.
  CHECK_THROWS_AS(parse_json(R"({"n": 5, "k": 2, "claims": [{"rule": "AD_HOC",
    "params": {}, "lhs": "7", "rhs": ""}], "slp": [], "target": ""})"),
                  ParseError);
}

TEST_CASE("hand-written claim-only certificate verifies") {
  // The first B6 display, written out as certificate JSON by hand.
  const std::string text = R"({
    "n": 6,
    "k": 0,
    "claims": [
      {
        "rule": "B6_IDENTITY",
        "params": {"id": 1},
        "lhs": "1 2 3 4 5 1 2 3 4 5 1^-10 1 -3 1^10 5^-1 4^-1 3^-1 2^-1 1^-1 5^-1 4^-1 3^-1 2^-1 1^-1",
        "rhs": "3 -5"
      }
    ],
    "slp": [],
    "target": ""
  })";
  const Certificate cert = parse_json(text);
  CHECK_FALSE(cert.has_conclusion);
  const VerificationReport rep = verify_certificate(cert);
  CHECK(rep.pass);
}

TEST_CASE("a tampered hand-written claim fails the shape check") {
  const std::string text = R"({
    "n": 6,
    "k": 0,
    "claims": [
      {"rule": "B6_IDENTITY", "params": {"id": 1}, "lhs": "3 -5", "rhs": "3 -5"}
    ],
    "slp": [],
    "target": ""
  })";
  const VerificationReport rep = verify_certificate(parse_json(text));
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_failing_claim == 0);
}

TEST_CASE("rewrite-full certificates verify end to end") {
  std::mt19937_64 rng(53);
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 2}, {7, 3}}) {
    const RewriteParams p = RewriteParams::make(n, k);
    std::uniform_int_distribution<int> idx(1, n - 1);
    for (int c = 0; c < 6; ++c) {
      BraidWord w{n, {}};
      for (int i = 0; i < 3; ++i) {
        w.letters.push_back(idx(rng));
        w.letters.push_back(-idx(rng));
      }
      std::shuffle(w.letters.begin(), w.letters.end(), rng);
      const RewritePipeline pipe = rewrite_full_pipeline(p, w);
      const Certificate cert = build_rewrite_certificate(p, w, pipe);
      const VerificationReport rep = verify_certificate(cert);
      CHECK(rep.pass);
      if (!rep.pass) {
        for (std::size_t i = 0; i < rep.claims.size(); ++i)
          if (!rep.claims[i].pass) MESSAGE("claim ", i, ": ", rep.claims[i].reason);
        MESSAGE(rep.structural_error);
      }
      // Round trip through JSON keeps it verifiable.
      CHECK(verify_certificate(roundtrip(cert)).pass);
    }
  }
}

TEST_CASE("structural bookkeeping catches missing claims") {
  const RewriteParams p = RewriteParams::make(5, 2);
  Certificate cert = build_certificate(p, 2);
  // Drop a recurrence claim the derivation needs.
  cert.claims.erase(cert.claims.begin());
  const VerificationReport rep = verify_certificate(cert);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.structural_error.empty());
}

TEST_CASE("the parser survives mangled input") {
  const std::string good = emit_json(build_certificate(RewriteParams::make(5, 2), 2));
  // Truncations: either a clean ParseError or a successful parse, never a crash.
  for (std::size_t len = 0; len < good.size(); len += 7) {
    try {
      (void)parse_json(good.substr(0, len));
    } catch (const ParseError&) {
    }
  }
  // Point mutations.
  std::mt19937_64 rng(59);
  for (int c = 0; c < 200; ++c) {
    std::string bad = good;
    bad[rng() % bad.size()] = static_cast<char>("{}[]:,x0-\""[rng() % 10]);
    try {
      const Certificate cert = parse_json(bad);
      (void)verify_certificate(cert, 1);
    } catch (const BraidError&) {
    }
  }
}

TEST_CASE("verification is claim-parallel safe") {
  const RewriteParams p = RewriteParams::make(9, 2);
  const Certificate cert = build_certificate(p, 8);
  const VerificationReport serial = verify_certificate(cert, 1);
  const VerificationReport parallel = verify_certificate(cert, 2);
  CHECK(serial.pass == parallel.pass);
  REQUIRE(serial.claims.size() == parallel.claims.size());
  for (std::size_t i = 0; i < serial.claims.size(); ++i)
    CHECK(serial.claims[i].pass == parallel.claims[i].pass);
}
