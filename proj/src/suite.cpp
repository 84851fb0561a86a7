#include "braidgen/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "braidgen/certify.hpp"
#include "braidgen/garside.hpp"
#include "braidgen/genset.hpp"
#include "braidgen/lk.hpp"
#include "braidgen/word.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace braidgen {

namespace {

using Task = std::function<bool(std::string&)>;

struct PendingCheck {
  std::string name;
  Task run;
};

BraidWord random_word(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> idx(1, n - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  BraidWord w{n, {}};
  for (int i = 0; i < len; ++i) {
    const int g = idx(rng);
    w.letters.push_back(sgn(rng) ? g : -g);
  }
  return w;
}

BraidWord random_zero_sum_word(std::mt19937_64& rng, int n, int half_len) {
  std::uniform_int_distribution<int> idx(1, n - 1);
  std::vector<Letter> letters;
  for (int i = 0; i < half_len; ++i) {
    letters.push_back(idx(rng));
    letters.push_back(-idx(rng));
  }
  std::shuffle(letters.begin(), letters.end(), rng);
  return BraidWord{n, letters};
}

void add_background_checks(std::vector<PendingCheck>& out, int n, std::mt19937_64& rng) {
  out.push_back({"n=" + std::to_string(n) + " braid relations", [n](std::string& d) {
                   for (int i = 1; i + 1 <= n - 1; ++i) {
                     const BraidWord l = make_word(n, {i, i + 1, i});
                     const BraidWord r = make_word(n, {i + 1, i, i + 1});
                     if (!equal(l, r)) {
                       d = "failed at i=" + std::to_string(i);
                       return false;
                     }
                   }
                   return true;
                 }});
  out.push_back({"n=" + std::to_string(n) + " commutation criterion", [n](std::string& d) {
                   for (int i = 1; i <= n - 1; ++i)
                     for (int j = 1; j <= n - 1; ++j) {
                       const bool expect = std::abs(i - j) != 1;
                       const bool got = equal(make_word(n, {i, j}), make_word(n, {j, i}));
                       if (expect != got) {
                         d = "failed at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                         return false;
                       }
                     }
                   return true;
                 }});
  const std::uint64_t sub = rng();
  out.push_back({"n=" + std::to_string(n) + " shift identity", [n, sub](std::string& d) {
                   std::mt19937_64 r(sub);
                   for (int c = 0; c < 8; ++c) {
                     const BraidWord w = random_word(r, n, 12);
                     const long long m = static_cast<long long>(r() % (2 * n)) - n;
                     const BraidWord shifted = shift_conjugate(w, m);
                     if (exponent_sum(shifted) != exponent_sum(w)) {
                       d = "exponent sum changed";
                       return false;
                     }
                     if (!equal(shifted, conjugate(alpha_power(n, m), w))) {
                       d = "case " + std::to_string(c) + ", m=" + std::to_string(m);
                       return false;
                     }
                   }
                   return true;
                 }});
}

void add_theorem2_checks(std::vector<PendingCheck>& out) {
  out.push_back({"B4 relation (three generators)", [](std::string& d) {
                   const B4Generators g = theorem2_b4_generators();
                   if (!g.relation_holds) {
                     d = "w != u c u^{-1}";
                     return false;
                   }
                   for (const BraidWord* w : {&g.g1, &g.g2, &g.g3})
                     if (exponent_sum(*w) != 0) {
                       d = "generator leaves the commutator subgroup";
                       return false;
                     }
                   return true;
                 }});
  out.push_back({"psi kernel: sigma_1 sigma_3^{-1}", [](std::string& d) {
                   const BraidWord img = psi_b4_to_b3(make_word(4, {1, -3}));
                   if (!is_identity(img)) {
                     d = "psi image is not trivial";
                     return false;
                   }
                   return true;
                 }});
  for (int id = 1; id <= 4; ++id) {
    static const char* kNames[] = {
        "B6 display: r b r^{-1} = s3 s5^{-1}", "B6 display: s1 s5^{-1} = b r b r^{-1}",
        "B6 display: r a r^{-1} = s3^{-9} s4^{-1} s3^{10}",
        "B6 display: s1 s4^{-1} = b^{-9} r a r^{-1} b^{10}"};
    out.push_back({kNames[id - 1], [id](std::string& d) {
                     const BraidWord a = b6_letter_word('a');
                     const BraidWord b = b6_letter_word('b');
                     const BraidWord r = b6_letter_word('r');
                     BraidWord lhs, rhs;
                     switch (id) {
                       case 1:
                         lhs = conjugate(r, b);
                         rhs = make_word(6, {3, -5});
                         break;
                       case 2:
                         lhs = make_word(6, {1, -5});
                         rhs = substitute_abr(theorem2_b6_factor(5));
                         break;
                       case 3:
                         lhs = conjugate(r, a);
                         rhs = concat(concat(word_power(make_word(6, {3}), -9), make_word(6, {-4})),
                                      word_power(make_word(6, {3}), 10));
                         break;
                       default:
                         lhs = make_word(6, {1, -4});
                         rhs = substitute_abr(theorem2_b6_factor(4));
                         break;
                     }
                     if (!equal(lhs, rhs)) {
                       d = "identity fails";
                       return false;
                     }
                     return true;
                   }});
  }
}

void add_appendix_display_checks(std::vector<PendingCheck>& out) {
  out.push_back({"B5 master identity: s1 s0^{-1}", [](std::string& d) {
                   const BraidWord lhs = concat(make_word(5, {1}), invert(sigma(5, 0, 1)));
                   const BraidWord rhs = expand_pairs(5, eliminate_sigma0({{1, 0}}));
                   if (!equal(lhs, rhs)) {
                     d = "12-pair expansion fails";
                     return false;
                   }
                   return true;
                 }});
  out.push_back({"B5 left sub-factorization", [](std::string& d) {
                   const BraidWord lhs = parse_word(5, "1^2 2 1^-3");
                   const BraidWord rhs = expand_pairs(5, {{1, 4}, {1, 4}, {2, 4}, {4, 1}, {4, 1}, {4, 1}});
                   if (!equal(lhs, rhs)) {
                     d = "left term fails";
                     return false;
                   }
                   return true;
                 }});
  out.push_back({"B5 right sub-factorization", [](std::string& d) {
                   const BraidWord lhs = parse_word(5, "1^3 -3 -2 -1");
                   const BraidWord rhs = expand_pairs(5, {{1, 3}, {1, 4}, {1, 4}, {4, 2}, {4, 1}});
                   if (!equal(lhs, rhs)) {
                     d = "right term fails";
                     return false;
                   }
                   return true;
                 }});
  out.push_back({"B5 sigma_0 commutation", [](std::string& d) {
                   const BraidWord s0 = sigma(5, 0, 1);
                   for (int j = 1; j <= 4; ++j) {
                     const BraidWord sj = make_word(5, {j});
                     const bool expect = j == 2 || j == 3;
                     if (equal(concat(s0, sj), concat(sj, s0)) != expect) {
                       d = "sigma_0 vs sigma_" + std::to_string(j);
                       return false;
                     }
                   }
                   return true;
                 }});
}

void add_certificate_checks(std::vector<PendingCheck>& out, int n) {
  for (int k = 2; k <= n - 2; ++k) {
    if (!RewriteParams::valid(n, k)) continue;
    out.push_back({"certificates n=" + std::to_string(n) + " k=" + std::to_string(k),
                   [n, k](std::string& d) {
                     const RewriteParams params = RewriteParams::make(n, k);
                     for (int i = 2; i <= n - 1; ++i) {
                       const Certificate cert = build_certificate(params, i);
                       const VerificationReport rep = verify_certificate(cert, 1);
                       if (!rep.pass) {
                         d = "i=" + std::to_string(i) + " fails claim " +
                             std::to_string(rep.first_failing_claim);
                         return false;
                       }
                     }
                     return true;
                   }});
  }
}

void add_conjugate_expansion_checks(std::vector<PendingCheck>& out, int n, std::mt19937_64& rng) {
  if (n < 5) return;
  const std::uint64_t sub = rng();
  out.push_back({"n=" + std::to_string(n) + " conjugate expansions", [n, sub](std::string& d) {
                   std::mt19937_64 r(sub);
                   std::uniform_int_distribution<int> core(1, n - 1);
                   for (int c = 0; c < 20; ++c) {
                     ConjugateFactor f;
                     f.conjugator = random_word(r, n, static_cast<int>(r() % 5));
                     f.core_a = core(r);
                     do {
                       f.core_b = core(r);
                     } while (f.core_b == f.core_a);
                     f.exponent = (r() & 1) ? 1 : -1;
                     const auto pairs = appendix_conjugate_expand(n, f);
                     const BraidWord lhs = expand_conjugate_factor(f, n);
                     if (!equal(lhs, expand_pairs(n, pairs))) {
                       d = "case " + std::to_string(c);
                       return false;
                     }
                   }
                   return true;
                 }});
}

void add_pipeline_checks(std::vector<PendingCheck>& out, int n, std::mt19937_64& rng) {
  int k = 0;
  if (n == 5) k = 2;
  if (n == 7) k = 3;
  if (k == 0) return;
  const std::uint64_t sub = rng();
  out.push_back({"n=" + std::to_string(n) + " rewrite pipeline", [n, k, sub](std::string& d) {
                   std::mt19937_64 r(sub);
                   const RewriteParams params = RewriteParams::make(n, k);
                   for (int c = 0; c < 10; ++c) {
                     const BraidWord w = random_zero_sum_word(r, n, static_cast<int>(1 + r() % 5));
                     const TwoGenSLP slp = rewrite_full(params, w);
                     const BraidWord expansion = expand_to_artin(flatten(slp), params);
                     if (!equal(expansion, w)) {
                       d = "case " + std::to_string(c) + " expansion differs";
                       return false;
                     }
                   }
                   return true;
                 }});
}

void add_oracle_checks(std::vector<PendingCheck>& out, int n, std::mt19937_64& rng,
                       std::size_t lk_bound) {
  if (n > 7) return;
  const std::uint64_t sub = rng();
  const int max_len = static_cast<int>(std::min<std::size_t>(lk_bound / 2, 20)) + 1;
  out.push_back({"n=" + std::to_string(n) + " oracle agreement", [n, sub, max_len, lk_bound](std::string& d) {
                   std::mt19937_64 r(sub);
                   for (int c = 0; c < 25; ++c) {
                     const BraidWord w1 = random_word(r, n, static_cast<int>(r() % max_len));
                     BraidWord w2 = (c % 3 == 0) ? concat(w1, BraidWord{n, {}})
                                                 : random_word(r, n, static_cast<int>(r() % max_len));
                     if (equal(w1, w2) != equal_via_lk(w1, w2, lk_bound)) {
                       d = "oracles disagree on case " + std::to_string(c);
                       return false;
                     }
                   }
                   return true;
                 }});
}

}  // namespace

std::vector<SuiteCheck> run_suite(const SuiteOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<PendingCheck> pending;
  for (int n : opts.strand_counts) {
    add_background_checks(pending, n, rng);
    if (n == 4 || n == 6) add_theorem2_checks(pending);
    if (n == 5) add_appendix_display_checks(pending);
    add_certificate_checks(pending, n);
    add_conjugate_expansion_checks(pending, n, rng);
    add_pipeline_checks(pending, n, rng);
    add_oracle_checks(pending, n, rng, opts.lk_bound);
  }

  std::vector<SuiteCheck> results(pending.size());
  const int count = static_cast<int>(pending.size());
#ifdef _OPENMP
  const int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (int i = 0; i < count; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteCheck& res = results[static_cast<std::size_t>(i)];
    res.name = pending[static_cast<std::size_t>(i)].name;
    try {
      res.pass = pending[static_cast<std::size_t>(i)].run(res.detail);
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = e.what();
    }
    res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return results;
}

bool suite_all_pass(const std::vector<SuiteCheck>& checks) {
  for (const SuiteCheck& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace braidgen
