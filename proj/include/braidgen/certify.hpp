#pragma once

#include <map>
#include <string>
#include <vector>

#include "braidgen/garside.hpp"
#include "braidgen/genset.hpp"

namespace braidgen {

/// Rule tags of ground identities. The recurrence, telescope, appendix and
/// sigma_0 rules are instantiated families: their words are pinned by the
/// parameters and regenerated during verification. AD_HOC claims carry free
/// lhs/rhs and are checked semantically only.
enum class Rule {
  S_RECURRENCE,
  R_RECURRENCE,
  TELESCOPE,
  B6_IDENTITY,
  B4_RELATION,
  APPENDIX_BASE,
  SIGMA0_ELIM,
  AD_HOC,
};

std::string rule_name(Rule r);
Rule rule_from_name(const std::string& s);  // throws ParseError

struct IdentityClaim {
  int n = 0;
  BraidWord lhs, rhs;
  Rule rule = Rule::AD_HOC;
  std::map<std::string, long long> params;
};

/// An ordered list of short ground identities plus a conclusion SLP. The
/// verifier checks every ground identity with the Garside solver and the
/// structural bookkeeping tying claims to the SLP; the inductive chaining is
/// a meta-theorem, property-tested once, never re-proven per run.
struct Certificate {
  int n = 0;
  int k = 0;  // 0 for claim-only certificates
  std::vector<IdentityClaim> claims;
  bool has_conclusion = false;
  BraidWord target;
  TwoGenSLP slp;
  std::vector<Sigma1Letter> alphabet;  // rewrite-full certificates only
  std::vector<IndexPair> pairs;        // rewrite-full certificates only
};

/// Claims for the factorization of sigma_1 sigma_i^{-1}: S/R recurrences for
/// m = 0..l-2 plus one telescope claim; 2(l-1)+1 claims total.
Certificate build_certificate(const RewriteParams& params, int target_i);

/// Claims for a full pipeline rewrite: one bridging claim from the input to
/// the pair product, the appendix/sigma_0 ground instances used, and the
/// Theorem-1 claims for every alphabet letter.
Certificate build_rewrite_certificate(const RewriteParams& params, const BraidWord& w,
                                      const RewritePipeline& pipe);

struct ClaimResult {
  bool pass = false;
  std::string reason;  // empty when passing
  double ms = 0.0;
  std::size_t lhs_len = 0, rhs_len = 0;
};

struct VerificationReport {
  bool pass = false;
  std::vector<ClaimResult> claims;
  std::string structural_error;  // empty when the bookkeeping holds
  double total_ms = 0.0;
  int first_failing_claim = -1;
};

/// Checks every claim (garside equality plus rule-shape regeneration) and the
/// structural invariants. Claims verify independently; report order is the
/// claim order regardless of schedule. Never expands the SLP.
VerificationReport verify_certificate(const Certificate& cert, int jobs = 0);

std::string emit_json(const Certificate& cert);
Certificate parse_json(const std::string& text);  // throws ParseError

}  // namespace braidgen
