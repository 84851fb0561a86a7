#include "braidgen/genset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace braidgen {

namespace {

constexpr unsigned long long kLenCap = 2'000'000'000'000'000'000ull;

unsigned long long sat_add(unsigned long long a, unsigned long long b) {
  unsigned long long r = a + b;
  if (r < a || r > kLenCap) return kLenCap;
  return r;
}

unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kLenCap / b) return kLenCap;
  return std::min(a * b, kLenCap);
}

int mod_index(long long v, int n) {
  long long r = v % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

}  // namespace

bool RewriteParams::valid(int n, int k, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (n != 5 && n < 7)
    return fail("n must be 5 or at least 7; for n in {3,4,6} every k coprime to n "
                "is congruent to 1 or -1 mod n, so no valid step exists");
  if (k < 2 || k > n - 2) return fail("k must satisfy 2 <= k <= n-2");
  if (std::gcd(k, n) != 1) return fail("k must be coprime to n");
  return true;
}

RewriteParams RewriteParams::make(int n, int k) {
  std::string why;
  if (!valid(n, k, &why)) throw BadParams("invalid (n=" + std::to_string(n) + ", k=" + std::to_string(k) + "): " + why);
  return RewriteParams{n, k, k * (n - 1)};
}

BraidWord r_word(const RewriteParams& params, int m) {
  if (m < 0) throw BadParams("r_word: m must be nonnegative");
  const int idx = mod_index(1LL + static_cast<long long>(m) * params.k, params.n);
  return concat(alpha_power(params.n, params.k), word_power(sigma(params.n, idx, 1), -params.N));
}

BraidWord s_word(const RewriteParams& params, int m) {
  if (m < 0) throw BadParams("s_word: m must be nonnegative");
  const int a = mod_index(1LL + static_cast<long long>(m) * params.k, params.n);
  const int b = mod_index(1LL + static_cast<long long>(m + 1) * params.k, params.n);
  return concat(sigma(params.n, a, 1), sigma(params.n, b, -1));
}

int telescope_length(const RewriteParams& params, int i) {
  if (i < 2 || i > params.n - 1)
    throw BadTarget("target index " + std::to_string(i) + " out of range 2.." + std::to_string(params.n - 1));
  for (int l = 0; l < params.n; ++l)
    if (mod_index(1LL + static_cast<long long>(l) * params.k, params.n) == i) return l;
  throw BadParams("no telescope length exists; k is not invertible mod n");
}

TwoGenSLP theorem1_factor(const RewriteParams& params, int i) {
  const int l = telescope_length(params, i);
  TwoGenSLP slp;
  slp.params = params;
  for (int m = 1; m <= l - 1; ++m) {
    slp.rules.push_back(SlpRule{SymKind::S, m});
    if (m <= l - 2) slp.rules.push_back(SlpRule{SymKind::R, m});
  }
  for (int m = 0; m < l; ++m) slp.root.push_back(SlpTerm{SymKind::S, m, 1});
  return slp;
}

// ---- SLP machinery ----------------------------------------------------------

unsigned long long slp_flat_length(const TwoGenSLP& slp) {
  int max_m = 0;
  for (const SlpTerm& t : slp.root) max_m = std::max(max_m, t.m);
  std::vector<unsigned long long> lenR(static_cast<std::size_t>(max_m) + 1, 1);
  std::vector<unsigned long long> lenS(static_cast<std::size_t>(max_m) + 1, 1);
  const unsigned long long N = static_cast<unsigned long long>(slp.params.N);
  for (int m = 1; m <= max_m; ++m) {
    lenS[m] = sat_add(sat_mul(2, lenR[m - 1]), lenS[m - 1]);
    lenR[m] = sat_add(lenR[m - 1], sat_mul(N, lenS[m - 1]));
  }
  unsigned long long total = 0;
  for (const SlpTerm& t : slp.root) {
    const unsigned long long e = static_cast<unsigned long long>(t.exp < 0 ? -t.exp : t.exp);
    total = sat_add(total, sat_mul(e, t.kind == SymKind::S ? lenS[t.m] : lenR[t.m]));
  }
  return total;
}

namespace {

void expand_symbol(const TwoGenSLP& slp, SymKind kind, int m, int sign,
                   std::vector<TwoGenLetter>& out) {
  if (m == 0) {
    out.push_back(TwoGenLetter{kind, sign});
    return;
  }
  if (kind == SymKind::S) {
    // S_m = R_{m-1} S_{m-1} R_{m-1}^{-1}; the inverse swaps the middle sign.
    expand_symbol(slp, SymKind::R, m - 1, 1, out);
    expand_symbol(slp, SymKind::S, m - 1, sign, out);
    expand_symbol(slp, SymKind::R, m - 1, -1, out);
  } else if (sign > 0) {
    expand_symbol(slp, SymKind::R, m - 1, 1, out);
    for (int r = 0; r < slp.params.N; ++r) expand_symbol(slp, SymKind::S, m - 1, 1, out);
  } else {
    for (int r = 0; r < slp.params.N; ++r) expand_symbol(slp, SymKind::S, m - 1, -1, out);
    expand_symbol(slp, SymKind::R, m - 1, -1, out);
  }
}

}  // namespace

std::vector<TwoGenLetter> flatten(const TwoGenSLP& slp, unsigned long long max_len) {
  const unsigned long long len = slp_flat_length(slp);
  if (len > max_len)
    throw TooLong("flat length " + std::to_string(len) + " exceeds bound " + std::to_string(max_len));
  std::vector<TwoGenLetter> out;
  out.reserve(static_cast<std::size_t>(len));
  for (const SlpTerm& t : slp.root) {
    const int sign = t.exp < 0 ? -1 : 1;
    const long long reps = t.exp < 0 ? -t.exp : t.exp;
    for (long long r = 0; r < reps; ++r) expand_symbol(slp, t.kind, t.m, sign, out);
  }
  return out;
}

BraidWord expand_to_artin(const std::vector<TwoGenLetter>& flat, const RewriteParams& params) {
  const BraidWord r0 = r_word(params, 0);
  const BraidWord s0 = s_word(params, 0);
  const BraidWord r0i = invert(r0);
  const BraidWord s0i = invert(s0);
  BraidWord out{params.n, {}};
  std::size_t est = 0;
  for (const TwoGenLetter& t : flat)
    est += (t.kind == SymKind::R ? r0.size() : s0.size());
  out.letters.reserve(est);
  for (const TwoGenLetter& t : flat) {
    const BraidWord& w = t.kind == SymKind::R ? (t.sign > 0 ? r0 : r0i) : (t.sign > 0 ? s0 : s0i);
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  }
  return free_reduce(out);
}

std::string TwoGenSLP::to_text() const {
  std::ostringstream os;
  for (const SlpRule& r : rules) {
    const int m = r.m;
    if (r.kind == SymKind::S) {
      os << "S" << m << " = R" << m - 1 << " S" << m - 1 << " R" << m - 1 << "^-1\n";
    } else {
      os << "R" << m << " = R" << m - 1 << " S" << m - 1 << "^" << params.N << "\n";
    }
  }
  os << "ROOT =";
  for (const SlpTerm& t : root) {
    os << ' ' << (t.kind == SymKind::S ? 'S' : 'R') << t.m;
    if (t.exp != 1) os << '^' << t.exp;
  }
  os << '\n';
  return os.str();
}

namespace {

struct SymRef {
  SymKind kind;
  int m;
  long long exp;
};

SymRef parse_symref(const std::string& tok) {
  if (tok.empty() || (tok[0] != 'S' && tok[0] != 'R')) throw ParseError("bad SLP symbol '" + tok + "'");
  SymRef ref{tok[0] == 'S' ? SymKind::S : SymKind::R, 0, 1};
  std::size_t caret = tok.find('^');
  const std::string digits = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
  try {
    ref.m = std::stoi(digits);
    if (caret != std::string::npos) ref.exp = std::stoll(tok.substr(caret + 1));
  } catch (const std::exception&) {
    throw ParseError("bad SLP symbol '" + tok + "'");
  }
  if (ref.m < 0) throw ParseError("negative SLP index in '" + tok + "'");
  return ref;
}

}  // namespace

TwoGenSLP parse_slp(const std::vector<std::string>& lines) {
  TwoGenSLP slp;
  bool saw_root = false;
  std::set<std::pair<int, int>> defined;  // (kind, m)
  auto is_defined = [&](SymKind k, int m) {
    return m == 0 || defined.count({k == SymKind::S ? 0 : 1, m}) > 0;
  };
  for (const std::string& line : lines) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] == "ROOT") {
      if (saw_root) throw ParseError("duplicate ROOT line");
      if (toks.size() < 2 || toks[1] != "=") throw ParseError("ROOT line must read 'ROOT = ...'");
      for (std::size_t i = 2; i < toks.size(); ++i) {
        SymRef ref = parse_symref(toks[i]);
        if (!is_defined(ref.kind, ref.m))
          throw ParseError("ROOT uses undefined symbol in '" + toks[i] + "'");
        slp.root.push_back(SlpTerm{ref.kind, ref.m, ref.exp});
      }
      saw_root = true;
      continue;
    }
    // Rule line: "S<m> = R<m-1> S<m-1> R<m-1>^-1" or "R<m> = R<m-1> S<m-1>^N".
    if (toks.size() < 3 || toks[1] != "=") throw ParseError("bad SLP rule line '" + line + "'");
    SymRef head = parse_symref(toks[0]);
    if (head.exp != 1 || head.m < 1) throw ParseError("bad SLP rule head '" + toks[0] + "'");
    const int m = head.m;
    if (head.kind == SymKind::S) {
      if (toks.size() != 5) throw ParseError("S-rule must have three right-hand symbols: '" + line + "'");
      SymRef a = parse_symref(toks[2]), b = parse_symref(toks[3]), c = parse_symref(toks[4]);
      const bool ok = a.kind == SymKind::R && a.m == m - 1 && a.exp == 1 && b.kind == SymKind::S &&
                      b.m == m - 1 && b.exp == 1 && c.kind == SymKind::R && c.m == m - 1 && c.exp == -1;
      if (!ok) throw ParseError("S-rule does not match the fixed template: '" + line + "'");
    } else {
      if (toks.size() != 4) throw ParseError("R-rule must have two right-hand symbols: '" + line + "'");
      SymRef a = parse_symref(toks[2]), b = parse_symref(toks[3]);
      const bool ok = a.kind == SymKind::R && a.m == m - 1 && a.exp == 1 && b.kind == SymKind::S &&
                      b.m == m - 1 && b.exp >= 1;
      if (!ok) throw ParseError("R-rule does not match the fixed template: '" + line + "'");
      // The exponent must be N; checked by the caller once params are known.
    }
    if (!is_defined(SymKind::S, m - 1) || !is_defined(SymKind::R, m - 1))
      throw ParseError("rule for index " + std::to_string(m) + " uses undefined symbols");
    defined.insert({head.kind == SymKind::S ? 0 : 1, m});
    slp.rules.push_back(SlpRule{head.kind, m});
  }
  if (!saw_root) throw ParseError("SLP has no ROOT line");
  return slp;
}

// ---- Theorem 2 --------------------------------------------------------------

B4Generators theorem2_b4_generators() {
  B4Generators g;
  g.u = make_word(4, {2, -1});
  g.v = make_word(4, {1, 2, -1, -1});
  g.w = make_word(4, {2, 3, -1, -2});
  g.c = make_word(4, {3, -1});
  g.g1 = invert(g.u);
  g.g2 = free_reduce(invert(g.v));
  g.g3 = invert(g.c);
  g.relation_holds = equal(g.w, conjugate(g.u, g.c));
  return g;
}

BraidWord psi_b4_to_b3(const BraidWord& w) {
  if (w.n != 4) throw StrandCountMismatch("psi_b4_to_b3: expects a word in B_4");
  BraidWord out{3, {}};
  out.letters.reserve(w.size());
  for (Letter t : w.letters) {
    const int idx = std::abs(t);
    const int mapped = idx == 3 ? 1 : idx;
    out.letters.push_back(t > 0 ? mapped : -mapped);
  }
  return out;
}

BraidWord b6_letter_word(char sym) {
  switch (sym) {
    case 'a':
      return make_word(6, {1, -2});
    case 'b':
      return make_word(6, {1, -3});
    case 'r':
      return concat(alpha_power(6, 2), word_power(make_word(6, {1}), -10));
    default:
      throw BadTarget(std::string("unknown B6 alphabet letter '") + sym + "'");
  }
}

BraidWord substitute_abr(const std::vector<ABRLetter>& word) {
  BraidWord out{6, {}};
  for (const ABRLetter& l : word) {
    const BraidWord piece = word_power(b6_letter_word(l.sym), l.exp);
    out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
  }
  return free_reduce(out);
}

std::vector<ABRLetter> theorem2_b6_factor(int i) {
  switch (i) {
    case 2:
      return {{'a', 1}};
    case 3:
      return {{'b', 1}};
    case 4:
      return {{'b', -9}, {'r', 1}, {'a', 1}, {'r', -1}, {'b', 10}};
    case 5:
      return {{'b', 1}, {'r', 1}, {'b', 1}, {'r', -1}};
    default:
      throw BadTarget("theorem2_b6_factor: target must be in 2..5");
  }
}

// ---- Appendix machinery ------------------------------------------------------

namespace {

bool commutes_mod(int n, int x, int y) {
  const int d = mod_index(x - y, n);
  return d != 1 && d != n - 1;
}

}  // namespace

int choose_commuting_index(int n, int i, int j, bool ring) {
  if (ring && n != 5) throw BadParams("ring indices are the n = 5 construction");
  if (!ring && n < 6) throw BadParams("without ring indices a commuting generator needs n >= 6");
  const int lo = ring ? 0 : 1;
  for (int l = lo; l <= n - 1; ++l)
    if (commutes_mod(n, l, i) && commutes_mod(n, l, j)) return l;
  throw NoCommutingIndex("no generator commutes with sigma_" + std::to_string(i) + " and sigma_" +
                         std::to_string(j));
}

namespace {

void push_pair(std::vector<IndexPair>& out, int a, int b) {
  if (a != b) out.emplace_back(a, b);
}

struct BaseRecorder {
  std::set<std::array<int, 6>>* sink = nullptr;  // (t, d, a, b, l, m2)
  void record(int t, int d, int a, int b, int l, int m2) {
    if (sink) sink->insert({t, d, a, b, l, m2});
  }
};

std::vector<IndexPair> wrap_once(int n, bool ring, int t, int d, const std::vector<IndexPair>& inner,
                                 BaseRecorder& rec) {
  std::vector<IndexPair> out;
  out.reserve(inner.size() * 4);
  for (const IndexPair& p : inner) {
    const int a = p.first, b = p.second;
    if (commutes_mod(n, t, a) && commutes_mod(n, t, b)) {
      push_pair(out, a, b);
      continue;
    }
    if (d > 0) {
      const int l = choose_commuting_index(n, a, b, ring);
      rec.record(t, 1, a, b, l, -1);
      push_pair(out, t, l);
      push_pair(out, a, b);
      push_pair(out, l, t);
    } else {
      const int l = choose_commuting_index(n, t, a, ring);
      const int m2 = choose_commuting_index(n, b, t, ring);
      rec.record(t, -1, a, b, l, m2);
      push_pair(out, l, t);
      push_pair(out, a, l);
      push_pair(out, m2, b);
      push_pair(out, t, m2);
    }
  }
  return out;
}

std::vector<IndexPair> conjugate_expand_impl(int n, const ConjugateFactor& factor, BaseRecorder& rec) {
  if (n < 5) throw BadParams("conjugate expansion needs n >= 5");
  const bool ring = n == 5;
  const int a = mod_index(factor.core_a, n);
  const int b = mod_index(factor.core_b, n);
  if (a == b) throw BadIndices("conjugate core must have distinct indices");
  if (!ring && (a == 0 || b == 0)) throw BadIndices("index 0 requires the n = 5 ring construction");
  std::vector<IndexPair> pairs;
  if (factor.exponent >= 0)
    pairs.emplace_back(a, b);
  else
    pairs.emplace_back(b, a);
  // Peel conjugator letters innermost-first.
  const auto& g = factor.conjugator.letters;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    const int t = std::abs(*it);
    const int d = *it > 0 ? 1 : -1;
    pairs = wrap_once(n, ring, t, d, pairs, rec);
  }
  return pairs;
}

}  // namespace

std::vector<IndexPair> appendix_conjugate_expand(int n, const ConjugateFactor& factor) {
  BaseRecorder rec;
  return conjugate_expand_impl(n, factor, rec);
}

std::vector<IndexPair> eliminate_sigma0(const std::vector<IndexPair>& pairs) {
  // sigma_1 sigma_0^{-1} = (sigma_1^2 sigma_2 sigma_1^{-3}) (sigma_3 sigma_4^{-1})
  //                        (sigma_1^3 sigma_3^{-1} sigma_2^{-1} sigma_1^{-1})
  // with both side terms factored through the displayed pair products.
  static const std::vector<IndexPair> kSigma10 = {{1, 4}, {1, 4}, {2, 4}, {4, 1}, {4, 1}, {4, 1},
                                                  {3, 4}, {1, 3}, {1, 4}, {1, 4}, {4, 2}, {4, 1}};
  std::vector<IndexPair> out;
  for (const IndexPair& p : pairs) {
    const int a = p.first, b = p.second;
    if (a != 0 && b != 0) {
      push_pair(out, a, b);
      continue;
    }
    if (a == b) continue;
    if (b == 0) {
      // sigma_a sigma_0^{-1} = (sigma_a sigma_1^{-1}) (sigma_1 sigma_0^{-1})
      push_pair(out, a, 1);
      out.insert(out.end(), kSigma10.begin(), kSigma10.end());
    } else {
      // sigma_0 sigma_b^{-1} = ((sigma_b sigma_0^{-1}))^{-1} reversed and flipped
      for (auto it = kSigma10.rbegin(); it != kSigma10.rend(); ++it) out.emplace_back(it->second, it->first);
      push_pair(out, 1, b);
    }
  }
  return out;
}

std::vector<Sigma1Letter> pairs_to_sigma1_alphabet(const std::vector<IndexPair>& pairs) {
  std::vector<Sigma1Letter> out;
  for (const IndexPair& p : pairs) {
    const int i = p.first, j = p.second;
    if (i == j) continue;
    if (i != 1) out.push_back(Sigma1Letter{i, -1});
    if (j != 1) out.push_back(Sigma1Letter{j, 1});
  }
  return out;
}

BraidWord expand_pairs(int n, const std::vector<IndexPair>& pairs) {
  BraidWord out{n, {}};
  for (const IndexPair& p : pairs) {
    const BraidWord a = sigma(n, p.first, 1);
    const BraidWord b = sigma(n, p.second, -1);
    out.letters.insert(out.letters.end(), a.letters.begin(), a.letters.end());
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  }
  return free_reduce(out);
}

std::vector<ConjugateFactor> telescope_decompose(const BraidWord& w) {
  if (exponent_sum(w) != 0)
    throw NonZeroExponentSum("telescope_decompose: word has nonzero exponent sum");
  std::vector<ConjugateFactor> out;
  long long e = 0;
  for (Letter t : w.letters) {
    const int c = std::abs(t);
    const int sign = t > 0 ? 1 : -1;
    if (c == 1) {
      e += sign;
      continue;
    }
    ConjugateFactor f;
    if (sign > 0) {
      // sigma_1^e (sigma_c sigma_1^{-1}) sigma_1^{-e}
      f.conjugator = word_power(make_word(w.n, {1}), e);
      f.core_a = c;
      f.core_b = 1;
    } else {
      // sigma_1^e sigma_c^{-1} (sigma_1 sigma_c^{-1}) sigma_c sigma_1^{-e}
      f.conjugator = concat(word_power(make_word(w.n, {1}), e), make_word(w.n, {-c}));
      f.core_a = 1;
      f.core_b = c;
    }
    f.exponent = 1;
    out.push_back(std::move(f));
    e += sign;
  }
  return out;
}

BraidWord expand_conjugate_factor(const ConjugateFactor& f, int n) {
  const BraidWord core = concat(sigma(n, f.core_a, 1), sigma(n, f.core_b, -1));
  return conjugate(f.conjugator, word_power(core, f.exponent));
}

// ---- full pipeline -----------------------------------------------------------

namespace {

void append_chain(const RewriteParams& params, const Sigma1Letter& letter,
                  std::vector<SlpTerm>& root) {
  const int l = telescope_length(params, letter.target);
  auto push = [&root](SymKind k, int m, long long e) {
    if (!root.empty() && root.back().kind == k && root.back().m == m && root.back().exp == -e)
      root.pop_back();
    else
      root.push_back(SlpTerm{k, m, e});
  };
  if (letter.sign > 0)
    for (int m = 0; m < l; ++m) push(SymKind::S, m, 1);
  else
    for (int m = l - 1; m >= 0; --m) push(SymKind::S, m, -1);
}

}  // namespace

RewritePipeline rewrite_full_pipeline(const RewriteParams& params, const BraidWord& w) {
  if (w.n != params.n) throw StrandCountMismatch("rewrite_full: word strand count differs from params");
  if (exponent_sum(w) != 0) throw NonZeroExponentSum("rewrite_full: word has nonzero exponent sum");
  RewritePipeline pipe;
  pipe.slp.params = params;
  const BraidWord wr = free_reduce(w);
  if (wr.empty()) return pipe;

  // Generator short-circuits.
  const BraidWord s0 = s_word(params, 0);
  const BraidWord r0 = r_word(params, 0);
  if (equal(wr, s0)) {
    pipe.slp.root = {SlpTerm{SymKind::S, 0, 1}};
    return pipe;
  }
  if (equal(wr, invert(s0))) {
    pipe.slp.root = {SlpTerm{SymKind::S, 0, -1}};
    return pipe;
  }
  if (equal(wr, r0)) {
    pipe.slp.root = {SlpTerm{SymKind::R, 0, 1}};
    return pipe;
  }
  if (equal(wr, invert(r0))) {
    pipe.slp.root = {SlpTerm{SymKind::R, 0, -1}};
    return pipe;
  }

  pipe.factors = telescope_decompose(wr);
  std::set<std::array<int, 6>> bases;
  BaseRecorder rec{&bases};
  for (const ConjugateFactor& f : pipe.factors) {
    std::vector<IndexPair> ps = conjugate_expand_impl(params.n, f, rec);
    pipe.pairs.insert(pipe.pairs.end(), ps.begin(), ps.end());
  }
  if (params.n == 5) {
    std::set<int> elims;
    for (const IndexPair& p : pipe.pairs) {
      if (p.second == 0) elims.insert(p.first);
      if (p.first == 0) elims.insert(p.second);
    }
    pipe.sigma0_elims.assign(elims.begin(), elims.end());
    pipe.pairs = eliminate_sigma0(pipe.pairs);
  }
  pipe.alphabet = pairs_to_sigma1_alphabet(pipe.pairs);
  pipe.slp.root = build_root_from_alphabet(params, pipe.alphabet);

  int max_s = 0;
  for (const SlpTerm& t : pipe.slp.root) max_s = std::max(max_s, t.m);
  for (int m = 1; m <= max_s; ++m) {
    pipe.slp.rules.push_back(SlpRule{SymKind::S, m});
    if (m <= max_s - 1) pipe.slp.rules.push_back(SlpRule{SymKind::R, m});
  }
  pipe.base_instances.assign(bases.begin(), bases.end());
  return pipe;
}

std::vector<SlpTerm> build_root_from_alphabet(const RewriteParams& params,
                                              const std::vector<Sigma1Letter>& alphabet) {
  std::vector<SlpTerm> root;
  for (const Sigma1Letter& letter : alphabet) append_chain(params, letter, root);
  return root;
}

TwoGenSLP rewrite_full(const RewriteParams& params, const BraidWord& w) {
  return rewrite_full_pipeline(params, w).slp;
}

}  // namespace braidgen
