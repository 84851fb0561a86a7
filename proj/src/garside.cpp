#include "braidgen/garside.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace braidgen {

namespace {

// Internal kernels work on flat n-byte permutation buffers (img[x] = image of
// x, 0-based). Composition convention matches Permutation: (p o q)(x) = p(q(x)).
// Starting set S(A) = descents of A^{-1}; finishing set F(A) = descents of A.

constexpr int kMaxStrands = 64;

inline std::uint64_t descents(const std::uint8_t* p, int n) {
  std::uint64_t d = 0;
  for (int g = 0; g + 1 < n; ++g)
    if (p[g] > p[g + 1]) d |= std::uint64_t{1} << g;
  return d;
}

inline bool perm_is_id(const std::uint8_t* p, int n) {
  for (int x = 0; x < n; ++x)
    if (p[x] != x) return false;
  return true;
}

inline bool perm_is_w0(const std::uint8_t* p, int n) {
  for (int x = 0; x < n; ++x)
    if (p[x] != n - 1 - x) return false;
  return true;
}

// p <- w0 o p o w0 (conjugation by Delta).
inline void perm_tau(std::uint8_t* p, int n, std::uint8_t* tmp) {
  for (int x = 0; x < n; ++x) tmp[x] = static_cast<std::uint8_t>(n - 1 - p[n - 1 - x]);
  std::memcpy(p, tmp, static_cast<std::size_t>(n));
}

// Make the pair (A, B) left-weighted by moving the maximal head of B into A.
// Returns 0 if already left-weighted, 1 if changed, 2 if changed and B became
// the identity. scratch must hold 4n bytes.
int fix_pair(std::uint8_t* A, std::uint8_t* B, int n, std::uint8_t* scratch) {
  std::uint8_t* qB = scratch;          // residual-of-B inverse tracker
  std::uint8_t* qX = scratch + n;      // residual-of-dA inverse tracker
  std::uint8_t* c = scratch + 2 * n;   // the transferred head, as a permutation
  std::uint8_t* tmp = scratch + 3 * n;

  for (int x = 0; x < n; ++x) qB[B[x]] = static_cast<std::uint8_t>(x);
  const std::uint64_t sb = descents(qB, n);
  const std::uint64_t fa = descents(A, n);
  if ((sb & ~fa) == 0) return 0;

  // c = dA /\ B, grown greedily over common starting generators.
  for (int x = 0; x < n; ++x) qX[x] = static_cast<std::uint8_t>(n - 1 - A[x]);
  for (int x = 0; x < n; ++x) c[x] = static_cast<std::uint8_t>(x);
  std::uint64_t dx = descents(qX, n);
  std::uint64_t db = sb;
  while (std::uint64_t common = dx & db) {
    const int g = std::countr_zero(common);
    std::swap(qX[g], qX[g + 1]);
    std::swap(qB[g], qB[g + 1]);
    std::swap(c[g], c[g + 1]);
    dx = descents(qX, n);
    db = descents(qB, n);
  }

  // A <- A o c ; B <- c^{-1} o B.
  for (int x = 0; x < n; ++x) tmp[x] = A[c[x]];
  std::memcpy(A, tmp, static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) tmp[c[x]] = static_cast<std::uint8_t>(x);  // tmp = c^{-1}
  for (int x = 0; x < n; ++x) qX[x] = tmp[B[x]];
  std::memcpy(B, qX, static_cast<std::size_t>(n));
  return perm_is_id(B, n) ? 2 : 1;
}

// A normalized factor sequence: left-weighted, no identity factors, no Delta
// factors (those are folded into delta).
struct FactorList {
  int n = 2;
  long long delta = 0;
  std::vector<std::uint8_t> buf;
  std::size_t count() const { return buf.size() / static_cast<std::size_t>(n); }
};

// Worklist normalizer over a doubly-linked slot list. Local fixes are applied
// until every adjacent pair is left-weighted; any processing order yields the
// same (unique) normal form.
//
// Delta factors are extracted the moment they form instead of being bubbled
// to the front one slot at a time. Extracting a Delta at slot e twists every
// factor left of e by tau; those twists are tracked lazily as per-slot events
// in a Fenwick tree (a factor's effective value is tau^{#events right of it}
// of its stored value), which keeps heavily cancelling products near-linear.
class Normalizer {
 public:
  explicit Normalizer(int n) : n_(n), scratch_(static_cast<std::size_t>(7 * n)) {}

  // capacity must bound the total number of appends plus tau boundaries.
  void reset(long long delta, std::size_t capacity) {
    delta_ = delta;
    buf_.clear();
    nxt_.clear();
    prv_.clear();
    alive_.clear();
    head_ = tail_ = -1;
    work_.clear();
    fenwick_.assign(capacity + 2, 0);
    events_ = 0;
  }

  long long delta() const { return delta_; }
  void add_delta(long long d) { delta_ += d; }
  std::int32_t tail() const { return tail_; }

  // Appends a factor slot, dropping identities and extracting Deltas.
  // Returns the live slot id, or -1 if nothing was appended.
  std::int32_t append(const std::uint8_t* p) {
    if (perm_is_id(p, n_)) return -1;
    const auto id = static_cast<std::int32_t>(nxt_.size());
    buf_.insert(buf_.end(), p, p + n_);
    nxt_.push_back(-1);
    prv_.push_back(tail_);
    alive_.push_back(1);
    if (perm_is_w0(p, n_)) {
      alive_.back() = 0;
      ++delta_;
      add_event(id);
      return -1;
    }
    if (tail_ >= 0)
      nxt_[static_cast<std::size_t>(tail_)] = id;
    else
      head_ = id;
    tail_ = id;
    return id;
  }

  // Registers a tau boundary at the next slot position: every factor
  // appended so far picks up one tau. Used for Delta^{+-1} bookkeeping
  // around negative letters and merges.
  void mark_tau_boundary() { add_event(static_cast<std::int32_t>(nxt_.size())); }

  void push_pair(std::int32_t left) {
    if (left >= 0 && alive_[static_cast<std::size_t>(left)] && nxt_[static_cast<std::size_t>(left)] >= 0)
      work_.push_back(left);
  }

  void seed_all() {
    for (std::int32_t i = head_; i >= 0; i = nxt_[static_cast<std::size_t>(i)]) push_pair(i);
  }

  void process() {
    std::uint8_t* ea = scratch_.data() + 4 * n_;
    std::uint8_t* eb = scratch_.data() + 5 * n_;
    std::uint8_t* tmp = scratch_.data() + 6 * n_;
    while (!work_.empty()) {
      const std::int32_t a = work_.back();
      work_.pop_back();
      if (!alive_[static_cast<std::size_t>(a)]) continue;
      const std::int32_t b = nxt_[static_cast<std::size_t>(a)];
      if (b < 0) continue;

      const bool ta = twist(a), tb = twist(b);
      std::memcpy(ea, slot(a), static_cast<std::size_t>(n_));
      std::memcpy(eb, slot(b), static_cast<std::size_t>(n_));
      if (ta) perm_tau(ea, n_, tmp);
      if (tb) perm_tau(eb, n_, tmp);

      const int r = fix_pair(ea, eb, n_, scratch_.data());
      if (r == 0) continue;

      if (ta) perm_tau(ea, n_, tmp);
      if (tb) perm_tau(eb, n_, tmp);
      std::memcpy(slot(a), ea, static_cast<std::size_t>(n_));
      std::memcpy(slot(b), eb, static_cast<std::size_t>(n_));

      const std::int32_t before_a = prv_[static_cast<std::size_t>(a)];
      if (r == 2) unlink(b);
      // The left factor only grows; extract it if it reached Delta
      // (tau fixes Delta, so the stored value is w0 exactly then).
      if (perm_is_w0(slot(a), n_)) {
        unlink(a);
        ++delta_;
        add_event(a);
        if (r == 1) push_pair(b);
      } else {
        if (r == 2)
          push_pair(a);
        else
          push_pair(b);
      }
      push_pair(before_a);
    }
  }

  // Collects the stabilized list, materializing the pending twists.
  FactorList finish() {
    FactorList out;
    out.n = n_;
    out.delta = delta_;
    std::uint8_t* tmp = scratch_.data();
    for (std::int32_t i = head_; i >= 0; i = nxt_[static_cast<std::size_t>(i)]) {
      const std::size_t pos = out.buf.size();
      out.buf.insert(out.buf.end(), slot(i), slot(i) + n_);
      if (twist(i)) perm_tau(out.buf.data() + pos, n_, tmp);
    }
    return out;
  }

 private:
  void unlink(std::int32_t i) {
    alive_[static_cast<std::size_t>(i)] = 0;
    const std::int32_t p = prv_[static_cast<std::size_t>(i)];
    const std::int32_t q = nxt_[static_cast<std::size_t>(i)];
    if (p >= 0)
      nxt_[static_cast<std::size_t>(p)] = q;
    else
      head_ = q;
    if (q >= 0)
      prv_[static_cast<std::size_t>(q)] = p;
    else
      tail_ = p;
  }

  std::uint8_t* slot(std::int32_t i) { return buf_.data() + static_cast<std::size_t>(i) * n_; }

  // Fenwick tree over slot ids; twist(v) = parity of events at ids > v.
  void add_event(std::int32_t id) {
    ++events_;
    for (std::size_t i = static_cast<std::size_t>(id) + 1; i < fenwick_.size(); i += i & (~i + 1))
      ++fenwick_[i];
  }

  bool twist(std::int32_t v) const {
    long long prefix = 0;  // events at ids <= v
    for (std::size_t i = static_cast<std::size_t>(v) + 1; i > 0; i -= i & (~i + 1)) prefix += fenwick_[i];
    return ((events_ - prefix) & 1) != 0;
  }

  int n_;
  long long delta_ = 0;
  std::vector<std::uint8_t> buf_;
  std::vector<std::int32_t> nxt_, prv_;
  std::vector<std::uint8_t> alive_;
  std::int32_t head_ = -1, tail_ = -1;
  std::vector<std::int32_t> work_;
  std::vector<std::uint8_t> scratch_;
  std::vector<std::int32_t> fenwick_;
  long long events_ = 0;
};

// Writes the factor of a single letter into p: t_i for sigma_{i+1}, w0 o t_i
// for sigma_{i+1}^{-1} (the right complement Delta sigma^{-1}).
inline void letter_factor(Letter t, int n, std::uint8_t* p) {
  const int i = std::abs(t) - 1;
  if (t > 0) {
    for (int x = 0; x < n; ++x) p[x] = static_cast<std::uint8_t>(x);
    std::swap(p[i], p[i + 1]);
  } else {
    for (int x = 0; x < n; ++x) p[x] = static_cast<std::uint8_t>(n - 1 - x);
    std::swap(p[i], p[i + 1]);
  }
}

// Direct conversion + full normalization of a short letter range.
// A negative letter is Delta^{-1} times the complement factor; the Delta^{-1}
// crossing the preceding factors is one tau boundary.
FactorList base_case(const Letter* letters, std::size_t len, int n) {
  Normalizer norm(n);
  norm.reset(0, len + 2);
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < len; ++j) {
    if (letters[j] < 0) {
      norm.mark_tau_boundary();
      norm.add_delta(-1);
    }
    letter_factor(letters[j], n, p.data());
    norm.append(p.data());
  }
  norm.seed_all();
  norm.process();
  return norm.finish();
}

// Product of two normal forms: Delta^{p+q} tau^q(A...) B..., renormalized
// from the junction outward.
FactorList merge(const FactorList& a, const FactorList& b) {
  const int n = a.n;
  if (a.count() == 0) {
    FactorList out = b;
    out.delta += a.delta;
    return out;
  }
  if (b.count() == 0) {
    FactorList out = a;
    out.delta += b.delta;
    if (b.delta & 1) {
      std::vector<std::uint8_t> tmp(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < out.count(); ++i)
        perm_tau(out.buf.data() + i * static_cast<std::size_t>(n), n, tmp.data());
    }
    return out;
  }
  Normalizer norm(n);
  norm.reset(a.delta + b.delta, a.count() + b.count() + 4);
  std::int32_t junction = -1;
  for (std::size_t i = 0; i < a.count(); ++i)
    junction = norm.append(a.buf.data() + i * static_cast<std::size_t>(n));
  if (b.delta & 1) norm.mark_tau_boundary();
  for (std::size_t i = 0; i < b.count(); ++i)
    norm.append(b.buf.data() + i * static_cast<std::size_t>(n));
  norm.push_pair(junction);
  norm.process();
  return norm.finish();
}

constexpr std::size_t kBaseChunk = 64;
constexpr std::size_t kParallelCutoff = 8192;

FactorList nf_range(const Letter* letters, std::size_t lo, std::size_t hi, int n, bool par) {
  if (hi - lo <= kBaseChunk) return base_case(letters + lo, hi - lo, n);
  const std::size_t mid = lo + (hi - lo) / 2;
  FactorList a, b;
#ifdef _OPENMP
  if (par && hi - lo >= kParallelCutoff) {
#pragma omp task shared(a)
    a = nf_range(letters, lo, mid, n, true);
    b = nf_range(letters, mid, hi, n, true);
#pragma omp taskwait
    return merge(a, b);
  }
#endif
  (void)par;
  a = nf_range(letters, lo, mid, n, par);
  b = nf_range(letters, mid, hi, n, par);
  return merge(a, b);
}

FactorList run_dnc(const BraidWord& w, bool parallel) {
  FactorList out;
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel
#pragma omp single nowait
    out = nf_range(w.letters.data(), 0, w.letters.size(), w.n, true);
    return out;
  }
#endif
  out = nf_range(w.letters.data(), 0, w.letters.size(), w.n, false);
  return out;
}

// Reference engine: letter-by-letter incremental absorption.
FactorList run_naive(const BraidWord& w) {
  const int n = w.n;
  Normalizer norm(n);
  norm.reset(0, w.letters.size() + 2);
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
  for (Letter t : w.letters) {
    const std::int32_t before_tail = norm.tail();
    if (t < 0) {
      norm.mark_tau_boundary();
      norm.add_delta(-1);
    }
    letter_factor(t, n, p.data());
    const std::int32_t id = norm.append(p.data());
    if (id >= 0) norm.push_pair(before_tail);
    norm.process();
  }
  return norm.finish();
}

NormalForm to_public(const FactorList& fl) {
  NormalForm nf;
  nf.n = fl.n;
  nf.delta_power = fl.delta;
  nf.factors.reserve(fl.count());
  for (std::size_t i = 0; i < fl.count(); ++i) {
    std::vector<std::uint8_t> img(fl.buf.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(fl.n)),
                                  fl.buf.begin() + static_cast<std::ptrdiff_t>((i + 1) * static_cast<std::size_t>(fl.n)));
    nf.factors.push_back(CanonicalFactor{fl.n, Permutation(std::move(img))});
  }
  return nf;
}

}  // namespace

NormalForm normal_form(const BraidWord& w, Engine engine) {
  if (w.n < 2) throw BadStrandCount("normal_form: strand count below 2");
  if (w.n > kMaxStrands) throw BadStrandCount("normal_form: engine supports up to 64 strands");
  const BraidWord r = free_reduce(w);
  if (engine == Engine::Auto) {
#ifdef _OPENMP
    engine = (r.letters.size() >= 16384 && omp_get_max_threads() > 1) ? Engine::Parallel : Engine::Serial;
#else
    engine = Engine::Serial;
#endif
  }
  switch (engine) {
    case Engine::Naive:
      return to_public(run_naive(r));
    case Engine::Parallel:
      return to_public(run_dnc(r, true));
    case Engine::Serial:
    default:
      return to_public(run_dnc(r, false));
  }
}

bool equal(const BraidWord& w1, const BraidWord& w2, Engine engine) {
  if (w1.n != w2.n) throw StrandCountMismatch("equal: strand counts differ");
  return normal_form(w1, engine) == normal_form(w2, engine);
}

bool is_identity(const BraidWord& w, Engine engine) {
  const NormalForm nf = normal_form(w, engine);
  return nf.delta_power == 0 && nf.factors.empty();
}

BraidWord CanonicalFactor::to_word() const {
  BraidWord out{n, {}};
  Permutation p = perm;
  while (!p.is_identity()) {
    const Permutation pinv = p.inverse();
    int g = -1;
    for (int x = 1; x < n; ++x) {
      if (pinv(x) > pinv(x + 1)) {
        g = x;
        break;
      }
    }
    out.letters.push_back(g);
    // strip the leading sigma_g: p <- t_g o p (swap values g-1, g).
    std::vector<std::uint8_t> img = p.images();
    for (auto& v : img) {
      if (v == g - 1)
        v = static_cast<std::uint8_t>(g);
      else if (v == g)
        v = static_cast<std::uint8_t>(g - 1);
    }
    p = Permutation(std::move(img));
  }
  return out;
}

BraidWord delta_word(int n) {
  CanonicalFactor f{n, Permutation::identity(n)};
  std::vector<std::uint8_t> img(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) img[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(n - 1 - x);
  f.perm = Permutation(std::move(img));
  return f.to_word();
}

std::string NormalForm::to_string() const {
  std::ostringstream os;
  os << "D^" << delta_power;
  if (factors.empty()) {
    os << " |";
    return os.str();
  }
  for (const auto& f : factors) os << " | " << f.perm.to_string();
  return os.str();
}

BraidWord NormalForm::to_word() const {
  BraidWord out = word_power(delta_word(n), delta_power);
  for (const auto& f : factors) out = concat(out, f.to_word());
  return out;
}

namespace garside_detail {

std::uint64_t starting_set(const Permutation& p) {
  const Permutation inv = p.inverse();
  return descents(inv.images().data(), inv.degree());
}

std::uint64_t finishing_set(const Permutation& p) {
  return descents(p.images().data(), p.degree());
}

bool left_weighted(const Permutation& a, const Permutation& b) {
  return (starting_set(b) & ~finishing_set(a)) == 0;
}

Permutation meet(const Permutation& a, const Permutation& b) {
  const int n = a.degree();
  std::vector<std::uint8_t> qa = a.inverse().images();
  std::vector<std::uint8_t> qb = b.inverse().images();
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) c[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(x);
  while (std::uint64_t common = descents(qa.data(), n) & descents(qb.data(), n)) {
    const int g = std::countr_zero(common);
    std::swap(qa[g], qa[g + 1]);
    std::swap(qb[g], qb[g + 1]);
    std::swap(c[g], c[g + 1]);
  }
  return Permutation(std::move(c));
}

Permutation right_complement(const Permutation& a) {
  const int n = a.degree();
  const Permutation inv = a.inverse();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) out[x] = inv.images()[static_cast<std::size_t>(n - 1 - x)];
  return Permutation(std::move(out));
}

Permutation tau(const Permutation& a) {
  const int n = a.degree();
  std::vector<std::uint8_t> img = a.images();
  std::vector<std::uint8_t> tmp(static_cast<std::size_t>(n));
  perm_tau(img.data(), n, tmp.data());
  return Permutation(std::move(img));
}

bool fix(Permutation& a, Permutation& b) {
  const int n = a.degree();
  std::vector<std::uint8_t> pa = a.images();
  std::vector<std::uint8_t> pb = b.images();
  std::vector<std::uint8_t> scratch(static_cast<std::size_t>(4 * n));
  const int r = fix_pair(pa.data(), pb.data(), n, scratch.data());
  if (r == 0) return false;
  a = Permutation(std::move(pa));
  b = Permutation(std::move(pb));
  return true;
}

}  // namespace garside_detail

NormalForm parse_normal_form(int n, const std::string& text) {
  NormalForm nf;
  nf.n = n;
  std::istringstream is(text);
  std::string seg;
  bool first = true;
  while (std::getline(is, seg, '|')) {
    std::istringstream fs(seg);
    if (first) {
      std::string dtok;
      if (!(fs >> dtok) || dtok.rfind("D^", 0) != 0) throw ParseError("normal form must start with D^p");
      nf.delta_power = std::stoll(dtok.substr(2));
      first = false;
      continue;
    }
    std::vector<std::uint8_t> img;
    int v;
    while (fs >> v) {
      if (v < 1 || v > n) throw ParseError("permutation entry out of range");
      img.push_back(static_cast<std::uint8_t>(v - 1));
    }
    if (img.empty()) continue;
    if (static_cast<int>(img.size()) != n) throw ParseError("permutation of wrong degree");
    nf.factors.push_back(CanonicalFactor{n, Permutation(std::move(img))});
  }
  if (first) throw ParseError("empty normal form text");
  return nf;
}

}  // namespace braidgen
