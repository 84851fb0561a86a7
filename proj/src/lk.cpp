#include "braidgen/lk.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace braidgen {

namespace {

__int128 checked_add(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw BraidError("lk_oracle: coefficient overflow (add)");
  return r;
}

__int128 checked_mul(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw BraidError("lk_oracle: coefficient overflow (mul)");
  return r;
}

std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

LaurentPoly2 LaurentPoly2::monomial(long long c, int qe, int te) {
  LaurentPoly2 p;
  if (c != 0) p.terms_.push_back(Term{qe, te, static_cast<__int128>(c)});
  return p;
}

LaurentPoly2 LaurentPoly2::operator+(const LaurentPoly2& o) const {
  LaurentPoly2 out;
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  auto key = [](const Term& t) { return std::pair<int, int>(t.qe, t.te); };
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && key(terms_[i]) < key(o.terms_[j]))) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || key(o.terms_[j]) < key(terms_[i])) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      const __int128 c = checked_add(terms_[i].c, o.terms_[j].c);
      if (c != 0) out.terms_.push_back(Term{terms_[i].qe, terms_[i].te, c});
      ++i;
      ++j;
    }
  }
  return out;
}

LaurentPoly2 LaurentPoly2::operator-(const LaurentPoly2& o) const {
  LaurentPoly2 neg = o;
  for (auto& t : neg.terms_) t.c = checked_mul(t.c, -1);
  return *this + neg;
}

LaurentPoly2 LaurentPoly2::operator*(const LaurentPoly2& o) const {
  LaurentPoly2 out;
  // Multiply by the operand with fewer terms, accumulating shifted copies.
  const LaurentPoly2& big = terms_.size() >= o.terms_.size() ? *this : o;
  const LaurentPoly2& small = terms_.size() >= o.terms_.size() ? o : *this;
  for (const Term& s : small.terms_) {
    LaurentPoly2 shifted;
    shifted.terms_.reserve(big.terms_.size());
    for (const Term& b : big.terms_)
      shifted.terms_.push_back(Term{b.qe + s.qe, b.te + s.te, checked_mul(b.c, s.c)});
    out = out + shifted;
  }
  return out;
}

std::string LaurentPoly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << int128_to_string(t.c);
    if (t.qe) os << "*q^" << t.qe;
    if (t.te) os << "*t^" << t.te;
  }
  return os.str();
}

// ----------------------------------------------------------------------------

LKMatrix::LKMatrix(int n, int dim) : n_(n), dim_(dim), m_(static_cast<std::size_t>(dim) * dim) {}

LKMatrix LKMatrix::identity(int n) {
  const int d = n * (n - 1) / 2;
  LKMatrix m(n, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = LaurentPoly2::one();
  return m;
}

const LaurentPoly2& LKMatrix::at(int r, int c) const {
  return m_[static_cast<std::size_t>(c) * dim_ + r];
}

LaurentPoly2& LKMatrix::at(int r, int c) {
  return m_[static_cast<std::size_t>(c) * dim_ + r];
}

LKMatrix LKMatrix::operator*(const LKMatrix& g) const {
  LKMatrix out(n_, dim_);
  for (int j = 0; j < dim_; ++j) {
    // Column j of the result is the combination of our columns selected by
    // column j of g; generator matrices are sparse so most columns are e_j.
    bool is_ej = g.at(j, j).terms().size() == 1 && g.at(j, j).terms()[0] == LaurentPoly2::Term{0, 0, 1};
    if (is_ej) {
      for (int r = 0; r < dim_; ++r)
        if (r != j && !g.at(r, j).is_zero()) {
          is_ej = false;
          break;
        }
    }
    if (is_ej) {
      for (int r = 0; r < dim_; ++r) out.at(r, j) = at(r, j);
      continue;
    }
    for (int k = 0; k < dim_; ++k) {
      const LaurentPoly2& gk = g.at(k, j);
      if (gk.is_zero()) continue;
      for (int r = 0; r < dim_; ++r) {
        const LaurentPoly2& mk = at(r, k);
        if (mk.is_zero()) continue;
        out.at(r, j) = out.at(r, j) + mk * gk;
      }
    }
  }
  return out;
}

bool LKMatrix::is_identity() const {
  return *this == identity(n_);
}

int lk_basis_index(int n, int r, int s) {
  // pairs (r,s), r < s, ordered (1,2),(1,3),...,(1,n),(2,3),...
  return (r - 1) * (2 * n - r) / 2 + (s - r - 1);
}

namespace {

// Action of sigma_k on basis vector v_{i,j} (1 <= i < j <= n):
//   k < i-1 or k > j:    v_{i,j}
//   k == i-1:            v_{i-1,j} + (1-q) v_{i,j}
//   k == i,  i < j-1:    t q (q-1) v_{i,i+1} + q v_{i+1,j}
//   k == i == j-1:       t q^2 v_{i,j}
//   i < k < j-1:         v_{i,j} + t q^{k-i} (q-1)^2 v_{k,k+1}
//   k == j-1, k != i:    v_{i,j-1} + t q^{j-i} (q-1) v_{j-1,j}
//   k == j:              (1-q) v_{i,j} + q v_{i,j+1}
LKMatrix lk_generator_positive(int n, int k) {
  const int d = n * (n - 1) / 2;
  LKMatrix m(n, d);
  auto P = [](long long c, int qe, int te) { return LaurentPoly2::monomial(c, qe, te); };
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const int col = lk_basis_index(n, i, j);
      auto add = [&](int r, int s, const LaurentPoly2& p) {
        const int row = lk_basis_index(n, r, s);
        m.at(row, col) = m.at(row, col) + p;
      };
      if (k < i - 1 || k > j) {
        add(i, j, P(1, 0, 0));
      } else if (k == i - 1) {
        add(i - 1, j, P(1, 0, 0));
        add(i, j, P(1, 0, 0) - P(1, 1, 0));
      } else if (k == i && i < j - 1) {
        add(i, i + 1, P(1, 2, 1) - P(1, 1, 1));
        add(i + 1, j, P(1, 1, 0));
      } else if (k == i && i == j - 1) {
        add(i, j, P(1, 2, 1));
      } else if (i < k && k < j - 1) {
        add(i, j, P(1, 0, 0));
        add(k, k + 1, P(1, k - i + 2, 1) - P(2, k - i + 1, 1) + P(1, k - i, 1));
      } else if (k == j - 1) {
        add(i, j - 1, P(1, 0, 0));
        add(j - 1, j, P(1, j - i + 1, 1) - P(1, j - i, 1));
      } else {  // k == j
        add(i, j, P(1, 0, 0) - P(1, 1, 0));
        add(i, j + 1, P(1, 1, 0));
      }
    }
  }
  return m;
}

// Every generator matrix satisfies (M - 1)(M + q)(M - t q^2) = 0, so
//   M^{-1} = (M^2 + (q - 1 - t q^2) M + (t q^2 - t q^3 - q) I) * (-q^{-3} t^{-1}).
LKMatrix lk_generator_inverse(int n, int k) {
  const LKMatrix m = lk_generator_positive(n, k);
  const int d = m.dim();
  const LKMatrix m2 = m * m;
  const LaurentPoly2 a =
      LaurentPoly2::monomial(1, 1, 0) - LaurentPoly2::monomial(1, 0, 0) - LaurentPoly2::monomial(1, 2, 1);
  const LaurentPoly2 b = LaurentPoly2::monomial(1, 2, 1) - LaurentPoly2::monomial(1, 3, 1) -
                         LaurentPoly2::monomial(1, 1, 0);
  const LaurentPoly2 scale = LaurentPoly2::monomial(-1, -3, -1);
  LKMatrix out(n, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      LaurentPoly2 v = m2.at(r, c) + a * m.at(r, c);
      if (r == c) v = v + b;
      out.at(r, c) = v * scale;
    }
  return out;
}

struct LKContext {
  std::vector<LKMatrix> pos, inv;
};

const LKContext& lk_context(int n) {
  static std::mutex mu;
  static std::map<int, LKContext> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  LKContext ctx;
  ctx.pos.reserve(static_cast<std::size_t>(n - 1));
  ctx.inv.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i) {
    ctx.pos.push_back(lk_generator_positive(n, i));
    ctx.inv.push_back(lk_generator_inverse(n, i));
  }
  return cache.emplace(n, std::move(ctx)).first->second;
}

}  // namespace

LKMatrix lk_generator(int n, int i, int sign) {
  if (n < 2) throw BadStrandCount("lk_generator: strand count below 2");
  if (i < 1 || i > n - 1)
    throw IndexOutOfRange("lk_generator: index " + std::to_string(i) + " out of range 1.." +
                          std::to_string(n - 1));
  return sign > 0 ? lk_generator_positive(n, i) : lk_generator_inverse(n, i);
}

LKMatrix lk_matrix(const BraidWord& w, std::size_t max_letters) {
  if (w.letters.size() > max_letters)
    throw WordTooLong("lk_matrix: word of length " + std::to_string(w.letters.size()) +
                      " exceeds bound " + std::to_string(max_letters));
  const LKContext& ctx = lk_context(w.n);
  LKMatrix m = LKMatrix::identity(w.n);
  for (Letter t : w.letters) {
    const std::size_t i = static_cast<std::size_t>(std::abs(t) - 1);
    m = m * (t > 0 ? ctx.pos[i] : ctx.inv[i]);
  }
  return m;
}

bool equal_via_lk(const BraidWord& w1, const BraidWord& w2, std::size_t max_letters) {
  if (w1.n != w2.n) throw StrandCountMismatch("equal_via_lk: strand counts differ");
  return lk_matrix(w1, max_letters) == lk_matrix(w2, max_letters);
}

}  // namespace braidgen
