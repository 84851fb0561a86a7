#include "braidgen/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace braidgen {

Permutation::Permutation(std::vector<std::uint8_t> img) : img_(std::move(img)) {}

Permutation Permutation::identity(int n) {
  std::vector<std::uint8_t> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), std::uint8_t{0});
  return Permutation(std::move(v));
}

Permutation Permutation::transposition(int n, int i) {
  Permutation p = identity(n);
  std::swap(p.img_[static_cast<std::size_t>(i - 1)], p.img_[static_cast<std::size_t>(i)]);
  return p;
}

Permutation Permutation::operator*(const Permutation& q) const {
  const std::size_t n = img_.size();
  std::vector<std::uint8_t> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = img_[q.img_[x]];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> out(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) out[img_[x]] = static_cast<std::uint8_t>(x);
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

int Permutation::sign() const {
  std::vector<bool> seen(img_.size(), false);
  int parity = 0;
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0, y = x;
    while (!seen[y]) {
      seen[y] = true;
      y = img_[y];
      ++len;
    }
    parity ^= static_cast<int>((len + 1) & 1u);
  }
  return parity ? -1 : 1;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (x) os << ' ';
    os << int(img_[x]) + 1;
  }
  return os.str();
}

// ----------------------------------------------------------------------------

static void check_strands(int n, int min_n) {
  if (n < min_n) throw BadStrandCount("strand count must be at least " + std::to_string(min_n) + ", got " + std::to_string(n));
}

static void check_letter(int n, Letter t) {
  if (t == 0) throw IndexOutOfRange("zero letter");
  const int idx = std::abs(t);
  if (idx > n - 1)
    throw IndexOutOfRange("generator index " + std::to_string(idx) + " out of range 1.." + std::to_string(n - 1));
}

BraidWord make_word(int n, const std::vector<Letter>& tokens) {
  check_strands(n, 2);
  for (Letter t : tokens) check_letter(n, t);
  return BraidWord{n, tokens};
}

BraidWord free_reduce(const BraidWord& w) {
  BraidWord out{w.n, {}};
  out.letters.reserve(w.letters.size());
  for (Letter t : w.letters) {
    if (!out.letters.empty() && out.letters.back() == -t)
      out.letters.pop_back();
    else
      out.letters.push_back(t);
  }
  return out;
}

BraidWord concat(const BraidWord& w1, const BraidWord& w2) {
  if (w1.n != w2.n) throw StrandCountMismatch("concat: strand counts differ");
  BraidWord out{w1.n, {}};
  out.letters.reserve(w1.letters.size() + w2.letters.size());
  out.letters = w1.letters;
  out.letters.insert(out.letters.end(), w2.letters.begin(), w2.letters.end());
  return free_reduce(out);
}

BraidWord invert(const BraidWord& w) {
  BraidWord out{w.n, {}};
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

BraidWord conjugate(const BraidWord& g, const BraidWord& w) {
  if (g.n != w.n) throw StrandCountMismatch("conjugate: strand counts differ");
  return concat(concat(g, w), invert(g));
}

BraidWord word_power(const BraidWord& w, long long e) {
  BraidWord base = e < 0 ? invert(w) : w;
  unsigned long long reps = static_cast<unsigned long long>(e < 0 ? -e : e);
  BraidWord out{w.n, {}};
  out.letters.reserve(base.letters.size() * reps);
  for (unsigned long long i = 0; i < reps; ++i)
    out.letters.insert(out.letters.end(), base.letters.begin(), base.letters.end());
  return free_reduce(out);
}

long long exponent_sum(const BraidWord& w) {
  long long s = 0;
  for (Letter t : w.letters) s += t > 0 ? 1 : -1;
  return s;
}

Permutation permutation_image(const BraidWord& w) {
  std::vector<std::uint8_t> img(static_cast<std::size_t>(w.n));
  std::iota(img.begin(), img.end(), std::uint8_t{0});
  // Appending a letter multiplies on the right: img <- img o t_i.
  for (Letter t : w.letters) {
    const int i = std::abs(t) - 1;
    std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(i) + 1]);
  }
  return Permutation(std::move(img));
}

BraidWord alpha_power(int n, long long k) {
  check_strands(n, 3);
  BraidWord out{n, {}};
  const unsigned long long reps = static_cast<unsigned long long>(k < 0 ? -k : k);
  out.letters.reserve(reps * static_cast<unsigned long long>(n - 1));
  for (unsigned long long r = 0; r < reps; ++r) {
    if (k > 0)
      for (int i = 1; i <= n - 1; ++i) out.letters.push_back(i);
    else
      for (int i = n - 1; i >= 1; --i) out.letters.push_back(-i);
  }
  return out;
}

BraidWord sigma(int n, long long i, int sign) {
  check_strands(n, 3);
  long long r = i % n;
  if (r < 0) r += n;
  if (r != 0) {
    return BraidWord{n, {static_cast<Letter>(sign > 0 ? r : -r)}};
  }
  BraidWord mid{n, {static_cast<Letter>(sign > 0 ? (n - 1) : -(n - 1))}};
  return concat(concat(alpha_power(n, 1), mid), alpha_power(n, -1));
}

BraidWord shift_conjugate(const BraidWord& w, long long m) {
  BraidWord out{w.n, {}};
  for (Letter t : w.letters) {
    const int sign = t > 0 ? 1 : -1;
    BraidWord piece = sigma(w.n, std::abs(t) + m, sign);
    out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
  }
  return free_reduce(out);
}

// ---- text format -----------------------------------------------------------

BraidWord parse_word(int n, const std::string& text) {
  check_strands(n, 2);
  BraidWord out{n, {}};
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    long long idx = 0, pow = 1;
    std::size_t caret = tok.find('^');
    std::string head = caret == std::string::npos ? tok : tok.substr(0, caret);
    auto parse_int = [&](const std::string& s, long long& v) {
      if (s.empty()) throw ParseError("empty number in token '" + tok + "'");
      const char* b = s.data();
      const char* e = s.data() + s.size();
      auto res = std::from_chars(b, e, v);
      if (res.ec != std::errc() || res.ptr != e)
        throw ParseError("bad number '" + s + "' in token '" + tok + "'");
    };
    parse_int(head, idx);
    if (caret != std::string::npos) parse_int(tok.substr(caret + 1), pow);
    int sign = head[0] == '-' ? -1 : 1;  // covers "-0" for the inverse half-twist
    long long abs_idx = idx < 0 ? -idx : idx;
    if (pow < 0) {
      sign = -sign;
      pow = -pow;
    }
    if (abs_idx != 0 && abs_idx > n - 1)
      throw IndexOutOfRange("generator index " + std::to_string(abs_idx) + " out of range 1.." +
                            std::to_string(n - 1));
    for (long long r = 0; r < pow; ++r) {
      if (abs_idx == 0) {
        BraidWord piece = sigma(n, 0, sign);
        out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
      } else {
        out.letters.push_back(static_cast<Letter>(sign > 0 ? abs_idx : -abs_idx));
      }
    }
  }
  return out;
}

std::string word_to_string(const BraidWord& w) {
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    const std::size_t run = j - i;
    if (!first) os << ' ';
    first = false;
    const Letter t = w.letters[i];
    if (run == 1) {
      os << t;
    } else if (t > 0) {
      os << t << '^' << run;
    } else {
      os << -t << "^-" << run;
    }
    i = j;
  }
  return os.str();
}

}  // namespace braidgen
