#pragma once

// Words in the marked generators s1..s{n-1}, presentations and HLT coset
// enumeration.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chiral/errors.hpp"
#include "chiral/perm.hpp"

namespace chiral {

/// One run s_gen^exp of a word. gen is 1-based.
struct Syllable {
  int gen = 1;
  std::int64_t exp = 1;
  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A freely reduced word, stored run-length.
class Word {
 public:
  /// Hard limit on the number of syllables a word may hold.
  static constexpr std::size_t kMaxSyllables = 1u << 22;

  Word() = default;
  Word(std::initializer_list<Syllable> s) : Word(std::vector<Syllable>(s)) {}
  explicit Word(std::vector<Syllable> s) {
    for (const auto& x : s) push(x);
  }

  static Word generator(int gen, std::int64_t exp = 1) { return Word({Syllable{gen, exp}}); }

  const std::vector<Syllable>& syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }

  /// Letter count, i.e. sum of |exp|.
  std::uint64_t length() const {
    std::uint64_t n = 0;
    for (const auto& s : syl_) n = detail::checked_mul(1, n + magnitude(s.exp));
    return n;
  }

  int max_generator() const noexcept {
    int m = 0;
    for (const auto& s : syl_) m = std::max(m, s.gen);
    return m;
  }

  Word inverse() const {
    Word out;
    out.syl_.reserve(syl_.size());
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) out.syl_.push_back({it->gen, -it->exp});
    return out;
  }

  Word pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    if (k == 0 || empty()) return {};
    if (syl_.size() == 1) {
      std::int64_t e = 0;
      if (__builtin_mul_overflow(syl_[0].exp, k, &e)) throw InvalidArgument("word exponent overflow");
      return generator(syl_[0].gen, e);
    }
    if (static_cast<std::uint64_t>(k) * syl_.size() > kMaxSyllables) {
      throw InvalidArgument("word too long");
    }
    Word out;
    for (std::int64_t i = 0; i < k; ++i) {
      for (const auto& s : syl_) out.push(s);
    }
    return out;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word out = a;
    out *= b;
    return out;
  }
  Word& operator*=(const Word& b) {
    if (syl_.size() + b.syl_.size() > kMaxSyllables) throw InvalidArgument("word too long");
    for (const auto& s : b.syl_) push(s);
    return *this;
  }

  /// Generator-wise substitution: gen i is replaced by images[i-1].
  Word substitute(std::span<const Word> images) const {
    Word out;
    for (const auto& s : syl_) {
      if (s.gen < 1 || static_cast<std::size_t>(s.gen) > images.size()) {
        throw InvalidArgument("substitution has no image for s" + std::to_string(s.gen));
      }
      out *= images[s.gen - 1].pow(s.exp);
    }
    return out;
  }

  /// Letters as table columns: gen g maps to 2(g-1), its inverse to 2(g-1)+1.
  std::vector<std::uint32_t> columns(std::uint64_t max_letters = 1u << 24) const {
    if (length() > max_letters) {
      throw ResourceError("word too long to scan (" + std::to_string(length()) + " letters)",
                          max_letters, length());
    }
    std::vector<std::uint32_t> out;
    for (const auto& s : syl_) {
      std::uint32_t col = 2u * static_cast<std::uint32_t>(s.gen - 1) + (s.exp < 0 ? 1u : 0u);
      out.insert(out.end(), magnitude(s.exp), col);
    }
    return out;
  }

  /// "s2^-1 s3"; the empty word prints as "s1^0", which parses back to it.
  std::string to_string(std::string_view letter = "s") const {
    if (empty()) return std::string(letter) + "1^0";
    std::string out;
    for (const auto& s : syl_) {
      if (!out.empty()) out += ' ';
      out += letter;
      out += std::to_string(s.gen);
      if (s.exp != 1) out += '^' + std::to_string(s.exp);
    }
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.syl_ <=> b.syl_; }

 private:
  static std::uint64_t magnitude(std::int64_t e) {
    return e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  }

  void push(Syllable s) {
    if (s.gen < 1) throw InvalidArgument("generator index must be positive");
    if (s.exp == 0) return;
    if (!syl_.empty() && syl_.back().gen == s.gen) {
      std::int64_t e = 0;
      if (__builtin_add_overflow(syl_.back().exp, s.exp, &e)) {
        throw InvalidArgument("word exponent overflow");
      }
      if (e == 0) {
        syl_.pop_back();
      } else {
        syl_.back().exp = e;
      }
      return;
    }
    syl_.push_back(s);
  }

  std::vector<Syllable> syl_;
};

namespace detail {

class WordParser {
 public:
  WordParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  Word parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty word", pos_);
    Word w = parse_word(0);
    skip_ws();
    if (pos_ < text_.size()) {
      fail(text_[pos_] == ')' ? "unbalanced ')'" : "unexpected character '" +
                                                        std::string(1, text_[pos_]) + "'",
           pos_);
    }
    return w;
  }

 private:
  static constexpr int kMaxDepth = 200;

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError(what, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Word parse_word(int depth) {
    if (depth > kMaxDepth) fail("parentheses nested too deeply", pos_);
    Word out;
    bool any = false;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ')') break;
      out *= parse_term(depth);
      any = true;
    }
    if (!any) fail("expected a term", pos_);
    return out;
  }

  Word parse_term(int depth) {
    Word atom = parse_atom(depth);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      std::size_t at = pos_++;
      skip_ws();
      std::int64_t k = parse_int(true);
      try {
        return atom.pow(k);
      } catch (const InvalidArgument& e) {
        fail(e.what(), at);
      }
    }
    return atom;
  }

  Word parse_atom(int depth) {
    char c = text_[pos_];
    if (c == 's') {
      std::size_t at = pos_++;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected generator index after 's'", pos_);
      }
      std::int64_t g = parse_int(false);
      if (g < 1 || g > rank_ - 1) {
        fail("generator s" + std::to_string(g) + " out of range 1.." + std::to_string(rank_ - 1),
             at);
      }
      return Word::generator(static_cast<int>(g));
    }
    if (c == '(') {
      std::size_t open = pos_++;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') fail("empty parentheses", open);
      Word inner = parse_word(depth + 1);
      if (pos_ >= text_.size()) fail("unclosed '('", open);
      ++pos_;
      return inner;
    }
    fail("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::int64_t parse_int(bool allow_sign) {
    std::size_t start = pos_;
    bool neg = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected an integer", pos_);
    }
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::numeric_limits<std::int32_t>::max() - (text_[pos_] - '0')) / 10) {
        fail("integer out of range", start);
      }
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `word := term+ ; term := atom ('^' int)? ; atom := 's' int | '(' word ')'`.
/// Generators range over s1..s{rank-1}.
inline Word parse_word(std::string_view text, int rank) {
  if (rank < 2) throw InvalidArgument("rank must be at least 2");
  return detail::WordParser(text, rank).parse();
}

inline std::string print_word(const Word& w) { return w.to_string(); }

/// A finitely presented group on s1..s{rank-1}.
struct Presentation {
  int rank = 2;
  std::vector<Word> relators;
  /// Nominal orders p_i of s_i when known (empty otherwise).
  std::vector<std::uint64_t> orders;

  int generator_count() const noexcept { return rank - 1; }

  void validate() const {
    if (rank < 2) throw InvalidArgument("presentation rank must be at least 2");
    for (const auto& r : relators) {
      if (r.max_generator() > rank - 1) {
        throw InvalidArgument("relator " + r.to_string() + " uses a generator beyond s" +
                              std::to_string(rank - 1));
      }
    }
    if (!orders.empty() && orders.size() != static_cast<std::size_t>(rank - 1)) {
      throw InvalidArgument("orders must list one value per generator");
    }
  }

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Product of generator images under the right action.
inline Permutation evaluate(const Word& w, std::span<const Permutation> gens) {
  if (gens.empty()) throw InvalidArgument("evaluate needs at least one generator image");
  Permutation out(gens.front().degree());
  for (const auto& s : w.syllables()) {
    if (s.gen < 1 || static_cast<std::size_t>(s.gen) > gens.size()) {
      throw InvalidArgument("word uses s" + std::to_string(s.gen) + " but only " +
                            std::to_string(gens.size()) + " generators given");
    }
    out *= gens[s.gen - 1].pow(s.exp);
  }
  return out;
}

struct EnumerationStats {
  std::uint64_t defined = 0;
  std::uint64_t max_live = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t lookaheads = 0;
};

/// Complete coset table. Column 2(g-1) is s_g, column 2(g-1)+1 its inverse.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t ngens, std::size_t index, std::vector<std::int32_t> data,
             EnumerationStats stats)
      : ngens_(ngens), index_(index), data_(std::move(data)), stats_(stats) {}

  std::size_t index() const noexcept { return index_; }
  std::size_t generator_count() const noexcept { return ngens_; }
  std::size_t columns() const noexcept { return 2 * ngens_; }
  bool complete() const noexcept { return index_ > 0; }
  const EnumerationStats& stats() const noexcept { return stats_; }

  std::int32_t at(std::size_t coset, std::size_t col) const {
    return data_[coset * columns() + col];
  }

  /// Coset reached from `coset` by reading w.
  std::size_t trace(std::size_t coset, const Word& w) const {
    for (auto col : w.columns()) coset = static_cast<std::size_t>(at(coset, col));
    return coset;
  }

 private:
  std::size_t ngens_ = 0;
  std::size_t index_ = 0;
  std::vector<std::int32_t> data_;
  EnumerationStats stats_;
};

namespace detail {

// Hasselgrove-Leech-Trotter enumeration with lookahead and compaction.
class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup, std::size_t max_cosets)
      : cols_(2 * static_cast<std::size_t>(p.rank - 1)), max_(max_cosets) {
    for (const auto& r : p.relators) {
      if (!r.empty()) rels_.push_back(r.columns());
    }
    for (const auto& w : subgroup) {
      if (w.max_generator() > p.rank - 1) throw InvalidArgument("subgroup word out of range");
      if (!w.empty()) sub_.push_back(w.columns());
    }
  }

  CosetTable run() {
    new_coset();
    for (const auto& w : sub_) {
      scan_and_fill(0, w);
      process_coincidences();
    }
    for (std::size_t c = 0; c < n_; ++c) {
      if (alive(c)) {
        for (const auto& r : rels_) {
          scan_and_fill(c, r);
          process_coincidences();
          if (!alive(c)) break;
        }
        for (std::size_t x = 0; x < cols_ && alive(c); ++x) {
          if (entry(c, x) < 0) define(c, x);
        }
      }
      // Reclaim dead rows once they dominate; c keeps its place in the order.
      if (n_ - live_ > live_ + 1024) c = compact(c);
    }
    compact(0);
    return standardize();
  }

 private:
  static constexpr std::int32_t kUndef = -1;

  std::int32_t& entry(std::size_t c, std::size_t x) { return table_[c * cols_ + x]; }
  bool alive(std::size_t c) const { return parent_[c] == static_cast<std::int32_t>(c); }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != static_cast<std::int32_t>(r)) r = static_cast<std::size_t>(parent_[r]);
    while (parent_[c] != static_cast<std::int32_t>(r)) {
      std::size_t next = static_cast<std::size_t>(parent_[c]);
      parent_[c] = static_cast<std::int32_t>(r);
      c = next;
    }
    return r;
  }

  std::size_t new_coset() {
    if (n_ >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
      throw ResourceError("coset table index overflow", max_, n_);
    }
    table_.resize((n_ + 1) * cols_, kUndef);
    parent_.push_back(static_cast<std::int32_t>(n_));
    ++live_;
    ++stats_.defined;
    stats_.max_live = std::max<std::uint64_t>(stats_.max_live, live_);
    return n_++;
  }

  // Returns false when a lookahead ran instead (the caller rescans).
  bool define(std::size_t c, std::size_t x) {
    if (live_ >= max_) {
      lookahead();
      if (live_ >= max_) {
        throw ResourceError("coset enumeration exceeded max_cosets=" + std::to_string(max_) +
                                " (defined " + std::to_string(stats_.defined) + ", live " +
                                std::to_string(live_) + ", lookaheads " +
                                std::to_string(stats_.lookaheads) + ")",
                            max_, stats_.defined);
      }
      return false;
    }
    std::size_t d = new_coset();
    entry(c, x) = static_cast<std::int32_t>(d);
    entry(d, x ^ 1u) = static_cast<std::int32_t>(c);
    return true;
  }

  // Scans w at c, defining cosets to close gaps.
  void scan_and_fill(std::size_t c, const std::vector<std::uint32_t>& w) {
    const std::size_t m = w.size();
    std::size_t f = c, i = 0;
    std::size_t b = c, j = m;
    for (;;) {
      while (i < j && entry(f, w[i]) >= 0) f = static_cast<std::size_t>(entry(f, w[i++]));
      if (i == j) {
        coincidence(f, b);
        return;
      }
      while (j > i && entry(b, w[j - 1] ^ 1u) >= 0) {
        b = static_cast<std::size_t>(entry(b, w[j - 1] ^ 1u));
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        entry(f, w[i]) = static_cast<std::int32_t>(b);
        entry(b, w[i] ^ 1u) = static_cast<std::int32_t>(f);
        return;
      }
      if (!define(f, w[i])) {
        if (!alive(c)) return;
        f = b = c;
        i = 0;
        j = m;
      }
    }
  }

  // Deduction-only scan used during lookahead.
  void scan(std::size_t c, const std::vector<std::uint32_t>& w) {
    const std::size_t m = w.size();
    std::size_t f = c, i = 0;
    while (i < m && entry(f, w[i]) >= 0) f = static_cast<std::size_t>(entry(f, w[i++]));
    if (i == m) {
      coincidence(f, c);
      return;
    }
    std::size_t b = c, j = m;
    while (j > i && entry(b, w[j - 1] ^ 1u) >= 0) {
      b = static_cast<std::size_t>(entry(b, w[j - 1] ^ 1u));
      --j;
    }
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      entry(f, w[i]) = static_cast<std::int32_t>(b);
      entry(b, w[i] ^ 1u) = static_cast<std::int32_t>(f);
    }
  }

  void lookahead() {
    ++stats_.lookaheads;
    for (std::size_t c = 0; c < n_; ++c) {
      for (const auto& r : rels_) {
        if (!alive(c)) break;
        scan(c, r);
        process_coincidences();
      }
    }
  }

  void coincidence(std::size_t a, std::size_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    merge(a, b);
  }

  void merge(std::size_t a, std::size_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    std::size_t lo = std::min(a, b), hi = std::max(a, b);
    parent_[hi] = static_cast<std::int32_t>(lo);
    queue_.push_back(hi);
    --live_;
    ++stats_.coincidences;
  }

  void process_coincidences() {
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      std::size_t e = queue_[qi];
      for (std::size_t x = 0; x < cols_; ++x) {
        std::int32_t fe = entry(e, x);
        if (fe < 0) continue;
        std::size_t f = static_cast<std::size_t>(fe);
        if (entry(f, x ^ 1u) == static_cast<std::int32_t>(e)) entry(f, x ^ 1u) = kUndef;
        std::size_t e1 = rep(e), f1 = rep(f);
        if (entry(e1, x) >= 0) {
          merge(f1, static_cast<std::size_t>(entry(e1, x)));
        } else if (entry(f1, x ^ 1u) >= 0) {
          merge(e1, static_cast<std::size_t>(entry(f1, x ^ 1u)));
        } else {
          entry(e1, x) = static_cast<std::int32_t>(f1);
          entry(f1, x ^ 1u) = static_cast<std::int32_t>(e1);
        }
      }
    }
    queue_.clear();
  }

  // Removes dead cosets, preserving definition order. Returns the new index
  // of the last live coset at or before `pos` (or SIZE_MAX if none, which
  // the main loop's ++ wraps to 0).
  std::size_t compact(std::size_t pos) {
    std::vector<std::int32_t> map(n_, -1);
    std::size_t k = 0;
    std::size_t at = static_cast<std::size_t>(-1);
    for (std::size_t c = 0; c < n_; ++c) {
      if (alive(c)) map[c] = static_cast<std::int32_t>(k++);
      if (c == pos) at = k - 1;
    }
    for (std::size_t c = 0; c < n_; ++c) {
      if (map[c] < 0) continue;
      std::size_t to = static_cast<std::size_t>(map[c]);
      for (std::size_t x = 0; x < cols_; ++x) {
        std::int32_t v = entry(c, x);
        table_[to * cols_ + x] = v < 0 ? kUndef : map[rep(static_cast<std::size_t>(v))];
      }
    }
    n_ = k;
    table_.resize(n_ * cols_);
    parent_.resize(n_);
    std::iota(parent_.begin(), parent_.end(), 0);
    live_ = n_;
    return at;
  }

  CosetTable standardize() {
    // BFS renumbering by (coset, column) order.
    std::vector<std::int32_t> order(n_, -1);
    std::vector<std::size_t> seq;
    seq.reserve(n_);
    order[0] = 0;
    seq.push_back(0);
    for (std::size_t qi = 0; qi < seq.size(); ++qi) {
      std::size_t c = seq[qi];
      for (std::size_t x = 0; x < cols_; ++x) {
        std::int32_t d = entry(c, x);
        if (d < 0) throw ConsistencyError("coset enumeration finished with an undefined entry");
        if (order[static_cast<std::size_t>(d)] < 0) {
          order[static_cast<std::size_t>(d)] = static_cast<std::int32_t>(seq.size());
          seq.push_back(static_cast<std::size_t>(d));
        }
      }
    }
    if (seq.size() != n_) throw ConsistencyError("coset table is not connected");
    std::vector<std::int32_t> data(n_ * cols_);
    for (std::size_t c = 0; c < n_; ++c) {
      std::size_t to = static_cast<std::size_t>(order[c]);
      for (std::size_t x = 0; x < cols_; ++x) {
        data[to * cols_ + x] = order[static_cast<std::size_t>(entry(c, x))];
      }
    }
    return CosetTable(cols_ / 2, n_, std::move(data), stats_);
  }

  std::size_t cols_;
  std::size_t max_;
  std::vector<std::vector<std::uint32_t>> rels_;
  std::vector<std::vector<std::uint32_t>> sub_;

  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::size_t> queue_;
  std::size_t n_ = 0;
  std::size_t live_ = 0;
  EnumerationStats stats_;

};

}  // namespace detail

/// Verifies that every entry is defined, columns are mutually inverse and
/// every relator closes at every coset.
inline void verify_table(const CosetTable& t, const Presentation& p,
                         const std::vector<Word>& subgroup = {}) {
  const std::size_t cols = t.columns();
  for (std::size_t c = 0; c < t.index(); ++c) {
    for (std::size_t x = 0; x < cols; ++x) {
      std::int32_t d = t.at(c, x);
      if (d < 0 || static_cast<std::size_t>(d) >= t.index() ||
          t.at(static_cast<std::size_t>(d), x ^ 1u) != static_cast<std::int32_t>(c)) {
        throw ConsistencyError("coset table entry (" + std::to_string(c) + "," +
                               std::to_string(x) + ") is inconsistent");
      }
    }
  }
  for (const auto& r : p.relators) {
    auto w = r.columns();
    for (std::size_t c = 0; c < t.index(); ++c) {
      std::size_t e = c;
      for (auto x : w) e = static_cast<std::size_t>(t.at(e, x));
      if (e != c) {
        throw ConsistencyError("relator " + r.to_string() + " does not close at coset " +
                               std::to_string(c));
      }
    }
  }
  for (const auto& h : subgroup) {
    if (t.trace(0, h) != 0) throw ConsistencyError("subgroup word does not fix coset 0");
  }
}

/// Enumerates the cosets of <subgroup> in the group presented by p.
/// Cosets are numbered by breadth-first search from the subgroup coset, so
/// the result depends only on the input.
inline CosetTable coset_enumerate(const Presentation& p, const std::vector<Word>& subgroup = {},
                                  std::size_t max_cosets = 1'000'000) {
  p.validate();
  if (max_cosets < 1) throw InvalidArgument("max_cosets must be at least 1");
  auto table = detail::Enumerator(p, subgroup, max_cosets).run();
  verify_table(table, p, subgroup);
  return table;
}

/// Action of each generator on the cosets of a complete table. Relators of
/// p, when given, are checked to evaluate to the identity.
inline std::vector<Permutation> perm_rep(const CosetTable& t, const Presentation* p = nullptr) {
  if (!t.complete()) throw InvalidArgument("coset table is not complete");
  std::vector<Permutation> out;
  out.reserve(t.generator_count());
  for (std::size_t g = 0; g < t.generator_count(); ++g) {
    std::vector<point_t> img(t.index());
    for (std::size_t c = 0; c < t.index(); ++c) img[c] = static_cast<point_t>(t.at(c, 2 * g));
    out.emplace_back(std::move(img));
  }
  if (p != nullptr) {
    for (const auto& r : p->relators) {
      if (!evaluate(r, out).is_identity()) {
        throw ConsistencyError("relator " + r.to_string() + " is not satisfied by the coset action");
      }
    }
  }
  return out;
}

inline std::vector<Permutation> perm_rep(const CosetTable& t, const Presentation& p) {
  return perm_rep(t, &p);
}

}  // namespace chiral
