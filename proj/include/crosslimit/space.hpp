#pragma once

// Decidable subsets of the example space X = {0, 1, 2, ...}: a union of
// residue classes modulo m, plus finitely many added points, minus finitely
// many removed points. The family is closed under all boolean operations, so
// emptiness, finiteness and least elements of any derived region are exact.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crosslimit/error.hpp"

namespace crosslimit {

inline constexpr Natural kMaxModulus = Natural{1} << 20;

class Cardinality {
 public:
  static Cardinality finite(std::size_t count) { return Cardinality(count); }
  static Cardinality infinite() { return Cardinality(); }

  bool is_finite() const noexcept { return count_.has_value(); }
  bool is_infinite() const noexcept { return !count_.has_value(); }

  std::size_t count() const {
    if (!count_) throw Error("cardinality is countably infinite");
    return *count_;
  }

  bool operator==(const Cardinality&) const = default;

  std::string to_string() const {
    return count_ ? std::to_string(*count_) : std::string("CountablyInfinite");
  }

 private:
  Cardinality() = default;
  explicit Cardinality(std::size_t n) : count_(n) {}

  std::optional<std::size_t> count_;
};

class SymbolicSet {
 public:
  /// The empty set.
  SymbolicSet() : mask_(1, false) {}

  static SymbolicSet empty() { return SymbolicSet(); }
  static SymbolicSet all() { return residue_class(1, {0}); }

  static SymbolicSet residue_class(Natural modulus, std::vector<Natural> residues) {
    return make(modulus, std::move(residues), {}, {});
  }

  static SymbolicSet finite(std::vector<Natural> elements) {
    return make(1, {}, std::move(elements), {});
  }

  /// Builds the set {n : n mod m in residues} ∪ plus ∖ minus in canonical form.
  /// Inputs need not satisfy the representation invariants.
  static SymbolicSet make(Natural modulus, std::vector<Natural> residues,
                          std::vector<Natural> plus, std::vector<Natural> minus) {
    check_modulus(modulus);
    std::vector<bool> mask(modulus, false);
    for (Natural r : residues) {
      if (r >= modulus) {
        throw Error("residue " + std::to_string(r) + " is not below modulus " +
                    std::to_string(modulus));
      }
      mask[r] = true;
    }
    std::sort(plus.begin(), plus.end());
    plus.erase(std::unique(plus.begin(), plus.end()), plus.end());
    std::sort(minus.begin(), minus.end());
    minus.erase(std::unique(minus.begin(), minus.end()), minus.end());

    auto member = [&, periodic = mask](Natural x) {
      return !std::binary_search(minus.begin(), minus.end(), x) &&
             (periodic[x % modulus] || std::binary_search(plus.begin(), plus.end(), x));
    };
    std::vector<Natural> candidates = plus;
    candidates.insert(candidates.end(), minus.begin(), minus.end());
    return from_mask(std::move(mask), candidates, member);
  }

  Natural modulus() const noexcept { return mask_.size(); }
  const std::vector<Natural>& plus() const noexcept { return plus_; }
  const std::vector<Natural>& minus() const noexcept { return minus_; }

  std::vector<Natural> residues() const {
    std::vector<Natural> out;
    for (Natural r = 0; r < modulus(); ++r) {
      if (mask_[r]) out.push_back(r);
    }
    return out;
  }

  std::size_t residue_count() const {
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
  }

  bool in_residue_class(Natural x) const noexcept { return mask_[x % modulus()]; }

  bool contains(Natural x) const noexcept {
    if (mask_[x % modulus()]) return !std::binary_search(minus_.begin(), minus_.end(), x);
    return std::binary_search(plus_.begin(), plus_.end(), x);
  }

  /// Largest explicit exception, or nullopt when there are none.
  std::optional<Natural> max_exception() const {
    std::optional<Natural> out;
    if (!plus_.empty()) out = plus_.back();
    if (!minus_.empty()) out = std::max(out.value_or(0), minus_.back());
    return out;
  }

  /// Same set, re-expressed at a multiple of the current modulus. The result
  /// satisfies the representation invariants but is not canonical.
  SymbolicSet lifted(Natural modulus) const {
    check_modulus(modulus);
    if (modulus % this->modulus() != 0) {
      throw Error("lift target " + std::to_string(modulus) + " is not a multiple of " +
                  std::to_string(this->modulus()));
    }
    SymbolicSet out;
    out.mask_.assign(modulus, false);
    for (Natural r = 0; r < modulus; ++r) out.mask_[r] = mask_[r % this->modulus()];
    out.plus_ = plus_;
    out.minus_ = minus_;
    return out;
  }

  /// Semantic equality; canonical forms are unique, so this compares them.
  friend bool operator==(const SymbolicSet& a, const SymbolicSet& b) {
    const SymbolicSet& ca = a.is_canonical() ? a : a.canonical_copy();
    const SymbolicSet& cb = b.is_canonical() ? b : b.canonical_copy();
    return ca.mask_ == cb.mask_ && ca.plus_ == cb.plus_ && ca.minus_ == cb.minus_;
  }

  template <class Pred>
  static SymbolicSet combine(const SymbolicSet& a, const SymbolicSet& b, Pred op) {
    const Natural m = lcm_checked(a.modulus(), b.modulus());
    std::vector<bool> mask(m, false);
    for (Natural r = 0; r < m; ++r) {
      mask[r] = op(a.mask_[r % a.modulus()], b.mask_[r % b.modulus()]);
    }
    std::vector<Natural> candidates;
    candidates.reserve(a.plus_.size() + a.minus_.size() + b.plus_.size() + b.minus_.size());
    for (const auto* v : {&a.plus_, &a.minus_, &b.plus_, &b.minus_}) {
      candidates.insert(candidates.end(), v->begin(), v->end());
    }
    return from_mask(std::move(mask), candidates,
                     [&](Natural x) { return op(a.contains(x), b.contains(x)); });
  }

  SymbolicSet complemented() const {
    SymbolicSet out;
    out.mask_ = mask_;
    out.mask_.flip();
    out.plus_ = minus_;
    out.minus_ = plus_;
    return out;
  }

  static Natural lcm_checked(Natural a, Natural b) {
    const Natural m = std::lcm(a, b);
    check_modulus(m);
    return m;
  }

 private:
  static void check_modulus(Natural m) {
    if (m == 0) throw Error("modulus must be positive");
    if (m > kMaxModulus) {
      throw Error("modulus " + std::to_string(m) + " exceeds the supported bound " +
                  std::to_string(kMaxModulus));
    }
  }

  // Residue mask plus the exceptions among `candidates` w.r.t. `member`, then
  // reduced to the smallest period of the mask.
  template <class Member>
  static SymbolicSet from_mask(std::vector<bool> mask, const std::vector<Natural>& candidates,
                               Member member) {
    SymbolicSet out;
    out.mask_ = std::move(mask);
    for (Natural x : candidates) {
      const bool in = member(x);
      const bool periodic = out.mask_[x % out.modulus()];
      if (in && !periodic) out.plus_.push_back(x);
      if (!in && periodic) out.minus_.push_back(x);
    }
    for (auto* v : {&out.plus_, &out.minus_}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    out.reduce_modulus();
    return out;
  }

  // The residue class as a set is unchanged by re-expressing it at a smaller
  // period, so the exceptions stay valid.
  void reduce_modulus() {
    const Natural m = modulus();
    for (Natural d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      bool periodic = true;
      for (Natural r = d; r < m && periodic; ++r) periodic = mask_[r] == mask_[r % d];
      if (periodic) {
        mask_.resize(d);
        return;
      }
    }
  }

  bool is_canonical() const {
    const Natural m = modulus();
    for (Natural d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      bool periodic = true;
      for (Natural r = d; r < m && periodic; ++r) periodic = mask_[r] == mask_[r % d];
      if (periodic) return false;
    }
    return true;
  }

  SymbolicSet canonical_copy() const {
    SymbolicSet out = *this;
    out.reduce_modulus();
    return out;
  }

  std::vector<bool> mask_;
  std::vector<Natural> plus_;
  std::vector<Natural> minus_;
};

// ---------------------------------------------------------------------------
// Boolean algebra

inline bool contains(const SymbolicSet& s, Natural x) { return s.contains(x); }

/// Both sets re-expressed at the common modulus lcm(m_a, m_b).
inline std::pair<SymbolicSet, SymbolicSet> normalize_pair(const SymbolicSet& a,
                                                          const SymbolicSet& b) {
  const Natural m = SymbolicSet::lcm_checked(a.modulus(), b.modulus());
  return {a.lifted(m), b.lifted(m)};
}

inline SymbolicSet set_union(const SymbolicSet& a, const SymbolicSet& b) {
  return SymbolicSet::combine(a, b, [](bool x, bool y) { return x || y; });
}

inline SymbolicSet intersect(const SymbolicSet& a, const SymbolicSet& b) {
  return SymbolicSet::combine(a, b, [](bool x, bool y) { return x && y; });
}

inline SymbolicSet difference(const SymbolicSet& a, const SymbolicSet& b) {
  return SymbolicSet::combine(a, b, [](bool x, bool y) { return x && !y; });
}

inline SymbolicSet symmetric_difference(const SymbolicSet& a, const SymbolicSet& b) {
  return SymbolicSet::combine(a, b, [](bool x, bool y) { return x != y; });
}

inline SymbolicSet complement(const SymbolicSet& s) { return s.complemented(); }

// ---------------------------------------------------------------------------
// Size and order queries

inline bool is_empty(const SymbolicSet& s) {
  return s.residue_count() == 0 && s.plus().empty();
}

inline Cardinality cardinality(const SymbolicSet& s) {
  if (s.residue_count() == 0) return Cardinality::finite(s.plus().size());
  return Cardinality::infinite();
}

inline bool is_finite(const SymbolicSet& s) { return s.residue_count() == 0; }

inline bool is_subset(const SymbolicSet& a, const SymbolicSet& b) {
  return is_empty(difference(a, b));
}

/// Number of members strictly below x.
inline std::size_t count_below(const SymbolicSet& s, Natural x) {
  const Natural m = s.modulus();
  std::size_t count = 0;
  for (Natural r : s.residues()) {
    if (r < x) count += static_cast<std::size_t>((x - 1 - r) / m + 1);
  }
  auto below = [x](const std::vector<Natural>& v) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  return count + below(s.plus()) - below(s.minus());
}

/// The k-th smallest member (k = 0 is the minimum), or nullopt past the end.
inline std::optional<Natural> element_at(const SymbolicSet& s, std::size_t k) {
  const std::size_t per_period = s.residue_count();
  if (per_period == 0) {
    if (k >= s.plus().size()) return std::nullopt;
    return s.plus()[k];
  }
  const Natural m = s.modulus();
  const Natural periods = (k + 1 + s.minus().size()) / per_period + 2;
  Natural lo = 0;
  Natural hi = periods * m + s.max_exception().value_or(0) + 1;
  // Smallest x with count_below(x + 1) > k.
  while (lo < hi) {
    const Natural mid = lo + (hi - lo) / 2;
    if (count_below(s, mid + 1) > k) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

inline std::optional<Natural> min_element(const SymbolicSet& s) { return element_at(s, 0); }

/// Least member that is >= from.
inline std::optional<Natural> next_element(const SymbolicSet& s, Natural from) {
  return element_at(s, count_below(s, from));
}

/// Ascending list of all members below horizon.
inline std::vector<Natural> enumerate(const SymbolicSet& s, Natural horizon) {
  std::vector<Natural> out;
  for (Natural x = 0; x < horizon; ++x) {
    if (s.contains(x)) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Literal syntax:  mod <m> { r1, r2 } + { a, ... } - { b, ... }

namespace detail {

inline void print_list(std::ostream& os, const std::vector<Natural>& v) {
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << '}';
}

class LiteralScanner {
 public:
  explicit LiteralScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    advance();
  }

  void expect_word(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
    for (std::size_t i = 0; i < word.size(); ++i) advance();
  }

  Natural number() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected a natural number");
    }
    Natural value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const Natural digit = static_cast<Natural>(text_[pos_] - '0');
      if (value > (~Natural{0} - digit) / 10) fail("number out of range");
      value = value * 10 + digit;
      advance();
    }
    return value;
  }

  std::vector<Natural> list() {
    expect('{');
    std::vector<Natural> out;
    if (peek('}')) {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(number());
      if (peek(',')) {
        advance();
        continue;
      }
      expect('}');
      return out;
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("symbolic set literal: " + what, line_, column_);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

/// Canonical printer; empty exception lists are omitted.
inline std::string to_string(const SymbolicSet& s) {
  std::ostringstream os;
  os << "mod " << s.modulus() << ' ';
  detail::print_list(os, s.residues());
  if (!s.plus().empty()) {
    os << " + ";
    detail::print_list(os, s.plus());
  }
  if (!s.minus().empty()) {
    os << " - ";
    detail::print_list(os, s.minus());
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const SymbolicSet& s) {
  return os << to_string(s);
}

inline SymbolicSet parse_symbolic_set(std::string_view text) {
  detail::LiteralScanner in(text);
  in.expect_word("mod");
  const Natural modulus = in.number();
  if (modulus == 0) in.fail("modulus must be positive");
  if (modulus > kMaxModulus) in.fail("modulus too large");
  std::vector<Natural> residues = in.list();
  for (Natural r : residues) {
    if (r >= modulus) in.fail("residue " + std::to_string(r) + " not below modulus");
  }
  std::vector<Natural> plus;
  std::vector<Natural> minus;
  if (in.peek('+')) {
    in.advance();
    plus = in.list();
  }
  if (in.peek('-')) {
    in.advance();
    minus = in.list();
  }
  if (!in.at_end()) in.fail("trailing characters");
  return SymbolicSet::make(modulus, std::move(residues), std::move(plus), std::move(minus));
}

}  // namespace crosslimit
