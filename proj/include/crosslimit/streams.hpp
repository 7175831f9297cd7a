#pragma once

// Presentations: text, informant and contrastive streams, finite prefixes,
// corruption wrappers and validity checks. Positions are 1-based, and every
// stream computes item(t) directly from t.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crosslimit/classes.hpp"

namespace crosslimit {

/// An unordered two-element subset of X, stored with lo < hi.
struct Pair {
  Natural lo = 0;
  Natural hi = 1;

  static Pair of(Natural x, Natural y) {
    if (x == y) throw Error("a pair needs two distinct elements, got " + std::to_string(x) + " twice");
    return x < y ? Pair{x, y} : Pair{y, x};
  }

  bool has(Natural x) const noexcept { return x == lo || x == hi; }

  auto operator<=>(const Pair&) const = default;
};

inline std::string to_string(const Pair& p) {
  return "{" + std::to_string(p.lo) + "," + std::to_string(p.hi) + "}";
}

/// True iff exactly one endpoint lies in the support.
inline bool crosses(const SymbolicSet& support, const Pair& p) {
  return support.contains(p.lo) != support.contains(p.hi);
}

struct Labeled {
  Natural x = 0;
  bool label = false;

  auto operator<=>(const Labeled&) const = default;
};

using Item = std::variant<Natural, Labeled, Pair>;

enum class StreamKind { Text, Informant, Contrastive };

inline const char* to_string(StreamKind kind) {
  switch (kind) {
    case StreamKind::Text:
      return "text";
    case StreamKind::Informant:
      return "informant";
    case StreamKind::Contrastive:
      return "contrastive";
  }
  return "?";
}

inline bool item_matches(StreamKind kind, const Item& item) {
  return static_cast<std::size_t>(kind) == item.index();
}

inline std::string to_string(const Item& item) {
  if (auto x = std::get_if<Natural>(&item)) return std::to_string(*x);
  if (auto l = std::get_if<Labeled>(&item)) return std::to_string(l->x) + "," + (l->label ? "1" : "0");
  return to_string(std::get<Pair>(item));
}

struct Prefix {
  StreamKind kind = StreamKind::Contrastive;
  std::vector<Item> items;

  std::size_t size() const noexcept { return items.size(); }

  Prefix first(std::size_t n) const {
    Prefix out{kind, {}};
    out.items.assign(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(std::min(n, items.size())));
    return out;
  }

  std::vector<Pair> pairs() const {
    std::vector<Pair> out;
    for (const Item& item : items) out.push_back(std::get<Pair>(item));
    return out;
  }

  std::vector<Natural> naturals() const {
    std::vector<Natural> out;
    for (const Item& item : items) out.push_back(std::get<Natural>(item));
    return out;
  }

  std::vector<Labeled> labeled() const {
    std::vector<Labeled> out;
    for (const Item& item : items) out.push_back(std::get<Labeled>(item));
    return out;
  }

  static Prefix contrastive(const std::vector<Pair>& pairs) {
    Prefix out{StreamKind::Contrastive, {}};
    for (const Pair& p : pairs) out.items.emplace_back(p);
    return out;
  }

  static Prefix text(const std::vector<Natural>& xs) {
    Prefix out{StreamKind::Text, {}};
    for (Natural x : xs) out.items.emplace_back(x);
    return out;
  }
};

/// Distinct elements seen so far: text terms, informant points or pair endpoints.
inline std::set<Natural> seen_elements(const Prefix& prefix) {
  std::set<Natural> seen;
  for (const Item& item : prefix.items) {
    if (auto x = std::get_if<Natural>(&item)) seen.insert(*x);
    if (auto l = std::get_if<Labeled>(&item)) seen.insert(l->x);
    if (auto p = std::get_if<Pair>(&item)) seen.insert({p->lo, p->hi});
  }
  return seen;
}

/// The set E_n(P) of distinct observed pairs.
inline std::set<Pair> distinct_edges(const Prefix& prefix) {
  std::set<Pair> out;
  for (const Item& item : prefix.items) {
    if (auto p = std::get_if<Pair>(&item)) out.insert(*p);
  }
  return out;
}

class Stream {
 public:
  using Generator = std::function<Item(std::size_t)>;

  Stream(StreamKind kind, Generator generator, std::string provenance)
      : kind_(kind),
        generator_(std::make_shared<Generator>(std::move(generator))),
        provenance_(std::move(provenance)) {}

  StreamKind kind() const noexcept { return kind_; }
  const std::string& provenance() const noexcept { return provenance_; }

  Item item(std::size_t t) const {
    if (t == 0) throw Error("stream positions start at 1");
    return (*generator_)(t);
  }

  Prefix take(std::size_t n) const {
    Prefix out{kind_, {}};
    out.items.reserve(n);
    for (std::size_t t = 1; t <= n; ++t) out.items.push_back(item(t));
    return out;
  }

 private:
  StreamKind kind_;
  std::shared_ptr<const Generator> generator_;
  std::string provenance_;
};

// ---------------------------------------------------------------------------
// Canonical presentations

namespace detail {

/// Position t (1-based) of the ascending enumeration of a nonempty set, cycling if finite.
inline Natural cyclic_element(const SymbolicSet& s, std::size_t t) {
  const Cardinality card = cardinality(s);
  std::size_t k = t - 1;
  if (card.is_finite()) {
    if (card.count() == 0) throw Error("cannot enumerate the empty set");
    k %= card.count();
  }
  return *element_at(s, k);
}

inline void require_proper(const Hypothesis& h) {
  if (!is_proper_nontrivial(h)) throw Error("hypothesis " + h.id + " is not proper nontrivial");
}

}  // namespace detail

inline Stream canonical_contrastive(const Hypothesis& h) {
  detail::require_proper(h);
  const Natural z = *min_element(complement(h.support));
  const SymbolicSet support = h.support;
  return Stream(
      StreamKind::Contrastive,
      [support, z](std::size_t t) -> Item { return Pair::of(detail::cyclic_element(support, t), z); },
      "canonical(" + h.id + ")");
}

inline Stream canonical_text(const Hypothesis& h) {
  if (is_empty(h.support)) throw Error("text presentation of empty support " + h.id);
  const SymbolicSet support = h.support;
  return Stream(
      StreamKind::Text, [support](std::size_t t) -> Item { return detail::cyclic_element(support, t); },
      "canonical-text(" + h.id + ")");
}

inline Stream canonical_informant(const Hypothesis& h) {
  const SymbolicSet support = h.support;
  return Stream(
      StreamKind::Informant,
      [support](std::size_t t) -> Item {
        return Labeled{t - 1, support.contains(t - 1)};
      },
      "canonical-informant(" + h.id + ")");
}

/// The listed items first, then the tail stream from its start.
inline Stream scripted(const Prefix& head, const Stream& tail) {
  if (head.kind != tail.kind()) throw Error("scripted head and tail differ in kind");
  for (const Item& item : head.items) {
    if (!item_matches(head.kind, item)) throw Error("scripted item " + to_string(item) + " has the wrong kind");
  }
  auto items = std::make_shared<const std::vector<Item>>(head.items);
  return Stream(
      head.kind,
      [items, tail](std::size_t t) -> Item {
        if (t <= items->size()) return (*items)[t - 1];
        return tail.item(t - items->size());
      },
      "scripted(" + std::to_string(head.items.size()) + " items, " + tail.provenance() + ")");
}

// ---------------------------------------------------------------------------
// Corruption

struct Injection {
  std::size_t index = 1;
  Item item;
};

/// Places each scripted item at its index; honest items keep their order and
/// resume at the next free index, so coverage is unaffected.
inline Stream corrupt(const Stream& inner, std::vector<Injection> injections) {
  std::sort(injections.begin(), injections.end(),
            [](const Injection& a, const Injection& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < injections.size(); ++i) {
    if (injections[i].index == 0) throw Error("injection positions start at 1");
    if (i > 0 && injections[i].index == injections[i - 1].index) {
      throw Error("duplicate injection index " + std::to_string(injections[i].index));
    }
    if (!item_matches(inner.kind(), injections[i].item)) {
      throw Error("injected item " + to_string(injections[i].item) + " does not match the stream kind");
    }
  }
  std::string provenance = "corrupted(" + inner.provenance();
  for (const Injection& inj : injections) {
    provenance += ", " + std::to_string(inj.index) + ":" + to_string(inj.item);
  }
  provenance += ")";
  auto script = std::make_shared<const std::vector<Injection>>(std::move(injections));
  return Stream(
      inner.kind(),
      [inner, script](std::size_t t) -> Item {
        std::size_t before = 0;
        for (const Injection& inj : *script) {
          if (inj.index == t) return inj.item;
          if (inj.index < t) ++before;
        }
        return inner.item(t - before);
      },
      std::move(provenance));
}

// ---------------------------------------------------------------------------
// Validity

struct ValidityReport {
  std::vector<std::size_t> xor_violations;  // 1-based positions of invalid items
  SymbolicSet coverage_deficit;              // required elements below the horizon not yet seen
  Natural horizon = 0;

  bool budget_ok(std::size_t k) const noexcept { return xor_violations.size() <= k; }
  bool clean() const noexcept { return xor_violations.empty(); }
};

/// Contrastive: pairs failing XOR; text: terms outside the support;
/// informant: wrongly labeled points.
inline ValidityReport validate(const Prefix& prefix, const Hypothesis& h, Natural horizon) {
  ValidityReport report;
  report.horizon = horizon;
  std::vector<Natural> seen;
  for (std::size_t i = 0; i < prefix.items.size(); ++i) {
    const Item& item = prefix.items[i];
    if (!item_matches(prefix.kind, item)) throw Error("prefix item " + to_string(item) + " has the wrong kind");
    bool ok = true;
    if (auto x = std::get_if<Natural>(&item)) {
      ok = h.support.contains(*x);
      seen.push_back(*x);
    } else if (auto l = std::get_if<Labeled>(&item)) {
      ok = h.support.contains(l->x) == l->label;
      seen.push_back(l->x);
    } else {
      const Pair& p = std::get<Pair>(item);
      ok = crosses(h.support, p);
      seen.push_back(p.lo);
      seen.push_back(p.hi);
    }
    if (!ok) report.xor_violations.push_back(i + 1);
  }
  const SymbolicSet required = prefix.kind == StreamKind::Informant ? SymbolicSet::all() : h.support;
  std::vector<Natural> window;
  for (Natural x = 0; x < horizon; ++x) window.push_back(x);
  report.coverage_deficit =
      difference(intersect(required, SymbolicSet::finite(std::move(window))), SymbolicSet::finite(seen));
  return report;
}

/// Pairs every seen term with the least element not yet seen.
inline Prefix synthetic_contrastive_from_text(const Prefix& text) {
  if (text.kind != StreamKind::Text) throw Error("synthetic pairs need a text prefix");
  if (text.items.empty()) throw Error("synthetic pairs need a nonempty text prefix");
  const std::vector<Natural> xs = text.naturals();
  const std::set<Natural> seen(xs.begin(), xs.end());
  Natural z = 0;
  while (seen.count(z)) ++z;
  Prefix out{StreamKind::Contrastive, {}};
  for (Natural x : xs) out.items.emplace_back(Pair::of(x, z));
  return out;
}

// ---------------------------------------------------------------------------
// Reproducible random presentations

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t t, std::uint64_t salt) {
  return splitmix64(splitmix64(seed ^ (salt * 0x9e3779b97f4a7c15ULL)) ^ t);
}

/// A pseudo-random member among the first `window` members of s (cycling if s is smaller).
inline Natural random_member(const SymbolicSet& s, std::uint64_t r, std::size_t window) {
  const Cardinality card = cardinality(s);
  std::size_t range = window;
  if (card.is_finite()) range = std::min(range, card.count());
  return *element_at(s, r % range);
}

}  // namespace detail

/// A valid contrastive presentation for h: odd positions cover the support in
/// ascending order with random partners, even positions are random crossing pairs.
inline Stream random_contrastive(const Hypothesis& h, std::uint64_t seed) {
  detail::require_proper(h);
  const SymbolicSet positives = h.support;
  const SymbolicSet negatives = complement(h.support);
  return Stream(
      StreamKind::Contrastive,
      [positives, negatives, seed](std::size_t t) -> Item {
        const std::size_t window = 2 * t + 8;
        const Natural y = detail::random_member(negatives, detail::mix(seed, t, 1), window);
        if (t % 2 == 1) return Pair::of(detail::cyclic_element(positives, (t + 1) / 2), y);
        return Pair::of(detail::random_member(positives, detail::mix(seed, t, 2), window), y);
      },
      "random(" + h.id + ", seed " + std::to_string(seed) + ")");
}

// ---------------------------------------------------------------------------
// Serialization: one item per line, `x`, `x,label` or `{x,y}`.

inline std::string serialize(const Prefix& prefix) {
  std::string out;
  for (const Item& item : prefix.items) out += to_string(item) + "\n";
  return out;
}

inline Prefix parse_prefix(const std::string& text, StreamKind kind) {
  Prefix out{kind, {}};
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string compact;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact.empty()) continue;
    auto fail = [&](const std::string& what) { throw ParseError("prefix: " + what, line_no, 1); };
    auto number = [&](const std::string& s) -> Natural {
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        fail("expected a natural number, got '" + s + "'");
      }
      try {
        return std::stoull(s);
      } catch (...) {
        fail("number out of range");
      }
      return 0;
    };
    switch (kind) {
      case StreamKind::Text:
        out.items.emplace_back(number(compact));
        break;
      case StreamKind::Informant: {
        const auto comma = compact.find(',');
        if (comma == std::string::npos) fail("expected x,label");
        const std::string label = compact.substr(comma + 1);
        if (label != "0" && label != "1") fail("label must be 0 or 1");
        out.items.emplace_back(Labeled{number(compact.substr(0, comma)), label == "1"});
        break;
      }
      case StreamKind::Contrastive: {
        if (compact.size() < 2 || compact.front() != '{' || compact.back() != '}') fail("expected {x,y}");
        const std::string body = compact.substr(1, compact.size() - 2);
        const auto comma = body.find(',');
        if (comma == std::string::npos) fail("expected {x,y}");
        const Natural x = number(body.substr(0, comma));
        const Natural y = number(body.substr(comma + 1));
        if (x == y) fail("pair endpoints must differ");
        out.items.emplace_back(Pair::of(x, y));
        break;
      }
    }
  }
  return out;
}

/// Parses "3:{0,4};7:{1,2}" style injection scripts.
inline std::vector<Injection> parse_injections(const std::string& text, StreamKind kind) {
  std::vector<Injection> out;
  std::string entry;
  std::istringstream in(text);
  while (std::getline(in, entry, ';')) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos) throw Error("injection '" + entry + "' needs index:item");
    std::size_t index = 0;
    try {
      index = std::stoull(entry.substr(0, colon));
    } catch (...) {
      throw Error("bad injection index in '" + entry + "'");
    }
    Prefix item = parse_prefix(entry.substr(colon + 1), kind);
    if (item.items.size() != 1) throw Error("injection '" + entry + "' needs exactly one item");
    out.push_back({index, item.items.front()});
  }
  return out;
}

}  // namespace crosslimit
