#pragma once

// Hypotheses, countable hypothesis classes, the standard witness classes and
// the JSON class-spec format.
//
// A class is an ordered list of explicit members optionally followed by an
// infinite indexed tail. Tail member j has support base ∖ chunk_j (Remove) or
// base ∪ chunk_j (Add), where chunk_j is the j-th run of `chunk` consecutive
// elements of `pool`. This covers every infinite family the library needs
// while keeping version spaces over the tail finitely describable.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crosslimit/space.hpp"

namespace crosslimit {

struct Hypothesis {
  std::string id;
  SymbolicSet support;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

inline bool is_proper_nontrivial(const Hypothesis& h) {
  return !is_empty(h.support) && !is_empty(complement(h.support));
}

enum class TailMode { Remove, Add };

struct IndexedFamily {
  std::string id_prefix = "h_";
  SymbolicSet base;
  SymbolicSet pool;
  std::size_t chunk = 1;
  TailMode mode = TailMode::Remove;
  std::size_t first = 0;      // first chunk index that is a member
  std::size_t id_offset = 0;  // member j is named id_prefix + (j + id_offset)

  SymbolicSet chunk_set(std::size_t j) const {
    std::vector<Natural> elements;
    elements.reserve(chunk);
    for (std::size_t i = 0; i < chunk; ++i) {
      auto x = element_at(pool, j * chunk + i);
      if (!x) throw Error("indexed family pool is exhausted");
      elements.push_back(*x);
    }
    return SymbolicSet::finite(std::move(elements));
  }

  /// Union of chunk_0 .. chunk_{count-1}.
  SymbolicSet chunk_prefix(std::size_t count) const {
    if (count == 0) return SymbolicSet::empty();
    auto last = element_at(pool, count * chunk - 1);
    if (!last) throw Error("indexed family pool is exhausted");
    return intersect(pool, SymbolicSet::finite(enumerate(pool, *last + 1)));
  }

  /// Chunk index of a pool element.
  std::size_t chunk_of(Natural x) const { return count_below(pool, x) / chunk; }

  SymbolicSet support(std::size_t j) const {
    return mode == TailMode::Remove ? difference(base, chunk_set(j)) : set_union(base, chunk_set(j));
  }

  bool contains(std::size_t j, Natural x) const {
    const bool in_chunk = pool.contains(x) && chunk_of(x) == j;
    return mode == TailMode::Remove ? base.contains(x) && !in_chunk : base.contains(x) || in_chunk;
  }

  std::string id(std::size_t j) const { return id_prefix + std::to_string(j + id_offset); }

  Hypothesis member(std::size_t j) const { return {id(j), support(j)}; }

  /// Chunk index named by an id, if it is one of this family's members.
  std::optional<std::size_t> index_of_id(std::string_view id) const {
    if (id.substr(0, id_prefix.size()) != id_prefix) return std::nullopt;
    const std::string_view digits = id.substr(id_prefix.size());
    if (digits.empty() || digits.size() > 18) return std::nullopt;
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
    std::size_t n = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') return std::nullopt;
      n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    if (n < id_offset || n - id_offset < first) return std::nullopt;
    return n - id_offset;
  }

  void check() const {
    if (chunk == 0) throw Error("indexed family chunk size must be positive");
    if (is_finite(pool)) throw Error("indexed family pool must be infinite");
    if (mode == TailMode::Remove && !is_subset(pool, base)) {
      throw Error("removal family pool must lie inside the base");
    }
    if (mode == TailMode::Add && !is_empty(intersect(pool, base))) {
      throw Error("addition family pool must be disjoint from the base");
    }
  }
};

class HypothesisClass {
 public:
  HypothesisClass() = default;

  explicit HypothesisClass(std::vector<Hypothesis> members,
                           std::optional<IndexedFamily> tail = std::nullopt, bool uus_claimed = false,
                           std::string name = {})
      : members_(std::move(members)),
        tail_(std::move(tail)),
        uus_claimed_(uus_claimed),
        name_(std::move(name)) {
    if (tail_) tail_->check();
    for (std::size_t i = 0; i < members_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (members_[i].id == members_[j].id) throw Error("duplicate hypothesis id " + members_[i].id);
      }
      if (tail_ && tail_->index_of_id(members_[i].id)) {
        throw Error("hypothesis id " + members_[i].id + " collides with the indexed family");
      }
    }
    if (members_.empty() && !tail_) throw Error("a hypothesis class needs at least one member");
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<Hypothesis>& explicit_members() const noexcept { return members_; }
  const std::optional<IndexedFamily>& tail() const noexcept { return tail_; }
  bool uus_claimed() const noexcept { return uus_claimed_; }
  bool is_finite_explicit() const noexcept { return !tail_.has_value(); }
  std::size_t explicit_size() const noexcept { return members_.size(); }

  /// Finite size, or nullopt for classes with an infinite tail.
  std::optional<std::size_t> size() const {
    if (tail_) return std::nullopt;
    return members_.size();
  }

  /// Member at a position of the fixed enumeration h_0, h_1, ...
  Hypothesis member(std::size_t index) const {
    if (index < members_.size()) return members_[index];
    if (!tail_) throw Error("member index " + std::to_string(index) + " out of range");
    return tail_->member(tail_index(index));
  }

  bool member_contains(std::size_t index, Natural x) const {
    if (index < members_.size()) return members_[index].support.contains(x);
    if (!tail_) throw Error("member index " + std::to_string(index) + " out of range");
    return tail_->contains(tail_index(index), x);
  }

  std::size_t tail_index(std::size_t index) const { return tail_->first + (index - members_.size()); }
  std::size_t position_of_tail(std::size_t j) const { return members_.size() + (j - tail_->first); }

  std::optional<std::size_t> index_of(std::string_view id) const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i].id == id) return i;
    }
    if (tail_) {
      if (auto j = tail_->index_of_id(id)) return position_of_tail(*j);
    }
    return std::nullopt;
  }

  Hypothesis find(std::string_view id) const {
    auto i = index_of(id);
    if (!i) throw Error("no hypothesis with id " + std::string(id));
    return member(*i);
  }

  /// The explicit part only; finite classes are returned unchanged.
  HypothesisClass truncated() const {
    return HypothesisClass(members_, std::nullopt, uus_claimed_, name_);
  }

  /// Moves the first `count` tail members into the explicit list.
  HypothesisClass expanded(std::size_t count) const {
    if (!tail_) return *this;
    std::vector<Hypothesis> members = members_;
    IndexedFamily tail = *tail_;
    for (std::size_t i = 0; i < count; ++i) members.push_back(tail.member(tail.first + i));
    tail.first += count;
    return HypothesisClass(std::move(members), std::move(tail), uus_claimed_, name_);
  }

  /// Finite classes as they are; otherwise the explicit part plus `count` tail members.
  std::vector<Hypothesis> listing(std::size_t count) const {
    std::vector<Hypothesis> out = members_;
    if (tail_) {
      for (std::size_t i = 0; i < count; ++i) out.push_back(tail_->member(tail_->first + i));
    }
    return out;
  }

  /// All members, for algorithms that enumerate the class.
  const std::vector<Hypothesis>& require_finite(std::string_view who) const {
    if (tail_) throw Error(std::string(who) + " requires a finite explicit class");
    return members_;
  }

 private:
  std::vector<Hypothesis> members_;
  std::optional<IndexedFamily> tail_;
  bool uus_claimed_ = false;
  std::string name_;
};

/// True iff every member (tail included) has infinite support.
inline bool check_uus(const HypothesisClass& H) {
  for (const Hypothesis& h : H.explicit_members()) {
    if (is_finite(h.support)) return false;
  }
  if (const auto& tail = H.tail()) return !is_finite(tail->base);
  return true;
}

// ---------------------------------------------------------------------------
// Witness classes

enum class WitnessKind { DisjointSupport, Punctured, Augmented, CoSingleton, Block, SixCell };

struct WitnessFamily {
  WitnessKind kind = WitnessKind::DisjointSupport;
  std::size_t truncation = 0;  // M
  std::size_t budget = 0;      // k, Block only
};

inline HypothesisClass build_witness(const WitnessFamily& family) {
  const std::size_t M = family.truncation;
  auto need_truncation = [&] {
    if (M < 2) throw Error("truncation M must be at least 2");
  };
  switch (family.kind) {
    case WitnessKind::DisjointSupport:
      return HypothesisClass({{"h_A", SymbolicSet::residue_class(2, {0})},
                              {"h_B", SymbolicSet::residue_class(2, {1})}},
                             std::nullopt, true, "disjoint");
    case WitnessKind::Punctured: {
      need_truncation();
      const SymbolicSet A = SymbolicSet::residue_class(2, {0});
      std::vector<Hypothesis> members{{"h_inf", A}};
      for (std::size_t m = 1; m <= M; ++m) {
        members.push_back({"h_" + std::to_string(m), difference(A, SymbolicSet::finite({2 * (m - 1)}))});
      }
      IndexedFamily tail{"h_", A, A, 1, TailMode::Remove, M, 1};
      return HypothesisClass(std::move(members), std::move(tail), true,
                             "punctured:" + std::to_string(M));
    }
    case WitnessKind::Augmented: {
      need_truncation();
      const SymbolicSet A = SymbolicSet::residue_class(3, {0});
      std::vector<Hypothesis> members{{"h_inf", A}};
      for (std::size_t m = 1; m <= M; ++m) {
        members.push_back({"h_" + std::to_string(m), set_union(A, SymbolicSet::finite({3 * (m - 1) + 1}))});
      }
      IndexedFamily tail{"h_", A, SymbolicSet::residue_class(3, {1}), 1, TailMode::Add, M, 1};
      return HypothesisClass(std::move(members), std::move(tail), true,
                             "augmented:" + std::to_string(M));
    }
    case WitnessKind::CoSingleton: {
      IndexedFamily tail{"h_", SymbolicSet::all(), SymbolicSet::all(), 1, TailMode::Remove, 0, 0};
      return HypothesisClass({}, std::move(tail), true, "co-singleton");
    }
    case WitnessKind::Block: {
      need_truncation();
      if (family.budget == 0) throw Error("block witness needs a corruption budget k >= 1");
      IndexedFamily tail{"h_", SymbolicSet::residue_class(3, {0}), SymbolicSet::residue_class(3, {1}),
                         family.budget + 1, TailMode::Add, 0, 0};
      std::vector<Hypothesis> members;
      for (std::size_t i = 0; i < M; ++i) members.push_back(tail.member(i));
      tail.first = M;
      return HypothesisClass(std::move(members), std::move(tail), true,
                             "block:" + std::to_string(family.budget) + ":" + std::to_string(M));
    }
    case WitnessKind::SixCell:
      // Residue r mod 6 carries pattern 100, 010, 001, 110, 101, 011 for r = 0..5.
      return HypothesisClass({{"h_1", SymbolicSet::residue_class(6, {0, 3, 4})},
                              {"h_2", SymbolicSet::residue_class(6, {1, 3, 5})},
                              {"h_3", SymbolicSet::residue_class(6, {2, 4, 5})}},
                             std::nullopt, true, "six-cell");
  }
  throw Error("unknown witness family");
}

/// Parses `disjoint`, `punctured:M`, `augmented:M`, `block:k:M`, `co-singleton`, `six-cell`.
inline WitnessFamily parse_witness(std::string_view text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in{std::string(text)};
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.empty()) throw Error("empty witness name");
  auto number = [&](std::size_t i, std::size_t fallback) -> std::size_t {
    if (i >= parts.size()) return fallback;
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(parts[i], &used);
      if (used != parts[i].size()) throw Error("");
      return static_cast<std::size_t>(v);
    } catch (...) {
      throw Error("bad witness parameter '" + parts[i] + "'");
    }
  };
  auto arity = [&](std::size_t most) {
    if (parts.size() > most + 1) throw Error("too many parameters for witness " + parts[0]);
  };
  const std::string& name = parts[0];
  if (name == "disjoint") return arity(0), WitnessFamily{WitnessKind::DisjointSupport};
  if (name == "co-singleton") return arity(0), WitnessFamily{WitnessKind::CoSingleton};
  if (name == "six-cell") return arity(0), WitnessFamily{WitnessKind::SixCell};
  if (name == "punctured") return arity(1), WitnessFamily{WitnessKind::Punctured, number(1, 8)};
  if (name == "augmented") return arity(1), WitnessFamily{WitnessKind::Augmented, number(1, 8)};
  if (name == "block") return arity(2), WitnessFamily{WitnessKind::Block, number(2, 4), number(1, 1)};
  throw Error("unknown witness '" + name + "'");
}

// ---------------------------------------------------------------------------
// Class-spec files

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

inline HypothesisClass class_from_json(std::string_view text, std::string name = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // The reported byte is one past the offending character.
    auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("class spec is not valid JSON", line, column);
  }
  try {
    if (!doc.is_object()) throw Error("class spec must be a JSON object");
    const Natural modulus = doc.at("space_modulus").get<Natural>();
    if (modulus == 0) throw Error("space_modulus must be positive");
    const bool uus = doc.value("uus", false);
    std::vector<Hypothesis> members;
    for (const auto& entry : doc.at("hypotheses")) {
      const std::string id = entry.at("id").get<std::string>();
      SymbolicSet support;
      try {
        support = parse_symbolic_set(entry.at("support").get<std::string>());
      } catch (const ParseError& e) {
        throw Error("hypothesis " + id + ": " + e.what());
      }
      Hypothesis h{id, support};
      if (modulus % support.modulus() != 0) {
        throw Error("hypothesis " + id + ": modulus " + std::to_string(support.modulus()) +
                    " does not divide space_modulus");
      }
      if (!is_proper_nontrivial(h)) throw Error("hypothesis " + id + ": support must be proper and nonempty");
      if (uus && is_finite(support)) throw Error("hypothesis " + id + ": finite support in a uus class");
      members.push_back(std::move(h));
    }
    return HypothesisClass(std::move(members), std::nullopt, uus, std::move(name));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("class spec: ") + e.what());
  }
}

inline std::string class_to_json(const HypothesisClass& H) {
  const auto& members = H.require_finite("save_class");
  Natural modulus = 1;
  for (const Hypothesis& h : members) modulus = SymbolicSet::lcm_checked(modulus, h.support.modulus());
  nlohmann::ordered_json doc;
  doc["space_modulus"] = modulus;
  doc["hypotheses"] = nlohmann::ordered_json::array();
  for (const Hypothesis& h : members) {
    doc["hypotheses"].push_back({{"id", h.id}, {"support", to_string(h.support)}});
  }
  doc["uus"] = H.uus_claimed();
  return doc.dump(2) + "\n";
}

inline HypothesisClass load_class(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open class spec " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.rfind(".json"); dot != std::string::npos && dot + 5 == name.size()) name.resize(dot);
  return class_from_json(buffer.str(), name);
}

inline void save_class(const HypothesisClass& H, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write class spec " + path);
  out << class_to_json(H);
  if (!out) throw Error("failed writing class spec " + path);
}

}  // namespace crosslimit
