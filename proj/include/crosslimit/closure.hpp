#pragma once

// Positive-data closure, edge-induced version spaces, contrastive closure,
// hollow edge sets and the contrastive closure dimension.
//
// Version spaces are exact for classes with an indexed tail: the set of tail
// members crossed by an edge is always finite or cofinite, so it is kept as a
// flag plus a finite list of chunk indices.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crosslimit/crossing.hpp"

namespace crosslimit {

using EdgeSet = std::set<Pair>;

inline SymbolicSet vertices(const EdgeSet& E) {
  std::vector<Natural> v;
  for (const Pair& p : E) {
    v.push_back(p.lo);
    v.push_back(p.hi);
  }
  return SymbolicSet::finite(std::move(v));
}

/// A symbolic set, or nullopt for ⊥ (no consistent hypothesis).
using ClosureResult = std::optional<SymbolicSet>;

inline std::string to_string(const ClosureResult& c) { return c ? to_string(*c) : std::string("bottom"); }

inline ClosureResult positive_closure(const HypothesisClass& H, const std::vector<Natural>& xs) {
  std::optional<SymbolicSet> out;
  for (const Hypothesis& g : H.require_finite("positive_closure")) {
    const bool consistent =
        std::all_of(xs.begin(), xs.end(), [&](Natural x) { return g.support.contains(x); });
    if (consistent) out = out ? intersect(*out, g.support) : g.support;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Version spaces

/// Tail members j >= first: all but `idx` when cofinite, else exactly `idx`.
struct TailSet {
  bool cofinite = true;
  std::vector<std::size_t> idx;

  friend auto operator<=>(const TailSet&, const TailSet&) = default;

  bool empty() const noexcept { return !cofinite && idx.empty(); }

  bool contains(std::size_t j) const {
    return std::binary_search(idx.begin(), idx.end(), j) != cofinite;
  }

  static TailSet finite(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return {false, std::move(v)};
  }

  static TailSet all_but(std::vector<std::size_t> v) {
    TailSet t = finite(std::move(v));
    t.cofinite = true;
    return t;
  }

  TailSet intersected(const TailSet& o) const {
    std::vector<std::size_t> out;
    if (cofinite && o.cofinite) {
      std::set_union(idx.begin(), idx.end(), o.idx.begin(), o.idx.end(), std::back_inserter(out));
      return {true, std::move(out)};
    }
    if (!cofinite && !o.cofinite) {
      std::set_intersection(idx.begin(), idx.end(), o.idx.begin(), o.idx.end(), std::back_inserter(out));
      return {false, std::move(out)};
    }
    const TailSet& fin = cofinite ? o : *this;
    const TailSet& cof = cofinite ? *this : o;
    std::set_difference(fin.idx.begin(), fin.idx.end(), cof.idx.begin(), cof.idx.end(), std::back_inserter(out));
    return {false, std::move(out)};
  }
};

class VersionSpace {
 public:
  VersionSpace() = default;

  /// Every member of H.
  static VersionSpace full(const HypothesisClass& H) {
    VersionSpace v;
    v.explicit_.assign(H.explicit_size(), true);
    if (H.tail()) v.tail_ = TailSet{};
    return v;
  }

  /// Members crossed by the pair.
  static VersionSpace of_edge(const HypothesisClass& H, const Pair& p) {
    VersionSpace v;
    v.explicit_.resize(H.explicit_size());
    for (std::size_t i = 0; i < H.explicit_size(); ++i) {
      v.explicit_[i] = crosses(H.explicit_members()[i].support, p);
    }
    if (const auto& tail = H.tail()) {
      const bool d = tail->base.contains(p.lo) != tail->base.contains(p.hi);
      const auto cx = tail_chunk(*tail, p.lo);
      const auto cy = tail_chunk(*tail, p.hi);
      std::vector<std::size_t> marked;
      if (cx) marked.push_back(*cx);
      if (cy) marked.push_back(*cy);
      if (cx == cy) {
        v.tail_ = d ? TailSet::all_but({}) : TailSet::finite({});
      } else {
        v.tail_ = d ? TailSet::all_but(marked) : TailSet::finite(marked);
      }
      v.tail_ = clip(*v.tail_, tail->first);
    }
    return v;
  }

  /// Members whose support contains x.
  static VersionSpace of_point(const HypothesisClass& H, Natural x) {
    VersionSpace v;
    v.explicit_.resize(H.explicit_size());
    for (std::size_t i = 0; i < H.explicit_size(); ++i) {
      v.explicit_[i] = H.explicit_members()[i].support.contains(x);
    }
    if (const auto& tail = H.tail()) {
      const auto c = tail_chunk(*tail, x);
      std::vector<std::size_t> marked;
      if (c) marked.push_back(*c);
      v.tail_ = tail->base.contains(x) ? TailSet::all_but(marked) : TailSet::finite(marked);
      v.tail_ = clip(*v.tail_, tail->first);
    }
    return v;
  }

  friend auto operator<=>(const VersionSpace&, const VersionSpace&) = default;

  VersionSpace intersected(const VersionSpace& o) const {
    VersionSpace v = *this;
    for (std::size_t i = 0; i < explicit_.size(); ++i) v.explicit_[i] = explicit_[i] && o.explicit_[i];
    if (tail_) v.tail_ = tail_->intersected(*o.tail_);
    return v;
  }

  bool empty() const {
    return std::none_of(explicit_.begin(), explicit_.end(), [](bool b) { return b; }) &&
           (!tail_ || tail_->empty());
  }

  bool is_subset_of(const VersionSpace& o) const { return intersected(o) == *this; }

  bool has_explicit(std::size_t i) const { return explicit_[i]; }
  const std::vector<bool>& explicit_bits() const noexcept { return explicit_; }
  const std::optional<TailSet>& tail() const noexcept { return tail_; }
  bool infinite() const { return tail_ && tail_->cofinite; }

  /// Number of members, with cofinite tails counted as `cofinite_weight`.
  std::size_t weight(std::size_t cofinite_weight = 1u << 20) const {
    std::size_t n = static_cast<std::size_t>(std::count(explicit_.begin(), explicit_.end(), true));
    if (tail_) n += tail_->cofinite ? cofinite_weight : tail_->idx.size();
    return n;
  }

  /// Positions (in the class enumeration) of members, listing at most
  /// `limit` tail members when the tail part is cofinite.
  std::vector<std::size_t> positions(const HypothesisClass& H, std::size_t limit = 16) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < explicit_.size(); ++i) {
      if (explicit_[i]) out.push_back(i);
    }
    if (tail_) {
      if (tail_->cofinite) {
        for (std::size_t j = H.tail()->first, n = 0; n < limit; ++j) {
          if (tail_->contains(j)) {
            out.push_back(H.position_of_tail(j));
            ++n;
          }
        }
      } else {
        for (std::size_t j : tail_->idx) out.push_back(H.position_of_tail(j));
      }
    }
    return out;
  }

  /// Least position, if any.
  std::optional<std::size_t> first_position(const HypothesisClass& H) const {
    auto p = positions(H, 1);
    if (p.empty()) return std::nullopt;
    return p.front();
  }

  std::string describe(const HypothesisClass& H) const {
    std::string out = "{";
    bool first = true;
    auto add = [&](const std::string& s) {
      out += (first ? "" : ", ") + s;
      first = false;
    };
    for (std::size_t i = 0; i < explicit_.size(); ++i) {
      if (explicit_[i]) add(H.explicit_members()[i].id);
    }
    if (tail_) {
      if (tail_->cofinite) {
        std::string s = "all " + H.tail()->id_prefix + "j for j >= " + std::to_string(H.tail()->first + H.tail()->id_offset);
        if (!tail_->idx.empty()) {
          s += " except";
          for (std::size_t j : tail_->idx) s += " " + H.tail()->id(j);
        }
        add(s);
      } else {
        for (std::size_t j : tail_->idx) add(H.tail()->id(j));
      }
    }
    return out + "}";
  }

 private:
  static std::optional<std::size_t> tail_chunk(const IndexedFamily& t, Natural x) {
    if (!t.pool.contains(x)) return std::nullopt;
    return t.chunk_of(x);
  }

  static TailSet clip(TailSet t, std::size_t first) {
    t.idx.erase(std::remove_if(t.idx.begin(), t.idx.end(), [&](std::size_t j) { return j < first; }),
                t.idx.end());
    return t;
  }

  std::vector<bool> explicit_;
  std::optional<TailSet> tail_;
};

inline VersionSpace version_space(const HypothesisClass& H, const EdgeSet& E) {
  VersionSpace v = VersionSpace::full(H);
  for (const Pair& p : E) v = v.intersected(VersionSpace::of_edge(H, p));
  return v;
}

/// The members crossed by every edge (tail members listed up to `limit`).
inline std::vector<Hypothesis> edge_version_space(const HypothesisClass& H, const EdgeSet& E,
                                                  std::size_t limit = 16) {
  std::vector<Hypothesis> out;
  for (std::size_t i : version_space(H, E).positions(H, limit)) out.push_back(H.member(i));
  return out;
}

/// Intersection of the supports of every member in the version space.
inline ClosureResult closure_of(const HypothesisClass& H, const VersionSpace& v) {
  if (v.empty()) return std::nullopt;
  SymbolicSet out = SymbolicSet::all();
  for (std::size_t i = 0; i < H.explicit_size(); ++i) {
    if (v.has_explicit(i)) out = intersect(out, H.explicit_members()[i].support);
  }
  if (const auto& t = v.tail()) {
    const IndexedFamily& family = *H.tail();
    if (t->cofinite) {
      if (family.mode == TailMode::Add) {
        out = intersect(out, family.base);
      } else {
        // Remaining members remove every chunk except those below `first` and the excluded ones.
        SymbolicSet kept = family.chunk_prefix(family.first);
        for (std::size_t j : t->idx) kept = set_union(kept, family.chunk_set(j));
        out = intersect(out, difference(family.base, difference(family.pool, kept)));
      }
    } else {
      for (std::size_t j : t->idx) out = intersect(out, family.support(j));
    }
  }
  return out;
}

inline ClosureResult contrastive_closure(const HypothesisClass& H, const EdgeSet& E) {
  return closure_of(H, version_space(H, E));
}

inline ClosureResult safe_set(const HypothesisClass& H, const Prefix& prefix) {
  return contrastive_closure(H, distinct_edges(prefix));
}

inline bool is_hollow(const HypothesisClass& H, const EdgeSet& E) {
  const ClosureResult c = contrastive_closure(H, E);
  return c && is_subset(*c, vertices(E));
}

// ---------------------------------------------------------------------------
// Closure dimension

struct DimensionReport {
  enum class Outcome { Exact, AtLeast, InfiniteByPattern };

  Outcome outcome = Outcome::AtLeast;
  std::size_t d = 0;
  EdgeSet witness;           // verified hollow set of size d (Exact, AtLeast)
  std::string pattern_note;  // why the dimension is infinite
  std::size_t max_size = 0;
  Natural vertex_horizon = 0;
  std::size_t states = 0;
  std::string note;
};

inline const char* to_string(DimensionReport::Outcome o) {
  switch (o) {
    case DimensionReport::Outcome::Exact:
      return "Exact";
    case DimensionReport::Outcome::AtLeast:
      return "AtLeast";
    case DimensionReport::Outcome::InfiniteByPattern:
      return "InfiniteByPattern";
  }
  return "?";
}

/// Exact value of the dimension of a finite class, computed from its pattern
/// cells. nullopt means infinite.
struct PatternDimension {
  std::optional<std::size_t> value;
  std::string note;
};

inline constexpr std::size_t kPatternDimensionBound = 16;

inline std::optional<PatternDimension> pattern_dimension(const HypothesisClass& H) {
  if (!H.is_finite_explicit()) return std::nullopt;
  const auto& members = H.explicit_members();
  const std::size_t r = members.size();
  if (r == 0 || r > kPatternDimensionBound) return std::nullopt;

  // Every nonempty cell has a point below this horizon.
  Natural period = 1;
  Natural exceptions = 0;
  for (const Hypothesis& h : members) {
    period = SymbolicSet::lcm_checked(period, h.support.modulus());
    exceptions = std::max(exceptions, h.support.max_exception().value_or(0));
  }
  const Natural horizon = exceptions + period + 1;
  std::set<std::uint32_t> patterns;
  for (Natural x = 0; x < horizon; ++x) {
    std::uint32_t a = 0;
    for (std::size_t i = 0; i < r; ++i) a |= static_cast<std::uint32_t>(members[i].support.contains(x)) << i;
    patterns.insert(a);
  }
  struct Cell {
    std::uint32_t alpha;
    Cardinality size;
  };
  std::vector<Cell> cells;
  for (std::uint32_t a : patterns) {
    SymbolicSet s = SymbolicSet::all();
    for (std::size_t i = 0; i < r; ++i) {
      s = (a >> i & 1) ? intersect(s, members[i].support) : difference(s, members[i].support);
    }
    cells.push_back({a, cardinality(s)});
  }
  struct Type {
    std::size_t u, v;
    std::uint32_t mask;
  };
  std::vector<Type> types;
  for (std::size_t u = 0; u < cells.size(); ++u) {
    for (std::size_t v = u + 1; v < cells.size(); ++v) {
      types.push_back({u, v, cells[u].alpha ^ cells[v].alpha});
    }
  }
  const std::uint32_t all = (r == 32) ? ~0u : ((1u << r) - 1);
  auto bits = [&](std::uint32_t s) {
    std::string out;
    for (std::size_t i = 0; i < r; ++i) out += (s >> i & 1) ? '1' : '0';
    return out;
  };

  PatternDimension out{std::size_t{0}, "no nonempty hollow edge set"};
  std::size_t best = 0;
  for (std::uint32_t S = 1; S <= all && S != 0; ++S) {
    std::uint32_t meet = all;
    std::vector<const Type*> chosen;
    for (const Type& t : types) {
      if ((t.mask & S) == S) {
        meet &= t.mask;
        chosen.push_back(&t);
      }
    }
    if (meet != S) continue;  // S is not a version space of any finite edge set
    // Closure: cells inside every support of S; must be finite and incident to Γ(S).
    bool ok = true;
    for (std::size_t c = 0; c < cells.size() && ok; ++c) {
      if ((cells[c].alpha & S) != S) continue;
      if (cells[c].size.is_infinite()) {
        ok = false;
        break;
      }
      ok = std::any_of(chosen.begin(), chosen.end(), [&](const Type* t) { return t->u == c || t->v == c; });
    }
    if (!ok) continue;
    std::size_t edges = 0;
    for (const Type* t : chosen) {
      const Cardinality a = cells[t->u].size;
      const Cardinality b = cells[t->v].size;
      if (a.is_infinite() || b.is_infinite()) {
        return PatternDimension{std::nullopt, "version space " + bits(S) + " has finite closure and infinitely many " +
                                                  "common crossing edges between cells " + bits(cells[t->u].alpha) +
                                                  " and " + bits(cells[t->v].alpha)};
      }
      edges += a.count() * b.count();
    }
    if (edges >= best) {
      best = edges;
      out = {best, "largest hollow sets have version space " + bits(S)};
    }
  }
  out.value = best;
  return out;
}

struct DimensionOptions {
  std::size_t state_cap = 200000;
};

namespace detail {

// A subset of the edges crossed by every member of `target` that cuts the
// version space down to `target` and covers `must_cover`.
inline std::optional<EdgeSet> realize_and_cover(const HypothesisClass& H, const VersionSpace& target,
                                                const std::vector<std::pair<Pair, VersionSpace>>& saturated,
                                                const SymbolicSet& must_cover, Natural horizon) {
  EdgeSet E;
  VersionSpace current = VersionSpace::full(H);
  while (current != target) {
    const std::pair<Pair, VersionSpace>* pick = nullptr;
    std::size_t pick_weight = 0;
    for (const auto& cand : saturated) {
      const VersionSpace next = current.intersected(cand.second);
      if (next == current) continue;
      const std::size_t w = next.weight();
      if (!pick || w < pick_weight) {
        pick = &cand;
        pick_weight = w;
      }
    }
    if (!pick) return std::nullopt;
    E.insert(pick->first);
    current = current.intersected(pick->second);
  }
  const std::vector<Natural> targets = enumerate(must_cover, horizon);
  for (Natural v : targets) {
    if (vertices(E).contains(v)) continue;
    const Pair* pick = nullptr;
    for (const auto& cand : saturated) {
      if (!cand.first.has(v)) continue;
      const Natural other = cand.first.lo == v ? cand.first.hi : cand.first.lo;
      const bool helps = must_cover.contains(other) && !vertices(E).contains(other);
      if (!pick || helps) pick = &cand.first;
      if (helps) break;
    }
    if (!pick) return std::nullopt;
    E.insert(*pick);
  }
  return E;
}

}  // namespace detail

/// Largest hollow edge set among edges with both endpoints below the horizon,
/// capped at max_size, certified exact from pattern cells when possible.
inline DimensionReport closure_dimension(const HypothesisClass& H, std::size_t max_size, Natural vertex_horizon,
                                         const DimensionOptions& options = {}) {
  DimensionReport report;
  report.max_size = max_size;
  report.vertex_horizon = vertex_horizon;

  std::vector<std::pair<Pair, VersionSpace>> edges;
  for (Natural x = 0; x < vertex_horizon; ++x) {
    for (Natural y = x + 1; y < vertex_horizon; ++y) {
      VersionSpace v = VersionSpace::of_edge(H, {x, y});
      if (!v.empty()) edges.emplace_back(Pair{x, y}, std::move(v));
    }
  }
  // Distinct single-edge filters drive the state search.
  std::vector<VersionSpace> filters;
  {
    std::set<VersionSpace> seen;
    for (const auto& e : edges) {
      if (seen.insert(e.second).second) filters.push_back(e.second);
    }
  }
  const SymbolicSet window = SymbolicSet::finite([&] {
    std::vector<Natural> v;
    for (Natural x = 0; x < vertex_horizon; ++x) v.push_back(x);
    return v;
  }());

  std::set<VersionSpace> visited;
  std::deque<VersionSpace> queue;
  const VersionSpace start = VersionSpace::full(H);
  visited.insert(start);
  queue.push_back(start);
  bool capped = false;
  bool found = false;
  while (!queue.empty()) {
    const VersionSpace S = queue.front();
    queue.pop_front();
    const ClosureResult closure = closure_of(H, S);
    // Closures only grow as edges are added; once outside the window, no
    // extension can be hollow with vertices below the horizon.
    if (!closure || !is_subset(*closure, window)) continue;

    std::vector<std::pair<Pair, VersionSpace>> saturated;
    for (const auto& e : edges) {
      if (S.is_subset_of(e.second)) saturated.push_back(e);
    }
    EdgeSet all_saturated;
    for (const auto& e : saturated) all_saturated.insert(e.first);
    if (version_space(H, all_saturated) == S && is_subset(*closure, vertices(all_saturated))) {
      if (auto E = detail::realize_and_cover(H, S, saturated, *closure, vertex_horizon); E && E->size() <= max_size) {
        for (const auto& e : saturated) {
          if (E->size() >= max_size) break;
          E->insert(e.first);
        }
        if (is_hollow(H, *E) && (!found || E->size() > report.witness.size())) {
          report.witness = *E;
          found = true;
        }
      }
    }

    for (const VersionSpace& f : filters) {
      VersionSpace next = S.intersected(f);
      if (next.empty() || next == S || visited.count(next)) continue;
      if (visited.size() >= options.state_cap) {
        capped = true;
        break;
      }
      visited.insert(next);
      queue.push_back(std::move(next));
    }
  }
  report.states = visited.size();
  report.d = found ? report.witness.size() : 0;

  const auto symbolic = pattern_dimension(H);
  if (symbolic && !symbolic->value) {
    report.outcome = DimensionReport::Outcome::InfiniteByPattern;
    report.pattern_note = symbolic->note;
    return report;
  }
  if (symbolic && *symbolic->value == report.d && (report.d == 0 || found)) {
    report.outcome = DimensionReport::Outcome::Exact;
    report.note = symbolic->note;
    return report;
  }
  report.outcome = DimensionReport::Outcome::AtLeast;
  if (capped) report.note = "state cap reached; ";
  if (symbolic) {
    report.note += "pattern analysis gives " + std::to_string(*symbolic->value) + ", beyond the search bounds";
  } else if (!H.is_finite_explicit()) {
    report.note += "infinite class; lower bound only";
  } else {
    report.note += "too many hypotheses for pattern analysis; lower bound only";
  }
  return report;
}

}  // namespace crosslimit
