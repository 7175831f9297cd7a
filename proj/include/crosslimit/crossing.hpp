#pragma once

// Crossing edges, common crossing graphs and when one hypothesis can be
// eliminated from another's contrastive presentations.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crosslimit/streams.hpp"

namespace crosslimit {

inline bool delta_contains(const Hypothesis& h, const Pair& p) { return crosses(h.support, p); }

/// Pair lies in both crossing-edge sets.
inline bool gamma_contains(const Hypothesis& h, const Hypothesis& g, const Pair& p) {
  return delta_contains(h, p) && delta_contains(g, p);
}

struct Regions {
  SymbolicSet A;  // in both supports
  SymbolicSet B;  // only in h
  SymbolicSet C;  // only in g
  SymbolicSet D;  // in neither
};

namespace detail {

inline void require_distinct(const Hypothesis& h, const Hypothesis& g) {
  require_proper(h);
  require_proper(g);
  if (h.support == g.support) throw Error("hypotheses " + h.id + " and " + g.id + " have the same support");
}

}  // namespace detail

inline Regions four_regions(const Hypothesis& h, const Hypothesis& g) {
  detail::require_distinct(h, g);
  return {intersect(h.support, g.support), difference(h.support, g.support),
          difference(g.support, h.support), complement(set_union(h.support, g.support))};
}

/// Vertices of the common crossing graph: a region is covered exactly when
/// its opposite region is nonempty.
inline SymbolicSet gamma_vertex_set(const Regions& r) {
  SymbolicSet out;
  if (!is_empty(r.D)) out = set_union(out, r.A);
  if (!is_empty(r.C)) out = set_union(out, r.B);
  if (!is_empty(r.B)) out = set_union(out, r.C);
  if (!is_empty(r.A)) out = set_union(out, r.D);
  return out;
}

inline SymbolicSet gamma_vertex_set(const Hypothesis& h, const Hypothesis& g) {
  return gamma_vertex_set(four_regions(h, g));
}

/// Edges of the common crossing graph with both endpoints below the horizon.
inline std::vector<Pair> gamma_edges(const Hypothesis& h, const Hypothesis& g, Natural horizon) {
  std::vector<Pair> out;
  for (Natural x = 0; x < horizon; ++x) {
    for (Natural y = x + 1; y < horizon; ++y) {
      if (gamma_contains(h, g, {x, y})) out.push_back({x, y});
    }
  }
  return out;
}

enum class Regime { Superset, Disjoint, NonCovering, Eliminable };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Superset:
      return "N1-superset";
    case Regime::Disjoint:
      return "N2-disjoint";
    case Regime::NonCovering:
      return "N3-non-covering";
    case Regime::Eliminable:
      return "eliminable";
  }
  return "?";
}

using Witness = std::variant<std::monostate, Natural, Pair>;

inline std::string to_string(const Witness& w) {
  if (auto x = std::get_if<Natural>(&w)) return std::to_string(*x);
  if (auto p = std::get_if<Pair>(&w)) return to_string(*p);
  return "none";
}

struct EliminabilityVerdict {
  bool eliminable = false;
  Regime regime = Regime::Eliminable;
  /// Eliminable: the least element of h's support with no common-crossing
  /// partner. Otherwise: a common crossing pair on h's least positive.
  Witness witness;
};

inline EliminabilityVerdict eliminable(const Hypothesis& h, const Hypothesis& g) {
  const Regions r = four_regions(h, g);
  const SymbolicSet uncovered = difference(h.support, gamma_vertex_set(r));
  EliminabilityVerdict v;
  if (!is_empty(uncovered)) {
    v.eliminable = true;
    v.regime = Regime::Eliminable;
    v.witness = *min_element(uncovered);
    return v;
  }
  if (is_empty(r.B)) {
    v.regime = Regime::Superset;
  } else if (is_empty(r.A)) {
    v.regime = Regime::Disjoint;
  } else {
    v.regime = Regime::NonCovering;
  }
  const Natural x = *min_element(h.support);
  const SymbolicSet& opposite = r.A.contains(x) ? r.D : r.C;
  v.witness = Pair::of(x, *min_element(opposite));
  return v;
}

inline bool overlapping_cover(const Hypothesis& h, const Hypothesis& g) {
  if (is_subset(h.support, g.support) || is_subset(g.support, h.support)) {
    throw Error("overlapping cover is defined for incomparable supports; " + h.id + " and " + g.id +
                " are comparable");
  }
  return !is_empty(intersect(h.support, g.support)) && is_empty(complement(set_union(h.support, g.support)));
}

// ---------------------------------------------------------------------------
// Pattern cells of a finite family

inline constexpr std::size_t kPatternBound = 6;

/// Cell α holds the points whose membership vector across the family is α;
/// bit i of α (and character i of its string form) refers to member i.
struct PatternCells {
  std::size_t r = 0;
  std::vector<SymbolicSet> cells;

  std::size_t full() const noexcept { return (std::size_t{1} << r) - 1; }
  const SymbolicSet& cell(std::size_t alpha) const { return cells.at(alpha); }

  std::string pattern(std::size_t alpha) const {
    std::string out;
    for (std::size_t i = 0; i < r; ++i) out += (alpha >> i & 1) ? '1' : '0';
    return out;
  }

  std::size_t pattern_of(const std::vector<Hypothesis>& family, Natural x) const {
    std::size_t alpha = 0;
    for (std::size_t i = 0; i < r; ++i) alpha |= static_cast<std::size_t>(family[i].support.contains(x)) << i;
    return alpha;
  }

  /// The nonzero realized pattern lacking a realized complement, if any.
  std::optional<std::size_t> unpaired_pattern() const {
    for (std::size_t alpha = 1; alpha < cells.size(); ++alpha) {
      if (!is_empty(cells[alpha]) && is_empty(cells[full() ^ alpha])) return alpha;
    }
    return std::nullopt;
  }
};

inline PatternCells pattern_cells(const std::vector<Hypothesis>& family, std::size_t bound = kPatternBound) {
  if (family.size() < 2) throw Error("pattern cells need at least two hypotheses");
  if (family.size() > bound) {
    throw Error("pattern cells support families of at most " + std::to_string(bound) + " hypotheses");
  }
  PatternCells out;
  out.r = family.size();
  out.cells.assign(std::size_t{1} << out.r, SymbolicSet::all());
  for (std::size_t alpha = 0; alpha < out.cells.size(); ++alpha) {
    for (std::size_t i = 0; i < out.r; ++i) {
      const SymbolicSet& s = family[i].support;
      out.cells[alpha] = (alpha >> i & 1) ? intersect(out.cells[alpha], s) : difference(out.cells[alpha], s);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared presentations

/// A presentation valid for every member at once, or nullopt when none exists.
/// Points of the support union are enumerated in order (cycling when finite),
/// each paired with the least point of the complementary cell.
inline std::optional<Stream> shared_presentation_family(const std::vector<Hypothesis>& family,
                                                        std::size_t bound = kPatternBound) {
  for (const Hypothesis& h : family) detail::require_proper(h);
  const PatternCells cells = pattern_cells(family, bound);
  if (cells.unpaired_pattern()) return std::nullopt;

  auto partner = std::make_shared<std::vector<Natural>>(cells.cells.size(), 0);
  for (std::size_t alpha = 1; alpha < cells.cells.size(); ++alpha) {
    if (!is_empty(cells.cells[alpha])) (*partner)[alpha] = *min_element(cells.cells[cells.full() ^ alpha]);
  }
  SymbolicSet support_union;
  std::string ids;
  for (const Hypothesis& h : family) {
    support_union = set_union(support_union, h.support);
    ids += (ids.empty() ? "" : ",") + h.id;
  }
  return Stream(
      StreamKind::Contrastive,
      [family, cells, partner, support_union](std::size_t t) -> Item {
        const Natural x = detail::cyclic_element(support_union, t);
        return Pair::of(x, (*partner)[cells.pattern_of(family, x)]);
      },
      "shared(" + ids + ")");
}

inline std::optional<Stream> shared_presentation_pair(const Hypothesis& h, const Hypothesis& g) {
  detail::require_distinct(h, g);
  return shared_presentation_family({h, g});
}

}  // namespace crosslimit
