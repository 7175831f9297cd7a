#pragma once

// Hypothesis classes shared by the unit tests and the acceptance suite.

#include <string>
#include <vector>

#include "crosslimit/classes.hpp"

namespace fixtures {

using crosslimit::Hypothesis;
using crosslimit::HypothesisClass;
using crosslimit::Natural;
using crosslimit::SymbolicSet;

// Three hypotheses whose pairwise cells are the residues mod 3 (residue 0 in
// h_0 and h_1, residue 1 in h_0 and h_2, residue 2 in h_1 and h_2), with the
// points of P added to all three supports and the points of Q removed from all.
// Its closure dimension is |P|·|Q|, realized by the edges P × Q.
inline HypothesisClass triangle_class(const std::vector<Natural>& P, const std::vector<Natural>& Q) {
  const Natural residues[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::vector<Hypothesis> members;
  for (int i = 0; i < 3; ++i) {
    const SymbolicSet base = SymbolicSet::residue_class(3, {residues[i][0], residues[i][1]});
    const SymbolicSet support =
        crosslimit::difference(crosslimit::set_union(base, SymbolicSet::finite(P)), SymbolicSet::finite(Q));
    members.push_back({"t_" + std::to_string(i), support});
  }
  std::string name = "triangle";
  for (Natural p : P) name += "+" + std::to_string(p);
  for (Natural q : Q) name += "-" + std::to_string(q);
  return HypothesisClass(std::move(members), std::nullopt, true, name);
}

// h_s with support X ∖ {s} for s < n.
inline HypothesisClass co_singleton_slice(Natural n) {
  std::vector<Hypothesis> members;
  for (Natural s = 0; s < n; ++s) {
    members.push_back({"h_" + std::to_string(s),
                       crosslimit::difference(SymbolicSet::all(), SymbolicSet::finite({s}))});
  }
  return HypothesisClass(std::move(members), std::nullopt, true, "co-singleton-slice");
}

// Incomparable pairs all overlap and cover X; supersets are separated by
// finite tell-tales.
inline HypothesisClass overlapping_cover_class() {
  const SymbolicSet all = SymbolicSet::all();
  return HypothesisClass({{"c_0", crosslimit::difference(all, SymbolicSet::finite({0}))},
                          {"c_1", crosslimit::difference(all, SymbolicSet::finite({0, 1}))},
                          {"c_2", crosslimit::difference(all, SymbolicSet::finite({2}))},
                          {"c_3", crosslimit::set_union(SymbolicSet::residue_class(2, {0}),
                                                        SymbolicSet::finite({1, 3}))}},
                         std::nullopt, true, "overlapping-cover");
}

}  // namespace fixtures
