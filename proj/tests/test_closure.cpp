#include <gtest/gtest.h>

#include <random>

#include "crosslimit/closure.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace crosslimit;

namespace {

const SymbolicSet kEvens = SymbolicSet::residue_class(2, {0});

std::vector<std::string> ids(const std::vector<Hypothesis>& hs) {
  std::vector<std::string> out;
  for (const auto& h : hs) out.push_back(h.id);
  return out;
}

EdgeSet punctured_ladder(std::size_t n) {
  EdgeSet E;
  for (std::size_t i = 1; i <= n; ++i) E.insert(Pair::of(2 * (i - 1), 1));
  return E;
}

}  // namespace

TEST(Closure, PositiveClosure) {
  const auto H = build_witness({WitnessKind::Punctured, 4}).truncated();
  auto c = positive_closure(H, {0});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, difference(kEvens, SymbolicSet::finite({2, 4, 6})));
  EXPECT_EQ(*positive_closure(H, {}), difference(kEvens, SymbolicSet::finite({0, 2, 4, 6})));
  EXPECT_FALSE(positive_closure(H, {1}).has_value());
  EXPECT_THROW(positive_closure(build_witness({WitnessKind::Punctured, 4}), {0}), Error);
}

TEST(Closure, EdgeVersionSpaces) {
  const auto slice = fixtures::co_singleton_slice(6);
  EXPECT_EQ(ids(edge_version_space(slice, {Pair::of(1, 4)})), (std::vector<std::string>{"h_1", "h_4"}));
  EXPECT_EQ(edge_version_space(slice, {}).size(), 6u);

  const auto co = build_witness({WitnessKind::CoSingleton});
  EXPECT_EQ(ids(edge_version_space(co, {Pair::of(2, 7)})), (std::vector<std::string>{"h_2", "h_7"}));

  const auto P = build_witness({WitnessKind::Punctured, 4});
  const auto vs = ids(edge_version_space(P, {Pair::of(0, 1)}, 3));
  EXPECT_EQ(vs, (std::vector<std::string>{"h_inf", "h_2", "h_3", "h_4", "h_5", "h_6", "h_7"}));
  EXPECT_EQ(version_space(P, {Pair::of(0, 1)}).describe(P), "{h_inf, h_2, h_3, h_4, all h_j for j >= 5}");
}

TEST(Closure, TailVersionSpacesMatchMembers) {
  for (const auto& family : {WitnessFamily{WitnessKind::Punctured, 3}, WitnessFamily{WitnessKind::Augmented, 3},
                             WitnessFamily{WitnessKind::Block, 3, 2}, WitnessFamily{WitnessKind::CoSingleton}}) {
    const auto H = build_witness(family);
    const auto members = H.listing(12);
    for (Natural x = 0; x < 14; ++x) {
      for (Natural y = x + 1; y < 14; ++y) {
        const VersionSpace v = VersionSpace::of_edge(H, {x, y});
        for (std::size_t i = 0; i < members.size(); ++i) {
          bool in = i < H.explicit_size() ? v.has_explicit(i) : v.tail()->contains(H.tail_index(i));
          ASSERT_EQ(in, crosses(members[i].support, {x, y})) << H.name() << " " << members[i].id;
        }
      }
      const VersionSpace p = VersionSpace::of_point(H, x);
      for (std::size_t i = H.explicit_size(); i < members.size(); ++i) {
        ASSERT_EQ(p.tail()->contains(H.tail_index(i)), members[i].support.contains(x));
      }
    }
  }
}

TEST(Closure, ContrastiveClosureAndSafeSets) {
  const auto aug = build_witness({WitnessKind::Augmented, 4});
  const SymbolicSet A = SymbolicSet::residue_class(3, {0});
  for (const Hypothesis& h : aug.listing(3)) {
    for (std::size_t n : {1, 5, 20}) {
      auto safe = safe_set(aug, random_contrastive(h, n).take(n));
      ASSERT_TRUE(safe);
      EXPECT_TRUE(is_subset(A, *safe));
      EXPECT_TRUE(is_subset(*safe, h.support));
    }
  }
  EXPECT_FALSE(contrastive_closure(aug, {Pair::of(0, 3)}).has_value());

  const auto P = build_witness({WitnessKind::Punctured, 10});
  for (std::size_t n = 1; n <= 4; ++n) {
    auto c = contrastive_closure(P, punctured_ladder(n));
    ASSERT_TRUE(c);
    std::vector<Natural> a;
    for (std::size_t i = 1; i <= n; ++i) a.push_back(2 * (i - 1));
    EXPECT_EQ(*c, SymbolicSet::finite(a));
  }
}

TEST(Closure, Hollowness) {
  const auto P = build_witness({WitnessKind::Punctured, 10});
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_TRUE(is_hollow(P, punctured_ladder(n))) << n;
  // The finite truncation always keeps h_inf's other points in the closure.
  EXPECT_FALSE(is_hollow(P.truncated(), punctured_ladder(3)));

  const auto aug = build_witness({WitnessKind::Augmented, 4});
  EXPECT_FALSE(is_hollow(aug, {Pair::of(0, 1), Pair::of(3, 2)}));
  EXPECT_FALSE(is_hollow(aug, {Pair::of(0, 3)}));
}

TEST(Closure, Dimension) {
  auto report = closure_dimension(fixtures::co_singleton_slice(4), 6, 6);
  EXPECT_EQ(report.outcome, DimensionReport::Outcome::Exact);
  EXPECT_EQ(report.d, 0u);

  report = closure_dimension(HypothesisClass({{"e", kEvens}}), 6, 6);
  EXPECT_EQ(report.outcome, DimensionReport::Outcome::Exact);
  EXPECT_EQ(report.d, 0u);

  const auto tri = fixtures::triangle_class({4, 9}, {2, 6, 7});
  report = closure_dimension(tri, 8, 12);
  EXPECT_EQ(report.outcome, DimensionReport::Outcome::Exact);
  EXPECT_EQ(report.d, 6u);
  EXPECT_TRUE(is_hollow(tri, report.witness));
  EXPECT_EQ(report.witness.size(), 6u);

  report = closure_dimension(tri, 4, 12);
  EXPECT_EQ(report.outcome, DimensionReport::Outcome::AtLeast);
  EXPECT_EQ(report.d, 4u);
  EXPECT_TRUE(is_hollow(tri, report.witness));

  report = closure_dimension(build_witness({WitnessKind::Punctured, 10}), 10, 24);
  EXPECT_EQ(report.outcome, DimensionReport::Outcome::AtLeast);
  EXPECT_EQ(report.d, 10u);
  EXPECT_TRUE(is_hollow(build_witness({WitnessKind::Punctured, 10}), report.witness));

  // Two cofinite sets with finite intersection: the common crossing graph is
  // infinite while the closure stays finite.
  const HypothesisClass uus_pair({{"p", SymbolicSet::make(3, {0}, {1}, {})},
                                  {"q", SymbolicSet::make(3, {1}, {0}, {})}});
  report = closure_dimension(uus_pair, 5, 8);
  EXPECT_EQ(report.outcome, DimensionReport::Outcome::InfiniteByPattern);
  EXPECT_FALSE(report.pattern_note.empty());
}

TEST(ClosureProperty, SearchMatchesBruteForce) {
  std::mt19937_64 rng(11);
  int nonzero = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<oracle::RawSet> raw;
    std::vector<Hypothesis> members;
    const std::size_t r = 2 + trial % 2;
    while (members.size() < r) {
      oracle::RawSet s = oracle::random_raw(rng, 3, 3, 6);
      if (!oracle::proper(s)) continue;
      Hypothesis h{"h" + std::to_string(members.size()), SymbolicSet::make(s.modulus, s.residues, s.plus, s.minus)};
      bool dup = false;
      for (const auto& m : members) dup = dup || m.support == h.support;
      if (dup) continue;
      raw.push_back(s);
      members.push_back(h);
    }
    const HypothesisClass H(members);
    const Natural horizon = 6;
    const int brute = oracle::brute_max_hollow(raw, horizon);
    const DimensionReport report = closure_dimension(H, 15, horizon);
    ASSERT_EQ(static_cast<int>(report.d), std::max(brute, 0)) << trial;
    if (brute > 0) {
      ++nonzero;
      EXPECT_TRUE(is_hollow(H, report.witness));
    }
  }
  EXPECT_GT(nonzero, 3);
}

TEST(ClosureProperty, MonotoneAndSound) {
  const auto H = build_witness({WitnessKind::Augmented, 5});
  for (const Hypothesis& h : H.listing(3)) {
    const Prefix p = random_contrastive(h, 3).take(24);
    EdgeSet E;
    ClosureResult last = contrastive_closure(H, E);
    VersionSpace last_vs = version_space(H, E);
    for (const Pair& e : p.pairs()) {
      E.insert(e);
      const VersionSpace vs = version_space(H, E);
      EXPECT_TRUE(vs.is_subset_of(last_vs));
      const ClosureResult c = contrastive_closure(H, E);
      ASSERT_TRUE(c);
      EXPECT_TRUE(is_subset(*last, *c));
      EXPECT_TRUE(is_subset(*c, h.support));
      const auto idx = H.index_of(h.id);
      EXPECT_TRUE(*idx < H.explicit_size() ? vs.has_explicit(*idx) : vs.tail()->contains(H.tail_index(*idx)));
      last = c;
      last_vs = vs;
    }
  }
}
