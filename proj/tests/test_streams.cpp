#include <gtest/gtest.h>

#include "crosslimit/crossing.hpp"

using namespace crosslimit;

namespace {

const SymbolicSet kEvens = SymbolicSet::residue_class(2, {0});

Hypothesis co_singleton(Natural s) {
  return {"h_" + std::to_string(s), difference(SymbolicSet::all(), SymbolicSet::finite({s}))};
}

std::vector<Pair> pairs(std::initializer_list<std::pair<Natural, Natural>> list) {
  std::vector<Pair> out;
  for (auto [x, y] : list) out.push_back(Pair::of(x, y));
  return out;
}

}  // namespace

TEST(Streams, CanonicalContrastive) {
  EXPECT_EQ(canonical_contrastive(co_singleton(3)).take(4).pairs(), pairs({{0, 3}, {1, 3}, {2, 3}, {4, 3}}));
  EXPECT_EQ(canonical_contrastive({"e", kEvens}).take(3).pairs(), pairs({{0, 1}, {2, 1}, {4, 1}}));
  EXPECT_EQ(canonical_contrastive({"f", SymbolicSet::finite({5})}).take(3).pairs(),
            pairs({{5, 0}, {5, 0}, {5, 0}}));
  EXPECT_THROW(canonical_contrastive({"x", SymbolicSet::all()}), Error);
  EXPECT_THROW(canonical_contrastive({"x", SymbolicSet::all()}).item(0), Error);
}

TEST(Streams, CanonicalTextAndInformant) {
  EXPECT_EQ(canonical_text({"e", kEvens}).take(3).naturals(), (std::vector<Natural>{0, 2, 4}));
  const auto informant = canonical_informant({"e", kEvens}).take(3).labeled();
  EXPECT_EQ(informant, (std::vector<Labeled>{{0, true}, {1, false}, {2, true}}));
  EXPECT_EQ(canonical_text(co_singleton(1)).take(4).naturals(), (std::vector<Natural>{0, 2, 3, 4}));
  EXPECT_THROW(canonical_text({"empty", SymbolicSet::empty()}), Error);
}

TEST(Streams, ExampleSixOneCorruption) {
  const Stream s = corrupt(canonical_contrastive(co_singleton(3)), {{3, Pair::of(0, 4)}});
  EXPECT_EQ(s.take(6).pairs(), pairs({{3, 0}, {3, 1}, {0, 4}, {3, 2}, {3, 4}, {3, 5}}));
  const ValidityReport r = validate(s.take(6), co_singleton(3), 0);
  EXPECT_EQ(r.xor_violations, (std::vector<std::size_t>{3}));
  EXPECT_TRUE(r.budget_ok(1));
  EXPECT_FALSE(r.budget_ok(0));
}

TEST(Streams, CorruptionEdgeCases) {
  const Stream inner = canonical_contrastive({"e", kEvens});
  EXPECT_EQ(corrupt(inner, {}).take(10).pairs(), inner.take(10).pairs());
  EXPECT_THROW(corrupt(inner, {{2, Pair::of(0, 2)}, {2, Pair::of(0, 4)}}), Error);
  EXPECT_THROW(corrupt(inner, {{2, Natural{3}}}), Error);
  EXPECT_THROW(corrupt(inner, {{0, Pair::of(0, 2)}}), Error);

  // Enumerating X is the text of h_s with s slipped in at its natural place.
  for (Natural s = 0; s < 12; ++s) {
    const Stream text = corrupt(canonical_text(co_singleton(s)), {{s + 1, s}});
    const auto xs = text.take(30).naturals();
    for (Natural x = 0; x < 30; ++x) ASSERT_EQ(xs[x], x);
    EXPECT_EQ(validate(text.take(30), co_singleton(s), 0).xor_violations, (std::vector<std::size_t>{s + 1}));
  }
}

TEST(Streams, CorruptedStreamsKeepBudgetAndCoverage) {
  const Hypothesis h{"e", kEvens};
  const Stream s = corrupt(canonical_contrastive(h), {{1, Pair::of(0, 2)}, {5, Pair::of(1, 3)}, {6, Pair::of(7, 9)}});
  const ValidityReport r = validate(s.take(40), h, 40);
  EXPECT_EQ(r.xor_violations, (std::vector<std::size_t>{1, 5, 6}));
  EXPECT_TRUE(r.budget_ok(3));
  EXPECT_TRUE(is_empty(r.coverage_deficit));
}

TEST(Streams, ValidateCanonicalAndShared) {
  for (const auto& family : {WitnessFamily{WitnessKind::Punctured, 4}, WitnessFamily{WitnessKind::Augmented, 4},
                             WitnessFamily{WitnessKind::SixCell}}) {
    for (const Hypothesis& h : build_witness(family).listing(2)) {
      const ValidityReport small = validate(canonical_contrastive(h).take(3), h, 20);
      EXPECT_TRUE(small.clean());
      EXPECT_FALSE(is_empty(small.coverage_deficit));
      const ValidityReport big = validate(canonical_contrastive(h).take(20), h, 20);
      EXPECT_TRUE(big.clean());
      EXPECT_TRUE(is_empty(big.coverage_deficit)) << h.id;
    }
  }
  const Hypothesis a{"h_A", kEvens};
  const Hypothesis b{"h_B", complement(kEvens)};
  const Prefix p = shared_presentation_pair(a, b)->take(30);
  EXPECT_TRUE(validate(p, a, 10).clean());
  EXPECT_TRUE(validate(p, b, 10).clean());
}

TEST(Streams, ValidateIsLabelBlind) {
  const Hypothesis h = co_singleton(2);
  const Prefix p = Prefix::contrastive(pairs({{2, 5}, {1, 4}, {0, 2}}));
  Prefix swapped{StreamKind::Contrastive, {}};
  for (const Pair& e : p.pairs()) swapped.items.emplace_back(Pair::of(e.hi, e.lo));
  const ValidityReport a = validate(p, h, 8);
  const ValidityReport b = validate(swapped, h, 8);
  EXPECT_EQ(a.xor_violations, b.xor_violations);
  EXPECT_EQ(a.coverage_deficit, b.coverage_deficit);
  EXPECT_EQ(a.xor_violations, (std::vector<std::size_t>{2}));
}

TEST(Streams, TextAndInformantValidation) {
  const Hypothesis h{"e", kEvens};
  EXPECT_EQ(validate(Prefix::text({0, 3, 4}), h, 5).xor_violations, (std::vector<std::size_t>{2}));
  Prefix inf{StreamKind::Informant, {Labeled{0, true}, Labeled{1, true}}};
  EXPECT_EQ(validate(inf, h, 2).xor_violations, (std::vector<std::size_t>{2}));
  EXPECT_TRUE(is_empty(validate(inf, h, 2).coverage_deficit));
}

TEST(Streams, SyntheticPairs) {
  EXPECT_EQ(synthetic_contrastive_from_text(Prefix::text({0, 2, 4})).pairs(), pairs({{0, 1}, {2, 1}, {4, 1}}));
  EXPECT_EQ(synthetic_contrastive_from_text(Prefix::text({0, 1, 2})).pairs(), pairs({{0, 3}, {1, 3}, {2, 3}}));
  EXPECT_THROW(synthetic_contrastive_from_text(Prefix::text({})), Error);

  const Hypothesis h{"e", kEvens};
  const Stream fixed = canonical_contrastive(h);
  const Stream text = canonical_text(h);
  for (std::size_t n = 1; n < 30; ++n) {
    EXPECT_EQ(synthetic_contrastive_from_text(text.take(n)).pairs(), fixed.take(n).pairs());
  }

  // Stabilization happens once every support element below z* has been seen.
  const Hypothesis g{"g", SymbolicSet::make(4, {0, 1}, {}, {})};
  const Natural z = *min_element(complement(g.support));
  ASSERT_EQ(z, 2u);
  const std::size_t bound = count_below(g.support, z) + 1;
  const Stream gtext = canonical_text(g);
  for (std::size_t n = bound; n < 40; ++n) {
    EXPECT_EQ(synthetic_contrastive_from_text(gtext.take(n)).pairs(), canonical_contrastive(g).take(n).pairs());
  }
}

TEST(Streams, RandomPresentationsAreValid) {
  for (const Hypothesis& h : build_witness({WitnessKind::Augmented, 3}).listing(2)) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Stream s = random_contrastive(h, seed);
      const ValidityReport r = validate(s.take(60), h, 30);
      EXPECT_TRUE(r.clean());
      EXPECT_TRUE(is_empty(r.coverage_deficit));
      EXPECT_EQ(s.take(60).items, random_contrastive(h, seed).take(60).items);
    }
  }
}

TEST(Streams, Serialization) {
  const Prefix p = Prefix::contrastive(pairs({{3, 0}, {1, 5}}));
  EXPECT_EQ(serialize(p), "{0,3}\n{1,5}\n");
  EXPECT_EQ(parse_prefix(serialize(p), StreamKind::Contrastive).items, p.items);
  const Prefix inf{StreamKind::Informant, {Labeled{0, true}, Labeled{7, false}}};
  EXPECT_EQ(parse_prefix(serialize(inf), StreamKind::Informant).items, inf.items);
  EXPECT_EQ(parse_prefix("4\n\n 9 \n", StreamKind::Text).naturals(), (std::vector<Natural>{4, 9}));
  EXPECT_THROW(parse_prefix("{1,1}", StreamKind::Contrastive), ParseError);
  EXPECT_THROW(parse_prefix("1\nx", StreamKind::Text), ParseError);
  const auto inj = parse_injections("3:{0,4};7:{1,2}", StreamKind::Contrastive);
  ASSERT_EQ(inj.size(), 2u);
  EXPECT_EQ(std::get<Pair>(inj[1].item), Pair::of(1, 2));
}
