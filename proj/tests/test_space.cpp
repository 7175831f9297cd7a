#include <gtest/gtest.h>

#include <random>

#include "crosslimit/space.hpp"
#include "support/oracles.hpp"

using namespace crosslimit;

namespace {

SymbolicSet evens() { return SymbolicSet::residue_class(2, {0}); }
SymbolicSet odds() { return SymbolicSet::residue_class(2, {1}); }

SymbolicSet from_raw(const oracle::RawSet& r) {
  return SymbolicSet::make(r.modulus, r.residues, r.plus, r.minus);
}

}  // namespace

TEST(Space, Membership) {
  EXPECT_TRUE(contains(evens(), 4));
  EXPECT_FALSE(contains(SymbolicSet::make(2, {0}, {}, {4}), 4));
  EXPECT_TRUE(contains(SymbolicSet::make(2, {1}, {0}, {}), 0));
}

TEST(Space, NormalizePair) {
  auto [a, b] = normalize_pair(evens(), SymbolicSet::residue_class(3, {0}));
  EXPECT_EQ(a.modulus(), 6u);
  EXPECT_EQ(b.modulus(), 6u);
  EXPECT_EQ(a.residues(), (std::vector<Natural>{0, 2, 4}));
  EXPECT_EQ(b.residues(), (std::vector<Natural>{0, 3}));

  auto [c, d] = normalize_pair(evens(), odds());
  EXPECT_EQ(c.modulus(), 2u);
  EXPECT_EQ(d.residues(), (std::vector<Natural>{1}));

  auto [e, f] = normalize_pair(SymbolicSet::all(), SymbolicSet::residue_class(4, {1}));
  EXPECT_EQ(e.modulus(), 4u);
  EXPECT_EQ(e.residues(), (std::vector<Natural>{0, 1, 2, 3}));
  EXPECT_EQ(e, SymbolicSet::all());
  EXPECT_EQ(f.residues(), (std::vector<Natural>{1}));
}

TEST(Space, BooleanExamples) {
  EXPECT_EQ(complement(evens()), odds());
  const SymbolicSet none = intersect(evens(), odds());
  EXPECT_TRUE(is_empty(none));
  EXPECT_TRUE(none.residues().empty());
  EXPECT_TRUE(none.plus().empty());
  EXPECT_TRUE(none.minus().empty());

  const SymbolicSet cofinite = difference(SymbolicSet::all(), SymbolicSet::finite({5}));
  EXPECT_EQ(cofinite.modulus(), 1u);
  EXPECT_EQ(cofinite.minus(), (std::vector<Natural>{5}));
  EXPECT_FALSE(contains(cofinite, 5));
  EXPECT_TRUE(contains(cofinite, 6));
}

TEST(Space, CanonicalModulusAndExceptions) {
  const SymbolicSet s = SymbolicSet::make(6, {0, 2, 4}, {4, 1}, {3});
  EXPECT_EQ(s.modulus(), 2u);
  EXPECT_EQ(s.plus(), (std::vector<Natural>{1}));
  EXPECT_TRUE(s.minus().empty());
  EXPECT_EQ(SymbolicSet::make(4, {0, 1, 2, 3}, {}, {}).modulus(), 1u);
  EXPECT_EQ(SymbolicSet::make(4, {}, {}, {}).modulus(), 1u);
  EXPECT_THROW(SymbolicSet::make(0, {}, {}, {}), Error);
  EXPECT_THROW(SymbolicSet::make(3, {3}, {}, {}), Error);
}

TEST(Space, CardinalityAndMinimum) {
  EXPECT_TRUE(cardinality(SymbolicSet::make(2, {0}, {}, {0, 2})).is_infinite());
  EXPECT_EQ(cardinality(SymbolicSet::finite({3, 7})), Cardinality::finite(2));
  EXPECT_EQ(min_element(difference(SymbolicSet::all(), evens())), Natural{1});
  EXPECT_EQ(min_element(SymbolicSet::empty()), std::nullopt);
  EXPECT_EQ(element_at(SymbolicSet::finite({3, 7}), 2), std::nullopt);
}

TEST(Space, Enumerate) {
  EXPECT_EQ(enumerate(evens(), 7), (std::vector<Natural>{0, 2, 4, 6}));
  EXPECT_TRUE(enumerate(SymbolicSet::empty(), 100).empty());
  EXPECT_EQ(enumerate(SymbolicSet::make(1, {0}, {}, {3}), 5), (std::vector<Natural>{0, 1, 2, 4}));
}

TEST(Space, LiteralRoundTrip) {
  const SymbolicSet s = SymbolicSet::make(6, {1, 3, 5}, {0, 8}, {7});
  const std::string text = to_string(s);
  EXPECT_EQ(text, "mod 2 {1} + {0, 8} - {7}");
  EXPECT_EQ(parse_symbolic_set(text), s);
  EXPECT_EQ(to_string(SymbolicSet::empty()), "mod 1 {}");
  EXPECT_EQ(to_string(SymbolicSet::all()), "mod 1 {0}");
  EXPECT_EQ(parse_symbolic_set("mod 4 {0,2} - {4}"), SymbolicSet::make(2, {0}, {}, {4}));
  EXPECT_EQ(parse_symbolic_set("  mod 3 { } + { 2 }"), SymbolicSet::finite({2}));
}

TEST(Space, LiteralErrors) {
  EXPECT_THROW(parse_symbolic_set("mod 0 {}"), ParseError);
  EXPECT_THROW(parse_symbolic_set("mod 3 {3}"), ParseError);
  EXPECT_THROW(parse_symbolic_set("mod 3 {1"), ParseError);
  EXPECT_THROW(parse_symbolic_set("mod 3 {1} x"), ParseError);
  try {
    parse_symbolic_set("mod 3 {1,}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 10u);
  }
}

TEST(SpaceProperty, AlgebraAgreesWithPointwiseLogic) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 400; ++trial) {
    const oracle::RawSet ra = oracle::random_raw(rng, 12, 8, 40);
    const oracle::RawSet rb = oracle::random_raw(rng, 12, 8, 40);
    const SymbolicSet a = from_raw(ra);
    const SymbolicSet b = from_raw(rb);
    const SymbolicSet u = set_union(a, b);
    const SymbolicSet i = intersect(a, b);
    const SymbolicSet d = difference(a, b);
    const SymbolicSet c = complement(a);
    const SymbolicSet cc = complement(c);
    const Natural horizon = 10 * std::lcm(ra.modulus, rb.modulus) + 41;
    for (Natural x = 0; x < horizon; ++x) {
      const bool ia = ra.contains(x);
      const bool ib = rb.contains(x);
      ASSERT_EQ(contains(a, x), ia);
      ASSERT_EQ(contains(u, x), ia || ib);
      ASSERT_EQ(contains(i, x), ia && ib);
      ASSERT_EQ(contains(d, x), ia && !ib);
      ASSERT_EQ(contains(c, x), !ia);
      ASSERT_EQ(contains(cc, x), ia);
    }
    EXPECT_EQ(cc, a);
  }
}

TEST(SpaceProperty, InvariantsAndOrderQueries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const oracle::RawSet r = oracle::random_raw(rng, 12, 8, 40);
    const SymbolicSet s = from_raw(r);
    const auto residues = s.residues();
    for (Natural p : s.plus()) ASSERT_FALSE(s.in_residue_class(p));
    for (Natural m : s.minus()) ASSERT_TRUE(s.in_residue_class(m));

    const Natural horizon = s.modulus() * (1 + s.max_exception().value_or(0)) + 1;
    const auto listed = enumerate(s, horizon);
    const Cardinality card = cardinality(s);
    if (card.is_finite()) {
      EXPECT_TRUE(residues.empty());
      EXPECT_EQ(listed.size(), card.count());
    } else {
      EXPECT_FALSE(residues.empty());
    }

    const auto least = min_element(s);
    if (least) {
      EXPECT_TRUE(contains(s, *least));
      for (Natural x = 0; x < *least; ++x) EXPECT_FALSE(contains(s, x));
    } else {
      EXPECT_TRUE(listed.empty());
      EXPECT_TRUE(is_empty(s));
    }

    for (std::size_t k = 0; k < listed.size(); ++k) {
      ASSERT_EQ(element_at(s, k), listed[k]);
      ASSERT_EQ(count_below(s, listed[k]), k);
    }
    EXPECT_EQ(parse_symbolic_set(to_string(s)), s);
    EXPECT_EQ(to_string(parse_symbolic_set(to_string(s))), to_string(s));
  }
}
