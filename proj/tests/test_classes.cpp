#include <gtest/gtest.h>

#include <cstdio>

#include "crosslimit/classes.hpp"

using namespace crosslimit;

namespace {

const WitnessFamily kAll[] = {
    {WitnessKind::DisjointSupport}, {WitnessKind::Punctured, 5}, {WitnessKind::Augmented, 5},
    {WitnessKind::CoSingleton},     {WitnessKind::Block, 4, 2},  {WitnessKind::SixCell},
};

}  // namespace

TEST(Classes, DisjointSupport) {
  const auto H = build_witness({WitnessKind::DisjointSupport});
  ASSERT_EQ(H.size(), 2u);
  EXPECT_TRUE(is_empty(intersect(H.member(0).support, H.member(1).support)));
}

TEST(Classes, PuncturedMembers) {
  const auto H = build_witness({WitnessKind::Punctured, 3});
  const auto h2 = H.find("h_2");
  EXPECT_FALSE(contains(h2.support, 2));
  for (Natural x : {0, 4, 6, 8}) EXPECT_TRUE(contains(h2.support, x));
  // The family continues past the truncation.
  EXPECT_EQ(H.find("h_7").support, difference(H.find("h_inf").support, SymbolicSet::finite({12})));
  EXPECT_EQ(H.truncated().size(), 4u);
  EXPECT_FALSE(H.index_of("h_0").has_value());
}

TEST(Classes, SixCellIntersections) {
  const auto H = build_witness({WitnessKind::SixCell});
  const auto& m = H.explicit_members();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      EXPECT_TRUE(cardinality(intersect(m[i].support, m[j].support)).is_infinite());
    }
  }
  EXPECT_TRUE(is_empty(intersect(m[0].support, intersect(m[1].support, m[2].support))));
  // Every realized nonzero pattern has its complementary pattern realized.
  for (Natural r = 0; r < 6; ++r) {
    int pattern = 0;
    for (int i = 0; i < 3; ++i) pattern |= contains(m[i].support, r) << i;
    bool partner = false;
    for (Natural s = 0; s < 6; ++s) {
      int other = 0;
      for (int i = 0; i < 3; ++i) other |= contains(m[i].support, s) << i;
      partner = partner || other == (7 ^ pattern);
    }
    EXPECT_TRUE(partner);
  }
}

TEST(Classes, ProperAndUus) {
  EXPECT_FALSE(is_proper_nontrivial({"x", SymbolicSet::all()}));
  EXPECT_FALSE(is_proper_nontrivial({"e", SymbolicSet::empty()}));
  const auto co = build_witness({WitnessKind::CoSingleton});
  EXPECT_TRUE(is_proper_nontrivial(co.find("h_3")));
  EXPECT_TRUE(check_uus(build_witness({WitnessKind::Block, 2, 1})));
  EXPECT_FALSE(check_uus(HypothesisClass({{"f", SymbolicSet::finite({1})}})));
  for (const auto& family : kAll) {
    const auto H = build_witness(family);
    EXPECT_TRUE(check_uus(H)) << H.name();
    for (const auto& h : H.listing(6)) EXPECT_TRUE(is_proper_nontrivial(h)) << h.id;
  }
}

TEST(Classes, SingleExceptionDifferences) {
  for (WitnessKind kind : {WitnessKind::Punctured, WitnessKind::Augmented}) {
    const auto H = build_witness({kind, 6});
    const auto limit = H.find("h_inf");
    for (const auto& h : H.listing(4)) {
      if (h.id == "h_inf") continue;
      EXPECT_EQ(cardinality(symmetric_difference(h.support, limit.support)), Cardinality::finite(1));
    }
  }
}

TEST(Classes, BlockMembersMeetInBase) {
  const auto H = build_witness({WitnessKind::Block, 4, 3});
  const SymbolicSet A = SymbolicSet::residue_class(3, {0});
  const auto members = H.listing(3);
  for (std::size_t i = 0; i < members.size(); ++i) {
    EXPECT_EQ(cardinality(difference(members[i].support, A)), Cardinality::finite(4));
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      EXPECT_EQ(intersect(members[i].support, members[j].support), A);
    }
  }
  EXPECT_EQ(difference(H.find("h_1").support, A), SymbolicSet::finite({13, 16, 19, 22}));
}

TEST(Classes, InvalidParameters) {
  EXPECT_THROW(build_witness({WitnessKind::Punctured, 1}), Error);
  EXPECT_THROW(build_witness({WitnessKind::Block, 4, 0}), Error);
  EXPECT_THROW(parse_witness("wedge"), Error);
  EXPECT_THROW(parse_witness("punctured:x"), Error);
  EXPECT_EQ(parse_witness("block:2:5").budget, 2u);
  EXPECT_EQ(parse_witness("block:2:5").truncation, 5u);
  EXPECT_THROW(HypothesisClass({{"a", SymbolicSet::finite({1})}, {"a", SymbolicSet::finite({2})}}), Error);
}

TEST(Classes, JsonRoundTrip) {
  const auto H = build_witness({WitnessKind::SixCell});
  const std::string text = class_to_json(H);
  const auto back = class_from_json(text);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back.member(i), H.member(i));
  EXPECT_TRUE(back.uus_claimed());
  EXPECT_EQ(class_to_json(back), text);

  const std::string path = ::testing::TempDir() + "crosslimit_roundtrip.json";
  save_class(build_witness({WitnessKind::Punctured, 3}).truncated(), path);
  const auto loaded = load_class(path);
  EXPECT_EQ(loaded.size(), 4u);
  EXPECT_EQ(loaded.find("h_2").support, build_witness({WitnessKind::Punctured, 3}).find("h_2").support);
  std::remove(path.c_str());
}

TEST(Classes, JsonErrors) {
  try {
    class_from_json("{\n  \"space_modulus\": 2,\n  \"hypotheses\": [ ,]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 19u);
  }
  auto message = [](const std::string& text) {
    try {
      class_from_json(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"space_modulus": 2, "hypotheses": [{"id": "full", "support": "mod 1 {0}"}]})")
                .find("full"),
            std::string::npos);
  EXPECT_NE(message(R"({"space_modulus": 2, "uus": true, "hypotheses": [{"id": "tiny", "support": "mod 1 {} + {4}"}]})")
                .find("tiny"),
            std::string::npos);
  EXPECT_NE(message(R"({"space_modulus": 2, "hypotheses": [{"id": "odd3", "support": "mod 3 {1}"}]})")
                .find("odd3"),
            std::string::npos);
  EXPECT_NE(message(R"({"space_modulus": 2, "hypotheses": [{"id": "bad", "support": "mod 2 {5}"}]})")
                .find("bad"),
            std::string::npos);
  EXPECT_FALSE(message(R"({"space_modulus": 0, "hypotheses": []})").empty());
}
