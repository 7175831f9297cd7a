#include <gtest/gtest.h>

#include <sstream>

#include "crosslimit/harness.hpp"
#include "support/fixtures.hpp"

using namespace crosslimit;

namespace {

std::string emitted(const Report& r, ReportFormat f) {
  std::ostringstream os;
  emit_report(r, f, os);
  return os.str();
}

}  // namespace

TEST(Classify, DiamondPositions) {
  for (const DiamondExpectation& e : diamond_expectations(8)) {
    const HierarchyVerdict v = classify(e.cls);
    EXPECT_EQ(v.txt_id.answer, e.txt_id) << e.name << " " << v.txt_id.note;
    EXPECT_EQ(v.ctr_id.answer, e.ctr_id) << e.name << " " << v.ctr_id.note;
    EXPECT_EQ(v.ctr_gen.answer, e.ctr_gen) << e.name << " " << v.ctr_gen.note;
    EXPECT_EQ(v.txt_gen.answer, e.txt_gen) << e.name;
    EXPECT_TRUE(diamond_violations(v).empty()) << e.name;
    for (const RunRecord& r : v.replays) EXPECT_TRUE(r.success()) << e.name << " " << r.stream;
  }
}

TEST(Classify, Mechanisms) {
  const HierarchyVerdict aug = classify(build_witness({WitnessKind::Augmented, 8}));
  EXPECT_EQ(aug.ctr_gen.mechanism, "safe-core");
  EXPECT_EQ(aug.ctr_id.witness["regime"], "N3-non-covering");
  EXPECT_FALSE(aug.truncation.empty());

  const HierarchyVerdict dis = classify(build_witness({WitnessKind::DisjointSupport}));
  EXPECT_EQ(dis.ctr_id.witness["regime"], "N2-disjoint");
  EXPECT_EQ(dis.ctr_gen.witness["intersection"], to_string(SymbolicSet::empty()));
  EXPECT_TRUE(dis.truncation.empty());

  const HierarchyVerdict co = classify(build_witness({WitnessKind::CoSingleton}));
  EXPECT_TRUE(co.txt_id.yes());
  EXPECT_EQ(co.ctr_id.mechanism, "absence-count");
  EXPECT_EQ(co.ctr_gen.mechanism, "eventual-core");

  const HierarchyVerdict six = classify(build_witness({WitnessKind::SixCell}));
  EXPECT_TRUE(six.ctr_gen.no());
  EXPECT_EQ(six.ctr_gen.witness["family"].size(), 3u);
}

TEST(Classify, PuncturedTellTaleWitnessReplays) {
  const auto P = build_witness({WitnessKind::Punctured, 8});
  const ClassifyBounds b;
  const HierarchyVerdict v = classify(P, b);
  ASSERT_TRUE(v.txt_id.no());
  const Hypothesis h = P.find(v.txt_id.witness["hypothesis"].get<std::string>());
  const Hypothesis g = P.find(v.txt_id.witness["contained_in"].get<std::string>());
  const auto T = v.txt_id.witness["candidate"].get<std::vector<Natural>>();
  EXPECT_EQ(T, enumerate(h.support, b.horizon));
  EXPECT_TRUE(is_subset(SymbolicSet::finite(T), g.support));
  EXPECT_TRUE(is_subset(g.support, h.support));
  EXPECT_NE(g.support, h.support);
}

TEST(Classify, BarrierReplaysThroughSharedPresentation) {
  for (const auto& w : {WitnessFamily{WitnessKind::DisjointSupport}, WitnessFamily{WitnessKind::Augmented, 5}}) {
    const auto H = build_witness(w);
    const HierarchyVerdict v = classify(H);
    ASSERT_TRUE(v.ctr_id.no());
    const auto ids = v.ctr_id.witness["pair"].get<std::vector<std::string>>();
    const Hypothesis h = H.find(ids[0]), g = H.find(ids[1]);
    EXPECT_FALSE(eliminable(h, g).eliminable);
    EXPECT_FALSE(eliminable(g, h).eliminable);
    const auto s = shared_presentation_pair(h, g);
    ASSERT_TRUE(s.has_value());
    EXPECT_TRUE(validate(s->take(40), h, 0).clean());
    EXPECT_TRUE(validate(s->take(40), g, 0).clean());
  }
}

TEST(Classify, FiniteDimensionMechanism) {
  const auto T = fixtures::triangle_class({0}, {4});
  const HierarchyVerdict v = classify(T);
  EXPECT_TRUE(v.ctr_gen.yes());
  EXPECT_EQ(v.ctr_gen.mechanism, "finite-dimension");
  EXPECT_EQ(v.ctr_gen.witness["d"], 1);
  EXPECT_TRUE(diamond_violations(v).empty());
}

TEST(Classify, FiniteSupportsLeaveTextGenerationUnknown) {
  const HypothesisClass H({{"a", SymbolicSet::finite({0, 1})}, {"b", SymbolicSet::finite({1, 2})}});
  const HierarchyVerdict v = classify(H);
  EXPECT_FALSE(v.uus);
  EXPECT_EQ(v.txt_gen.answer, Answer::Unknown);
  EXPECT_TRUE(v.txt_id.yes());
}

TEST(Classify, ConsistencyFilterCatchesBadVerdicts) {
  HierarchyVerdict v;
  v.uus = true;
  v.ctr_id.answer = Answer::Yes;
  v.txt_id.answer = Answer::No;
  v.ctr_gen.answer = Answer::No;
  EXPECT_GE(diamond_violations(v).size(), 3u);
  v.ctr_id.answer = Answer::No;
  v.txt_id.answer = Answer::Yes;
  EXPECT_EQ(diamond_violations(v), std::vector<std::string>{"UUS class outside TxtGen"});
}

TEST(Reproduce, AllExamplesMatch) {
  for (const std::string& id : example_ids()) {
    const Report r = reproduce(id);
    EXPECT_TRUE(r.ok()) << id << ": " << detail::join(r.diffs, "; ");
  }
  EXPECT_THROW(reproduce("fig9"), Error);
}

TEST(Reproduce, Ex61Numbers) {
  const Report r = reproduce("ex61");
  EXPECT_EQ(r.body["absence_counts"].dump(), R"({"0":4,"1":5,"2":5,"3":1,"4":4,"5":5})");
  EXPECT_EQ(r.body["output"], "h_3");
  EXPECT_EQ(r.runs.size(), 4u);
}

TEST(Reproduce, Deterministic) {
  for (const std::string& id : example_ids()) {
    EXPECT_EQ(emitted(reproduce(id), ReportFormat::Json), emitted(reproduce(id), ReportFormat::Json)) << id;
  }
}

TEST(Report, Formats) {
  const Report r = reproduce("ex61");
  const Json j = Json::parse(emitted(r, ReportFormat::Json));
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["ok"], true);
  EXPECT_NE(emitted(r, ReportFormat::CsvTrace).find("step,output,correct,state"), std::string::npos);
  EXPECT_EQ(emitted(r, ReportFormat::TextSummary).rfind("ex61: ok", 0), 0u);
  EXPECT_EQ(parse_report_format("csv-trace"), ReportFormat::CsvTrace);
  EXPECT_THROW(parse_report_format("xml"), Error);
  EXPECT_THROW(emit_report(r, ReportFormat::Json, std::string("/nonexistent/dir/report.json")), Error);

  Report bad;
  bad.title = "t";
  bad.expect(false, "something differs");
  EXPECT_FALSE(bad.ok());
  EXPECT_NE(emitted(bad, ReportFormat::TextSummary).find("diff: something differs"), std::string::npos);
}
