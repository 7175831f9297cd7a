#pragma once

// Diamond-hierarchy classification with witnesses, reproductions of the
// worked examples, and report emission.

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crosslimit/robust.hpp"

namespace crosslimit {

using Json = nlohmann::ordered_json;

enum class Answer { Yes, No, Unknown };

inline const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "Yes";
    case Answer::No:
      return "No";
    case Answer::Unknown:
      return "Unknown";
  }
  return "?";
}

struct Judgement {
  Answer answer = Answer::Unknown;
  std::string mechanism;
  Json witness = Json::object();
  std::string note;

  bool yes() const noexcept { return answer == Answer::Yes; }
  bool no() const noexcept { return answer == Answer::No; }
};

struct HierarchyVerdict {
  std::string class_name;
  std::string truncation;  // empty for finite classes
  bool uus = false;
  Judgement ctr_id;
  Judgement txt_id;
  Judgement ctr_gen;
  Judgement txt_gen;
  std::vector<RunRecord> replays;
};

struct ClassifyBounds {
  Natural horizon = 24;
  std::size_t tail_listing = 4;   // tail members added to the listing for pair and family checks
  std::size_t family_bound = 3;
  std::size_t dimension_size = 6;
  std::size_t replay_steps = 80;
  std::size_t replay_window = 20;
  std::size_t replay_members = 6;
};

// ---------------------------------------------------------------------------
// JSON helpers

inline Json to_json(const Pair& p) { return Json::array({p.lo, p.hi}); }

inline Json to_json(const EdgeSet& E) {
  Json out = Json::array();
  for (const Pair& p : E) out.push_back(to_json(p));
  return out;
}

inline Json to_json(const TellTaleFamily& T) {
  Json out = Json::object();
  for (const auto& [id, t] : T) out[id] = t;
  return out;
}

inline Json to_json(const Judgement& j) {
  Json out{{"answer", to_string(j.answer)}};
  if (!j.mechanism.empty()) out["mechanism"] = j.mechanism;
  if (!j.witness.empty()) out["witness"] = j.witness;
  if (!j.note.empty()) out["note"] = j.note;
  return out;
}

inline Json to_json(const RunRecord& r) {
  Json out{{"learner", r.learner}, {"stream", r.stream},   {"target", r.target},
           {"steps", r.steps},     {"window", r.window},   {"success", r.success()},
           {"final_output", r.final_output()}};
  out["converged_at"] = r.converged_at ? Json(*r.converged_at) : Json(nullptr);
  return out;
}

inline Json to_json(const HierarchyVerdict& v) {
  Json out{{"class", v.class_name}};
  if (!v.truncation.empty()) out["truncation"] = v.truncation;
  out["uus"] = v.uus;
  out["ctr_id"] = to_json(v.ctr_id);
  out["txt_id"] = to_json(v.txt_id);
  out["ctr_gen"] = to_json(v.ctr_gen);
  out["txt_gen"] = to_json(v.txt_gen);
  Json runs = Json::array();
  for (const RunRecord& r : v.replays) runs.push_back(to_json(r));
  out["replays"] = runs;
  return out;
}

inline Json to_json(const DimensionReport& d) {
  Json out{{"outcome", to_string(d.outcome)}, {"d", d.d}, {"witness", to_json(d.witness)},
           {"max_size", d.max_size},          {"vertex_horizon", d.vertex_horizon}, {"states", d.states}};
  if (!d.pattern_note.empty()) out["pattern_note"] = d.pattern_note;
  if (!d.note.empty()) out["note"] = d.note;
  return out;
}

// ---------------------------------------------------------------------------
// Classification

namespace detail {

inline bool uus_of(const HypothesisClass& H) {
  for (const Hypothesis& h : H.explicit_members()) {
    if (is_finite(h.support)) return false;
  }
  return !H.tail() || !is_finite(H.tail()->base);
}

inline bool comparable(const Hypothesis& h, const Hypothesis& g) {
  return is_subset(h.support, g.support) || is_subset(g.support, h.support);
}

inline bool co_singleton_shape(const HypothesisClass& H) {
  const auto& t = H.tail();
  return t && H.explicit_members().empty() && t->mode == TailMode::Remove && t->chunk == 1 &&
         t->base == SymbolicSet::all() && t->pool == SymbolicSet::all();
}

/// Intersection of every support in the class, tail included.
inline SymbolicSet global_intersection(const HypothesisClass& H) {
  SymbolicSet out = SymbolicSet::all();
  for (const Hypothesis& h : H.explicit_members()) out = intersect(out, h.support);
  if (const auto& t = H.tail()) {
    if (t->mode == TailMode::Add) {
      out = intersect(out, t->base);
    } else {
      out = intersect(out, difference(t->base, difference(t->pool, t->chunk_prefix(t->first))));
    }
  }
  return out;
}

/// Support whose points every member eventually contains: all but finitely
/// many of them lie in each support.
inline std::optional<SymbolicSet> eventual_core(const HypothesisClass& H) {
  std::vector<SymbolicSet> candidates;
  for (const Hypothesis& h : H.explicit_members()) candidates.push_back(h.support);
  if (H.tail()) candidates.push_back(H.tail()->base);
  for (const SymbolicSet& R : candidates) {
    if (is_finite(R)) continue;
    bool ok = true;
    for (const Hypothesis& h : H.explicit_members()) ok = ok && is_finite(difference(R, h.support));
    if (H.tail()) ok = ok && is_finite(difference(R, H.tail()->base));
    if (ok) return R;
  }
  return std::nullopt;
}

struct TxtIdResult {
  Judgement judgement;
  std::optional<TellTaleFamily> telltales;  // finite classes only
};

inline TxtIdResult judge_txt_id(const HypothesisClass& H, const ClassifyBounds& b) {
  TxtIdResult out;
  Judgement& j = out.judgement;
  const auto& tail = H.tail();
  if (!tail) {
    try {
      TellTaleFamily T = compute_telltales(H, b.horizon);
      if (!telltales_sound(H, T)) {
        j.note = "computed tell-tales are not sound";
        return out;
      }
      j = {Answer::Yes, "telltales", to_json(T), {}};
      out.telltales = std::move(T);
    } catch (const Error& e) {
      j.note = e.what();
    }
    return out;
  }

  if (tail->mode == TailMode::Remove) {
    for (const Hypothesis& h : H.explicit_members()) {
      if (h.support != tail->base) continue;
      // Any finite T ⊆ supp(h) misses the chunks beyond it, so a tail member
      // strictly inside h contains T. Shown for T = supp(h) below the horizon.
      const std::size_t below = count_below(tail->pool, b.horizon);
      const std::size_t first_clear = std::max(tail->first, (below + tail->chunk - 1) / tail->chunk);
      const Hypothesis g = tail->member(first_clear);
      const std::vector<Natural> T = enumerate(h.support, b.horizon);
      if (!is_subset(SymbolicSet::finite(T), g.support) || !is_subset(g.support, h.support) ||
          g.support == h.support) {
        j.note = "tail member " + g.id + " does not witness the missing tell-tale";
        return out;
      }
      j = {Answer::No, "no-telltale",
           Json{{"hypothesis", h.id}, {"candidate", T}, {"contained_in", g.id}, {"horizon", b.horizon}},
           "every finite subset of supp(" + h.id + ") lies in some tail member strictly inside it"};
      return out;
    }
    if (H.explicit_members().empty()) {
      j = {Answer::Yes, "telltales", Json{{"tail", "empty tell-tales; members pairwise incomparable"}}, {}};
      return out;
    }
    j.note = "remove-tail class with explicit members is outside the decided cases";
    return out;
  }

  // Add tail: decided when the explicit members are subsets of the base or
  // themselves of the form base ∪ chunk.
  if (!is_empty(intersect(tail->pool, tail->base))) {
    j.note = "add-tail pool meets the base";
    return out;
  }
  std::vector<Hypothesis> inside;
  Json witness = Json::object();
  for (const Hypothesis& h : H.explicit_members()) {
    if (is_subset(h.support, tail->base)) {
      inside.push_back(h);
      continue;
    }
    const Natural x = *min_element(difference(h.support, tail->base));
    if (!tail->pool.contains(x) || h.support != tail->support(tail->chunk_of(x))) {
      j.note = h.id + " is neither inside the base nor a base-plus-chunk member";
      return out;
    }
    witness[h.id] = std::vector<Natural>{*min_element(tail->chunk_set(tail->chunk_of(x)))};
  }
  if (!inside.empty()) {
    try {
      for (const auto& [id, t] : compute_telltales(HypothesisClass(inside), b.horizon)) witness[id] = t;
    } catch (const Error& e) {
      j.note = e.what();
      return out;
    }
  }
  witness["tail"] = "least point of the member's chunk";
  j = {Answer::Yes, "telltales", witness, {}};
  return out;
}

struct Barrier {
  Hypothesis h;
  Hypothesis g;
  EliminabilityVerdict verdict;
};

/// First incomparable listed pair that is not an overlapping cover.
inline std::optional<Barrier> find_barrier(const std::vector<Hypothesis>& listing) {
  for (std::size_t i = 0; i < listing.size(); ++i) {
    for (std::size_t k = i + 1; k < listing.size(); ++k) {
      const Hypothesis& h = listing[i];
      const Hypothesis& g = listing[k];
      if (comparable(h, g) || overlapping_cover(h, g)) continue;
      return Barrier{h, g, eliminable(h, g)};
    }
  }
  return std::nullopt;
}

/// Shared presentation of the pair validated on a prefix, confirming mutual
/// non-eliminability.
inline bool replay_barrier(const Barrier& b, std::size_t steps) {
  if (b.verdict.eliminable || eliminable(b.g, b.h).eliminable) return false;
  const auto s = shared_presentation_pair(b.h, b.g);
  if (!s) return false;
  const Prefix p = s->take(steps);
  return validate(p, b.h, 0).clean() && validate(p, b.g, 0).clean();
}

struct Obstruction {
  std::vector<Hypothesis> family;
  SymbolicSet intersection;
  Stream stream;
};

inline std::optional<Obstruction> find_obstruction(const std::vector<Hypothesis>& listing, std::size_t bound,
                                                   std::size_t replay_steps) {
  const std::size_t n = listing.size();
  for (std::size_t r = 2; r <= std::min(bound, n); ++r) {
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    for (;;) {
      std::vector<Hypothesis> family;
      SymbolicSet inter = SymbolicSet::all();
      for (std::size_t i : idx) {
        family.push_back(listing[i]);
        inter = intersect(inter, listing[i].support);
      }
      if (is_finite(inter)) {
        if (auto s = shared_presentation_family(family)) {
          const Prefix p = s->take(replay_steps);
          bool clean = true;
          for (const Hypothesis& h : family) clean = clean && validate(p, h, 0).clean();
          if (clean) return Obstruction{family, inter, *s};
        }
      }
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t k = i; k < r; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return std::nullopt;
}

inline std::vector<Hypothesis> replay_targets(const std::vector<Hypothesis>& listing, std::size_t limit) {
  return {listing.begin(), listing.begin() + std::min(limit, listing.size())};
}

}  // namespace detail

/// Diamond inclusions a verdict must respect; empty when consistent.
inline std::vector<std::string> diamond_violations(const HierarchyVerdict& v) {
  std::vector<std::string> out;
  if (v.ctr_id.yes() && !v.txt_id.yes()) out.push_back("CtrId without TxtId");
  if (v.ctr_id.yes() && !v.ctr_gen.yes()) out.push_back("CtrId without CtrGen");
  if (v.ctr_gen.no() && v.ctr_id.yes()) out.push_back("CtrGen obstruction on a CtrId class");
  if (v.uus && (v.ctr_gen.yes() || v.txt_id.yes()) && !v.txt_gen.yes()) out.push_back("UUS class outside TxtGen");
  if (v.txt_id.no() && v.ctr_id.yes()) out.push_back("CtrId class with a tell-tale failure");
  return out;
}

inline HierarchyVerdict classify(const HypothesisClass& H, const ClassifyBounds& b = {}) {
  HierarchyVerdict v;
  v.class_name = H.name();
  v.uus = detail::uus_of(H);
  const std::vector<Hypothesis> listing = H.listing(b.tail_listing);
  if (H.tail()) {
    v.truncation = std::to_string(H.explicit_size()) + " explicit members; pair and family checks list " +
                   std::to_string(listing.size()) + " members";
  }
  const std::vector<Hypothesis> targets = detail::replay_targets(listing, b.replay_members);

  auto replay = [&](auto make) {
    bool ok = true;
    for (const Hypothesis& h : targets) {
      for (const Stream& s : {canonical_contrastive(h), random_contrastive(h, 1)}) {
        RunRecord r = run(make(), s, h, b.replay_steps, b.replay_window);
        ok = ok && r.success();
        v.replays.push_back(std::move(r));
      }
    }
    return ok;
  };

  // Text identification.
  detail::TxtIdResult txt = detail::judge_txt_id(H, b);
  v.txt_id = txt.judgement;

  // Contrastive identification.
  if (auto barrier = detail::find_barrier(listing)) {
    if (detail::replay_barrier(*barrier, b.replay_steps)) {
      v.ctr_id = {Answer::No, "barrier",
                  Json{{"pair", {barrier->h.id, barrier->g.id}},
                       {"regime", to_string(barrier->verdict.regime)},
                       {"common_pair", to_string(barrier->verdict.witness)}},
                  "mutually non-eliminable, so both share a presentation"};
    } else {
      v.ctr_id.note = "barrier pair " + barrier->h.id + "," + barrier->g.id + " failed replay";
    }
  } else if (v.txt_id.no()) {
    v.ctr_id = {Answer::No, "no-telltale", v.txt_id.witness, "contrastive identification implies text identification"};
  } else if (v.txt_id.yes() && !H.tail()) {
    if (replay([&] { return eligibility_identifier(H, *txt.telltales); })) {
      v.ctr_id = {Answer::Yes, "eligibility", Json{{"telltales", to_json(*txt.telltales)}}, {}};
    } else {
      v.ctr_id.note = "eligibility identifier failed replay";
    }
  } else if (v.txt_id.yes() && detail::co_singleton_shape(H)) {
    if (replay([] { return absence_count_identifier(); })) {
      v.ctr_id = {Answer::Yes, "absence-count", Json{{"rule", "output h_s for the point s missing from the fewest pairs"}},
                  {}};
    } else {
      v.ctr_id.note = "absence-count identifier failed replay";
    }
  } else {
    v.ctr_id.note = "no barrier among listed pairs, no decided identifier";
  }

  // Contrastive generation.
  const SymbolicSet inter = detail::global_intersection(H);
  std::optional<DimensionReport> dim;
  if (!is_finite(inter)) {
    if (replay([&] { return safe_core_generator(H); })) {
      v.ctr_gen = {Answer::Yes, "safe-core", Json{{"core", to_string(inter)}}, {}};
    } else {
      v.ctr_gen.note = "safe-core generator failed replay";
    }
  } else if (auto core = detail::eventual_core(H)) {
    const SymbolicSet R = *core;
    auto make = [R] {
      return eventual_core_generator([R](std::size_t m) { return *element_at(R, m - 1); }, to_string(R));
    };
    if (replay(make)) {
      v.ctr_gen = {Answer::Yes, "eventual-core", Json{{"core", to_string(R)}},
                   "each support misses finitely many core points"};
    } else {
      v.ctr_gen.note = "eventual-core generator failed replay";
    }
  } else if (!H.tail() && (dim = closure_dimension(H, b.dimension_size, b.horizon),
                           dim->outcome == DimensionReport::Outcome::Exact)) {
    const std::size_t d = dim->d;
    if (replay([&] { return closure_generator(H, d); })) {
      v.ctr_gen = {Answer::Yes, "finite-dimension", Json{{"d", d}, {"hollow", to_json(dim->witness)}}, {}};
    } else {
      v.ctr_gen.note = "closure generator failed replay";
    }
  }
  if (v.ctr_gen.answer == Answer::Unknown) {
    if (auto ob = detail::find_obstruction(listing, b.family_bound, b.replay_steps)) {
      std::vector<std::string> ids;
      for (const Hypothesis& h : ob->family) ids.push_back(h.id);
      v.ctr_gen = {Answer::No, "obstruction",
                   Json{{"family", ids},
                        {"intersection", to_string(ob->intersection)},
                        {"shared_stream", ob->stream.provenance()},
                        {"prefix", serialize(ob->stream.take(8))}},
                   "confusable family with finite common support"};
    } else if (v.ctr_gen.note.empty()) {
      v.ctr_gen.note = dim ? std::string("closure dimension ") + to_string(dim->outcome) + " " +
                                 std::to_string(dim->d) + "; no obstruction up to size " +
                                 std::to_string(b.family_bound)
                           : "no mechanism or obstruction found";
    }
  }

  // Text generation.
  if (v.uus) {
    v.txt_gen = {Answer::Yes, "UUS", Json{{"rule", "every support is infinite"}}, {}};
  } else {
    v.txt_gen.note = "some support is finite";
  }

  // Identification yields generation.
  if (v.ctr_id.yes() && v.ctr_gen.answer == Answer::Unknown) {
    v.ctr_gen = {Answer::Yes, "identify-then-generate", Json{{"identifier", v.ctr_id.mechanism}}, {}};
  }

  const auto bad = diamond_violations(v);
  if (!bad.empty()) throw Error("inconsistent verdict for " + H.name() + ": " + detail::join(bad, "; "));
  return v;
}

// ---------------------------------------------------------------------------
// Reports

struct Report {
  std::string title;
  Json body = Json::object();
  std::vector<RunRecord> runs;
  std::vector<std::string> diffs;
  std::optional<double> seconds;

  bool ok() const noexcept { return diffs.empty(); }

  void expect(bool condition, const std::string& what) {
    if (!condition) diffs.push_back(what);
  }
};

enum class ReportFormat { Json, CsvTrace, TextSummary };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv-trace") return ReportFormat::CsvTrace;
  if (s == "text-summary") return ReportFormat::TextSummary;
  throw Error("unknown format " + std::string(s) + " (json, csv-trace, text-summary)");
}

inline constexpr int kReportSchema = 1;

inline Json to_json(const Report& r) {
  Json out{{"schema", kReportSchema}, {"title", r.title}, {"ok", r.ok()}, {"body", r.body}};
  Json runs = Json::array();
  for (const RunRecord& run : r.runs) runs.push_back(to_json(run));
  out["runs"] = runs;
  out["diffs"] = r.diffs;
  if (r.seconds) out["seconds"] = *r.seconds;
  return out;
}

inline void emit_report(const Report& r, ReportFormat format, std::ostream& os) {
  switch (format) {
    case ReportFormat::Json:
      os << to_json(r).dump(2) << "\n";
      break;
    case ReportFormat::CsvTrace:
      for (const RunRecord& run : r.runs) {
        os << "# " << run.learner << " on " << run.stream << " target " << run.target << "\n" << run.csv();
      }
      break;
    case ReportFormat::TextSummary: {
      os << r.title << ": " << (r.ok() ? "ok" : "MISMATCH") << "\n";
      for (const auto& [key, value] : r.body.items()) {
        os << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
      for (const RunRecord& run : r.runs) {
        os << "  run " << run.learner << " / " << run.target << ": "
           << (run.converged_at ? "converged at " + std::to_string(*run.converged_at) : std::string("no convergence"))
           << "\n";
      }
      for (const std::string& d : r.diffs) os << "  diff: " << d << "\n";
      if (r.seconds) os << "  seconds: " << *r.seconds << "\n";
      break;
    }
  }
  if (!os) throw Error("failed to write report");
}

inline void emit_report(const Report& r, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  emit_report(r, format, out);
}

inline Report classification_report(const HypothesisClass& H, const ClassifyBounds& b = {}) {
  HierarchyVerdict v = classify(H, b);
  Report r;
  r.title = "classify " + H.name();
  r.body = to_json(v);
  r.body.erase("replays");
  r.body["bounds"] = Json{{"horizon", b.horizon},
                          {"tail_listing", b.tail_listing},
                          {"family_bound", b.family_bound},
                          {"dimension_size", b.dimension_size},
                          {"replay_steps", b.replay_steps},
                          {"replay_window", b.replay_window}};
  r.runs = std::move(v.replays);
  for (const RunRecord& run : r.runs) r.expect(run.success(), "replay " + run.learner + " on " + run.stream + " did not converge");
  return r;
}

// ---------------------------------------------------------------------------
// Worked examples

/// Incomparable pairs overlap and cover X; supersets are separated by finite tell-tales.
inline HypothesisClass overlapping_cover_example() {
  const SymbolicSet all = SymbolicSet::all();
  return HypothesisClass({{"c_0", difference(all, SymbolicSet::finite({0}))},
                          {"c_1", difference(all, SymbolicSet::finite({0, 1}))},
                          {"c_2", difference(all, SymbolicSet::finite({2}))},
                          {"c_3", set_union(SymbolicSet::residue_class(2, {0}), SymbolicSet::finite({1, 3}))}},
                         std::nullopt, true, "overlapping-cover");
}

/// Pairs avoiding 3, used as adversarial insertions against h_3.
inline std::vector<Injection> example_61_injections(std::size_t k) {
  std::vector<Injection> out;
  Natural a = 0;
  for (std::size_t i = 0; i < k; ++i, ++a) {
    if (a == 3) ++a;
    out.push_back({3 + 2 * i, Pair::of(a, a + 4)});
  }
  return out;
}

inline Stream example_61_stream(std::size_t k) {
  return corrupt(canonical_contrastive(AbsenceCountIdentifier::member(3)), example_61_injections(k));
}

inline Report reproduce_ex61() {
  Report r;
  r.title = "ex61";
  AbsenceCountIdentifier I;
  const Prefix p = example_61_stream(1).take(6);
  for (const Item& item : p.items) I.observe(item);
  const std::map<Natural, std::size_t> expected{{0, 4}, {1, 5}, {2, 5}, {3, 1}, {4, 4}, {5, 5}};
  Json counts = Json::object();
  for (const auto& [x, a] : I.absence_counts()) counts[std::to_string(x)] = a;
  r.body["prefix"] = serialize(p);
  r.body["absence_counts"] = counts;
  r.body["output"] = I.output().id;
  r.expect(I.absence_counts() == expected, "absence counts " + counts.dump() + " differ from {0:4,1:5,2:5,3:1,4:4,5:5}");
  r.expect(I.output().id == "h_3", "output " + I.output().id + " is not h_3");

  const Hypothesis target = AbsenceCountIdentifier::member(3);
  Json budgets = Json::object();
  for (std::size_t k : {0, 1, 3, 5}) {
    const Stream s = example_61_stream(k);
    AbsenceCountIdentifier probe;
    std::size_t worst = 0;
    for (std::size_t t = 1; t <= 200; ++t) {
      probe.observe(s.item(t));
      const auto a = probe.absence_counts();
      if (auto it = a.find(3); it != a.end()) worst = std::max(worst, it->second);
    }
    RunRecord run_k = run(absence_count_identifier(), s, target, 200, 50);
    r.expect(validate(s.take(200), target, 0).budget_ok(k), "budget " + std::to_string(k) + " stream exceeds its budget");
    r.expect(run_k.success() && run_k.final_output() == "h_3", "budget " + std::to_string(k) + " run does not converge to h_3");
    r.expect(worst <= k, "budget " + std::to_string(k) + ": a_n(3) reached " + std::to_string(worst));
    budgets[std::to_string(k)] = Json{{"converged_at", run_k.converged_at ? Json(*run_k.converged_at) : Json(nullptr)},
                                      {"max_absence_of_3", worst}};
    r.runs.push_back(std::move(run_k));
  }
  r.body["budgets"] = budgets;

  // Crossing edges of a co-singleton form a star at the missing point.
  std::vector<Pair> star;
  for (Natural x = 0; x < 8; ++x) {
    for (Natural y = x + 1; y < 8; ++y) {
      if (delta_contains(target, {x, y})) star.push_back({x, y});
    }
  }
  bool is_star = star.size() == 7;
  for (const Pair& e : star) is_star = is_star && e.has(3);
  r.body["star_below_8"] = star.size();
  r.expect(is_star, "crossing edges of h_3 below 8 are not the star at 3");
  return r;
}

inline Report reproduce_fig1() {
  Report r;
  r.title = "fig1";
  // u1..u4 are the points 0..3.
  const Hypothesis h{"h", SymbolicSet::finite({0, 1})};
  const Hypothesis g{"g", SymbolicSet::finite({0, 2})};
  const std::vector<Pair> edges = gamma_edges(h, g, 4);
  const SymbolicSet V = gamma_vertex_set(h, g);
  Json e = Json::array();
  for (const Pair& p : edges) e.push_back(to_json(p));
  r.body["supports"] = Json{{"h", "{u1,u2}"}, {"g", "{u1,u3}"}, {"embedding", "u_i = i-1"}};
  r.body["gamma_edges"] = e;
  r.body["vertex_set"] = to_string(V);
  r.expect(edges == std::vector<Pair>{{0, 3}, {1, 2}}, "edges " + e.dump() + " differ from {{u1,u4},{u2,u3}}");
  for (Natural x = 0; x < 4; ++x) r.expect(V.contains(x), "u" + std::to_string(x + 1) + " is not a vertex");
  return r;
}

inline Report reproduce_exD2(const ClassifyBounds& b = {}) {
  Report r;
  r.title = "exD2";
  const HypothesisClass S = build_witness({WitnessKind::SixCell});
  const auto& F = S.explicit_members();
  const PatternCells cells = pattern_cells(F);
  Json patterns = Json::object();
  const std::vector<std::string> expected{"100", "010", "001", "110", "101", "011"};
  for (Natural x = 0; x < 6; ++x) {
    const std::string pat = cells.pattern(cells.pattern_of(F, x));
    patterns[std::to_string(x)] = pat;
    r.expect(pat == expected[x], "residue " + std::to_string(x) + " has pattern " + pat);
  }
  r.body["patterns"] = patterns;

  const auto shared = shared_presentation_family(F);
  r.expect(shared.has_value(), "no shared presentation");
  if (shared) {
    const Prefix p = shared->take(60);
    for (const Hypothesis& h : F) r.expect(validate(p, h, 0).clean(), "shared prefix invalid for " + h.id);
    r.body["shared_prefix"] = serialize(shared->take(6));
  }
  const SymbolicSet triple = intersect(intersect(F[0].support, F[1].support), F[2].support);
  r.body["triple_intersection"] = to_string(triple);
  r.expect(is_empty(triple), "triple intersection is not empty");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = i + 1; k < 3; ++k) {
      const Cardinality c = cardinality(intersect(F[i].support, F[k].support));
      r.body["pair_" + F[i].id + "_" + F[k].id] = c.to_string();
      r.expect(c.is_infinite(), F[i].id + " and " + F[k].id + " have a finite intersection");
    }
  }
  const HierarchyVerdict v = classify(S, b);
  r.body["ctr_gen"] = to_json(v.ctr_gen);
  r.expect(v.ctr_gen.no() && v.ctr_gen.mechanism == "obstruction" && v.ctr_gen.witness["family"].size() == 3,
           "obstruction does not fire with the size-3 family");
  return r;
}

struct DiamondExpectation {
  std::string name;
  HypothesisClass cls;
  Answer txt_id, ctr_id, ctr_gen, txt_gen;
  std::string ctr_gen_mechanism;  // empty: not checked
  std::string ctr_id_regime;      // empty: not checked
};

inline std::vector<DiamondExpectation> diamond_expectations(std::size_t M = 8) {
  return {
      {"disjoint", build_witness({WitnessKind::DisjointSupport}), Answer::Yes, Answer::No, Answer::No, Answer::Yes,
       "obstruction", to_string(Regime::Disjoint)},
      {"punctured", build_witness({WitnessKind::Punctured, M}), Answer::No, Answer::No, Answer::Yes, Answer::Yes,
       "eventual-core", ""},
      {"augmented", build_witness({WitnessKind::Augmented, M}), Answer::Yes, Answer::No, Answer::Yes, Answer::Yes,
       "safe-core", to_string(Regime::NonCovering)},
      {"overlapping-cover", overlapping_cover_example(), Answer::Yes, Answer::Yes, Answer::Yes, Answer::Yes, "", ""},
  };
}

inline Report reproduce_diamond(const ClassifyBounds& b = {}, std::size_t M = 8) {
  Report r;
  r.title = "diamond";
  for (const DiamondExpectation& e : diamond_expectations(M)) {
    HierarchyVerdict v = classify(e.cls, b);
    Json j = to_json(v);
    j.erase("replays");
    r.body[e.name] = j;
    auto check = [&](const char* what, const Judgement& got, Answer want) {
      r.expect(got.answer == want, e.name + " " + what + ": " + to_string(got.answer) + ", expected " + to_string(want));
    };
    check("txt_id", v.txt_id, e.txt_id);
    check("ctr_id", v.ctr_id, e.ctr_id);
    check("ctr_gen", v.ctr_gen, e.ctr_gen);
    check("txt_gen", v.txt_gen, e.txt_gen);
    if (!e.ctr_gen_mechanism.empty()) {
      r.expect(v.ctr_gen.mechanism == e.ctr_gen_mechanism,
               e.name + " ctr_gen mechanism " + v.ctr_gen.mechanism + ", expected " + e.ctr_gen_mechanism);
    }
    if (!e.ctr_id_regime.empty()) {
      const std::string regime = v.ctr_id.witness.value("regime", "");
      r.expect(regime == e.ctr_id_regime, e.name + " barrier regime " + regime + ", expected " + e.ctr_id_regime);
    }
    for (RunRecord& run : v.replays) {
      r.expect(run.success(), e.name + " replay " + run.learner + " on " + run.stream + " did not converge");
      r.runs.push_back(std::move(run));
    }
  }
  return r;
}

inline const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"fig1", "ex61", "exD2", "diamond"};
  return ids;
}

inline Report reproduce(std::string_view id, const ClassifyBounds& b = {}) {
  if (id == "fig1") return reproduce_fig1();
  if (id == "ex61") return reproduce_ex61();
  if (id == "exD2") return reproduce_exD2(b);
  if (id == "diamond") return reproduce_diamond(b);
  throw Error("unknown example " + std::string(id) + " (fig1, ex61, exD2, diamond)");
}

}  // namespace crosslimit
