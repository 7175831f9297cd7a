// crosslimit: command-line front end for the library.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance/acceptance_suite.hpp"
#include "crosslimit/harness.hpp"

using namespace crosslimit;

namespace {

struct Globals {
  Natural horizon = 24;
  std::size_t truncation = 8;
  bool truncation_given = false;
  std::uint64_t seed = 1;
  std::string format = "json";
  bool format_given = false;
  std::string out;
};

struct ClassInput {
  std::string path;
  std::string witness;

  HypothesisClass load(const Globals& g) const {
    if (!path.empty() && !witness.empty()) throw Error("give either --class or --witness, not both");
    if (!path.empty()) return load_class(path);
    if (witness.empty()) throw Error("a class is required (--class <path> or --witness <name>)");
    WitnessFamily w = parse_witness(witness);
    const auto colons = std::count(witness.begin(), witness.end(), ':');
    const bool has_m = w.kind == WitnessKind::Block ? colons >= 2 : colons >= 1;
    if (g.truncation_given && !has_m) w.truncation = g.truncation;
    return build_witness(w);
  }
};

void add_class_options(CLI::App* cmd, ClassInput& in) {
  cmd->add_option("--class", in.path, "class-spec JSON file");
  cmd->add_option("--witness", in.witness, "witness class: disjoint, punctured[:M], augmented[:M], block:k[:M], "
                                           "co-singleton, six-cell");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

/// By id, or by position in the class enumeration when the text is a number.
Hypothesis resolve(const HypothesisClass& H, const std::string& key) {
  if (auto i = H.index_of(key)) return H.member(*i);
  if (!key.empty() && std::all_of(key.begin(), key.end(), ::isdigit)) return H.member(std::stoull(key));
  throw Error("no hypothesis " + key + " in class " + H.name());
}

std::pair<Hypothesis, Hypothesis> resolve_pair(const HypothesisClass& H, const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 2) throw Error("--pair needs two hypotheses separated by a comma");
  return {resolve(H, parts[0]), resolve(H, parts[1])};
}

/// Finite stand-in for learners that enumerate the whole class.
HypothesisClass finite_view(const HypothesisClass& H, const Globals& g, Report& r) {
  if (!H.tail()) return H;
  r.body["truncation"] = "tail listed to " + std::to_string(g.truncation) + " members";
  return HypothesisClass(H.listing(g.truncation), std::nullopt, H.uus_claimed(), H.name());
}

StreamKind parse_kind(const std::string& s) {
  if (s == "ctr" || s == "contrastive") return StreamKind::Contrastive;
  if (s == "text") return StreamKind::Text;
  if (s == "inf" || s == "informant") return StreamKind::Informant;
  throw Error("unknown stream kind " + s + " (ctr, text, inf)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// canonical | random[:seed] | file:<path> | shared:<id>,<id>,... | min-violation:<id>
Stream make_stream(const HypothesisClass& H, const Hypothesis& target, StreamKind kind, const std::string& spec,
                   const std::string& corruption, const Globals& g) {
  auto canonical = [&] {
    switch (kind) {
      case StreamKind::Text:
        return canonical_text(target);
      case StreamKind::Informant:
        return canonical_informant(target);
      case StreamKind::Contrastive:
        break;
    }
    return canonical_contrastive(target);
  };
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  auto need_contrastive = [&] {
    if (kind != StreamKind::Contrastive) throw Error("stream " + head + " is contrastive only");
  };
  std::optional<Stream> s;
  if (head == "canonical") {
    s = canonical();
  } else if (head == "random") {
    need_contrastive();
    s = random_contrastive(target, arg.empty() ? g.seed : std::stoull(arg));
  } else if (head == "file") {
    s = scripted(parse_prefix(read_file(arg), kind), canonical());
  } else if (head == "shared") {
    need_contrastive();
    std::vector<Hypothesis> family;
    for (const std::string& id : split(arg, ',')) family.push_back(resolve(H, id));
    auto shared = shared_presentation_family(family);
    if (!shared) throw Error("the family has no shared presentation");
    s = *shared;
  } else if (head == "min-violation") {
    need_contrastive();
    s = min_violation_stream(target, resolve(H, arg));
  } else {
    throw Error("unknown stream spec " + spec);
  }
  if (!corruption.empty()) s = corrupt(*s, parse_injections(corruption, kind));
  return *s;
}

struct LearnerOptions {
  std::string learner;
  std::string target;
  std::string stream = "canonical";
  std::string corruption;
  std::size_t steps = 100;
  std::size_t window = 20;
  bool trace = false;
  std::optional<std::size_t> dimension;
  std::size_t max_size = 8;
};

void add_run_options(CLI::App* cmd, LearnerOptions& o) {
  cmd->add_option("--learner", o.learner, "learner name")->required();
  cmd->add_option("--target", o.target, "target hypothesis id or index")->required();
  cmd->add_option("--stream", o.stream, "canonical | random[:seed] | file:<path> | shared:<ids> | min-violation:<id>")
      ->capture_default_str();
  cmd->add_option("--corrupt", o.corruption, "injections such as \"3:{0,4};7:{1,2}\"");
  cmd->add_option("--steps", o.steps)->capture_default_str();
  cmd->add_option("--window", o.window, "stability window for convergence")->capture_default_str();
  cmd->add_flag("--trace", o.trace, "per-step CSV trace");
}

Identifier make_identifier(const std::string& name, const HypothesisClass& H, const Globals& g, Report& r) {
  if (name == "eligibility" || name == "synthetic") {
    const HypothesisClass F = finite_view(H, g, r);
    Identifier I = eligibility_identifier(F, compute_telltales(F, g.horizon));
    return name == "synthetic" ? text_identifier_from_contrastive(std::move(I)) : I;
  }
  if (name == "gold-informant") return gold_informant_identifier(finite_view(H, g, r));
  if (name == "absence-count") return absence_count_identifier();
  if (name == "block-text") return block_text_identifier(H);
  throw Error("unknown identifier " + name + " (eligibility, synthetic, gold-informant, absence-count, block-text)");
}

Generator make_generator(const LearnerOptions& o, const HypothesisClass& H, const Globals& g, Report& r) {
  const std::string& name = o.learner;
  if (name == "closure") {
    std::size_t d = 0;
    if (o.dimension) {
      d = *o.dimension;
    } else {
      const DimensionReport dim = closure_dimension(H, o.max_size, g.horizon);
      if (dim.outcome != DimensionReport::Outcome::Exact) {
        throw Error(std::string("closure dimension is ") + to_string(dim.outcome) + "; pass --dimension");
      }
      d = dim.d;
    }
    r.body["dimension"] = d;
    return closure_generator(H, d);
  }
  if (name == "safe-core") return safe_core_generator(H);
  if (name == "eventual-core") {
    const auto core = detail::eventual_core(H);
    if (!core) throw Error("no eventual core found for " + H.name());
    const SymbolicSet R = *core;
    return eventual_core_generator([R](std::size_t m) { return *element_at(R, m - 1); }, to_string(R));
  }
  if (name == "identify-then-generate") {
    const HypothesisClass F = finite_view(H, g, r);
    return identify_then_generate(eligibility_identifier(F, compute_telltales(F, g.horizon)));
  }
  if (name.rfind("constant:", 0) == 0) return constant_generator(std::stoull(name.substr(9)));
  throw Error("unknown generator " + name +
              " (closure, safe-core, eventual-core, identify-then-generate, constant:<x>)");
}

int emit(const Report& r, const Globals& g, std::optional<ReportFormat> forced = std::nullopt) {
  const ReportFormat f = forced ? *forced : parse_report_format(g.format);
  if (g.out.empty()) {
    emit_report(r, f, std::cout);
  } else {
    emit_report(r, f, g.out);
  }
  if (!r.ok()) {
    for (const std::string& d : r.diffs) std::cerr << "mismatch: " << d << "\n";
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contrastive identification and generation in the limit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--horizon", g.horizon, "vertex / witness horizon")->capture_default_str();
  app.add_option_function<std::size_t>(
      "--truncation", [&](std::size_t m) { g.truncation = m, g.truncation_given = true; },
      "M for witness families and tail listings (default 8)");
  app.add_option("--seed", g.seed, "seed for random streams")->capture_default_str();
  app.add_option_function<std::string>(
      "--format", [&](const std::string& f) { g.format = f, g.format_given = true; },
      "json | csv-trace | text-summary (default json)");
  app.add_option("--out", g.out, "write the report to a file");

  std::function<int()> action;
  ClassInput cls;

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "place a class in the diamond hierarchy");
  add_class_options(classify_cmd, cls);
  std::size_t family_bound = 3;
  classify_cmd->add_option("--family-bound", family_bound, "largest obstruction family searched")
      ->capture_default_str();
  classify_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      ClassifyBounds b;
      b.horizon = g.horizon;
      b.family_bound = family_bound;
      const auto start = std::chrono::steady_clock::now();
      Report r = classification_report(H, b);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return emit(r, g);
    };
  });

  // dimension
  auto* dimension_cmd = app.add_subcommand("dimension", "search for the contrastive closure dimension");
  add_class_options(dimension_cmd, cls);
  std::size_t max_size = 8;
  dimension_cmd->add_option("--max-size", max_size, "largest hollow set searched")->capture_default_str();
  dimension_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      Report r;
      r.title = "dimension " + H.name();
      r.body = to_json(closure_dimension(H, max_size, g.horizon));
      if (auto p = pattern_dimension(H)) {
        r.body["pattern_dimension"] = p->value ? Json(*p->value) : Json("CountablyInfinite");
      }
      return emit(r, g);
    };
  });

  // defect
  auto* defect_cmd = app.add_subcommand("defect", "defect set and defect number of a pair");
  add_class_options(defect_cmd, cls);
  std::string pair;
  bool verify_defect = false;
  std::size_t defect_steps = 120;
  defect_cmd->add_option("--pair", pair, "h,g")->required();
  defect_cmd->add_flag("--verify", verify_defect, "check forced violations on sample streams");
  defect_cmd->add_option("--steps", defect_steps, "prefix length for --verify")->capture_default_str();
  defect_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      const auto [h, gg] = resolve_pair(H, pair);
      const DefectReport d = defect(h, gg);
      Report r;
      r.title = "defect " + h.id + " -> " + gg.id;
      r.body["h"] = h.id;
      r.body["g"] = gg.id;
      r.body["defect_set"] = to_string(d.defect_set);
      r.body["kappa"] = d.kappa.to_string();
      r.body["horizon"] = g.horizon;
      r.body["defects_below_horizon"] = enumerate(d.defect_set, g.horizon);
      if (d.min_violation_stream) {
        r.body["min_violation_prefix"] = serialize(d.min_violation_stream->take(d.kappa.count() + 6));
      }
      if (verify_defect) {
        std::vector<Stream> trials{canonical_contrastive(h)};
        for (std::uint64_t s = 0; s < 3; ++s) trials.push_back(random_contrastive(h, g.seed + s));
        const ForcedViolationReport f = verify_forced_violations(h, gg, trials, g.horizon, defect_steps);
        r.body["verify"] = Json{{"ok", f.ok},
                                {"defects_below", f.defects_below},
                                {"trial_violations", f.trial_violations},
                                {"trial_covered", f.trial_covered}};
        if (f.constructed_violations) r.body["verify"]["constructed_violations"] = *f.constructed_violations;
        r.expect(f.ok, f.note);
      }
      return emit(r, g);
    };
  });

  // regions / eliminable
  auto* regions_cmd = app.add_subcommand("regions", "four regions and the common crossing graph of a pair");
  add_class_options(regions_cmd, cls);
  regions_cmd->add_option("--pair", pair, "h,g")->required();
  regions_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      const auto [h, gg] = resolve_pair(H, pair);
      const Regions reg = four_regions(h, gg);
      Report r;
      r.title = "regions " + h.id + "," + gg.id;
      r.body = Json{{"A", to_string(reg.A)},
                    {"B", to_string(reg.B)},
                    {"C", to_string(reg.C)},
                    {"D", to_string(reg.D)},
                    {"gamma_vertex_set", to_string(gamma_vertex_set(reg))}};
      Json edges = Json::array();
      for (const Pair& p : gamma_edges(h, gg, g.horizon)) edges.push_back(to_json(p));
      r.body["gamma_edges_below_horizon"] = edges;
      return emit(r, g);
    };
  });

  auto* elim_cmd = app.add_subcommand("eliminable", "whether g can be eliminated from h's presentations");
  add_class_options(elim_cmd, cls);
  elim_cmd->add_option("--pair", pair, "h,g")->required();
  elim_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      const auto [h, gg] = resolve_pair(H, pair);
      Report r;
      r.title = "eliminable " + h.id + "," + gg.id;
      for (const auto& [a, b] : {std::pair{h, gg}, std::pair{gg, h}}) {
        const EliminabilityVerdict v = eliminable(a, b);
        r.body[b.id + " from " + a.id] =
            Json{{"eliminable", v.eliminable}, {"regime", to_string(v.regime)}, {"witness", to_string(v.witness)}};
      }
      if (!detail::comparable(h, gg)) r.body["overlapping_cover"] = overlapping_cover(h, gg);
      return emit(r, g);
    };
  });

  // shared
  auto* shared_cmd = app.add_subcommand("shared", "a presentation valid for a whole family");
  add_class_options(shared_cmd, cls);
  std::string family;
  std::size_t take = 20;
  shared_cmd->add_option("--family", family, "ids separated by commas")->required();
  shared_cmd->add_option("--take", take)->capture_default_str();
  shared_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      std::vector<Hypothesis> fam;
      for (const std::string& id : split(family, ',')) fam.push_back(resolve(H, id));
      Report r;
      r.title = "shared " + family;
      const PatternCells cells = pattern_cells(fam);
      Json realized = Json::object();
      for (std::size_t a = 0; a < cells.cells.size(); ++a) {
        if (!is_empty(cells.cells[a])) realized[cells.pattern(a)] = to_string(cells.cells[a]);
      }
      r.body["cells"] = realized;
      const auto s = shared_presentation_family(fam);
      if (!s) {
        r.body["shared"] = nullptr;
        r.body["unpaired_pattern"] = cells.pattern(*cells.unpaired_pattern());
      } else {
        const Prefix p = s->take(take);
        r.body["shared"] = serialize(p);
        for (const Hypothesis& h : fam) r.expect(validate(p, h, 0).clean(), "prefix invalid for " + h.id);
      }
      return emit(r, g);
    };
  });

  // stream
  auto* stream_cmd = app.add_subcommand("stream", "print a presentation prefix");
  add_class_options(stream_cmd, cls);
  std::string target, kind = "ctr", stream_spec = "canonical", corruption;
  stream_cmd->add_option("--target", target, "hypothesis id or index")->required();
  stream_cmd->add_option("--kind", kind, "ctr | text | inf")->capture_default_str();
  stream_cmd->add_option("--take", take)->capture_default_str();
  stream_cmd->add_option("--stream", stream_spec, "canonical | random[:seed] | file:<path> | shared:<ids> | "
                                                  "min-violation:<id>")
      ->capture_default_str();
  stream_cmd->add_option("--corrupt", corruption, "injections such as \"3:{0,4};7:{1,2}\"");
  stream_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      const Hypothesis h = resolve(H, target);
      const Stream s = make_stream(H, h, parse_kind(kind), stream_spec, corruption, g);
      const Prefix p = s.take(take);
      if (!g.format_given) {
        std::cout << serialize(p);
        return 0;
      }
      Report r;
      r.title = "stream " + s.provenance();
      r.body["target"] = h.id;
      r.body["provenance"] = s.provenance();
      r.body["prefix"] = serialize(p);
      r.body["xor_violations"] = validate(p, h, 0).xor_violations;
      return emit(r, g);
    };
  });

  // identify / generate
  LearnerOptions lo;
  auto* identify_cmd = app.add_subcommand("identify", "run an identifier on a presentation");
  add_class_options(identify_cmd, cls);
  add_run_options(identify_cmd, lo);
  identify_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      const Hypothesis h = resolve(H, lo.target);
      Report r;
      Identifier I = make_identifier(lo.learner, H, g, r);
      const Stream s = make_stream(H, h, I.kind(), lo.stream, lo.corruption, g);
      RunRecord rec = run(std::move(I), s, h, lo.steps, lo.window, lo.trace);
      r.title = "identify " + rec.learner;
      r.body["run"] = to_json(rec);
      r.runs.push_back(std::move(rec));
      return emit(r, g, lo.trace ? std::optional(ReportFormat::CsvTrace) : std::nullopt);
    };
  });

  auto* generate_cmd = app.add_subcommand("generate", "run a generator on a presentation");
  add_class_options(generate_cmd, cls);
  add_run_options(generate_cmd, lo);
  generate_cmd->add_option("--dimension", lo.dimension, "closure generator threshold d");
  generate_cmd->add_option("--max-size", lo.max_size, "dimension search bound when --dimension is absent")
      ->capture_default_str();
  generate_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      const Hypothesis h = resolve(H, lo.target);
      Report r;
      Generator G = make_generator(lo, H, g, r);
      const Stream s = make_stream(H, h, G.kind(), lo.stream, lo.corruption, g);
      RunRecord rec = run(std::move(G), s, h, lo.steps, lo.window, lo.trace);
      r.title = "generate " + rec.learner;
      r.body["run"] = to_json(rec);
      r.runs.push_back(std::move(rec));
      return emit(r, g, lo.trace ? std::optional(ReportFormat::CsvTrace) : std::nullopt);
    };
  });

  // corrupt-id
  auto* corrupt_cmd = app.add_subcommand("corrupt-id", "identification under a corruption budget");
  add_class_options(corrupt_cmd, cls);
  std::size_t budget = 1, steps = 200, window = 50;
  corrupt_cmd->add_option("--target", target, "hypothesis id or index")->required();
  corrupt_cmd->add_option("--budget", budget, "number of injected items")->capture_default_str();
  corrupt_cmd->add_option("--steps", steps)->capture_default_str();
  corrupt_cmd->add_option("--window", window)->capture_default_str();
  corrupt_cmd->callback([&] {
    action = [&] {
      const HypothesisClass H = cls.load(g);
      const Hypothesis h = resolve(H, target);
      Report r;
      std::optional<Stream> s;
      std::optional<Identifier> I;
      const auto& tail = H.tail();
      if (detail::co_singleton_shape(H)) {
        // Pairs that avoid the target's missing point.
        const Natural miss = *min_element(complement(h.support));
        std::vector<Injection> inj;
        for (Natural a = 0; inj.size() < budget; ++a) {
          if (a != miss && a + 4 != miss) inj.push_back({3 + 2 * inj.size(), Pair::of(a, a + 4)});
        }
        s = corrupt(canonical_contrastive(h), inj);
        I = absence_count_identifier();
      } else if (tail && tail->mode == TailMode::Add && H.explicit_size() == tail->first) {
        // Points of the next block.
        const std::size_t j = *H.index_of(h.id);
        const SymbolicSet other = tail->chunk_set(j + 1);
        std::vector<Injection> inj;
        for (std::size_t i = 0; i < budget; ++i) inj.push_back({1 + 2 * i, *element_at(other, i)});
        s = corrupt(canonical_text(h), inj);
        I = block_text_identifier(H);
      } else {
        throw Error("corrupt-id supports the co-singleton and block witnesses");
      }
      const ValidityReport valid = validate(s->take(steps), h, 0);
      RunRecord rec = run(std::move(*I), *s, h, steps, window, true);
      r.title = "corrupt-id " + h.id;
      r.body["budget"] = budget;
      r.body["xor_violations"] = valid.xor_violations;
      r.body["run"] = to_json(rec);
      r.expect(valid.budget_ok(budget), "stream exceeds the budget");
      r.runs.push_back(std::move(rec));
      return emit(r, g);
    };
  });

  // reproduce / verify
  auto* reproduce_cmd = app.add_subcommand("reproduce", "regenerate a worked example and diff it");
  std::string example;
  reproduce_cmd->add_option("example", example, "fig1 | ex61 | exD2 | diamond")->required();
  reproduce_cmd->callback([&] {
    action = [&] {
      ClassifyBounds b;
      b.horizon = g.horizon;
      return emit(reproduce(example, b), g);
    };
  });

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->callback([&] {
    action = [&] {
      const auto results = acceptance::run_suite(std::cout, g.seed == 1 ? acceptance::kDefaultSeed : g.seed);
      return acceptance::all_passed(results) ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
