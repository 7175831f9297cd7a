#pragma once

// Defect sets, minimum-violation presentations and identification under
// corrupted presentations.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crosslimit/learners.hpp"

namespace crosslimit {

/// Pairs of a contrastive prefix that do not cross g.
inline std::size_t count_violations(const Prefix& prefix, const Hypothesis& g) {
  std::size_t n = 0;
  for (const Pair& p : prefix.pairs()) n += !crosses(g.support, p);
  return n;
}

struct DefectReport {
  SymbolicSet defect_set;  // positives of h with no common-crossing partner toward g
  Cardinality kappa = Cardinality::finite(0);
  std::optional<Stream> min_violation_stream;
};

/// The presentation for h that violates g's cut exactly kappa times: each
/// defect once against h's least negative, then every other positive with a
/// common-crossing partner, repeating a clean pair when the support runs out.
inline Stream min_violation_stream(const Hypothesis& h, const Hypothesis& g) {
  const Regions r = four_regions(h, g);
  const SymbolicSet defects = difference(h.support, gamma_vertex_set(r));
  const Cardinality kappa = cardinality(defects);
  if (kappa.is_infinite()) throw Error("defect set of " + h.id + " toward " + g.id + " is infinite");
  const SymbolicSet clean = difference(h.support, defects);
  if (is_empty(clean)) throw Error(h.id + " has no positive outside the defect set");
  const Natural z = *min_element(complement(h.support));
  const std::optional<Natural> partner_A = min_element(r.D);
  const std::optional<Natural> partner_B = min_element(r.C);
  std::vector<Natural> defect_list;
  for (std::size_t i = 0; i < kappa.count(); ++i) defect_list.push_back(*element_at(defects, i));
  const std::optional<std::size_t> clean_count =
      cardinality(clean).is_finite() ? std::optional<std::size_t>(cardinality(clean).count()) : std::nullopt;
  auto pair_for = [=](Natural x) {
    return Pair::of(x, r.A.contains(x) ? *partner_A : *partner_B);
  };
  return Stream(
      StreamKind::Contrastive,
      [=](std::size_t t) -> Item {
        if (t <= defect_list.size()) return Pair::of(defect_list[t - 1], z);
        std::size_t k = t - defect_list.size() - 1;
        if (clean_count && k >= *clean_count) k = 0;
        return pair_for(*element_at(clean, k));
      },
      "min-violation(" + h.id + " against " + g.id + ")");
}

inline DefectReport defect(const Hypothesis& h, const Hypothesis& g) {
  DefectReport report;
  report.defect_set = difference(h.support, gamma_vertex_set(h, g));
  report.kappa = cardinality(report.defect_set);
  if (report.kappa.is_finite()) report.min_violation_stream = min_violation_stream(h, g);
  return report;
}

struct ForcedViolationReport {
  bool ok = true;
  std::size_t defects_below = 0;            // |defect set ∩ [0, horizon)|
  std::vector<std::size_t> trial_violations;  // per trial, against g
  std::vector<std::size_t> trial_covered;     // defects below the horizon each trial covered
  std::optional<std::size_t> constructed_violations;
  std::string note;
};

/// Checks that every clean trial for h pays one violation of g per covered
/// defect below the horizon, and that the constructed stream pays exactly kappa.
inline ForcedViolationReport verify_forced_violations(const Hypothesis& h, const Hypothesis& g,
                                                      const std::vector<Stream>& trials, Natural horizon,
                                                      std::size_t steps) {
  ForcedViolationReport out;
  const DefectReport d = defect(h, g);
  const std::vector<Natural> below = enumerate(d.defect_set, horizon);
  out.defects_below = below.size();
  for (const Stream& trial : trials) {
    const Prefix p = trial.take(steps);
    if (!validate(p, h, 0).clean()) throw Error("trial " + trial.provenance() + " is not a clean presentation for " + h.id);
    const std::set<Natural> seen = seen_elements(p);
    std::size_t covered = 0;
    for (Natural x : below) covered += seen.count(x);
    const std::size_t violations = count_violations(p, g);
    out.trial_covered.push_back(covered);
    out.trial_violations.push_back(violations);
    if (violations < covered) {
      out.ok = false;
      out.note += trial.provenance() + " covered " + std::to_string(covered) + " defects with only " +
                  std::to_string(violations) + " violations; ";
    }
  }
  if (d.min_violation_stream) {
    const std::size_t kappa = d.kappa.count();
    const std::size_t violations = count_violations(d.min_violation_stream->take(std::max(steps, kappa)), g);
    out.constructed_violations = violations;
    if (violations != kappa) {
      out.ok = false;
      out.note += "constructed stream has " + std::to_string(violations) + " violations, kappa is " +
                  std::to_string(kappa) + "; ";
    }
  }
  return out;
}

/// Position (1-based) of the first pair containing each defect below the horizon.
inline std::map<Natural, std::size_t> first_covering_positions(const Prefix& prefix, const SymbolicSet& defects,
                                                               Natural horizon) {
  std::map<Natural, std::size_t> out;
  const std::vector<Pair> pairs = prefix.pairs();
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    for (Natural x : {pairs[t].lo, pairs[t].hi}) {
      if (x < horizon && defects.contains(x) && !out.count(x)) out[x] = t + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block classes

/// For a block class: latches onto the first block whose k+1 points have all
/// appeared in the text and outputs its hypothesis.
class BlockTextIdentifier {
 public:
  explicit BlockTextIdentifier(const HypothesisClass& H)
      : H_(std::make_shared<const HypothesisClass>(H)) {
    const auto& tail = H.tail();
    if (!tail || tail->mode != TailMode::Add || H.explicit_size() != tail->first) {
      throw Error("block identifier needs a block class");
    }
  }

  void observe(const Item& item) {
    const Natural x = std::get<Natural>(item);
    if (latched_ || !H_->tail()->pool.contains(x)) return;
    const std::size_t j = H_->tail()->chunk_of(x);
    auto& seen = seen_[j];
    seen.insert(x);
    if (seen.size() == H_->tail()->chunk) latched_ = j;
  }

  Guess output() const {
    if (!latched_) return detail::guess_of(H_->member(0), true);
    return detail::guess_of(H_->member(*latched_));
  }

  std::string name() const { return "block-text"; }
  StreamKind kind() const { return StreamKind::Text; }

  std::string state() const {
    std::vector<std::string> parts;
    for (const auto& [j, s] : seen_) parts.push_back(H_->tail()->id(j) + ":" + std::to_string(s.size()));
    return (latched_ ? "latched=" + H_->tail()->id(*latched_) + " " : std::string()) + detail::join(parts);
  }

 private:
  std::shared_ptr<const HypothesisClass> H_;
  std::map<std::size_t, std::set<Natural>> seen_;
  std::optional<std::size_t> latched_;
};

inline Identifier block_text_identifier(const HypothesisClass& H) { return BlockTextIdentifier(H); }

struct DemoRecord {
  std::string stream;
  std::vector<std::string> outputs;
  std::vector<std::string> failed;     // members the output sequence does not identify
  std::vector<std::string> identified;
};

/// Runs one identifier on a presentation shared by the whole family; since the
/// data are the same for every member, so are the outputs, and at most one
/// support can be the limit.
inline DemoRecord confusion_demo(const std::vector<Hypothesis>& family, Identifier learner, std::size_t steps,
                                 std::size_t window) {
  const auto shared = shared_presentation_family(family);
  if (!shared) throw Error("family has no shared presentation");
  DemoRecord out;
  out.stream = shared->provenance();
  std::vector<SymbolicSet> supports;
  for (std::size_t t = 1; t <= steps; ++t) {
    learner.observe(shared->item(t));
    const Guess g = learner.output();
    out.outputs.push_back(g.id);
    supports.push_back(g.support);
  }
  for (const Hypothesis& h : family) {
    bool stable = supports.size() >= window;
    for (std::size_t i = supports.size() - std::min(window, supports.size()); i < supports.size() && stable; ++i) {
      stable = supports[i] == h.support;
    }
    (stable ? out.identified : out.failed).push_back(h.id);
  }
  return out;
}

}  // namespace crosslimit
