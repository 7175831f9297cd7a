#pragma once

// Identifiers and generators behind a uniform step interface, plus a runner
// that records outputs and detects convergence.
//
// A learner consumes one stream item at a time. Identifiers answer with a
// Guess, generators with an Emission; both are value types that can be copied
// mid-run.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crosslimit/closure.hpp"

namespace crosslimit {

struct Guess {
  std::string id;
  SymbolicSet support;
  bool defaulted = false;  // no consistent candidate; the output is a convention
};

struct Emission {
  Natural x = 0;
  bool placeholder = false;  // nothing certified yet
};

template <class Out>
class Learner {
 public:
  template <class M>
  Learner(M model)  // NOLINT(google-explicit-constructor)
      : self_(std::make_unique<Model<M>>(std::move(model))) {}

  Learner(const Learner& o) : self_(o.self_->clone()) {}
  Learner& operator=(const Learner& o) {
    if (this != &o) self_ = o.self_->clone();
    return *this;
  }
  Learner(Learner&&) noexcept = default;
  Learner& operator=(Learner&&) noexcept = default;

  void observe(const Item& item) { self_->observe(item); }
  Out output() const { return self_->output(); }
  std::string name() const { return self_->name(); }
  std::string state() const { return self_->state(); }
  StreamKind kind() const { return self_->kind(); }

  /// The underlying model, when it has type M.
  template <class M>
  const M* as() const {
    auto* m = dynamic_cast<const Model<M>*>(self_.get());
    return m ? &m->model : nullptr;
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual std::unique_ptr<Concept> clone() const = 0;
    virtual void observe(const Item&) = 0;
    virtual Out output() const = 0;
    virtual std::string name() const = 0;
    virtual std::string state() const = 0;
    virtual StreamKind kind() const = 0;
  };

  template <class M>
  struct Model final : Concept {
    explicit Model(M m) : model(std::move(m)) {}
    std::unique_ptr<Concept> clone() const override { return std::make_unique<Model>(model); }
    void observe(const Item& item) override { model.observe(item); }
    Out output() const override { return model.output(); }
    std::string name() const override { return model.name(); }
    std::string state() const override { return model.state(); }
    StreamKind kind() const override { return model.kind(); }
    M model;
  };

  std::unique_ptr<Concept> self_;
};

using Identifier = Learner<Guess>;
using Generator = Learner<Emission>;

namespace detail {

inline Guess guess_of(const Hypothesis& h, bool defaulted = false) { return {h.id, h.support, defaulted}; }

inline std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

/// Least member of s outside `exclude`, if any.
inline std::optional<Natural> least_outside(const SymbolicSet& s, const std::set<Natural>& exclude) {
  std::size_t k = 0;
  for (;;) {
    auto x = element_at(s, k++);
    if (!x) return std::nullopt;
    if (!exclude.count(*x)) return x;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tell-tales

using TellTaleFamily = std::map<std::string, std::vector<Natural>>;

/// For each g, the least point of supp(g) ∖ supp(f) for every f with supp(f) ⊊ supp(g).
inline TellTaleFamily compute_telltales(const HypothesisClass& H, Natural horizon) {
  const auto& members = H.require_finite("compute_telltales");
  TellTaleFamily out;
  for (const Hypothesis& g : members) {
    std::set<Natural> T;
    for (const Hypothesis& f : members) {
      if (f.support == g.support || !is_subset(f.support, g.support)) continue;
      const Natural x = *min_element(difference(g.support, f.support));
      if (x >= horizon) {
        throw Error("horizon " + std::to_string(horizon) + " too small to separate " + g.id + " from " + f.id);
      }
      T.insert(x);
    }
    out[g.id] = {T.begin(), T.end()};
  }
  return out;
}

/// T_g ⊆ supp(g), and no f with supp(f) ⊊ supp(g) contains T_g.
inline bool telltales_sound(const HypothesisClass& H, const TellTaleFamily& T) {
  const auto& members = H.require_finite("telltales_sound");
  for (const Hypothesis& g : members) {
    auto it = T.find(g.id);
    if (it == T.end()) return false;
    const SymbolicSet t = SymbolicSet::finite(it->second);
    if (!is_subset(t, g.support)) return false;
    for (const Hypothesis& f : members) {
      if (f.support == g.support || !is_subset(f.support, g.support)) continue;
      if (is_subset(t, f.support)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Identifiers

/// Outputs the least-index hypothesis whose tell-tale has been seen and which
/// every observed pair crosses.
class EligibilityIdentifier {
 public:
  EligibilityIdentifier(const HypothesisClass& H, TellTaleFamily telltales)
      : members_(std::make_shared<const std::vector<Hypothesis>>(H.require_finite("eligibility identifier"))),
        consistent_(members_->size(), true) {
    for (const Hypothesis& h : *members_) {
      auto it = telltales.find(h.id);
      telltales_.push_back(it == telltales.end() ? std::vector<Natural>{} : it->second);
    }
  }

  void observe(const Item& item) {
    const Pair p = std::get<Pair>(item);
    seen_.insert(p.lo);
    seen_.insert(p.hi);
    for (std::size_t i = 0; i < members_->size(); ++i) {
      if (consistent_[i] && !crosses((*members_)[i].support, p)) consistent_[i] = false;
    }
  }

  bool eligible(std::size_t i) const {
    return consistent_[i] && std::all_of(telltales_[i].begin(), telltales_[i].end(),
                                         [&](Natural x) { return seen_.count(x) > 0; });
  }

  Guess output() const {
    for (std::size_t i = 0; i < members_->size(); ++i) {
      if (eligible(i)) return detail::guess_of((*members_)[i]);
    }
    return detail::guess_of(members_->front(), true);
  }

  std::string name() const { return "eligibility"; }
  StreamKind kind() const { return StreamKind::Contrastive; }

  std::string state() const {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < members_->size(); ++i) {
      if (eligible(i)) ids.push_back((*members_)[i].id);
    }
    return "eligible=" + detail::join(ids);
  }

 private:
  std::shared_ptr<const std::vector<Hypothesis>> members_;
  std::vector<std::vector<Natural>> telltales_;
  std::vector<bool> consistent_;
  std::set<Natural> seen_;
};

inline Identifier eligibility_identifier(const HypothesisClass& H, TellTaleFamily telltales) {
  return EligibilityIdentifier(H, std::move(telltales));
}

/// Least-index hypothesis agreeing with every labeled example.
class GoldInformantIdentifier {
 public:
  explicit GoldInformantIdentifier(const HypothesisClass& H)
      : members_(std::make_shared<const std::vector<Hypothesis>>(H.require_finite("informant identifier"))),
        consistent_(members_->size(), true) {}

  void observe(const Item& item) {
    const Labeled l = std::get<Labeled>(item);
    for (std::size_t i = 0; i < members_->size(); ++i) {
      if ((*members_)[i].support.contains(l.x) != l.label) consistent_[i] = false;
    }
  }

  Guess output() const {
    for (std::size_t i = 0; i < members_->size(); ++i) {
      if (consistent_[i]) return detail::guess_of((*members_)[i]);
    }
    return detail::guess_of(members_->front(), true);
  }

  std::string name() const { return "gold-informant"; }
  StreamKind kind() const { return StreamKind::Informant; }

  std::string state() const {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < members_->size(); ++i) {
      if (consistent_[i]) ids.push_back((*members_)[i].id);
    }
    return "consistent=" + detail::join(ids);
  }

 private:
  std::shared_ptr<const std::vector<Hypothesis>> members_;
  std::vector<bool> consistent_;
};

inline Identifier gold_informant_identifier(const HypothesisClass& H) { return GoldInformantIdentifier(H); }

/// For the co-singleton class: outputs h_s for the seen point s missing from
/// the fewest pairs, ties to the smaller point.
class AbsenceCountIdentifier {
 public:
  void observe(const Item& item) {
    const Pair p = std::get<Pair>(item);
    ++n_;
    ++occurrences_[p.lo];
    ++occurrences_[p.hi];
  }

  /// a_n(x) for every seen x.
  std::map<Natural, std::size_t> absence_counts() const {
    std::map<Natural, std::size_t> out;
    for (const auto& [x, k] : occurrences_) out[x] = n_ - k;
    return out;
  }

  Guess output() const {
    if (occurrences_.empty()) return detail::guess_of(member(0), true);
    Natural best = 0;
    std::size_t most = 0;
    bool any = false;
    for (const auto& [x, k] : occurrences_) {
      if (!any || k > most) {
        best = x;
        most = k;
        any = true;
      }
    }
    return detail::guess_of(member(best));
  }

  static Hypothesis member(Natural s) {
    return {"h_" + std::to_string(s), difference(SymbolicSet::all(), SymbolicSet::finite({s}))};
  }

  std::string name() const { return "absence-count"; }
  StreamKind kind() const { return StreamKind::Contrastive; }

  std::string state() const {
    std::vector<std::string> parts;
    for (const auto& [x, a] : absence_counts()) parts.push_back(std::to_string(x) + ":" + std::to_string(a));
    return "absence=" + detail::join(parts);
  }

 private:
  std::size_t n_ = 0;
  std::map<Natural, std::size_t> occurrences_;
};

inline Identifier absence_count_identifier() { return AbsenceCountIdentifier(); }

/// Runs a contrastive identifier on the text prefix with every term paired to
/// the least unseen point; the inner learner is replayed when that point moves.
class SyntheticPairIdentifier {
 public:
  explicit SyntheticPairIdentifier(Identifier inner) : prototype_(inner), current_(std::move(inner)) {
    if (prototype_.kind() != StreamKind::Contrastive) throw Error("synthetic pairs need a contrastive identifier");
  }

  void observe(const Item& item) {
    const Natural x = std::get<Natural>(item);
    terms_.push_back(x);
    seen_.insert(x);
    Natural z = 0;
    while (seen_.count(z)) ++z;
    if (z != z_ || terms_.size() == 1) {
      z_ = z;
      last_z_change_ = terms_.size();
      current_ = prototype_;
      for (Natural t : terms_) current_.observe(Pair::of(t, z_));
    } else {
      current_.observe(Pair::of(x, z_));
    }
  }

  Guess output() const { return current_.output(); }
  std::string name() const { return "synthetic(" + prototype_.name() + ")"; }
  StreamKind kind() const { return StreamKind::Text; }
  std::string state() const { return "z=" + std::to_string(z_) + " " + current_.state(); }

  Natural partner() const noexcept { return z_; }
  /// Prefix length at which the partner last changed.
  std::size_t last_partner_change() const noexcept { return last_z_change_; }

 private:
  Identifier prototype_;
  Identifier current_;
  std::vector<Natural> terms_;
  std::set<Natural> seen_;
  Natural z_ = 0;
  std::size_t last_z_change_ = 0;
};

inline Identifier text_identifier_from_contrastive(Identifier inner) {
  return SyntheticPairIdentifier(std::move(inner));
}

// ---------------------------------------------------------------------------
// Generators

/// Shared bookkeeping: seen points, distinct edges, earlier outputs.
struct GenerationMemory {
  std::set<Natural> seen;
  EdgeSet edges;
  std::set<Natural> outputs;
  std::size_t n = 0;
  bool new_edge = false;

  void record(const Item& item) {
    ++n;
    new_edge = false;
    if (auto p = std::get_if<Pair>(&item)) {
      seen.insert(p->lo);
      seen.insert(p->hi);
      new_edge = edges.insert(*p).second;
    } else if (auto x = std::get_if<Natural>(&item)) {
      seen.insert(*x);
    }
  }

  std::set<Natural> excluded() const {
    std::set<Natural> out = seen;
    out.insert(outputs.begin(), outputs.end());
    return out;
  }
};

/// Once more than d distinct edges are seen, the least closure point outside V(E).
class ClosureGenerator {
 public:
  ClosureGenerator(HypothesisClass H, std::size_t d)
      : H_(std::make_shared<const HypothesisClass>(std::move(H))), d_(d), vs_(VersionSpace::full(*H_)) {
    refresh();
  }

  void observe(const Item& item) {
    memory_.record(item);
    if (memory_.new_edge) {
      vs_ = vs_.intersected(VersionSpace::of_edge(*H_, std::get<Pair>(item)));
      refresh();
    }
  }

  Emission output() const {
    if (memory_.edges.size() > d_ && closure_) {
      std::set<Natural> vertices;
      for (const Pair& p : memory_.edges) vertices.insert({p.lo, p.hi});
      if (auto x = detail::least_outside(*closure_, vertices)) return {*x, false};
    }
    return {0, true};
  }

  std::string name() const { return "closure(d=" + std::to_string(d_) + ")"; }
  StreamKind kind() const { return StreamKind::Contrastive; }
  std::string state() const {
    return "edges=" + std::to_string(memory_.edges.size()) + " closure=" + to_string(closure_);
  }

 private:
  void refresh() { closure_ = closure_of(*H_, vs_); }

  std::shared_ptr<const HypothesisClass> H_;
  std::size_t d_;
  VersionSpace vs_;
  ClosureResult closure_;
  GenerationMemory memory_;
};

inline Generator closure_generator(HypothesisClass H, std::size_t d) { return ClosureGenerator(std::move(H), d); }

/// Always emits the same point.
class ConstantGenerator {
 public:
  explicit ConstantGenerator(Natural x) : x_(x) {}
  void observe(const Item&) {}
  Emission output() const { return {x_, false}; }
  std::string name() const { return "constant(" + std::to_string(x_) + ")"; }
  StreamKind kind() const { return StreamKind::Contrastive; }
  std::string state() const { return {}; }

 private:
  Natural x_;
};

inline Generator constant_generator(Natural x) { return ConstantGenerator(x); }

struct NoveltyViolation {
  Natural x = 0;
};

struct Misclassification {
  Natural x = 0;
  Hypothesis target;  // consistent with the hollow set, and x lies outside it
  Stream extension;   // a valid presentation for target starting with the hollow set
};

using FailureWitness = std::variant<NoveltyViolation, Misclassification>;

/// Feeds the hollow set in order and shows the emitted point is either already
/// seen or outside some hypothesis still consistent with everything shown.
inline FailureWitness generator_breaker(const HypothesisClass& H, Generator G, const EdgeSet& hollow) {
  if (!is_hollow(H, hollow)) throw Error("generator_breaker needs a hollow edge set");
  Prefix shown{StreamKind::Contrastive, {}};
  for (const Pair& p : hollow) {
    G.observe(p);
    shown.items.emplace_back(p);
  }
  const Natural x = G.output().x;
  if (vertices(hollow).contains(x)) return NoveltyViolation{x};
  const VersionSpace vs = version_space(H, hollow);
  for (std::size_t i : vs.positions(H, 64)) {
    const Hypothesis h = H.member(i);
    if (!h.support.contains(x)) return Misclassification{x, h, scripted(shown, canonical_contrastive(h))};
  }
  // Hollowness puts every point outside V(E) outside some consistent support;
  // cofinite tails are searched for it directly.
  if (vs.infinite()) {
    const IndexedFamily& t = *H.tail();
    if (t.pool.contains(x)) {
      const std::size_t j = t.chunk_of(x);
      if (vs.tail()->contains(j) && !t.contains(j, x)) {
        const Hypothesis h = t.member(j);
        return Misclassification{x, h, scripted(shown, canonical_contrastive(h))};
      }
    }
  }
  throw Error("hollow edge set admitted no failure witness");
}

/// Level m (1-based) becomes active at d_m = m + dims[m] + 1 distinct edges;
/// the highest active level answers with its closure.
class ChainGenerator {
 public:
  ChainGenerator(std::vector<HypothesisClass> chain, std::vector<std::size_t> dims)
      : chain_(std::make_shared<const std::vector<HypothesisClass>>(std::move(chain))), dims_(std::move(dims)) {
    if (chain_->empty() || chain_->size() != dims_.size()) throw Error("chain and dimensions must match in length");
    for (std::size_t m = 0; m < chain_->size(); ++m) {
      const HypothesisClass& level = (*chain_)[m];
      level.require_finite("chain generator");
      if (m > 0) {
        for (const Hypothesis& h : (*chain_)[m - 1].explicit_members()) {
          auto at = level.index_of(h.id);
          if (!at || !(level.member(*at).support == h.support)) {
            throw Error("chain is not nondecreasing: level " + std::to_string(m + 1) + " lacks " + h.id);
          }
        }
      }
      const auto symbolic = pattern_dimension(level);
      if (!symbolic || !symbolic->value) {
        throw Error("cannot verify a finite dimension for chain level " + std::to_string(m + 1));
      }
      if (dims_[m] < *symbolic->value) {
        throw Error("dimension bound " + std::to_string(dims_[m]) + " for level " + std::to_string(m + 1) +
                    " is below " + std::to_string(*symbolic->value));
      }
      vs_.push_back(VersionSpace::full(level));
    }
  }

  void observe(const Item& item) {
    memory_.record(item);
    if (memory_.new_edge) {
      for (std::size_t m = 0; m < chain_->size(); ++m) {
        vs_[m] = vs_[m].intersected(VersionSpace::of_edge((*chain_)[m], std::get<Pair>(item)));
      }
    }
  }

  std::optional<std::size_t> active_level() const {
    std::optional<std::size_t> out;
    for (std::size_t m = 0; m < chain_->size(); ++m) {
      if (threshold(m) <= memory_.edges.size()) out = m;
    }
    return out;
  }

  std::size_t threshold(std::size_t m) const { return (m + 1) + dims_[m] + 1; }

  Emission output() const {
    const auto m = active_level();
    if (!m) return {0, true};
    const ClosureResult c = closure_of((*chain_)[*m], vs_[*m]);
    if (!c) return {0, true};
    std::set<Natural> vertices;
    for (const Pair& p : memory_.edges) vertices.insert({p.lo, p.hi});
    if (auto x = detail::least_outside(*c, vertices)) return {*x, false};
    return {0, true};
  }

  std::string name() const { return "chain(" + std::to_string(chain_->size()) + " levels)"; }
  StreamKind kind() const { return StreamKind::Contrastive; }
  std::string state() const {
    const auto m = active_level();
    return "edges=" + std::to_string(memory_.edges.size()) + " level=" + (m ? std::to_string(*m + 1) : "none");
  }

 private:
  std::shared_ptr<const std::vector<HypothesisClass>> chain_;
  std::vector<std::size_t> dims_;
  std::vector<VersionSpace> vs_;
  GenerationMemory memory_;
};

inline Generator chain_generator(std::vector<HypothesisClass> chain, std::vector<std::size_t> dims) {
  return ChainGenerator(std::move(chain), std::move(dims));
}

/// Raised when the safe set has nothing left to offer.
class EmptySafeChoice : public Error {
 public:
  using Error::Error;
};

/// Least safe point not seen and not emitted before.
class SafeCoreGenerator {
 public:
  explicit SafeCoreGenerator(HypothesisClass H)
      : H_(std::make_shared<const HypothesisClass>(std::move(H))), vs_(VersionSpace::full(*H_)) {
    current_ = choose();
  }

  void observe(const Item& item) {
    memory_.record(item);
    if (memory_.new_edge) vs_ = vs_.intersected(VersionSpace::of_edge(*H_, std::get<Pair>(item)));
    current_ = choose();
    memory_.outputs.insert(current_.x);
  }

  Emission output() const { return current_; }
  std::string name() const { return "safe-core"; }
  StreamKind kind() const { return StreamKind::Contrastive; }
  std::string state() const { return "safe=" + to_string(closure_of(*H_, vs_)); }

 private:
  Emission choose() const {
    const ClosureResult safe = closure_of(*H_, vs_);
    std::optional<Natural> x;
    if (safe) x = detail::least_outside(*safe, memory_.excluded());
    if (!x) {
      throw EmptySafeChoice("safe set " + to_string(safe) + " has no unseen point after " +
                            std::to_string(memory_.n) + " items");
    }
    return {*x, false};
  }

  std::shared_ptr<const HypothesisClass> H_;
  VersionSpace vs_;
  GenerationMemory memory_;
  Emission current_;
};

inline Generator safe_core_generator(HypothesisClass H) { return SafeCoreGenerator(std::move(H)); }

/// Core r_1, r_2, ...: emits r_m for the least m >= n not seen or emitted.
class EventualCoreGenerator {
 public:
  using Core = std::function<Natural(std::size_t)>;

  EventualCoreGenerator(Core core, std::string description)
      : core_(std::make_shared<const Core>(std::move(core))), description_(std::move(description)) {
    current_ = choose();
  }

  void observe(const Item& item) {
    memory_.record(item);
    current_ = choose();
    memory_.outputs.insert(current_.x);
  }

  Emission output() const { return current_; }
  std::string name() const { return "eventual-core(" + description_ + ")"; }
  StreamKind kind() const { return StreamKind::Contrastive; }
  std::string state() const { return "n=" + std::to_string(memory_.n); }

 private:
  Emission choose() const {
    const std::set<Natural> excluded = memory_.excluded();
    for (std::size_t m = std::max<std::size_t>(memory_.n, 1);; ++m) {
      const Natural r = (*core_)(m);
      if (!excluded.count(r)) return {r, false};
    }
  }

  std::shared_ptr<const Core> core_;
  std::string description_;
  GenerationMemory memory_;
  Emission current_;
};

inline Generator eventual_core_generator(EventualCoreGenerator::Core core, std::string description) {
  return EventualCoreGenerator(std::move(core), std::move(description));
}

/// Least point of the current guess's support not seen and not emitted.
class IdentifyThenGenerate {
 public:
  explicit IdentifyThenGenerate(Identifier inner) : inner_(std::move(inner)) { current_ = choose(); }

  void observe(const Item& item) {
    inner_.observe(item);
    memory_.record(item);
    current_ = choose();
    if (!current_.placeholder) memory_.outputs.insert(current_.x);
  }

  Emission output() const { return current_; }
  std::string name() const { return "identify-then-generate(" + inner_.name() + ")"; }
  StreamKind kind() const { return inner_.kind(); }
  std::string state() const { return inner_.state(); }

 private:
  Emission choose() const {
    const Guess g = inner_.output();
    if (auto x = detail::least_outside(g.support, memory_.excluded())) return {*x, false};
    return {0, true};
  }

  Identifier inner_;
  GenerationMemory memory_;
  Emission current_;
};

inline Generator identify_then_generate(Identifier inner) { return IdentifyThenGenerate(std::move(inner)); }

// ---------------------------------------------------------------------------
// Runs

struct StepRecord {
  std::size_t step = 0;
  std::string output;
  bool correct = false;
  bool defaulted = false;
  bool novel = true;   // generation only
  bool member = true;  // generation only
  std::string state;
};

struct RunRecord {
  std::string learner;
  std::string stream;
  std::string target;
  std::size_t steps = 0;
  std::size_t window = 1;
  std::vector<StepRecord> trace;
  std::optional<std::size_t> converged_at;
  bool generation = false;

  bool success() const noexcept { return converged_at.has_value(); }
  std::string final_output() const { return trace.empty() ? std::string() : trace.back().output; }

  std::size_t failures_from(std::size_t step) const {
    std::size_t n = 0;
    for (const StepRecord& s : trace) n += s.step >= step && !s.correct;
    return n;
  }

  std::string csv() const {
    std::string out = generation ? "step,output,novel,member,correct\n" : "step,output,correct,state\n";
    for (const StepRecord& s : trace) {
      out += std::to_string(s.step) + "," + s.output + ",";
      if (generation) {
        out += std::string(s.novel ? "1" : "0") + "," + (s.member ? "1" : "0") + "," + (s.correct ? "1" : "0");
      } else {
        out += std::string(s.correct ? "1" : "0") + ",\"" + s.state + "\"";
      }
      out += "\n";
    }
    return out;
  }
};

namespace detail {

// Least N with every step in [N, steps] correct, provided that run is at
// least `window` steps long.
inline std::optional<std::size_t> convergence_point(const std::vector<StepRecord>& trace, std::size_t window) {
  std::size_t N = trace.size() + 1;
  while (N > 1 && trace[N - 2].correct) --N;
  if (N > trace.size() || trace.size() - N + 1 < window) return std::nullopt;
  return N;
}

inline void check_run(std::size_t steps, std::size_t window) {
  if (window == 0 || steps < window) throw Error("runs need steps >= window >= 1");
}

}  // namespace detail

inline RunRecord run(Identifier learner, const Stream& stream, const Hypothesis& target, std::size_t steps,
                     std::size_t window, bool with_state = false) {
  detail::check_run(steps, window);
  if (learner.kind() != stream.kind()) throw Error("learner and stream kinds differ");
  RunRecord record{learner.name(), stream.provenance(), target.id, steps, window, {}, std::nullopt, false};
  for (std::size_t t = 1; t <= steps; ++t) {
    learner.observe(stream.item(t));
    const Guess g = learner.output();
    StepRecord s;
    s.step = t;
    s.output = g.id;
    s.correct = g.support == target.support;
    s.defaulted = g.defaulted;
    if (with_state) s.state = learner.state();
    record.trace.push_back(std::move(s));
  }
  record.converged_at = detail::convergence_point(record.trace, window);
  return record;
}

inline RunRecord run(Generator learner, const Stream& stream, const Hypothesis& target, std::size_t steps,
                     std::size_t window, bool with_state = false) {
  detail::check_run(steps, window);
  if (learner.kind() != stream.kind()) throw Error("learner and stream kinds differ");
  RunRecord record{learner.name(), stream.provenance(), target.id, steps, window, {}, std::nullopt, true};
  std::set<Natural> seen;
  for (std::size_t t = 1; t <= steps; ++t) {
    const Item item = stream.item(t);
    if (auto p = std::get_if<Pair>(&item)) seen.insert({p->lo, p->hi});
    if (auto x = std::get_if<Natural>(&item)) seen.insert(*x);
    learner.observe(item);
    const Emission e = learner.output();
    StepRecord s;
    s.step = t;
    s.output = std::to_string(e.x);
    s.defaulted = e.placeholder;
    s.novel = !seen.count(e.x);
    s.member = target.support.contains(e.x);
    s.correct = s.novel && s.member;
    if (with_state) s.state = learner.state();
    record.trace.push_back(std::move(s));
  }
  record.converged_at = detail::convergence_point(record.trace, window);
  return record;
}

}  // namespace crosslimit
