#include "selpref/wsd.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "parallel.hpp"
#include "selpref/error.hpp"
#include "selpref/pruner.hpp"

namespace selpref {

double Decision::credit(ConceptIndex gold) const {
  return std::find(selected.begin(), selected.end(), gold) != selected.end() ? weight() : 0.0;
}

Disambiguator::Disambiguator(const Estimator& est, ModelKind kind, bool prune)
    : est_(&est), kind_(kind), prune_(prune) {}

const std::vector<ScoredConcept>& Disambiguator::ranked(ModelKind kind, Relation rel,
                                                        const std::string& key) {
  auto cache_key = std::make_tuple(kind, rel, key);
  auto it = cache_.find(cache_key);
  if (it != cache_.end()) return it->second;
  const Taxonomy& t = est_->taxonomy();
  const PreferenceTable table = compute_table(*est_, kind, key, rel);
  std::vector<ScoredConcept> entries = prune_ ? prune_classes(t, table.scores) : rank(t, table.scores);
  return cache_.emplace(std::move(cache_key), std::move(entries)).first->second;
}

const std::vector<ScoredConcept>& Disambiguator::scan_list(const WsdInstance& instance) {
  static const std::vector<ScoredConcept> kNone;
  const Taxonomy& t = est_->taxonomy();
  switch (kind_) {
    case ModelKind::word_to_class:
      return ranked(kind_, instance.rel, instance.verb_lemma);
    case ModelKind::sense_to_class:
      if (!instance.verb_concept) return kNone;
      return ranked(kind_, instance.rel, t.id(*instance.verb_concept));
    case ModelKind::class_to_class: {
      // Union over the senses of the verb lemma, cached under the lemma.
      auto cache_key = std::make_tuple(kind_, instance.rel, "#lemma:" + instance.verb_lemma);
      if (auto it = cache_.find(cache_key); it != cache_.end()) return it->second;
      std::vector<ScoredConcept> merged;
      for (const Sense& s : t.senses_of(instance.verb_lemma, PartOfSpeech::verb)) {
        const auto& part = ranked(kind_, instance.rel, t.id(s.index));
        merged.insert(merged.end(), part.begin(), part.end());
      }
      // A class reached from several senses keeps its best score.
      std::sort(merged.begin(), merged.end(), [](const ScoredConcept& a, const ScoredConcept& b) {
        return a.node != b.node ? a.node < b.node : a.score > b.score;
      });
      merged.erase(std::unique(merged.begin(), merged.end(),
                               [](const ScoredConcept& a, const ScoredConcept& b) { return a.node == b.node; }),
                   merged.end());
      merged = rank(t, merged);
      return cache_.emplace(std::move(cache_key), std::move(merged)).first->second;
    }
  }
  return kNone;
}

Decision Disambiguator::decide(const WsdInstance& instance) {
  const Taxonomy& t = est_->taxonomy();
  const auto candidates = t.senses_of(instance.noun_lemma, PartOfSpeech::noun);
  Decision decision;
  if (candidates.empty()) return decision;
  for (const ScoredConcept& entry : scan_list(instance)) {
    for (const Sense& s : candidates) {
      if (t.subsumes(entry.node, s.index)) decision.selected.push_back(s.index);
    }
    if (!decision.selected.empty()) {
      decision.deciding_class = entry.node;
      break;
    }
  }
  return decision;
}

Decision disambiguate(const Estimator& est, const WsdInstance& instance, ModelKind kind,
                      bool prune) {
  Disambiguator d(est, kind, prune);
  return d.decide(instance);
}

WsdReport make_report(std::string model_name, double credit, std::size_t n_decided,
                      std::size_t n_total) {
  WsdReport r;
  r.model_name = std::move(model_name);
  r.credit = credit;
  r.n_decided = n_decided;
  r.n_total = n_total;
  r.zero_decided = n_decided == 0;
  r.precision = n_decided ? credit / static_cast<double>(n_decided) : 0.0;
  r.coverage = n_total ? static_cast<double>(n_decided) / static_cast<double>(n_total) : 0.0;
  r.recall = r.precision * r.coverage;
  return r;
}

namespace {

// Uniform draw in [0, bound) from the raw 64-bit engine output by
// rejection, so partitions do not depend on the standard library's
// distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[draw_below(rng, i)]);
  }
  return order;
}

struct FoldPlan {
  std::vector<std::size_t> test;
};

std::vector<FoldPlan> plan_folds(std::span<const WsdInstance> instances, const EvalOptions& options) {
  const std::size_t n = instances.size();
  if (options.folds < 2) throw Error("cross-validation needs at least 2 folds");
  if (options.folds > n) {
    throw Error("cannot split " + std::to_string(n) + " instances into " +
                std::to_string(options.folds) + " folds");
  }
  std::vector<FoldPlan> plans(options.folds);
  if (!options.group_by_noun) {
    auto folds = kfold_split(n, options.folds, options.seed);
    for (std::size_t f = 0; f < folds.size(); ++f) plans[f].test = std::move(folds[f]);
    return plans;
  }
  // Per-noun folds: members of each lemma are shuffled with a lemma-specific
  // seed and dealt round-robin so every fold holds a share of every noun.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[instances[i].noun_lemma].push_back(i);
  std::uint64_t group_no = 0;
  std::size_t next_fold = 0;
  for (const auto& [lemma, members] : groups) {
    const auto order = shuffled_indices(members.size(), options.seed + 0x9E3779B97F4A7C15ULL * ++group_no);
    for (std::size_t pos : order) {
      plans[next_fold].test.push_back(members[pos]);
      next_fold = (next_fold + 1) % plans.size();
    }
  }
  for (auto& p : plans) std::sort(p.test.begin(), p.test.end());
  return plans;
}

}  // namespace

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) {
    throw Error("fold count " + std::to_string(k) + " out of range for " + std::to_string(n) +
                " items");
  }
  const auto order = shuffled_indices(n, seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + pos, order.begin() + pos + size);
    std::sort(folds[f].begin(), folds[f].end());
    pos += size;
  }
  return folds;
}

WsdReport evaluate(const Taxonomy& taxonomy, std::span<const WsdInstance> instances,
                   ModelKind kind, const EvalOptions& options) {
  const auto plans = plan_folds(instances, options);
  std::vector<FoldReport> fold_reports(plans.size());

  detail::parallel_for(plans.size(), [&](std::size_t f) {
    const auto& test = plans[f].test;
    std::vector<bool> held_out(instances.size(), false);
    for (std::size_t i : test) held_out[i] = true;
    std::vector<TripleRecord> training;
    training.reserve(instances.size() - test.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (!held_out[i]) training.push_back(instances[i]);
    }
    const CountTable counts = tally(training);
    if (options.observer) options.observer(f, counts, test);

    const Estimator est(taxonomy, counts);
    Disambiguator disambiguator(est, kind, options.prune);
    FoldReport report{f, test.size(), 0, 0.0};
    for (std::size_t i : test) {
      const Decision d = disambiguator.decide(instances[i]);
      if (d.abstained()) continue;
      ++report.n_decided;
      report.credit += d.credit(instances[i].noun_concept);
    }
    fold_reports[f] = report;
  });

  double credit = 0.0;
  std::size_t decided = 0;
  for (const FoldReport& r : fold_reports) {
    credit += r.credit;
    decided += r.n_decided;
  }
  WsdReport report = make_report(std::string(model_name(kind)), credit, decided, instances.size());
  report.folds = std::move(fold_reports);
  return report;
}

WsdReport evaluate_split(const Taxonomy& taxonomy, std::span<const TripleRecord> training,
                         std::span<const WsdInstance> test, ModelKind kind, bool prune) {
  const Estimator est(taxonomy, tally(training));
  Disambiguator disambiguator(est, kind, prune);
  double credit = 0.0;
  std::size_t decided = 0;
  for (const WsdInstance& inst : test) {
    const Decision d = disambiguator.decide(inst);
    if (d.abstained()) continue;
    ++decided;
    credit += d.credit(inst.noun_concept);
  }
  return make_report(std::string(model_name(kind)), credit, decided, test.size());
}

WsdReport baseline_random(const Taxonomy& taxonomy, std::span<const WsdInstance> instances) {
  double credit = 0.0;
  std::size_t decided = 0;
  for (const WsdInstance& inst : instances) {
    const auto senses = taxonomy.senses_of(inst.noun_lemma, PartOfSpeech::noun);
    if (senses.empty()) continue;
    ++decided;
    credit += 1.0 / static_cast<double>(senses.size());
  }
  return make_report("random", credit, decided, instances.size());
}

WsdReport baseline_mfs(const Taxonomy& taxonomy, std::span<const WsdInstance> instances) {
  double credit = 0.0;
  std::size_t decided = 0;
  for (const WsdInstance& inst : instances) {
    const auto senses = taxonomy.senses_of(inst.noun_lemma, PartOfSpeech::noun);
    if (senses.empty()) continue;
    ++decided;
    if (senses.front().index == inst.noun_concept) credit += 1.0;
  }
  return make_report("mfs", credit, decided, instances.size());
}

}  // namespace selpref
