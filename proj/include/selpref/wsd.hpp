#ifndef SELPREF_WSD_HPP
#define SELPREF_WSD_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/estimator.hpp"
#include "selpref/models.hpp"
#include "selpref/taxonomy.hpp"

namespace selpref {

struct Decision {
  // Candidate senses below the deciding class, ascending sense number.
  // Empty means the model abstained.
  std::vector<ConceptIndex> selected;
  std::optional<ConceptIndex> deciding_class;

  bool abstained() const { return selected.empty(); }
  double weight() const { return selected.empty() ? 0.0 : 1.0 / static_cast<double>(selected.size()); }
  // weight if gold was selected, else 0.
  double credit(ConceptIndex gold) const;

  bool operator==(const Decision&) const = default;
};

// Picks the noun senses below the strongest class of the verb's preference
// table: entries are scanned by descending score (ties: ascending id) and
// the first class subsuming at least one candidate sense decides; every
// candidate it subsumes is selected with equal weight.
//
// word_to_class reads the table of the verb lemma, sense_to_class the table
// of the instance's gold verb sense (abstains if the verb is untagged), and
// class_to_class the union of the tables of every sense of the verb lemma
// (a class in several tables takes its highest score).
//
// Tables are cached per conditioner; an instance is not thread-safe.
class Disambiguator {
 public:
  Disambiguator(const Estimator& est, ModelKind kind, bool prune = false);

  Decision decide(const WsdInstance& instance);

  // The ranked entries the decision scan walks for this instance.
  const std::vector<ScoredConcept>& scan_list(const WsdInstance& instance);

 private:
  const std::vector<ScoredConcept>& ranked(ModelKind kind, Relation rel, const std::string& key);

  const Estimator* est_;
  ModelKind kind_;
  bool prune_;
  std::map<std::tuple<ModelKind, Relation, std::string>, std::vector<ScoredConcept>> cache_;
};

Decision disambiguate(const Estimator& est, const WsdInstance& instance, ModelKind kind,
                      bool prune = false);

struct FoldReport {
  std::size_t fold = 0;
  std::size_t n_total = 0;
  std::size_t n_decided = 0;
  double credit = 0.0;

  bool operator==(const FoldReport&) const = default;
};

struct WsdReport {
  std::string model_name;
  double precision = 0.0;  // credit / n_decided; 0 when nothing was decided
  double coverage = 0.0;   // n_decided / n_total
  double recall = 0.0;     // credit / n_total
  std::size_t n_total = 0;
  std::size_t n_decided = 0;
  double credit = 0.0;
  bool zero_decided = true;
  std::vector<FoldReport> folds;

  bool operator==(const WsdReport&) const = default;
};

WsdReport make_report(std::string model_name, double credit, std::size_t n_decided,
                      std::size_t n_total);

// Seeded shuffle of 0..n-1 cut into k contiguous folds whose sizes differ by
// at most one (larger folds first). Each fold is returned sorted.
// Throws Error unless 2 <= k <= n.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

struct EvalOptions {
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  bool prune = false;
  // Build folds within each noun lemma instead of over the pooled set.
  // Credit is still pooled, so recall = precision * coverage holds.
  bool group_by_noun = false;
  // Called once per fold with the counts the fold was trained on.
  std::function<void(std::size_t fold, const CountTable& training,
                     std::span<const std::size_t> test_indices)>
      observer;
};

// k-fold cross-validation: each fold is disambiguated by tables trained on
// the instances of the other folds.
WsdReport evaluate(const Taxonomy& taxonomy, std::span<const WsdInstance> instances,
                   ModelKind kind, const EvalOptions& options = {});

// Explicit split: train on `training`, disambiguate `test`.
WsdReport evaluate_split(const Taxonomy& taxonomy, std::span<const TripleRecord> training,
                         std::span<const WsdInstance> test, ModelKind kind, bool prune = false);

// Expected precision of a uniform pick among the noun's senses.
WsdReport baseline_random(const Taxonomy& taxonomy, std::span<const WsdInstance> instances);
// Always the lowest-numbered sense.
WsdReport baseline_mfs(const Taxonomy& taxonomy, std::span<const WsdInstance> instances);

}  // namespace selpref

#endif
