#ifndef SELPREF_PRUNER_HPP
#define SELPREF_PRUNER_HPP

#include <span>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/estimator.hpp"
#include "selpref/models.hpp"
#include "selpref/taxonomy.hpp"

namespace selpref {

// Kept classes of a table in descending score; no kept class subsumes another.
struct PrunedTable {
  Relation rel = Relation::obj;
  Conditioner conditioner;
  std::vector<ScoredConcept> kept;
};

struct ScoredPair {
  ConceptIndex verb = 0;
  ConceptIndex noun = 0;
  double score = 0.0;

  bool operator==(const ScoredPair&) const = default;
};

struct PrunedPairSet {
  Relation rel = Relation::obj;
  std::vector<ScoredPair> kept_pairs;
};

// Scans entries by descending score (ties: ascending concept id) and keeps
// an entry unless a class kept earlier is its strict ancestor or strict
// descendant. Zero scores are dropped first.
std::vector<ScoredConcept> prune_classes(const Taxonomy& taxonomy,
                                         std::span<const ScoredConcept> entries);
PrunedTable prune_classes(const Taxonomy& taxonomy, const PreferenceTable& table);

// Pair version: (cv, cn) is dropped when an earlier kept (cv', cn') either
// subsumes it on both coordinates or is subsumed by it on both.
// Ties: descending score, then verb id, then noun id.
PrunedPairSet prune_pairs(const Taxonomy& taxonomy, Relation rel, std::vector<ScoredPair> pairs);

}  // namespace selpref

#endif
