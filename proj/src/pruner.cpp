#include "selpref/pruner.hpp"

#include <algorithm>
#include <unordered_set>

namespace selpref {

std::vector<ScoredConcept> prune_classes(const Taxonomy& taxonomy,
                                         std::span<const ScoredConcept> entries) {
  std::vector<ScoredConcept> kept;
  // kept_set: the kept classes. below_kept: every strict ancestor of a kept
  // class, i.e. classes that have a kept descendant.
  std::unordered_set<ConceptIndex> kept_set;
  std::unordered_set<ConceptIndex> below_kept;
  for (const ScoredConcept& e : rank(taxonomy, entries)) {
    if (kept_set.count(e.node) || below_kept.count(e.node)) continue;
    bool has_kept_ancestor = false;
    for (ConceptIndex a : taxonomy.ancestors(e.node)) {
      if (a != e.node && kept_set.count(a)) {
        has_kept_ancestor = true;
        break;
      }
    }
    if (has_kept_ancestor) continue;
    kept.push_back(e);
    kept_set.insert(e.node);
    for (ConceptIndex a : taxonomy.ancestors(e.node)) {
      if (a != e.node) below_kept.insert(a);
    }
  }
  return kept;
}

PrunedTable prune_classes(const Taxonomy& taxonomy, const PreferenceTable& table) {
  return {table.rel, table.conditioner, prune_classes(taxonomy, table.scores)};
}

PrunedPairSet prune_pairs(const Taxonomy& taxonomy, Relation rel, std::vector<ScoredPair> pairs) {
  std::erase_if(pairs, [](const ScoredPair& p) { return !(p.score > 0.0); });
  std::stable_sort(pairs.begin(), pairs.end(), [&](const ScoredPair& a, const ScoredPair& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.verb != b.verb) return taxonomy.id(a.verb) < taxonomy.id(b.verb);
    return taxonomy.id(a.noun) < taxonomy.id(b.noun);
  });

  PrunedPairSet out{rel, {}};
  for (const ScoredPair& p : pairs) {
    const bool dominated = std::any_of(
        out.kept_pairs.begin(), out.kept_pairs.end(), [&](const ScoredPair& k) {
          const bool above = taxonomy.subsumes(k.verb, p.verb) && taxonomy.subsumes(k.noun, p.noun);
          const bool below = taxonomy.subsumes(p.verb, k.verb) && taxonomy.subsumes(p.noun, k.noun);
          return above || below;
        });
    if (!dominated) out.kept_pairs.push_back(p);
  }
  return out;
}

}  // namespace selpref
