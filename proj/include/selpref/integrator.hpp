#ifndef SELPREF_INTEGRATOR_HPP
#define SELPREF_INTEGRATOR_HPP

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/estimator.hpp"
#include "selpref/taxonomy.hpp"

namespace selpref {

// A learned (verb class, relation, noun class) link with its class-to-class score.
struct RelationEdge {
  ConceptIndex verb_class = 0;
  Relation rel = Relation::obj;
  ConceptIndex noun_class = 0;
  double score = 0.0;

  bool operator==(const RelationEdge&) const = default;
};

// For each verb class, computes its class-to-class table and links every
// noun class with a positive score. With prune, each table is first reduced
// to its antichain and the union is then pair-pruned. Output is in
// canonical edge order (see sort_edges).
std::vector<RelationEdge> build_edges(const Estimator& est, Relation rel,
                                      std::span<const ConceptIndex> verb_classes, bool prune);

// (verb id, rel, descending score, noun id).
void sort_edges(const Taxonomy& taxonomy, std::vector<RelationEdge>& edges);

// verb_class <TAB> rel <TAB> noun_class <TAB> score, in canonical order.
// Returns the number of lines written; throws Error if the stream fails.
std::size_t export_edges(const Taxonomy& taxonomy, std::span<const RelationEdge> edges,
                         std::ostream& out);

// Validates ids, parts of speech and scores. Throws ParseError.
std::vector<RelationEdge> import_edges(std::istream& in, const Taxonomy& taxonomy);
std::vector<RelationEdge> import_edges_file(const std::string& path, const Taxonomy& taxonomy);

// The taxonomy together with an edge overlay. The hierarchy itself is left
// untouched; edges are indexed from both ends.
class PreferenceOverlay {
 public:
  PreferenceOverlay(const Taxonomy& taxonomy, std::vector<RelationEdge> edges);

  const Taxonomy& taxonomy() const { return *taxonomy_; }
  std::span<const RelationEdge> edges() const { return edges_; }

  // Edges leaving a verb class, descending score.
  std::vector<RelationEdge> preferences_of(ConceptIndex verb_class, Relation rel) const;
  // Edges arriving at a noun class, descending score.
  std::vector<RelationEdge> selectors_of(ConceptIndex noun_class, Relation rel) const;

 private:
  const Taxonomy* taxonomy_;
  std::vector<RelationEdge> edges_;
  std::multimap<ConceptIndex, std::size_t> by_verb_;
  std::multimap<ConceptIndex, std::size_t> by_noun_;
};

}  // namespace selpref

#endif
