#ifndef SELPREF_ESTIMATOR_HPP
#define SELPREF_ESTIMATOR_HPP

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/taxonomy.hpp"

namespace selpref {

struct ScoredConcept {
  ConceptIndex node = 0;
  double score = 0.0;

  bool operator==(const ScoredConcept&) const = default;
};

// Non-zero entries only, ascending by node.
using SparseRow = std::vector<ScoredConcept>;

double lookup(std::span<const ScoredConcept> row, ConceptIndex c);

// Propagated class frequencies over a taxonomy.
//
// A raw count observed at concept c is shared among the classes that
// subsume it: each of its reflexive ancestors receives count / classes(c).
// Every estimate below is such a sum over the descendants of the queried
// class, evaluated for all classes at construction time (bottom-up push to
// ancestors), so the object is immutable afterwards and safe to share.
//
//   class_freq(c)            sum_{ci <= c} fr(ci) / classes(ci)
//   class_rel_verb(cn,r,v)   sum_{ci <= cn} fr(ci, r v) / classes(ci)
//   class_rel_sense(cn,r,cv) same, restricted to triples tagged with verb sense cv
//   class_rel_class(cn,r,cv) sum_{ci <= cn} sum_{vj <= cv} fr(ci r vj) / (classes(ci) classes(vj))
//   rel_vclass_total(r,cv)   sum_{vj <= cv} fr(r vj) / classes(vj)
//
// Noun classes read fr_noun and verb classes read fr_verb_sense.
class Estimator {
 public:
  Estimator(const Taxonomy& taxonomy, const CountTable& counts, std::string provenance = {});

  const Taxonomy& taxonomy() const { return *taxonomy_; }
  const std::string& provenance() const { return provenance_; }

  double class_freq(ConceptIndex c) const;
  // class_freq(ci) when ci is subsumed by c, 0 otherwise.
  double cond_freq(ConceptIndex ci, ConceptIndex c) const;
  double class_rel_verb(ConceptIndex cn, Relation rel, std::string_view verb) const;
  double class_rel_sense(ConceptIndex cn, Relation rel, ConceptIndex cv) const;
  double class_rel_class(ConceptIndex cn, Relation rel, ConceptIndex cv) const;
  double rel_vclass_total(Relation rel, ConceptIndex cv) const;

  // Raw totals: fr(rel v) and the number of rel-triples tagged with sense cv.
  Count rel_verb_total(Relation rel, std::string_view verb) const;
  Count rel_sense_total(Relation rel, ConceptIndex cv) const;

  // Whole rows over noun classes, for the model layer.
  std::span<const ScoredConcept> rel_verb_row(Relation rel, std::string_view verb) const;
  std::span<const ScoredConcept> rel_sense_row(Relation rel, ConceptIndex cv) const;
  std::span<const ScoredConcept> rel_class_row(Relation rel, ConceptIndex cv) const;

  // Noun classes with non-zero class_freq, ascending.
  std::span<const ConceptIndex> noun_support() const { return noun_support_; }

  // Verb lemmas with fr(rel v) > 0, sorted.
  std::vector<std::string> verbs(Relation rel) const;

 private:
  void require(ConceptIndex c, PartOfSpeech pos, const char* what) const;

  const Taxonomy* taxonomy_;
  std::string provenance_;
  std::vector<double> class_freq_;
  std::vector<ConceptIndex> noun_support_;
  std::map<std::pair<Relation, std::string>, Count, std::less<>> rel_verb_total_;
  std::map<std::pair<Relation, ConceptIndex>, Count> rel_sense_total_;
  std::map<std::pair<Relation, std::string>, SparseRow, std::less<>> rel_verb_;
  std::map<std::pair<Relation, ConceptIndex>, SparseRow> rel_sense_;
  std::map<std::pair<Relation, ConceptIndex>, SparseRow> rel_class_;
  std::vector<double> rel_vclass_total_[2];
};

// Every non-zero estimate, one per line, tab-separated:
//   class_freq c value
//   class_rel_verb rel verb cn value
//   class_rel_sense rel cv cn value
//   class_rel_class rel cv cn value
//   rel_vclass_total rel cv value
void write_estimates(const Estimator& est, std::ostream& out);

}  // namespace selpref

#endif
