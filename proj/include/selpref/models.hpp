#ifndef SELPREF_MODELS_HPP
#define SELPREF_MODELS_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/estimator.hpp"
#include "selpref/taxonomy.hpp"

namespace selpref {

// What a preference table is conditioned on.
enum class ModelKind {
  word_to_class,   // a verb lemma
  sense_to_class,  // one verb sense (a verb concept with lemmas attached)
  class_to_class,  // any verb concept, inheriting from its ancestors
};

inline constexpr ModelKind kModelKinds[] = {ModelKind::word_to_class, ModelKind::sense_to_class,
                                            ModelKind::class_to_class};

// "word2class", "sense2class", "class2class".
std::string_view model_name(ModelKind kind);
std::optional<ModelKind> parse_model_name(std::string_view token);
// "verb_word", "verb_sense", "verb_class" (the dump format tokens).
std::string_view conditioner_name(ModelKind kind);
std::optional<ModelKind> parse_conditioner_name(std::string_view token);

struct Conditioner {
  ModelKind kind = ModelKind::word_to_class;
  std::string key;  // verb lemma, or verb concept id

  bool operator==(const Conditioner&) const = default;
};

struct PreferenceTable {
  Relation rel = Relation::obj;
  Conditioner conditioner;
  // False when the conditioner has no training mass at all; such a table
  // is empty and makes the WSD layer abstain.
  bool trained = false;
  SparseRow scores;  // non-zero only, ascending by node
  std::string provenance;

  double score(ConceptIndex c) const { return lookup(scores, c); }
  bool operator==(const PreferenceTable&) const = default;
};

// Descending score, ties by ascending concept id. Zero scores are dropped.
std::vector<ScoredConcept> rank(const Taxonomy& taxonomy, std::span<const ScoredConcept> entries);

// P(cn_i | rel v) for every noun class cn_i:
//   sum over cn >= cn_i of fr^(cn_i, cn) / fr^(cn) * fr^(cn rel v) / fr(rel v)
PreferenceTable word_to_class(const Estimator& est, std::string_view verb, Relation rel);

// The same estimate restricted to triples tagged with verb sense cv.
// Throws Error if cv is not a verb concept with lemma attachments.
PreferenceTable sense_to_class(const Estimator& est, ConceptIndex cv, Relation rel);

// P(cn_i | rel cv_j): the double sum over noun classes above cn_i and verb
// classes cv above cv_j of P(cn_i|cn) P(cv_j|cv) P(cn|rel cv), with
// P(cn|rel cv) = fr^(cn rel cv) / rel_vclass_total(rel, cv).
//
// When cv_j itself has no verb mass, P(cv_j|cv) is 0 for every cv and the
// product vanishes; the table then backs off to the ancestors' preferences
// with P(cv_j|cv) taken as 1, which lets unseen verb classes inherit.
PreferenceTable class_to_class(const Estimator& est, ConceptIndex cv, Relation rel);

// Dispatches on kind; key is a verb lemma for word_to_class and a verb
// concept id otherwise.
PreferenceTable compute_table(const Estimator& est, ModelKind kind, std::string_view key,
                              Relation rel);

// rel <TAB> conditioner_kind <TAB> conditioner_key <TAB> noun_concept <TAB> score
// one line per non-zero entry, ranked.
void write_table_dump(const Taxonomy& taxonomy, const PreferenceTable& table, std::ostream& out);
void write_table_dump(const Taxonomy& taxonomy, Relation rel, const Conditioner& conditioner,
                      std::span<const ScoredConcept> ranked, std::ostream& out);

// Reads a dump back. All lines must share one (rel, conditioner); an empty
// stream yields nullopt.
std::optional<PreferenceTable> read_table_dump(std::istream& in, const Taxonomy& taxonomy);

}  // namespace selpref

#endif
