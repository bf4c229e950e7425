#include "selpref/estimator.hpp"

#include <algorithm>
#include <ostream>

#include "selpref/error.hpp"
#include "text.hpp"

namespace selpref {

double lookup(std::span<const ScoredConcept> row, ConceptIndex c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const ScoredConcept& e, ConceptIndex key) { return e.node < key; });
  return (it != row.end() && it->node == c) ? it->score : 0.0;
}

namespace {

using Accumulator = std::map<ConceptIndex, double>;

void push_to_ancestors(const Taxonomy& t, ConceptIndex c, double weight, Accumulator& acc) {
  for (ConceptIndex a : t.ancestors(c)) acc[a] += weight;
}

SparseRow to_row(const Accumulator& acc) {
  SparseRow row;
  row.reserve(acc.size());
  for (const auto& [c, v] : acc) {
    if (v > 0.0) row.push_back({c, v});
  }
  return row;
}

// Key view that lets the string-keyed maps be probed with a string_view.
struct RelVerbKey {
  Relation rel;
  std::string_view verb;
};

bool operator<(const std::pair<Relation, std::string>& a, const RelVerbKey& b) {
  return a.first != b.rel ? a.first < b.rel : std::string_view(a.second) < b.verb;
}
bool operator<(const RelVerbKey& a, const std::pair<Relation, std::string>& b) {
  return a.rel != b.first ? a.rel < b.first : a.verb < std::string_view(b.second);
}

const SparseRow kEmptyRow;

}  // namespace

Estimator::Estimator(const Taxonomy& taxonomy, const CountTable& counts, std::string provenance)
    : taxonomy_(&taxonomy), provenance_(std::move(provenance)) {
  const Taxonomy& t = taxonomy;
  class_freq_.assign(t.size(), 0.0);
  for (const auto* table : {&counts.fr_noun, &counts.fr_verb_sense}) {
    for (const auto& [c, n] : *table) {
      const double w = static_cast<double>(n) / static_cast<double>(t.classes_count(c));
      for (ConceptIndex a : t.ancestors(c)) class_freq_[a] += w;
    }
  }
  for (ConceptIndex c = 0; c < t.size(); ++c) {
    if (t.pos(c) == PartOfSpeech::noun && class_freq_[c] > 0.0) noun_support_.push_back(c);
  }

  for (const auto& [key, n] : counts.fr_rel_verb) rel_verb_total_[key] = n;

  std::map<std::pair<Relation, std::string>, Accumulator> by_verb;
  for (const auto& [key, n] : counts.fr_noun_rel_verb) {
    const auto& [cn, rel, verb] = key;
    push_to_ancestors(t, cn, static_cast<double>(n) / t.classes_count(cn), by_verb[{rel, verb}]);
  }
  for (const auto& [key, acc] : by_verb) rel_verb_.emplace(key, to_row(acc));

  std::map<std::pair<Relation, ConceptIndex>, Accumulator> by_sense;
  for (auto& totals : rel_vclass_total_) totals.assign(t.size(), 0.0);
  for (const auto& [key, n] : counts.fr_noun_rel_vclass) {
    const auto& [cn, rel, cv] = key;
    rel_sense_total_[{rel, cv}] += n;
    push_to_ancestors(t, cn, static_cast<double>(n) / t.classes_count(cn), by_sense[{rel, cv}]);
    const double w = static_cast<double>(n) / t.classes_count(cv);
    for (ConceptIndex a : t.ancestors(cv)) rel_vclass_total_[static_cast<int>(rel)][a] += w;
  }

  // Class rows: each sense row, scaled by 1/classes(cv), flows to every
  // verb class above the sense.
  std::map<std::pair<Relation, ConceptIndex>, Accumulator> by_class;
  for (const auto& [key, acc] : by_sense) {
    const auto& [rel, cv] = key;
    SparseRow row = to_row(acc);
    const double share = 1.0 / static_cast<double>(t.classes_count(cv));
    for (ConceptIndex a : t.ancestors(cv)) {
      Accumulator& target = by_class[{rel, a}];
      for (const ScoredConcept& e : row) target[e.node] += e.score * share;
    }
    rel_sense_.emplace(key, std::move(row));
  }
  for (const auto& [key, acc] : by_class) rel_class_.emplace(key, to_row(acc));
}

void Estimator::require(ConceptIndex c, PartOfSpeech pos, const char* what) const {
  if (c >= taxonomy_->size()) throw Error(std::string(what) + ": concept index out of range");
  if (taxonomy_->pos(c) != pos) {
    throw Error(std::string(what) + ": concept '" + taxonomy_->id(c) + "' is not a " +
                std::string(to_string(pos)));
  }
}

double Estimator::class_freq(ConceptIndex c) const {
  return class_freq_.at(c);
}

double Estimator::cond_freq(ConceptIndex ci, ConceptIndex c) const {
  require(c, taxonomy_->pos(ci), "cond_freq");
  return taxonomy_->subsumes(c, ci) ? class_freq_[ci] : 0.0;
}

double Estimator::class_rel_verb(ConceptIndex cn, Relation rel, std::string_view verb) const {
  require(cn, PartOfSpeech::noun, "class_rel_verb");
  return lookup(rel_verb_row(rel, verb), cn);
}

double Estimator::class_rel_sense(ConceptIndex cn, Relation rel, ConceptIndex cv) const {
  require(cn, PartOfSpeech::noun, "class_rel_sense");
  require(cv, PartOfSpeech::verb, "class_rel_sense");
  return lookup(rel_sense_row(rel, cv), cn);
}

double Estimator::class_rel_class(ConceptIndex cn, Relation rel, ConceptIndex cv) const {
  require(cn, PartOfSpeech::noun, "class_rel_class");
  require(cv, PartOfSpeech::verb, "class_rel_class");
  return lookup(rel_class_row(rel, cv), cn);
}

double Estimator::rel_vclass_total(Relation rel, ConceptIndex cv) const {
  require(cv, PartOfSpeech::verb, "rel_vclass_total");
  return rel_vclass_total_[static_cast<int>(rel)][cv];
}

Count Estimator::rel_verb_total(Relation rel, std::string_view verb) const {
  auto it = rel_verb_total_.find(RelVerbKey{rel, verb});
  return it == rel_verb_total_.end() ? 0 : it->second;
}

Count Estimator::rel_sense_total(Relation rel, ConceptIndex cv) const {
  auto it = rel_sense_total_.find({rel, cv});
  return it == rel_sense_total_.end() ? 0 : it->second;
}

std::span<const ScoredConcept> Estimator::rel_verb_row(Relation rel, std::string_view verb) const {
  auto it = rel_verb_.find(RelVerbKey{rel, verb});
  return it == rel_verb_.end() ? kEmptyRow : it->second;
}

std::span<const ScoredConcept> Estimator::rel_sense_row(Relation rel, ConceptIndex cv) const {
  auto it = rel_sense_.find({rel, cv});
  return it == rel_sense_.end() ? kEmptyRow : it->second;
}

std::span<const ScoredConcept> Estimator::rel_class_row(Relation rel, ConceptIndex cv) const {
  auto it = rel_class_.find({rel, cv});
  return it == rel_class_.end() ? kEmptyRow : it->second;
}

std::vector<std::string> Estimator::verbs(Relation rel) const {
  std::vector<std::string> out;
  for (const auto& [key, n] : rel_verb_total_) {
    if (key.first == rel && n > 0) out.push_back(key.second);
  }
  return out;
}

void write_estimates(const Estimator& est, std::ostream& out) {
  const Taxonomy& t = est.taxonomy();
  for (ConceptIndex c = 0; c < t.size(); ++c) {
    if (est.class_freq(c) > 0) out << "class_freq\t" << t.id(c) << '\t' << text::format_score(est.class_freq(c)) << '\n';
  }
  auto row = [&](const char* name, Relation rel, std::string_view key, std::span<const ScoredConcept> r) {
    for (const ScoredConcept& e : r) {
      out << name << '\t' << to_string(rel) << '\t' << key << '\t' << t.id(e.node) << '\t'
          << text::format_score(e.score) << '\n';
    }
  };
  const auto verbs = t.concepts_of(PartOfSpeech::verb);
  for (Relation rel : kRelations) {
    for (const std::string& v : est.verbs(rel)) row("class_rel_verb", rel, v, est.rel_verb_row(rel, v));
    for (ConceptIndex cv : verbs) row("class_rel_sense", rel, t.id(cv), est.rel_sense_row(rel, cv));
    for (ConceptIndex cv : verbs) row("class_rel_class", rel, t.id(cv), est.rel_class_row(rel, cv));
    for (ConceptIndex cv : verbs) {
      const double total = est.rel_vclass_total(rel, cv);
      if (total > 0) {
        out << "rel_vclass_total\t" << to_string(rel) << '\t' << t.id(cv) << '\t' << text::format_score(total) << '\n';
      }
    }
  }
}

}  // namespace selpref
