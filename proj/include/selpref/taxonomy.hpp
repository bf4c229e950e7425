#ifndef SELPREF_TAXONOMY_HPP
#define SELPREF_TAXONOMY_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace selpref {

enum class PartOfSpeech { noun, verb };

std::string_view to_string(PartOfSpeech pos);
std::optional<PartOfSpeech> parse_pos(std::string_view token);

// Dense position of a concept inside its taxonomy (file order).
using ConceptIndex = std::uint32_t;

struct Attachment {
  std::string lemma;
  int sense_number = 0;

  bool operator==(const Attachment&) const = default;
};

struct Concept {
  std::string id;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::vector<ConceptIndex> parents;
  std::vector<Attachment> attachments;

  bool operator==(const Concept&) const = default;
};

struct Sense {
  int sense_number = 0;
  ConceptIndex index = 0;

  bool operator==(const Sense&) const = default;
};

// Immutable concept hierarchy (a DAG per part of speech) with the word
// senses attached to each concept.
//
// Subsumption is reflexive: every concept is its own ancestor and its own
// descendant. Both closures are computed once at construction, so every
// query is a read of immutable state and safe to call from any thread.
class Taxonomy {
 public:
  Taxonomy() = default;

  // Validates and indexes a list of concepts. Parents refer to positions in
  // the same list. Throws Error on cycles, mixed-pos parentage, duplicate
  // ids, or a (lemma, pos, sense) attached twice.
  explicit Taxonomy(std::vector<Concept> concepts);

  // Parses the tab-separated taxonomy format. Throws ParseError.
  static Taxonomy load(std::istream& in);
  static Taxonomy load_file(const std::string& path);

  // Writes the same format load() reads; load(write(t)) == t.
  void write(std::ostream& out) const;

  std::size_t size() const { return concepts_.size(); }
  const Concept& at(ConceptIndex c) const { return concepts_.at(c); }
  const std::string& id(ConceptIndex c) const { return concepts_.at(c).id; }
  PartOfSpeech pos(ConceptIndex c) const { return concepts_.at(c).pos; }

  std::optional<ConceptIndex> find(std::string_view id) const;
  // Like find() but throws UnknownConceptError.
  ConceptIndex index(std::string_view id) const;

  // Reflexive closures, ascending by index.
  std::span<const ConceptIndex> ancestors(ConceptIndex c) const { return ancestors_.at(c); }
  std::span<const ConceptIndex> descendants(ConceptIndex c) const { return descendants_.at(c); }
  std::span<const ConceptIndex> children(ConceptIndex c) const { return children_.at(c); }

  // True iff lower is subsumed by upper (lower == upper included).
  bool subsumes(ConceptIndex upper, ConceptIndex lower) const;

  // Number of reflexive ancestors, the divisor of the frequency propagation.
  std::size_t classes_count(ConceptIndex c) const { return ancestors_.at(c).size(); }

  // Senses of a lemma ordered by ascending sense number; empty if unknown.
  std::span<const Sense> senses_of(std::string_view lemma, PartOfSpeech pos) const;

  std::vector<ConceptIndex> concepts_of(PartOfSpeech pos) const;
  std::vector<ConceptIndex> roots(PartOfSpeech pos) const;

  bool operator==(const Taxonomy& other) const { return concepts_ == other.concepts_; }

 private:
  std::vector<Concept> concepts_;
  std::unordered_map<std::string, ConceptIndex> by_id_;
  std::vector<std::vector<ConceptIndex>> children_;
  std::vector<std::vector<ConceptIndex>> ancestors_;
  std::vector<std::vector<ConceptIndex>> descendants_;
  // Indexed by PartOfSpeech.
  std::map<std::string, std::vector<Sense>, std::less<>> senses_[2];
};

}  // namespace selpref

#endif
