#ifndef SELPREF_CORPUS_HPP
#define SELPREF_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "selpref/taxonomy.hpp"

namespace selpref {

enum class Relation { subj, obj };

inline constexpr Relation kRelations[] = {Relation::subj, Relation::obj};

std::string_view to_string(Relation rel);
std::optional<Relation> parse_relation(std::string_view token);

// One sense-tagged (verb, relation, noun) dependency.
struct TripleRecord {
  std::string verb_lemma;
  std::optional<ConceptIndex> verb_concept;  // absent when the verb is untagged
  Relation rel = Relation::obj;
  std::string noun_lemma;
  ConceptIndex noun_concept = 0;

  bool operator==(const TripleRecord&) const = default;
};

// A WSD test item has the same shape; noun_concept holds the gold sense.
using WsdInstance = TripleRecord;

using Count = std::uint64_t;

// Raw corpus frequencies. Keys are concept indices of the taxonomy the
// records were validated against.
struct CountTable {
  std::map<ConceptIndex, Count> fr_noun;
  std::map<ConceptIndex, Count> fr_verb_sense;
  std::map<std::tuple<ConceptIndex, Relation, std::string>, Count> fr_noun_rel_verb;
  std::map<std::tuple<ConceptIndex, Relation, ConceptIndex>, Count> fr_noun_rel_vclass;
  std::map<std::pair<Relation, std::string>, Count> fr_rel_verb;

  Count rel_verb(Relation rel, std::string_view verb) const;

  CountTable& operator+=(const CountTable& other);
  bool operator==(const CountTable&) const = default;
};

// Parses the triples format and validates every record against the
// taxonomy. Throws ParseError (with the line number) on the first bad line.
std::vector<TripleRecord> load_triples(std::istream& in, const Taxonomy& taxonomy);
std::vector<TripleRecord> load_triples_file(const std::string& path, const Taxonomy& taxonomy);

void write_triples(std::span<const TripleRecord> records, const Taxonomy& taxonomy,
                   std::ostream& out);

CountTable tally(std::span<const TripleRecord> records);

}  // namespace selpref

#endif
