#include "selpref/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "selpref/error.hpp"
#include "text.hpp"

namespace selpref {

std::string_view to_string(Relation rel) {
  return rel == Relation::subj ? "subj" : "obj";
}

std::optional<Relation> parse_relation(std::string_view token) {
  if (token == "subj") return Relation::subj;
  if (token == "obj") return Relation::obj;
  return std::nullopt;
}

Count CountTable::rel_verb(Relation rel, std::string_view verb) const {
  auto it = fr_rel_verb.find({rel, std::string(verb)});
  return it == fr_rel_verb.end() ? 0 : it->second;
}

namespace {

template <typename Map>
void add_into(Map& into, const Map& from) {
  for (const auto& [key, count] : from) into[key] += count;
}

bool is_sense_of(const Taxonomy& taxonomy, std::string_view lemma, PartOfSpeech pos,
                 ConceptIndex c) {
  for (const Sense& s : taxonomy.senses_of(lemma, pos)) {
    if (s.index == c) return true;
  }
  return false;
}

}  // namespace

CountTable& CountTable::operator+=(const CountTable& other) {
  add_into(fr_noun, other.fr_noun);
  add_into(fr_verb_sense, other.fr_verb_sense);
  add_into(fr_noun_rel_verb, other.fr_noun_rel_verb);
  add_into(fr_noun_rel_vclass, other.fr_noun_rel_vclass);
  add_into(fr_rel_verb, other.fr_rel_verb);
  return *this;
}

std::vector<TripleRecord> load_triples(std::istream& in, const Taxonomy& taxonomy) {
  std::vector<TripleRecord> records;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::strip_cr(raw);
    if (text::is_skippable(line)) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 5) {
      throw ParseError(line_no, "expected 5 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    for (std::string_view f : fields) {
      if (f.empty() || text::has_space(f)) throw ParseError(line_no, "empty or malformed field");
    }

    TripleRecord r;
    r.verb_lemma = std::string(fields[0]);
    if (fields[1] != "-") {
      const auto cv = taxonomy.find(fields[1]);
      if (!cv) throw ParseError(line_no, "unknown verb concept '" + std::string(fields[1]) + "'");
      if (taxonomy.pos(*cv) != PartOfSpeech::verb) {
        throw ParseError(line_no, "concept '" + std::string(fields[1]) + "' is not a verb");
      }
      if (!is_sense_of(taxonomy, r.verb_lemma, PartOfSpeech::verb, *cv)) {
        throw ParseError(line_no, "verb concept '" + std::string(fields[1]) +
                                      "' is not a sense of '" + r.verb_lemma + "'");
      }
      r.verb_concept = *cv;
    }
    const auto rel = parse_relation(fields[2]);
    if (!rel) throw ParseError(line_no, "bad relation '" + std::string(fields[2]) + "'");
    r.rel = *rel;
    r.noun_lemma = std::string(fields[3]);
    const auto cn = taxonomy.find(fields[4]);
    if (!cn) throw ParseError(line_no, "unknown noun concept '" + std::string(fields[4]) + "'");
    if (taxonomy.pos(*cn) != PartOfSpeech::noun) {
      throw ParseError(line_no, "concept '" + std::string(fields[4]) + "' is not a noun");
    }
    if (!is_sense_of(taxonomy, r.noun_lemma, PartOfSpeech::noun, *cn)) {
      throw ParseError(line_no, "noun concept '" + std::string(fields[4]) +
                                    "' is not a sense of '" + r.noun_lemma + "'");
    }
    r.noun_concept = *cn;
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TripleRecord> load_triples_file(const std::string& path, const Taxonomy& taxonomy) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open triples file '" + path + "'");
  try {
    return load_triples(in, taxonomy);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

void write_triples(std::span<const TripleRecord> records, const Taxonomy& taxonomy,
                   std::ostream& out) {
  for (const TripleRecord& r : records) {
    out << r.verb_lemma << '\t' << (r.verb_concept ? taxonomy.id(*r.verb_concept) : "-") << '\t'
        << to_string(r.rel) << '\t' << r.noun_lemma << '\t' << taxonomy.id(r.noun_concept)
        << '\n';
  }
}

CountTable tally(std::span<const TripleRecord> records) {
  CountTable t;
  for (const TripleRecord& r : records) {
    ++t.fr_noun[r.noun_concept];
    ++t.fr_noun_rel_verb[{r.noun_concept, r.rel, r.verb_lemma}];
    ++t.fr_rel_verb[{r.rel, r.verb_lemma}];
    if (r.verb_concept) {
      ++t.fr_verb_sense[*r.verb_concept];
      ++t.fr_noun_rel_vclass[{r.noun_concept, r.rel, *r.verb_concept}];
    }
  }
  return t;
}

}  // namespace selpref
