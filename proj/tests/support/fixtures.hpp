// Fixtures shared by the unit and acceptance suites.
#ifndef SELPREF_TESTS_FIXTURES_HPP
#define SELPREF_TESTS_FIXTURES_HPP

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/taxonomy.hpp"

namespace selpref::testing {

inline const char* const kToyTaxonomy =
    "n_entity\tnoun\t\t\n"
    "n_food\tnoun\tn_entity\t\n"
    "n_person\tnoun\tn_entity\t\n"
    "n_apple\tnoun\tn_food\tapple#1\n"
    "n_chicken_food\tnoun\tn_food\tchicken#1\n"
    "n_wimp\tnoun\tn_person\tchicken#3,wimp#1\n"
    "v_consume\tverb\t\tconsume#1\n"
    "v_eat\tverb\tv_consume\teat#1\n"
    "v_devour\tverb\tv_consume\tdevour#1\n";

inline const char* const kToyCorpus =
    "eat\tv_eat\tobj\tapple\tn_apple\n"
    "eat\tv_eat\tobj\tapple\tn_apple\n"
    "eat\tv_eat\tobj\tapple\tn_apple\n"
    "eat\tv_eat\tobj\tchicken\tn_chicken_food\n"
    "devour\tv_devour\tobj\tchicken\tn_chicken_food\n";

inline Taxonomy parse_taxonomy(const std::string& text) {
  std::istringstream in(text);
  return Taxonomy::load(in);
}

inline std::vector<TripleRecord> parse_triples(const std::string& text, const Taxonomy& t) {
  std::istringstream in(text);
  return load_triples(in, t);
}

inline Taxonomy toy_taxonomy() { return parse_taxonomy(kToyTaxonomy); }

inline std::vector<TripleRecord> toy_records(const Taxonomy& t) {
  return parse_triples(kToyCorpus, t);
}

struct RandomFixture {
  Taxonomy taxonomy;
  std::vector<TripleRecord> records;
  std::vector<std::string> noun_lemmas;
  std::vector<std::string> verb_lemmas;
};

struct RandomFixtureOptions {
  std::size_t max_concepts = 50;
  std::size_t max_triples = 200;
  // Probability that a triple's verb sense tag is dropped.
  double untagged_rate = 0.0;
  // Put raw noun mass only on concepts without children.
  bool leaf_mass_only = false;
};

inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random DAG taxonomy (multiple inheritance, several roots per part of
// speech, polysemous lemmas) with a random sense-tagged corpus over it.
inline RandomFixture random_fixture(std::uint64_t seed, const RandomFixtureOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  const int total = draw(rng, 8, static_cast<int>(opt.max_concepts));
  const int n_verbs = std::max(2, total / 3);
  const int n_nouns = total - n_verbs;

  std::vector<Concept> concepts;
  std::vector<ConceptIndex> nouns, verbs;
  auto add_block = [&](int count, PartOfSpeech pos, std::vector<ConceptIndex>& members,
                       const std::string& prefix) {
    for (int i = 0; i < count; ++i) {
      Concept c;
      c.id = prefix + std::to_string(i);
      c.pos = pos;
      if (!members.empty() && draw(rng, 0, 9) > 0) {
        const int n_parents = draw(rng, 0, 4) == 0 ? 2 : 1;
        for (int p = 0; p < n_parents; ++p) {
          const ConceptIndex parent = members[draw(rng, 0, static_cast<int>(members.size()) - 1)];
          if (std::find(c.parents.begin(), c.parents.end(), parent) == c.parents.end()) {
            c.parents.push_back(parent);
          }
        }
      }
      members.push_back(static_cast<ConceptIndex>(concepts.size()));
      concepts.push_back(std::move(c));
    }
  };
  add_block(n_nouns, PartOfSpeech::noun, nouns, "n");
  add_block(n_verbs, PartOfSpeech::verb, verbs, "v");

  auto has_child = [&](ConceptIndex c) {
    for (const Concept& other : concepts) {
      if (std::find(other.parents.begin(), other.parents.end(), c) != other.parents.end()) return true;
    }
    return false;
  };

  RandomFixture fx;
  auto attach = [&](const std::vector<ConceptIndex>& members, const std::string& prefix,
                    std::vector<std::string>& lemmas, bool leaves_only) {
    std::vector<ConceptIndex> pool;
    for (ConceptIndex c : members) {
      if (!leaves_only || !has_child(c)) pool.push_back(c);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    // Keep some concepts bare: pure classes carrying no word.
    const std::size_t usable = std::max<std::size_t>(1, pool.size() * 3 / 4);
    std::size_t next = 0;
    int lemma_no = 0;
    while (next < usable) {
      const std::string lemma = prefix + std::to_string(lemma_no++);
      const int n_senses = std::min<int>(draw(rng, 1, 3), static_cast<int>(usable - next));
      int sense = 0;
      for (int s = 0; s < n_senses; ++s) {
        sense += draw(rng, 1, 2);
        concepts[pool[next++]].attachments.push_back({lemma, sense});
      }
      lemmas.push_back(lemma);
    }
  };
  attach(nouns, "noun", fx.noun_lemmas, opt.leaf_mass_only);
  attach(verbs, "verb", fx.verb_lemmas, false);
  fx.taxonomy = Taxonomy(std::move(concepts));
  const Taxonomy& t = fx.taxonomy;

  const int n_triples = draw(rng, 1, static_cast<int>(opt.max_triples));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Skew verb choice so some lemmas are frequent and some rare.
  for (int i = 0; i < n_triples; ++i) {
    const auto& vl = fx.verb_lemmas[std::min(draw(rng, 0, static_cast<int>(fx.verb_lemmas.size()) - 1),
                                             draw(rng, 0, static_cast<int>(fx.verb_lemmas.size()) - 1))];
    const auto& nl = fx.noun_lemmas[draw(rng, 0, static_cast<int>(fx.noun_lemmas.size()) - 1)];
    const auto vs = t.senses_of(vl, PartOfSpeech::verb);
    const auto ns = t.senses_of(nl, PartOfSpeech::noun);
    TripleRecord r;
    r.verb_lemma = vl;
    if (unit(rng) >= opt.untagged_rate) r.verb_concept = vs[draw(rng, 0, static_cast<int>(vs.size()) - 1)].index;
    r.rel = draw(rng, 0, 3) == 0 ? Relation::subj : Relation::obj;
    r.noun_lemma = nl;
    r.noun_concept = ns[draw(rng, 0, static_cast<int>(ns.size()) - 1)].index;
    fx.records.push_back(std::move(r));
  }
  return fx;
}

}  // namespace selpref::testing

#endif
