#include "selpref/integrator.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "parallel.hpp"
#include "selpref/error.hpp"
#include "selpref/models.hpp"
#include "selpref/pruner.hpp"
#include "text.hpp"

namespace selpref {

void sort_edges(const Taxonomy& taxonomy, std::vector<RelationEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [&](const RelationEdge& a, const RelationEdge& b) {
    if (a.verb_class != b.verb_class) return taxonomy.id(a.verb_class) < taxonomy.id(b.verb_class);
    if (a.rel != b.rel) return a.rel < b.rel;
    if (a.score != b.score) return a.score > b.score;
    return taxonomy.id(a.noun_class) < taxonomy.id(b.noun_class);
  });
}

std::vector<RelationEdge> build_edges(const Estimator& est, Relation rel,
                                      std::span<const ConceptIndex> verb_classes, bool prune) {
  const Taxonomy& t = est.taxonomy();
  std::vector<std::vector<ScoredConcept>> per_class(verb_classes.size());
  detail::parallel_for(verb_classes.size(), [&](std::size_t i) {
    const PreferenceTable table = class_to_class(est, verb_classes[i], rel);
    per_class[i] = prune ? prune_classes(t, table.scores) : table.scores;
  });

  std::vector<RelationEdge> edges;
  if (prune) {
    std::vector<ScoredPair> pairs;
    for (std::size_t i = 0; i < verb_classes.size(); ++i) {
      for (const ScoredConcept& e : per_class[i]) pairs.push_back({verb_classes[i], e.node, e.score});
    }
    for (const ScoredPair& p : prune_pairs(t, rel, std::move(pairs)).kept_pairs) {
      edges.push_back({p.verb, rel, p.noun, p.score});
    }
  } else {
    for (std::size_t i = 0; i < verb_classes.size(); ++i) {
      for (const ScoredConcept& e : per_class[i]) {
        if (e.score > 0.0) edges.push_back({verb_classes[i], rel, e.node, e.score});
      }
    }
  }
  sort_edges(t, edges);
  return edges;
}

std::size_t export_edges(const Taxonomy& taxonomy, std::span<const RelationEdge> edges,
                         std::ostream& out) {
  std::vector<RelationEdge> sorted(edges.begin(), edges.end());
  sort_edges(taxonomy, sorted);
  for (const RelationEdge& e : sorted) {
    out << taxonomy.id(e.verb_class) << '\t' << to_string(e.rel) << '\t'
        << taxonomy.id(e.noun_class) << '\t' << text::format_score(e.score) << '\n';
  }
  out.flush();
  if (!out) throw Error("failed to write edge file");
  return sorted.size();
}

std::vector<RelationEdge> import_edges(std::istream& in, const Taxonomy& taxonomy) {
  std::vector<RelationEdge> edges;
  std::set<std::tuple<ConceptIndex, Relation, ConceptIndex>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::strip_cr(raw);
    if (text::is_skippable(line)) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 tab-separated fields");
    const auto cv = taxonomy.find(fields[0]);
    if (!cv || taxonomy.pos(*cv) != PartOfSpeech::verb) {
      throw ParseError(line_no, "unknown verb class '" + std::string(fields[0]) + "'");
    }
    const auto rel = parse_relation(fields[1]);
    if (!rel) throw ParseError(line_no, "bad relation '" + std::string(fields[1]) + "'");
    const auto cn = taxonomy.find(fields[2]);
    if (!cn || taxonomy.pos(*cn) != PartOfSpeech::noun) {
      throw ParseError(line_no, "unknown noun class '" + std::string(fields[2]) + "'");
    }
    const auto score = text::parse_double(fields[3]);
    if (!score || !(*score > 0.0)) {
      throw ParseError(line_no, "score must be a positive number, got '" + std::string(fields[3]) + "'");
    }
    if (!seen.insert({*cv, *rel, *cn}).second) throw ParseError(line_no, "duplicate edge");
    edges.push_back({*cv, *rel, *cn, *score});
  }
  return edges;
}

std::vector<RelationEdge> import_edges_file(const std::string& path, const Taxonomy& taxonomy) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge file '" + path + "'");
  try {
    return import_edges(in, taxonomy);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

PreferenceOverlay::PreferenceOverlay(const Taxonomy& taxonomy, std::vector<RelationEdge> edges)
    : taxonomy_(&taxonomy), edges_(std::move(edges)) {
  sort_edges(taxonomy, edges_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    by_verb_.emplace(edges_[i].verb_class, i);
    by_noun_.emplace(edges_[i].noun_class, i);
  }
}

namespace {

std::vector<RelationEdge> collect(const Taxonomy& t, const std::vector<RelationEdge>& edges,
                                  const std::multimap<ConceptIndex, std::size_t>& index,
                                  ConceptIndex key, Relation rel) {
  std::vector<RelationEdge> out;
  auto [lo, hi] = index.equal_range(key);
  for (auto it = lo; it != hi; ++it) {
    if (edges[it->second].rel == rel) out.push_back(edges[it->second]);
  }
  std::stable_sort(out.begin(), out.end(), [&](const RelationEdge& a, const RelationEdge& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.verb_class != b.verb_class) return t.id(a.verb_class) < t.id(b.verb_class);
    return t.id(a.noun_class) < t.id(b.noun_class);
  });
  return out;
}

}  // namespace

std::vector<RelationEdge> PreferenceOverlay::preferences_of(ConceptIndex verb_class,
                                                            Relation rel) const {
  return collect(*taxonomy_, edges_, by_verb_, verb_class, rel);
}

std::vector<RelationEdge> PreferenceOverlay::selectors_of(ConceptIndex noun_class,
                                                          Relation rel) const {
  return collect(*taxonomy_, edges_, by_noun_, noun_class, rel);
}

}  // namespace selpref
