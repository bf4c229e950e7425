#include "selpref/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "selpref/error.hpp"
#include "text.hpp"

namespace selpref {

std::string_view to_string(PartOfSpeech pos) {
  return pos == PartOfSpeech::noun ? "noun" : "verb";
}

std::optional<PartOfSpeech> parse_pos(std::string_view token) {
  if (token == "noun") return PartOfSpeech::noun;
  if (token == "verb") return PartOfSpeech::verb;
  return std::nullopt;
}

namespace {

std::vector<ConceptIndex> merge_sorted(const std::vector<ConceptIndex>& a,
                                       const std::vector<ConceptIndex>& b) {
  std::vector<ConceptIndex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Walks parent links among the concepts Kahn's algorithm could not order
// until a node repeats, then returns that loop.
std::vector<ConceptIndex> find_cycle(const std::vector<Concept>& concepts,
                                     const std::vector<bool>& unresolved) {
  ConceptIndex start = 0;
  while (!unresolved[start]) ++start;
  std::vector<int> seen_at(concepts.size(), -1);
  std::vector<ConceptIndex> path;
  ConceptIndex cur = start;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    // Some parent is unresolved, otherwise cur would have been ordered.
    for (ConceptIndex p : concepts[cur].parents) {
      if (unresolved[p]) {
        cur = p;
        break;
      }
    }
  }
  return {path.begin() + seen_at[cur], path.end()};
}

}  // namespace

Taxonomy::Taxonomy(std::vector<Concept> concepts) : concepts_(std::move(concepts)) {
  const std::size_t n = concepts_.size();
  by_id_.reserve(n);
  children_.assign(n, {});

  for (ConceptIndex c = 0; c < n; ++c) {
    const Concept& node = concepts_[c];
    if (node.id.empty() || text::has_space(node.id)) {
      throw Error("invalid concept id '" + node.id + "'");
    }
    if (!by_id_.emplace(node.id, c).second) {
      throw Error("duplicate concept id '" + node.id + "'");
    }
  }

  for (ConceptIndex c = 0; c < n; ++c) {
    const Concept& node = concepts_[c];
    std::set<ConceptIndex> distinct;
    for (ConceptIndex p : node.parents) {
      if (p >= n) throw Error("concept '" + node.id + "' has an out-of-range parent");
      if (concepts_[p].pos != node.pos) {
        throw Error("concept '" + node.id + "' (" + std::string(to_string(node.pos)) +
                    ") has parent '" + concepts_[p].id + "' of a different part of speech");
      }
      if (!distinct.insert(p).second) {
        throw Error("concept '" + node.id + "' lists parent '" + concepts_[p].id + "' twice");
      }
      children_[p].push_back(c);
    }
    for (const Attachment& a : node.attachments) {
      if (a.lemma.empty() || a.sense_number <= 0) {
        throw Error("concept '" + node.id + "' has a malformed attachment");
      }
      auto& senses = senses_[static_cast<int>(node.pos)][a.lemma];
      for (const Sense& s : senses) {
        if (s.sense_number == a.sense_number) {
          throw Error("sense " + a.lemma + "#" + std::to_string(a.sense_number) + " (" +
                      std::string(to_string(node.pos)) + ") is attached to both '" +
                      concepts_[s.index].id + "' and '" + node.id + "'");
        }
      }
      senses.push_back({a.sense_number, c});
    }
  }
  for (auto& by_lemma : senses_) {
    for (auto& [lemma, senses] : by_lemma) {
      std::sort(senses.begin(), senses.end(),
                [](const Sense& a, const Sense& b) { return a.sense_number < b.sense_number; });
    }
  }

  // Topological order, parents first.
  std::vector<std::size_t> pending(n);
  std::vector<ConceptIndex> order;
  order.reserve(n);
  for (ConceptIndex c = 0; c < n; ++c) {
    pending[c] = concepts_[c].parents.size();
    if (pending[c] == 0) order.push_back(c);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (ConceptIndex child : children_[order[i]]) {
      if (--pending[child] == 0) order.push_back(child);
    }
  }
  if (order.size() != n) {
    std::vector<bool> unresolved(n, false);
    for (ConceptIndex c = 0; c < n; ++c) unresolved[c] = pending[c] > 0;
    std::string ids;
    for (ConceptIndex c : find_cycle(concepts_, unresolved)) {
      ids += (ids.empty() ? "" : " -> ") + concepts_[c].id;
    }
    throw Error("cycle in parent relation: " + ids);
  }

  ancestors_.assign(n, {});
  for (ConceptIndex c : order) {
    std::vector<ConceptIndex> acc{c};
    for (ConceptIndex p : concepts_[c].parents) acc = merge_sorted(acc, ancestors_[p]);
    ancestors_[c] = std::move(acc);
  }
  descendants_.assign(n, {});
  for (ConceptIndex c = 0; c < n; ++c) {
    for (ConceptIndex a : ancestors_[c]) descendants_[a].push_back(c);
  }
}

Taxonomy Taxonomy::load(std::istream& in) {
  struct Row {
    std::size_t line;
    std::vector<std::string> parent_ids;
  };
  std::vector<Concept> concepts;
  std::vector<Row> rows;
  std::unordered_map<std::string, std::size_t> first_line;
  std::map<std::pair<std::string, PartOfSpeech>, std::map<int, std::size_t>> attached_at;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::strip_cr(raw);
    if (text::is_skippable(line)) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() < 2 || fields.size() > 4) {
      throw ParseError(line_no, "expected 2 to 4 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    fields.resize(4);

    Concept node;
    node.id = std::string(fields[0]);
    if (node.id.empty() || text::has_space(node.id)) {
      throw ParseError(line_no, "empty or malformed concept id");
    }
    if (auto [it, fresh] = first_line.emplace(node.id, line_no); !fresh) {
      throw ParseError(line_no, "concept '" + node.id + "' already declared on line " +
                                    std::to_string(it->second));
    }
    const auto pos = parse_pos(fields[1]);
    if (!pos) throw ParseError(line_no, "bad part of speech '" + std::string(fields[1]) + "'");
    node.pos = *pos;

    Row row{line_no, {}};
    if (!fields[2].empty()) {
      for (std::string_view p : text::split(fields[2], ',')) {
        if (p.empty()) throw ParseError(line_no, "empty parent id");
        row.parent_ids.emplace_back(p);
      }
    }
    if (!fields[3].empty()) {
      for (std::string_view a : text::split(fields[3], ',')) {
        const std::size_t hash = a.rfind('#');
        if (hash == std::string_view::npos || hash == 0) {
          throw ParseError(line_no, "attachment '" + std::string(a) + "' is not lemma#sense");
        }
        const auto sense = text::parse_positive_int(a.substr(hash + 1));
        if (!sense) {
          throw ParseError(line_no, "attachment '" + std::string(a) + "' has a bad sense number");
        }
        std::string lemma(a.substr(0, hash));
        auto& lines = attached_at[{lemma, node.pos}];
        if (auto it = lines.find(*sense); it != lines.end()) {
          throw ParseError(line_no, "duplicate sense attachment " + std::string(a) +
                                        " (already attached on line " +
                                        std::to_string(it->second) + ")");
        }
        lines.emplace(*sense, line_no);
        node.attachments.push_back({std::move(lemma), *sense});
      }
    }
    concepts.push_back(std::move(node));
    rows.push_back(std::move(row));
  }

  std::unordered_map<std::string, ConceptIndex> index;
  for (ConceptIndex c = 0; c < concepts.size(); ++c) index.emplace(concepts[c].id, c);
  for (ConceptIndex c = 0; c < concepts.size(); ++c) {
    for (const std::string& pid : rows[c].parent_ids) {
      auto it = index.find(pid);
      if (it == index.end()) throw ParseError(rows[c].line, "unknown parent id '" + pid + "'");
      if (concepts[it->second].pos != concepts[c].pos) {
        throw ParseError(rows[c].line, "parent '" + pid + "' has a different part of speech");
      }
      if (std::find(concepts[c].parents.begin(), concepts[c].parents.end(), it->second) !=
          concepts[c].parents.end()) {
        throw ParseError(rows[c].line, "parent '" + pid + "' listed twice");
      }
      concepts[c].parents.push_back(it->second);
    }
  }
  // Remaining structural failures (cycles) surface from the constructor.
  try {
    return Taxonomy(std::move(concepts));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

Taxonomy Taxonomy::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open taxonomy file '" + path + "'");
  try {
    return load(in);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

void Taxonomy::write(std::ostream& out) const {
  for (const Concept& c : concepts_) {
    out << c.id << '\t' << to_string(c.pos) << '\t';
    for (std::size_t i = 0; i < c.parents.size(); ++i) {
      out << (i ? "," : "") << concepts_[c.parents[i]].id;
    }
    out << '\t';
    for (std::size_t i = 0; i < c.attachments.size(); ++i) {
      out << (i ? "," : "") << c.attachments[i].lemma << '#' << c.attachments[i].sense_number;
    }
    out << '\n';
  }
}

std::optional<ConceptIndex> Taxonomy::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

ConceptIndex Taxonomy::index(std::string_view id) const {
  if (auto c = find(id)) return *c;
  throw UnknownConceptError(std::string(id));
}

bool Taxonomy::subsumes(ConceptIndex upper, ConceptIndex lower) const {
  const auto& anc = ancestors_.at(lower);
  return std::binary_search(anc.begin(), anc.end(), upper);
}

std::span<const Sense> Taxonomy::senses_of(std::string_view lemma, PartOfSpeech pos) const {
  const auto& by_lemma = senses_[static_cast<int>(pos)];
  auto it = by_lemma.find(lemma);
  if (it == by_lemma.end()) return {};
  return it->second;
}

std::vector<ConceptIndex> Taxonomy::concepts_of(PartOfSpeech pos) const {
  std::vector<ConceptIndex> out;
  for (ConceptIndex c = 0; c < concepts_.size(); ++c) {
    if (concepts_[c].pos == pos) out.push_back(c);
  }
  return out;
}

std::vector<ConceptIndex> Taxonomy::roots(PartOfSpeech pos) const {
  std::vector<ConceptIndex> out;
  for (ConceptIndex c = 0; c < concepts_.size(); ++c) {
    if (concepts_[c].pos == pos && concepts_[c].parents.empty()) out.push_back(c);
  }
  return out;
}

}  // namespace selpref
