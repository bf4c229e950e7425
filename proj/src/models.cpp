#include "selpref/models.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "selpref/error.hpp"
#include "text.hpp"

namespace selpref {

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::word_to_class: return "word2class";
    case ModelKind::sense_to_class: return "sense2class";
    case ModelKind::class_to_class: return "class2class";
  }
  return "?";
}

std::optional<ModelKind> parse_model_name(std::string_view token) {
  for (ModelKind k : kModelKinds) {
    if (model_name(k) == token) return k;
  }
  return std::nullopt;
}

std::string_view conditioner_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::word_to_class: return "verb_word";
    case ModelKind::sense_to_class: return "verb_sense";
    case ModelKind::class_to_class: return "verb_class";
  }
  return "?";
}

std::optional<ModelKind> parse_conditioner_name(std::string_view token) {
  for (ModelKind k : kModelKinds) {
    if (conditioner_name(k) == token) return k;
  }
  return std::nullopt;
}

std::vector<ScoredConcept> rank(const Taxonomy& taxonomy, std::span<const ScoredConcept> entries) {
  std::vector<ScoredConcept> out;
  out.reserve(entries.size());
  for (const ScoredConcept& e : entries) {
    if (e.score > 0.0) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [&](const ScoredConcept& a, const ScoredConcept& b) {
    if (a.score != b.score) return a.score > b.score;
    return taxonomy.id(a.node) < taxonomy.id(b.node);
  });
  return out;
}

namespace {

// class_weight holds, per noun class cn, the probability mass of cn under
// the conditioner (already divided by the conditioner total). The score of
// cn_i is fr^(cn_i) * sum over cn >= cn_i of class_weight(cn) / fr^(cn).
SparseRow spread_to_subclasses(const Estimator& est, const SparseRow& class_weight) {
  const Taxonomy& t = est.taxonomy();
  SparseRow per_mass;
  per_mass.reserve(class_weight.size());
  for (const ScoredConcept& e : class_weight) {
    const double freq = est.class_freq(e.node);
    if (freq > 0.0 && e.score > 0.0) per_mass.push_back({e.node, e.score / freq});
  }
  SparseRow scores;
  if (per_mass.empty()) return scores;
  for (ConceptIndex ci : est.noun_support()) {
    double sum = 0.0;
    for (ConceptIndex a : t.ancestors(ci)) sum += lookup(per_mass, a);
    if (sum > 0.0) scores.push_back({ci, est.class_freq(ci) * sum});
  }
  return scores;
}

SparseRow scaled(std::span<const ScoredConcept> row, double factor) {
  SparseRow out(row.begin(), row.end());
  for (ScoredConcept& e : out) e.score *= factor;
  return out;
}

PreferenceTable make_table(const Estimator& est, ModelKind kind, std::string key, Relation rel) {
  PreferenceTable table;
  table.rel = rel;
  table.conditioner = {kind, std::move(key)};
  table.provenance = est.provenance();
  return table;
}

void require_verb(const Taxonomy& t, ConceptIndex cv, const char* what) {
  if (cv >= t.size()) throw Error(std::string(what) + ": concept index out of range");
  if (t.pos(cv) != PartOfSpeech::verb) {
    throw Error(std::string(what) + ": '" + t.id(cv) + "' is not a verb concept");
  }
}

}  // namespace

PreferenceTable word_to_class(const Estimator& est, std::string_view verb, Relation rel) {
  PreferenceTable table = make_table(est, ModelKind::word_to_class, std::string(verb), rel);
  const Count total = est.rel_verb_total(rel, verb);
  if (total == 0) return table;
  table.trained = true;
  table.scores =
      spread_to_subclasses(est, scaled(est.rel_verb_row(rel, verb), 1.0 / static_cast<double>(total)));
  return table;
}

PreferenceTable sense_to_class(const Estimator& est, ConceptIndex cv, Relation rel) {
  const Taxonomy& t = est.taxonomy();
  require_verb(t, cv, "sense_to_class");
  if (t.at(cv).attachments.empty()) {
    throw Error("sense_to_class: verb concept '" + t.id(cv) + "' has no lemma attached");
  }
  PreferenceTable table = make_table(est, ModelKind::sense_to_class, t.id(cv), rel);
  const Count total = est.rel_sense_total(rel, cv);
  if (total == 0) return table;
  table.trained = true;
  table.scores =
      spread_to_subclasses(est, scaled(est.rel_sense_row(rel, cv), 1.0 / static_cast<double>(total)));
  return table;
}

PreferenceTable class_to_class(const Estimator& est, ConceptIndex cv, Relation rel) {
  const Taxonomy& t = est.taxonomy();
  require_verb(t, cv, "class_to_class");
  PreferenceTable table = make_table(est, ModelKind::class_to_class, t.id(cv), rel);

  const double own_freq = est.class_freq(cv);
  std::map<ConceptIndex, double> class_weight;
  for (ConceptIndex upper : t.ancestors(cv)) {
    const double rel_total = est.rel_vclass_total(rel, upper);
    if (rel_total <= 0.0) continue;
    double verb_given_class = 1.0;
    if (own_freq > 0.0) {
      const double upper_freq = est.class_freq(upper);
      if (upper_freq <= 0.0) continue;
      verb_given_class = own_freq / upper_freq;
    }
    for (const ScoredConcept& e : est.rel_class_row(rel, upper)) {
      class_weight[e.node] += verb_given_class * e.score / rel_total;
    }
  }
  if (class_weight.empty()) return table;
  table.trained = true;
  SparseRow weights;
  weights.reserve(class_weight.size());
  for (const auto& [c, w] : class_weight) weights.push_back({c, w});
  table.scores = spread_to_subclasses(est, weights);
  return table;
}

PreferenceTable compute_table(const Estimator& est, ModelKind kind, std::string_view key,
                              Relation rel) {
  switch (kind) {
    case ModelKind::word_to_class:
      return word_to_class(est, key, rel);
    case ModelKind::sense_to_class:
      return sense_to_class(est, est.taxonomy().index(key), rel);
    case ModelKind::class_to_class:
      return class_to_class(est, est.taxonomy().index(key), rel);
  }
  throw Error("unknown model kind");
}

void write_table_dump(const Taxonomy& taxonomy, Relation rel, const Conditioner& conditioner,
                      std::span<const ScoredConcept> ranked, std::ostream& out) {
  for (const ScoredConcept& e : ranked) {
    out << to_string(rel) << '\t' << conditioner_name(conditioner.kind) << '\t' << conditioner.key
        << '\t' << taxonomy.id(e.node) << '\t' << text::format_score(e.score) << '\n';
  }
}

void write_table_dump(const Taxonomy& taxonomy, const PreferenceTable& table, std::ostream& out) {
  write_table_dump(taxonomy, table.rel, table.conditioner, rank(taxonomy, table.scores), out);
}

std::optional<PreferenceTable> read_table_dump(std::istream& in, const Taxonomy& taxonomy) {
  std::optional<PreferenceTable> table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = text::strip_cr(raw);
    if (text::is_skippable(line)) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 5) throw ParseError(line_no, "expected 5 tab-separated fields");
    const auto rel = parse_relation(fields[0]);
    if (!rel) throw ParseError(line_no, "bad relation '" + std::string(fields[0]) + "'");
    const auto kind = parse_conditioner_name(fields[1]);
    if (!kind) throw ParseError(line_no, "bad conditioner kind '" + std::string(fields[1]) + "'");
    const auto cn = taxonomy.find(fields[3]);
    if (!cn || taxonomy.pos(*cn) != PartOfSpeech::noun) {
      throw ParseError(line_no, "unknown noun concept '" + std::string(fields[3]) + "'");
    }
    const auto score = text::parse_double(fields[4]);
    if (!score || !(*score > 0.0)) throw ParseError(line_no, "bad score '" + std::string(fields[4]) + "'");

    Conditioner cond{*kind, std::string(fields[2])};
    if (!table) {
      table.emplace();
      table->rel = *rel;
      table->conditioner = cond;
      table->trained = true;
    } else if (table->rel != *rel || !(table->conditioner == cond)) {
      throw ParseError(line_no, "table dump mixes several conditioners");
    }
    table->scores.push_back({*cn, *score});
  }
  if (table) {
    auto& s = table->scores;
    std::sort(s.begin(), s.end(),
              [](const ScoredConcept& a, const ScoredConcept& b) { return a.node < b.node; });
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i].node == s[i - 1].node) {
        throw ParseError(0, "concept '" + taxonomy.id(s[i].node) + "' listed twice in table dump");
      }
    }
  }
  return table;
}

}  // namespace selpref
