// selpref: acquire selectional preferences over a taxonomy and evaluate
// them on noun sense disambiguation.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "selpref/corpus.hpp"
#include "selpref/error.hpp"
#include "selpref/estimator.hpp"
#include "selpref/integrator.hpp"
#include "selpref/models.hpp"
#include "selpref/pruner.hpp"
#include "selpref/report.hpp"
#include "selpref/taxonomy.hpp"
#include "selpref/wsd.hpp"

using namespace selpref;

namespace {

struct Options {
  std::string taxonomy;
  std::string triples;
  std::string test;
  std::string table;
  std::string edges;
  std::string rel = "obj";
  std::string model = "word2class";
  std::string verb;
  std::string noun;
  std::vector<std::string> verb_classes;
  bool prune = false;
  bool group_by_noun = false;
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  std::string dump_intermediate;
};

// Outputs are rendered in memory and written only once every input has
// been read and validated, so a failing run never leaves a partial file.
struct PendingOutput {
  std::string path;  // empty or "-" for stdout
  std::string text;
};

void flush(const std::vector<PendingOutput>& outputs) {
  for (const PendingOutput& o : outputs) {
    if (o.path.empty() || o.path == "-") {
      std::cout << o.text;
      std::cout.flush();
      if (!std::cout) throw Error("failed to write standard output");
      continue;
    }
    std::ofstream out(o.path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + o.path + "'");
    out << o.text;
    out.close();
    if (!out) throw Error("failed to write output file '" + o.path + "'");
  }
}

std::vector<Relation> relations(const std::string& token, bool allow_both) {
  if (allow_both && token == "both") return {Relation::subj, Relation::obj};
  auto rel = parse_relation(token);
  if (!rel) throw Error("bad relation '" + token + "'");
  return {*rel};
}

ModelKind model_kind(const std::string& token) {
  auto kind = parse_model_name(token);
  if (!kind) throw Error("unknown model '" + token + "'");
  return *kind;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void add_intermediate(const Options& opt, const Estimator& est, std::vector<PendingOutput>& outputs) {
  if (opt.dump_intermediate.empty()) return;
  std::ostringstream out;
  write_estimates(est, out);
  outputs.push_back({opt.dump_intermediate, out.str()});
}

PreferenceTable table_for(const Options& opt, const Estimator& est) {
  if (opt.verb.empty()) throw Error("--verb is required");
  const Relation rel = relations(opt.rel, false).front();
  const PreferenceTable table = compute_table(est, model_kind(opt.model), opt.verb, rel);
  if (!table.trained) {
    std::cerr << "selpref: note: no training mass for " << opt.model << " '" << opt.verb << "' ("
              << to_string(rel) << "); table is empty\n";
  }
  return table;
}

int run_validate(const Options& opt) {
  const Taxonomy t = Taxonomy::load_file(opt.taxonomy);
  std::ostringstream out;
  out << "concepts\t" << t.size() << '\n';
  out << "nouns\t" << t.concepts_of(PartOfSpeech::noun).size() << '\n';
  out << "verbs\t" << t.concepts_of(PartOfSpeech::verb).size() << '\n';
  if (!opt.triples.empty()) {
    const auto records = load_triples_file(opt.triples, t);
    std::size_t untagged = 0, subj = 0, obj = 0;
    for (const TripleRecord& r : records) {
      untagged += r.verb_concept ? 0 : 1;
      (r.rel == Relation::subj ? subj : obj) += 1;
    }
    out << "triples\t" << records.size() << '\n';
    out << "untagged\t" << untagged << '\n';
    out << "subj\t" << subj << '\n';
    out << "obj\t" << obj << '\n';
  }
  if (!opt.edges.empty()) out << "edges\t" << import_edges_file(opt.edges, t).size() << '\n';
  flush({{opt.output, out.str()}});
  return 0;
}

int run_train(const Options& opt) {
  const Taxonomy t = Taxonomy::load_file(opt.taxonomy);
  const Estimator est(t, tally(load_triples_file(opt.triples, t)), opt.triples);
  const PreferenceTable table = table_for(opt, est);
  std::ostringstream out;
  write_table_dump(t, table, out);
  std::vector<PendingOutput> outputs{{opt.output, out.str()}};
  add_intermediate(opt, est, outputs);
  flush(outputs);
  return 0;
}

int run_prune(const Options& opt) {
  const Taxonomy t = Taxonomy::load_file(opt.taxonomy);
  PreferenceTable table;
  std::vector<PendingOutput> outputs;
  if (!opt.table.empty()) {
    std::ifstream in(opt.table);
    if (!in) throw Error("cannot open table file '" + opt.table + "'");
    std::optional<PreferenceTable> loaded;
    try {
      loaded = read_table_dump(in, t);
    } catch (const ParseError& e) {
      throw ParseError(opt.table, e);
    }
    if (loaded) table = std::move(*loaded);
  } else {
    if (opt.triples.empty()) throw Error("prune needs --table or --triples");
    const Estimator est(t, tally(load_triples_file(opt.triples, t)), opt.triples);
    table = table_for(opt, est);
    add_intermediate(opt, est, outputs);
  }
  const PrunedTable pruned = prune_classes(t, table);
  std::ostringstream out;
  write_table_dump(t, pruned.rel, pruned.conditioner, pruned.kept, out);
  outputs.insert(outputs.begin(), {opt.output, out.str()});
  flush(outputs);
  return 0;
}

int run_export(const Options& opt) {
  const Taxonomy t = Taxonomy::load_file(opt.taxonomy);
  const Estimator est(t, tally(load_triples_file(opt.triples, t)), opt.triples);
  std::vector<ConceptIndex> verb_classes;
  if (opt.verb_classes.empty()) {
    verb_classes = t.concepts_of(PartOfSpeech::verb);
  } else {
    for (const std::string& id : opt.verb_classes) {
      const ConceptIndex c = t.index(id);
      if (t.pos(c) != PartOfSpeech::verb) throw Error("'" + id + "' is not a verb concept");
      verb_classes.push_back(c);
    }
  }
  std::vector<RelationEdge> edges;
  for (Relation rel : relations(opt.rel, true)) {
    auto part = build_edges(est, rel, verb_classes, opt.prune);
    edges.insert(edges.end(), part.begin(), part.end());
  }
  sort_edges(t, edges);
  std::ostringstream out;
  export_edges(t, edges, out);
  std::vector<PendingOutput> outputs{{opt.output, out.str()}};
  add_intermediate(opt, est, outputs);
  flush(outputs);
  return 0;
}

int run_query(const Options& opt) {
  const Taxonomy t = Taxonomy::load_file(opt.taxonomy);
  const ConceptIndex noun = t.index(opt.noun);
  if (t.pos(noun) != PartOfSpeech::noun) throw Error("'" + opt.noun + "' is not a noun concept");
  std::vector<PendingOutput> outputs;
  double score = 0.0;
  if (!opt.edges.empty()) {
    const Relation rel = relations(opt.rel, false).front();
    const PreferenceOverlay overlay(t, import_edges_file(opt.edges, t));
    for (const RelationEdge& e : overlay.preferences_of(t.index(opt.verb), rel)) {
      if (e.noun_class == noun) score = e.score;
    }
  } else {
    if (opt.triples.empty()) throw Error("query needs --triples or --edges");
    const Estimator est(t, tally(load_triples_file(opt.triples, t)), opt.triples);
    score = table_for(opt, est).score(noun);
    add_intermediate(opt, est, outputs);
  }
  outputs.insert(outputs.begin(), {opt.output, format_number(score) + "\n"});
  flush(outputs);
  return 0;
}

int run_wsd(const Options& opt) {
  const Taxonomy t = Taxonomy::load_file(opt.taxonomy);
  const auto records = load_triples_file(opt.triples, t);
  std::vector<TripleRecord> test;
  const bool split = !opt.test.empty();
  if (split) test = load_triples_file(opt.test, t);
  if (opt.format != "json" && opt.format != "tsv" && opt.format != "table") {
    throw Error("unknown format '" + opt.format + "'");
  }

  EvaluationSummary summary;
  summary.folds = split ? 0 : opt.folds;
  summary.seed = opt.seed;
  summary.prune = opt.prune;
  summary.group_by_noun = opt.group_by_noun;
  for (Relation rel : relations(opt.rel, true)) {
    // Instances of one relation; training always sees every triple outside
    // the held-out part.
    std::vector<WsdInstance> instances;
    for (const TripleRecord& r : split ? test : records) {
      if (r.rel == rel) instances.push_back(r);
    }
    if (instances.empty()) {
      if (opt.rel != "both") throw Error("no " + std::string(to_string(rel)) + " instances to evaluate");
      continue;
    }
    RelationResults results{rel, {baseline_random(t, instances), baseline_mfs(t, instances)}};
    for (ModelKind kind : kModelKinds) {
      if (split) {
        results.rows.push_back(evaluate_split(t, records, instances, kind, opt.prune));
      } else {
        EvalOptions eval;
        eval.folds = opt.folds;
        eval.seed = opt.seed;
        eval.prune = opt.prune;
        eval.group_by_noun = opt.group_by_noun;
        results.rows.push_back(evaluate(t, instances, kind, eval));
      }
    }
    summary.relations.push_back(std::move(results));
  }
  if (summary.relations.empty()) throw Error("no instances to evaluate");

  std::ostringstream out;
  if (opt.format == "json") {
    write_report_json(summary, out);
  } else if (opt.format == "tsv") {
    write_report_tsv(summary, out);
  } else {
    write_report_table(summary, out);
  }
  flush({{opt.output, out.str()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selectional preferences over a taxonomy"};
  app.require_subcommand(1);
  Options opt;

  auto taxonomy = [&](CLI::App* sub) {
    sub->add_option("--taxonomy", opt.taxonomy, "Taxonomy file")->required();
  };
  auto triples = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--triples", opt.triples, "Sense-tagged triples");
    if (required) o->required();
  };
  auto model = [&](CLI::App* sub) {
    sub->add_option("--model", opt.model, "word2class, sense2class or class2class")
        ->check(CLI::IsMember({"word2class", "sense2class", "class2class"}));
    sub->add_option("--verb", opt.verb, "Verb lemma (word2class) or verb concept id");
    sub->add_option("--rel", opt.rel, "subj or obj")->check(CLI::IsMember({"subj", "obj"}));
  };
  auto output = [&](CLI::App* sub) {
    sub->add_option("--output,-o", opt.output, "Output file (default: stdout)");
  };
  auto intermediate = [&](CLI::App* sub) {
    sub->add_option("--dump-intermediate", opt.dump_intermediate, "Write the propagated estimates to this file");
  };

  auto* validate = app.add_subcommand("validate", "Check inputs and print counts");
  taxonomy(validate);
  triples(validate, false);
  validate->add_option("--edges", opt.edges, "Edge file to check");
  output(validate);

  auto* train = app.add_subcommand("train", "Write one preference table");
  taxonomy(train);
  triples(train, true);
  model(train);
  output(train);
  intermediate(train);

  auto* prune = app.add_subcommand("prune", "Reduce a preference table to an antichain");
  taxonomy(prune);
  triples(prune, false);
  prune->add_option("--table", opt.table, "Table dump to prune instead of training one");
  model(prune);
  output(prune);
  intermediate(prune);

  auto* export_cmd = app.add_subcommand("export", "Write verb class to noun class edges");
  taxonomy(export_cmd);
  triples(export_cmd, true);
  export_cmd->add_option("--rel", opt.rel, "subj, obj or both")->check(CLI::IsMember({"subj", "obj", "both"}));
  export_cmd->add_flag("--prune", opt.prune, "Prune each table and the pair set");
  export_cmd->add_option("--verb-classes", opt.verb_classes, "Verb concept ids (default: all)")->delimiter(',');
  output(export_cmd);
  intermediate(export_cmd);

  auto* query = app.add_subcommand("query", "Score one noun class for a verb");
  taxonomy(query);
  triples(query, false);
  model(query);
  query->add_option("--noun", opt.noun, "Noun concept id")->required();
  query->add_option("--edges", opt.edges, "Read the score from an edge file");
  output(query);
  intermediate(query);

  auto* wsd = app.add_subcommand("wsd", "Evaluate noun sense disambiguation");
  taxonomy(wsd);
  triples(wsd, true);
  wsd->add_option("--test", opt.test, "Held-out instances (train on --triples)");
  wsd->add_option("--rel", opt.rel, "subj, obj or both")->check(CLI::IsMember({"subj", "obj", "both"}));
  wsd->add_option("--folds", opt.folds, "Cross-validation folds")->check(CLI::Range(2, 1000000));
  wsd->add_option("--seed", opt.seed, "Fold shuffle seed");
  wsd->add_flag("--prune", opt.prune, "Prune tables before deciding");
  wsd->add_flag("--group-by-noun", opt.group_by_noun, "Build folds within each noun lemma");
  wsd->add_option("--format", opt.format, "json, tsv or table")->check(CLI::IsMember({"json", "tsv", "table"}));
  output(wsd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return run_validate(opt);
    if (*train) return run_train(opt);
    if (*prune) return run_prune(opt);
    if (*export_cmd) return run_export(opt);
    if (*query) return run_query(opt);
    if (*wsd) return run_wsd(opt);
  } catch (const std::exception& e) {
    std::cerr << "selpref: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
