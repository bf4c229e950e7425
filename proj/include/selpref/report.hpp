#ifndef SELPREF_REPORT_HPP
#define SELPREF_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "selpref/corpus.hpp"
#include "selpref/wsd.hpp"

namespace selpref {

struct RelationResults {
  Relation rel = Relation::obj;
  std::vector<WsdReport> rows;  // baselines first, then models
};

struct EvaluationSummary {
  std::size_t folds = 0;  // 0 for an explicit train/test split
  std::uint64_t seed = 0;
  bool prune = false;
  bool group_by_noun = false;
  std::vector<RelationResults> relations;
};

// Key/value tree (JSON) with every figure and the per-fold breakdown.
void write_report_json(const EvaluationSummary& summary, std::ostream& out);

// One row per (model, relation):
// model rel precision coverage recall n_total n_decided
void write_report_tsv(const EvaluationSummary& summary, std::ostream& out);

// Human-readable table in the Prec./Cov./Rec. layout, 4 decimals.
void write_report_table(const EvaluationSummary& summary, std::ostream& out);

}  // namespace selpref

#endif
