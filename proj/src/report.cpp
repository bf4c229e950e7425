#include "selpref/report.hpp"

#include <json.hpp>
#include <ostream>

#include "text.hpp"

namespace selpref {

namespace {

nlohmann::ordered_json to_json(const WsdReport& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model_name;
  j["precision"] = r.precision;
  j["coverage"] = r.coverage;
  j["recall"] = r.recall;
  j["n_total"] = r.n_total;
  j["n_decided"] = r.n_decided;
  j["credit"] = r.credit;
  j["zero_decided"] = r.zero_decided;
  auto folds = nlohmann::ordered_json::array();
  for (const FoldReport& f : r.folds) {
    nlohmann::ordered_json fj;
    fj["fold"] = f.fold;
    fj["n_total"] = f.n_total;
    fj["n_decided"] = f.n_decided;
    fj["credit"] = f.credit;
    folds.push_back(std::move(fj));
  }
  j["folds"] = std::move(folds);
  return j;
}

}  // namespace

void write_report_json(const EvaluationSummary& summary, std::ostream& out) {
  nlohmann::ordered_json j;
  j["protocol"] = summary.folds == 0 ? "split" : "cross_validation";
  j["folds"] = summary.folds;
  j["seed"] = summary.seed;
  j["prune"] = summary.prune;
  j["grouping"] = summary.group_by_noun ? "per_noun" : "pooled";
  nlohmann::ordered_json rels;
  for (const RelationResults& rr : summary.relations) {
    auto rows = nlohmann::ordered_json::array();
    for (const WsdReport& r : rr.rows) rows.push_back(to_json(r));
    rels[std::string(to_string(rr.rel))] = std::move(rows);
  }
  j["relations"] = std::move(rels);
  out << j.dump(2) << '\n';
}

void write_report_tsv(const EvaluationSummary& summary, std::ostream& out) {
  out << "model\trel\tprecision\tcoverage\trecall\tn_total\tn_decided\n";
  for (const RelationResults& rr : summary.relations) {
    for (const WsdReport& r : rr.rows) {
      out << r.model_name << '\t' << to_string(rr.rel) << '\t' << text::format_score(r.precision)
          << '\t' << text::format_score(r.coverage) << '\t' << text::format_score(r.recall) << '\t'
          << r.n_total << '\t' << r.n_decided << '\n';
    }
  }
}

void write_report_table(const EvaluationSummary& summary, std::ostream& out) {
  char buf[128];
  for (const RelationResults& rr : summary.relations) {
    out << to_string(rr.rel) << '\n';
    std::snprintf(buf, sizeof buf, "  %-12s %7s %7s %7s %8s\n", "model", "Prec.", "Cov.", "Rec.", "n");
    out << buf;
    for (const WsdReport& r : rr.rows) {
      std::snprintf(buf, sizeof buf, "  %-12s %7.4f %7.4f %7.4f %8zu\n", r.model_name.c_str(),
                    r.precision, r.coverage, r.recall, r.n_total);
      out << buf;
    }
  }
}

}  // namespace selpref
