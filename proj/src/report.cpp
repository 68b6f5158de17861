#include "prereq/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "prereq/csv.hpp"

namespace prereq {

using ordered_json = nlohmann::ordered_json;

double round_half_away(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  double r = std::round(value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

namespace {

ordered_json edge_json(const Edge& e) { return {{"edge", to_string(e)}, {"from", e.from}, {"to", e.to}}; }

struct Rounder {
  int decimals;
  double operator()(double v) const { return round_half_away(v, decimals); }
};

// One table of learners × links with absent cells as null.
ordered_json learner_table(const std::vector<std::string>& learners, std::size_t cols, const std::vector<double>& values,
                           const std::vector<std::uint8_t>& present, Rounder round) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < learners.size(); ++r) {
    ordered_json shown = ordered_json::array(), raw = ordered_json::array();
    for (std::size_t c = 0; c < cols; ++c) {
      if (!present[r * cols + c]) {
        shown.push_back(nullptr);
        raw.push_back(nullptr);
        continue;
      }
      double v = values[r * cols + c];
      shown.push_back(round(v));
      raw.push_back(v);
    }
    ordered_json row;
    row["learner"] = learners[r];
    row["values"] = std::move(shown);
    row["values_raw"] = std::move(raw);
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json averages_json(const std::vector<double>& avg, const std::vector<std::size_t>& n, Rounder round) {
  ordered_json shown = ordered_json::array(), raw = ordered_json::array();
  for (std::size_t c = 0; c < avg.size(); ++c) {
    if (n[c] == 0) {
      shown.push_back(nullptr);
      raw.push_back(nullptr);
    } else {
      shown.push_back(round(avg[c]));
      raw.push_back(avg[c]);
    }
  }
  return {{"avg", std::move(shown)}, {"avg_raw", std::move(raw)}};
}

ordered_json config_json(const RunSettings& s) {
  ordered_json c;
  c["thresholds"] = {{"s1", s.thresholds.s1}, {"s2", s.thresholds.s2}, {"s3", s.thresholds.s3}};
  c["alpha_min"] = s.decision.alpha_min;
  c["g_max"] = s.g_max;
  c["missing_policy"] = std::string(to_string(s.missing_policy));
  c["decimals"] = s.decimals;
  return c;
}

ordered_json decision_json(const EdgeDecision& d, Rounder round) {
  ordered_json j;
  j["edge"] = to_string(d.original);
  j["verdict"] = std::string(to_string(d.verdict));
  if (d.verdict == Verdict::deleted) {
    j["relevance"] = nullptr;
    j["relevance_raw"] = nullptr;
  } else {
    j["relevance"] = round(d.relevance);
    j["relevance_raw"] = d.relevance;
  }
  j["from"] = d.original.from;
  j["to"] = d.original.to;
  j["avg_cpr"] = round(d.avg_cpr);
  j["avg_cpr_raw"] = d.avg_cpr;
  j["avg_rpr"] = round(d.avg_rpr);
  j["avg_rpr_raw"] = d.avg_rpr;
  j["effective_n"] = d.effective_n;
  if (auto r = d.resulting())
    j["result"] = to_string(*r);
  else
    j["result"] = nullptr;
  if (d.verdict == Verdict::deleted) j["note"] = std::string(deleted_link_note());
  return j;
}

}  // namespace

std::string render_report(const PipelineArtifacts& a) {
  const Rounder round{a.settings.decimals};
  ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["config"] = config_json(a.settings);

  ordered_json initial;
  initial["skills"] = ordered_json::array();
  initial["edges"] = ordered_json::array();
  initial["matrix"] = ordered_json::array();
  if (a.initial) {
    for (const auto& s : a.initial->skills()) initial["skills"].push_back({{"id", s.id}, {"label", s.label}});
    for (const auto& e : a.initial->edges()) initial["edges"].push_back(edge_json(e));
    for (const auto& row : to_matrix(*a.initial)) initial["matrix"].push_back(row);
  }
  doc["initial_hierarchy"] = std::move(initial);

  ordered_json links = ordered_json::array();
  for (const auto& e : a.delta.links) links.push_back(to_string(e));
  doc["learners"] = a.delta.learners;
  doc["links"] = links;

  const auto cols = a.delta.links.size();
  doc["delta"] = {{"rows", learner_table(a.delta.learners, cols, a.delta.values, a.delta.present, round)}};

  ordered_json fuzzy;
  ordered_json cpr = {{"rows", learner_table(a.fuzzy.learners, cols, a.fuzzy.cpr, a.fuzzy.present, round)}};
  ordered_json rpr = {{"rows", learner_table(a.fuzzy.learners, cols, a.fuzzy.rpr, a.fuzzy.present, round)}};
  cpr.update(averages_json(a.averages.avg_cpr, a.averages.effective_n, round));
  rpr.update(averages_json(a.averages.avg_rpr, a.averages.effective_n, round));
  fuzzy["cpr"] = std::move(cpr);
  fuzzy["rpr"] = std::move(rpr);
  fuzzy["effective_n"] = a.averages.effective_n;
  doc["fuzzy"] = std::move(fuzzy);

  ordered_json decisions = ordered_json::array();
  for (const auto& d : a.decisions) decisions.push_back(decision_json(d, round));
  doc["decisions"] = std::move(decisions);

  const auto& f = a.final_hierarchy;
  ordered_json final_json;
  ordered_json skills = ordered_json::array();
  for (const auto& s : f.skills) skills.push_back(s.id);
  final_json["skills"] = std::move(skills);
  ordered_json edges = ordered_json::array();
  for (const auto& e : f.edges) {
    auto j = edge_json(e.edge);
    j["relevance"] = round(e.relevance);
    j["relevance_raw"] = e.relevance;
    ordered_json sources = ordered_json::array();
    for (auto i : e.sources) sources.push_back(to_string(f.provenance[i].original));
    j["sources"] = std::move(sources);
    edges.push_back(std::move(j));
  }
  final_json["edges"] = std::move(edges);
  final_json["cycle_warnings"] = f.cycle_warnings;
  final_json["collision_warnings"] = f.collision_warnings;
  doc["final_hierarchy"] = std::move(final_json);
  doc["warnings"] = a.warnings;

  return doc.dump(2) + "\n";
}

namespace {

std::string dot_id(const std::string& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string render_dot(const FinalHierarchy& f, const DotOptions& options) {
  std::ostringstream out;
  out << "digraph final_hierarchy {\n";
  for (const auto& s : f.skills) {
    out << "  " << dot_id(s.id);
    if (!s.label.empty()) out << " [label=" << dot_id(s.label) << "]";
    out << ";\n";
  }
  for (const auto& e : f.edges)
    out << "  " << dot_id(e.edge.from) << " -> " << dot_id(e.edge.to) << " [label=\""
        << csv::format_fixed(round_half_away(e.relevance, options.decimals), options.decimals) << "\"];\n";
  if (options.include_deleted) {
    for (const auto& d : f.provenance)
      if (d.verdict == Verdict::deleted)
        out << "  " << dot_id(d.original.from) << " -> " << dot_id(d.original.to)
            << " [style=dashed, color=grey, fontcolor=grey, label=\"deleted\"];\n";
  }
  out << "}\n";
  return out.str();
}

TableSet render_tables(const PipelineArtifacts& a) {
  const int dp = a.settings.decimals;
  const auto& links = a.delta.links;
  const auto cols = links.size();

  csv::Row header{"learner"};
  for (const auto& e : links) header.push_back(to_string(e));

  auto fixed = [dp](double v) { return csv::format_fixed(round_half_away(v, dp), dp); };

  TableSet t;
  {
    std::ostringstream out;
    csv::write_row(out, header);
    for (std::size_t r = 0; r < a.delta.learners.size(); ++r) {
      csv::Row row{a.delta.learners[r]};
      for (std::size_t c = 0; c < cols; ++c)
        row.push_back(a.delta.has(r, c) ? csv::format_double(round_half_away(a.delta.at(r, c), dp)) : "");
      csv::write_row(out, row);
    }
    t.delta = out.str();
  }

  auto fuzzy_table = [&](const std::vector<double>& values, const std::vector<double>& avg) {
    std::ostringstream out;
    csv::write_row(out, header);
    for (std::size_t r = 0; r < a.fuzzy.learners.size(); ++r) {
      csv::Row row{a.fuzzy.learners[r]};
      for (std::size_t c = 0; c < cols; ++c) row.push_back(a.fuzzy.has(r, c) ? fixed(values[r * cols + c]) : "");
      csv::write_row(out, row);
    }
    csv::Row row{"AVG"};
    for (std::size_t c = 0; c < cols; ++c) row.push_back(a.averages.effective_n[c] ? fixed(avg[c]) : "");
    csv::write_row(out, row);
    return out.str();
  };
  t.fuzzy_cpr = fuzzy_table(a.fuzzy.cpr, a.averages.avg_cpr);
  t.fuzzy_rpr = fuzzy_table(a.fuzzy.rpr, a.averages.avg_rpr);

  {
    std::ostringstream out;
    csv::write_row(out, {"link", "from", "to", "avg_cpr", "avg_rpr", "effective_n"});
    for (std::size_t c = 0; c < cols; ++c) {
      const auto n = a.averages.effective_n[c];
      csv::write_row(out, {to_string(links[c]), links[c].from, links[c].to, n ? fixed(a.averages.avg_cpr[c]) : "",
                           n ? fixed(a.averages.avg_rpr[c]) : "", std::to_string(n)});
    }
    t.averages = out.str();
  }

  {
    std::ostringstream out;
    csv::write_row(out, {"link", "from", "to", "avg_cpr", "avg_rpr", "verdict", "relevance", "result"});
    for (const auto& d : a.decisions) {
      auto result = d.resulting();
      csv::write_row(out, {to_string(d.original), d.original.from, d.original.to, fixed(d.avg_cpr), fixed(d.avg_rpr),
                           std::string(to_string(d.verdict)), d.verdict == Verdict::deleted ? "" : fixed(d.relevance),
                           result ? to_string(*result) : ""});
    }
    t.decisions = out.str();
  }
  return t;
}

}  // namespace prereq
