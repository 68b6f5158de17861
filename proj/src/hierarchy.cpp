#include "prereq/hierarchy.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "prereq/csv.hpp"
#include "prereq/error.hpp"
#include "prereq/graph.hpp"

namespace prereq {

namespace {

constexpr const char* kStage = "hierarchy";

std::string join_cycle(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) s += id + " → ";
  return s + ids.front();
}

}  // namespace

std::string to_string(const Edge& edge) { return edge.from + "→" + edge.to; }

Hierarchy Hierarchy::build(std::vector<Skill> skills, std::vector<Edge> edges) {
  Hierarchy h;
  for (std::size_t i = 0; i < skills.size(); ++i) {
    const auto& id = skills[i].id;
    if (id.empty()) throw Error(kStage, "skill #" + std::to_string(i + 1) + " has an empty id");
    if (!h.index_.emplace(id, i).second) throw Error(kStage, "duplicate skill id '" + id + "'");
  }

  std::set<Edge> seen;
  std::vector<graph::Arc> arcs;
  arcs.reserve(edges.size());
  for (const auto& e : edges) {
    for (const auto* end : {&e.from, &e.to})
      if (!h.index_.count(*end))
        throw Error(kStage, "edge " + to_string(e) + " references unknown skill '" + *end + "'");
    if (e.from == e.to) throw Error(kStage, "self-loop on skill '" + e.from + "'");
    if (!seen.insert(e).second) throw Error(kStage, "duplicate edge " + to_string(e));
    arcs.push_back({h.index_.at(e.from), h.index_.at(e.to)});
  }

  auto cycles = graph::find_cycles(skills.size(), arcs);
  if (!cycles.empty()) {
    std::vector<std::string> ids;
    for (auto v : cycles.front()) ids.push_back(skills[v].id);
    throw Error(kStage, "cycle detected: " + join_cycle(ids));
  }

  h.skills_ = std::move(skills);
  h.edges_ = std::move(edges);
  return h;
}

bool Hierarchy::contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

std::size_t Hierarchy::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw Error(kStage, "unknown skill '" + std::string(id) + "'");
  return it->second;
}

Hierarchy build_hierarchy(std::vector<Skill> skills, std::vector<Edge> edges) {
  return Hierarchy::build(std::move(skills), std::move(edges));
}

std::vector<std::vector<int>> to_matrix(const Hierarchy& h) {
  const auto n = h.skills().size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const auto& e : h.edges()) m[h.index_of(e.from)][h.index_of(e.to)] = 1;
  return m;
}

const std::vector<Edge>& edges_of(const Hierarchy& h) { return h.edges(); }

Hierarchy parse_hierarchy_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(kStage, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("skills") || !doc["skills"].is_array())
    throw Error(kStage, "JSON hierarchy needs a \"skills\" array");

  auto string_field = [](const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
      throw Error(kStage, where + " needs a string \"" + key + "\"");
    return obj[key].get<std::string>();
  };

  std::vector<Skill> skills;
  for (std::size_t i = 0; i < doc["skills"].size(); ++i) {
    const auto& s = doc["skills"][i];
    Skill skill{string_field(s, "id", "skill #" + std::to_string(i + 1)), ""};
    if (s.contains("label") && s["label"].is_string()) skill.label = s["label"].get<std::string>();
    skills.push_back(std::move(skill));
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw Error(kStage, "\"edges\" must be an array");
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
      const auto& e = doc["edges"][i];
      auto where = "edge #" + std::to_string(i + 1);
      edges.push_back({string_field(e, "from", where), string_field(e, "to", where)});
    }
  }
  return build_hierarchy(std::move(skills), std::move(edges));
}

Hierarchy parse_hierarchy_csv(std::istream& in) {
  auto rows = csv::read(in);
  if (rows.empty()) throw Error(kStage, "empty edge-list CSV");
  const auto& header = rows.front();
  if (header.size() != 2 || csv::trim(header[0]) != "from" || csv::trim(header[1]) != "to")
    throw Error(kStage, "edge-list CSV header must be 'from,to'");

  std::vector<Skill> skills;
  std::set<std::string> known;
  std::vector<Edge> edges;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 2) throw Error(kStage, "line " + std::to_string(r + 1) + ": expected 2 fields");
    Edge e{std::string(csv::trim(row[0])), std::string(csv::trim(row[1]))};
    for (const auto* id : {&e.from, &e.to})
      if (!id->empty() && known.insert(*id).second) skills.push_back({*id, ""});
    if (e.from.empty() || e.to.empty()) throw Error(kStage, "line " + std::to_string(r + 1) + ": empty skill id");
    edges.push_back(std::move(e));
  }
  return build_hierarchy(std::move(skills), std::move(edges));
}

Hierarchy load_hierarchy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(kStage, "cannot open '" + path.string() + "'");
  if (path.extension() == ".json") return parse_hierarchy_json(in);
  return parse_hierarchy_csv(in);
}

std::string hierarchy_to_json(const Hierarchy& h) {
  nlohmann::ordered_json doc;
  doc["skills"] = nlohmann::ordered_json::array();
  for (const auto& s : h.skills()) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    if (!s.label.empty()) j["label"] = s.label;
    doc["skills"].push_back(std::move(j));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : h.edges()) doc["edges"].push_back({{"from", e.from}, {"to", e.to}});
  return doc.dump(2) + "\n";
}

}  // namespace prereq
