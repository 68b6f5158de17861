#pragma once

#include <cstddef>
#include <compare>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prereq {

struct Skill {
  std::string id;
  std::string label;  // optional display name, may be empty

  bool operator==(const Skill&) const = default;
};

/// A prerequisite link: mastering `from` comes before learning `to`.
struct Edge {
  std::string from;
  std::string to;

  Edge reversed() const { return {to, from}; }

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

/// "A→B"
std::string to_string(const Edge& edge);

/// Validated expert hierarchy. Immutable once built; edge order is the
/// construction order and drives the column order of every derived table.
class Hierarchy {
 public:
  /// Throws prereq::Error (stage "hierarchy") on an empty or duplicate skill
  /// id, an unknown endpoint, a self-loop, a duplicate edge or a cycle.
  static Hierarchy build(std::vector<Skill> skills, std::vector<Edge> edges);

  const std::vector<Skill>& skills() const noexcept { return skills_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool contains(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;

 private:
  Hierarchy() = default;

  std::vector<Skill> skills_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
};

Hierarchy build_hierarchy(std::vector<Skill> skills, std::vector<Edge> edges);

/// Square 0/1 matrix in skill order; [i][j] == 1 iff skill i → skill j.
std::vector<std::vector<int>> to_matrix(const Hierarchy& h);

const std::vector<Edge>& edges_of(const Hierarchy& h);

// File formats. JSON: {"skills":[{"id","label"}], "edges":[{"from","to"}]},
// skill list order is authoritative. CSV: header `from,to`, skills ordered by
// first appearance.
Hierarchy parse_hierarchy_json(std::istream& in);
Hierarchy parse_hierarchy_csv(std::istream& in);

/// Dispatches on extension: `.json` → JSON, anything else → edge-list CSV.
Hierarchy load_hierarchy(const std::filesystem::path& path);

std::string hierarchy_to_json(const Hierarchy& h);

}  // namespace prereq
