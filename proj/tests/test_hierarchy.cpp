#include <doctest.h>

#include <random>
#include <sstream>

#include "worked_example.hpp"
#include "prereq/error.hpp"
#include "prereq/hierarchy.hpp"
#include "random_instances.hpp"

using namespace prereq;

namespace {

std::string error_of(const std::vector<Skill>& skills, const std::vector<Edge>& edges) {
  try {
    build_hierarchy(skills, edges);
  } catch (const Error& e) {
    CHECK(e.stage() == "hierarchy");
    return e.what();
  }
  return {};
}

std::vector<Skill> skills_of(std::initializer_list<const char*> ids) {
  std::vector<Skill> s;
  for (auto id : ids) s.push_back({id, ""});
  return s;
}

}  // namespace

TEST_CASE("worked-example hierarchy builds with 7 skills and 9 edges") {
  auto h = fixture::hierarchy();
  CHECK(h.skills().size() == 7);
  CHECK(h.edges().size() == 9);
  CHECK(edges_of(h) == fixture::kEdges);
}

TEST_CASE("to_matrix matches the expert matrix") {
  auto m = to_matrix(fixture::hierarchy());
  REQUIRE(m.size() == 7);
  CHECK(m[0] == std::vector<int>{0, 1, 1, 0, 0, 0, 0});
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK(m[i][j] == fixture::kMatrix[i][j]);
}

TEST_CASE("single node hierarchy") {
  auto h = build_hierarchy(skills_of({"A"}), {});
  CHECK(to_matrix(h) == std::vector<std::vector<int>>{{0}});
  CHECK(edges_of(h).empty());
}

TEST_CASE("validation errors name the offending elements") {
  auto ab = skills_of({"A", "B"});
  CHECK(error_of(skills_of({"A", "A"}), {}).find("duplicate skill id 'A'") != std::string::npos);
  CHECK(error_of(skills_of({""}), {}).find("empty id") != std::string::npos);
  CHECK(error_of(ab, {{"A", "Z"}}).find("unknown skill 'Z'") != std::string::npos);
  CHECK(error_of(ab, {{"A", "A"}}).find("self-loop on skill 'A'") != std::string::npos);
  CHECK(error_of(ab, {{"A", "B"}, {"A", "B"}}).find("duplicate edge A→B") != std::string::npos);

  auto cycle = error_of(ab, {{"A", "B"}, {"B", "A"}});
  CHECK(cycle.find("cycle detected") != std::string::npos);
  CHECK(cycle.find("A → B → A") != std::string::npos);
}

TEST_CASE("edges_of is stable across calls") {
  auto h = fixture::hierarchy();
  CHECK(edges_of(h) == edges_of(h));
  CHECK(&edges_of(h) == &h.edges());
}

TEST_CASE("property: random DAGs build, round-trip edge order, and a back-edge is rejected") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 9);
    auto h = gen::random_dag(rng, size(rng), 0.45);
    auto again = build_hierarchy(h.skills(), h.edges());
    CHECK(edges_of(again) == h.edges());

    auto m = to_matrix(h);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::size_t row_sum = 0;
      for (int v : m[i]) row_sum += static_cast<std::size_t>(v);
      std::size_t out_degree = 0;
      for (const auto& e : h.edges()) out_degree += e.from == h.skills()[i].id;
      CHECK(row_sum == out_degree);
      ones += row_sum;
    }
    CHECK(ones == h.edges().size());

    if (h.edges().empty()) continue;
    // Close a path u → … → v with v → u.
    std::uniform_int_distribution<std::size_t> pick(0, h.edges().size() - 1);
    const auto& e = h.edges()[pick(rng)];
    auto edges = h.edges();
    edges.push_back(e.reversed());
    CHECK_THROWS_AS(build_hierarchy(h.skills(), edges), Error);
  }
}

TEST_CASE("JSON and CSV hierarchy files") {
  auto json = load_hierarchy(fixture::fixture_path("worked/hierarchy.json"));
  auto csv = load_hierarchy(fixture::fixture_path("worked/hierarchy.csv"));
  CHECK(json.edges() == fixture::kEdges);
  CHECK(csv.edges() == fixture::kEdges);
  // CSV skill order is first appearance: A B C F D E G
  std::vector<std::string> order;
  for (const auto& s : csv.skills()) order.push_back(s.id);
  CHECK(order == std::vector<std::string>{"A", "B", "C", "F", "D", "E", "G"});

  std::istringstream labelled(R"({"skills":[{"id":"x","label":"Loops"},{"id":"y"}],"edges":[{"from":"x","to":"y"}]})");
  auto h = parse_hierarchy_json(labelled);
  CHECK(h.skills()[0].label == "Loops");

  std::istringstream back(hierarchy_to_json(h));
  CHECK(parse_hierarchy_json(back).edges() == h.edges());

  std::istringstream bad_header("a,b\nA,B\n");
  CHECK_THROWS_AS(parse_hierarchy_csv(bad_header), Error);
  std::istringstream bad_json("{\"edges\": []}");
  CHECK_THROWS_AS(parse_hierarchy_json(bad_json), Error);
  CHECK_THROWS_AS(load_hierarchy("/nonexistent/file.json"), Error);
}
