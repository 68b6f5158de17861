#include <doctest.h>

#include <cmath>
#include <sstream>

#include "worked_example.hpp"
#include "prereq/error.hpp"
#include "prereq/pipeline.hpp"
#include "prereq/simulator.hpp"

using namespace prereq;

namespace {

Hierarchy path_graph(std::size_t n) {
  std::vector<Skill> skills;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) skills.push_back({"P" + std::to_string(i), ""});
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({skills[i].id, skills[i + 1].id});
  return build_hierarchy(skills, edges);
}

CohortSpec spec(std::size_t n, double noise, std::uint64_t seed) {
  CohortSpec s;
  s.n_learners = n;
  s.noise_spread = noise;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("zero noise gives zero deltas on single-prerequisite chains") {
  auto h = path_graph(6);
  auto m = generate_cohort(h, spec(50, 0.0, 3), Thresholds{});
  auto a = run_refinement(h, m, RunSettings{});
  for (double d : a.delta.values) CHECK(d == 0.0);
  for (const auto& d : a.decisions) {
    CHECK(d.verdict == Verdict::kept);
    CHECK(d.relevance == 1.0);
  }
}

TEST_CASE("fixed seed reproduces the cohort; different seeds differ") {
  auto h = fixture::hierarchy();
  auto a = generate_cohort(h, spec(40, 2.0, 77), Thresholds{});
  auto b = generate_cohort(h, spec(40, 2.0, 77), Thresholds{});
  auto c = generate_cohort(h, spec(40, 2.0, 78), Thresholds{});
  CHECK(std::vector<double>(a.values().begin(), a.values().end()) ==
        std::vector<double>(b.values().begin(), b.values().end()));
  CHECK(std::vector<double>(a.values().begin(), a.values().end()) !=
        std::vector<double>(c.values().begin(), c.values().end()));
}

TEST_CASE("learner streams are independent of cohort size") {
  auto h = fixture::hierarchy();
  auto small = generate_cohort(h, spec(10, 2.0, 5), Thresholds{});
  auto large = generate_cohort(h, spec(25, 2.0, 5), Thresholds{});
  for (std::size_t i = 0; i < small.values().size(); ++i) CHECK(small.values()[i] == large.values()[i]);
}

TEST_CASE("generated grades respect the generator contract") {
  auto h = fixture::hierarchy();
  auto s = spec(100, 2.0, 9);
  auto m = generate_cohort(h, s, Thresholds{});
  CHECK(m.learners().front() == "L1");
  for (std::size_t l = 0; l < m.learner_count(); ++l) {
    double a = m.at(l, h.index_of("A"));
    CHECK(a >= s.base_low);
    CHECK(a <= s.base_high);
    // E's prerequisites are C and D
    double bottleneck = std::min(m.at(l, h.index_of("C")), m.at(l, h.index_of("D")));
    CHECK(std::abs(m.at(l, h.index_of("E")) - bottleneck) <= s.noise_spread);
  }
}

TEST_CASE("worked-example topology, n=200, noise 2: every link kept") {
  auto h = fixture::hierarchy();
  auto m = generate_cohort(h, spec(200, 2.0, 2024), Thresholds{});
  auto a = run_refinement(h, m, RunSettings{});
  for (const auto& d : a.decisions) {
    CHECK(d.verdict == Verdict::kept);
    CHECK(d.avg_cpr >= 0.6);
    CHECK(d.avg_rpr < 0.5);
  }
}

TEST_CASE("cohort export round-trips through the grade loader") {
  auto h = fixture::hierarchy();
  auto m = generate_cohort(h, spec(30, 1.5, 1), Thresholds{});
  std::ostringstream out;
  write_grades(out, m);
  std::istringstream in(out.str());
  auto back = load_grades(in);
  for (std::size_t i = 0; i < m.values().size(); ++i) CHECK(back.values()[i] == m.values()[i]);
}

TEST_CASE("cohort spec validation and JSON") {
  auto h = fixture::hierarchy();
  CHECK_THROWS_AS(generate_cohort(h, spec(0, 1.0, 1), Thresholds{}), Error);
  CHECK_THROWS_AS(generate_cohort(h, spec(5, -1.0, 1), Thresholds{}), Error);
  auto bad_range = spec(5, 1.0, 1);
  bad_range.base_low = 15;
  bad_range.base_high = 10;
  CHECK_THROWS_AS(generate_cohort(h, bad_range, Thresholds{}), Error);
  CHECK_THROWS_AS(generate_cohort(h, spec(5, 1.0, 1), Thresholds{-5, 5, 4}), Error);

  auto parsed = parse_cohort_spec(R"({"n_learners": 12, "noise_spread": 0.5, "base_grade_range": [4, 9], "seed": 99})");
  CHECK(parsed.n_learners == 12);
  CHECK(parsed.base_low == 4);
  CHECK(parsed.seed == 99);
  auto again = parse_cohort_spec(cohort_spec_to_json(parsed));
  CHECK(again.noise_spread == 0.5);
  CHECK(again.base_high == 9);
  CHECK_THROWS_AS(parse_cohort_spec("[1,2]"), Error);
  CHECK_THROWS_AS(parse_cohort_spec(R"({"base_grade_range": [1]})"), Error);
}

TEST_CASE("perturb_hierarchy") {
  auto h = fixture::hierarchy();
  auto p = perturb_hierarchy(h, {{"B", "F"}});
  CHECK(p.edges()[2] == Edge{"F", "B"});
  CHECK_THROWS_WITH_AS(perturb_hierarchy(h, {{"C", "E"}}), doctest::Contains("cycle"), Error);
  CHECK(perturb_hierarchy(h, {}).edges() == h.edges());
  auto chain = path_graph(3);
  CHECK_NOTHROW(perturb_hierarchy(chain, {{"P0", "P1"}}));
  auto tri = build_hierarchy({{"A", ""}, {"B", ""}, {"C", ""}}, {{"A", "B"}, {"B", "C"}, {"A", "C"}});
  CHECK_THROWS_WITH_AS(perturb_hierarchy(tri, {{"A", "C"}}), doctest::Contains("cycle"), Error);
  CHECK_THROWS_AS(perturb_hierarchy(h, {{"A", "G"}}), Error);
}

TEST_CASE("choose_reversible_edges is deterministic and keeps a DAG") {
  auto h = fixture::hierarchy();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto a = choose_reversible_edges(h, 3, seed);
    CHECK(a == choose_reversible_edges(h, 3, seed));
    CHECK(a.size() == 3);
    CHECK_NOTHROW(perturb_hierarchy(h, a));
  }
}

TEST_CASE("evaluate_recovery") {
  std::vector<EdgeDecision> predicted{{{"A", "B"}, Verdict::kept, 0.9, 0.9, 0.1, 5},
                                      {{"B", "C"}, Verdict::kept, 0.8, 0.8, 0.1, 5}};
  TruthVerdicts truth{{{"A", "B"}, Verdict::kept}, {{"B", "C"}, Verdict::kept}};
  auto s = evaluate_recovery(truth, predicted);
  CHECK(s.accuracy == 1.0);
  CHECK(s.evaluated == 2);
  CHECK(s.confusion[0][0] == 2);
  CHECK(std::isnan(s.recall[1]));

  for (auto& d : predicted) d.verdict = Verdict::deleted;
  auto all_deleted = evaluate_recovery(truth, predicted);
  CHECK(all_deleted.recall[static_cast<std::size_t>(Verdict::kept)] == 0.0);
  CHECK(all_deleted.accuracy == 0.0);
  std::size_t total = 0;
  for (const auto& row : all_deleted.confusion)
    for (auto v : row) total += v;
  CHECK(total == 2);

  TruthVerdicts other{{{"A", "B"}, Verdict::kept}, {{"X", "Y"}, Verdict::kept}};
  CHECK_THROWS_AS(evaluate_recovery(other, predicted), Error);
  CHECK_THROWS_AS(evaluate_recovery({{{"A", "B"}, Verdict::kept}}, predicted), Error);
}

TEST_CASE("perturbed-expert experiment: flipped links are not recovered as REVERSED") {
  // With symmetric thresholds cpr(d) + rpr(-d) ≤ 1, and this generator keeps
  // every true link (mean cpr > 0.5), so a flipped link's mean rpr stays
  // below 0.5. Observed outcome, asserted: the flipped link is KEPT.
  auto truth = fixture::hierarchy();
  auto cohort = generate_cohort(truth, spec(200, 2.0, 11), Thresholds{});
  auto expert = perturb_hierarchy(truth, {{"B", "F"}});
  auto a = run_refinement(expert, cohort, RunSettings{});
  const auto& flipped = a.decisions[2];
  CHECK(flipped.original == Edge{"F", "B"});
  CHECK(flipped.avg_rpr < 0.5);
  CHECK(flipped.verdict == Verdict::kept);
  auto stats = evaluate_recovery(expected_verdicts(expert, {{"B", "F"}}), a.decisions);
  CHECK(stats.confusion[static_cast<std::size_t>(Verdict::reversed)][static_cast<std::size_t>(Verdict::kept)] == 1);
}
