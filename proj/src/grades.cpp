#include "prereq/grades.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "prereq/csv.hpp"
#include "prereq/error.hpp"

namespace prereq {

namespace {
constexpr const char* kStage = "grades";
}

std::string_view to_string(MissingPolicy policy) { return policy == MissingPolicy::strict ? "STRICT" : "SKIP"; }

MissingPolicy parse_missing_policy(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "STRICT") return MissingPolicy::strict;
  if (up == "SKIP") return MissingPolicy::skip;
  throw Error("config", "unknown missing policy '" + std::string(text) + "' (expected STRICT or SKIP)");
}

GradeMatrix GradeMatrix::create(std::vector<std::string> learners, std::vector<std::string> skills,
                                std::vector<double> values, std::vector<std::uint8_t> present, double g_max) {
  if (!(g_max > 0.0) || !std::isfinite(g_max)) throw Error(kStage, "g_max must be a positive finite number");
  const auto rows = learners.size(), cols = skills.size();
  if (values.size() != rows * cols || present.size() != rows * cols)
    throw Error(kStage, "value count does not match learners × skills");

  GradeMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    if (learners[r].empty()) throw Error(kStage, "row " + std::to_string(r + 1) + " has an empty learner id");
    if (!m.learner_lookup_.emplace(learners[r], r).second)
      throw Error(kStage, "duplicate learner id '" + learners[r] + "'");
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (skills[c].empty()) throw Error(kStage, "column " + std::to_string(c + 2) + " has an empty skill id");
    if (!m.skill_lookup_.emplace(skills[c], c).second)
      throw Error(kStage, "duplicate skill column '" + skills[c] + "'");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      auto& v = values[r * cols + c];
      if (!present[r * cols + c]) {
        v = 0.0;
        continue;
      }
      if (!std::isfinite(v) || v < 0.0 || v > g_max)
        throw Error(kStage, "grade " + csv::format_double(v) + " for learner '" + learners[r] + "', skill '" +
                                skills[c] + "' is outside [0, " + csv::format_double(g_max) + "]");
    }
  }
  m.learners_ = std::move(learners);
  m.skills_ = std::move(skills);
  m.values_ = std::move(values);
  m.present_ = std::move(present);
  m.g_max_ = g_max;
  return m;
}

GradeMatrix GradeMatrix::create(std::vector<std::string> learners, std::vector<std::string> skills,
                                std::vector<double> values, double g_max) {
  std::vector<std::uint8_t> present(values.size(), 1);
  return create(std::move(learners), std::move(skills), std::move(values), std::move(present), g_max);
}

bool GradeMatrix::complete() const noexcept {
  return std::all_of(present_.begin(), present_.end(), [](std::uint8_t p) { return p != 0; });
}

std::size_t GradeMatrix::learner_index(std::string_view id) const {
  auto it = learner_lookup_.find(std::string(id));
  if (it == learner_lookup_.end()) throw Error(kStage, "unknown learner '" + std::string(id) + "'");
  return it->second;
}

std::size_t GradeMatrix::skill_index(std::string_view id) const {
  auto it = skill_lookup_.find(std::string(id));
  if (it == skill_lookup_.end()) throw Error(kStage, "unknown skill '" + std::string(id) + "'");
  return it->second;
}

GradeMatrix load_grades(std::istream& source, double g_max, MissingPolicy policy) {
  auto rows = csv::read(source);
  if (rows.empty()) throw Error(kStage, "grade file is empty");
  const auto& header = rows.front();
  if (header.size() < 2) throw Error(kStage, "header needs a learner column and at least one skill column");

  std::vector<std::string> skills;
  for (std::size_t c = 1; c < header.size(); ++c) skills.emplace_back(csv::trim(header[c]));

  std::vector<std::string> learners;
  std::vector<double> values;
  std::vector<std::uint8_t> present;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto line = std::to_string(r + 1);
    if (row.size() != header.size())
      throw Error(kStage, "line " + line + ": expected " + std::to_string(header.size()) + " fields, got " +
                              std::to_string(row.size()));
    learners.emplace_back(csv::trim(row[0]));
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto cell = csv::trim(row[c]);
      const auto where = "learner '" + learners.back() + "', skill '" + skills[c - 1] + "'";
      if (cell.empty()) {
        if (policy == MissingPolicy::strict) throw Error(kStage, "missing grade for " + where);
        values.push_back(0.0);
        present.push_back(0);
        continue;
      }
      double v = 0.0;
      if (!csv::parse_double(cell, v))
        throw Error(kStage, "non-numeric grade '" + std::string(cell) + "' for " + where);
      values.push_back(v);
      present.push_back(1);
    }
  }
  return GradeMatrix::create(std::move(learners), std::move(skills), std::move(values), std::move(present), g_max);
}

void write_grades(std::ostream& out, const GradeMatrix& m) {
  csv::Row row{"learner"};
  row.insert(row.end(), m.skills().begin(), m.skills().end());
  csv::write_row(out, row);
  for (std::size_t r = 0; r < m.learner_count(); ++r) {
    row.assign(1, m.learners()[r]);
    for (std::size_t c = 0; c < m.skill_count(); ++c) row.push_back(m.has(r, c) ? csv::format_double(m.at(r, c)) : "");
    csv::write_row(out, row);
  }
}

double grade_of(const GradeMatrix& m, std::string_view learner, std::string_view skill) {
  auto r = m.learner_index(learner);
  auto c = m.skill_index(skill);
  if (!m.has(r, c))
    throw Error(kStage, "no grade for learner '" + std::string(learner) + "', skill '" + std::string(skill) + "'");
  return m.at(r, c);
}

}  // namespace prereq
