#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prereq {

enum class MissingPolicy {
  strict,  // an empty cell is an error
  skip,    // an empty cell drops the learner from every link touching that skill
};

std::string_view to_string(MissingPolicy policy);
MissingPolicy parse_missing_policy(std::string_view text);

inline constexpr double kDefaultGradeMax = 20.0;

/// Learners × skills grades, row-major. Immutable once created.
class GradeMatrix {
 public:
  /// `values` and `present` are row-major learners × skills. Absent cells
  /// must hold 0. Throws prereq::Error (stage "grades") on a shape mismatch,
  /// duplicate ids, a non-finite value or a value outside [0, g_max].
  static GradeMatrix create(std::vector<std::string> learners, std::vector<std::string> skills,
                            std::vector<double> values, std::vector<std::uint8_t> present,
                            double g_max = kDefaultGradeMax);

  /// Complete matrix shortcut.
  static GradeMatrix create(std::vector<std::string> learners, std::vector<std::string> skills,
                            std::vector<double> values, double g_max = kDefaultGradeMax);

  const std::vector<std::string>& learners() const noexcept { return learners_; }
  const std::vector<std::string>& skills() const noexcept { return skills_; }
  double g_max() const noexcept { return g_max_; }

  std::size_t learner_count() const noexcept { return learners_.size(); }
  std::size_t skill_count() const noexcept { return skills_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> present() const noexcept { return present_; }

  double at(std::size_t learner, std::size_t skill) const { return values_[learner * skills_.size() + skill]; }
  bool has(std::size_t learner, std::size_t skill) const { return present_[learner * skills_.size() + skill] != 0; }
  bool complete() const noexcept;

  /// Throws when the id is unknown.
  std::size_t learner_index(std::string_view id) const;
  std::size_t skill_index(std::string_view id) const;
  bool has_skill(std::string_view id) const { return skill_lookup_.count(std::string(id)) != 0; }

 private:
  GradeMatrix() = default;

  std::vector<std::string> learners_;
  std::vector<std::string> skills_;
  std::vector<double> values_;
  std::vector<std::uint8_t> present_;
  double g_max_ = kDefaultGradeMax;
  std::unordered_map<std::string, std::size_t> learner_lookup_;
  std::unordered_map<std::string, std::size_t> skill_lookup_;
};

/// CSV with header `learner,<skill>...`, one row per learner. Under
/// MissingPolicy::skip an empty cell is recorded as absent.
GradeMatrix load_grades(std::istream& source, double g_max = kDefaultGradeMax,
                        MissingPolicy policy = MissingPolicy::strict);

/// Inverse of load_grades; absent cells are written empty.
void write_grades(std::ostream& out, const GradeMatrix& m);

/// Throws prereq::Error for an unknown learner or skill, or an absent cell.
double grade_of(const GradeMatrix& m, std::string_view learner, std::string_view skill);

}  // namespace prereq
