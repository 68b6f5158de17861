#pragma once

namespace prereq {

/// Fuzzy-set thresholds on Δ = grade(to) − grade(from). Valid iff
/// s1 < 0 < s2 < s3.
struct Thresholds {
  double s1 = -5.0;
  double s2 = 5.0;
  double s3 = 10.0;

  bool valid() const noexcept { return s1 < 0.0 && 0.0 < s2 && s2 < s3; }

  /// Throws prereq::Error (stage "fuzzy") naming the violated constraint.
  void validate() const;
};

// Both functions are the reference definitions; the kernels evaluate the
// same expressions so scalar and vector paths agree bit for bit.

/// Correct-prerequisite membership: triangle on [s1, s2] peaking at Δ = 0.
inline double mu_cpr(double delta, const Thresholds& t) noexcept {
  if (delta < t.s1) return 0.0;
  if (delta <= 0.0) return 1.0 - delta / t.s1;
  if (delta <= t.s2) return 1.0 - delta / t.s2;
  return 0.0;
}

/// Reversed-prerequisite membership: triangle on [0, s3] peaking at Δ = s2.
inline double mu_rpr(double delta, const Thresholds& t) noexcept {
  if (delta < 0.0) return 0.0;
  if (delta <= t.s2) return delta / t.s2;
  if (delta <= t.s3) return (t.s3 - delta) / (t.s3 - t.s2);
  return 0.0;
}

}  // namespace prereq
