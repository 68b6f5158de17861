#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "prereq/membership.hpp"

namespace prereq::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

// Raw-pointer kernel entry points. All matrices are row-major with one row per
// learner. Implementations must produce bit-identical results.
struct KernelTable {
  Isa isa;

  // out[r*links + k] = grades[r*skills + to[k]] - grades[r*skills + from[k]]
  void (*delta)(const double* grades, std::size_t rows, std::size_t skills, const std::int32_t* from,
                const std::int32_t* to, std::size_t links, double* out);

  // Elementwise mu_cpr / mu_rpr over n values.
  void (*fuzzify)(const double* delta, std::size_t n, const Thresholds& t, double* cpr, double* rpr);

  // sums[c] = Σ_r values[r*cols + c] over rows with present[r*cols + c] != 0,
  // accumulated in row order.
  void (*column_sums)(const double* values, const std::uint8_t* present, std::size_t rows, std::size_t cols,
                      double* sums);
};

const KernelTable& scalar();

/// Null when the build has no AVX2 path or the CPU lacks AVX2.
const KernelTable* avx2();

bool cpu_has_avx2();

/// Best kernels for this machine. PREREQ_KERNEL=scalar forces the reference
/// path.
const KernelTable& active();

namespace detail {
#if defined(PREREQ_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace prereq::kernels
