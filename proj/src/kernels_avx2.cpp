// Compiled with -mavx2 only; selected at runtime after a cpuid check.

#include <immintrin.h>

#include "prereq/kernels.hpp"

namespace prereq::kernels {

namespace {

void delta_avx2(const double* grades, std::size_t rows, std::size_t skills, const std::int32_t* from,
                const std::int32_t* to, std::size_t links, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* g = grades + r * skills;
    double* o = out + r * links;
    std::size_t k = 0;
    for (; k + 4 <= links; k += 4) {
      __m128i ti = _mm_loadu_si128(reinterpret_cast<const __m128i*>(to + k));
      __m128i fi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(from + k));
      __m256d gt = _mm256_i32gather_pd(g, ti, 8);
      __m256d gf = _mm256_i32gather_pd(g, fi, 8);
      _mm256_storeu_pd(o + k, _mm256_sub_pd(gt, gf));
    }
    for (; k < links; ++k) o[k] = g[to[k]] - g[from[k]];
  }
}

void fuzzify_avx2(const double* delta, std::size_t n, const Thresholds& t, double* cpr, double* rpr) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d s1 = _mm256_set1_pd(t.s1);
  const __m256d s2 = _mm256_set1_pd(t.s2);
  const __m256d s3 = _mm256_set1_pd(t.s3);
  const __m256d falling = _mm256_sub_pd(s3, s2);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_loadu_pd(delta + i);
    __m256d at_or_below_zero = _mm256_cmp_pd(d, zero, _CMP_LE_OQ);
    __m256d at_or_below_s2 = _mm256_cmp_pd(d, s2, _CMP_LE_OQ);

    // CPR: 1 - d/s1 on [s1, 0], 1 - d/s2 on (0, s2], else 0
    __m256d left = _mm256_sub_pd(one, _mm256_div_pd(d, s1));
    __m256d right = _mm256_sub_pd(one, _mm256_div_pd(d, s2));
    __m256d c = _mm256_blendv_pd(right, left, at_or_below_zero);
    __m256d in_cpr = _mm256_and_pd(_mm256_cmp_pd(d, s1, _CMP_GE_OQ), at_or_below_s2);
    _mm256_storeu_pd(cpr + i, _mm256_and_pd(c, in_cpr));

    // RPR: d/s2 on [0, s2], (s3 - d)/(s3 - s2) on (s2, s3], else 0
    __m256d rise = _mm256_div_pd(d, s2);
    __m256d fall = _mm256_div_pd(_mm256_sub_pd(s3, d), falling);
    __m256d r = _mm256_blendv_pd(fall, rise, at_or_below_s2);
    __m256d in_rpr = _mm256_and_pd(_mm256_cmp_pd(d, zero, _CMP_GE_OQ), _mm256_cmp_pd(d, s3, _CMP_LE_OQ));
    _mm256_storeu_pd(rpr + i, _mm256_and_pd(r, in_rpr));
  }
  for (; i < n; ++i) {
    cpr[i] = mu_cpr(delta[i], t);
    rpr[i] = mu_rpr(delta[i], t);
  }
}

void column_sums_avx2(const double* values, const std::uint8_t* present, std::size_t rows, std::size_t cols,
                      double* sums) {
  std::size_t c = 0;
  for (; c + 4 <= cols; c += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t r = 0; r < rows; ++r) {
      std::int32_t bytes;
      __builtin_memcpy(&bytes, present + r * cols + c, 4);
      __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(bytes));
      __m256d keep = _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
      acc = _mm256_add_pd(acc, _mm256_and_pd(keep, _mm256_loadu_pd(values + r * cols + c)));
    }
    _mm256_storeu_pd(sums + c, acc);
  }
  for (; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
      if (present[r * cols + c]) s += values[r * cols + c];
    sums[c] = s;
  }
}

constexpr KernelTable kAvx2{Isa::avx2, delta_avx2, fuzzify_avx2, column_sums_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() { return kAvx2; }
}  // namespace detail

}  // namespace prereq::kernels
