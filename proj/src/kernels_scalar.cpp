#include "prereq/kernels.hpp"

namespace prereq::kernels {

namespace {

void delta_scalar(const double* grades, std::size_t rows, std::size_t skills, const std::int32_t* from,
                  const std::int32_t* to, std::size_t links, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* g = grades + r * skills;
    double* o = out + r * links;
    for (std::size_t k = 0; k < links; ++k) o[k] = g[to[k]] - g[from[k]];
  }
}

void fuzzify_scalar(const double* delta, std::size_t n, const Thresholds& t, double* cpr, double* rpr) {
  for (std::size_t i = 0; i < n; ++i) {
    cpr[i] = mu_cpr(delta[i], t);
    rpr[i] = mu_rpr(delta[i], t);
  }
}

void column_sums_scalar(const double* values, const std::uint8_t* present, std::size_t rows, std::size_t cols,
                        double* sums) {
  for (std::size_t c = 0; c < cols; ++c) sums[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (present[r * cols + c]) sums[c] += values[r * cols + c];
}

constexpr KernelTable kScalar{Isa::scalar, delta_scalar, fuzzify_scalar, column_sums_scalar};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace prereq::kernels
