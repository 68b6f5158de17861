#include <cstdlib>
#include <string_view>

#include "prereq/kernels.hpp"

namespace prereq::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool cpu_has_avx2() {
#if defined(PREREQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

const KernelTable* avx2() {
#if defined(PREREQ_HAVE_AVX2)
  if (cpu_has_avx2()) return &detail::avx2_table();
#endif
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("PREREQ_KERNEL");
    if (force && std::string_view(force) == "scalar") return &scalar();
    if (const auto* v = avx2()) return v;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace prereq::kernels
