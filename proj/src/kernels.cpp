#include "psi/kernels.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif

namespace psi::kern {

void margin_max_cm_scalar(const double* cols, int n, int d, const double* point,
                          double* out) {
  const double p0 = point[0];
  for (int j = 0; j < n; ++j) out[j] = p0 - cols[j];
  for (int r = 1; r < d; ++r) {
    const double* col = cols + static_cast<std::size_t>(r) * n;
    const double p = point[r];
    for (int j = 0; j < n; ++j) {
      const double v = p - col[j];
      out[j] = out[j] > v ? out[j] : v;  // ties keep v, as max_pd does
    }
  }
}

#if defined(__x86_64__) || defined(_M_X64)

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

__attribute__((target("avx2"))) void margin_max_cm_avx2(const double* cols,
                                                        int n, int d,
                                                        const double* point,
                                                        double* out) {
  const int n4 = n & ~3;
  {
    const __m256d p0 = _mm256_set1_pd(point[0]);
    for (int j = 0; j < n4; j += 4)
      _mm256_storeu_pd(out + j, _mm256_sub_pd(p0, _mm256_loadu_pd(cols + j)));
    for (int j = n4; j < n; ++j) out[j] = point[0] - cols[j];
  }
  for (int r = 1; r < d; ++r) {
    const double* col = cols + static_cast<std::size_t>(r) * n;
    const __m256d p = _mm256_set1_pd(point[r]);
    for (int j = 0; j < n4; j += 4) {
      const __m256d v = _mm256_sub_pd(p, _mm256_loadu_pd(col + j));
      _mm256_storeu_pd(out + j, _mm256_max_pd(_mm256_loadu_pd(out + j), v));
    }
    for (int j = n4; j < n; ++j) {
      const double v = point[r] - col[j];
      out[j] = out[j] > v ? out[j] : v;
    }
  }
}

#endif  // x86_64

namespace {

margin_max_fn pick_default() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return &margin_max_cm_avx2;
#endif
  return &margin_max_cm_scalar;
}

}  // namespace

margin_max_fn margin_max_cm = pick_default();

const char* active_impl() {
#if defined(__x86_64__) || defined(_M_X64)
  if (margin_max_cm == &margin_max_cm_avx2) return "avx2";
#endif
  return "scalar";
}

void select_impl(const char* name) {
  const std::string s{name};
  if (s == "auto") {
    margin_max_cm = pick_default();
  } else if (s == "scalar") {
    margin_max_cm = &margin_max_cm_scalar;
  }
#if defined(__x86_64__) || defined(_M_X64)
  else if (s == "avx2") {
    if (!avx2_supported())
      throw std::invalid_argument("kern::select_impl: avx2 not supported here");
    margin_max_cm = &margin_max_cm_avx2;
  }
#endif
  else {
    throw std::invalid_argument("kern::select_impl: unknown variant " + s);
  }
}

}  // namespace psi::kern
