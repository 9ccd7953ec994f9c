#pragma once

namespace psi::kern {

/// Margin kernel: out[j] = max_d (point[d] - cols[d*n + j]) for j in [0, n).
/// `cols` holds n mean vectors in column-major order (dimension-contiguous),
/// which is the layout the vectorised variants stream over.
/// Ties resolve to the later operand, matching x86 max_pd, so the scalar and
/// SIMD variants are bit-identical on all finite inputs including +/-0.
using margin_max_fn = void (*)(const double* cols, int n, int d,
                               const double* point, double* out);

void margin_max_cm_scalar(const double* cols, int n, int d, const double* point,
                          double* out);
#if defined(__x86_64__) || defined(_M_X64)
void margin_max_cm_avx2(const double* cols, int n, int d, const double* point,
                        double* out);
bool avx2_supported();
#endif

/// Runtime-selected implementation (AVX2 where the CPU supports it).
extern margin_max_fn margin_max_cm;

/// Name of the active variant: "scalar" or "avx2".
const char* active_impl();

/// Force a variant, for equivalence testing: "auto", "scalar" or "avx2".
/// Throws std::invalid_argument for unknown or unavailable names.
void select_impl(const char* name);

}  // namespace psi::kern
