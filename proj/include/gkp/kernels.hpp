#pragma once

// Data-parallel inner loops: Gaussian-comb evaluation on a sample grid and
// the direct quadrature Fourier sum. Every kernel has a scalar reference and
// an AVX2/FMA variant; the variant is chosen at runtime from CPUID and can be
// pinned with the GKP_SIMD environment variable ("scalar" or "avx2").
//
// The kernels take raw pointers so that the AVX2 translation unit never
// instantiates inline templates shared with the rest of the program.

#include <cstddef>
#include <optional>
#include <string_view>

namespace gkp::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

/// True when the binary carries the AVX2 variant and the CPU supports it.
bool avx2_available();

/// Backend used when none is requested explicitly.
Backend active_backend();

/// Pins the default backend for the whole process (nullopt restores
/// auto-detection). Requesting Avx2 on a machine without it is ignored.
void set_backend_override(std::optional<Backend> backend);

/// Structure-of-arrays view of a Gaussian comb; inv_two_var = 1 / (2 v).
struct CombArrays {
    const double* center;
    const double* inv_two_var;
    const double* amp_re;
    const double* amp_im;
    const double* tilt;
    std::size_t count;
};

/// out[i] = sum_c amp_c * exp(i tilt_c u_i) * exp(-(u_i - center_c)^2 inv_two_var_c)
void comb_eval(Backend backend, const CombArrays& comb, const double* u, std::size_t n,
               double* out_re, double* out_im);

/// out[j] = sum_k w_k * exp(i * sign * u_k * p_j)
void fourier_sum(Backend backend, const double* u, const double* w_re, const double* w_im,
                 std::size_t n, const double* p, std::size_t m, double sign, double* out_re,
                 double* out_im);

/// Elementwise exp; vector variant flushes results below ~1e-307 to zero.
void exp_batch(Backend backend, const double* x, std::size_t n, double* out);

/// Elementwise sin and cos, |x| <= kMaxPhase.
void sincos_batch(Backend backend, const double* x, std::size_t n, double* s, double* c);

/// Largest phase argument the vector sincos reduces exactly; kernels fall back
/// to the scalar path beyond it.
inline constexpr double kMaxPhase = 1.0e6;

namespace detail {
void comb_eval_scalar(const CombArrays& comb, const double* u, std::size_t n, double* out_re,
                      double* out_im);
void fourier_sum_scalar(const double* u, const double* w_re, const double* w_im, std::size_t n,
                        const double* p, std::size_t m, double sign, double* out_re, double* out_im);
void exp_scalar(const double* x, std::size_t n, double* out);
void sincos_scalar(const double* x, std::size_t n, double* s, double* c);

#if defined(GKP_HAVE_AVX2)
void comb_eval_avx2(const CombArrays& comb, const double* u, std::size_t n, double* out_re,
                    double* out_im);
void fourier_sum_avx2(const double* u, const double* w_re, const double* w_im, std::size_t n,
                      const double* p, std::size_t m, double sign, double* out_re, double* out_im);
void exp_avx2(const double* x, std::size_t n, double* out);
void sincos_avx2(const double* x, std::size_t n, double* s, double* c);
#endif
}  // namespace detail

}  // namespace gkp::kernels
