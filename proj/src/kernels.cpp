#include "gkp/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace gkp::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(GKP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() {
    const bool has = cpu_has_avx2();
    if (const char* env = std::getenv("GKP_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) {
            return Backend::Scalar;
        }
        if (std::strcmp(env, "avx2") == 0 && has) {
            return Backend::Avx2;
        }
    }
    return has ? Backend::Avx2 : Backend::Scalar;
}

// -1 = no override, otherwise a Backend value.
std::atomic<int> g_override{-1};

Backend effective(Backend requested) {
    return (requested == Backend::Avx2 && !avx2_available()) ? Backend::Scalar : requested;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::abs(x[i]));
    }
    return m;
}

}  // namespace

std::string_view to_string(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

bool avx2_available() {
    static const bool has = cpu_has_avx2();
    return has;
}

Backend active_backend() {
    const int o = g_override.load(std::memory_order_relaxed);
    if (o >= 0) {
        return effective(static_cast<Backend>(o));
    }
    static const Backend detected = detect();
    return detected;
}

void set_backend_override(std::optional<Backend> backend) {
    g_override.store(backend ? static_cast<int>(*backend) : -1, std::memory_order_relaxed);
}

void comb_eval(Backend backend, const CombArrays& comb, const double* u, std::size_t n,
               double* out_re, double* out_im) {
#if defined(GKP_HAVE_AVX2)
    if (effective(backend) == Backend::Avx2 &&
        max_abs(comb.tilt, comb.count) * max_abs(u, n) <= kMaxPhase) {
        detail::comb_eval_avx2(comb, u, n, out_re, out_im);
        return;
    }
#else
    (void)backend;
#endif
    detail::comb_eval_scalar(comb, u, n, out_re, out_im);
}

void fourier_sum(Backend backend, const double* u, const double* w_re, const double* w_im,
                 std::size_t n, const double* p, std::size_t m, double sign, double* out_re,
                 double* out_im) {
#if defined(GKP_HAVE_AVX2)
    if (effective(backend) == Backend::Avx2 && max_abs(u, n) * max_abs(p, m) <= kMaxPhase) {
        detail::fourier_sum_avx2(u, w_re, w_im, n, p, m, sign, out_re, out_im);
        return;
    }
#else
    (void)backend;
#endif
    detail::fourier_sum_scalar(u, w_re, w_im, n, p, m, sign, out_re, out_im);
}

void exp_batch(Backend backend, const double* x, std::size_t n, double* out) {
#if defined(GKP_HAVE_AVX2)
    if (effective(backend) == Backend::Avx2) {
        detail::exp_avx2(x, n, out);
        return;
    }
#else
    (void)backend;
#endif
    detail::exp_scalar(x, n, out);
}

void sincos_batch(Backend backend, const double* x, std::size_t n, double* s, double* c) {
#if defined(GKP_HAVE_AVX2)
    if (effective(backend) == Backend::Avx2 && max_abs(x, n) <= kMaxPhase) {
        detail::sincos_avx2(x, n, s, c);
        return;
    }
#else
    (void)backend;
#endif
    detail::sincos_scalar(x, n, s, c);
}

}  // namespace gkp::kernels
