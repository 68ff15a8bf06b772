// AVX2 + FMA variants of the kernels in kernels_scalar.cpp.
// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include "gkp/kernels.hpp"

namespace gkp::kernels::detail {

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

// Exact conversion of integral doubles in (-2^51, 2^51) to int64 lanes.
inline __m256i to_int64(__m256d integral) {
    const __m256d magic = splat(0x1.8p52);
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(integral, magic)),
                            _mm256_castpd_si256(magic));
}

// exp(x): n = round(x / ln2), r = x - n ln2 in [-ln2/2, ln2/2], degree-13
// Taylor polynomial for e^r (truncation < 5e-18), then scale by 2^n.
inline __m256d exp4(__m256d x) {
    const __m256d underflow = _mm256_cmp_pd(x, splat(-708.39), _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, splat(-708.39)), splat(709.0));
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, splat(1.4426950408889634074)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, splat(6.93147180369123816490e-01), x);
    r = _mm256_fnmadd_pd(n, splat(1.90821492927058770002e-10), r);

    constexpr double inv_fact[] = {
        1.0,
        1.0,
        1.0 / 2.0,
        1.0 / 6.0,
        1.0 / 24.0,
        1.0 / 120.0,
        1.0 / 720.0,
        1.0 / 5040.0,
        1.0 / 40320.0,
        1.0 / 362880.0,
        1.0 / 3628800.0,
        1.0 / 39916800.0,
        1.0 / 479001600.0,
        1.0 / 6227020800.0,
    };
    __m256d poly = splat(inv_fact[13]);
    for (int k = 12; k >= 0; --k) {
        poly = _mm256_fmadd_pd(poly, r, splat(inv_fact[k]));
    }

    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(to_int64(n), _mm256_set1_epi64x(1023)), 52);
    const __m256d result = _mm256_mul_pd(poly, _mm256_castsi256_pd(bits));
    return _mm256_andnot_pd(underflow, result);
}

// sin and cos with Cody-Waite reduction by pi/2 (three 33-bit pieces, exact
// for |x| <= kMaxPhase) and the fdlibm minimax kernels on [-pi/4, pi/4].
inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, splat(6.36619772367581382433e-01)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, splat(1.57079632673412561417e+00), x);
    r = _mm256_fnmadd_pd(q, splat(6.07710050630396597660e-11), r);
    r = _mm256_fnmadd_pd(q, splat(2.02226624871116645580e-21), r);

    const __m256d z = _mm256_mul_pd(r, r);

    __m256d sp = splat(1.58969099521155010221e-10);
    sp = _mm256_fmadd_pd(sp, z, splat(-2.50507602534068634195e-08));
    sp = _mm256_fmadd_pd(sp, z, splat(2.75573137070700676789e-06));
    sp = _mm256_fmadd_pd(sp, z, splat(-1.98412698298579493134e-04));
    sp = _mm256_fmadd_pd(sp, z, splat(8.33333333332248946124e-03));
    sp = _mm256_fmadd_pd(sp, z, splat(-1.66666666666666324348e-01));
    const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), sp, r);

    __m256d cp = splat(-1.13596475577881948265e-11);
    cp = _mm256_fmadd_pd(cp, z, splat(2.08757232129817482790e-09));
    cp = _mm256_fmadd_pd(cp, z, splat(-2.75573143513906633035e-07));
    cp = _mm256_fmadd_pd(cp, z, splat(2.48015872894767294178e-05));
    cp = _mm256_fmadd_pd(cp, z, splat(-1.38888888888741095749e-03));
    cp = _mm256_fmadd_pd(cp, z, splat(4.16666666666666019037e-02));
    const __m256d cos_r =
        _mm256_fmadd_pd(_mm256_mul_pd(z, z), cp, _mm256_fnmadd_pd(splat(0.5), z, splat(1.0)));

    const __m256i quadrant = _mm256_and_si256(to_int64(q), _mm256_set1_epi64x(3));
    const __m256d swap = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(quadrant, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(1)));
    const __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
    const __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d s_sign =
        _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(quadrant, two), 62));
    const __m256d c_sign = _mm256_castsi256_pd(_mm256_slli_epi64(
        _mm256_and_si256(_mm256_add_epi64(quadrant, _mm256_set1_epi64x(1)), two), 62));
    s_out = _mm256_xor_pd(s, s_sign);
    c_out = _mm256_xor_pd(c, c_sign);
}

inline __m256d load_partial(const double* src, std::size_t count, double fill) {
    alignas(32) double buf[4] = {fill, fill, fill, fill};
    for (std::size_t i = 0; i < count; ++i) {
        buf[i] = src[i];
    }
    return _mm256_load_pd(buf);
}

inline void store_partial(double* dst, std::size_t count, __m256d v) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, v);
    for (std::size_t i = 0; i < count; ++i) {
        dst[i] = buf[i];
    }
}

}  // namespace

void comb_eval_avx2(const CombArrays& comb, const double* u, std::size_t n, double* out_re,
                    double* out_im) {
    const __m256d floor = splat(-745.2);
    for (std::size_t i = 0; i < n; i += 4) {
        const std::size_t lanes = (n - i < 4) ? n - i : 4;
        const __m256d uu = (lanes == 4) ? _mm256_loadu_pd(u + i) : load_partial(u + i, lanes, u[i]);
        __m256d acc_re = _mm256_setzero_pd();
        __m256d acc_im = _mm256_setzero_pd();
        for (std::size_t c = 0; c < comb.count; ++c) {
            const __m256d d = _mm256_sub_pd(uu, splat(comb.center[c]));
            const __m256d x = _mm256_mul_pd(_mm256_mul_pd(d, d), splat(-comb.inv_two_var[c]));
            if (_mm256_movemask_pd(_mm256_cmp_pd(x, floor, _CMP_GE_OQ)) == 0) {
                continue;
            }
            const __m256d e = exp4(x);
            const __m256d ar = splat(comb.amp_re[c]);
            const __m256d ai = splat(comb.amp_im[c]);
            if (comb.tilt[c] == 0.0) {
                acc_re = _mm256_fmadd_pd(ar, e, acc_re);
                acc_im = _mm256_fmadd_pd(ai, e, acc_im);
            } else {
                __m256d sn;
                __m256d cs;
                sincos4(_mm256_mul_pd(splat(comb.tilt[c]), uu), sn, cs);
                const __m256d re = _mm256_fmsub_pd(ar, cs, _mm256_mul_pd(ai, sn));
                const __m256d im = _mm256_fmadd_pd(ar, sn, _mm256_mul_pd(ai, cs));
                acc_re = _mm256_fmadd_pd(re, e, acc_re);
                acc_im = _mm256_fmadd_pd(im, e, acc_im);
            }
        }
        if (lanes == 4) {
            _mm256_storeu_pd(out_re + i, acc_re);
            _mm256_storeu_pd(out_im + i, acc_im);
        } else {
            store_partial(out_re + i, lanes, acc_re);
            store_partial(out_im + i, lanes, acc_im);
        }
    }
}

void fourier_sum_avx2(const double* u, const double* w_re, const double* w_im, std::size_t n,
                      const double* p, std::size_t m, double sign, double* out_re,
                      double* out_im) {
    for (std::size_t j = 0; j < m; j += 4) {
        const std::size_t lanes = (m - j < 4) ? m - j : 4;
        const __m256d pp = (lanes == 4) ? _mm256_loadu_pd(p + j) : load_partial(p + j, lanes, 0.0);
        const __m256d sp = _mm256_mul_pd(pp, splat(sign));
        __m256d acc_re = _mm256_setzero_pd();
        __m256d acc_im = _mm256_setzero_pd();
        for (std::size_t k = 0; k < n; ++k) {
            __m256d sn;
            __m256d cs;
            sincos4(_mm256_mul_pd(splat(u[k]), sp), sn, cs);
            const __m256d wr = splat(w_re[k]);
            const __m256d wi = splat(w_im[k]);
            acc_re = _mm256_fmadd_pd(wr, cs, _mm256_fnmadd_pd(wi, sn, acc_re));
            acc_im = _mm256_fmadd_pd(wr, sn, _mm256_fmadd_pd(wi, cs, acc_im));
        }
        if (lanes == 4) {
            _mm256_storeu_pd(out_re + j, acc_re);
            _mm256_storeu_pd(out_im + j, acc_im);
        } else {
            store_partial(out_re + j, lanes, acc_re);
            store_partial(out_im + j, lanes, acc_im);
        }
    }
}

void exp_avx2(const double* x, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; i += 4) {
        const std::size_t lanes = (n - i < 4) ? n - i : 4;
        if (lanes == 4) {
            _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
        } else {
            store_partial(out + i, lanes, exp4(load_partial(x + i, lanes, 0.0)));
        }
    }
}

void sincos_avx2(const double* x, std::size_t n, double* s, double* c) {
    for (std::size_t i = 0; i < n; i += 4) {
        const std::size_t lanes = (n - i < 4) ? n - i : 4;
        __m256d sn;
        __m256d cs;
        sincos4((lanes == 4) ? _mm256_loadu_pd(x + i) : load_partial(x + i, lanes, 0.0), sn, cs);
        if (lanes == 4) {
            _mm256_storeu_pd(s + i, sn);
            _mm256_storeu_pd(c + i, cs);
        } else {
            store_partial(s + i, lanes, sn);
            store_partial(c + i, lanes, cs);
        }
    }
}

}  // namespace gkp::kernels::detail
