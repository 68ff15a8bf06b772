#include <cmath>

#include "gkp/kernels.hpp"

namespace gkp::kernels::detail {

namespace {
// exp() of anything below this is exactly zero in double precision.
constexpr double kExpFloor = -745.2;
}  // namespace

void comb_eval_scalar(const CombArrays& comb, const double* u, std::size_t n, double* out_re,
                      double* out_im) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t c = 0; c < comb.count; ++c) {
            const double d = u[i] - comb.center[c];
            const double x = -d * d * comb.inv_two_var[c];
            if (x < kExpFloor) {
                continue;
            }
            const double e = std::exp(x);
            if (comb.tilt[c] == 0.0) {
                acc_re += comb.amp_re[c] * e;
                acc_im += comb.amp_im[c] * e;
            } else {
                const double phase = comb.tilt[c] * u[i];
                const double cs = std::cos(phase);
                const double sn = std::sin(phase);
                acc_re += (comb.amp_re[c] * cs - comb.amp_im[c] * sn) * e;
                acc_im += (comb.amp_re[c] * sn + comb.amp_im[c] * cs) * e;
            }
        }
        out_re[i] = acc_re;
        out_im[i] = acc_im;
    }
}

void fourier_sum_scalar(const double* u, const double* w_re, const double* w_im, std::size_t n,
                        const double* p, std::size_t m, double sign, double* out_re,
                        double* out_im) {
    for (std::size_t j = 0; j < m; ++j) {
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double theta = sign * u[k] * p[j];
            const double cs = std::cos(theta);
            const double sn = std::sin(theta);
            acc_re += w_re[k] * cs - w_im[k] * sn;
            acc_im += w_re[k] * sn + w_im[k] * cs;
        }
        out_re[j] = acc_re;
        out_im[j] = acc_im;
    }
}

void exp_scalar(const double* x, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(x[i]);
    }
}

void sincos_scalar(const double* x, std::size_t n, double* s, double* c) {
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

}  // namespace gkp::kernels::detail
