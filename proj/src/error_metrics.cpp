#include "gkp/error_metrics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "gkp/errors.hpp"
#include "gkp/measurement.hpp"

namespace gkp {

namespace {

constexpr int kZetaCutoff = 10000;

double peak_prefactor(double j, double g) {
    return g * std::exp(std::lgamma(j + 1.0) - std::lgamma(j + 0.5)) / (2.0 * std::sqrt(std::numbers::pi));
}

template <class F>
double integrate_period(F f, double g) {
    using boost::math::quadrature::gauss_kronrod;
    const double half = std::numbers::pi / g;
    // Split at the peak so each panel sees a monotone integrand.
    return gauss_kronrod<double, 61>::integrate(f, -half, 0.0, 20, 1e-15) +
           gauss_kronrod<double, 61>::integrate(f, 0.0, half, 20, 1e-15);
}

}  // namespace

double hurwitz_zeta2(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("zeta(2, a) needs a > 0");
    }
    const double x = kZetaCutoff + a;
    // Euler-Maclaurin remainder for sum_{k >= N} (k + a)^{-2}.
    double sum = 1.0 / x + 0.5 / (x * x) + 1.0 / (6.0 * x * x * x) - 1.0 / (30.0 * std::pow(x, 5));
    for (int k = kZetaCutoff - 1; k >= 0; --k) {
        const double t = k + a;
        sum += 1.0 / (t * t);
    }
    return sum;
}

double momentum_spike_variance(double j, double g) {
    if (!(j > 0.0) || !(g > 0.0)) {
        throw DomainError("spike variance needs J > 0 and g > 0");
    }
    return 2.0 * (j * j * hurwitz_zeta2(j) - 1.0) / (g * g * j * j);
}

double peak_variance_oracle(TotalSpin j, double g) {
    if (j.two_j() == 0 || !(g > 0.0)) {
        throw DomainError("peak variance needs J > 0 and g > 0");
    }
    const int n = j.two_j();
    const double pre = peak_prefactor(j.value(), g);
    auto f = [=](double p) { return pre * p * p * std::pow(std::cos(0.5 * g * p), n); };
    return integrate_period(f, g);
}

double peak_normalization_oracle(TotalSpin j, double g) {
    if (!(g > 0.0)) {
        throw DomainError("peak normalization needs g > 0");
    }
    const int n = j.two_j();
    const double pre = peak_prefactor(j.value(), g);
    auto f = [=](double p) { return pre * std::pow(std::cos(0.5 * g * p), n); };
    return integrate_period(f, g);
}

ErrorProfile error_profile(const EncodingParams& params, bool measured) {
    params.validate();
    if (params.j.two_j() == 0) {
        throw DomainError("error profile needs J > 0");
    }
    ErrorProfile e;
    const double j = params.j.value();
    e.spike_var_q = std::exp(-2.0 * params.r);
    e.env_var_q = params.g * params.g * j / 2.0;
    e.env_var_p = std::exp(2.0 * params.r);
    e.spike_var_p = momentum_spike_variance(j, params.g);
    e.db = db_from_sigma_sq(e.spike_var_q);
    if (measured) {
        e.spike_var_q *= 0.5;
        e.env_var_q *= 0.5;
        e.spike_var_p *= 0.5;
        e.env_var_p *= 0.5;
        e.measured = true;
    }
    return e;
}

EncodingParams symmetric_params(TotalSpin j) { return EncodingParams::symmetric_for(j); }

double symmetric_r(double j) {
    if (!(j > 0.0) || !std::isfinite(j)) {
        throw DomainError("symmetric encoding needs J > 0");
    }
    return 0.5 * std::log(std::numbers::pi * j / 2.0);
}

double j_from_db(double db) { return 2.0 / std::numbers::pi * std::pow(10.0, db / 10.0); }

double db_from_j(double j) {
    if (!(j > 0.0)) {
        throw DomainError("J must be positive");
    }
    return 10.0 * std::log10(std::numbers::pi * j / 2.0);
}

double db_from_r(double r) { return 20.0 * r / std::numbers::ln10; }

double r_from_db(double db) { return db * std::numbers::ln10 / 20.0; }

double db_from_sigma_sq(double sigma_sq) {
    if (!(sigma_sq > 0.0)) {
        throw DomainError("variance must be positive");
    }
    return -10.0 * std::log10(sigma_sq);
}

SqueezingTriple squeezing_from_sigma_sq(double sigma_sq) {
    const double db = db_from_sigma_sq(sigma_sq);
    const double sigma = std::sqrt(sigma_sq);
    return {db, sigma, 1.0 / sigma};
}

SqueezingTriple squeezing_from_r(double r) {
    return {db_from_r(r), std::exp(-r), std::exp(r)};
}

SqueezingTriple squeezing_from_j(double j) {
    if (!(j > 0.0)) {
        throw DomainError("J must be positive");
    }
    return squeezing_from_sigma_sq(2.0 / (std::numbers::pi * j));
}

RequirementRow requirement_for_db(double db) {
    return {db, j_from_db(db), r_from_db(db), success_probability_from_db(db)};
}

}  // namespace gkp
