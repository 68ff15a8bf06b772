#include "gkp/states.hpp"

#include <cmath>
#include <numbers>

#include "gkp/error_metrics.hpp"
#include "gkp/errors.hpp"
#include "gkp/measurement.hpp"

namespace gkp {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

// P(x) below this fraction of the summed term magnitudes is rounding noise.
constexpr double kRelativeFloor = 1e-13;

double checked_probability(const EncodingParams& params, HalfInt x, const std::vector<double>& a) {
    const double p = outcome_probability(params, x);
    double scale = 0.0;
    for (double v : a) {
        scale += std::abs(v);
    }
    if (!(p > kRelativeFloor * scale * scale) || !std::isfinite(p)) {
        throw ZeroProbabilityOutcome("outcome " + x.str() + " has vanishing probability");
    }
    return p;
}

int sign_of(Parity parity, int exponent) {
    return (parity == Parity::Minus && (exponent % 2 != 0)) ? -1 : 1;
}

complex i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double ipow(double base, int n) {
    double out = 1.0;
    while (n > 0) {
        if (n & 1) {
            out *= base;
        }
        base *= base;
        n >>= 1;
    }
    return out;
}

void require_positive_j(TotalSpin j) {
    if (j.two_j() == 0) {
        throw DomainError("approximate forms need J > 0");
    }
}

struct MomentumPrefactor {
    double norm;  // e^{-r/2} / (P^{1/2} pi^{1/4})
    std::vector<double> a;
};

MomentumPrefactor momentum_prefactor(const EncodingParams& params, HalfInt x) {
    params.validate();
    auto a = outcome_products(params.j, x);
    const double p = checked_probability(params, x, a);
    return {std::exp(-0.5 * params.r) / (std::sqrt(p) * std::pow(std::numbers::pi, 0.25)), std::move(a)};
}

complex momentum_value(const EncodingParams& params, HalfInt x, double p, MomentumForm form,
                       const MomentumPrefactor& pre) {
    const TotalSpin j = params.j;
    const double envelope = std::exp(-p * p / (2.0 * std::exp(2.0 * params.r)));
    const double g = params.g;
    if (form == MomentumForm::Sum) {
        complex acc{0.0, 0.0};
        for (int k = 0; k < j.dimension(); ++k) {
            if (pre.a[k] != 0.0) {
                acc += pre.a[k] * std::polar(1.0, -g * j.index(k).value() * p);
            }
        }
        return pre.norm * envelope * acc;
    }
    if (x.twice() == j.two_j()) {
        return pre.norm * envelope * ipow(std::cos(0.5 * g * p), j.two_j());
    }
    if (x.twice() == -j.two_j()) {
        return pre.norm * envelope * ipow(std::sin(0.5 * g * p), j.two_j()) *
               std::polar(1.0, j.value() * std::numbers::pi);
    }
    if (x.twice() == 0 && j.is_integer()) {
        const int jj = j.two_j() / 2;
        const double c = std::exp(0.5 * log_binomial(2 * jj, jj) - jj * std::numbers::ln2);
        return pre.norm * envelope * c * i_pow(jj) * ipow(std::sin(g * p), jj);
    }
    throw InvalidIndex("no closed momentum form for outcome " + x.str());
}

}  // namespace

void EncodingParams::validate() const {
    if (!std::isfinite(g) || !(g > 0.0)) {
        throw DomainError("coupling g must be positive");
    }
    if (!std::isfinite(r)) {
        throw DomainError("squeezing r must be finite");
    }
}

bool EncodingParams::symmetric() const {
    return std::abs(std::exp(2.0 * r) - std::numbers::pi * j.value() / 2.0) <= 1e-12 * std::max(1.0, j.value()) &&
           std::abs(g - kSqrtPi) <= 1e-12;
}

EncodingParams EncodingParams::symmetric_for(TotalSpin j) {
    if (j.two_j() == 0) {
        throw DomainError("symmetric encoding needs J > 0");
    }
    return {j, 0.5 * std::log(std::numbers::pi * j.value() / 2.0), kSqrtPi};
}

GaussianComb conditional_position_state(const EncodingParams& params, HalfInt x) {
    params.validate();
    const TotalSpin j = params.j;
    const auto a = outcome_products(j, x);
    const double p = checked_probability(params, x, a);
    const double variance = std::exp(-2.0 * params.r);
    const double pre = std::exp(0.5 * params.r) / (std::sqrt(p) * std::pow(std::numbers::pi, 0.25));
    std::vector<GaussianComponent> parts;
    for (int k = 0; k < j.dimension(); ++k) {
        if (a[k] == 0.0) {
            continue;
        }
        parts.push_back({params.g * j.index(k).value(), variance, pre * a[k], 0.0});
    }
    GaussianComb comb(Quadrature::Position, std::move(parts));
    // The prefactor already normalizes; re-deriving it from overlaps only
    // removes rounding and sets the flag.
    return comb.normalize();
}

GaussianComb conditional_momentum_state(const EncodingParams& params, HalfInt x) {
    return conditional_position_state(params, x).fourier();
}

complex conditional_momentum_amplitude(const EncodingParams& params, HalfInt x, double p,
                                       MomentumForm form) {
    const auto pre = momentum_prefactor(params, x);
    return momentum_value(params, x, p, form, pre);
}

std::vector<complex> conditional_momentum_samples(const EncodingParams& params, HalfInt x,
                                                  const QuadratureGrid& grid, MomentumForm form) {
    validate_grid(grid);
    const auto pre = momentum_prefactor(params, x);
    std::vector<complex> out(grid.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = momentum_value(params, x, grid.at(k), form, pre);
    }
    return out;
}

QuadratureGrid momentum_grid(const EncodingParams& params) {
    params.validate();
    const double env = std::exp(params.r);
    double width = env;
    if (params.j.two_j() > 0) {
        width = std::min(width, 1.0 / (params.g * std::sqrt(params.j.value())));
    }
    return {-6.0 * env, 6.0 * env, width / 8.0};
}

int target_truncation(double sigma) {
    return static_cast<int>(std::ceil(7.4 / (sigma * kSqrtPi)));
}

GaussianComb target_state(Parity parity, double sigma, double q0, int truncation) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("target sigma must be positive");
    }
    if (!(std::abs(q0) <= kSqrtPi / 2.0 * (1.0 + 1e-15))) {
        throw DomainError("target offset q0 must satisfy |q0| <= sqrt(pi)/2");
    }
    const int n = truncation > 0 ? truncation : target_truncation(sigma);
    const double s2 = sigma * sigma;
    std::vector<GaussianComponent> parts;
    parts.reserve(2 * static_cast<std::size_t>(n) + 1);
    for (int s = -n; s <= n; ++s) {
        const double c = s * kSqrtPi;
        const double d = c - q0;
        parts.push_back({c, s2, sign_of(parity, s) * std::exp(-0.5 * s2 * d * d), 0.0});
    }
    return GaussianComb(Quadrature::Position, std::move(parts)).normalize();
}

GaussianComb target_momentum_approx(Parity parity, double sigma, double q0, int truncation) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("target sigma must be positive");
    }
    if (!(std::abs(q0) <= kSqrtPi / 2.0 * (1.0 + 1e-15))) {
        throw DomainError("target offset q0 must satisfy |q0| <= sqrt(pi)/2");
    }
    const int n = truncation > 0 ? truncation : target_truncation(sigma);
    const double s2 = sigma * sigma;
    const int first = (parity == Parity::Plus) ? 0 : 1;
    std::vector<GaussianComponent> parts;
    for (int s = -n - 1; s <= n + 1; ++s) {
        if (((s % 2) + 2) % 2 != first) {
            continue;
        }
        const double c = s * kSqrtPi;
        parts.push_back({c, s2, std::polar(std::exp(-0.5 * s2 * c * c), q0 * c), -q0});
    }
    return GaussianComb(Quadrature::Momentum, std::move(parts)).normalize();
}

HalfInt edge_outcome(TotalSpin j, Parity parity) {
    return HalfInt::from_twice(parity == Parity::Plus ? j.two_j() : -j.two_j());
}

GaussianComb resource_state(const EncodingParams& params, Parity parity) {
    auto comb = conditional_position_state(params, edge_outcome(params.j, parity));
    if (!params.j.is_integer()) {
        return comb.shifted(0.5 * params.g);
    }
    return comb;
}

GaussianComb matched_target(TotalSpin j, Parity parity) {
    if (j.two_j() == 0) {
        throw DomainError("matched target needs J > 0");
    }
    const double sigma = std::sqrt(2.0 / (std::numbers::pi * j.value()));
    return target_state(parity, sigma, j.is_integer() ? 0.0 : kSqrtPi / 2.0);
}

GaussianComb x0_logical_state(const EncodingParams& params) {
    if (!params.j.is_integer()) {
        throw HalfIntegerUnsupported("the x = 0 outcome requires integer J");
    }
    return conditional_position_state(params, HalfInt::from_int(0))
        .kicked(std::numbers::pi / (2.0 * params.g));
}

GaussianComb approx_edge_position(const EncodingParams& params, Parity parity) {
    params.validate();
    const TotalSpin j = params.j;
    require_positive_j(j);
    const double variance = std::exp(-2.0 * params.r);
    std::vector<GaussianComponent> parts;
    for (int k = 0; k < j.dimension(); ++k) {
        const double m = j.index(k).value();
        parts.push_back({params.g * m, variance, sign_of(parity, k) * std::exp(-m * m / j.value()), 0.0});
    }
    return GaussianComb(Quadrature::Position, std::move(parts)).normalize();
}

GaussianComb approx_edge_momentum(const EncodingParams& params, Parity parity) {
    params.validate();
    const TotalSpin j = params.j;
    require_positive_j(j);
    const double spike = momentum_spike_variance(j.value(), params.g);
    const double env2 = std::exp(2.0 * params.r);
    const int n = static_cast<int>(std::ceil(7.5 * std::exp(params.r) * params.g / std::numbers::pi)) + 1;
    const int first = (parity == Parity::Plus) ? 0 : 1;
    std::vector<GaussianComponent> parts;
    for (int s = -n; s <= n; ++s) {
        if (((s % 2) + 2) % 2 != first) {
            continue;
        }
        const double c = s * std::numbers::pi / params.g;
        const double phase = s * j.value() * std::numbers::pi;
        parts.push_back({c, spike, std::polar(std::exp(-c * c / (2.0 * env2)), phase), 0.0});
    }
    return GaussianComb(Quadrature::Momentum, std::move(parts)).normalize();
}

GaussianComb approx_x0_position(const EncodingParams& params) {
    params.validate();
    const TotalSpin j = params.j;
    if (!j.is_integer()) {
        throw HalfIntegerUnsupported("the x = 0 outcome requires integer J");
    }
    require_positive_j(j);
    const double variance = std::exp(-2.0 * params.r);
    const double env2 = params.g * params.g * j.value();
    std::vector<GaussianComponent> parts;
    for (int k = 0; k < j.dimension(); ++k) {
        const double re = i_pow(k).real();  // J + m = k
        if (re == 0.0) {
            continue;
        }
        const double q = params.g * j.index(k).value();
        parts.push_back({q, variance, re * std::exp(-q * q / (2.0 * env2)), 0.0});
    }
    return GaussianComb(Quadrature::Position, std::move(parts)).normalize();
}

GaussianComb approx_x0_momentum(const EncodingParams& params) {
    params.validate();
    const TotalSpin j = params.j;
    if (!j.is_integer()) {
        throw HalfIntegerUnsupported("the x = 0 outcome requires integer J");
    }
    require_positive_j(j);
    const int jj = j.two_j() / 2;
    const double spike = 0.5 * momentum_spike_variance(j.value(), params.g);
    const double env2 = std::exp(2.0 * params.r);
    const int n = static_cast<int>(std::ceil(7.5 * std::exp(params.r) * params.g / std::numbers::pi)) + 1;
    std::vector<GaussianComponent> parts;
    for (int k = -n; k <= n; ++k) {
        const double c = (k + 0.5) * std::numbers::pi / params.g;
        const int sign = ((jj % 2 != 0) && (k % 2 != 0)) ? -1 : 1;
        parts.push_back({c, spike, sign * std::exp(-c * c / (2.0 * env2)), 0.0});
    }
    return GaussianComb(Quadrature::Momentum, std::move(parts)).normalize();
}

}  // namespace gkp
