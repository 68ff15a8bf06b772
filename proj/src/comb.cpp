#include "gkp/comb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

constexpr complex kI{0.0, 1.0};

void check_component(const GaussianComponent& c) {
    if (!std::isfinite(c.center) || !std::isfinite(c.variance) || !std::isfinite(c.tilt) ||
        !std::isfinite(c.amplitude.real()) || !std::isfinite(c.amplitude.imag())) {
        throw DomainError("Gaussian component has a non-finite parameter");
    }
    if (!(c.variance > 0.0)) {
        throw DomainError("Gaussian component variance must be positive");
    }
}

std::vector<GaussianComponent> canonical(std::vector<GaussianComponent> parts) {
    for (const auto& c : parts) {
        check_component(c);
    }
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        return std::tie(a.center, a.variance, a.tilt) < std::tie(b.center, b.variance, b.tilt);
    });
    std::vector<GaussianComponent> out;
    out.reserve(parts.size());
    for (const auto& c : parts) {
        if (!out.empty() && out.back().center == c.center && out.back().variance == c.variance &&
            out.back().tilt == c.tilt) {
            out.back().amplitude += c.amplitude;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Quadrature q) {
    return q == Quadrature::Position ? "position" : "momentum";
}

Quadrature parse_quadrature(std::string_view text) {
    if (text == "position" || text == "q") {
        return Quadrature::Position;
    }
    if (text == "momentum" || text == "p") {
        return Quadrature::Momentum;
    }
    throw DomainError("unknown quadrature '" + std::string(text) + "'");
}

complex GaussianComponent::operator()(double u) const {
    const double d = u - center;
    const double env = std::exp(-d * d / (2.0 * variance));
    if (tilt == 0.0) {
        return amplitude * env;
    }
    return amplitude * std::polar(env, tilt * u);
}

GaussianComb::GaussianComb(Quadrature quadrature, std::vector<GaussianComponent> components)
    : quadrature_(quadrature), components_(canonical(std::move(components))) {}

GaussianComb::GaussianComb(Quadrature quadrature, std::vector<GaussianComponent> components,
                           bool normalized)
    : quadrature_(quadrature), components_(canonical(std::move(components))), normalized_(normalized) {}

complex GaussianComb::operator()(double u) const {
    complex acc{0.0, 0.0};
    for (const auto& c : components_) {
        acc += c(u);
    }
    return acc;
}

complex component_overlap(const GaussianComponent& a, const GaussianComponent& b) {
    const double prec = 1.0 / a.variance + 1.0 / b.variance;
    const double mean = (a.center / a.variance + b.center / b.variance) / prec;
    const double dc = a.center - b.center;
    const double dk = b.tilt - a.tilt;
    const double mag = std::sqrt(2.0 * std::numbers::pi / prec) *
                       std::exp(-dc * dc / (2.0 * (a.variance + b.variance)) - dk * dk / (2.0 * prec));
    return std::conj(a.amplitude) * b.amplitude * std::polar(mag, dk * mean);
}

double GaussianComb::norm_squared() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        acc += component_overlap(components_[i], components_[i]).real();
        for (std::size_t j = i + 1; j < components_.size(); ++j) {
            acc += 2.0 * component_overlap(components_[i], components_[j]).real();
        }
    }
    return std::max(acc, 0.0);
}

GaussianComb GaussianComb::normalize() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw ZeroProbabilityOutcome("cannot normalize a state with vanishing norm");
    }
    const double s = 1.0 / std::sqrt(n2);
    std::vector<GaussianComponent> parts(components_.begin(), components_.end());
    for (auto& c : parts) {
        c.amplitude *= s;
    }
    return GaussianComb(quadrature_, std::move(parts), true);
}

GaussianComb GaussianComb::scaled(complex factor) const {
    std::vector<GaussianComponent> parts(components_.begin(), components_.end());
    for (auto& c : parts) {
        c.amplitude *= factor;
    }
    const bool keeps_norm = normalized_ && std::abs(std::abs(factor) - 1.0) < 1e-15;
    return GaussianComb(quadrature_, std::move(parts), keeps_norm);
}

GaussianComb GaussianComb::shifted(double a) const {
    std::vector<GaussianComponent> parts(components_.begin(), components_.end());
    for (auto& c : parts) {
        c.center += a;
        if (c.tilt != 0.0) {
            c.amplitude *= std::exp(-kI * (c.tilt * a));
        }
    }
    return GaussianComb(quadrature_, std::move(parts), normalized_);
}

GaussianComb GaussianComb::kicked(double k) const {
    std::vector<GaussianComponent> parts(components_.begin(), components_.end());
    for (auto& c : parts) {
        c.tilt += k;
    }
    return GaussianComb(quadrature_, std::move(parts), normalized_);
}

GaussianComb GaussianComb::fourier() const {
    std::vector<GaussianComponent> parts;
    parts.reserve(components_.size());
    const bool forward = quadrature_ == Quadrature::Position;
    for (const auto& c : components_) {
        GaussianComponent t;
        t.variance = 1.0 / c.variance;
        t.amplitude = c.amplitude * std::sqrt(c.variance);
        if (c.tilt != 0.0) {
            t.amplitude *= std::exp(kI * (c.tilt * c.center));
        }
        if (forward) {
            t.center = c.tilt;
            t.tilt = -c.center;
        } else {
            t.center = -c.tilt;
            t.tilt = c.center;
        }
        parts.push_back(t);
    }
    return GaussianComb(forward ? Quadrature::Momentum : Quadrature::Position, std::move(parts),
                        normalized_);
}

double GaussianComb::min_sigma() const {
    double v = INFINITY;
    for (const auto& c : components_) {
        v = std::min(v, c.variance);
    }
    return std::sqrt(v);
}

double GaussianComb::max_sigma() const {
    double v = 0.0;
    for (const auto& c : components_) {
        v = std::max(v, c.variance);
    }
    return std::sqrt(v);
}

double GaussianComb::max_abs_tilt() const {
    double t = 0.0;
    for (const auto& c : components_) {
        t = std::max(t, std::abs(c.tilt));
    }
    return t;
}

complex overlap(const GaussianComb& a, const GaussianComb& b) {
    if (a.quadrature() != b.quadrature()) {
        throw QuadratureMismatch("overlap of combs in different quadratures");
    }
    complex acc{0.0, 0.0};
    for (const auto& ca : a.components()) {
        for (const auto& cb : b.components()) {
            acc += component_overlap(ca, cb);
        }
    }
    return acc;
}

double fidelity(const GaussianComb& a, const GaussianComb& b) {
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (!(na > 0.0) || !(nb > 0.0)) {
        throw ZeroProbabilityOutcome("fidelity with a zero-norm state");
    }
    return std::norm(overlap(a, b)) / (na * nb);
}

GaussianComb superpose(const GaussianComb& a, const GaussianComb& b) {
    if (a.quadrature() != b.quadrature()) {
        throw QuadratureMismatch("superposition of combs in different quadratures");
    }
    std::vector<GaussianComponent> parts(a.components().begin(), a.components().end());
    parts.insert(parts.end(), b.components().begin(), b.components().end());
    return GaussianComb(a.quadrature(), std::move(parts));
}

GaussianComb squeezed_state(double r, double center) {
    const double v = std::exp(-2.0 * r);
    GaussianComponent c;
    c.center = center;
    c.variance = v;
    c.amplitude = std::pow(std::numbers::pi * v, -0.25);
    return GaussianComb(Quadrature::Position, {c}).normalize();
}

}  // namespace gkp
