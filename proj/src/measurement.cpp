#include "gkp/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

// exp(-g^2 e^{2r} k^2 / 4) for k = 0 .. 2J: squared overlap amplitude of two
// squeezed vacua displaced by g k.
std::vector<double> shift_overlaps(const EncodingParams& params) {
    const double a = 0.25 * params.g * params.g * std::exp(2.0 * params.r);
    std::vector<double> e(static_cast<std::size_t>(params.j.dimension()));
    for (std::size_t k = 0; k < e.size(); ++k) {
        e[k] = std::exp(-a * static_cast<double>(k * k));
    }
    return e;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

SpinPrior SpinPrior::coherent(TotalSpin j) {
    std::vector<complex> c(static_cast<std::size_t>(j.dimension()));
    for (int k = 0; k < j.dimension(); ++k) {
        c[k] = d_edge(j, j.index(k), +1);
    }
    return SpinPrior(j, std::move(c));
}

SpinPrior SpinPrior::basis(TotalSpin j, HalfInt m) {
    require_index(j, m);
    std::vector<complex> c(static_cast<std::size_t>(j.dimension()));
    c[j.slot(m)] = 1.0;
    return SpinPrior(j, std::move(c));
}

SpinPrior SpinPrior::from_coefficients(TotalSpin j, std::vector<complex> c) {
    if (c.size() != static_cast<std::size_t>(j.dimension())) {
        throw DomainError("prior needs 2J + 1 coefficients");
    }
    double n2 = 0.0;
    for (const auto& v : c) {
        n2 += std::norm(v);
    }
    if (std::abs(n2 - 1.0) > 1e-12) {
        throw DomainError("prior coefficients are not normalized");
    }
    return SpinPrior(j, std::move(c));
}

complex SpinPrior::coefficient(HalfInt m) const {
    require_index(j_, m);
    return c_[j_.slot(m)];
}

std::vector<KrausTerm> kraus_amplitudes(const EncodingParams& params, const SpinPrior& prior,
                                        HalfInt x) {
    params.validate();
    const TotalSpin j = params.j;
    if (prior.j() != j) {
        throw DomainError("prior and encoding use different J");
    }
    const auto d = d_column(j, x);
    std::vector<KrausTerm> terms;
    for (int k = 0; k < j.dimension(); ++k) {
        const complex a = prior.coefficients()[k] * d[k];
        if (a == complex{0.0, 0.0}) {
            continue;
        }
        const HalfInt m = j.index(k);
        terms.push_back({m, params.g * m.value(), a});
    }
    return terms;
}

GaussianComb apply_kraus(const std::vector<KrausTerm>& terms, const GaussianComb& input) {
    std::vector<GaussianComponent> parts;
    parts.reserve(terms.size() * input.size());
    for (const auto& t : terms) {
        const GaussianComb moved = (input.quadrature() == Quadrature::Position)
                                       ? input.shifted(t.shift)
                                       : input.kicked(-t.shift);
        for (auto c : moved.components()) {
            c.amplitude *= t.amplitude;
            parts.push_back(c);
        }
    }
    return GaussianComb(input.quadrature(), std::move(parts));
}

GaussianComb condition_state(const std::vector<KrausTerm>& terms, const GaussianComb& input) {
    return apply_kraus(terms, input).normalize();
}

ConditionedMixture condition_mixture(const EncodingParams& params, const SpinPrior& prior,
                                     HalfInt x, const Mixture& input) {
    const auto terms = kraus_amplitudes(params, prior, x);
    ConditionedMixture out;
    std::vector<double> probs;
    for (const auto& branch : input) {
        if (!(branch.weight >= 0.0)) {
            throw DomainError("mixture weights must be non-negative");
        }
        auto raw = apply_kraus(terms, branch.state);
        const double nb = branch.state.norm_squared();
        const double p = branch.weight * raw.norm_squared() / nb;
        if (p > 1e-300) {
            out.state.push_back({p, raw.normalize()});
            out.probability += p;
        }
    }
    if (!(out.probability > 0.0)) {
        throw ZeroProbabilityOutcome("outcome " + x.str() + " cannot occur for this mixture");
    }
    for (auto& b : out.state) {
        b.weight /= out.probability;
    }
    return out;
}

double outcome_probability(const EncodingParams& params, HalfInt x) {
    params.validate();
    const auto a = outcome_products(params.j, x);
    const auto e = shift_overlaps(params);
    const std::size_t n = a.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double lag = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) {
            lag += a[i] * a[i + k];
        }
        acc += (k == 0 ? 1.0 : 2.0) * e[k] * lag;
    }
    return clamp_probability(acc);
}

double outcome_probability(const EncodingParams& params, const SpinPrior& prior, HalfInt x,
                           ProbabilityRoute route) {
    const auto terms = kraus_amplitudes(params, prior, x);
    if (route == ProbabilityRoute::Overlap) {
        return clamp_probability(apply_kraus(terms, squeezed_state(params.r)).norm_squared());
    }
    const auto e = shift_overlaps(params);
    double acc = 0.0;
    for (const auto& s : terms) {
        for (const auto& t : terms) {
            const int k = std::abs(s.m.twice() - t.m.twice()) / 2;
            acc += (std::conj(s.amplitude) * t.amplitude).real() * e[k];
        }
    }
    return clamp_probability(acc);
}

double outcome_probability(const EncodingParams& params, const SpinPrior& prior, HalfInt x,
                           const Mixture& input) {
    const auto terms = kraus_amplitudes(params, prior, x);
    double acc = 0.0;
    for (const auto& branch : input) {
        acc += branch.weight * apply_kraus(terms, branch.state).norm_squared() /
               branch.state.norm_squared();
    }
    return clamp_probability(acc);
}

double OutcomeDistribution::total() const {
    double s = 0.0;
    for (double p : probs) {
        s += p;
    }
    return s;
}

HalfInt OutcomeDistribution::argmax() const {
    if (probs.empty()) {
        throw DomainError("empty distribution");
    }
    const auto it = std::max_element(probs.begin(), probs.end());
    return outcomes[static_cast<std::size_t>(it - probs.begin())];
}

std::pair<HalfInt, HalfInt> OutcomeDistribution::top_two() const {
    if (probs.size() < 2) {
        throw DomainError("distribution has fewer than two outcomes");
    }
    std::vector<std::size_t> idx(probs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
    }
    std::partial_sort(idx.begin(), idx.begin() + 2, idx.end(),
                      [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
    return {outcomes[idx[0]], outcomes[idx[1]]};
}

OutcomeDistribution outcome_distribution(const EncodingParams& params) {
    params.validate();
    OutcomeDistribution d;
    d.params = params;
    d.outcomes = params.j.indices();
    d.probs.reserve(d.outcomes.size());
    for (const auto x : d.outcomes) {
        d.probs.push_back(outcome_probability(params, x));
    }
    return d;
}

double success_probability(double j, SuccessMethod method) {
    if (!(j > 0.0) || !std::isfinite(j)) {
        throw DomainError("success probability needs J > 0");
    }
    switch (method) {
        case SuccessMethod::ExactSum: {
            const TotalSpin spin = TotalSpin::from_double(j);
            const auto params = EncodingParams::symmetric_for(spin);
            return outcome_probability(params, edge_outcome(spin, Parity::Plus)) +
                   outcome_probability(params, edge_outcome(spin, Parity::Minus));
        }
        case SuccessMethod::ClosedBinomial:
            return 2.0 * std::exp(log_binomial(4.0 * j, 2.0 * j) - 4.0 * j * std::numbers::ln2);
        case SuccessMethod::Asymptotic:
            return std::sqrt(2.0 / (std::numbers::pi * j)) * (1.0 - 1.0 / (16.0 * j));
    }
    return 0.0;
}

double success_probability_from_db(double db) {
    return std::pow(10.0, -db / 20.0) - std::numbers::pi / 32.0 * std::pow(10.0, -3.0 * db / 20.0);
}

double iterated_scheme_probability(double j) {
    return std::exp2(1.0 - 2.0 * j);
}

}  // namespace gkp
