#pragma once

// Kraus-operator description of the collective spin measurement and the
// resulting outcome statistics.

#include <vector>

#include "gkp/comb.hpp"
#include "gkp/spin.hpp"
#include "gkp/states.hpp"

namespace gkp {

/// Spin state sum_m c_m |J, m>.
class SpinPrior {
public:
    /// Spin-coherent state along +x: c_m = d_{m,J}.
    static SpinPrior coherent(TotalSpin j);
    /// |J, m>.
    static SpinPrior basis(TotalSpin j, HalfInt m);
    /// Coefficients ordered m = -J .. J. Throws DomainError if the size is
    /// wrong or sum |c_m|^2 differs from 1 by more than 1e-12.
    static SpinPrior from_coefficients(TotalSpin j, std::vector<complex> c);

    TotalSpin j() const { return j_; }
    complex coefficient(HalfInt m) const;
    const std::vector<complex>& coefficients() const { return c_; }

private:
    SpinPrior(TotalSpin j, std::vector<complex> c) : j_(j), c_(std::move(c)) {}
    TotalSpin j_;
    std::vector<complex> c_;
};

/// One term of A_x = sum_m c_m d_{m,x} exp(-i g m p).
struct KrausTerm {
    HalfInt m;
    double shift = 0.0;  ///< position displacement g m
    complex amplitude;   ///< c_m d_{m,x}
};

/// Terms with nonzero amplitude, ordered by m.
std::vector<KrausTerm> kraus_amplitudes(const EncodingParams& params, const SpinPrior& prior,
                                        HalfInt x);

/// A_x |psi> without renormalization. Works for combs in either quadrature.
GaussianComb apply_kraus(const std::vector<KrausTerm>& terms, const GaussianComb& input);

/// A_x |psi> / ||A_x |psi>||. Throws ZeroProbabilityOutcome.
GaussianComb condition_state(const std::vector<KrausTerm>& terms, const GaussianComb& input);

/// Explicit mixture sum_i w_i |psi_i><psi_i| with normalized branches.
struct MixtureBranch {
    double weight = 1.0;
    GaussianComb state;
};
using Mixture = std::vector<MixtureBranch>;

struct ConditionedMixture {
    double probability = 0.0;
    Mixture state;
};

/// Conditions every branch on outcome x; returned weights sum to 1. Branches
/// that cannot produce x are dropped. Throws ZeroProbabilityOutcome when the
/// total probability vanishes.
ConditionedMixture condition_mixture(const EncodingParams& params, const SpinPrior& prior,
                                     HalfInt x, const Mixture& input);

/// P(x) for the coherent prior and squeezed-vacuum input:
/// sum_{m,m'} a_m a_m' exp(-g^2 e^{2r} (m - m')^2 / 4), a_m = d_{m,J} d_{m,x}.
double outcome_probability(const EncodingParams& params, HalfInt x);

enum class ProbabilityRoute {
    DoubleSum,  ///< closed Gaussian double sum, squeezed-vacuum input
    Overlap,    ///< ||A_x psi||^2 from comb overlaps
};

/// P(x) for an arbitrary prior with the squeezed vacuum as optical input.
double outcome_probability(const EncodingParams& params, const SpinPrior& prior, HalfInt x,
                           ProbabilityRoute route);

/// P(x) for an arbitrary prior and an explicit optical mixture.
double outcome_probability(const EncodingParams& params, const SpinPrior& prior, HalfInt x,
                           const Mixture& input);

struct OutcomeDistribution {
    EncodingParams params;
    std::vector<HalfInt> outcomes;  ///< -J .. J
    std::vector<double> probs;

    double total() const;
    HalfInt argmax() const;
    /// Outcomes holding the two largest probabilities, larger first.
    std::pair<HalfInt, HalfInt> top_two() const;
};

OutcomeDistribution outcome_distribution(const EncodingParams& params);

enum class SuccessMethod { ExactSum, ClosedBinomial, Asymptotic };

/// P(+J) + P(-J) under symmetric encoding. ExactSum needs a half-integer J
/// (throws InvalidIndex otherwise); the other two accept any J > 0.
double success_probability(double j, SuccessMethod method);

/// 10^{-dB/20} - (pi/32) 10^{-3 dB/20}.
double success_probability_from_db(double db);

/// 2^{1 - 2J}.
double iterated_scheme_probability(double j);

}  // namespace gkp
