#pragma once

// Conditional optical states heralded by the collective spin measurement,
// GKP target states, and the Gaussian-comb approximations of both.
//
// Conventions: hbar = 1, vacuum <q^2> = 1/2. The optical mode starts in the
// position-squeezed vacuum with wave-function variance e^{-2r}; outcome x of
// the spin measurement leaves a comb of 2J + 1 spikes at q = g m with
// amplitudes proportional to d_{m,J} d_{m,x}.

#include "gkp/comb.hpp"
#include "gkp/grid.hpp"
#include "gkp/spin.hpp"

namespace gkp {

struct EncodingParams {
    TotalSpin j;
    double r = 0.0;
    double g = 1.0;

    /// Throws DomainError unless g > 0 and r is finite.
    void validate() const;

    /// e^{2r} = pi J / 2 and g = sqrt(pi) to 1e-12.
    bool symmetric() const;

    /// g = sqrt(pi), r = ln(pi J / 2) / 2.
    static EncodingParams symmetric_for(TotalSpin j);
};

enum class Parity { Plus, Minus };

/// Position comb psi_d^x(q), normalized. Throws InvalidIndex for an invalid
/// outcome and ZeroProbabilityOutcome when P(x) is lost to rounding.
GaussianComb conditional_position_state(const EncodingParams& params, HalfInt x);

/// Exact momentum comb, the analytic Fourier transform of the position comb.
GaussianComb conditional_momentum_state(const EncodingParams& params, HalfInt x);

enum class MomentumForm {
    Sum,      ///< sum over m of d_{m,J} d_{m,x} exp(-i g m p), any outcome
    Product,  ///< cos^{2J}, sin^{2J} or sin^J closed forms; x in {+J, -J, 0}
};

/// Pointwise momentum wave function psi~_d^x(p).
complex conditional_momentum_amplitude(const EncodingParams& params, HalfInt x, double p,
                                       MomentumForm form = MomentumForm::Sum);

/// Samples of the momentum wave function on a grid; the normalization
/// factor is computed once.
std::vector<complex> conditional_momentum_samples(const EncodingParams& params, HalfInt x,
                                                  const QuadratureGrid& grid,
                                                  MomentumForm form = MomentumForm::Product);

/// Grid for the momentum wave function: +-6 envelope widths, step 1/8 of the
/// narrowest peak width.
QuadratureGrid momentum_grid(const EncodingParams& params);

/// Number of spikes on each side of the origin needed for a target with
/// spike variance sigma^2 (envelope weight below 1e-12 beyond it).
int target_truncation(double sigma);

/// Position comb with spikes at s sqrt(pi), spike variance sigma^2 and
/// amplitudes (+-1)^s exp(-sigma^2 (s sqrt(pi) - q0)^2 / 2), normalized.
/// truncation = 0 picks target_truncation(sigma). Throws DomainError for
/// |q0| > sqrt(pi)/2 or sigma <= 0.
GaussianComb target_state(Parity parity, double sigma, double q0, int truncation = 0);

/// Approximate momentum form: spikes at s sqrt(pi) (even s for Plus, odd for
/// Minus), variance sigma^2, envelope exp(-sigma^2 p^2 / 2), linear phase
/// exp(-i q0 (p - s sqrt(pi))).
GaussianComb target_momentum_approx(Parity parity, double sigma, double q0, int truncation = 0);

/// x = +-J conditional state, shifted by +g/2 in position for half-integer J
/// so that a spike sits at q = 0.
GaussianComb resource_state(const EncodingParams& params, Parity parity);

/// Target matched to resource_state under symmetric encoding:
/// sigma = sqrt(2 / (pi J)), q0 = 0 for integer J and sqrt(pi)/2 otherwise.
GaussianComb matched_target(TotalSpin j, Parity parity);

/// Spin outcome corresponding to a parity: +J or -J.
HalfInt edge_outcome(TotalSpin j, Parity parity);

/// x = 0 conditional state after the momentum kick exp(i pi q / 2g).
/// Throws HalfIntegerUnsupported for half-integer J.
GaussianComb x0_logical_state(const EncodingParams& params);

// Approximate comb forms (Gaussian envelope sampled at each spike).

/// Spikes at g m, variance e^{-2r}, amplitude (+-1)^{J+m} exp(-(g m)^2 / g^2 J).
GaussianComb approx_edge_position(const EncodingParams& params, Parity parity);

/// Spikes at s pi / g (s even for Plus, odd for Minus), variance sigma_p^2,
/// amplitude e^{i s J pi} exp(-p_s^2 / 2 e^{2r}).
GaussianComb approx_edge_momentum(const EncodingParams& params, Parity parity);

/// Spikes at g m with Re(i^{J+m}) weights and envelope exp(-q^2 / 2 g^2 J).
GaussianComb approx_x0_position(const EncodingParams& params);

/// Spikes at (n + 1/2) pi / g, variance sigma_p^2 / 2, weights (-1)^{J n}.
GaussianComb approx_x0_momentum(const EncodingParams& params);

}  // namespace gkp
