#pragma once

// Finite superpositions of Gaussian wave packets in one quadrature.
//
// Each component is
//     amplitude * exp(i * tilt * u) * exp(-(u - center)^2 / (2 * variance)),
// where u is the quadrature coordinate (q or p). "variance" is the variance
// of the wave function itself, so |psi|^2 of a single component has variance
// variance / 2 (hbar = 1, vacuum <q^2> = 1/2). The linear phase "tilt" is a
// mean momentum for a position comb and a mean position (with opposite sign)
// for a momentum comb; it is what makes the family closed under the Fourier
// transform and under phase-space displacements.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace gkp {

using complex = std::complex<double>;

enum class Quadrature { Position, Momentum };

std::string_view to_string(Quadrature q);
Quadrature parse_quadrature(std::string_view text);

struct GaussianComponent {
    double center = 0.0;
    double variance = 1.0;
    complex amplitude{1.0, 0.0};
    double tilt = 0.0;

    complex operator()(double u) const;
};

/// Immutable ordered superposition of Gaussian components.
class GaussianComb {
public:
    GaussianComb() = default;

    /// Components are sorted by center; components sharing center, variance
    /// and tilt are merged. Throws DomainError for non-positive variance or
    /// non-finite parameters.
    GaussianComb(Quadrature quadrature, std::vector<GaussianComponent> components);

    Quadrature quadrature() const { return quadrature_; }
    std::span<const GaussianComponent> components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    bool empty() const { return components_.empty(); }
    bool normalized() const { return normalized_; }

    complex operator()(double u) const;

    /// Analytic <psi|psi>.
    double norm_squared() const;

    /// Copy rescaled to unit analytic norm. Throws ZeroProbabilityOutcome when
    /// the norm vanishes.
    GaussianComb normalize() const;

    GaussianComb scaled(complex factor) const;

    /// Translation in this comb's own coordinate: psi(u) -> psi(u - a).
    GaussianComb shifted(double a) const;

    /// Multiplication by exp(i * k * u).
    GaussianComb kicked(double k) const;

    /// Exact continuous Fourier transform into the conjugate quadrature,
    /// tilde psi(p) = (2 pi)^(-1/2) Int dq exp(-i q p) psi(q) for a position
    /// comb and its inverse for a momentum comb.
    GaussianComb fourier() const;

    double min_sigma() const;
    double max_sigma() const;
    double max_abs_tilt() const;

private:
    GaussianComb(Quadrature quadrature, std::vector<GaussianComponent> components, bool normalized);

    Quadrature quadrature_ = Quadrature::Position;
    std::vector<GaussianComponent> components_;
    bool normalized_ = false;
};

/// Closed-form <a|b> (no grid). Throws QuadratureMismatch.
complex overlap(const GaussianComb& a, const GaussianComb& b);

/// |<a|b>|^2 / (<a|a><b|b>); blind to global phases and normalization.
double fidelity(const GaussianComb& a, const GaussianComb& b);

/// Closed-form overlap of two single components.
complex component_overlap(const GaussianComponent& a, const GaussianComponent& b);

/// Sum of two combs in the same quadrature. Throws QuadratureMismatch.
GaussianComb superpose(const GaussianComb& a, const GaussianComb& b);

/// Unit-norm squeezed Gaussian centered at `center`: the displaced squeezed
/// vacuum |center / sqrt(2), r> written in position with variance e^{-2r}.
GaussianComb squeezed_state(double r, double center = 0.0);

}  // namespace gkp
