#pragma once

// Uniform sampling grids, grid evaluation of combs, and the direct-sum
// quadrature Fourier transform used to cross-check analytic transforms.

#include <optional>
#include <vector>

#include "gkp/comb.hpp"
#include "gkp/kernels.hpp"

namespace gkp {

struct QuadratureGrid {
    double min = -1.0;
    double max = 1.0;
    double step = 0.1;

    /// Number of points min, min + step, ..., <= max.
    std::size_t size() const;
    double at(std::size_t k) const { return min + static_cast<double>(k) * step; }
    std::vector<double> points() const;
};

/// Throws DomainError unless min < max and step > 0 is finite.
void validate_grid(const QuadratureGrid& grid);

/// Covers every center +- 6 standard deviations with step sigma_min / 8; the
/// step is further capped so that linear phases get at least 16 samples per
/// period.
QuadratureGrid default_grid(const GaussianComb& comb);

/// Samples psi on the grid. Throws GridTooCoarse if the step exceeds 1/8 of the
/// narrowest component's standard deviation.
std::vector<complex> evaluate(const GaussianComb& comb, const QuadratureGrid& grid,
                              std::optional<kernels::Backend> backend = std::nullopt);

/// Trapezoid approximation of the continuous transform from `from` into the
/// conjugate quadrature, evaluated on `out`. Position -> momentum uses the
/// kernel (2 pi)^(-1/2) exp(-i q p); momentum -> position its inverse.
/// Throws GridTooCoarse when `out` reaches beyond the Nyquist limit pi/step.
std::vector<complex> fourier_numeric(const std::vector<complex>& samples, const QuadratureGrid& grid,
                                     Quadrature from, const QuadratureGrid& out,
                                     std::optional<kernels::Backend> backend = std::nullopt);

/// Trapezoid integral of |psi|^2.
double trapezoid_norm(const std::vector<complex>& samples, double step);

/// sqrt(sum |a - b|^2 step).
double l2_distance(const std::vector<complex>& a, const std::vector<complex>& b, double step);

}  // namespace gkp
