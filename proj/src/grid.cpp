#include "gkp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

// Relative slack when comparing a grid step against sigma / 8.
constexpr double kStepSlack = 1e-9;

kernels::Backend pick(std::optional<kernels::Backend> b) {
    return b ? *b : kernels::active_backend();
}

}  // namespace

std::size_t QuadratureGrid::size() const {
    return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

std::vector<double> QuadratureGrid::points() const {
    std::vector<double> u(size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        u[k] = at(k);
    }
    return u;
}

void validate_grid(const QuadratureGrid& grid) {
    if (!std::isfinite(grid.min) || !std::isfinite(grid.max) || !(grid.min < grid.max)) {
        throw DomainError("grid needs finite min < max");
    }
    if (!std::isfinite(grid.step) || !(grid.step > 0.0)) {
        throw DomainError("grid step must be positive");
    }
    if ((grid.max - grid.min) / grid.step > 5e7) {
        throw DomainError("grid has too many points");
    }
}

QuadratureGrid default_grid(const GaussianComb& comb) {
    if (comb.empty()) {
        throw DomainError("cannot build a grid for an empty comb");
    }
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& c : comb.components()) {
        const double s = std::sqrt(c.variance);
        lo = std::min(lo, c.center - 6.0 * s);
        hi = std::max(hi, c.center + 6.0 * s);
    }
    double step = comb.min_sigma() / 8.0;
    const double k = comb.max_abs_tilt();
    if (k > 0.0) {
        step = std::min(step, std::numbers::pi / (8.0 * k));
    }
    return {lo, hi, step};
}

std::vector<complex> evaluate(const GaussianComb& comb, const QuadratureGrid& grid,
                              std::optional<kernels::Backend> backend) {
    validate_grid(grid);
    if (!comb.empty() && grid.step > comb.min_sigma() / 8.0 * (1.0 + kStepSlack)) {
        throw GridTooCoarse("grid step " + std::to_string(grid.step) +
                            " exceeds sigma/8 = " + std::to_string(comb.min_sigma() / 8.0));
    }
    const std::size_t n = grid.size();
    const std::size_t m = comb.size();
    std::vector<double> center(m), inv_two_var(m), amp_re(m), amp_im(m), tilt(m);
    for (std::size_t c = 0; c < m; ++c) {
        const auto& g = comb.components()[c];
        center[c] = g.center;
        inv_two_var[c] = 1.0 / (2.0 * g.variance);
        amp_re[c] = g.amplitude.real();
        amp_im[c] = g.amplitude.imag();
        tilt[c] = g.tilt;
    }
    const kernels::CombArrays arrays{center.data(), inv_two_var.data(), amp_re.data(),
                                     amp_im.data(), tilt.data(), m};
    const auto u = grid.points();
    std::vector<double> re(n), im(n);
    kernels::comb_eval(pick(backend), arrays, u.data(), n, re.data(), im.data());
    std::vector<complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = {re[i], im[i]};
    }
    return out;
}

std::vector<complex> fourier_numeric(const std::vector<complex>& samples, const QuadratureGrid& grid,
                                     Quadrature from, const QuadratureGrid& out,
                                     std::optional<kernels::Backend> backend) {
    validate_grid(grid);
    validate_grid(out);
    const std::size_t n = grid.size();
    if (samples.size() != n) {
        throw DomainError("sample count does not match the grid");
    }
    const double nyquist = std::numbers::pi / grid.step;
    if (std::max(std::abs(out.min), std::abs(out.max)) > nyquist) {
        throw GridTooCoarse("conjugate range exceeds the Nyquist limit " + std::to_string(nyquist));
    }
    const double scale = grid.step / std::sqrt(2.0 * std::numbers::pi);
    std::vector<double> w_re(n), w_im(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (k == 0 || k + 1 == n) ? 0.5 * scale : scale;
        w_re[k] = w * samples[k].real();
        w_im[k] = w * samples[k].imag();
    }
    const auto u = grid.points();
    const auto p = out.points();
    const std::size_t m = p.size();
    std::vector<double> re(m), im(m);
    const double sign = (from == Quadrature::Position) ? -1.0 : 1.0;
    kernels::fourier_sum(pick(backend), u.data(), w_re.data(), w_im.data(), n, p.data(), m, sign,
                         re.data(), im.data());
    std::vector<complex> result(m);
    for (std::size_t j = 0; j < m; ++j) {
        result[j] = {re[j], im[j]};
    }
    return result;
}

double trapezoid_norm(const std::vector<complex>& samples, double step) {
    if (samples.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto& s : samples) {
        acc += std::norm(s);
    }
    acc -= 0.5 * (std::norm(samples.front()) + std::norm(samples.back()));
    return acc * step;
}

double l2_distance(const std::vector<complex>& a, const std::vector<complex>& b, double step) {
    if (a.size() != b.size()) {
        throw DomainError("l2_distance of arrays with different lengths");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::norm(a[i] - b[i]);
    }
    return std::sqrt(acc * step);
}

}  // namespace gkp
