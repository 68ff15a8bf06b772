#include "gkp/faraday.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive");
    }
}

void require_non_negative(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be non-negative");
    }
}

}  // namespace

double effective_coupling(double chi, double n_photons) {
    require_non_negative(chi, "chi");
    require_positive(n_photons, "photon number");
    return chi * std::sqrt(n_photons / 2.0);
}

double chi_from_eta(double eta, double detuning_over_gamma) {
    require_non_negative(eta, "eta");
    require_positive(detuning_over_gamma, "detuning");
    return eta / (2.0 * detuning_over_gamma);
}

double required_eta(double n_photons, double detuning_over_gamma, double g_target) {
    require_positive(n_photons, "photon number");
    require_positive(detuning_over_gamma, "detuning");
    require_non_negative(g_target, "target coupling");
    return 2.0 * detuning_over_gamma * g_target * std::sqrt(2.0 / n_photons);
}

double interaction_time(double chi, double photon_flux) {
    require_positive(chi, "chi");
    require_positive(photon_flux, "photon flux");
    return 2.0 * std::numbers::pi / (chi * chi * photon_flux);
}

MeterReport meter_distinguishability(double g, double meter_variance, double delta_m,
                                     double threshold) {
    require_positive(g, "g");
    require_positive(meter_variance, "meter variance");
    MeterReport m;
    const double k = g / (2.0 * std::sqrt(meter_variance));
    m.overlap = std::exp(-k * k * delta_m * delta_m);
    m.projectivity_fom = 4.0 * meter_variance / (g * g);
    m.projective = m.projectivity_fom < threshold;
    return m;
}

FaradayPlan plan_faraday(double n_photons, double detuning_over_gamma, double g_target,
                         double meter_variance, std::optional<double> photon_flux) {
    require_positive(g_target, "target coupling");
    FaradayPlan p;
    p.eta = required_eta(n_photons, detuning_over_gamma, g_target);
    p.chi = chi_from_eta(p.eta, detuning_over_gamma);
    p.g = effective_coupling(p.chi, n_photons);
    // t Ndot_L = 2 pi / chi^2 independently of the flux.
    p.interaction_photons = 2.0 * std::numbers::pi / (p.chi * p.chi);
    p.interaction_time_ratio = p.interaction_photons / n_photons;
    if (photon_flux) {
        p.interaction_time = interaction_time(p.chi, *photon_flux);
    }
    const auto meter = meter_distinguishability(p.g, meter_variance, 1.0);
    p.projectivity_fom = meter.projectivity_fom;
    p.neighbor_overlap = meter.overlap;
    p.projective = meter.projective;
    return p;
}

}  // namespace gkp
