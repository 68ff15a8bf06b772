#pragma once

// Parameter relations for a dispersive Faraday interface between the spin
// ensemble and a pulsed light field.

#include <optional>

namespace gkp {

/// g = chi sqrt(N_L / 2).
double effective_coupling(double chi, double n_photons);

/// chi = eta / (2 Delta/Gamma).
double chi_from_eta(double eta, double detuning_over_gamma);

/// eta = 2 (Delta/Gamma) g sqrt(2 / N_L).
double required_eta(double n_photons, double detuning_over_gamma, double g_target);

/// t = 2 pi / (chi^2 Ndot_L).
double interaction_time(double chi, double photon_flux);

struct MeterReport {
    double overlap = 1.0;          ///< exp(-(g / 2 sigma_M)^2 dm^2)
    double projectivity_fom = 0.0; ///< 4 sigma_M^2 / g^2
    bool projective = false;       ///< fom below the advisory threshold
};

inline constexpr double kProjectivityThreshold = 0.1;

/// meter_variance is the variance of |psi|^2 for one meter state.
MeterReport meter_distinguishability(double g, double meter_variance, double delta_m,
                                     double threshold = kProjectivityThreshold);

struct FaradayPlan {
    double g = 0.0;
    double chi = 0.0;
    double eta = 0.0;
    double interaction_time_ratio = 0.0;  ///< t Ndot_L / N_L
    double interaction_photons = 0.0;     ///< t Ndot_L
    std::optional<double> interaction_time;  ///< seconds, when a flux is given
    double projectivity_fom = 0.0;
    double neighbor_overlap = 0.0;
    bool projective = false;
};

/// Throws DomainError for non-positive inputs.
FaradayPlan plan_faraday(double n_photons, double detuning_over_gamma, double g_target,
                         double meter_variance, std::optional<double> photon_flux = std::nullopt);

}  // namespace gkp
