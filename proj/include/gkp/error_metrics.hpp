#pragma once

// Spike and envelope variances of the heralded states, squeezing conversions
// and the Hurwitz zeta function they rely on.

#include "gkp/spin.hpp"
#include "gkp/states.hpp"

namespace gkp {

/// Wave-function variances (quadrature units^2). With measured = true all
/// four are halved, i.e. the variances of |psi|^2. db always refers to the
/// wave-function spike variance.
struct ErrorProfile {
    double spike_var_q = 0.0;
    double env_var_q = 0.0;
    double spike_var_p = 0.0;
    double env_var_p = 0.0;
    double db = 0.0;
    bool measured = false;
};

ErrorProfile error_profile(const EncodingParams& params, bool measured = false);

/// zeta(2, a) = sum_{k >= 0} (k + a)^{-2}. Throws DomainError for a <= 0.
double hurwitz_zeta2(double a);

/// 2 (J^2 zeta(2, J) - 1) / (g^2 J^2): variance of one cos^{2J}(g p / 2) peak.
double momentum_spike_variance(double j, double g);

/// Same quantity by adaptive Gauss-Kronrod quadrature of p^2 P(p) over one
/// period [-pi/g, pi/g].
double peak_variance_oracle(TotalSpin j, double g);

/// Integral of the normalized peak density over one period (should be 1).
double peak_normalization_oracle(TotalSpin j, double g);

EncodingParams symmetric_params(TotalSpin j);

/// r = ln(pi J / 2) / 2 for any real J > 0.
double symmetric_r(double j);

/// J = (2 / pi) 10^{dB/10}.
double j_from_db(double db);
/// 10 log10(pi J / 2).
double db_from_j(double j);
/// 10 log10(e^{2r}).
double db_from_r(double r);
double r_from_db(double db);
/// -10 log10(sigma^2).
double db_from_sigma_sq(double sigma_sq);

struct SqueezingTriple {
    double db = 0.0;
    double sigma = 0.0;           ///< spike width
    double envelope_width = 0.0;  ///< 1 / sigma
};

SqueezingTriple squeezing_from_sigma_sq(double sigma_sq);
SqueezingTriple squeezing_from_r(double r);
SqueezingTriple squeezing_from_j(double j);

struct RequirementRow {
    double db = 0.0;
    double j_required = 0.0;
    double r = 0.0;
    double p_success = 0.0;
};

RequirementRow requirement_for_db(double db);

}  // namespace gkp
