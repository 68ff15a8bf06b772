#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkp/error_metrics.hpp"
#include "gkp/errors.hpp"
#include "oracles.hpp"

using namespace gkp;

namespace {

constexpr double kPi = std::numbers::pi;
const double kBasel = kPi * kPi / 6.0;

}  // namespace

TEST_CASE("hurwitz zeta") {
    CHECK(hurwitz_zeta2(1.0) == doctest::Approx(kBasel).epsilon(1e-15));
    CHECK(hurwitz_zeta2(4.0) == doctest::Approx(kBasel - 1.0 - 0.25 - 1.0 / 9.0).epsilon(1e-14));
    CHECK(hurwitz_zeta2(4.0) == doctest::Approx(0.2838230).epsilon(1e-7));
    const double z100 = hurwitz_zeta2(100.0);
    CHECK(z100 == doctest::Approx(0.0100502).epsilon(1e-6));
    CHECK(std::abs(z100 - (0.01 + 0.5e-4)) < 1e-6);
    // zeta(2, 1/2) = pi^2 / 2.
    CHECK(hurwitz_zeta2(0.5) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-15));
    for (double a : {0.3, 1.7, 6.25, 31.0}) {
        CHECK(hurwitz_zeta2(a) - hurwitz_zeta2(a + 1.0) == doctest::Approx(1.0 / (a * a)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(hurwitz_zeta2(0.0), DomainError);
    CHECK_THROWS_AS(hurwitz_zeta2(-1.0), DomainError);
}

TEST_CASE("momentum spike variance vs quadrature") {
    const double g = std::sqrt(kPi);
    CHECK(momentum_spike_variance(1.0, g) == doctest::Approx(2.0 * (kBasel - 1.0) / kPi).epsilon(1e-15));
    CHECK(momentum_spike_variance(1.0, g) == doctest::Approx(0.41063).epsilon(1e-4));
    CHECK(momentum_spike_variance(4.0, g) == doctest::Approx(0.14090).epsilon(1e-4));
    for (int two_j = 1; two_j <= 60; ++two_j) {
        const TotalSpin j(two_j);
        const double closed = momentum_spike_variance(j.value(), g);
        CHECK(std::abs(peak_variance_oracle(j, g) / closed - 1.0) <= 1e-8);
        CHECK(peak_normalization_oracle(j, g) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // Independent Simpson check of one period at J = 3 and a non-symmetric g.
    const double g2 = 1.3;
    const int n = 6;
    const double pre = g2 * std::tgamma(4.0) / (2.0 * std::sqrt(kPi) * std::tgamma(3.5));
    const double var = oracle::simpson(
        [&](double p) { return p * p * pre * std::pow(std::cos(0.5 * g2 * p), n); }, -kPi / g2, kPi / g2, 20000);
    CHECK(momentum_spike_variance(3.0, g2) == doctest::Approx(var).epsilon(1e-10));
}

TEST_CASE("spike variance asymptotics") {
    const double g = std::sqrt(kPi);
    double prev = INFINITY;
    for (double j : {10.0, 20.0, 40.0, 80.0, 160.0}) {
        const double diff = momentum_spike_variance(j, g) - 2.0 / (g * g * j);
        CHECK(diff < 0.0);
        const double scaled = j * j * std::abs(diff);
        CHECK(std::abs(scaled - 1.0 / kPi) < prev);
        prev = std::abs(scaled - 1.0 / kPi);
    }
}

TEST_CASE("error profile") {
    const auto e = error_profile(symmetric_params(TotalSpin(8)));
    CHECK(e.spike_var_q == doctest::Approx(1.0 / (2.0 * kPi)));
    CHECK(e.env_var_q == doctest::Approx(2.0 * kPi));
    CHECK(e.env_var_p == doctest::Approx(2.0 * kPi));
    CHECK(e.spike_var_p == doctest::Approx(2.0 * (16.0 * hurwitz_zeta2(4.0) - 1.0) / (16.0 * kPi)).epsilon(1e-14));
    CHECK(e.db == doctest::Approx(7.9818).epsilon(1e-4));
    const auto m = error_profile(symmetric_params(TotalSpin(8)), true);
    CHECK(m.measured);
    CHECK(m.spike_var_q == doctest::Approx(0.5 * e.spike_var_q));
    for (int two_j = 1; two_j < 40; two_j += 3) {
        const auto s = error_profile(symmetric_params(TotalSpin(two_j)));
        CHECK(s.spike_var_q * s.env_var_q == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(error_profile(EncodingParams{TotalSpin(0), 0.0, 1.0}), DomainError);
}

TEST_CASE("squeezing conversions") {
    CHECK(symmetric_r(4.0) == doctest::Approx(0.5 * std::log(2.0 * kPi)).epsilon(1e-15));
    CHECK(symmetric_r(4.0) == doctest::Approx(0.91894).epsilon(1e-5));
    CHECK(std::abs(symmetric_r(2.0 / kPi)) < 1e-15);
    CHECK(db_from_j(4.0) == doctest::Approx(7.98).epsilon(1e-3));
    CHECK(std::abs(db_from_j(4.0) - 8.0) < 0.05);
    CHECK(std::abs(db_from_j(4.5) - 8.5) < 0.05);
    CHECK(j_from_db(20.0) == doctest::Approx(63.66).epsilon(1e-4));
    CHECK(std::abs(j_from_db(20.0) - 63.5) <= 0.5);
    CHECK(j_from_db(15.0) == doctest::Approx(20.13).epsilon(1e-3));
    CHECK(j_from_db(10.0 * std::log10(kPi / 2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(db_from_r(1.0) == doctest::Approx(8.686).epsilon(1e-4));

    const auto t = squeezing_from_sigma_sq(0.1);
    CHECK(t.db == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(t.sigma == doctest::Approx(0.3162).epsilon(1e-4));
    CHECK(t.envelope_width == doctest::Approx(3.162).epsilon(1e-4));
    CHECK(squeezing_from_r(1.0).db == doctest::Approx(8.686).epsilon(1e-4));
    CHECK(squeezing_from_j(4.0).db == doctest::Approx(1.9612 + 10.0 * std::log10(4.0)).epsilon(1e-4));
    CHECK_THROWS_AS(db_from_sigma_sq(0.0), DomainError);
    CHECK_THROWS_AS(db_from_j(-1.0), DomainError);

    for (double db : {-3.0, 0.0, 5.0, 12.5, 30.0}) {
        CHECK(db_from_j(j_from_db(db)) == doctest::Approx(db).epsilon(1e-12).scale(1.0));
        CHECK(r_from_db(db_from_r(db / 8.0)) == doctest::Approx(db / 8.0).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("requirement rows") {
    for (double db : {5.0, 10.0, 15.0, 20.0}) {
        const auto row = requirement_for_db(db);
        CHECK(row.j_required == 2.0 / kPi * std::pow(10.0, db / 10.0));
        CHECK(row.r == doctest::Approx(r_from_db(db)));
        CHECK(std::abs(row.p_success - (std::pow(10.0, -db / 20.0) - kPi / 32.0 * std::pow(10.0, -3.0 * db / 20.0))) <=
              1e-12);
    }
    const auto r10 = requirement_for_db(10.0);
    CHECK(r10.j_required >= 6.3);
    CHECK(r10.j_required <= 6.5);
    CHECK(r10.p_success >= 0.30);
    CHECK(r10.p_success <= 0.32);
}
