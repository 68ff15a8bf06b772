#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkp/errors.hpp"
#include "gkp/grid.hpp"
#include "gkp/states.hpp"

using namespace gkp;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

EncodingParams sym(double j) { return EncodingParams::symmetric_for(TotalSpin::from_double(j)); }
HalfInt h(const char* s) { return HalfInt::parse(s); }

double binom(int n, int k) { return std::round(std::exp(log_binomial(n, k))); }

double fid_matched(double j) {
    const auto p = sym(j);
    return fidelity(resource_state(p, Parity::Plus), matched_target(p.j, Parity::Plus));
}

}  // namespace

TEST_CASE("symmetric encoding parameters") {
    const auto p = sym(4);
    CHECK(p.g == doctest::Approx(kSqrtPi));
    CHECK(std::exp(2.0 * p.r) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(p.symmetric());
    CHECK_FALSE(EncodingParams{p.j, p.r, 1.0}.symmetric());
    CHECK_THROWS_AS(EncodingParams::symmetric_for(TotalSpin(0)), DomainError);
    CHECK_THROWS_AS((EncodingParams{p.j, 0.0, -1.0}.validate()), DomainError);
    CHECK_THROWS_AS((EncodingParams{p.j, NAN, 1.0}.validate()), DomainError);
}

TEST_CASE("spin-1/2 conditional state") {
    const auto c = conditional_position_state(sym(0.5), h("1/2"));
    REQUIRE(c.size() == 2);
    CHECK(c.components()[0].center == doctest::Approx(-kSqrtPi / 2));
    CHECK(c.components()[1].center == doctest::Approx(kSqrtPi / 2));
    CHECK(c.components()[0].variance == doctest::Approx(4.0 / std::numbers::pi));
    CHECK(c.components()[0].amplitude.real() > 0.0);
    CHECK(c.components()[0].amplitude == c.components()[1].amplitude);
    CHECK(c.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("J = 4 edge states") {
    const auto p = sym(4);
    const auto plus = conditional_position_state(p, h("4"));
    const auto minus = conditional_position_state(p, h("-4"));
    REQUIRE(plus.size() == 9);
    REQUIRE(minus.size() == 9);
    const double a0 = plus.components()[4].amplitude.real() / binom(8, 4);
    for (int k = 0; k < 9; ++k) {
        const int m = k - 4;
        const auto& cp = plus.components()[k];
        const auto& cm = minus.components()[k];
        CHECK(cp.center == doctest::Approx(kSqrtPi * m));
        CHECK(cp.amplitude.real() > 0.0);
        CHECK(cp.amplitude.real() == doctest::Approx(a0 * binom(8, 4 - m)).epsilon(1e-13));
        CHECK(std::abs(cm.amplitude) / std::abs(cp.amplitude) ==
              doctest::Approx(std::abs(minus.components()[4].amplitude) / std::abs(plus.components()[4].amplitude))
                  .epsilon(1e-13));
        CHECK(cm.amplitude.real() * (((4 + m) % 2 == 0) ? 1.0 : -1.0) > 0.0);
    }

    const auto grid = momentum_grid(p);
    const auto sp = conditional_momentum_samples(p, h("4"), grid);
    double peak = 0.0;
    for (auto v : sp) {
        peak = std::max(peak, std::abs(v));
    }
    const complex at0 = conditional_momentum_amplitude(p, h("4"), 0.0, MomentumForm::Product);
    CHECK(at0.real() >= peak);
    CHECK(at0.real() == doctest::Approx(peak).epsilon(1e-2));
    CHECK(std::abs(at0.imag()) < 1e-15);
    CHECK(std::abs(conditional_momentum_amplitude(p, h("-4"), 0.0, MomentumForm::Product)) == 0.0);
}

TEST_CASE("momentum product forms match the sum form") {
    for (double j : {1.0, 2.0, 4.0, 4.5, 7.0}) {
        const auto p = sym(j);
        std::vector<HalfInt> xs{p.j.as_half_int(), -p.j.as_half_int()};
        if (p.j.is_integer()) {
            xs.push_back(h("0"));
        }
        for (auto x : xs) {
            const auto exact = conditional_momentum_state(p, x);
            for (double q : {-3.1, -0.7, 0.0, std::numbers::pi / (2.0 * p.g), 1.3, 5.0}) {
                const auto a = conditional_momentum_amplitude(p, x, q, MomentumForm::Product);
                const auto b = conditional_momentum_amplitude(p, x, q, MomentumForm::Sum);
                CHECK(std::abs(a - b) < 1e-12);
                CHECK(std::abs(a - exact(q)) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(conditional_momentum_amplitude(sym(4), h("1"), 0.0, MomentumForm::Product), InvalidIndex);
}

TEST_CASE("x = 0 extremum for J = 2") {
    const auto p = sym(2);
    const auto comb_part = [&](double u) {
        const double env = std::exp(-u * u / (2.0 * std::exp(2.0 * p.r)));
        return std::abs(conditional_momentum_amplitude(p, h("0"), u, MomentumForm::Sum)) / env;
    };
    const double q = std::numbers::pi / (2.0 * p.g);
    for (double d : {-1e-3, 1e-3}) {
        CHECK(comb_part(q) > comb_part(q + d));
    }
}

TEST_CASE("numeric Fourier transform matches closed momentum forms") {
    for (double j : {0.5, 1.0, 2.0, 4.0, 4.5, 8.0}) {
        const auto p = sym(j);
        std::vector<HalfInt> xs{p.j.as_half_int(), -p.j.as_half_int()};
        if (p.j.is_integer()) {
            xs.push_back(h("0"));
        }
        for (auto x : xs) {
            const auto comb = conditional_position_state(p, x);
            const auto qg = default_grid(comb);
            const auto pg = momentum_grid(p);
            const auto numeric = fourier_numeric(evaluate(comb, qg), qg, Quadrature::Position, pg);
            const auto closed = conditional_momentum_samples(p, x, pg, MomentumForm::Product);
            CAPTURE(j);
            CAPTURE(x.str());
            CHECK(l2_distance(numeric, closed, pg.step) <= 1e-6);
        }
    }
}

TEST_CASE("vanishing and invalid outcomes") {
    const EncodingParams p{TotalSpin(8), 0.0, 1e-9};
    CHECK_THROWS_AS(conditional_position_state(p, h("-4")), ZeroProbabilityOutcome);
    CHECK_THROWS_AS(conditional_position_state(sym(4), h("5")), InvalidIndex);
    CHECK_THROWS_AS(conditional_position_state(sym(4), h("1/2")), InvalidIndex);
    CHECK_THROWS_AS(x0_logical_state(sym(4.5)), HalfIntegerUnsupported);
    CHECK_THROWS_AS(approx_x0_position(sym(4.5)), HalfIntegerUnsupported);
}

TEST_CASE("target states") {
    const double s8 = std::pow(10.0, -8.0 / 20.0);
    const auto t8 = target_state(Parity::Plus, s8, 0.0);
    CHECK(t8.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t8.size() == 2 * static_cast<std::size_t>(target_truncation(s8)) + 1);
    for (const auto& c : t8.components()) {
        CHECK(c.amplitude.real() > 0.0);
        CHECK(c.variance == doctest::Approx(s8 * s8));
    }

    const auto tm = target_state(Parity::Minus, 0.35, 0.4);
    const auto comps = tm.components();
    for (std::size_t k = 0; k + 1 < comps.size(); ++k) {
        const double env0 = std::exp(-0.5 * 0.35 * 0.35 * std::pow(comps[k].center - 0.4, 2));
        const double env1 = std::exp(-0.5 * 0.35 * 0.35 * std::pow(comps[k + 1].center - 0.4, 2));
        CHECK(comps[k + 1].amplitude.real() / comps[k].amplitude.real() == doctest::Approx(-env1 / env0));
    }

    const double q0 = kSqrtPi / 2.0;
    const auto off = target_state(Parity::Plus, 0.3, q0);
    const auto approx = target_momentum_approx(Parity::Plus, 0.3, q0);
    CHECK(fidelity(off.fourier(), approx) > 0.997);
    const auto pg = default_grid(approx);
    const auto qg = default_grid(off);
    const auto numeric = fourier_numeric(evaluate(off, qg), qg, Quadrature::Position, pg);
    CHECK(l2_distance(numeric, evaluate(off.fourier(), pg), pg.step) < 1e-8);
    // Linear phase across each spike: arg psi(p_s + d) - arg psi(p_s) = -q0 d.
    const double ps = 2.0 * kSqrtPi;
    const double dphi = std::arg(approx(ps + 0.05) / approx(ps));
    CHECK(dphi == doctest::Approx(-q0 * 0.05).epsilon(1e-12));

    CHECK_THROWS_AS(target_state(Parity::Plus, 0.3, 1.0), DomainError);
    CHECK_THROWS_AS(target_state(Parity::Plus, 0.0, 0.0), DomainError);
}

TEST_CASE("resource states") {
    const auto p4 = sym(4);
    CHECK(fidelity(resource_state(p4, Parity::Plus), conditional_position_state(p4, h("4"))) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(resource_state(p4, Parity::Plus).components()[0].center ==
          conditional_position_state(p4, h("4")).components()[0].center);

    const auto r92 = resource_state(sym(4.5), Parity::Plus);
    CHECK(r92.size() == 10);
    int zeros = 0;
    for (const auto& c : r92.components()) {
        zeros += (c.center == 0.0) ? 1 : 0;
    }
    CHECK(zeros == 1);

    const auto r12 = resource_state(sym(0.5), Parity::Minus);
    REQUIRE(r12.size() == 2);
    CHECK(r12.components()[0].center == 0.0);
    CHECK(r12.components()[1].center == doctest::Approx(kSqrtPi));
    CHECK(r12.components()[0].amplitude.real() * r12.components()[1].amplitude.real() < 0.0);

    const auto grid = default_grid(resource_state(p4, Parity::Plus));
    CHECK(trapezoid_norm(evaluate(resource_state(p4, Parity::Plus), grid), grid.step) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fidelity with the 8 dB target") {
    const auto res = resource_state(sym(4), Parity::Plus);
    const auto target = target_state(Parity::Plus, std::pow(10.0, -8.0 / 20.0), 0.0);
    const double closed = fidelity(target, res);

    const auto grid = default_grid(superpose(res, target));
    const auto a = evaluate(target, grid);
    const auto b = evaluate(res, grid);
    complex ov{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) {
        ov += std::conj(a[k]) * b[k];
    }
    ov *= grid.step;
    const double quad = std::norm(ov) / (trapezoid_norm(a, grid.step) * trapezoid_norm(b, grid.step));
    CHECK(std::abs(closed - quad) <= 1e-8);
    CHECK(closed == doctest::Approx(0.999383011208).epsilon(1e-9));
    CHECK(closed > 0.9);
    CHECK(fid_matched(9) > closed);
}

TEST_CASE("convergence towards the matched target") {
    const double f4 = fid_matched(4);
    CHECK(f4 == doctest::Approx(0.9993215624).epsilon(1e-9));
    CHECK(fidelity(resource_state(sym(4), Parity::Minus), matched_target(TotalSpin(8), Parity::Minus)) ==
          doctest::Approx(0.9993069340).epsilon(1e-9));
    CHECK(fid_matched(4.5) == doctest::Approx(0.9994640033).epsilon(1e-9));

    double prev_f = 0.0;
    double prev_d = INFINITY;
    for (double j : {2.0, 4.0, 8.0, 16.0, 32.0}) {
        const auto p = sym(j);
        const auto res = resource_state(p, Parity::Plus);
        const auto tgt = matched_target(p.j, Parity::Plus);
        const double f = fidelity(res, tgt);
        const complex ov = overlap(res, tgt);
        const double dist = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(ov)));
        CAPTURE(j);
        CHECK(f > prev_f);
        CHECK(dist <= prev_d);
        prev_f = f;
        prev_d = dist;
    }
    CHECK(prev_f > 0.99998);
}

TEST_CASE("x = 0 states") {
    const auto p2 = sym(2);
    const auto c = conditional_position_state(p2, h("0"));
    REQUIRE(c.size() == 3);
    const double a0 = c.components()[1].amplitude.real();
    CHECK(a0 < 0.0);
    CHECK(c.components()[0].amplitude.real() / a0 == doctest::Approx(-1.0 / 2.0));
    CHECK(c.components()[2].amplitude.real() / a0 == doctest::Approx(-1.0 / 2.0));

    const auto l4 = x0_logical_state(sym(4));
    CHECK(l4.max_abs_tilt() == doctest::Approx(std::numbers::pi / (2.0 * kSqrtPi)));
    const auto mom = l4.fourier();
    const double at_spike = std::abs(mom(kSqrtPi));
    CHECK(at_spike > 10.0 * std::abs(mom(kSqrtPi / 2.0)));

    const auto p1 = sym(1);
    CHECK(std::abs(conditional_momentum_amplitude(p1, h("0"), 0.0, MomentumForm::Product)) < 1e-15);
    const double lobe = std::abs(conditional_momentum_amplitude(p1, h("0"), std::numbers::pi / (2.0 * p1.g)));
    CHECK(lobe == doctest::Approx(std::abs(conditional_momentum_amplitude(p1, h("0"), -std::numbers::pi / (2.0 * p1.g)))));
    CHECK(lobe > 0.1);
}

TEST_CASE("approximate comb forms") {
    for (double j : {8.0, 16.0, 32.0}) {
        const auto p = sym(j);
        for (auto par : {Parity::Plus, Parity::Minus}) {
            const auto exact = conditional_position_state(p, edge_outcome(p.j, par));
            CHECK(fidelity(exact, approx_edge_position(p, par)) > 0.9998);
            CHECK(fidelity(exact.fourier(), approx_edge_momentum(p, par)) > 0.998);
        }
        const auto x0 = conditional_position_state(p, h("0"));
        CHECK(fidelity(x0, approx_x0_position(p)) > 0.999);
        CHECK(fidelity(x0.fourier(), approx_x0_momentum(p)) > 0.999);
    }
}
