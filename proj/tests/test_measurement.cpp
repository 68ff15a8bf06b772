#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gkp/errors.hpp"
#include "gkp/measurement.hpp"

using namespace gkp;

namespace {

EncodingParams sym(double j) { return EncodingParams::symmetric_for(TotalSpin::from_double(j)); }
HalfInt h(const char* s) { return HalfInt::parse(s); }

const double kP_half = 0.5 + 0.5 * std::exp(-std::numbers::pi * std::numbers::pi / 16.0);

}  // namespace

TEST_CASE("spin priors") {
    const TotalSpin j(3);
    const auto c = SpinPrior::coherent(j);
    double n2 = 0.0;
    for (auto v : c.coefficients()) {
        n2 += std::norm(v);
    }
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(SpinPrior::basis(j, h("3/2")).coefficient(h("3/2")) == complex(1.0, 0.0));
    CHECK_THROWS_AS(SpinPrior::basis(j, h("1")), InvalidIndex);
    CHECK_THROWS_AS(SpinPrior::from_coefficients(j, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(SpinPrior::from_coefficients(j, {1.0, 1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("kraus amplitudes") {
    const auto p = sym(0.5);
    const auto t = kraus_amplitudes(p, SpinPrior::coherent(p.j), h("1/2"));
    REQUIRE(t.size() == 2);
    CHECK(t[0].shift == doctest::Approx(-p.g / 2));
    CHECK(t[1].shift == doctest::Approx(p.g / 2));
    CHECK(t[0].amplitude.real() == doctest::Approx(0.5));
    CHECK(t[1].amplitude.real() == doctest::Approx(0.5));

    const auto p3 = sym(3);
    const auto top = kraus_amplitudes(p3, SpinPrior::basis(p3.j, h("3")), h("-1"));
    REQUIRE(top.size() == 1);
    CHECK(top[0].shift == doctest::Approx(3.0 * p3.g));
    CHECK(top[0].amplitude.real() == doctest::Approx(wigner_d(p3.j, h("3"), h("-1"))));

    const auto p1 = sym(1);
    const auto mid = kraus_amplitudes(p1, SpinPrior::coherent(p1.j), h("0"));
    REQUIRE(mid.size() == 2);
    CHECK(mid[0].amplitude.real() == doctest::Approx(d_edge(p1.j, h("-1"), 1) * d_center(p1.j, h("-1"))));
    CHECK(mid[1].amplitude.real() == doctest::Approx(d_edge(p1.j, h("1"), 1) * d_center(p1.j, h("1"))));
    CHECK_THROWS_AS(kraus_amplitudes(p1, SpinPrior::coherent(TotalSpin(4)), h("0")), DomainError);
}

TEST_CASE("Kraus operators are complete") {
    // sum_x A_x^dagger A_x = 1 on several input states and priors.
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    for (double jv : {1.0, 2.5}) {
        const EncodingParams p{TotalSpin::from_double(jv), 0.3, 0.8};
        std::vector<complex> c(static_cast<std::size_t>(p.j.dimension()));
        double n2 = 0.0;
        for (auto& v : c) {
            v = {nd(rng), nd(rng)};
            n2 += std::norm(v);
        }
        for (auto& v : c) {
            v /= std::sqrt(n2);
        }
        const auto prior = SpinPrior::from_coefficients(p.j, c);
        const GaussianComb input(Quadrature::Position, {{0.2, 0.7, {1.0, 0.3}, 0.5}, {-1.0, 0.4, {0.2, 0.0}, 0.0}});
        const auto in = input.normalize();
        double total = 0.0;
        double total_p = 0.0;
        for (auto x : p.j.indices()) {
            const auto terms = kraus_amplitudes(p, prior, x);
            total += apply_kraus(terms, in).norm_squared();
            total_p += apply_kraus(terms, in.fourier()).norm_squared();
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(total_p == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("kraus action commutes with the Fourier transform") {
    const auto p = sym(2);
    const auto terms = kraus_amplitudes(p, SpinPrior::coherent(p.j), h("1"));
    const auto in = squeezed_state(p.r);
    const auto a = apply_kraus(terms, in).fourier();
    const auto b = apply_kraus(terms, in.fourier());
    CHECK(std::abs(overlap(a, b) - a.norm_squared()) < 1e-12);
    CHECK(fidelity(condition_state(terms, in), conditional_position_state(p, h("1"))) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("spin-1/2 outcome probabilities") {
    const auto p = sym(0.5);
    CHECK(outcome_probability(p, h("1/2")) == doctest::Approx(kP_half).epsilon(1e-14));
    CHECK(outcome_probability(p, h("1/2")) == doctest::Approx(0.76982074).epsilon(1e-8));
    CHECK(outcome_probability(p, h("-1/2")) == doctest::Approx(1.0 - kP_half).epsilon(1e-14));
    const auto d = outcome_distribution(p);
    REQUIRE(d.probs.size() == 2);
    CHECK(d.probs[0] == doctest::Approx(0.23017926).epsilon(1e-7));
    CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("probability routes agree") {
    for (double jv : {0.5, 2.0, 4.5}) {
        const auto p = sym(jv);
        const auto prior = SpinPrior::coherent(p.j);
        for (auto x : p.j.indices()) {
            const double a = outcome_probability(p, x);
            CHECK(outcome_probability(p, prior, x, ProbabilityRoute::DoubleSum) == doctest::Approx(a).epsilon(1e-12));
            CHECK(outcome_probability(p, prior, x, ProbabilityRoute::Overlap) == doctest::Approx(a).epsilon(1e-12));
            const Mixture pure{{1.0, squeezed_state(p.r)}};
            CHECK(outcome_probability(p, prior, x, pure) == doctest::Approx(a).epsilon(1e-12));
        }
    }
}

TEST_CASE("no interaction limit") {
    const EncodingParams p{TotalSpin(5), 0.0, 1e-12};
    for (auto x : p.j.indices()) {
        double s = 0.0;
        for (auto m : p.j.indices()) {
            s += wigner_d(p.j, m, p.j.as_half_int()) * wigner_d(p.j, m, x);
        }
        CHECK(outcome_probability(p, x) == doctest::Approx(s * s).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("completeness of the outcome distribution") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ur(-0.5, 1.5);
    std::uniform_real_distribution<double> ug(0.3, 2.5);
    for (int two_j = 1; two_j <= 40; ++two_j) {
        const TotalSpin j(two_j);
        CHECK(outcome_distribution(EncodingParams::symmetric_for(j)).total() == doctest::Approx(1.0).epsilon(1e-9));
        for (int rep = 0; rep < 2; ++rep) {
            const EncodingParams p{j, ur(rng), ug(rng)};
            CHECK(outcome_distribution(p).total() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("J = 50 distribution peaks at the edges") {
    const auto d = outcome_distribution(sym(50));
    const auto [a, b] = d.top_two();
    CHECK(std::abs(a.twice()) == 100);
    CHECK(std::abs(b.twice()) == 100);
    CHECK(a != b);
    CHECK(std::abs(d.argmax().twice()) == 100);
}

TEST_CASE("mixtures") {
    const auto p = sym(2);
    const auto prior = SpinPrior::coherent(p.j);
    const Mixture mix{{0.25, squeezed_state(p.r, 0.3)}, {0.75, squeezed_state(p.r, -0.6)}};
    double total = 0.0;
    for (auto x : p.j.indices()) {
        const double px = outcome_probability(p, prior, x, mix);
        const auto cm = condition_mixture(p, prior, x, mix);
        CHECK(cm.probability == doctest::Approx(px).epsilon(1e-13));
        double w = 0.0;
        for (const auto& br : cm.state) {
            w += br.weight;
            CHECK(br.state.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
        }
        CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
        total += px;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    const EncodingParams tiny{TotalSpin(2), 0.0, 1e-12};
    const Mixture vac{{1.0, squeezed_state(0.0)}};
    CHECK_THROWS_AS(condition_mixture(tiny, SpinPrior::coherent(tiny.j), h("-1"), vac), ZeroProbabilityOutcome);
    const Mixture bad{{-0.1, squeezed_state(0.0)}};
    CHECK_THROWS_AS(condition_mixture(p, prior, h("0"), bad), DomainError);
}

TEST_CASE("success probability") {
    CHECK(success_probability(0.5, SuccessMethod::ExactSum) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(success_probability(0.5, SuccessMethod::Asymptotic) ==
          doctest::Approx(std::sqrt(4.0 / std::numbers::pi) * 0.875).epsilon(1e-14));
    CHECK(success_probability(0.5, SuccessMethod::Asymptotic) == doctest::Approx(0.98733).epsilon(1e-5));
    const double j10 = 20.0 / std::numbers::pi;
    CHECK(success_probability(j10, SuccessMethod::Asymptotic) == doctest::Approx(0.31).epsilon(0.02));
    CHECK(success_probability(j10, SuccessMethod::ClosedBinomial) == doctest::Approx(0.31).epsilon(0.02));
    CHECK_THROWS_AS(success_probability(j10, SuccessMethod::ExactSum), InvalidIndex);
    CHECK_THROWS_AS(success_probability(0.0, SuccessMethod::Asymptotic), DomainError);

    double prev = INFINITY;
    for (int two_j = 2; two_j <= 12; ++two_j) {
        const double j = 0.5 * two_j;
        const double gap = std::abs(success_probability(j, SuccessMethod::ClosedBinomial) -
                                    success_probability(j, SuccessMethod::ExactSum));
        CHECK(gap < prev);
        prev = gap;
    }
    for (double j : {30.0, 35.5, 40.0}) {
        CHECK(std::abs(success_probability(j, SuccessMethod::ClosedBinomial) -
                       success_probability(j, SuccessMethod::ExactSum)) < 1e-12);
    }

    CHECK(success_probability_from_db(10.0) == doctest::Approx(0.313123).epsilon(1e-5));
    CHECK(success_probability_from_db(20.0) == doctest::Approx(0.0999018).epsilon(1e-6));
    CHECK(success_probability_from_db(0.0) == doctest::Approx(1.0 - std::numbers::pi / 32.0).epsilon(1e-15));

    CHECK(iterated_scheme_probability(0.5) == 1.0);
    CHECK(iterated_scheme_probability(20.0) == std::ldexp(1.0, -39));
    CHECK(iterated_scheme_probability(j10) == doctest::Approx(3e-4).epsilon(0.15));
}
