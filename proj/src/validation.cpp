#include "gkp/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gkp/error_metrics.hpp"
#include "gkp/errors.hpp"
#include "gkp/faraday.hpp"
#include "gkp/grid.hpp"
#include "gkp/kernels.hpp"
#include "gkp/measurement.hpp"
#include "gkp/states.hpp"

namespace gkp::validation {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

Check make(std::string suite, std::string name, double value, double tol, std::string note = {}) {
    return {std::move(suite), std::move(name), value, tol, value <= tol, std::move(note)};
}

int cap_two_j(const Options& o, int fallback) {
    if (o.max_j > 0.0) {
        return std::min(fallback, static_cast<int>(std::floor(2.0 * o.max_j + 1e-9)));
    }
    return fallback;
}

std::vector<Check> dmatrix(const Options& o) {
    double cross = 0.0;
    for (int tj = 0; tj <= cap_two_j(o, 100); ++tj) {
        const TotalSpin j(tj);
        for (int a = 0; a <= tj; ++a) {
            for (int b = 0; b <= tj; ++b) {
                const double e = wigner_d(j, j.index(a), j.index(b), DMethod::ExplicitSum);
                const double q = wigner_d(j, j.index(a), j.index(b), DMethod::Jacobi);
                cross = std::max(cross, std::abs(e - q));
            }
        }
    }
    double ortho = 0.0;
    for (int tj = 0; tj <= cap_two_j(o, 60); ++tj) {
        const TotalSpin j(tj);
        std::vector<std::vector<double>> cols;
        for (int x = 0; x <= tj; ++x) {
            cols.push_back(d_column(j, j.index(x)));
        }
        for (int x = 0; x <= tj; ++x) {
            for (int y = 0; y <= tj; ++y) {
                double s = 0.0;
                for (int m = 0; m <= tj; ++m) {
                    s += cols[x][m] * cols[y][m];
                }
                ortho = std::max(ortho, std::abs(s - (x == y ? 1.0 : 0.0)));
            }
        }
    }
    return {make("dmatrix", "explicit_vs_jacobi", cross, 1e-10),
            make("dmatrix", "orthonormality", ortho, 1e-10)};
}

std::vector<Check> completeness(const Options& o) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> r_dist(-0.5, 2.0);
    std::uniform_real_distribution<double> g_dist(0.2, 3.0);
    double worst = 0.0;
    double route = 0.0;
    for (int tj = 1; tj <= cap_two_j(o, 40); ++tj) {
        const TotalSpin j(tj);
        std::vector<EncodingParams> settings{EncodingParams::symmetric_for(j)};
        for (int k = 0; k < 2; ++k) {
            const double r = r_dist(rng);
            settings.push_back({j, r, g_dist(rng)});
        }
        for (const auto& p : settings) {
            worst = std::max(worst, std::abs(outcome_distribution(p).total() - 1.0));
        }
        const auto prior = SpinPrior::coherent(j);
        for (const auto x : j.indices()) {
            const double a = outcome_probability(settings[1], x);
            const double b = outcome_probability(settings[1], prior, x, ProbabilityRoute::Overlap);
            route = std::max(route, std::abs(a - b));
        }
    }
    return {make("completeness", "sum_of_probabilities", worst, 1e-9),
            make("completeness", "double_sum_vs_overlap", route, 1e-10)};
}

std::vector<Check> fourier(const Options& o) {
    std::vector<Check> out;
    for (int tj : {1, 2, 4, 8, 9, 16}) {
        if (tj > cap_two_j(o, 16)) {
            continue;
        }
        const TotalSpin j(tj);
        const auto params = EncodingParams::symmetric_for(j);
        std::vector<HalfInt> xs{HalfInt::from_twice(tj), HalfInt::from_twice(-tj)};
        if (j.is_integer()) {
            xs.push_back(HalfInt::from_int(0));
        }
        for (const auto x : xs) {
            const auto comb = conditional_position_state(params, x);
            const auto grid = default_grid(comb);
            const auto pgrid = momentum_grid(params);
            const auto numeric = fourier_numeric(evaluate(comb, grid), grid, Quadrature::Position, pgrid);
            const auto closed = conditional_momentum_samples(params, x, pgrid, MomentumForm::Product);
            out.push_back(make("fourier", "l2_J" + j.as_half_int().str() + "_x" + x.str(),
                               l2_distance(numeric, closed, pgrid.step), 1e-6));
        }
    }
    return out;
}

std::vector<Check> asymptotic(const Options& o) {
    double worst = 0.0;
    double closed_gap = 0.0;
    for (int tj = 1; tj <= cap_two_j(o, 200); ++tj) {
        const double j = 0.5 * tj;
        const double exact = success_probability(j, SuccessMethod::ExactSum);
        worst = std::max(worst, std::abs(success_probability(j, SuccessMethod::Asymptotic) / exact - 1.0));
        if (tj >= 20) {
            closed_gap = std::max(closed_gap, std::abs(success_probability(j, SuccessMethod::ClosedBinomial) - exact));
        }
    }
    return {make("asymptotic", "max_relative_error", worst, 0.013),
            make("asymptotic", "closed_binomial_gap_J_ge_10", closed_gap, 1e-9)};
}

std::vector<Check> zeta(const Options& o) {
    double worst = 0.0;
    double norm = 0.0;
    for (int tj = 1; tj <= cap_two_j(o, 60); ++tj) {
        const TotalSpin j(tj);
        const double closed = momentum_spike_variance(j.value(), kSqrtPi);
        worst = std::max(worst, std::abs(peak_variance_oracle(j, kSqrtPi) / closed - 1.0));
        norm = std::max(norm, std::abs(peak_normalization_oracle(j, kSqrtPi) - 1.0));
    }
    const double j1 = momentum_spike_variance(1.0, kSqrtPi);
    const double analytic = 2.0 * (std::numbers::pi * std::numbers::pi / 6.0 - 1.0) / std::numbers::pi;
    return {make("zeta", "closed_vs_quadrature", worst, 1e-8),
            make("zeta", "peak_normalization", norm, 1e-10),
            make("zeta", "J1_analytic", std::abs(j1 - analytic), 1e-12)};
}

std::vector<Check> faraday(const Options&) {
    const auto plan = plan_faraday(1e4, 500.0, kSqrtPi, 0.1);
    const double meter = meter_distinguishability(kSqrtPi, 0.1, 1.0).overlap;
    const auto a = squeezed_state(0.5 * std::log(0.5 / 0.1), 0.0);
    const auto b = squeezed_state(0.5 * std::log(0.5 / 0.1), kSqrtPi);
    const double via_overlap = std::norm(overlap(a, b));
    return {make("faraday", "eta_near_25", std::abs(plan.eta - 25.0), 0.5, "eta = " + std::to_string(plan.eta)),
            make("faraday", "interaction_photons_equal_N", std::abs(plan.interaction_time_ratio - 1.0), 1e-12),
            make("faraday", "meter_vs_overlap", std::abs(meter - via_overlap), 1e-12)};
}

double spacing_error(const GaussianComb& c) {
    double worst = 0.0;
    const auto comps = c.components();
    for (std::size_t i = 1; i < comps.size(); ++i) {
        worst = std::max(worst, std::abs(comps[i].center - comps[i - 1].center - kSqrtPi));
    }
    return worst;
}

std::vector<Check> figures(const Options& o) {
    std::vector<Check> out;
    for (int tj : {8, 9}) {
        const TotalSpin j(tj);
        const auto params = EncodingParams::symmetric_for(j);
        const auto plus = conditional_position_state(params, HalfInt::from_twice(tj));
        const auto minus = conditional_position_state(params, HalfInt::from_twice(-tj));
        const std::string tag = "J" + j.as_half_int().str();
        out.push_back(make("figures", tag + "_spike_count",
                           std::abs(static_cast<double>(plus.size()) - (tj + 1)), 0.0));
        out.push_back(make("figures", tag + "_spacing", spacing_error(plus), 1e-12));
        double alternation = 0.0;
        const auto mc = minus.components();
        for (std::size_t i = 1; i < mc.size(); ++i) {
            if (mc[i].amplitude.real() * mc[i - 1].amplitude.real() >= 0.0) {
                alternation += 1.0;
            }
        }
        out.push_back(make("figures", tag + "_minus_alternates", alternation, 0.0));
        const double db = error_profile(params).db;
        const double expected = tj == 8 ? 8.0 : 8.5;
        out.push_back(make("figures", tag + "_db", std::abs(db - expected), 0.05,
                           "dB = " + std::to_string(db)));
    }
    const int big = cap_two_j(o, 100);
    const auto dist = outcome_distribution(EncodingParams::symmetric_for(TotalSpin(big)));
    const auto [first, second] = dist.top_two();
    const bool endpoints = std::abs(first.twice()) == big && std::abs(second.twice()) == big &&
                           first != second;
    out.push_back(make("figures", "J" + TotalSpin(big).as_half_int().str() + "_endpoint_argmax",
                       endpoints ? 0.0 : 1.0, 0.0));
    return out;
}

std::vector<Check> convergence(const Options& o) {
    std::vector<Check> out;
    double prev = 0.0;
    double violations = 0.0;
    double f4 = 0.0;
    std::string values;
    for (int tj : {4, 8, 16, 32, 64}) {
        if (tj > cap_two_j(o, 64)) {
            continue;
        }
        const TotalSpin j(tj);
        const auto params = EncodingParams::symmetric_for(j);
        const double f = fidelity(resource_state(params, Parity::Plus), matched_target(j, Parity::Plus));
        if (tj == 8) {
            f4 = f;
        }
        if (f <= prev) {
            violations += 1.0;
        }
        prev = f;
        values += (values.empty() ? "" : ", ") + std::to_string(f);
    }
    out.push_back(make("convergence", "fidelity_strictly_increasing", violations, 0.0, values));
    if (f4 > 0.0) {
        out.push_back(make("convergence", "fidelity_J4_above_0.9", f4 > 0.9 ? 0.0 : 0.9 - f4, 0.0));
    }
    return out;
}

std::vector<Check> requirements(const Options&) {
    std::vector<Check> out;
    double j_err = 0.0;
    double p_err = 0.0;
    for (double db : {5.0, 10.0, 15.0, 20.0}) {
        const auto row = requirement_for_db(db);
        j_err = std::max(j_err, std::abs(row.j_required - 2.0 / std::numbers::pi * std::pow(10.0, db / 10.0)));
        p_err = std::max(p_err, std::abs(row.p_success -
                                         success_probability(row.j_required, SuccessMethod::Asymptotic)));
    }
    out.push_back(make("requirements", "j_formula", j_err, 1e-12));
    out.push_back(make("requirements", "p_success_formula", p_err, 1e-12));
    const auto ten = requirement_for_db(10.0);
    out.push_back(make("requirements", "10dB_J_in_6.3_6.5",
                       std::max({0.0, 6.3 - ten.j_required, ten.j_required - 6.5}), 0.0,
                       "J = " + std::to_string(ten.j_required)));
    out.push_back(make("requirements", "10dB_Ps_in_0.30_0.32",
                       std::max({0.0, 0.30 - ten.p_success, ten.p_success - 0.32}), 0.0,
                       "Ps = " + std::to_string(ten.p_success)));
    const double j20 = j_from_db(20.0);
    out.push_back(make("requirements", "20dB_J_vs_quoted_63.5", std::abs(j20 - 63.5), 0.5,
                       "formula gives J = " + std::to_string(j20) +
                           "; the quoted text value 63.5 is accepted within +-0.5"));
    return out;
}

std::vector<Check> simd(const Options&) {
    if (!kernels::avx2_available()) {
        return {make("kernels", "avx2_unavailable", 0.0, 0.0, "scalar backend only")};
    }
    const TotalSpin j(16);
    const auto params = EncodingParams::symmetric_for(j);
    const auto comb = target_momentum_approx(Parity::Minus, 0.4, 0.5);
    const auto grid = default_grid(comb);
    const auto a = evaluate(comb, grid, kernels::Backend::Scalar);
    const auto b = evaluate(comb, grid, kernels::Backend::Avx2);
    double eval = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        eval = std::max(eval, std::abs(a[i] - b[i]));
    }
    const auto pos = conditional_position_state(params, HalfInt::from_twice(16));
    const auto pg = default_grid(pos);
    const auto samples = evaluate(pos, pg);
    const auto mg = momentum_grid(params);
    const auto fa = fourier_numeric(samples, pg, Quadrature::Position, mg, kernels::Backend::Scalar);
    const auto fb = fourier_numeric(samples, pg, Quadrature::Position, mg, kernels::Backend::Avx2);
    return {make("kernels", "comb_eval_scalar_vs_avx2", eval, 1e-12),
            make("kernels", "fourier_sum_scalar_vs_avx2", l2_distance(fa, fb, mg.step), 1e-12)};
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"dmatrix", "completeness", "fourier",     "asymptotic",
                                                "zeta",    "faraday",      "figures",     "convergence",
                                                "requirements", "kernels"};
    return names;
}

std::vector<Check> run_suite(const std::string& suite, const Options& options) {
    if (suite == "dmatrix") return dmatrix(options);
    if (suite == "completeness") return completeness(options);
    if (suite == "fourier") return fourier(options);
    if (suite == "asymptotic") return asymptotic(options);
    if (suite == "zeta") return zeta(options);
    if (suite == "faraday") return faraday(options);
    if (suite == "figures") return figures(options);
    if (suite == "convergence") return convergence(options);
    if (suite == "requirements") return requirements(options);
    if (suite == "kernels") return simd(options);
    throw DomainError("unknown validation suite '" + suite + "'");
}

std::vector<Check> run_all(const Options& options) {
    std::vector<Check> all;
    for (const auto& s : suite_names()) {
        auto part = run_suite(s, options);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

bool all_passed(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::ordered_json report(const std::vector<Check>& checks) {
    nlohmann::ordered_json out;
    out["passed"] = all_passed(checks);
    out["backend"] = std::string(kernels::to_string(kernels::active_backend()));
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["suite"] = c.suite;
        e["name"] = c.name;
        e["value"] = c.value;
        e["tolerance"] = c.tolerance;
        e["passed"] = c.passed;
        if (!c.note.empty()) {
            e["note"] = c.note;
        }
        arr.push_back(std::move(e));
    }
    out["checks"] = std::move(arr);
    return out;
}

}  // namespace gkp::validation
