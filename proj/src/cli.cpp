#include "gkp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gkp/error_metrics.hpp"
#include "gkp/errors.hpp"
#include "gkp/faraday.hpp"
#include "gkp/grid.hpp"
#include "gkp/io.hpp"
#include "gkp/measurement.hpp"
#include "gkp/states.hpp"
#include "gkp/validation.hpp"

namespace gkp::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const {
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = start + static_cast<double>(k) * step;
        }
        return v;
    }
};

Range parse_range(const std::string& text) {
    Range r;
    char c1 = 0;
    char c2 = 0;
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    if (!(is >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':' || !is.eof()) {
        throw UsageError("range must look like start:stop:step, got '" + text + "'");
    }
    if (!(r.step > 0.0) || r.stop < r.start || (r.stop - r.start) / r.step > 1e6) {
        throw UsageError("range '" + text + "' needs step > 0 and stop >= start");
    }
    return r;
}

TotalSpin parse_spin(const std::string& text) {
    const HalfInt h = HalfInt::parse(text);
    if (h.twice() < 0) {
        throw UsageError("J must be non-negative");
    }
    return TotalSpin(h.twice());
}

HalfInt parse_outcome(const std::string& text, TotalSpin j) {
    HalfInt x;
    if (text == "+J" || text == "J") {
        x = j.as_half_int();
    } else if (text == "-J") {
        x = -j.as_half_int();
    } else {
        x = HalfInt::parse(text);
    }
    if (!j.admits(x)) {
        throw UsageError("outcome " + text + " is not valid for J = " + j.as_half_int().str());
    }
    return x;
}

// Compact number for file names: 6 significant digits.
std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string outcome_tag(HalfInt x) {
    return x.twice() > 0 ? "+" + x.str() : x.str();
}

template <class F>
auto parallel_map(const std::vector<double>& in, F f) {
    using R = decltype(f(0.0));
    std::vector<R> out(in.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < in.size(); i += workers) {
                out[i] = f(in[i]);
            }
        }));
    }
    for (auto& j : jobs) {
        j.get();
    }
    return out;
}

struct Output {
    std::string dir;
    bool to_stdout = false;
    std::ostream* out = nullptr;

    void emit(const std::string& name, const std::string& text) const {
        if (to_stdout) {
            *out << text;
            return;
        }
        const auto path = (std::filesystem::path(dir) / name).string();
        io::write_file(path, text);
        *out << "wrote " << path << '\n';
    }
};

// Flat key = value file. Keys are long option names; entries only apply when
// the option is absent from the command line.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    auto present = [&](const std::string& key) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
        });
    };
    std::vector<std::string> extra;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config" || present(key)) {
            continue;
        }
        if (value == "true") {
            extra.push_back("--" + key);
        } else if (value != "false") {
            extra.push_back("--" + key);
            extra.push_back(value);
        }
    }
    std::vector<std::string> merged = args;
    merged.insert(merged.end(), extra.begin(), extra.end());
    return merged;
}

// ---------------------------------------------------------------- wavefunction

struct WavefunctionOpts {
    std::string j;
    std::string x = "+J";
    std::string quadrature = "both";
    std::string state = "conditional";
    std::string target;
    std::optional<double> db;
    std::optional<double> sigma;
    std::optional<double> q0;
    std::optional<double> r;
    std::optional<double> g;
    std::optional<double> grid_min, grid_max, grid_step;
    std::optional<double> pgrid_min, pgrid_max, pgrid_step;
    bool approx = false;
    std::string format = "csv";
    std::string prefix;
};

QuadratureGrid override_grid(QuadratureGrid g, std::optional<double> lo, std::optional<double> hi,
                             std::optional<double> step) {
    if (lo) g.min = *lo;
    if (hi) g.max = *hi;
    if (step) g.step = *step;
    validate_grid(g);
    return g;
}

void run_wavefunction(const WavefunctionOpts& o, const Output& output) {
    const bool want_q = o.quadrature == "both" || o.quadrature == "position";
    const bool want_p = o.quadrature == "both" || o.quadrature == "momentum";
    std::string prefix = o.prefix;

    GaussianComb position;
    std::optional<GaussianComb> momentum_comb;
    std::function<std::vector<complex>(const QuadratureGrid&)> momentum_closed;
    QuadratureGrid pgrid;

    if (!o.target.empty()) {
        if (o.db.has_value() && !o.j.empty()) {
            throw UsageError("a target takes --j or --db, not both");
        }
        if (!o.db && o.j.empty() && !o.sigma) {
            throw UsageError("a target needs --j, --db or --sigma");
        }
        const Parity parity = o.target == "plus" ? Parity::Plus : Parity::Minus;
        double sigma = 0.0;
        double q0 = 0.0;
        if (o.db) {
            sigma = std::pow(10.0, -*o.db / 20.0);
        } else if (!o.j.empty()) {
            const TotalSpin j = parse_spin(o.j);
            if (j.two_j() == 0) {
                throw UsageError("J must be positive for a target");
            }
            sigma = std::sqrt(2.0 / (std::numbers::pi * j.value()));
            q0 = j.is_integer() ? 0.0 : std::sqrt(std::numbers::pi) / 2.0;
        }
        if (o.sigma) sigma = *o.sigma;
        if (o.q0) q0 = *o.q0;
        position = target_state(parity, sigma, q0);
        momentum_comb = o.approx ? target_momentum_approx(parity, sigma, q0) : position.fourier();
        pgrid = default_grid(*momentum_comb);
        if (prefix.empty()) {
            std::string tag = o.sigma ? "sigma" + short_number(*o.sigma)
                              : o.db  ? short_number(*o.db) + "dB"
                                      : "J" + parse_spin(o.j).as_half_int().str();
            std::replace(tag.begin(), tag.end(), '/', '_');
            prefix = "target_" + o.target + "_" + tag;
        }
    } else {
        if (o.j.empty() || o.db) {
            throw UsageError("a conditional state needs --j (and no --db)");
        }
        const TotalSpin j = parse_spin(o.j);
        EncodingParams params = j.two_j() > 0 ? EncodingParams::symmetric_for(j)
                                              : EncodingParams{j, 0.0, std::sqrt(std::numbers::pi)};
        if (o.r) params.r = *o.r;
        if (o.g) params.g = *o.g;
        params.validate();
        HalfInt x;
        if (o.state == "conditional") {
            x = parse_outcome(o.x, j);
            position = conditional_position_state(params, x);
            if (o.approx) {
                const bool edge = std::abs(x.twice()) == j.two_j();
                if (edge) {
                    const Parity parity = x.twice() > 0 ? Parity::Plus : Parity::Minus;
                    position = approx_edge_position(params, parity);
                    momentum_comb = approx_edge_momentum(params, parity);
                } else if (x.twice() == 0) {
                    position = approx_x0_position(params);
                    momentum_comb = approx_x0_momentum(params);
                } else {
                    throw UsageError("approximate forms exist only for x = +J, -J, 0");
                }
            } else {
                const bool closed = std::abs(x.twice()) == j.two_j() || (x.twice() == 0 && j.is_integer());
                momentum_closed = [params, x, closed](const QuadratureGrid& grid) {
                    return conditional_momentum_samples(params, x, grid,
                                                        closed ? MomentumForm::Product : MomentumForm::Sum);
                };
            }
        } else if (o.state == "resource") {
            x = parse_outcome(o.x, j);
            if (std::abs(x.twice()) != j.two_j()) {
                throw UsageError("resource states exist only for x = +J or -J");
            }
            position = resource_state(params, x.twice() > 0 ? Parity::Plus : Parity::Minus);
            momentum_comb = position.fourier();
        } else if (o.state == "logical0") {
            x = HalfInt::from_int(0);
            position = x0_logical_state(params);
            momentum_comb = position.fourier();
        } else {
            throw UsageError("--state must be conditional, resource or logical0");
        }
        pgrid = momentum_grid(params);
        if (prefix.empty()) {
            std::string tag = j.as_half_int().str();
            std::replace(tag.begin(), tag.end(), '/', '_');
            std::string xt = outcome_tag(x);
            std::replace(xt.begin(), xt.end(), '/', '_');
            prefix = o.state + "_J" + tag + "_x" + xt + (o.approx ? "_approx" : "");
        }
    }

    if (o.format == "json") {
        ordered_json doc;
        if (want_q) doc["position"] = io::comb_to_json(position);
        if (want_p) doc["momentum"] = io::comb_to_json(momentum_comb ? *momentum_comb : position.fourier());
        output.emit(prefix + ".json", doc.dump(2) + "\n");
        return;
    }
    if (want_q) {
        const auto grid = override_grid(default_grid(position), o.grid_min, o.grid_max, o.grid_step);
        output.emit(prefix + "_position.csv", io::samples_table(grid, evaluate(position, grid)).str());
    }
    if (want_p) {
        if (momentum_comb) {
            pgrid = default_grid(*momentum_comb);
        }
        const auto grid = override_grid(pgrid, o.pgrid_min, o.pgrid_max, o.pgrid_step);
        const auto samples = momentum_closed ? momentum_closed(grid) : evaluate(*momentum_comb, grid);
        output.emit(prefix + "_momentum.csv", io::samples_table(grid, samples).str());
    }
}

// ----------------------------------------------------------------- probability

struct ProbabilityOpts {
    std::string j;
    std::string sweep_db;
    std::string sweep_j;
    std::optional<double> r;
    std::optional<double> g;
    std::string prefix;
};

double exact_or_nan(double j) {
    const double twice = 2.0 * j;
    if (std::abs(twice - std::round(twice)) > 1e-9 || j <= 0.0) {
        return std::nan("");
    }
    return success_probability(std::round(twice) / 2.0, SuccessMethod::ExactSum);
}

std::vector<double> sweep_row(double key, double j) {
    return {key, exact_or_nan(j), success_probability(j, SuccessMethod::ClosedBinomial),
            success_probability(j, SuccessMethod::Asymptotic), iterated_scheme_probability(j)};
}

void run_probability(const ProbabilityOpts& o, const Output& output) {
    const int modes = !o.j.empty() + !o.sweep_db.empty() + !o.sweep_j.empty();
    if (modes != 1) {
        throw UsageError("probability needs exactly one of --j, --sweep-db, --sweep-j");
    }
    if (!o.j.empty()) {
        const TotalSpin j = parse_spin(o.j);
        if (j.two_j() == 0) {
            throw UsageError("J must be positive");
        }
        EncodingParams params = EncodingParams::symmetric_for(j);
        if (o.r) params.r = *o.r;
        if (o.g) params.g = *o.g;
        const auto dist = outcome_distribution(params);
        io::CsvTable t({"x", "probability"});
        for (std::size_t i = 0; i < dist.probs.size(); ++i) {
            t.add_row(std::vector<double>{dist.outcomes[i].value(), dist.probs[i]});
        }
        std::string tag = j.as_half_int().str();
        std::replace(tag.begin(), tag.end(), '/', '_');
        output.emit((o.prefix.empty() ? "distribution_J" + tag : o.prefix) + ".csv", t.str());
        return;
    }
    if (!o.sweep_db.empty()) {
        const auto dbs = parse_range(o.sweep_db).values();
        const auto rows = parallel_map(dbs, [](double db) { return sweep_row(db, j_from_db(db)); });
        io::CsvTable t({"db", "p_exact", "p_closed", "p_asymptotic", "p_iterated"});
        for (const auto& r : rows) t.add_row(r);
        output.emit((o.prefix.empty() ? "sweep_db" : o.prefix) + ".csv", t.str());
        return;
    }
    const auto range = parse_range(o.sweep_j);
    if (!(range.start > 0.0)) {
        throw UsageError("J sweep must start above 0");
    }
    const auto js = range.values();
    const auto rows = parallel_map(js, [](double j) { return sweep_row(j, j); });
    io::CsvTable t({"j", "p_exact", "p_closed", "p_asymptotic", "p_iterated"});
    for (const auto& r : rows) t.add_row(r);
    output.emit((o.prefix.empty() ? "sweep_j" : o.prefix) + ".csv", t.str());
}

// ---------------------------------------------------------------- requirements

struct RequirementsOpts {
    std::optional<double> db;
    std::string sweep_db;
    bool faraday = false;
    std::optional<double> n_photons;
    std::optional<double> detuning;
    std::optional<double> meter_variance;
    std::optional<double> photon_flux;
    std::optional<double> g;
    std::string prefix;
};

void run_requirements(const RequirementsOpts& o, const Output& output) {
    if (o.db.has_value() == !o.sweep_db.empty()) {
        throw UsageError("requirements needs exactly one of --db or --sweep-db");
    }
    const std::vector<double> dbs = o.db ? std::vector<double>{*o.db} : parse_range(o.sweep_db).values();
    const auto rows = parallel_map(dbs, [](double db) { return requirement_for_db(db); });
    io::CsvTable t({"db", "j_required", "r", "p_success"});
    for (const auto& r : rows) {
        t.add_row(std::vector<double>{r.db, r.j_required, r.r, r.p_success});
    }
    const std::string prefix = o.prefix.empty() ? "requirements" : o.prefix;
    output.emit(prefix + ".csv", t.str());

    if (!o.faraday) {
        return;
    }
    if (!o.n_photons || !o.detuning) {
        throw UsageError("--faraday needs --n-photons and --detuning");
    }
    if (!o.db) {
        throw UsageError("--faraday needs a single --db");
    }
    const double g = o.g.value_or(std::sqrt(std::numbers::pi));
    // Default meter: one spike of the requested state, |psi|^2 variance e^{-2r}/2.
    const double meter = o.meter_variance.value_or(0.5 * std::exp(-2.0 * r_from_db(*o.db)));
    const auto plan = plan_faraday(*o.n_photons, *o.detuning, g, meter, o.photon_flux);
    ordered_json doc;
    doc["g"] = plan.g;
    doc["chi"] = plan.chi;
    doc["eta"] = plan.eta;
    doc["interaction_time_ratio"] = plan.interaction_time_ratio;
    doc["projectivity_fom"] = plan.projectivity_fom;
    doc["neighbor_overlap"] = plan.neighbor_overlap;
    doc["interaction_photons"] = plan.interaction_photons;
    doc["meter_variance"] = meter;
    doc["projective"] = plan.projective;
    if (plan.interaction_time) {
        doc["interaction_time"] = *plan.interaction_time;
    }
    output.emit(prefix + "_faraday.json", doc.dump(2) + "\n");
}

// -------------------------------------------------------------------- validate

struct ValidateOpts {
    std::vector<std::string> suites;
    double max_j = 0.0;
    std::string report;
};

int run_validate(const ValidateOpts& o, const Output& output, std::ostream& out) {
    validation::Options opts;
    opts.max_j = o.max_j;
    std::vector<validation::Check> checks;
    if (o.suites.empty()) {
        checks = validation::run_all(opts);
    } else {
        for (const auto& s : o.suites) {
            auto part = validation::run_suite(s, opts);
            checks.insert(checks.end(), part.begin(), part.end());
        }
    }
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.suite << '/' << c.name << " value=" << io::format_double(c.value)
            << " tol=" << io::format_double(c.tolerance);
        if (!c.note.empty()) {
            out << "  (" << c.note << ')';
        }
        out << '\n';
    }
    const std::string text = validation::report(checks).dump(2) + "\n";
    if (!o.report.empty()) {
        io::write_file(o.report, text);
        out << "wrote " << o.report << '\n';
    } else if (output.to_stdout) {
        out << text;
    }
    return validation::all_passed(checks) ? kOk : kValidationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }

    CLI::App app{"Heralded GKP state generation from a spin ensemble and squeezed light"};
    app.name("gkpsim");
    app.require_subcommand(1);
    app.fallthrough();

    std::string config;
    std::string output_dir;
    bool to_stdout = false;
    app.add_option("--config", config, "flat key = value file; command-line flags take precedence");
    app.add_option("--output-dir", output_dir, "directory for output files (default $GKPSIM_OUTPUT_DIR or .)");
    app.add_flag("--stdout", to_stdout, "print results instead of writing files");

    WavefunctionOpts wf;
    auto* wcmd = app.add_subcommand("wavefunction", "sample conditional, resource or target wave functions");
    wcmd->add_option("--j", wf.j, "total spin J, e.g. 4 or 9/2");
    wcmd->add_option("--x", wf.x, "measurement outcome: +J, -J or a half-integer")->capture_default_str();
    wcmd->add_option("--quadrature", wf.quadrature, "position, momentum or both")
        ->check(CLI::IsMember({"position", "momentum", "both"}))
        ->capture_default_str();
    wcmd->add_option("--state", wf.state, "conditional, resource or logical0")
        ->check(CLI::IsMember({"conditional", "resource", "logical0"}))
        ->capture_default_str();
    wcmd->add_option("--target", wf.target, "emit a target state instead: plus or minus")
        ->check(CLI::IsMember({"plus", "minus"}));
    wcmd->add_option("--db", wf.db, "target squeezing in dB");
    wcmd->add_option("--sigma", wf.sigma, "target spike width (overrides --db/--j)");
    wcmd->add_option("--q0", wf.q0, "target envelope offset");
    wcmd->add_option("--r", wf.r, "optical squeezing r (default: symmetric encoding)");
    wcmd->add_option("--g", wf.g, "coupling g (default: sqrt(pi))");
    wcmd->add_option("--grid-min", wf.grid_min);
    wcmd->add_option("--grid-max", wf.grid_max);
    wcmd->add_option("--grid-step", wf.grid_step);
    wcmd->add_option("--pgrid-min", wf.pgrid_min);
    wcmd->add_option("--pgrid-max", wf.pgrid_max);
    wcmd->add_option("--pgrid-step", wf.pgrid_step);
    wcmd->add_flag("--approx", wf.approx, "use the Gaussian-envelope comb approximations");
    wcmd->add_option("--format", wf.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    wcmd->add_option("--prefix", wf.prefix, "output file name stem");

    ProbabilityOpts pr;
    auto* pcmd = app.add_subcommand("probability", "outcome distribution or success-probability sweeps");
    pcmd->add_option("--j", pr.j, "outcome distribution for this J");
    pcmd->add_option("--sweep-db", pr.sweep_db, "start:stop:step in dB");
    pcmd->add_option("--sweep-j", pr.sweep_j, "start:stop:step in J");
    pcmd->add_option("--r", pr.r);
    pcmd->add_option("--g", pr.g);
    pcmd->add_option("--prefix", pr.prefix);

    RequirementsOpts rq;
    auto* rcmd = app.add_subcommand("requirements", "spin size, squeezing and Faraday parameters for a target dB");
    rcmd->add_option("--db", rq.db);
    rcmd->add_option("--sweep-db", rq.sweep_db, "start:stop:step in dB");
    rcmd->add_flag("--faraday", rq.faraday, "also emit the Faraday planner report");
    rcmd->add_option("--n-photons", rq.n_photons);
    rcmd->add_option("--detuning", rq.detuning, "detuning in units of the linewidth");
    rcmd->add_option("--meter-variance", rq.meter_variance, "meter |psi|^2 variance (default e^{-2r}/2)");
    rcmd->add_option("--photon-flux", rq.photon_flux, "photons per second");
    rcmd->add_option("--g", rq.g, "target coupling (default sqrt(pi))");
    rcmd->add_option("--prefix", rq.prefix);

    ValidateOpts va;
    auto* vcmd = app.add_subcommand("validate", "run the self-check suites");
    vcmd->add_option("--suite", va.suites, "suite name (repeatable)")
        ->check(CLI::IsMember(validation::suite_names()));
    vcmd->add_option("--max-j", va.max_j, "largest J visited by the suites");
    vcmd->add_option("--report", va.report, "path of the JSON report");

    try {
        args = apply_config(args);
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "gkpsim: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "gkpsim: " << e.what() << '\n';
        return kUsage;
    }

    Output output;
    output.out = &out;
    output.to_stdout = to_stdout;
    if (!output_dir.empty()) {
        output.dir = output_dir;
    } else if (const char* env = std::getenv("GKPSIM_OUTPUT_DIR"); env && *env) {
        output.dir = env;
    } else {
        output.dir = ".";
    }

    try {
        if (*wcmd) {
            run_wavefunction(wf, output);
        } else if (*pcmd) {
            run_probability(pr, output);
        } else if (*rcmd) {
            run_requirements(rq, output);
        } else if (*vcmd) {
            return run_validate(va, output, out);
        }
    } catch (const Error& e) {
        err << "gkpsim: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "gkpsim: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

}  // namespace gkp::cli
