// Command-line front end: fit, sample, density, gof, simulate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mwright/csv.hpp"
#include "mwright/distribution.hpp"
#include "mwright/errors.hpp"
#include "mwright/estimate.hpp"
#include "mwright/format.hpp"
#include "mwright/report.hpp"
#include "mwright/sampling.hpp"
#include "mwright/sim_harness.hpp"
#include "mwright/stats_util.hpp"

namespace {

using namespace mwright;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitEstimation = 3;

// writes to --output when given, else stdout
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw InputError("cannot open '" + path + "' for writing");
            }
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct Common {
    std::string format;
    std::string output;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double level = 0.95;
};

struct ParamFlags {
    std::string variant = "one-sided";
    std::optional<double> alpha;
    std::optional<double> rho;
    std::optional<double> mu;
};

Variant variant_flag(const std::string& s) {
    try {
        return parse_variant(s);
    } catch (const DomainError& e) {
        throw InputError(std::string("--variant: ") + e.what());
    }
}

MWrightParams params_from(const ParamFlags& f) {
    MWrightParams p;
    p.variant = variant_flag(f.variant);
    p.alpha = f.alpha.value_or(0.5);
    p.rho = f.rho.value_or(1.0);
    p.mu = f.mu.value_or(0.0);
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    return p;
}

nlohmann::json params_json(const MWrightParams& p) {
    return {{"alpha", p.alpha}, {"rho", p.rho}, {"mu", p.mu}, {"variant", std::string(to_string(p.variant))}};
}

void check_format(const std::string& format, bool text_ok) {
    if (format == "json" || format == "csv" || (text_ok && format == "text")) {
        return;
    }
    throw InputError("unsupported --format '" + format + "'");
}

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw InputError("--level must lie in (0, 1)");
    }
}

LocationRule parse_location_rule(const std::string& s) {
    if (s == "auto") {
        return LocationRule::Auto;
    }
    if (s == "mean") {
        return LocationRule::Mean;
    }
    if (s == "median") {
        return LocationRule::Median;
    }
    throw InputError("--location must be auto, mean or median");
}

std::vector<double> load_column(const std::string& path, const std::string& column) {
    return read_csv_column_file(path, column);
}

// ---- fit ----------------------------------------------------------------

struct FitFlags {
    Common common;
    std::string input;
    std::string column = "0";
    std::string variant;
    std::string location = "auto";
    std::optional<double> known_mu;
    std::size_t quantile_draws = kDefaultQuantileDraws;
};

int run_fit(const FitFlags& f) {
    check_format(f.common.format, true);
    check_level(f.common.level);
    const Variant variant = variant_flag(f.variant);
    FitOptions opts;
    opts.known_mu = f.known_mu;
    opts.location_rule = parse_location_rule(f.location);
    opts.quantile_draws = f.quantile_draws;
    const std::vector<double> data = load_column(f.input, f.column);
    Sink sink(f.common.output);
    const FitResult r = fit(data, variant, f.common.level, RngStream{f.common.seed, 0}, opts);
    if (f.common.format == "json") {
        sink.out() << fit_to_json(r, f.common.seed).dump(2) << '\n';
    } else if (f.common.format == "csv") {
        write_fit_csv(r, sink.out());
    } else {
        write_fit_text(r, sink.out());
    }
    return kExitOk;
}

// ---- sample -------------------------------------------------------------

struct SampleFlags {
    Common common;
    ParamFlags params;
    std::size_t n = 1000;
    std::uint64_t stream = 0;
};

int run_sample(const SampleFlags& f) {
    check_format(f.common.format, false);
    const MWrightParams p = params_from(f.params);
    if (f.n < 1) {
        throw InputError("--n must be >= 1");
    }
    const std::vector<double> draws = sample_mwright(p, RngStream{f.common.seed, f.stream}, f.n);
    Sink sink(f.common.output);
    if (f.common.format == "json") {
        nlohmann::json j{{"params", params_json(p)}, {"seed", f.common.seed}, {"stream", f.stream}, {"draws", draws}};
        sink.out() << j.dump(2) << '\n';
    } else {
        sink.out() << "x\n";
        for (double x : draws) {
            sink.out() << format_full(x) << '\n';
        }
    }
    return kExitOk;
}

// ---- density ------------------------------------------------------------

struct DensityFlags {
    Common common;
    ParamFlags params;
    std::string curve = "pdf";
    std::optional<double> from;
    std::optional<double> to;
    std::size_t points = 200;
};

int run_density(const DensityFlags& f) {
    check_format(f.common.format, false);
    if (f.points < 2) {
        throw InputError("--points must be >= 2");
    }
    const bool are = f.curve == "are";
    if (!are && f.curve != "pdf") {
        throw InputError("--curve must be pdf or are");
    }
    std::optional<MWrightParams> p;
    double lo = 0.0;
    double hi = 0.0;
    if (are) {
        lo = f.from.value_or(0.01);
        hi = f.to.value_or(0.99);
        if (!(lo > 0.0 && hi < 1.0)) {
            throw InputError("ARE curve range must lie inside (0, 1)");
        }
    } else {
        p = params_from(f.params);
        const double sd = std::sqrt(moment_summary(*p).variance);
        const double def_lo = p->variant == Variant::OneSided ? p->mu : p->mu - 4.0 * sd;
        lo = f.from.value_or(def_lo);
        hi = f.to.value_or(p->mu + 4.0 * sd + (p->variant == Variant::OneSided ? sd : 0.0));
    }
    if (!(hi > lo)) {
        throw InputError("--to must exceed --from");
    }
    std::vector<double> xs(f.points);
    std::vector<double> ys(f.points);
    for (std::size_t i = 0; i < f.points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(f.points - 1);
        xs[i] = (i + 1 == f.points) ? hi : lo + t * (hi - lo);
        ys[i] = are ? are_mean_median(xs[i]) : pdf(*p, xs[i]);
    }
    Sink sink(f.common.output);
    const char* xname = are ? "alpha" : "x";
    const char* yname = are ? "are" : "pdf";
    if (f.common.format == "json") {
        nlohmann::json j{{"curve", f.curve}, {xname, xs}, {yname, ys}};
        if (p) {
            j["params"] = params_json(*p);
        }
        sink.out() << j.dump(2) << '\n';
    } else {
        sink.out() << xname << ',' << yname << '\n';
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sink.out() << format_full(xs[i]) << ',' << format_full(ys[i]) << '\n';
        }
    }
    return kExitOk;
}

// ---- gof ----------------------------------------------------------------

struct GofFlags {
    Common common;
    ParamFlags params;
    std::string input;
    std::string column = "0";
    std::size_t sims = 100;
    std::size_t quantile_draws = kDefaultQuantileDraws;
};

int run_gof(const GofFlags& f) {
    check_format(f.common.format, true);
    check_level(f.common.level);
    const int given = (f.params.alpha ? 1 : 0) + (f.params.rho ? 1 : 0) + (f.params.mu ? 1 : 0);
    if (given != 0 && given != 3) {
        throw InputError("give all of --alpha, --rho, --mu or none of them (none fits the data first)");
    }
    if (f.sims < 1) {
        throw InputError("--sims must be >= 1");
    }
    std::optional<MWrightParams> fixed;
    if (given == 3) {
        fixed = params_from(f.params);
    }
    const Variant variant = variant_flag(f.params.variant);
    const std::vector<double> data = load_column(f.input, f.column);
    Sink sink(f.common.output);
    MWrightParams model;
    if (fixed) {
        model = *fixed;
    } else {
        FitOptions opts;
        opts.quantile_draws = f.quantile_draws;
        model = fit(data, variant, f.common.level, RngStream{f.common.seed, 0}, opts).params;
    }
    const double mean_p = gof_simulated(data, model, f.sims, RngStream{f.common.seed, 1}, f.common.threads);
    if (f.common.format == "json") {
        nlohmann::json j{{"params", params_json(model)}, {"sims", f.sims}, {"mean_p", mean_p}, {"seed", f.common.seed}};
        sink.out() << j.dump(2) << '\n';
    } else if (f.common.format == "csv") {
        sink.out() << "alpha,rho,mu,variant,sims,mean_p\n"
                   << format_full(model.alpha) << ',' << format_full(model.rho) << ',' << format_full(model.mu) << ','
                   << to_string(model.variant) << ',' << f.sims << ',' << format_full(mean_p) << '\n';
    } else {
        sink.out() << "model " << to_string(model.variant) << " (alpha " << format_short(model.alpha) << ", rho "
                   << format_short(model.rho) << ", mu " << format_short(model.mu) << ")\n"
                   << "mean KS p-value over " << f.sims << " simulated datasets: " << format_short(mean_p) << '\n';
    }
    return kExitOk;
}

// ---- simulate -----------------------------------------------------------

struct SimulateFlags {
    Common common;
    std::string kind;
    std::string preset;
    std::size_t replicates = 1000;
    std::vector<std::size_t> sizes;
    bool bootstrap = false;
    bool no_bootstrap = false;
    bool bootstrap_all_n = false;
    std::size_t bootstrap_b = kDefaultBootstrapResamples;
    std::size_t quantile_draws = kDefaultQuantileDraws;
    std::string location = "mean";
};

int run_simulate(const SimulateFlags& f) {
    check_format(f.common.format, false);
    check_level(f.common.level);
    if (f.kind != "bias" && f.kind != "coverage") {
        throw InputError("simulate needs 'bias' or 'coverage'");
    }
    SimPlan plan;
    try {
        plan = preset_plan(f.preset);
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    plan.replicates = f.replicates;
    plan.seed = f.common.seed;
    plan.threads = f.common.threads;
    plan.level = f.common.level;
    plan.bootstrap_b = f.bootstrap_b;
    plan.bootstrap_all_n = f.bootstrap_all_n;
    plan.quantile_draws = f.quantile_draws;
    plan.symmetric_location = parse_location_rule(f.location);
    if (!f.sizes.empty()) {
        plan.sample_sizes = f.sizes;
    }
    try {
        plan.validate();
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    if (plan.bootstrap_b < 100) {
        throw InputError("--bootstrap-b must be >= 100");
    }
    // coverage runs include the bootstrap columns unless switched off
    const bool boot = f.kind == "coverage" && !f.no_bootstrap;
    Sink sink(f.common.output);
    const SimReport report = f.kind == "bias" ? run_bias_mad(plan) : run_coverage(plan, boot);
    std::cerr << "simulate " << f.kind << " " << f.preset << ": " << report.cells.size() << " cells in "
              << format_short(report.runtime_seconds) << " s\n";
    if (f.common.format == "json") {
        nlohmann::json j = to_json(report);
        j["preset"] = f.preset;
        j["kind"] = f.kind;
        sink.out() << j.dump(2) << '\n';
    } else {
        write_csv(report, sink.out());
    }
    return kExitOk;
}

void add_common(CLI::App* app, Common& c, const std::string& default_format, bool with_level = false,
                bool with_threads = false) {
    c.format = default_format;
    app->add_option("--format", c.format, "Output format")->capture_default_str();
    app->add_option("-o,--output", c.output, "Output file (default: stdout)");
    app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    if (with_level) {
        app->add_option("--level", c.level, "Confidence level")->capture_default_str();
    }
    if (with_threads) {
        app->add_option("--threads", c.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
    }
}

void add_params(CLI::App* app, ParamFlags& p) {
    app->add_option("--variant", p.variant, "one-sided | symmetric")->capture_default_str();
    app->add_option("--alpha", p.alpha, "Fractional parameter in (0, 1)");
    app->add_option("--rho", p.rho, "Scale > 0");
    app->add_option("--mu", p.mu, "Location");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fitting, sampling and simulation for the three-parameter M-Wright distributions"};
    app.require_subcommand(1);

    FitFlags fit_flags;
    auto* fit_cmd = app.add_subcommand("fit", "Estimate (mu, alpha, rho) with confidence intervals");
    add_common(fit_cmd, fit_flags.common, "text", true);
    fit_cmd->add_option("-i,--input", fit_flags.input, "CSV file")->required();
    fit_cmd->add_option("-c,--column", fit_flags.column, "Column name or 0-based index")->capture_default_str();
    fit_cmd->add_option("--variant", fit_flags.variant, "one-sided | symmetric")->required();
    auto* loc_opt = fit_cmd->add_option("--location", fit_flags.location, "Symmetric location: auto | mean | median")
                        ->capture_default_str();
    fit_cmd->add_option("--known-mu", fit_flags.known_mu, "Treat the location as known")->excludes(loc_opt);
    fit_cmd->add_option("--quantile-draws", fit_flags.quantile_draws, "Variates for the one-sided location interval")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    SampleFlags sample_flags;
    auto* sample_cmd = app.add_subcommand("sample", "Draw random variates");
    add_common(sample_cmd, sample_flags.common, "csv");
    add_params(sample_cmd, sample_flags.params);
    sample_cmd->add_option("-n,--n", sample_flags.n, "Number of draws")->capture_default_str();
    sample_cmd->add_option("--stream", sample_flags.stream, "Stream id")->capture_default_str();

    DensityFlags density_flags;
    auto* density_cmd = app.add_subcommand("density", "Tabulate the density or the mean/median ARE curve");
    add_common(density_cmd, density_flags.common, "csv");
    add_params(density_cmd, density_flags.params);
    density_cmd->add_option("--curve", density_flags.curve, "pdf | are")->capture_default_str();
    density_cmd->add_option("--from", density_flags.from, "Grid start");
    density_cmd->add_option("--to", density_flags.to, "Grid end");
    density_cmd->add_option("--points", density_flags.points, "Grid points")->capture_default_str();

    GofFlags gof_flags;
    auto* gof_cmd = app.add_subcommand("gof", "Simulated two-sample Kolmogorov-Smirnov goodness of fit");
    add_common(gof_cmd, gof_flags.common, "text", true, true);
    add_params(gof_cmd, gof_flags.params);
    gof_cmd->add_option("-i,--input", gof_flags.input, "CSV file")->required();
    gof_cmd->add_option("-c,--column", gof_flags.column, "Column name or 0-based index")->capture_default_str();
    gof_cmd->add_option("--sims", gof_flags.sims, "Simulated datasets")->capture_default_str();
    gof_cmd->add_option("--quantile-draws", gof_flags.quantile_draws, "Variates for the fit's location interval")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    SimulateFlags sim_flags;
    auto* sim_cmd = app.add_subcommand("simulate", "Reproduce the bias/MAD and coverage studies");
    add_common(sim_cmd, sim_flags.common, "csv", true, true);
    sim_cmd->add_option("kind", sim_flags.kind, "bias | coverage")->required();
    sim_cmd->add_option("--preset", sim_flags.preset, "table1 ... table6")->required();
    sim_cmd->add_option("--replicates", sim_flags.replicates, "Monte Carlo replicates")->capture_default_str();
    sim_cmd->add_option("--sizes", sim_flags.sizes, "Sample sizes (default 100 1000 10000)");
    auto* boot_on = sim_cmd->add_flag("--bootstrap", sim_flags.bootstrap, "Bootstrap columns (default for coverage)");
    sim_cmd->add_flag("--no-bootstrap", sim_flags.no_bootstrap, "Skip the bootstrap columns")->excludes(boot_on);
    sim_cmd->add_flag("--bootstrap-all-n", sim_flags.bootstrap_all_n, "Also bootstrap for n > 1000");
    sim_cmd->add_option("--bootstrap-b", sim_flags.bootstrap_b, "Bootstrap resamples")->capture_default_str();
    sim_cmd->add_option("--quantile-draws", sim_flags.quantile_draws, "Variates for the one-sided location interval")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--location", sim_flags.location, "Symmetric location: auto | mean | median")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*fit_cmd) {
            return run_fit(fit_flags);
        }
        if (*sample_cmd) {
            return run_sample(sample_flags);
        }
        if (*density_cmd) {
            return run_density(density_flags);
        }
        if (*gof_cmd) {
            return run_gof(gof_flags);
        }
        if (*sim_cmd) {
            return run_simulate(sim_flags);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const mwright::Error& e) {
        std::cerr << "estimation error: " << e.what() << '\n';
        return kExitEstimation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
