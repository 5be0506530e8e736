#include "mwright/sim_harness.hpp"

#include <chrono>
#include <ostream>
#include <string>

#include "mwright/format.hpp"
#include "mwright/parallel.hpp"
#include "mwright/sampling.hpp"
#include "mwright/stats_util.hpp"

namespace mwright {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Variant variant_of(SimCase c) { return c == SimCase::Symmetric ? Variant::Symmetric : Variant::OneSided; }

FitOptions fit_options(const SimPlan& plan, const SimCombo& combo) {
    FitOptions opts;
    if (combo.sim_case == SimCase::OneSidedMuZero) {
        opts.known_mu = combo.params.mu;
    }
    opts.location_rule = plan.symmetric_location;
    opts.quantile_draws = plan.quantile_draws;
    return opts;
}

std::vector<Statistic> parameters_of(SimCase c) {
    if (c == SimCase::OneSidedMuZero) {
        return {Statistic::Alpha, Statistic::Rho};
    }
    return {Statistic::Alpha, Statistic::Rho, Statistic::Mu};
}

double truth_of(const MWrightParams& p, Statistic s) {
    switch (s) {
        case Statistic::Alpha: return p.alpha;
        case Statistic::Rho: return p.rho;
        case Statistic::Mu: return p.mu;
    }
    return 0.0;
}

std::string_view parameter_name(Statistic s) {
    switch (s) {
        case Statistic::Alpha: return "alpha";
        case Statistic::Rho: return "rho";
        case Statistic::Mu: return "mu";
    }
    return "?";
}

// per-replicate outcome of one cell
struct ReplicateOutcome {
    double est[3] = {0.0, 0.0, 0.0};
    bool covered[3] = {false, false, false};
    bool covered_boot[3] = {false, false, false};
};

template <typename Work>
void run_replicates(const SimPlan& plan, std::size_t combo_index, std::size_t n, Work&& work) {
    parallel_for(plan.replicates, plan.threads, [&](std::size_t r) {
        const RngStream stream = replicate_stream(plan.seed, combo_index, n, r);
        try {
            work(r, stream);
        } catch (const Error& e) {
            throw ReplicateError("replicate failed (combo " + std::to_string(combo_index) + ", n " +
                                     std::to_string(n) + ", stream " + std::to_string(stream.stream_id) +
                                     "): " + e.what(),
                                 combo_index, n, stream.stream_id);
        }
    });
}

std::vector<double> draw_dataset(const MWrightParams& p, const RngStream& stream, std::size_t n) {
    Engine eng(stream);
    std::vector<double> data(n);
    fill_mwright(p, eng, data);
    return data;
}

SimReport run_study(const SimPlan& plan, bool coverage, bool include_bootstrap) {
    plan.validate();
    const auto start = std::chrono::steady_clock::now();
    SimReport report;
    report.seed = plan.seed;
    report.replicates = plan.replicates;
    report.level = plan.level;
    for (std::size_t ci = 0; ci < plan.combos.size(); ++ci) {
        const SimCombo& combo = plan.combos[ci];
        const Variant variant = variant_of(combo.sim_case);
        const FitOptions opts = fit_options(plan, combo);
        for (std::size_t n : plan.sample_sizes) {
            const bool boot =
                coverage && include_bootstrap && (plan.bootstrap_all_n || n <= plan.bootstrap_max_n);
            std::vector<ReplicateOutcome> outcomes(plan.replicates);
            run_replicates(plan, ci, n, [&](std::size_t r, const RngStream& stream) {
                const std::vector<double> data = draw_dataset(combo.params, stream, n);
                ReplicateOutcome& o = outcomes[r];
                if (coverage) {
                    const FitResult f = fit(data, variant, plan.level, stream.substream(0), opts);
                    o.est[0] = f.params.alpha;
                    o.est[1] = f.params.rho;
                    o.est[2] = f.params.mu;
                    o.covered[0] = f.ci_alpha.contains(combo.params.alpha);
                    o.covered[1] = f.ci_rho.contains(combo.params.rho);
                    o.covered[2] = f.ci_mu && f.ci_mu->contains(combo.params.mu);
                } else {
                    const PointEstimate pe = point_estimate(data, variant, opts);
                    o.est[0] = pe.params.alpha;
                    o.est[1] = pe.params.rho;
                    o.est[2] = pe.params.mu;
                }
                if (boot) {
                    const BootstrapIntervals bi = bootstrap_percentile_cis(data, variant, plan.level, plan.bootstrap_b,
                                                                           stream.substream(1), opts);
                    o.covered_boot[0] = bi.alpha.contains(combo.params.alpha);
                    o.covered_boot[1] = bi.rho.contains(combo.params.rho);
                    o.covered_boot[2] = bi.mu && bi.mu->contains(combo.params.mu);
                }
            });
            for (Statistic s : parameters_of(combo.sim_case)) {
                const auto k = static_cast<std::size_t>(s);
                std::vector<double> est(plan.replicates);
                std::size_t hits = 0;
                std::size_t boot_hits = 0;
                for (std::size_t r = 0; r < plan.replicates; ++r) {
                    est[r] = outcomes[r].est[k];
                    hits += outcomes[r].covered[k] ? 1 : 0;
                    boot_hits += outcomes[r].covered_boot[k] ? 1 : 0;
                }
                SimCell cell;
                cell.combo_index = ci;
                cell.combo = combo;
                cell.n = n;
                cell.parameter = s;
                const double truth = truth_of(combo.params, s);
                cell.pct_bias = pct_bias(est, truth);
                cell.pct_mad = pct_mad(est, truth);
                const double reps = static_cast<double>(plan.replicates);
                if (coverage) {
                    cell.coverage = static_cast<double>(hits) / reps;
                }
                if (boot) {
                    cell.coverage_bootstrap = static_cast<double>(boot_hits) / reps;
                }
                report.cells.push_back(cell);
            }
        }
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace

std::string_view to_string(SimCase c) {
    switch (c) {
        case SimCase::OneSidedMuZero: return "one-sided-mu-zero";
        case SimCase::OneSidedShifted: return "one-sided-shifted";
        case SimCase::Symmetric: return "symmetric";
    }
    return "?";
}

void SimPlan::validate() const {
    if (combos.empty()) {
        throw DomainError("SimPlan: no parameter combos");
    }
    if (sample_sizes.empty()) {
        throw DomainError("SimPlan: no sample sizes");
    }
    if (replicates < 1) {
        throw DomainError("SimPlan: replicates must be >= 1");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("SimPlan: level must lie in (0, 1)");
    }
    for (std::size_t n : sample_sizes) {
        if (n < kMinFitSize) {
            throw DomainError("SimPlan: sample sizes must be >= " + std::to_string(kMinFitSize));
        }
    }
    for (const SimCombo& c : combos) {
        c.params.validate();
        const bool one_sided_case = c.sim_case != SimCase::Symmetric;
        if (one_sided_case != (c.params.variant == Variant::OneSided)) {
            throw DomainError("SimPlan: combo variant does not match its case");
        }
        if (c.sim_case != SimCase::OneSidedMuZero && c.params.mu == 0.0) {
            throw DomainError("SimPlan: percentage errors of mu need a nonzero true mu");
        }
    }
}

const SimCell* SimReport::find(std::size_t combo_index, std::size_t n, Statistic parameter) const {
    for (const SimCell& c : cells) {
        if (c.combo_index == combo_index && c.n == n && c.parameter == parameter) {
            return &c;
        }
    }
    return nullptr;
}

RngStream replicate_stream(std::uint64_t seed, std::size_t combo_index, std::size_t n, std::size_t replicate) {
    const std::uint64_t cell_seed = mix64(mix64(seed ^ mix64(combo_index + 1)) ^ mix64(n));
    return RngStream{cell_seed, replicate};
}

CellSamples simulate_estimates(const SimPlan& plan, std::size_t combo_index, std::size_t n) {
    plan.validate();
    const SimCombo& combo = plan.combos.at(combo_index);
    const Variant variant = variant_of(combo.sim_case);
    const FitOptions opts = fit_options(plan, combo);
    CellSamples out;
    out.alpha.resize(plan.replicates);
    out.rho.resize(plan.replicates);
    out.mu.resize(plan.replicates);
    run_replicates(plan, combo_index, n, [&](std::size_t r, const RngStream& stream) {
        const std::vector<double> data = draw_dataset(combo.params, stream, n);
        const PointEstimate pe = point_estimate(data, variant, opts);
        out.alpha[r] = pe.params.alpha;
        out.rho[r] = pe.params.rho;
        out.mu[r] = pe.params.mu;
    });
    return out;
}

SimReport run_bias_mad(const SimPlan& plan) { return run_study(plan, false, false); }

SimReport run_coverage(const SimPlan& plan, bool include_bootstrap) {
    return run_study(plan, true, include_bootstrap);
}

SimPlan preset_plan(std::string_view name) {
    struct Triple {
        double alpha, rho, mu;
    };
    static constexpr Triple mu_zero[] = {{0.4, 150, 0}, {0.6, 8.77, 0}, {0.8, 375, 0}, {0.95, 1000, 0}};
    static constexpr Triple shifted[] = {{0.4, 150, -78}, {0.6, 8.77, 25.2}, {0.8, 375, 375}, {0.95, 1000, 500}};
    SimCase sim_case{};
    const Triple* combos = nullptr;
    if (name == "table1" || name == "table2") {
        sim_case = SimCase::OneSidedMuZero;
        combos = mu_zero;
    } else if (name == "table3" || name == "table4") {
        sim_case = SimCase::OneSidedShifted;
        combos = shifted;
    } else if (name == "table5" || name == "table6") {
        sim_case = SimCase::Symmetric;
        combos = shifted;
    } else {
        throw DomainError("unknown preset '" + std::string(name) + "' (expected table1 ... table6)");
    }
    SimPlan plan;
    for (int i = 0; i < 4; ++i) {
        const Variant v = sim_case == SimCase::Symmetric ? Variant::Symmetric : Variant::OneSided;
        plan.combos.push_back({MWrightParams{combos[i].alpha, combos[i].rho, combos[i].mu, v}, sim_case});
    }
    plan.sample_sizes = {100, 1000, 10000};
    plan.symmetric_location = LocationRule::Mean;
    return plan;
}

nlohmann::json to_json(const SimReport& report) {
    nlohmann::json cells = nlohmann::json::array();
    for (const SimCell& c : report.cells) {
        nlohmann::json j;
        j["case"] = std::string(to_string(c.combo.sim_case));
        j["alpha"] = c.combo.params.alpha;
        j["rho"] = c.combo.params.rho;
        j["mu"] = c.combo.params.mu;
        j["n"] = c.n;
        j["parameter"] = std::string(parameter_name(c.parameter));
        j["pct_bias"] = c.pct_bias;
        j["pct_mad"] = c.pct_mad;
        j["coverage"] = c.coverage ? nlohmann::json(*c.coverage) : nlohmann::json(nullptr);
        j["coverage_bootstrap"] =
            c.coverage_bootstrap ? nlohmann::json(*c.coverage_bootstrap) : nlohmann::json(nullptr);
        cells.push_back(std::move(j));
    }
    return nlohmann::json{{"seed", report.seed},
                          {"replicates", report.replicates},
                          {"level", report.level},
                          {"cells", std::move(cells)}};
}

void write_csv(const SimReport& report, std::ostream& out) {
    out << "case,alpha,rho,mu,n,parameter,metric,value\n";
    for (const SimCell& c : report.cells) {
        const std::string prefix = std::string(to_string(c.combo.sim_case)) + "," + format_full(c.combo.params.alpha) +
                                   "," + format_full(c.combo.params.rho) + "," + format_full(c.combo.params.mu) +
                                   "," + std::to_string(c.n) + "," + std::string(parameter_name(c.parameter)) + ",";
        out << prefix << "pct_bias," << format_full(c.pct_bias) << '\n';
        out << prefix << "pct_mad," << format_full(c.pct_mad) << '\n';
        if (c.coverage) {
            out << prefix << "coverage," << format_full(*c.coverage) << '\n';
        }
        if (c.coverage_bootstrap) {
            out << prefix << "coverage_bootstrap," << format_full(*c.coverage_bootstrap) << '\n';
        }
    }
}

}  // namespace mwright
