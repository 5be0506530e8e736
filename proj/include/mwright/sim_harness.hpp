#pragma once

// Monte Carlo studies of the estimators: percentage bias and MAD of the
// point estimates, and coverage of the interval estimates (delta-method,
// order-statistic, CLT and percentile bootstrap).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mwright/distribution.hpp"
#include "mwright/errors.hpp"
#include "mwright/estimate.hpp"

namespace mwright {

enum class SimCase {
    OneSidedMuZero,   // one-sided, location known to be 0
    OneSidedShifted,  // one-sided, location estimated by the minimum
    Symmetric,        // symmetric, location estimated per the plan's rule
};

std::string_view to_string(SimCase c);

struct SimCombo {
    MWrightParams params;
    SimCase sim_case = SimCase::OneSidedMuZero;
};

struct SimPlan {
    std::vector<SimCombo> combos;
    std::vector<std::size_t> sample_sizes;
    std::size_t replicates = 1000;
    double level = 0.95;
    std::size_t bootstrap_b = kDefaultBootstrapResamples;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t quantile_draws = kDefaultQuantileDraws;
    LocationRule symmetric_location = LocationRule::Mean;
    /// Bootstrap columns are skipped for n above this unless bootstrap_all_n.
    std::size_t bootstrap_max_n = 1000;
    bool bootstrap_all_n = false;

    /// Throws DomainError on an empty or invalid plan.
    void validate() const;
};

struct SimCell {
    std::size_t combo_index = 0;
    SimCombo combo;
    std::size_t n = 0;
    Statistic parameter = Statistic::Alpha;
    double pct_bias = 0.0;
    double pct_mad = 0.0;
    std::optional<double> coverage;
    std::optional<double> coverage_bootstrap;
};

struct SimReport {
    std::vector<SimCell> cells;
    std::uint64_t seed = 0;
    std::size_t replicates = 0;
    double level = 0.95;
    double runtime_seconds = 0.0;  // not part of the serialized report

    const SimCell* find(std::size_t combo_index, std::size_t n, Statistic parameter) const;
};

/// A replicate failed; carries the cell and stream that reproduce it.
class ReplicateError : public Error {
public:
    ReplicateError(const std::string& what, std::size_t combo_index, std::size_t n, std::uint64_t stream_id)
        : Error(what), combo_index(combo_index), n(n), stream_id(stream_id) {}
    std::size_t combo_index;
    std::size_t n;
    std::uint64_t stream_id;
};

/// Per-replicate estimates for one (combo, n) cell.
struct CellSamples {
    std::vector<double> alpha;
    std::vector<double> rho;
    std::vector<double> mu;
};

/// Runs the point-estimate path on every replicate of one cell.
CellSamples simulate_estimates(const SimPlan& plan, std::size_t combo_index, std::size_t n);

SimReport run_bias_mad(const SimPlan& plan);

/// Bias/MAD plus coverage; bootstrap coverage when include_bootstrap is set
/// and the cell's n is eligible under the plan.
SimReport run_coverage(const SimPlan& plan, bool include_bootstrap);

/// Presets "table1" ... "table6": the published parameter combos with
/// n in {100, 1000, 10000}. Tables 1/2 fix mu = 0, 3/4 estimate a one-sided
/// shift, 5/6 are symmetric with the sample mean as location.
SimPlan preset_plan(std::string_view name);

/// Stream for replicate r of a cell; stream_id is the replicate index.
RngStream replicate_stream(std::uint64_t seed, std::size_t combo_index, std::size_t n, std::size_t replicate);

nlohmann::json to_json(const SimReport& report);
/// One row per combo x n x parameter x metric.
void write_csv(const SimReport& report, std::ostream& out);

}  // namespace mwright
