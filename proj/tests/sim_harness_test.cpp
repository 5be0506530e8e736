#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "mwright/errors.hpp"
#include "mwright/sim_harness.hpp"
#include "mwright/stats_util.hpp"

using namespace mwright;

namespace {

SimPlan small_plan(SimCase c, double mu) {
    SimPlan plan;
    const Variant v = c == SimCase::Symmetric ? Variant::Symmetric : Variant::OneSided;
    plan.combos = {{MWrightParams{0.6, 8.77, mu, v}, c}, {MWrightParams{0.8, 375, mu, v}, c}};
    plan.sample_sizes = {50, 200};
    plan.replicates = 40;
    plan.seed = 17;
    plan.quantile_draws = 20000;
    plan.bootstrap_b = 100;
    return plan;
}

std::string csv_of(const SimReport& r) {
    std::ostringstream out;
    write_csv(r, out);
    return out.str();
}

}  // namespace

TEST_CASE("presets") {
    for (const char* name : {"table1", "table2", "table3", "table4", "table5", "table6"}) {
        const SimPlan p = preset_plan(name);
        CHECK_NOTHROW(p.validate());
        CHECK(p.combos.size() == 4);
        CHECK(p.sample_sizes == std::vector<std::size_t>{100, 1000, 10000});
        CHECK(p.replicates == 1000);
    }
    const SimPlan t1 = preset_plan("table1");
    CHECK(t1.combos[1].params.alpha == 0.6);
    CHECK(t1.combos[1].params.rho == 8.77);
    CHECK(t1.combos[1].params.mu == 0.0);
    CHECK(t1.combos[0].sim_case == SimCase::OneSidedMuZero);
    const SimPlan t3 = preset_plan("table3");
    CHECK(t3.combos[0].params.mu == -78.0);
    CHECK(t3.combos[3].params.mu == 500.0);
    CHECK(t3.combos[2].sim_case == SimCase::OneSidedShifted);
    const SimPlan t6 = preset_plan("table6");
    CHECK(t6.combos[2].params.variant == Variant::Symmetric);
    CHECK(t6.symmetric_location == LocationRule::Mean);
    CHECK_THROWS_AS(preset_plan("table7"), DomainError);
}

TEST_CASE("plan validation") {
    SimPlan p = small_plan(SimCase::OneSidedShifted, 25.2);
    CHECK_NOTHROW(p.validate());
    SimPlan zero_mu = small_plan(SimCase::OneSidedShifted, 0.0);
    CHECK_THROWS_AS(zero_mu.validate(), DomainError);
    SimPlan tiny_n = p;
    tiny_n.sample_sizes = {5};
    CHECK_THROWS_AS(tiny_n.validate(), DomainError);
    SimPlan mismatch = p;
    mismatch.combos[0].params.variant = Variant::Symmetric;
    CHECK_THROWS_AS(mismatch.validate(), DomainError);
    SimPlan empty = p;
    empty.combos.clear();
    CHECK_THROWS_AS(run_bias_mad(empty), DomainError);
    SimPlan no_reps = p;
    no_reps.replicates = 0;
    CHECK_THROWS_AS(no_reps.validate(), DomainError);
}

TEST_CASE("replicate streams") {
    CHECK(replicate_stream(1, 0, 100, 5).seed == replicate_stream(1, 0, 100, 5).seed);
    CHECK(replicate_stream(1, 0, 100, 5).stream_id == 5);
    CHECK(replicate_stream(1, 0, 100, 5).seed != replicate_stream(1, 1, 100, 5).seed);
    CHECK(replicate_stream(1, 0, 100, 5).seed != replicate_stream(1, 0, 1000, 5).seed);
    CHECK(replicate_stream(1, 0, 100, 5).seed != replicate_stream(2, 0, 100, 5).seed);
}

TEST_CASE("bias and MAD study") {
    const SimPlan plan = small_plan(SimCase::OneSidedMuZero, 0.0);
    const SimReport r = run_bias_mad(plan);
    CHECK(r.cells.size() == 2 * 2 * 2);
    CHECK(r.seed == 17);
    CHECK(r.replicates == 40);
    for (const SimCell& c : r.cells) {
        CHECK(c.pct_bias >= 0.0);
        CHECK(c.pct_mad >= 0.0);
        CHECK_FALSE(c.coverage.has_value());
        CHECK_FALSE(c.coverage_bootstrap.has_value());
        CHECK(c.parameter != Statistic::Mu);
    }
    const SimCell* small = r.find(0, 50, Statistic::Alpha);
    const SimCell* large = r.find(0, 200, Statistic::Alpha);
    REQUIRE(small != nullptr);
    REQUIRE(large != nullptr);
    CHECK(large->pct_bias < small->pct_bias);
    CHECK(r.find(0, 999, Statistic::Alpha) == nullptr);

    const CellSamples s = simulate_estimates(plan, 0, 50);
    CHECK(s.alpha.size() == 40);
    CHECK(pct_bias(s.alpha, 0.6) == small->pct_bias);
}

TEST_CASE("shifted and symmetric cases report mu") {
    const SimReport shifted = run_bias_mad(small_plan(SimCase::OneSidedShifted, 25.2));
    CHECK(shifted.cells.size() == 2 * 2 * 3);
    CHECK(shifted.find(1, 200, Statistic::Mu) != nullptr);
    const SimReport sym = run_bias_mad(small_plan(SimCase::Symmetric, 375.0));
    const SimCell* mu = sym.find(0, 200, Statistic::Mu);
    REQUIRE(mu != nullptr);
    CHECK(mu->pct_bias < 1.0);
}

TEST_CASE("coverage study") {
    SimPlan plan = small_plan(SimCase::OneSidedShifted, 25.2);
    plan.bootstrap_max_n = 60;
    const SimReport r = run_coverage(plan, true);
    for (const SimCell& c : r.cells) {
        REQUIRE(c.coverage.has_value());
        CHECK(*c.coverage >= 0.0);
        CHECK(*c.coverage <= 1.0);
        CHECK(c.coverage_bootstrap.has_value() == (c.n <= 60));
    }
    // the minimum never exceeds the true shift, so the interval's upper end is safe
    CHECK(*r.find(0, 200, Statistic::Mu)->coverage > 0.7);

    const SimReport no_boot = run_coverage(plan, false);
    for (const SimCell& c : no_boot.cells) {
        CHECK_FALSE(c.coverage_bootstrap.has_value());
    }
    CHECK(no_boot.cells[0].coverage == r.cells[0].coverage);
    CHECK(no_boot.cells[0].pct_bias == r.cells[0].pct_bias);
}

TEST_CASE("results do not depend on the thread count") {
    SimPlan plan = small_plan(SimCase::Symmetric, 25.2);
    plan.threads = 1;
    const std::string one = csv_of(run_coverage(plan, true));
    plan.threads = 3;
    const std::string three = csv_of(run_coverage(plan, true));
    CHECK(one == three);
    plan.seed = 18;
    CHECK(csv_of(run_coverage(plan, true)) != one);
}

TEST_CASE("serialization") {
    SimPlan plan = small_plan(SimCase::OneSidedShifted, 25.2);
    plan.sample_sizes = {50};
    plan.combos.resize(1);
    const SimReport r = run_coverage(plan, false);
    const nlohmann::json j = to_json(r);
    CHECK(j["seed"] == 17);
    CHECK(j["replicates"] == 40);
    CHECK(j["level"] == 0.95);
    REQUIRE(j["cells"].size() == 3);
    const auto& c = j["cells"][2];
    CHECK(c["case"] == "one-sided-shifted");
    CHECK(c["parameter"] == "mu");
    CHECK(c["n"] == 50);
    CHECK(c["mu"] == 25.2);
    CHECK(c["coverage"].is_number());
    CHECK(c["coverage_bootstrap"].is_null());
    CHECK_FALSE(j.contains("runtime_seconds"));

    const std::string csv = csv_of(r);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "case,alpha,rho,mu,n,parameter,metric,value");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find('\r') == std::string::npos);
    }
    CHECK(rows == 3 * 3);
    CHECK(csv.find("one-sided-shifted,0.6,8.77,25.2,50,alpha,pct_bias,") != std::string::npos);
}
