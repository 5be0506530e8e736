#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "mwright/csv.hpp"
#include "mwright/errors.hpp"
#include "mwright/estimate.hpp"
#include "mwright/format.hpp"
#include "mwright/report.hpp"
#include "mwright/sampling.hpp"

using namespace mwright;

namespace {

std::vector<double> read(const std::string& text, const std::string& column) {
    std::istringstream in(text);
    return read_csv_column(in, column);
}

FitResult sample_fit(Variant v, const FitOptions& opts = {}) {
    const auto data = sample_mwright(MWrightParams{0.6, 8.77, 25.2, v}, RngStream{8, 0}, 500);
    FitOptions o = opts;
    o.quantile_draws = 20000;
    return fit(data, v, 0.95, RngStream{8, 1}, o);
}

}  // namespace

TEST_CASE("csv record splitting") {
    CHECK(split_csv_record("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_csv_record("a,,c,") == std::vector<std::string>{"a", "", "c", ""});
    CHECK(split_csv_record("x\r") == std::vector<std::string>{"x"});
    CHECK(split_csv_record("\"1,5\",\"say \"\"hi\"\"\",3") == std::vector<std::string>{"1,5", "say \"hi\"", "3"});
    CHECK(split_csv_record("") == std::vector<std::string>{""});
}

TEST_CASE("strict number parsing") {
    double v = 0.0;
    CHECK(parse_double("1.5", v));
    CHECK(v == 1.5);
    CHECK(parse_double("  -2e3 ", v));
    CHECK(v == -2000.0);
    CHECK(parse_double("+7", v));
    CHECK(v == 7.0);
    CHECK(parse_double("0.1", v));
    CHECK(v == 0.1);
    CHECK_FALSE(parse_double("", v));
    CHECK_FALSE(parse_double("1.5x", v));
    CHECK_FALSE(parse_double("1,5", v));
    CHECK_FALSE(parse_double("abc", v));
    CHECK_FALSE(parse_double("1 2", v));
}

TEST_CASE("reading a column") {
    CHECK(read("1\n2\n3\n", "0") == std::vector<double>{1, 2, 3});
    CHECK(read("height,weight\n1,10\n2,20\n", "weight") == std::vector<double>{10, 20});
    CHECK(read("height,weight\n1,10\n2,20\n", "1") == std::vector<double>{10, 20});
    CHECK(read(" h , w \r\n1,10\r\n\r\n2,20\r\n", "w") == std::vector<double>{10, 20});
    CHECK(read("4,5\n6,7", "0") == std::vector<double>{4, 6});
    CHECK(read("\"id\",\"x\"\n\"a,b\",1.25\n", "x") == std::vector<double>{1.25});
    CHECK(read("", "0").empty());
}

TEST_CASE("reading errors name the line") {
    auto message = [](const std::string& text, const std::string& column) {
        try {
            read(text, column);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("x\n1\n2\nbad\n", "0").find("line 4") != std::string::npos);
    CHECK(message("x\n1\n\n2,3\nnan\n", "0").find("line 5") != std::string::npos);
    CHECK(message("x\n1\ninf\n", "x").find("line 3") != std::string::npos);
    CHECK(message("a,b\n1,2\n3\n", "b").find("line 3") != std::string::npos);
    CHECK(message("a,b\n1,2\n", "c").find("not found") != std::string::npos);
    CHECK_THROWS_AS(read_csv_column_file("/nonexistent/data.csv", "0"), InputError);
}

TEST_CASE("full precision formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 25.02, 0.0,
                     std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()}) {
        double back = 0.0;
        REQUIRE(parse_double(format_full(v), back));
        CHECK(back == v);
    }
    CHECK(format_full(0.1) == "0.1");
    CHECK(format_full(3.0) == "3");
    CHECK(format_short(1.0 / 3.0) == "0.333333");
    CHECK(format_short(123456789.0) == "1.23457e+08");
}

TEST_CASE("csv field quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(split_csv_record(csv_field("x,\"y\"") + ",2") == std::vector<std::string>{"x,\"y\"", "2"});
}

TEST_CASE("fit json schema and round trip") {
    const FitResult r = sample_fit(Variant::OneSided);
    const nlohmann::json j = fit_to_json(r, 42);
    for (const char* key : {"params", "ci", "corr_alpha_rho", "location_estimator", "diagnostics", "seed", "n", "level",
                            "ci_method"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["params"]["variant"] == "one-sided");
    CHECK(j["ci"]["alpha"].size() == 2);
    CHECK(j["ci"]["mu"].is_array());
    CHECK(j["seed"] == 42);

    std::uint64_t seed = 0;
    const FitResult back = fit_from_json(nlohmann::json::parse(j.dump()), &seed);
    CHECK(seed == 42);
    CHECK(back.params.alpha == r.params.alpha);
    CHECK(back.params.rho == r.params.rho);
    CHECK(back.params.mu == r.params.mu);
    CHECK(back.params.variant == r.params.variant);
    CHECK(back.ci_alpha.lower == r.ci_alpha.lower);
    CHECK(back.ci_rho.upper == r.ci_rho.upper);
    REQUIRE(back.ci_mu.has_value());
    CHECK(back.ci_mu->lower == r.ci_mu->lower);
    CHECK(back.ci_mu->method == r.ci_mu->method);
    CHECK(back.corr_alpha_rho == r.corr_alpha_rho);
    CHECK(back.location_estimator_used == r.location_estimator_used);
    CHECK(back.n == r.n);
    CHECK(back.diagnostics == r.diagnostics);
    CHECK(fit_to_json(back, 42) == j);
}

TEST_CASE("fit json with known location") {
    FitOptions opts;
    opts.known_mu = 25.2;
    const FitResult r = sample_fit(Variant::Symmetric, opts);
    const nlohmann::json j = fit_to_json(r, 1);
    CHECK(j["ci"]["mu"].is_null());
    CHECK(j["ci_method"]["mu"].is_null());
    CHECK_FALSE(fit_from_json(j).ci_mu.has_value());
}

TEST_CASE("malformed fit documents") {
    CHECK_THROWS_AS(fit_from_json(nlohmann::json::object()), InputError);
    nlohmann::json j = fit_to_json(sample_fit(Variant::OneSided), 3);
    j["ci"]["alpha"] = {1.0};
    CHECK_THROWS_AS(fit_from_json(j), InputError);
    j = fit_to_json(sample_fit(Variant::OneSided), 3);
    j["location_estimator"] = "mode";
    CHECK_THROWS_AS(fit_from_json(j), InputError);
    j = fit_to_json(sample_fit(Variant::OneSided), 3);
    j["params"]["alpha"] = "high";
    CHECK_THROWS_AS(fit_from_json(j), InputError);
}

TEST_CASE("fit csv and text") {
    const FitResult r = sample_fit(Variant::OneSided);
    std::ostringstream csv;
    write_fit_csv(r, csv);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "parameter,estimate,lower,upper,method");
    std::vector<std::string> names;
    while (std::getline(in, line)) {
        const auto f = split_csv_record(line);
        REQUIRE(f.size() == 5);
        names.push_back(f[0]);
        double est = 0.0;
        double lo = 0.0;
        double hi = 0.0;
        CHECK(parse_double(f[1], est));
        CHECK(parse_double(f[2], lo));
        CHECK(parse_double(f[3], hi));
        CHECK(lo <= hi);
    }
    CHECK(names == std::vector<std::string>{"mu", "alpha", "rho"});
    CHECK(read(csv.str(), "estimate")[1] == r.params.alpha);

    std::ostringstream text;
    write_fit_text(r, text);
    CHECK(text.str().find("one-sided M-Wright fit, n = 500, 95% intervals") == 0);
    CHECK(text.str().find("corr(alpha, rho)") != std::string::npos);
}
