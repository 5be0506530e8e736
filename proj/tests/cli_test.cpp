#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "mwright/csv.hpp"
#include "mwright/report.hpp"
#include "mwright/sampling.hpp"

using namespace mwright;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(MWRIGHT_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, got);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_data(const std::string& name, const std::vector<double>& values, const std::string& header = "") {
    std::ofstream out(name, std::ios::binary);
    if (!header.empty()) {
        out << header << '\n';
    }
    out.precision(17);
    for (double v : values) {
        out << v << '\n';
    }
    return name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

const std::string& one_sided_file() {
    static const std::string path = write_data(
        "cli_one_sided.csv", sample_mwright(MWrightParams{0.473, 4.39, 25.02, Variant::OneSided}, RngStream{5, 0}, 400),
        "length");
    return path;
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help").code == 0);
    CHECK(run("fit --help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("fit --variant one-sided").code == 2);
    CHECK(run("sample --alpha 2 --rho 1").code == 2);
    CHECK(run("sample --alpha 0.5 --rho -1").code == 2);
    CHECK(run("sample --alpha 0.5 --rho 1 --variant two-sided").code == 2);
    CHECK(run("sample --alpha 0.5 --rho 1 --format xml").code == 2);
    CHECK(run("density --curve cdf --alpha 0.5 --rho 1").code == 2);
}

TEST_CASE("density at the mode") {
    const Run r = run("density --variant symmetric --alpha 0.5 --rho 0.5 --from 0 --to 1 --points 3");
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "x,pdf");
    CHECK(rows[1] == "0,0.5641895835477563");
}

TEST_CASE("density defaults and json") {
    const Run csv = run("density --alpha 0.6 --rho 2 --mu 1");
    REQUIRE(csv.code == 0);
    CHECK(lines(csv.out).size() == 201);
    const Run js = run("density --alpha 0.6 --rho 2 --mu 1 --points 5 --format json");
    REQUIRE(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["x"].size() == 5);
    CHECK(j["x"][0] == 1.0);
    CHECK(j["params"]["variant"] == "one-sided");
}

TEST_CASE("are curve crosses one at the cutoff") {
    const Run r = run("density --curve are --from 0.3 --to 0.5 --points 2001");
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows[0] == "alpha,are");
    double cross = 0.0;
    double prev_a = 0.0;
    double prev_v = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split_csv_record(rows[i]);
        double a = 0.0;
        double v = 0.0;
        REQUIRE(parse_double(f[0], a));
        REQUIRE(parse_double(f[1], v));
        if (i > 1 && prev_v > 1.0 && v <= 1.0) {
            cross = prev_a + (1.0 - prev_v) * (a - prev_a) / (v - prev_v);
        }
        prev_a = a;
        prev_v = v;
    }
    CHECK(cross == doctest::Approx(0.39106).epsilon(1e-4));
}

TEST_CASE("sample is reproducible") {
    const std::string args = "sample --variant symmetric --alpha 0.4 --rho 2 --mu -1 -n 50 --seed 9 --stream 3";
    const Run a = run(args);
    const Run b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find('\r') == std::string::npos);
    CHECK(run(args + " --stream 4").out != a.out);
    std::istringstream in(a.out);
    CHECK(read_csv_column(in, "x") == sample_mwright(MWrightParams{0.4, 2, -1, Variant::Symmetric}, RngStream{9, 3}, 50));
    const Run js = run(args + " --format json");
    REQUIRE(js.code == 0);
    CHECK(nlohmann::json::parse(js.out)["draws"].size() == 50);
    CHECK(run("sample --alpha 0.5 --rho 1 -n 0").code == 2);
}

TEST_CASE("fit formats") {
    const std::string base = "fit -i " + one_sided_file() + " --variant one-sided --quantile-draws 20000";
    const Run text = run(base);
    REQUIRE(text.code == 0);
    CHECK(text.out.find("one-sided M-Wright fit, n = 400") == 0);

    const Run js = run(base + " --format json --seed 11");
    REQUIRE(js.code == 0);
    std::uint64_t seed = 0;
    const FitResult r = fit_from_json(nlohmann::json::parse(js.out), &seed);
    CHECK(seed == 11);
    CHECK(r.n == 400);
    CHECK(r.ci_alpha.contains(r.params.alpha));
    REQUIRE(r.ci_mu.has_value());
    CHECK(run(base + " --format json --seed 11").out == js.out);

    const Run csv = run(base + " --format csv");
    REQUIRE(csv.code == 0);
    const auto rows = lines(csv.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "parameter,estimate,lower,upper,method");
    CHECK(run(base + " -c length --format csv").out == csv.out);
}

TEST_CASE("fit writes to a file") {
    const std::string path = "cli_fit_out.json";
    std::remove(path.c_str());
    const Run r = run("fit -i " + one_sided_file() + " --variant one-sided --quantile-draws 20000 --format json -o " +
                      path);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string body = slurp(path);
    CHECK(body.find('\r') == std::string::npos);
    CHECK_NOTHROW(fit_from_json(nlohmann::json::parse(body)));
}

TEST_CASE("fit exit codes") {
    const std::string tiny = write_data("cli_tiny.csv", {1.0, 2.0, 3.5, 4.0, 7.0});
    CHECK(run("fit -i " + tiny + " --variant one-sided").code == 3);
    const std::string bad = "cli_bad.csv";
    std::ofstream(bad) << "1\n2\nthree\n";
    CHECK(run("fit -i " + bad + " --variant one-sided").code == 2);
    CHECK(run("fit -i missing_file.csv --variant one-sided").code == 2);
    CHECK(run("fit -i " + one_sided_file() + " -c nope --variant one-sided").code == 2);
    CHECK(run("fit -i " + one_sided_file() + " --variant sideways").code == 2);
    CHECK(run("fit -i " + one_sided_file() + " --variant symmetric --location mean --known-mu 0").code == 2);
    CHECK(run("fit -i " + one_sided_file() + " --variant one-sided --level 1.5").code == 2);
}

TEST_CASE("fit with a known location") {
    const Run r = run("fit -i " + one_sided_file() + " --variant one-sided --known-mu 25 --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["params"]["mu"] == 25.0);
    CHECK(j["ci"]["mu"].is_null());
}

TEST_CASE("gof") {
    const std::string fixed = "gof -i " + one_sided_file() + " --variant one-sided --alpha 0.473 --rho 4.39 --mu 25.02 "
                              "--sims 20 --format json";
    const Run r = run(fixed);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["sims"] == 20);
    CHECK(j["mean_p"].get<double>() > 0.05);
    CHECK(run(fixed).out == r.out);
    CHECK(run("gof -i " + one_sided_file() + " --variant one-sided --alpha 0.5 --sims 5").code == 2);
    const Run fitted = run("gof -i " + one_sided_file() + " --variant one-sided --sims 5 --quantile-draws 20000 "
                           "--format csv");
    REQUIRE(fitted.code == 0);
    CHECK(lines(fitted.out)[0] == "alpha,rho,mu,variant,sims,mean_p");
}

TEST_CASE("simulate") {
    const std::string args = "simulate bias --preset table1 --replicates 20 --sizes 50 --format csv --seed 4";
    const Run r = run(args);
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    CHECK(rows[0] == "case,alpha,rho,mu,n,parameter,metric,value");
    CHECK(rows.size() == 1 + 4 * 2 * 2);
    CHECK(run(args + " --threads 2").out == r.out);

    const Run cov = run("simulate coverage --preset table5 --replicates 10 --sizes 30 --bootstrap-b 100 "
                        "--quantile-draws 20000 --format json");
    REQUIRE(cov.code == 0);
    const auto j = nlohmann::json::parse(cov.out);
    CHECK(j["preset"] == "table5");
    CHECK(j["kind"] == "coverage");
    CHECK(j["cells"].size() == 4 * 3);
    CHECK(j["cells"][0]["coverage_bootstrap"].is_number());

    CHECK(run("simulate bias --preset table9 --replicates 5").code == 2);
    CHECK(run("simulate coverage --preset table1 --bootstrap --no-bootstrap").code == 2);
    CHECK(run("simulate average --preset table1").code == 2);
}
