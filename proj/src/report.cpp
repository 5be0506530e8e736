#include "mwright/report.hpp"

#include <ostream>
#include <string>

#include "mwright/errors.hpp"
#include "mwright/format.hpp"

namespace mwright {

namespace {

nlohmann::json interval(const ConfidenceInterval& c) { return nlohmann::json::array({c.lower, c.upper}); }

CiMethod parse_method(const std::string& s) {
    for (CiMethod m : {CiMethod::DeltaMethod, CiMethod::OrderStatistic, CiMethod::MeanCLT, CiMethod::MedianCLT,
                       CiMethod::BootstrapPercentile}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw InputError("unknown interval method '" + s + "'");
}

LocationEstimator parse_location(const std::string& s) {
    for (LocationEstimator e :
         {LocationEstimator::Min, LocationEstimator::Mean, LocationEstimator::Median, LocationEstimator::Known}) {
        if (to_string(e) == s) {
            return e;
        }
    }
    throw InputError("unknown location estimator '" + s + "'");
}

ConfidenceInterval read_interval(const nlohmann::json& j, double level, CiMethod method) {
    if (!j.is_array() || j.size() != 2) {
        throw InputError("interval must be a [lower, upper] pair");
    }
    return ConfidenceInterval{j[0].get<double>(), j[1].get<double>(), level, method};
}

}  // namespace

nlohmann::json fit_to_json(const FitResult& r, std::uint64_t seed) {
    nlohmann::json j;
    j["params"] = {{"alpha", r.params.alpha},
                   {"rho", r.params.rho},
                   {"mu", r.params.mu},
                   {"variant", std::string(to_string(r.params.variant))}};
    j["ci"] = {{"alpha", interval(r.ci_alpha)},
               {"rho", interval(r.ci_rho)},
               {"mu", r.ci_mu ? interval(*r.ci_mu) : nlohmann::json(nullptr)}};
    j["ci_method"] = {{"alpha", std::string(to_string(r.ci_alpha.method))},
                      {"rho", std::string(to_string(r.ci_rho.method))},
                      {"mu", r.ci_mu ? nlohmann::json(std::string(to_string(r.ci_mu->method)))
                                     : nlohmann::json(nullptr)}};
    j["level"] = r.ci_alpha.level;
    j["n"] = r.n;
    j["corr_alpha_rho"] = r.corr_alpha_rho;
    j["location_estimator"] = std::string(to_string(r.location_estimator_used));
    j["diagnostics"] = r.diagnostics;
    j["seed"] = seed;
    return j;
}

FitResult fit_from_json(const nlohmann::json& j, std::uint64_t* seed) {
    try {
        FitResult r;
        const auto& p = j.at("params");
        r.params.alpha = p.at("alpha").get<double>();
        r.params.rho = p.at("rho").get<double>();
        r.params.mu = p.at("mu").get<double>();
        r.params.variant = parse_variant(p.at("variant").get<std::string>());
        const double level = j.at("level").get<double>();
        const auto& ci = j.at("ci");
        const auto& methods = j.at("ci_method");
        r.ci_alpha = read_interval(ci.at("alpha"), level, parse_method(methods.at("alpha").get<std::string>()));
        r.ci_rho = read_interval(ci.at("rho"), level, parse_method(methods.at("rho").get<std::string>()));
        if (!ci.at("mu").is_null()) {
            r.ci_mu = read_interval(ci.at("mu"), level, parse_method(methods.at("mu").get<std::string>()));
        }
        r.n = j.at("n").get<std::size_t>();
        r.corr_alpha_rho = j.at("corr_alpha_rho").get<double>();
        r.location_estimator_used = parse_location(j.at("location_estimator").get<std::string>());
        r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
        r.cov = asymptotic_cov(r.params.alpha, r.params.rho);
        if (seed) {
            *seed = j.at("seed").get<std::uint64_t>();
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed fit document: ") + e.what());
    }
}

void write_fit_csv(const FitResult& r, std::ostream& out) {
    out << "parameter,estimate,lower,upper,method\n";
    auto row = [&](const char* name, double est, const ConfidenceInterval& c) {
        out << name << ',' << format_full(est) << ',' << format_full(c.lower) << ',' << format_full(c.upper) << ','
            << to_string(c.method) << '\n';
    };
    if (r.ci_mu) {
        row("mu", r.params.mu, *r.ci_mu);
    }
    row("alpha", r.params.alpha, r.ci_alpha);
    row("rho", r.params.rho, r.ci_rho);
}

void write_fit_text(const FitResult& r, std::ostream& out) {
    const int pct = static_cast<int>(r.ci_alpha.level * 100.0 + 0.5);
    out << to_string(r.params.variant) << " M-Wright fit, n = " << r.n << ", " << pct << "% intervals\n";
    auto row = [&](const char* name, double est, const std::optional<ConfidenceInterval>& c) {
        out << "  " << name << "  " << format_short(est);
        if (c) {
            out << "  (" << format_short(c->lower) << ", " << format_short(c->upper) << ")  " << to_string(c->method);
        } else {
            out << "  (known)";
        }
        out << '\n';
    };
    row("mu   ", r.params.mu, r.ci_mu);
    row("alpha", r.params.alpha, r.ci_alpha);
    row("rho  ", r.params.rho, r.ci_rho);
    out << "  corr(alpha, rho)  " << format_short(r.corr_alpha_rho) << '\n';
    out << "  location estimator  " << to_string(r.location_estimator_used) << '\n';
    for (const auto& d : r.diagnostics) {
        out << "  note: " << d << '\n';
    }
}

}  // namespace mwright
