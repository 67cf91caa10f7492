#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "suite_support.hpp"
#include "formalframes/errors.hpp"

namespace ff::verify {

namespace {

std::vector<SuiteDef> registry()
{
    std::vector<SuiteDef> out;
    register_algebra_suites(out);
    register_forms_suites(out);
    register_geometry_suites(out);
    std::sort(out.begin(), out.end(), [](const SuiteDef& a, const SuiteDef& b) { return a.name < b.name; });
    return out;
}

bool selected(const VerifyConfig& config, const std::string& name)
{
    if (config.only.empty()) return true;
    return std::any_of(config.only.begin(), config.only.end(), [&](const std::string& p) { return name.rfind(p, 0) == 0; });
}

/// JSON numbers cannot hold infinity; report it as a string.
nlohmann::json number(double x)
{
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

}  // namespace

void VerifyConfig::validate() const
{
    if (trials < 1) throw DomainError("trials must be at least 1");
    if (n_max < 1 || n_max > 3) throw DomainError("n must lie in 1..3");
    if (r_max < 1 || r_max > 4) throw DomainError("r must lie in 1..4");
    if (atol && !(*atol >= 0.0)) throw DomainError("atol must be non-negative");
    if (rtol && !(*rtol >= 0.0)) throw DomainError("rtol must be non-negative");
}

std::vector<std::string> suite_names()
{
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
}

std::vector<SuiteResult> run_verification(const VerifyConfig& config)
{
    config.validate();
    std::vector<SuiteResult> results;
    for (const auto& def : registry()) {
        if (!selected(config, def.name)) continue;
        SuiteResult res{def.name, def.property, def.measure, def.tolerance, 0.0, 0, false, {}};
        if (def.measure == Measure::absolute && config.atol) res.tolerance = *config.atol;
        if (def.measure == Measure::relative && config.rtol) res.tolerance = *config.rtol;
        SuiteContext ctx{Sampler(derive_seed(config.seed, def.name)), config.trials, config.n_max, config.r_max};
        try {
            const SuiteOutcome o = def.run(ctx);
            res.worst = o.worst;
            res.trials = o.trials;
            res.note = o.note;
            res.passed = o.worst <= res.tolerance;
            if (o.trials == 0) res.note = "no (n, r) cell in range";
        } catch (const std::exception& e) {
            res.worst = std::numeric_limits<double>::infinity();
            res.passed = false;
            res.note = std::string("error: ") + e.what();
        }
        results.push_back(std::move(res));
    }
    return results;
}

nlohmann::json verification_report(const VerifyConfig& config, const std::vector<SuiteResult>& results)
{
    nlohmann::json suites = nlohmann::json::array();
    int failed = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        nlohmann::json s{{"name", r.name},
                         {"property", r.property},
                         {"measure", r.measure == Measure::absolute ? "absolute" : "relative"},
                         {"tolerance", r.tolerance},
                         {"worst", number(r.worst)},
                         {"trials", r.trials},
                         {"passed", r.passed}};
        if (!r.note.empty()) s["note"] = r.note;
        suites.push_back(std::move(s));
    }
    nlohmann::json cfg{{"seed", config.seed}, {"trials", config.trials}, {"n", config.n_max}, {"r", config.r_max}};
    if (config.atol) cfg["atol"] = *config.atol;
    if (config.rtol) cfg["rtol"] = *config.rtol;
    if (!config.only.empty()) cfg["only"] = config.only;
    return nlohmann::json{{"config", cfg},
                          {"suites", suites},
                          {"passed", failed == 0},
                          {"failed", failed},
                          {"total", static_cast<int>(results.size())}};
}

}  // namespace ff::verify
