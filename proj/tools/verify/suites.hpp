#pragma once

/**
 * @file suites.hpp
 * @brief Seeded property suites over every module, with a JSON report.
 *
 * Each suite draws its own generator from the run seed and its name, so the
 * report does not depend on which suites run or in which order. A suite
 * passes when its worst residual is at most its tolerance; suites measure
 * either absolute errors or errors relative to max(1, |value|).
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ff::verify {

enum class Measure { absolute, relative };

struct VerifyConfig {
    std::uint64_t seed = 1;
    int trials = 200;  ///< trials per suite (per (n, r) cell for suites that sweep cells)
    int n_max = 3;
    int r_max = 4;
    std::optional<double> atol;  ///< replaces the tolerance of absolute suites
    std::optional<double> rtol;  ///< replaces the tolerance of relative suites
    std::vector<std::string> only;  ///< name prefixes to run; empty runs everything

    /// Throws DomainError unless trials >= 1, 1 <= n_max <= 3 and 1 <= r_max <= 4.
    void validate() const;
};

struct SuiteResult {
    std::string name;
    std::string property;
    Measure measure = Measure::absolute;
    double tolerance = 0.0;
    double worst = 0.0;
    int trials = 0;
    bool passed = false;
    std::string note;
};

/// Names of all registered suites in sorted order.
[[nodiscard]] std::vector<std::string> suite_names();

/// Runs the selected suites; results are sorted by name.
[[nodiscard]] std::vector<SuiteResult> run_verification(const VerifyConfig& config);

/// The report document: config echo, per-suite results and the overall verdict.
[[nodiscard]] nlohmann::json verification_report(const VerifyConfig& config, const std::vector<SuiteResult>& results);

}  // namespace ff::verify
