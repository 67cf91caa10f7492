#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sampling.hpp"
#include "suites.hpp"
#include "formalframes/bundle.hpp"
#include "formalframes/jetgroup.hpp"

namespace ff::verify {

/// Worst residual and trial count accumulated by one suite.
struct SuiteOutcome {
    double worst = 0.0;
    int trials = 0;
    std::string note;

    void record(double residual)
    {
        if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
        worst = std::max(worst, residual);
    }
};

struct SuiteContext {
    Sampler rng;
    int trials = 0;
    int n_max = 0;
    int r_max = 0;

    /// (n, r) cells inside both the configured and the suite's own ranges.
    [[nodiscard]] std::vector<std::pair<int, int>> cells(int n_lo, int n_hi, int r_lo, int r_hi) const
    {
        std::vector<std::pair<int, int>> out;
        for (int n = n_lo; n <= std::min(n_hi, n_max); ++n) {
            for (int r = r_lo; r <= std::min(r_hi, r_max); ++r) out.emplace_back(n, r);
        }
        return out;
    }
};

struct SuiteDef {
    std::string name;
    std::string property;
    Measure measure;
    double tolerance;
    std::function<SuiteOutcome(SuiteContext&)> run;
};

/// Registration hooks implemented per module group.
void register_algebra_suites(std::vector<SuiteDef>& out);
void register_forms_suites(std::vector<SuiteDef>& out);
void register_geometry_suites(std::vector<SuiteDef>& out);

/// max |a - b| / max(1, max |a|, max |b|).
inline double relative_diff(const LowerTensor& a, const LowerTensor& b)
{
    return max_abs_diff(a, b) / std::max({1.0, max_abs(a), max_abs(b)});
}

inline double relative_diff(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, relative_diff(a[q], b[q]));
    return worst;
}

inline double abs_diff(const std::vector<LowerTensor>& a, const std::vector<LowerTensor>& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, max_abs_diff(a[q], b[q]));
    return worst;
}

inline double abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, std::abs(a[q] - b[q]));
    return worst;
}

inline double relative_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double scale = 1.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    for (double x : b) scale = std::max(scale, std::abs(x));
    return abs_diff(a, b) / scale;
}

}  // namespace ff::verify
