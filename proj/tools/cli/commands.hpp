#pragma once

/**
 * @file commands.hpp
 * @brief Subcommands of the formalframes command-line tool.
 *
 * Every command reads JSON (from --input, or a seeded random instance when
 * --input is absent), writes JSON to --output or stdout and reports errors on
 * stderr. Exit codes: 0 success, 1 property failure, 2 input error,
 * 3 numerical singularity.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ff::cli {

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kInputError = 2, kSingular = 3 };

struct CommonOptions {
    std::string input;   ///< empty: generate a random instance
    std::string output;  ///< empty: stdout
    std::uint64_t seed = 1;
    int n = 2;
    int r = 3;
    std::optional<double> atol;
    std::optional<double> rtol;
};

struct VerifyOptions {
    CommonOptions common;
    int trials = 200;
    std::vector<std::string> only;
    bool list = false;
};

int cmd_torsion(const CommonOptions& o);
int cmd_compose(const CommonOptions& o);
int cmd_invert(const CommonOptions& o);
int cmd_kappa(const CommonOptions& o);
int cmd_schwarzian(const CommonOptions& o);
int cmd_verify(const VerifyOptions& o);

}  // namespace ff::cli
