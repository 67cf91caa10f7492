#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/io.hpp"

namespace {

void add_common(CLI::App* cmd, ff::cli::CommonOptions& o, bool with_tolerances)
{
    cmd->add_option("--input", o.input, "JSON input file ('-' for stdin); a seeded random instance is used when omitted");
    cmd->add_option("--output", o.output, "JSON output file (default stdout)");
    cmd->add_option("--seed", o.seed, "seed for generated inputs")->capture_default_str();
    cmd->add_option("--n", o.n, "dimension of generated inputs (1..3)")->capture_default_str();
    cmd->add_option("--r", o.r, "order of generated inputs (1..4)")->capture_default_str();
    if (with_tolerances) {
        cmd->add_option("--atol", o.atol, "absolute tolerance");
        cmd->add_option("--rtol", o.rtol, "relative tolerance");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Formal frames of manifolds: jets, canonical forms, torsions and verification suites"};
    app.require_subcommand(1);

    ff::cli::CommonOptions torsion;
    ff::cli::CommonOptions compose;
    ff::cli::CommonOptions invert;
    ff::cli::CommonOptions kappa;
    ff::cli::CommonOptions schwarzian;
    ff::cli::VerifyOptions verify;
    verify.common.n = 3;
    verify.common.r = 4;

    auto* c_torsion = app.add_subcommand("torsion", "torsions and realizability of a formal frame");
    add_common(c_torsion, torsion, true);
    auto* c_compose = app.add_subcommand("compose", "product of two jet group elements {\"a\", \"b\"}");
    add_common(c_compose, compose, false);
    auto* c_invert = app.add_subcommand("invert", "inverse of a jet group element");
    add_common(c_invert, invert, false);
    auto* c_kappa = app.add_subcommand("kappa", "symmetrization of a jet group element");
    add_common(c_kappa, kappa, true);
    auto* c_schwarzian = app.add_subcommand("schwarzian", "Schwarzian of {\"map\", \"point\"} or of a one-dimensional frame");
    add_common(c_schwarzian, schwarzian, false);
    auto* c_verify = app.add_subcommand("verify", "run the seeded property suites");
    add_common(c_verify, verify.common, true);
    c_verify->add_option("--trials", verify.trials, "trials per suite")->capture_default_str();
    c_verify->add_option("--only", verify.only, "run suites whose names start with this prefix (repeatable)");
    c_verify->add_flag("--list", verify.list, "print suite names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ff::cli::kOk : ff::cli::kInputError;
    }

    try {
        if (*c_torsion) return ff::cli::cmd_torsion(torsion);
        if (*c_compose) return ff::cli::cmd_compose(compose);
        if (*c_invert) return ff::cli::cmd_invert(invert);
        if (*c_kappa) return ff::cli::cmd_kappa(kappa);
        if (*c_schwarzian) return ff::cli::cmd_schwarzian(schwarzian);
        if (*c_verify) return ff::cli::cmd_verify(verify);
    } catch (const ff::SingularError& e) {
        std::cerr << "singular: " << e.what() << "\n";
        return ff::cli::kSingular;
    } catch (const ff::ConsistencyError& e) {
        std::cerr << "consistency: " << e.what() << "\n";
        return ff::cli::kPropertyFailure;
    } catch (const ff::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return ff::cli::kInputError;
    } catch (const ff::Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return ff::cli::kInputError;
    }
    return ff::cli::kInputError;
}
