/**
 * @file acceptance.cpp
 * @brief One pass/fail line per acceptance criterion, with tolerances pinned here.
 *
 * Usage: formalframes_acceptance --cli <path> --data <dir> [--expect-fail 2,11] [--seed 1] [--trials 200]
 *
 * The suites run once in process at the full trial count. Each criterion
 * compares the worst residual of its suites with the tolerance listed below,
 * independently of the tolerance the suite itself was registered with, and
 * adds direct checks of worked examples where the criterion names them.
 * Criterion 11 drives the command-line tool. The exit code is 0 exactly when
 * the set of failing criteria equals the --expect-fail set.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "sampling.hpp"
#include "suites.hpp"
#include "formalframes/connection.hpp"
#include "formalframes/deform.hpp"
#include "formalframes/foliation.hpp"
#include "formalframes/forms.hpp"
#include "formalframes/io.hpp"

namespace {

namespace fs = std::filesystem;
using ff::verify::SuiteResult;

struct Options {
    std::string cli;
    std::string data;
    std::set<int> expect_fail;
    std::uint64_t seed = 1;
    int trials = 200;
};

/// A suite requirement: worst residual at most tol over at least min_trials trials.
struct Requirement {
    std::string suite;
    double tol;
    int min_trials = 1;
};

struct Verdict {
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            details.push_back(what);
        }
    }
};

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

void check_suites(Verdict& v, const std::map<std::string, SuiteResult>& results, const std::vector<Requirement>& reqs)
{
    for (const Requirement& q : reqs) {
        const auto it = results.find(q.suite);
        if (it == results.end()) {
            v.require(false, q.suite + " missing");
            continue;
        }
        const SuiteResult& r = it->second;
        v.require(r.worst <= q.tol, q.suite + " worst=" + fmt(r.worst) + " > " + fmt(q.tol));
        v.require(r.trials >= q.min_trials, q.suite + " ran " + std::to_string(r.trials) + " trials < " + std::to_string(q.min_trials));
    }
}

std::vector<std::string> sorted_terms(const ff::TorsionType& t)
{
    std::vector<std::string> out;
    for (const auto& w : ff::torsion_wedge_terms(t)) out.push_back(ff::format_wedge_term(w));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

/// The printed term lists of the order-2 and order-3 torsions, compared as sets.
void check_term_lists(Verdict& v)
{
    const std::vector<std::pair<ff::TorsionType, std::vector<std::string>>> expected{
        {{2, {1}}, {"theta^i_{l j1} ^ theta^l", "theta^i_{l} ^ theta^l_{j1}"}},
        {{2, {2}}, {"theta^i_{j1 l} ^ theta^l", "theta^i_{l} ^ theta^l_{j1}"}},
        {{3, {1, 3}},
         {"theta^i_{l} ^ theta^l_{j1 j2}", "theta^i_{l j1} ^ theta^l_{j2}", "theta^i_{l j2} ^ theta^l_{j1}", "theta^i_{j1 j2 l} ^ theta^l"}},
        {{3, {2, 2}},
         {"theta^i_{l} ^ theta^l_{j1 j2}", "theta^i_{j1 l} ^ theta^l_{j2}", "theta^i_{j2 l} ^ theta^l_{j1}", "theta^i_{j1 l j2} ^ theta^l"}},
    };
    for (const auto& [type, terms] : expected) v.require(sorted_terms(type) == sorted(terms), "term list of " + type.label() + " differs");
    v.require(ff::enumerate_torsion_types(3).size() == 6, "order-3 type count is not 6");
}

/// Gamma = 5 and phi = x + x^2 / 2 at 0 give hatGamma = 4 and a block product equal to diag(D phi, D phi).
void check_worked_lift(Verdict& v)
{
    const ff::SmoothMapSpec phi = ff::SmoothMapSpec::polynomial({ff::Polynomial::variable(1, 0) + ff::Polynomial::monomial(0.5, {2})});
    const ff::TransitionJet t = ff::transition_jet(phi, std::vector{0.0}, 2);
    const ff::LowerTensor gamma(1, 2, std::vector<double>{5.0});
    v.require(std::abs(ff::christoffel_transform(gamma, t)[0] - 4.0) <= 1e-12, "worked hatGamma differs from 4");
    for (double vel : {0.0, 1.0, -2.0}) {
        v.require(ff::lift_block_identity(gamma, t, std::vector{vel}).cwiseAbs().maxCoeff() <= 1e-9, "worked block product differs from identity");
    }
}

/// omega = (dy1, dy2), theta = 0, omegadot = (y2 dy1, 0): thetadot^1_1 = -dy2 is valid, thetadot^1_2 = -dy2 is not.
void check_worked_deformation(Verdict& v)
{
    const int m = 2;
    const ff::FormMatrix omega = ff::transverse_coframe(m, 2);
    const ff::FormMatrix theta(2, 2, m);
    ff::FormMatrix omega_dot(2, 1, m);
    omega_dot(0, 0).coefficient(0) = ff::Polynomial::variable(m, 1);
    ff::FormMatrix valid(2, 2, m);
    valid(0, 0).coefficient(1) = ff::Polynomial::constant(m, -1.0);
    ff::FormMatrix invalid(2, 2, m);
    invalid(0, 1).coefficient(1) = ff::Polynomial::constant(m, -1.0);
    const std::vector<double> e1{1.0, 0.0};
    const std::vector<double> e2{0.0, 1.0};
    for (const std::vector<double>& p : {std::vector{0.3, -0.7}, std::vector{-1.2, 0.4}}) {
        double good = 0.0;
        double bad = 0.0;
        for (double x : ff::deformation_equation_residual(omega, theta, omega_dot, valid, p, e1, e2)) good = std::max(good, std::abs(x));
        for (double x : ff::deformation_equation_residual(omega, theta, omega_dot, invalid, p, e1, e2)) bad = std::max(bad, std::abs(x));
        v.require(good == 0.0, "worked valid pair residual " + fmt(good));
        v.require(bad > 1e-3, "worked invalid pair residual " + fmt(bad));
    }
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const Options& o, const std::string& args)
{
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("ff_acceptance_" + std::to_string(++counter) + ".json");
    const std::string cmd = o.cli + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    fs::remove(out);
    return r;
}

/// Runs the torsion subcommand on a frame file and compares its verdict with the library report.
void check_torsion_file(Verdict& v, const Options& o, const fs::path& file, const ff::FrameCoords& u)
{
    const ff::RealizabilityReport expected = ff::realizability_report(u, 1e-8);
    const RunResult r = run_cli(o, "torsion --input " + file.string());
    if (r.code != 0) {
        v.require(false, "torsion on " + file.filename().string() + " exited " + std::to_string(r.code));
        return;
    }
    const ff::Json j = ff::parse_json(r.out);
    v.require(j.at("realizable").get<bool>() == expected.realizable, "torsion verdict differs on " + file.filename().string());
    v.require(expected.realizable == (expected.max_asymmetry <= 1e-8), "verdict disagrees with tensor symmetry on " + file.filename().string());
}

void check_cli(Verdict& v, const Options& o)
{
    const std::string args = "verify --seed " + std::to_string(o.seed) + " --trials " + std::to_string(o.trials);
    const auto start = std::chrono::steady_clock::now();
    const RunResult first = run_cli(o, args);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const RunResult second = run_cli(o, args);
    v.require(first.out == second.out && !first.out.empty(), "two seeded verify runs differ");
    v.require(first.code == 0, "verify exited " + std::to_string(first.code));
    v.require(seconds <= 120.0, "verify took " + fmt(seconds) + " s > 120 s");
    if (!first.out.empty()) {
        const ff::Json doc = ff::parse_json(first.out);
        for (const auto& s : doc.at("suites")) {
            if (!s.at("passed").get<bool>()) v.details.push_back("red suite " + s.at("name").get<std::string>());
        }
    }

    for (const char* name : {"frame_symmetric.json", "frame_asymmetric.json"}) {
        const fs::path file = fs::path(o.data) / name;
        std::ifstream in(file);
        std::stringstream ss;
        ss << in.rdbuf();
        check_torsion_file(v, o, file, ff::frame_from_json(ff::parse_json(ss.str())));
    }
    // Generated frames, half of them with a perturbed tensor, written to files and read back by the CLI.
    ff::verify::Sampler rng(ff::verify::derive_seed(o.seed, "acceptance.cli"));
    for (int t = 0; t < 12; ++t) {
        const int n = 2 + t % 2;
        const int r = 2 + t % 3;
        ff::FrameCoords u = rng.frame(n, r, true);
        if (t % 2 == 1) {
            std::vector<int> idx(static_cast<std::size_t>(r), 0);
            idx.back() = 1;
            u.tensors[static_cast<std::size_t>(r - 1)].at(0, idx) += 1e-3;
        }
        const fs::path file = fs::temp_directory_path() / ("ff_acceptance_frame_" + std::to_string(t) + ".json");
        std::ofstream(file) << ff::to_json(u).dump();
        check_torsion_file(v, o, file, ff::frame_from_json(ff::to_json(u)));
        fs::remove(file);
    }
    v.details.push_back("verify " + fmt(seconds) + " s");
}

Options parse_args(int argc, char** argv)
{
    Options o;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        const std::string value = argv[i + 1];
        if (key == "--cli") {
            o.cli = value;
        } else if (key == "--data") {
            o.data = value;
        } else if (key == "--seed") {
            o.seed = std::stoull(value);
        } else if (key == "--trials") {
            o.trials = std::stoi(value);
        } else if (key == "--expect-fail") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) o.expect_fail.insert(std::stoi(item));
            }
        } else {
            throw std::invalid_argument("unknown option " + key);
        }
    }
    if (o.cli.empty() || o.data.empty()) throw std::invalid_argument("--cli and --data are required");
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    try {
        o = parse_args(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "usage: formalframes_acceptance --cli <path> --data <dir> [--expect-fail 2,11] [--seed 1] [--trials 200]\n"
                  << e.what() << "\n";
        return 2;
    }

    ff::verify::VerifyConfig config;
    config.seed = o.seed;
    config.trials = o.trials;
    std::map<std::string, SuiteResult> results;
    for (auto& r : ff::verify::run_verification(config)) results.emplace(r.name, std::move(r));

    struct Criterion {
        int id;
        std::string title;
        std::vector<Requirement> suites;
        void (*extra)(Verdict&) = nullptr;
    };
    const std::vector<Criterion> criteria{
        {1, "group laws, closed formulas and bundle-map oracle",
         {{"jetgroup.associativity", 1e-9}, {"jetgroup.unit_inverse", 1e-9}, {"jetgroup.closed_formula", 1e-12},
          {"jetgroup.bundle_map_oracle", 1e-7}}},
        {2, "epsilon and kappa: section, homomorphisms, classical images",
         {{"jetgroup.kappa_section", 1e-14}, {"jetgroup.epsilon_homomorphism", 1e-9}, {"jetgroup.kappa_homomorphism", 1e-9}}},
        {3, "canonical form: closed form, equivariance, naturality, fundamental vectors",
         {{"forms.closed_form_r2", 1e-10}, {"forms.equivariance", 1e-8}, {"forms.naturality", 1e-8}, {"forms.fundamental_vector", 1e-10}}},
        {4, "torsions vanish iff tensors are symmetric; first torsion formula",
         {{"forms.realizability", 0.0, 500}, {"forms.first_torsion", 1e-8}}},
        {5, "structural equations on classical frames; printed term lists",
         {{"forms.structural", 1e-7}},
         check_term_lists},
        {6, "jet-bundle correspondence: inverse, pullback, closed action",
         {{"garcia.inverse", 1e-12}, {"garcia.pullback", 1e-8}, {"garcia.closed_form", 1e-12}}},
        {7, "connection sections: equivariance, charts, axioms, cocycle",
         {{"connection.section_equivariance", 1e-8}, {"connection.chart_compatibility", 1e-8}, {"connection.pullback_axioms", 1e-8},
          {"connection.cocycle", 1e-8}}},
        {8, "deformations: tangent group, pair laws, frame isomorphism, lifts",
         {{"deform.tangent_group", 1e-10}, {"deform.bracket_adjoint", 1e-10}, {"deform.pair_law", 1e-8}, {"deform.frame_iso", 1e-8},
          {"deform.lift_block", 1e-9}, {"deform.covariant", 1e-9}},
         check_worked_lift},
        {9, "Schwarzian: Moebius jets and cocycle",
         {{"forms.schwarzian_moebius", 1e-10, 100}, {"forms.schwarzian_cocycle", 1e-8}}},
        {10, "foliations: Bott residual, pushforward cocycle, deformation equation",
         {{"foliation.bott_residual", 0.0}, {"foliation.pushforward", 1e-9}, {"foliation.deformation_equation", 1e-9}},
         check_worked_deformation},
    };

    std::set<int> failed;
    auto report = [&](int id, const std::string& title, const Verdict& v) {
        std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title;
        for (const auto& d : v.details) std::cout << " | " << d;
        std::cout << "\n" << std::flush;
        if (!v.pass) failed.insert(id);
    };
    for (const Criterion& c : criteria) {
        Verdict v;
        check_suites(v, results, c.suites);
        if (c.extra != nullptr) c.extra(v);
        report(c.id, c.title, v);
    }
    {
        Verdict v;
        try {
            check_cli(v, o);
        } catch (const std::exception& e) {
            v.require(false, std::string("error: ") + e.what());
        }
        report(11, "command-line tool: seeded verify and torsion on files", v);
    }

    std::cout << "failed criteria:";
    for (int id : failed) std::cout << " " << id;
    std::cout << (failed.empty() ? " none" : "") << "\n";
    if (failed != o.expect_fail) {
        std::cout << "result: failing set differs from the expected set\n";
        return 1;
    }
    std::cout << "result: failing set matches the expected set\n";
    return 0;
}
