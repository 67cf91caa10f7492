#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "sampling.hpp"
#include "suites.hpp"
#include "formalframes/io.hpp"

namespace ff::cli {

namespace {

Json read_input(const std::string& path)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path);
        if (!in) throw ShapeError("cannot open input file '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return parse_json(text);
}

void write_output(const std::string& path, const Json& doc)
{
    const std::string text = doc.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ShapeError("cannot open output file '" + path + "'");
    out << text;
}

void require_desk_scale(const CommonOptions& o)
{
    if (o.n < 1 || o.n > 3) throw DomainError("--n must lie in 1..3");
    if (o.r < 1 || o.r > 4) throw DomainError("--r must lie in 1..4");
}

JetGroupElement input_jet(const CommonOptions& o, verify::Sampler& rng, const Json& doc, const char* key)
{
    if (!o.input.empty()) return jet_from_json(key ? doc.at(key) : doc);
    require_desk_scale(o);
    return rng.jet(o.n, o.r);
}

}  // namespace

int cmd_torsion(const CommonOptions& o)
{
    FrameCoords u;
    if (o.input.empty()) {
        require_desk_scale(o);
        verify::Sampler rng(o.seed);
        u = rng.frame(o.n, o.r);
    } else {
        u = frame_from_json(read_input(o.input));
    }
    if (u.r < 2) throw DomainError("torsion needs a frame of order r >= 2");
    const RealizabilityReport report = realizability_report(u, o.atol.value_or(1e-8));
    Json doc = to_json(report);
    if (o.input.empty()) doc["input"] = to_json(u);
    write_output(o.output, doc);
    if (report.torsion_verdict != report.symmetry_verdict) {
        std::cerr << "torsion and symmetry verdicts disagree\n";
        return kPropertyFailure;
    }
    return kOk;
}

int cmd_compose(const CommonOptions& o)
{
    verify::Sampler rng(o.seed);
    const Json doc = o.input.empty() ? Json() : read_input(o.input);
    const JetGroupElement a = input_jet(o, rng, doc, "a");
    const JetGroupElement b = input_jet(o, rng, doc, "b");
    Json out{{"product", to_json(jet_compose(a, b))}};
    if (o.input.empty()) out["input"] = Json{{"a", to_json(a)}, {"b", to_json(b)}};
    write_output(o.output, out);
    return kOk;
}

int cmd_invert(const CommonOptions& o)
{
    verify::Sampler rng(o.seed);
    const Json doc = o.input.empty() ? Json() : read_input(o.input);
    const JetGroupElement a = input_jet(o, rng, doc, nullptr);
    Json out{{"inverse", to_json(jet_inverse(a))}};
    if (o.input.empty()) out["input"] = to_json(a);
    write_output(o.output, out);
    return kOk;
}

int cmd_kappa(const CommonOptions& o)
{
    verify::Sampler rng(o.seed);
    const Json doc = o.input.empty() ? Json() : read_input(o.input);
    const JetGroupElement a = input_jet(o, rng, doc, nullptr);
    const ClassicalCheck check = is_classical(a, o.atol.value_or(1e-9));
    Json out{{"kappa", to_json(kappa_project(a))}, {"classical", check.classical}};
    if (o.input.empty()) out["input"] = to_json(a);
    write_output(o.output, out);
    return kOk;
}

int cmd_schwarzian(const CommonOptions& o)
{
    Json out;
    if (o.input.empty()) {
        verify::Sampler rng(o.seed);
        const double x = rng.uniform(-1.0, 1.0);
        const SmoothMapSpec m = rng.moebius(x);
        const TransitionJet t = transition_jet(m, std::vector<double>{x}, 3);
        out = Json{{"schwarzian", schwarzian(t.D[0][0], t.D[1][0], t.D[2][0])}, {"input", Json{{"map", to_json(m)}, {"point", x}}}};
    } else {
        const Json doc = read_input(o.input);
        if (doc.contains("map")) {
            const SmoothMapSpec m = map_spec_from_json(doc.at("map"));
            if (m.input_dim() != 1 || m.output_dim() != 1) throw ShapeError("schwarzian needs a map of one variable");
            if (!doc.contains("point") || !doc.at("point").is_number()) throw ShapeError("missing numeric 'point'");
            const TransitionJet t = transition_jet(m, std::vector<double>{doc.at("point").get<double>()}, 3);
            out = Json{{"schwarzian", schwarzian(t.D[0][0], t.D[1][0], t.D[2][0])}};
        } else {
            out = Json{{"schwarzian", schwarzian(frame_from_json(doc))}};
        }
    }
    write_output(o.output, out);
    return kOk;
}

int cmd_verify(const VerifyOptions& o)
{
    if (o.list) {
        for (const auto& name : verify::suite_names()) std::cout << name << "\n";
        return kOk;
    }
    verify::VerifyConfig config;
    config.seed = o.common.seed;
    config.trials = o.trials;
    config.n_max = o.common.n;
    config.r_max = o.common.r;
    config.atol = o.common.atol;
    config.rtol = o.common.rtol;
    config.only = o.only;
    config.validate();
    const auto results = verify::run_verification(config);
    const Json report = verify::verification_report(config, results);
    write_output(o.common.output, report);
    for (const auto& r : results) {
        if (!r.passed) std::cerr << "FAIL " << r.name << " worst=" << r.worst << " tol=" << r.tolerance << "\n";
    }
    return report.at("passed").get<bool>() ? kOk : kPropertyFailure;
}

}  // namespace ff::cli
