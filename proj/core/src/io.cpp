#include "formalframes/io.hpp"

#include <string>
#include <utility>

namespace ff {

namespace {

/// Runs a reader and turns JSON type and key errors into ShapeError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Json::exception& e) {
        throw ShapeError(std::string("malformed ") + what + ": " + e.what());
    }
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw ShapeError(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::vector<LowerTensor> tensors_from_json(const Json& j)
{
    if (!j.is_array()) throw ShapeError("'tensors' must be an array");
    std::vector<LowerTensor> out;
    for (const auto& t : j) out.push_back(tensor_from_json(t));
    return out;
}

Json tensors_to_json(const std::vector<LowerTensor>& ts)
{
    Json out = Json::array();
    for (const auto& t : ts) out.push_back(to_json(t));
    return out;
}

std::vector<Polynomial> polynomials_from_json(const Json& j, int vars)
{
    if (!j.is_array()) throw ShapeError("polynomial list must be an array");
    std::vector<Polynomial> out;
    for (const auto& p : j) out.push_back(polynomial_from_json(p, vars));
    return out;
}

Json polynomials_to_json(const std::vector<Polynomial>& ps)
{
    Json out = Json::array();
    for (const auto& p : ps) out.push_back(to_json(p));
    return out;
}

}  // namespace

Json to_json(const LowerTensor& t) { return Json{{"n", t.dim()}, {"k", t.order()}, {"entries", t.entries()}}; }

LowerTensor tensor_from_json(const Json& j)
{
    return guarded("tensor", [&] {
        const int n = field(j, "n").get<int>();
        const int k = field(j, "k").get<int>();
        if (n < 1 || k < 0) throw ShapeError("tensor needs n >= 1 and k >= 0");
        return LowerTensor(n, k, field(j, "entries").get<std::vector<double>>());
    });
}

Json to_json(const JetGroupElement& a) { return Json{{"n", a.dim()}, {"r", a.order()}, {"tensors", tensors_to_json(a.tensors())}}; }

JetGroupElement jet_from_json(const Json& j)
{
    return guarded("jet", [&] {
        return JetGroupElement(field(j, "n").get<int>(), field(j, "r").get<int>(), tensors_from_json(field(j, "tensors")));
    });
}

Json to_json(const ClassicalJet& c)
{
    Json out{{"n", c.n}, {"r", c.r}, {"tensors", tensors_to_json(c.s)}};
    if (c.base) out["base"] = *c.base;
    return out;
}

ClassicalJet classical_jet_from_json(const Json& j)
{
    return guarded("classical jet", [&] {
        ClassicalJet c{field(j, "n").get<int>(), field(j, "r").get<int>(), std::nullopt, tensors_from_json(field(j, "tensors"))};
        if (j.contains("base")) c.base = j.at("base").get<std::vector<double>>();
        if (static_cast<int>(c.s.size()) != c.r) throw ShapeError("classical jet needs r tensors");
        return c;
    });
}

Json to_json(const FrameCoords& u) { return Json{{"chart", u.chart}, {"base", u.base}, {"tensors", tensors_to_json(u.tensors)}}; }

FrameCoords frame_from_json(const Json& j)
{
    return guarded("frame", [&] {
        FrameCoords u;
        u.chart = j.contains("chart") ? j.at("chart").get<std::string>() : std::string();
        u.base = field(j, "base").get<std::vector<double>>();
        u.tensors = tensors_from_json(field(j, "tensors"));
        u.n = static_cast<int>(u.base.size());
        u.r = static_cast<int>(u.tensors.size());
        u.validate();
        return u;
    });
}

Json to_json(const Polynomial& p)
{
    Json out = Json::array();
    for (const auto& [exps, c] : p.terms()) out.push_back(Json::array({exps, c}));
    return out;
}

Polynomial polynomial_from_json(const Json& j, int vars)
{
    return guarded("polynomial", [&] {
        if (!j.is_array()) throw ShapeError("polynomial must be an array of [exponents, coefficient] terms");
        Polynomial p(vars);
        for (const auto& term : j) {
            if (!term.is_array() || term.size() != 2) throw ShapeError("polynomial term must be [exponents, coefficient]");
            const auto exps = term[0].get<Polynomial::Exponents>();
            if (static_cast<int>(exps.size()) != vars) throw ShapeError("polynomial term has the wrong number of exponents");
            for (int e : exps) {
                if (e < 0) throw ShapeError("negative exponent");
            }
            p.add_term(exps, term[1].get<double>());
        }
        return p;
    });
}

Json to_json(const SmoothMapSpec& s)
{
    switch (s.kind()) {
    case SmoothMapSpec::Kind::polynomial:
        return Json{{"kind", "polynomial"}, {"vars", s.input_dim()}, {"coeffs", polynomials_to_json(s.polynomial_components())}};
    case SmoothMapSpec::Kind::moebius:
        return Json{{"kind", "moebius"}, {"abcd", s.moebius_coefficients()}};
    case SmoothMapSpec::Kind::composite: {
        Json maps = Json::array();
        for (const auto& part : s.parts()) maps.push_back(to_json(part));
        return Json{{"kind", "composite"}, {"maps", maps}};
    }
    }
    return {};
}

SmoothMapSpec map_spec_from_json(const Json& j)
{
    return guarded("map spec", [&] {
        const auto kind = field(j, "kind").get<std::string>();
        if (kind == "polynomial") {
            return SmoothMapSpec::polynomial(polynomials_from_json(field(j, "coeffs"), field(j, "vars").get<int>()));
        }
        if (kind == "moebius") {
            const auto abcd = field(j, "abcd").get<std::vector<double>>();
            if (abcd.size() != 4) throw ShapeError("Moebius map needs four coefficients");
            return SmoothMapSpec::moebius(abcd[0], abcd[1], abcd[2], abcd[3]);
        }
        if (kind == "composite") {
            std::vector<SmoothMapSpec> maps;
            for (const auto& m : field(j, "maps")) maps.push_back(map_spec_from_json(m));
            return SmoothMapSpec::composite(std::move(maps));
        }
        throw ShapeError("unknown map kind '" + kind + "'");
    });
}

Json to_json(const PolynomialTensorField& f)
{
    return Json{{"n", f.dim()}, {"k", f.order()}, {"vars", f.vars()}, {"entries", polynomials_to_json(f.entries())}};
}

PolynomialTensorField field_from_json(const Json& j)
{
    return guarded("tensor field", [&] {
        const int vars = field(j, "vars").get<int>();
        return PolynomialTensorField(field(j, "n").get<int>(), field(j, "k").get<int>(), vars, polynomials_from_json(field(j, "entries"), vars));
    });
}

Json to_json(const ChristoffelField& g)
{
    Json charts = Json::object();
    for (const auto& [name, f] : g.charts()) charts[name] = to_json(f);
    return Json{{"n", g.dim()}, {"charts", charts}};
}

ChristoffelField christoffel_from_json(const Json& j)
{
    return guarded("Christoffel field", [&] {
        ChristoffelField g(field(j, "n").get<int>());
        for (const auto& [name, f] : field(j, "charts").items()) g.set_chart(name, field_from_json(f));
        return g;
    });
}

Json to_json(const DeformationPair& d)
{
    Json charts = Json::object();
    for (const auto& [name, c] : d.charts()) charts[name] = Json{{"theta", to_json(c.theta)}, {"mu", to_json(c.mu)}};
    return Json{{"n", d.dim()}, {"charts", charts}};
}

DeformationPair deformation_pair_from_json(const Json& j)
{
    return guarded("deformation pair", [&] {
        DeformationPair d(field(j, "n").get<int>());
        for (const auto& [name, c] : field(j, "charts").items()) {
            d.set_chart(name, DeformationChart{field_from_json(field(c, "theta")), field_from_json(field(c, "mu"))});
        }
        return d;
    });
}

Json to_json(const FoliationAtlas& a)
{
    Json transitions = Json::array();
    for (const auto& t : a.transitions()) transitions.push_back(Json{{"from", t.from}, {"to", t.to}, {"map", polynomials_to_json(t.map)}});
    return Json{{"m", a.dim()}, {"q", a.codim()}, {"charts", a.charts()}, {"transitions", transitions}};
}

FoliationAtlas foliation_atlas_from_json(const Json& j)
{
    return guarded("foliation atlas", [&] {
        const int m = field(j, "m").get<int>();
        FoliationAtlas a(m, field(j, "q").get<int>());
        for (const auto& name : field(j, "charts")) a.add_chart(name.get<std::string>());
        for (const auto& t : field(j, "transitions")) {
            a.add_transition(FoliationTransition{field(t, "from").get<std::string>(), field(t, "to").get<std::string>(),
                                                 polynomials_from_json(field(t, "map"), m)});
        }
        return a;
    });
}

Json to_json(const GarciaCoords& g) { return Json{{"chart", g.chart}, {"x", g.x}, {"y", to_json(g.y)}, {"z", to_json(g.z)}}; }

GarciaCoords garcia_from_json(const Json& j)
{
    return guarded("Garcia coordinates", [&] {
        GarciaCoords g{field(j, "x").get<std::vector<double>>(), tensor_from_json(field(j, "y")), tensor_from_json(field(j, "z")),
                       j.contains("chart") ? j.at("chart").get<std::string>() : std::string()};
        g.validate();
        return g;
    });
}

Json to_json(const AsymmetryWitness& w)
{
    return Json{{"gap", w.gap}, {"upper", w.upper}, {"lower", w.lower}, {"slots", {w.slot_a, w.slot_b}}};
}

Json to_json(const TorsionSweep& s)
{
    Json per_type = Json::object();
    for (const auto& [label, value] : s.per_type) per_type[label] = value;
    return Json{{"max", s.max}, {"witness", s.witness}, {"pair", s.pair}, {"per_type", per_type}};
}

Json to_json(const RealizabilityReport& r)
{
    Json witness{{"torsion_type", r.torsions.witness}, {"direction_pair", r.torsions.pair}};
    if (r.asymmetry_order > 0) {
        witness["asymmetry"] = to_json(r.asymmetry_witness);
        witness["asymmetry"]["order"] = r.asymmetry_order;
    }
    Json per_type = Json::object();
    for (const auto& [label, value] : r.torsions.per_type) per_type[label] = value;
    return Json{{"realizable", r.realizable},
                {"max_torsion", r.max_torsion},
                {"torsion_scale", r.torsions.scale},
                {"max_asymmetry", r.max_asymmetry},
                {"witness", witness},
                {"torsion_verdict", r.torsion_verdict},
                {"symmetry_verdict", r.symmetry_verdict},
                {"per_type", per_type}};
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ShapeError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace ff
