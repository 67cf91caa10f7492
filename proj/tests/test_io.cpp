#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sampling.hpp"
#include "formalframes/errors.hpp"
#include "formalframes/io.hpp"

namespace {

using ff::Json;

TEST(Io, TensorRoundTrip)
{
    ff::verify::Sampler rng(233);
    const ff::LowerTensor t = rng.tensor(2, 3);
    const ff::LowerTensor back = ff::tensor_from_json(Json::parse(ff::to_json(t).dump()));
    EXPECT_EQ(back.entries(), t.entries());
}

TEST(Io, JetAndFrameRoundTrip)
{
    ff::verify::Sampler rng(239);
    const ff::JetGroupElement a = rng.jet(3, 4);
    const ff::JetGroupElement a2 = ff::jet_from_json(ff::to_json(a));
    for (int k = 1; k <= 4; ++k) EXPECT_EQ(a2.tensor(k).entries(), a.tensor(k).entries());

    ff::FrameCoords u = rng.frame(2, 3);
    u.chart = "U";
    const ff::FrameCoords u2 = ff::frame_from_json(ff::to_json(u));
    EXPECT_EQ(u2.n, 2);
    EXPECT_EQ(u2.r, 3);
    EXPECT_EQ(u2.chart, "U");
    EXPECT_EQ(u2.base, u.base);
    for (std::size_t q = 0; q < 3; ++q) EXPECT_EQ(u2.tensors[q].entries(), u.tensors[q].entries());
}

TEST(Io, MapSpecRoundTrip)
{
    ff::verify::Sampler rng(241);
    const std::vector<double> p{0.1, 0.2};
    const ff::SmoothMapSpec poly = rng.polynomial_map(2, p);
    const ff::SmoothMapSpec back = ff::map_spec_from_json(ff::to_json(poly));
    EXPECT_EQ(back.evaluate(p), poly.evaluate(p));

    const ff::SmoothMapSpec comp = ff::SmoothMapSpec::composite({ff::SmoothMapSpec::moebius(1, 2, 0, 1), ff::SmoothMapSpec::moebius(0, 1, 1, 0)});
    EXPECT_EQ(ff::map_spec_from_json(ff::to_json(comp)).evaluate(std::vector{0.5}), comp.evaluate(std::vector{0.5}));
}

TEST(Io, ClassicalJetKeepsOptionalBase)
{
    ff::verify::Sampler rng(251);
    ff::ClassicalJet c = rng.classical_jet(2, 2);
    EXPECT_FALSE(ff::classical_jet_from_json(ff::to_json(c)).base.has_value());
    c.base = std::vector{1.0, 2.0};
    EXPECT_EQ(ff::classical_jet_from_json(ff::to_json(c)).base, c.base);
}

TEST(Io, MalformedDocumentsRaiseShapeError)
{
    EXPECT_THROW((void)ff::parse_json("{\"n\": 2,"), ff::ShapeError);
    EXPECT_THROW((void)ff::tensor_from_json(Json{{"n", 2}, {"k", 1}, {"entries", {1.0, 2.0, 3.0}}}), ff::ShapeError);
    EXPECT_THROW((void)ff::tensor_from_json(Json{{"n", "two"}, {"k", 1}, {"entries", {1.0}}}), ff::ShapeError);
    EXPECT_THROW((void)ff::frame_from_json(Json{{"base", {0.0}}}), ff::ShapeError);
    EXPECT_THROW((void)ff::map_spec_from_json(Json{{"kind", "spline"}}), ff::ShapeError);
}

TEST(Io, RealizabilityReportLayout)
{
    ff::verify::Sampler rng(257);
    const Json j = ff::to_json(ff::realizability_report(rng.frame(2, 3, true)));
    for (const char* key : {"realizable", "max_torsion", "max_asymmetry", "witness", "torsion_verdict", "symmetry_verdict", "per_type"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(j.at("realizable").get<bool>());
}

}  // namespace
