#pragma once

/**
 * @file io.hpp
 * @brief JSON serialization of library values.
 *
 * Readers validate shapes and throw ShapeError for documents that do not
 * match the expected layout, including type mismatches inside the JSON.
 *
 * Formats:
 * - LowerTensor: {"n", "k", "entries": [row-major]}
 * - JetGroupElement: {"n", "r", "tensors": [LowerTensor, ...]}
 * - ClassicalJet: the same, plus "base" when present
 * - FrameCoords: {"chart", "base", "tensors"}; n and r are read from the data
 * - Polynomial: list of terms [[e_1, ..., e_m], c]; the variable count comes from the owner
 * - SmoothMapSpec: {"kind": "polynomial", "vars", "coeffs": [Polynomial, ...]},
 *   {"kind": "moebius", "abcd": [a, b, c, d]} or {"kind": "composite", "maps": [...]}
 * - PolynomialTensorField: {"n", "k", "vars", "entries": [Polynomial, ...]}
 * - ChristoffelField: {"n", "charts": {name: PolynomialTensorField}}
 * - DeformationPair: {"n", "charts": {name: {"theta": field, "mu": field}}}
 * - FoliationAtlas: {"m", "q", "charts": [name, ...], "transitions": [{"from", "to", "map": [Polynomial, ...]}]}
 * - GarciaCoords: {"chart", "x", "y", "z"}
 */

#include <nlohmann/json.hpp>

#include "formalframes/bundle.hpp"
#include "formalframes/charts.hpp"
#include "formalframes/connection.hpp"
#include "formalframes/deform.hpp"
#include "formalframes/fields.hpp"
#include "formalframes/foliation.hpp"
#include "formalframes/forms.hpp"
#include "formalframes/garcia.hpp"
#include "formalframes/jetgroup.hpp"

namespace ff {

using Json = nlohmann::json;

[[nodiscard]] Json to_json(const LowerTensor& t);
[[nodiscard]] LowerTensor tensor_from_json(const Json& j);

[[nodiscard]] Json to_json(const JetGroupElement& a);
[[nodiscard]] JetGroupElement jet_from_json(const Json& j);

[[nodiscard]] Json to_json(const ClassicalJet& c);
[[nodiscard]] ClassicalJet classical_jet_from_json(const Json& j);

[[nodiscard]] Json to_json(const FrameCoords& u);
[[nodiscard]] FrameCoords frame_from_json(const Json& j);

[[nodiscard]] Json to_json(const Polynomial& p);
[[nodiscard]] Polynomial polynomial_from_json(const Json& j, int vars);

[[nodiscard]] Json to_json(const SmoothMapSpec& s);
[[nodiscard]] SmoothMapSpec map_spec_from_json(const Json& j);

[[nodiscard]] Json to_json(const PolynomialTensorField& f);
[[nodiscard]] PolynomialTensorField field_from_json(const Json& j);

[[nodiscard]] Json to_json(const ChristoffelField& g);
[[nodiscard]] ChristoffelField christoffel_from_json(const Json& j);

[[nodiscard]] Json to_json(const DeformationPair& d);
[[nodiscard]] DeformationPair deformation_pair_from_json(const Json& j);

[[nodiscard]] Json to_json(const FoliationAtlas& a);
[[nodiscard]] FoliationAtlas foliation_atlas_from_json(const Json& j);

[[nodiscard]] Json to_json(const GarciaCoords& g);
[[nodiscard]] GarciaCoords garcia_from_json(const Json& j);

[[nodiscard]] Json to_json(const AsymmetryWitness& w);
[[nodiscard]] Json to_json(const TorsionSweep& s);

/**
 * @brief Realizability report in the CLI layout.
 *
 * Keys: "realizable", "max_torsion", "max_asymmetry", "witness" (torsion type
 * label, direction pair and asymmetry location), "torsion_verdict",
 * "symmetry_verdict" and "per_type".
 */
[[nodiscard]] Json to_json(const RealizabilityReport& r);

/// Parses JSON text, rethrowing parse errors as ShapeError.
[[nodiscard]] Json parse_json(const std::string& text);

}  // namespace ff
