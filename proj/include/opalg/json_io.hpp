#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "opalg/duality.hpp"
#include "opalg/superop.hpp"

// Shared textual format. A complex scalar is a two-element array [re, im];
// a matrix is a row-major array of rows; an element is
// {"algebra": {"blocks": [n1, ...]}, "data": [block matrices in order]};
// a superoperator is {"domain": {...}, "codomain": {...},
// "repr": "superoperator" | "kraus", "data": matrix | [matrices]};
// a functional is its density element plus "role": "functional".

namespace opalg::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json algebra_to_json(const FdCStarAlgebra& a);
FdCStarAlgebra algebra_from_json(const json& j);

json element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const json& j);

json superop_to_json(const SuperOperator& f);
/// Kraus form; only meaningful for CP maps between single matrix blocks.
json kraus_to_json(const SuperOperator& f, const std::vector<ComplexMatrix>& kraus);
SuperOperator superop_from_json(const json& j);

json functional_to_json(const Functional& phi);
Functional functional_from_json(const json& j);

/// Parses a JSON document from a file; ParseError carries the file name and
/// the parser's position diagnostics.
json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace opalg::io
