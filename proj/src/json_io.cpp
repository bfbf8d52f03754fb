#include "opalg/json_io.hpp"

#include <fstream>

#include "opalg/errors.hpp"

namespace opalg::io {

namespace {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex scalar must be a two-element numeric array [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
    return *it;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw ParseError("matrix rows must be non-empty arrays");
    const std::size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ParseError("matrix row " + std::to_string(i) + " has the wrong length");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
    }
    return m;
}

json algebra_to_json(const FdCStarAlgebra& a) {
    return json{{"blocks", a.block_dims()}};
}

FdCStarAlgebra algebra_from_json(const json& j) {
    const json& blocks = field(j, "blocks");
    if (!blocks.is_array() || blocks.empty())
        throw ParseError("\"blocks\" must be a non-empty array of positive integers");
    std::vector<std::size_t> dims;
    for (const json& b : blocks) {
        if (!b.is_number_integer() || b.get<long long>() <= 0)
            throw ParseError("block dimensions must be positive integers");
        dims.push_back(b.get<std::size_t>());
    }
    return FdCStarAlgebra(dims);
}

json element_to_json(const AlgebraElement& x) {
    json data = json::array();
    for (std::size_t b = 0; b < x.num_blocks(); ++b) data.push_back(matrix_to_json(x.block(b)));
    return json{{"algebra", algebra_to_json(x.algebra())}, {"data", std::move(data)}};
}

AlgebraElement element_from_json(const json& j) {
    const FdCStarAlgebra a = algebra_from_json(field(j, "algebra"));
    const json& data = field(j, "data");
    if (!data.is_array() || data.size() != a.num_blocks())
        throw ParseError("\"data\" must hold one matrix per block");
    std::vector<ComplexMatrix> blocks;
    for (const json& m : data) blocks.push_back(matrix_from_json(m));
    return {a, std::move(blocks)};
}

json superop_to_json(const SuperOperator& f) {
    return json{{"domain", algebra_to_json(f.domain())},
                {"codomain", algebra_to_json(f.codomain())},
                {"repr", "superoperator"},
                {"data", matrix_to_json(f.action())}};
}

json kraus_to_json(const SuperOperator& f, const std::vector<ComplexMatrix>& kraus) {
    json data = json::array();
    for (const ComplexMatrix& v : kraus) data.push_back(matrix_to_json(v));
    return json{{"domain", algebra_to_json(f.domain())},
                {"codomain", algebra_to_json(f.codomain())},
                {"repr", "kraus"},
                {"data", std::move(data)}};
}

SuperOperator superop_from_json(const json& j) {
    const FdCStarAlgebra dom = algebra_from_json(field(j, "domain"));
    const FdCStarAlgebra cod = algebra_from_json(field(j, "codomain"));
    const std::string repr = field(j, "repr").get<std::string>();
    const json& data = field(j, "data");
    if (repr == "superoperator") {
        ComplexMatrix action = matrix_from_json(data);
        if (action.rows() != cod.vec_dim() || action.cols() != dom.vec_dim())
            throw ParseError("superoperator matrix is " + std::to_string(action.rows()) + "x" +
                             std::to_string(action.cols()) + " but the algebras need " +
                             std::to_string(cod.vec_dim()) + "x" + std::to_string(dom.vec_dim()));
        return {dom, cod, std::move(action)};
    }
    if (repr == "kraus") {
        if (dom.num_blocks() != 1 || cod.num_blocks() != 1)
            throw ParseError("\"kraus\" representation needs single matrix-block algebras");
        if (!data.is_array() || data.empty())
            throw ParseError("\"kraus\" data must be a non-empty list of matrices");
        std::vector<ComplexMatrix> kraus;
        for (const json& m : data) kraus.push_back(matrix_from_json(m));
        for (const ComplexMatrix& v : kraus)
            if (v.rows() != dom.block_dim(0) || v.cols() != cod.block_dim(0))
                throw ParseError("Kraus operators must be m x n for M_m -> M_n");
        return map_from_kraus(kraus);
    }
    throw ParseError("unknown \"repr\" value '" + repr + "'");
}

json functional_to_json(const Functional& phi) {
    json j = element_to_json(phi.density());
    j["role"] = "functional";
    return j;
}

Functional functional_from_json(const json& j) {
    if (field(j, "role").get<std::string>() != "functional")
        throw ParseError("expected \"role\": \"functional\"");
    return Functional(element_from_json(j));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

}  // namespace opalg::io
