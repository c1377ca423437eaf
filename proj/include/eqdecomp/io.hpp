#pragma once
// JSON and edge-list serialisation. Labels are 1-based everywhere. Complex
// numbers are [re, im] pairs; doubles print in shortest round-trip form.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "eqdecomp/decomposition.hpp"
#include "eqdecomp/eigvec.hpp"
#include "eqdecomp/fold.hpp"
#include "eqdecomp/gershgorin.hpp"
#include "eqdecomp/graph.hpp"
#include "eqdecomp/matrix.hpp"
#include "eqdecomp/permutation.hpp"

namespace eqd {

using Json = nlohmann::ordered_json;

// When set, matrix and vector entries within 1e-9 of an integer are written
// as that integer. Off by default so saved values round-trip exactly.
struct JsonStyle {
  bool snap = false;
};

Json complex_to_json(Complex z, const JsonStyle& style = {});
Json to_json(const ComplexMatrix& m, const JsonStyle& style = {});
Json vector_to_json(std::span<const Complex> v, const JsonStyle& style = {});
Json to_json(const Permutation& p);
Json to_json(const WeightedGraph& g);
Json to_json(const GershRegion& r);
Json to_json(const SemiTransversalPlan& p);
Json to_json(const BasicDecomposition& d, const JsonStyle& style = {});
Json to_json(const SequentialDecomposition& d, const JsonStyle& style = {});
Json to_json(const std::vector<LiftedVector>& basis, const JsonStyle& style = {});
Json to_json(const FoldedGraph& f, const JsonStyle& style = {});

// Loaders throw ValidationError naming the offending field, e.g.
// "graph.edges[3][1]: expected an integer".
Complex complex_from_json(const Json& j, const std::string& where = "value");
ComplexMatrix matrix_from_json(const Json& j, const std::string& where = "matrix");
CVector vector_from_json(const Json& j, const std::string& where = "vector");
Permutation permutation_from_json(const Json& j, const std::string& where = "permutation");
WeightedGraph graph_from_json(const Json& j, const std::string& where = "graph");
GershRegion region_from_json(const Json& j, const std::string& where = "region");
SemiTransversalPlan plan_from_json(const Json& j, const std::string& where = "plan");
BasicDecomposition basic_decomposition_from_json(const Json& j, const std::string& where = "decomposition");
SequentialDecomposition sequential_decomposition_from_json(const Json& j,
                                                           const std::string& where = "decomposition");
std::vector<LiftedVector> eigenbasis_from_json(const Json& j, const std::string& where = "eigenbasis");
FoldedGraph folded_graph_from_json(const Json& j, const std::string& where = "folded");

// Parses JSON text; syntax errors report the byte offset.
Json parse_json(std::string_view text, const std::string& source = "input");
std::string dump(const Json& j);

// Edge list: one "i j [w_re [w_im]]" per line, '#' starts a comment. The
// vertex count is n if given, otherwise the largest label. Errors name the
// line number.
WeightedGraph parse_edge_list(std::string_view text, std::optional<std::size_t> n = std::nullopt,
                              bool directed = false);
std::string format_edge_list(const WeightedGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace eqd
