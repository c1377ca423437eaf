#include <random>

#include "doctest.h"
#include "eqdecomp/decomposition.hpp"
#include "eqdecomp/error.hpp"
#include "eqdecomp/fold.hpp"
#include "eqdecomp/generate.hpp"
#include "eqdecomp/spectrum.hpp"
#include "fixtures.hpp"

using namespace eqd;

namespace {

std::optional<Complex> weight(const FoldedGraph& f, Vertex i, Vertex j) {
  for (const auto& e : f.edges)
    if (e.i == i && e.j == j) return e.w;
  return std::nullopt;
}

WeightedGraph graph_of(const ComplexMatrix& m) {
  WeightedGraph g;
  g.n = m.rows();
  g.directed = true;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex(0)) g.edges.push_back({static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1), m(i, j)});
  return g;
}

}  // namespace

TEST_SUITE("fold") {
  TEST_CASE("folded graphs of the example") {
    const auto g = fx::example_graph();
    const auto psi = parse_cycles(fx::kPsi0, 10);
    const auto plan = choose_semi_transversal(psi, parse_cycles(fx::kPhi, 10));
    const auto f0 = fold(g, psi, plan, 0);
    CHECK(f0.vertices == std::vector<Vertex>{1, 2, 3, 4});
    CHECK(f0.fixed == std::vector<Vertex>{1});
    CHECK(weight(f0, 2, 2) == Complex(2));
    CHECK(weight(f0, 1, 2) == Complex(3));
    CHECK(weight(f0, 2, 1) == Complex(1));
    CHECK(weight(f0, 2, 3) == Complex(1));
    CHECK(weight(f0, 2, 4) == Complex(1));
    CHECK_FALSE(weight(f0, 3, 4).has_value());

    const auto f1 = fold(g, psi, plan, 1);
    CHECK(f1.vertices == std::vector<Vertex>{8, 9, 10});
    REQUIRE(weight(f1, 8, 8).has_value());
    CHECK(std::abs(*weight(f1, 8, 8) - Complex(-1)) <= 1e-12);
    CHECK(std::abs(*weight(f1, 8, 9) - Complex(1)) <= 1e-12);
    CHECK(std::abs(*weight(f1, 8, 10) - Complex(1)) <= 1e-12);

    const auto fam = fold_family(g, psi, plan);
    REQUIRE(fam.size() == 3);
    CHECK(fam[2].vertices == std::vector<Vertex>{5, 7, 6});
    CHECK(max_abs_diff(fam[0].weighted_adjacency(), fx::round1_divisor()) <= 1e-10);
    CHECK(max_abs_diff(fam[1].weighted_adjacency(), fx::round1_block()) <= 1e-10);
    CHECK(max_abs_diff(fam[2].weighted_adjacency(), fx::round1_block()) <= 1e-10);
  }

  TEST_CASE("K2 family") {
    WeightedGraph k2;
    k2.n = 2;
    k2.edges = {{1, 2, 1.0}};
    const auto psi = parse_cycles("(1,2)", 2);
    const auto fam = fold_family(k2, psi, choose_semi_transversal(psi));
    REQUIRE(fam.size() == 2);
    CHECK(fam[0].weighted_adjacency() == ComplexMatrix{{1}});
    CHECK(fam[1].weighted_adjacency() == ComplexMatrix{{-1}});
    CHECK(fam[1].vertices == std::vector<Vertex>{2});
  }

  TEST_CASE("fold errors") {
    const auto g = fx::example_graph();
    const auto psi = parse_cycles(fx::kPsi0, 10);
    const auto plan = choose_semi_transversal(psi);
    CHECK_THROWS_AS(fold(g, psi, plan, 3), ValidationError);
    const auto bad = parse_cycles("(1,2)", 10);
    const auto bad_plan = choose_semi_transversal(bad);
    CHECK_THROWS_AS(fold(g, bad, bad_plan, 0), ValidationError);
    CHECK_THROWS_AS(fold(g, bad, plan, 0), ValidationError);
  }

  TEST_CASE("DOT export") {
    FoldedGraph loop;
    loop.m = 1;
    loop.vertices = {1};
    loop.edges = {{1, 1, -1.0}};
    CHECK(export_dot(loop).find("1 -> 1 [label=\"-1\"]") != std::string::npos);

    const auto g = fx::example_graph();
    const auto psi = parse_cycles(fx::kPsi0, 10);
    const auto plan = choose_semi_transversal(psi, parse_cycles(fx::kPhi, 10));
    const std::string dot = export_dot(fold(g, psi, plan, 0));
    CHECK(dot.rfind("digraph G_0 {\n", 0) == 0);
    CHECK(dot.find("1 -> 2 [label=\"3\"]") != std::string::npos);
    CHECK(dot.find("  1 [shape=circle];") != std::string::npos);
    std::size_t nodes = 0;
    for (std::size_t p = dot.find("[shape="); p != std::string::npos; p = dot.find("[shape=", p + 1)) ++nodes;
    CHECK(nodes == 4);

    // Members with m >= 1 still draw U, without edges.
    const std::string dot1 = export_dot(fold(g, psi, plan, 1));
    CHECK(dot1.find("  1 [shape=circle];") != std::string::npos);
    CHECK(dot1.find("1 -> ") == std::string::npos);

    CHECK(export_dot(FoldedGraph{}) == "digraph G_0 {\n}\n");
  }

  TEST_CASE("weight labels") {
    CHECK(weight_label(Complex(3, 0)) == "3");
    CHECK(weight_label(Complex(-1, 1e-15)) == "-1");
    CHECK(weight_label(Complex(0.5, -2)) == "0.5-2i");
    CHECK(weight_label(Complex(-0.5, 0.25)) == "-0.5+0.25i");
  }

  TEST_CASE("folded adjacencies equal the decomposition blocks") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 40; ++t) {
      const auto kind = t % 2 ? ValueKind::complex : ValueKind::real;
      const auto inst = planted_basic(rng, rng() % 3, 1 + rng() % 4, 2 + rng() % 5, {kind, 0.7});
      const auto plan = choose_semi_transversal(inst.automorphism);
      const auto g = graph_of(inst.matrix);
      const auto fam = fold_family(g, inst.automorphism, plan);
      const auto d = decompose_basic(inst.matrix, inst.automorphism, plan);
      CHECK(max_abs_diff(fam[0].weighted_adjacency(), d.divisor) <= 1e-10);
      for (std::size_t m = 1; m < fam.size(); ++m) CHECK(max_abs_diff(fam[m].weighted_adjacency(), d.blocks[m - 1]) <= 1e-10);
      std::vector<SpectrumMultiset> parts;
      for (const auto& f : fam) parts.push_back(eigenvalues(f.weighted_adjacency()));
      CHECK(multiset_equal(eigenvalues(inst.matrix), spectrum_union(parts), 1e-8));
      if (kind == ValueKind::real)
        for (const auto& e : fam[0].edges) CHECK(e.w.imag() == doctest::Approx(0.0));
    }
  }
}
