#include "eqdecomp/fold.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "eqdecomp/error.hpp"

namespace eqd {
namespace {

std::string shortest(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

ComplexMatrix FoldedGraph::weighted_adjacency() const {
  Vertex top = 0;
  for (Vertex v : vertices) top = std::max(top, v);
  std::vector<std::size_t> pos(static_cast<std::size_t>(top) + 1, 0);
  for (std::size_t a = 0; a < vertices.size(); ++a) pos[vertices[a]] = a;
  ComplexMatrix w(vertices.size(), vertices.size());
  for (const auto& e : edges) w(pos[e.i], pos[e.j]) = e.w;
  return w;
}

FoldedGraph fold(const WeightedGraph& g, const Permutation& psi, const SemiTransversalPlan& plan, std::size_t m) {
  const ComplexMatrix w = build_matrix(g, MatrixKind::weighted_adjacency);
  validate_plan(plan, g.n);
  if (plan.psi() != psi) throw ValidationError("semi-transversal plan is not aligned with " + psi.to_string());
  const std::size_t k = plan.k();
  if (m >= k) throw ValidationError("fold index " + std::to_string(m) + " outside 0.." + std::to_string(k - 1));
  if (auto v = find_automorphism_violation(w, psi)) {
    throw ValidationError(psi.to_string() + " is not an automorphism of the graph: weight (" + std::to_string(v->i) +
                          "," + std::to_string(v->j) + ") differs from its image");
  }

  FoldedGraph f;
  f.m = m;
  f.fixed = plan.U;
  // Source vertices i (in U or T_0); vertex a is drawn as psi^m(source[a]).
  std::vector<Vertex> source;
  if (m == 0) source = plan.U;
  source.insert(source.end(), plan.T[0].begin(), plan.T[0].end());
  f.vertices = m == 0 ? source : plan.T[m];

  const std::size_t N = m == 0 ? plan.N() : 0;
  for (std::size_t a = 0; a < source.size(); ++a) {
    const std::size_t i = static_cast<std::size_t>(source[a] - 1);
    for (std::size_t b = 0; b < source.size(); ++b) {
      Complex nu = 0.0;
      if (b < N) {
        nu = w(i, static_cast<std::size_t>(source[b] - 1));
      } else {
        const std::size_t j = b - N;
        for (std::size_t l = 0; l < k; ++l) nu += root_of_unity(k, l * m) * w(i, plan.T[l][j] - 1);
      }
      if (std::abs(nu) >= 1e-12) f.edges.push_back({f.vertices[a], f.vertices[b], nu});
    }
  }
  return f;
}

std::vector<FoldedGraph> fold_family(const WeightedGraph& g, const Permutation& psi, const SemiTransversalPlan& plan) {
  validate_plan(plan, g.n);
  std::vector<FoldedGraph> out;
  for (std::size_t m = 0; m < plan.k(); ++m) out.push_back(fold(g, psi, plan, m));
  return out;
}

std::string weight_label(Complex w) {
  const Complex z = snap_integer(w, 1e-9);
  if (std::abs(z.imag()) < 1e-12) return shortest(z.real());
  const std::string im = shortest(std::abs(z.imag()));
  return shortest(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

std::string export_dot(const FoldedGraph& f) {
  std::ostringstream os;
  os << "digraph G_" << f.m << " {\n";
  std::vector<Vertex> nodes = f.vertices;
  for (Vertex u : f.fixed)
    if (std::find(nodes.begin(), nodes.end(), u) == nodes.end()) nodes.push_back(u);
  for (Vertex v : nodes) {
    const bool fixed = std::find(f.fixed.begin(), f.fixed.end(), v) != f.fixed.end();
    os << "  " << v << (fixed ? " [shape=circle];\n" : " [shape=ellipse, style=filled];\n");
  }
  for (const auto& e : f.edges) os << "  " << e.i << " -> " << e.j << " [label=\"" << weight_label(e.w) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace eqd
