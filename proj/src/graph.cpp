#include "eqdecomp/graph.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <utility>

#include "eqdecomp/error.hpp"

namespace eqd {
namespace {

std::string edge_name(const Edge& e) {
  return "(" + std::to_string(e.i) + ", " + std::to_string(e.j) + ")";
}

bool close(Complex a, Complex b) {
  if (a == b) return true;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= 1e-12 * scale;
}

}  // namespace

void validate(const WeightedGraph& g) {
  std::set<std::pair<Vertex, Vertex>> seen;
  const auto n = static_cast<Vertex>(g.n);
  for (const auto& e : g.edges) {
    if (e.i < 1 || e.i > n || e.j < 1 || e.j > n) {
      throw ValidationError("edge " + edge_name(e) + " has an endpoint outside 1.." + std::to_string(g.n));
    }
    if (!std::isfinite(e.w.real()) || !std::isfinite(e.w.imag())) {
      throw ValidationError("edge " + edge_name(e) + " has a non-finite weight");
    }
    auto key = std::make_pair(e.i, e.j);
    if (!g.directed && key.first > key.second) std::swap(key.first, key.second);
    if (!seen.insert(key).second) throw ValidationError("duplicate edge " + edge_name(e));
  }
}

bool is_simple(const WeightedGraph& g) {
  if (g.directed) return false;
  for (const auto& e : g.edges)
    if (e.i == e.j || e.w != Complex(1.0)) return false;
  return true;
}

std::string_view kind_name(MatrixKind k) {
  switch (k) {
    case MatrixKind::adjacency: return "adjacency";
    case MatrixKind::laplacian: return "laplacian";
    case MatrixKind::signless_laplacian: return "signless_laplacian";
    case MatrixKind::normalized_laplacian: return "normalized_laplacian";
    case MatrixKind::distance: return "distance";
    case MatrixKind::weighted_adjacency: return "weighted_adjacency";
  }
  return "adjacency";
}

std::optional<MatrixKind> parse_matrix_kind(std::string_view s) {
  for (auto k : {MatrixKind::adjacency, MatrixKind::laplacian, MatrixKind::signless_laplacian,
                 MatrixKind::normalized_laplacian, MatrixKind::distance, MatrixKind::weighted_adjacency}) {
    if (kind_name(k) == s) return k;
  }
  return std::nullopt;
}

ComplexMatrix build_matrix(const WeightedGraph& g, MatrixKind kind) {
  validate(g);
  const std::size_t n = g.n;
  ComplexMatrix m(n, n);

  const bool needs_simple = kind == MatrixKind::laplacian || kind == MatrixKind::signless_laplacian ||
                            kind == MatrixKind::normalized_laplacian || kind == MatrixKind::distance;
  if (needs_simple && !is_simple(g)) {
    throw ValidationError(std::string(kind_name(kind)) +
                          " matrix needs a simple graph (undirected, no loops, unit weights)");
  }

  auto put = [&](const Edge& e, Complex w) {
    m(e.i - 1, e.j - 1) = w;
    if (!g.directed) m(e.j - 1, e.i - 1) = w;
  };

  switch (kind) {
    case MatrixKind::adjacency:
      for (const auto& e : g.edges) put(e, 1.0);
      break;
    case MatrixKind::weighted_adjacency:
      for (const auto& e : g.edges) put(e, e.w);
      break;
    case MatrixKind::laplacian:
    case MatrixKind::signless_laplacian: {
      const double off = kind == MatrixKind::laplacian ? -1.0 : 1.0;
      for (const auto& e : g.edges) {
        put(e, off);
        m(e.i - 1, e.i - 1) += 1.0;
        m(e.j - 1, e.j - 1) += 1.0;
      }
      break;
    }
    case MatrixKind::normalized_laplacian: {
      std::vector<double> deg(n, 0.0);
      for (const auto& e : g.edges) {
        deg[e.i - 1] += 1.0;
        deg[e.j - 1] += 1.0;
      }
      for (std::size_t v = 0; v < n; ++v) m(v, v) = deg[v] > 0 ? 1.0 : 0.0;
      for (const auto& e : g.edges) put(e, -1.0 / std::sqrt(deg[e.i - 1] * deg[e.j - 1]));
      break;
    }
    case MatrixKind::distance: {
      std::vector<std::vector<std::size_t>> adj(n);
      for (const auto& e : g.edges) {
        adj[e.i - 1].push_back(e.j - 1);
        adj[e.j - 1].push_back(e.i - 1);
      }
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<long> dist(n, -1);
        std::deque<std::size_t> q{s};
        dist[s] = 0;
        while (!q.empty()) {
          const std::size_t u = q.front();
          q.pop_front();
          for (std::size_t v : adj[u]) {
            if (dist[v] < 0) {
              dist[v] = dist[u] + 1;
              q.push_back(v);
            }
          }
        }
        for (std::size_t t = 0; t < n; ++t) {
          if (dist[t] < 0) {
            throw ValidationError("distance matrix needs a connected graph; vertex " + std::to_string(t + 1) +
                                  " is unreachable from vertex " + std::to_string(s + 1));
          }
          m(s, t) = static_cast<double>(dist[t]);
        }
      }
      break;
    }
  }
  return m;
}

std::optional<AutomorphismViolation> find_automorphism_violation(const ComplexMatrix& m,
                                                                 const Permutation& phi) {
  if (!m.is_square() || m.rows() != phi.size()) {
    throw ValidationError("automorphism on " + std::to_string(phi.size()) + " points does not fit a " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pi = phi.at(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex a = m(i, j);
      const Complex b = m(pi, phi.at(j));
      if (!close(a, b)) {
        return AutomorphismViolation{static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1), a, b};
      }
    }
  }
  return std::nullopt;
}

bool is_automorphism(const ComplexMatrix& m, const Permutation& phi) {
  return !find_automorphism_violation(m, phi).has_value();
}

BlockCirculant build_block_circulant(const ComplexMatrix& F, const ComplexMatrix& H,
                                     const ComplexMatrix& L, std::span<const ComplexMatrix> blocks) {
  const std::size_t k = blocks.size();
  if (k < 2) throw ValidationError("block circulant needs at least two blocks");
  const std::size_t r = blocks.front().rows();
  if (r == 0) throw ValidationError("block circulant blocks must be nonempty");
  for (std::size_t m = 0; m < k; ++m) {
    if (blocks[m].rows() != r || blocks[m].cols() != r) {
      throw ValidationError("block M_" + std::to_string(m) + " is not " + std::to_string(r) + "x" +
                            std::to_string(r));
    }
  }
  const std::size_t N = F.rows();
  if (F.cols() != N) throw ValidationError("F must be square");
  const bool h_ok = (N == 0 && H.empty()) || (H.rows() == N && H.cols() == r);
  const bool l_ok = (N == 0 && L.empty()) || (L.rows() == r && L.cols() == N);
  if (!h_ok) throw ValidationError("H must be " + std::to_string(N) + "x" + std::to_string(r));
  if (!l_ok) throw ValidationError("L must be " + std::to_string(r) + "x" + std::to_string(N));

  const std::size_t n = N + k * r;
  ComplexMatrix out(n, n);
  if (N > 0) {
    out.set_block(0, 0, F);
    for (std::size_t l = 0; l < k; ++l) {
      out.set_block(0, N + l * r, H);
      out.set_block(N + l * r, 0, L);
    }
  }
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t m = 0; m < k; ++m) out.set_block(N + l * r, N + m * r, blocks[(m + k - l) % k]);

  std::vector<Vertex> img(n);
  for (std::size_t v = 0; v < N; ++v) img[v] = static_cast<Vertex>(v + 1);
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t j = 0; j < r; ++j)
      img[N + l * r + j] = static_cast<Vertex>(N + ((l + 1) % k) * r + j + 1);
  return {std::move(out), Permutation::from_images(img)};
}

}  // namespace eqd
