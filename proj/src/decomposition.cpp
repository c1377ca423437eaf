#include "eqdecomp/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eqdecomp/error.hpp"
#include "eqdecomp/graph.hpp"
#include "eqdecomp/kernels.hpp"

namespace eqd {
namespace {

std::string label_list(std::span<const Vertex> v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

void finish_plan(SemiTransversalPlan& plan) {
  plan.ordering = plan.U;
  for (const auto& t : plan.T) plan.ordering.insert(plan.ordering.end(), t.begin(), t.end());
}

// Fills T_1..T_{k-1} from T_0 by applying psi.
void extend_by_psi(SemiTransversalPlan& plan, const Permutation& psi, std::size_t k) {
  plan.T.resize(k);
  for (std::size_t l = 1; l < k; ++l) {
    plan.T[l].clear();
    for (Vertex v : plan.T[l - 1]) plan.T[l].push_back(psi(v));
  }
  finish_plan(plan);
}

std::size_t require_basic(const Permutation& psi) {
  const AutoClass c = classify(psi);
  if (!c.is_basic()) {
    throw ValidationError("permutation " + psi.to_string() + " is not basic (its nontrivial orbits differ in size" +
                          std::string(c.kind == AutoKind::identity ? " or it is the identity)" : ")"));
  }
  return c.k;
}

std::vector<std::size_t> zero_based(std::span<const Vertex> labels) {
  std::vector<std::size_t> idx(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) idx[i] = static_cast<std::size_t>(labels[i] - 1);
  return idx;
}

void require_compatible(const ComplexMatrix& m, const Permutation& psi) {
  if (auto v = find_automorphism_violation(m, psi)) {
    throw ValidationError("permutation " + psi.to_string() + " is not an automorphism of the matrix: entry (" +
                          std::to_string(v->i) + "," + std::to_string(v->j) + ") differs from entry (" +
                          std::to_string(psi(v->i)) + "," + std::to_string(psi(v->j)) + ")");
  }
}

// S^-1 M~ S computed blockwise in O(n^2 k), without forming S.
ComplexMatrix similarity_transform(const ComplexMatrix& mt, std::size_t N, std::size_t r, std::size_t k) {
  const std::size_t n = mt.rows();
  // X = M~ S: column block j of the circulant part is sum_m w^(mj) column block m.
  ComplexMatrix x(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    auto src = mt.row(a);
    auto dst = x.row(a);
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(N), dst.begin());
    for (std::size_t j = 0; j < k; ++j) {
      auto out = dst.subspan(N + j * r, r);
      for (std::size_t m = 0; m < k; ++m) kernels::caxpy(root_of_unity(k, j * m), src.subspan(N + m * r, r), out);
    }
  }
  // Y = S^-1 X: row block i is (1/k) sum_m conj(w^(im)) row block m.
  ComplexMatrix y(n, n);
  for (std::size_t a = 0; a < N; ++a) std::copy(x.row(a).begin(), x.row(a).end(), y.row(a).begin());
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t m = 0; m < k; ++m) {
      const Complex c = std::conj(root_of_unity(k, i * m)) * inv_k;
      for (std::size_t t = 0; t < r; ++t) kernels::caxpy(c, x.row(N + m * r + t), y.row(N + i * r + t));
    }
  }
  return y;
}

}  // namespace

Permutation SemiTransversalPlan::psi() const {
  std::vector<Vertex> img(n());
  for (Vertex u : U) img[u - 1] = u;
  const std::size_t kk = k();
  for (std::size_t l = 0; l < kk; ++l)
    for (std::size_t j = 0; j < T[l].size(); ++j) img[T[l][j] - 1] = T[(l + 1) % kk][j];
  return Permutation::from_images(img);
}

Permutation SemiTransversalPlan::relabel() const {
  std::vector<Vertex> img(n());
  for (std::size_t a = 0; a < ordering.size(); ++a) img[ordering[a] - 1] = static_cast<Vertex>(a + 1);
  return Permutation::from_images(img);
}

SemiTransversalPlan choose_semi_transversal(const Permutation& psi) {
  const std::size_t k = require_basic(psi);
  SemiTransversalPlan plan;
  for (const auto& orb : orbits(psi)) {
    if (orb.size() == 1) plan.U.push_back(orb.front());
    else {
      plan.T.resize(1);
      plan.T[0].push_back(orb.front());
    }
  }
  extend_by_psi(plan, psi, k);
  return plan;
}

SemiTransversalPlan choose_semi_transversal(const Permutation& psi, const Permutation& phi) {
  const std::size_t k = require_basic(psi);
  if (phi.size() != psi.size()) throw ValidationError("psi and phi act on different vertex counts");
  const std::uint64_t ord = phi.order();
  if (ord % k != 0 || power(phi, ord / k) != psi) {
    throw ValidationError("psi " + psi.to_string() + " is not the power phi^(|phi|/" + std::to_string(k) +
                          ") of phi " + phi.to_string());
  }

  SemiTransversalPlan plan;
  plan.T.resize(1);
  for (const auto& orb : orbits(phi)) {
    // psi acts on this phi-orbit either trivially or with orbits of size k.
    if (psi(orb.front()) == orb.front()) {
      plan.U.insert(plan.U.end(), orb.begin(), orb.end());
      continue;
    }
    const std::size_t q = orb.size() / k;
    for (std::size_t t = 0; t < q; ++t) plan.T[0].push_back(orb[(t * k) % orb.size()]);
  }
  std::sort(plan.U.begin(), plan.U.end());
  extend_by_psi(plan, psi, k);

  // One representative per psi-orbit; fails only for non-separable phi.
  std::vector<char> hit(psi.size(), 0);
  for (Vertex a : plan.ordering) {
    if (hit[a - 1]) {
      throw ValidationError("phi " + phi.to_string() + " does not admit an aligned semi-transversal for psi " +
                            psi.to_string() + " (vertex " + std::to_string(a) + " repeats)");
    }
    hit[a - 1] = 1;
  }
  return plan;
}

void validate_plan(const SemiTransversalPlan& plan, std::size_t n) {
  if (plan.k() < 2) throw ValidationError("semi-transversal plan needs k >= 2 copies");
  const std::size_t r = plan.r();
  if (r == 0) throw ValidationError("semi-transversal T_0 is empty");
  for (std::size_t l = 0; l < plan.k(); ++l) {
    if (plan.T[l].size() != r) {
      throw ValidationError("T_" + std::to_string(l) + " has " + std::to_string(plan.T[l].size()) +
                            " vertices, T_0 has " + std::to_string(r));
    }
  }
  if (plan.ordering.size() != n || plan.N() + plan.k() * r != n) {
    throw ValidationError("plan covers " + std::to_string(plan.ordering.size()) + " vertices, matrix has " +
                          std::to_string(n));
  }
  std::vector<char> hit(n, 0);
  for (Vertex v : plan.ordering) {
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw ValidationError("plan vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    if (hit[v - 1]) throw ValidationError("plan lists vertex " + std::to_string(v) + " twice");
    hit[v - 1] = 1;
  }
}

Complex root_of_unity(std::size_t k, std::uint64_t e) {
  if (k == 0) throw ValidationError("root of unity of order 0");
  e %= k;
  if (e == 0) return 1.0;
  if (2 * e == k) return -1.0;
  if (4 * e == k) return {0.0, 1.0};
  if (4 * e == 3 * k) return {0.0, -1.0};
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(k);
  return {std::cos(theta), std::sin(theta)};
}

std::vector<ComplexMatrix> component_blocks(const ComplexMatrix& m, const SemiTransversalPlan& plan) {
  if (!m.is_square()) throw ValidationError("matrix is not square");
  validate_plan(plan, m.rows());
  require_compatible(m, plan.psi());

  const std::size_t k = plan.k(), r = plan.r();
  const auto t0 = zero_based(plan.T[0]);
  std::vector<ComplexMatrix> mm;
  for (std::size_t l = 0; l < k; ++l) mm.push_back(m.submatrix(t0, zero_based(plan.T[l])));

  std::vector<ComplexMatrix> out;
  for (std::size_t j = 0; j < k; ++j) {
    ComplexMatrix b(r, r);
    for (std::size_t l = 0; l < k; ++l) {
      const Complex w = root_of_unity(k, j * l);
      for (std::size_t i = 0; i < r; ++i) kernels::caxpy(w, mm[l].row(i), b.row(i));
    }
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

ComplexMatrix assemble_divisor(const ComplexMatrix& m, const SemiTransversalPlan& plan, const ComplexMatrix& b0) {
  const std::size_t N = plan.N(), r = plan.r();
  if (N == 0) return b0;
  const auto u = zero_based(plan.U);
  const auto t0 = zero_based(plan.T[0]);
  ComplexMatrix d(N + r, N + r);
  d.set_block(0, 0, m.submatrix(u, u));
  d.set_block(0, N, static_cast<double>(plan.k()) * m.submatrix(u, t0));
  d.set_block(N, 0, m.submatrix(t0, u));
  d.set_block(N, N, b0);
  return d;
}

}  // namespace

ComplexMatrix divisor_matrix(const ComplexMatrix& m, const SemiTransversalPlan& plan) {
  const auto b = component_blocks(m, plan);
  return assemble_divisor(m, plan, b.front());
}

ComplexMatrix build_similarity(std::size_t N, std::size_t r, std::size_t k) {
  if (r < 1 || k < 2) throw ValidationError("similarity needs r >= 1 and k >= 2");
  ComplexMatrix s(N + k * r, N + k * r);
  for (std::size_t a = 0; a < N; ++a) s(a, a) = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const Complex w = root_of_unity(k, i * j);
      for (std::size_t t = 0; t < r; ++t) s(N + i * r + t, N + j * r + t) = w;
    }
  return s;
}

ComplexMatrix build_similarity_inverse(std::size_t N, std::size_t r, std::size_t k) {
  ComplexMatrix s = build_similarity(N, r, k).conjugate();
  const double inv_k = 1.0 / static_cast<double>(k);
  for (std::size_t a = N; a < s.rows(); ++a)
    for (auto& z : s.row(a)) z *= inv_k;
  return s;
}

ComplexMatrix BasicDecomposition::block_diagonal() const {
  std::vector<ComplexMatrix> parts{divisor};
  parts.insert(parts.end(), blocks.begin(), blocks.end());
  return direct_sum(parts);
}

BasicDecomposition decompose_basic(const ComplexMatrix& m, const Permutation& psi,
                                   const SemiTransversalPlan& plan) {
  if (!m.is_square()) throw ValidationError("matrix is not square");
  require_basic(psi);
  if (psi.size() != m.rows()) {
    throw ValidationError("permutation on " + std::to_string(psi.size()) + " points does not fit a " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.rows()) + " matrix");
  }
  validate_plan(plan, m.rows());
  if (plan.psi() != psi) {
    throw ValidationError("semi-transversal plan " + label_list(plan.ordering) + " is not aligned with " +
                          psi.to_string());
  }
  require_compatible(m, psi);

  BasicDecomposition d;
  d.k = plan.k();
  d.N = plan.N();
  d.r = plan.r();
  d.plan = plan;
  d.relabel = plan.relabel();
  auto b = component_blocks(m, plan);
  d.divisor = assemble_divisor(m, plan, b.front());
  d.blocks.assign(std::make_move_iterator(b.begin() + 1), std::make_move_iterator(b.end()));
  d.S = build_similarity(d.N, d.r, d.k);

  const ComplexMatrix y = similarity_transform(reorder(m, plan.ordering), d.N, d.r, d.k);
  d.residual = max_abs_diff(y, d.block_diagonal());
  const double bound = 1e-10 * m.max_abs();
  if (d.residual > bound) {
    throw InvariantError("similarity self-check failed: residual " + std::to_string(d.residual) + " exceeds " +
                         std::to_string(bound));
  }
  return d;
}

BasicDecomposition decompose_basic(const ComplexMatrix& m, const Permutation& psi) {
  return decompose_basic(m, psi, choose_semi_transversal(psi));
}

Permutation induced_automorphism(const Permutation& phi, std::uint64_t p, const SemiTransversalPlan& plan) {
  if (phi.size() != plan.n()) throw ValidationError("phi and plan act on different vertex counts");
  const Permutation tilde = power(phi, p);
  std::vector<int> part(phi.size(), -1);
  for (Vertex u : plan.U) part[u - 1] = 0;
  for (std::size_t l = 0; l < plan.k(); ++l)
    for (Vertex v : plan.T[l]) part[v - 1] = static_cast<int>(l + 1);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (part[tilde.at(i)] != part[i]) {
      throw ValidationError("phi^" + std::to_string(p) + " moves vertex " + std::to_string(i + 1) + " to " +
                            std::to_string(tilde.at(i) + 1) + " across the semi-transversal plan");
    }
  }
  return tilde;
}

Permutation to_positions(const Permutation& sigma, std::span<const Vertex> ordering) {
  std::vector<Vertex> pos(ordering.size());
  for (std::size_t a = 0; a < ordering.size(); ++a) pos[ordering[a] - 1] = static_cast<Vertex>(a + 1);
  std::vector<Vertex> img(ordering.size());
  for (std::size_t a = 0; a < ordering.size(); ++a) img[a] = pos[sigma(ordering[a]) - 1];
  return Permutation::from_images(img);
}

SequentialDecomposition decompose_separable(const ComplexMatrix& m, const Permutation& phi, PrimeOrder order) {
  if (!m.is_square()) throw ValidationError("matrix is not square");
  const AutoClass cls = classify(phi, order);
  if (cls.kind == AutoKind::identity) throw ValidationError("cannot decompose over the identity permutation");
  require_compatible(m, phi);

  std::vector<std::uint64_t> primes;
  if (cls.is_basic()) {
    primes = {cls.k};
  } else if (cls.separable) {
    primes = cls.primes;
  } else {
    throw ValidationError("automorphism " + phi.to_string() + " has order " + std::to_string(cls.order) +
                          ", which is not squarefree; apply separable_power (--power) first");
  }

  SequentialDecomposition out;
  ComplexMatrix current = m;
  Permutation phi_i = phi;
  std::uint64_t ell = cls.order;
  // Current diagonal blocks as label lists; the first is the divisor.
  std::vector<std::vector<Vertex>> parts;

  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    const std::uint64_t next_ell = ell / p;
    Stage st;
    st.prime = p;
    st.phi = phi_i;
    st.psi = power(phi_i, next_ell);
    const AutoClass pc = classify(st.psi);
    if (!pc.is_basic() || pc.k != p) {
      throw InvariantError("stage " + std::to_string(i) + ": psi = " + st.psi.to_string() +
                           " is not basic with orbit size " + std::to_string(p));
    }
    const SemiTransversalPlan plan =
        primes.size() == 1 ? choose_semi_transversal(st.psi) : choose_semi_transversal(st.psi, phi_i);
    st.decomposition = decompose_basic(current, st.psi, plan);
    st.matrix = unreorder(st.decomposition.block_diagonal(), plan.ordering);

    // Refine the block partition by this stage's sets.
    std::vector<int> cell(m.rows(), 0);
    for (std::size_t l = 1; l < plan.k(); ++l)
      for (Vertex v : plan.T[l]) cell[v - 1] = static_cast<int>(l);
    if (parts.empty()) parts.emplace_back(plan.ordering);
    std::vector<std::vector<Vertex>> refined;
    for (const auto& part : parts) {
      std::vector<std::vector<Vertex>> pieces(plan.k());
      for (Vertex v : part) pieces[cell[v - 1]].push_back(v);
      for (auto& piece : pieces)
        if (!piece.empty()) refined.push_back(std::move(piece));
    }
    parts = std::move(refined);

    if (i + 1 < primes.size()) {
      Permutation next = induced_automorphism(phi_i, p, plan);
      if (auto v = find_automorphism_violation(st.matrix, next)) {
        throw InvariantError("stage " + std::to_string(i) + ": induced automorphism " + next.to_string() +
                             " fails on entry (" + std::to_string(v->i) + "," + std::to_string(v->j) + ")");
      }
      phi_i = std::move(next);
    }
    current = st.matrix;
    ell = next_ell;
    out.stages.push_back(std::move(st));
  }

  // Order labels inside each block by their position in the last ordering.
  const auto& last_ordering = out.stages.back().decomposition.plan.ordering;
  std::vector<std::size_t> pos(m.rows());
  for (std::size_t a = 0; a < last_ordering.size(); ++a) pos[last_ordering[a] - 1] = a;
  std::vector<int> block_of(m.rows(), -1);
  for (std::size_t b = 0; b < parts.size(); ++b) {
    std::sort(parts[b].begin(), parts[b].end(), [&](Vertex x, Vertex y) { return pos[x - 1] < pos[y - 1]; });
    for (Vertex v : parts[b]) block_of[v - 1] = static_cast<int>(b);
  }

  double off_block = 0.0;
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t c = 0; c < m.rows(); ++c)
      if (block_of[a] != block_of[c]) off_block = std::max(off_block, std::abs(current(a, c)));
  if (off_block > 1e-10 * std::max(1.0, m.max_abs())) {
    throw InvariantError("final stage matrix is not block diagonal (off-block entry " + std::to_string(off_block) +
                         ")");
  }

  for (auto& part : parts) {
    const auto idx = zero_based(part);
    ComplexMatrix sub = current.submatrix(idx, idx);
    out.final_blocks.push_back({std::move(part), std::move(sub)});
  }
  return out;
}

ComplexMatrix equitable_divisor(const ComplexMatrix& m, const std::vector<std::vector<Vertex>>& partition) {
  if (!m.is_square()) throw ValidationError("matrix is not square");
  const std::size_t n = m.rows();
  std::vector<int> cell(n, -1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i].empty()) throw ValidationError("partition cell " + std::to_string(i + 1) + " is empty");
    for (Vertex v : partition[i]) {
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw ValidationError("partition vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
      }
      if (cell[v - 1] >= 0) throw ValidationError("vertex " + std::to_string(v) + " is in two partition cells");
      cell[v - 1] = static_cast<int>(i);
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (cell[v] < 0) throw ValidationError("vertex " + std::to_string(v + 1) + " is in no partition cell");

  const std::size_t c = partition.size();
  const double tol = 1e-10 * std::max(1.0, m.max_abs());
  ComplexMatrix d(c, c);
  std::vector<Complex> sums(c);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t t = 0; t < partition[i].size(); ++t) {
      const Vertex s = partition[i][t];
      std::fill(sums.begin(), sums.end(), Complex(0.0));
      auto row = m.row(static_cast<std::size_t>(s - 1));
      for (std::size_t col = 0; col < n; ++col) sums[cell[col]] += row[col];
      for (std::size_t j = 0; j < c; ++j) {
        if (t == 0) {
          d(i, j) = sums[j];
        } else if (std::abs(sums[j] - d(i, j)) > tol) {
          throw ValidationError("partition is not equitable: cell " + std::to_string(i + 1) + " to cell " +
                                std::to_string(j + 1) + " sums differ at vertex " + std::to_string(s));
        }
      }
    }
  }
  return d;
}

}  // namespace eqd
