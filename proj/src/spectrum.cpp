#include "eqdecomp/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "eqdecomp/error.hpp"

namespace eqd {
namespace {

using EMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMatrix to_eigen(const ComplexMatrix& m) {
  EMatrix e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw ValidationError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  }
}

bool canonical_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Kuhn's augmenting-path matching on the threshold graph. Only used when the
// greedy pass fails, which needs near-ties at the tolerance boundary.
bool threshold_matching(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a[i] - b[j]) <= tol) adj[i].push_back(j);
  std::vector<std::ptrdiff_t> match_b(n, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (match_b[j] < 0 || augment(static_cast<std::size_t>(match_b[j]))) {
        match_b[j] = static_cast<std::ptrdiff_t>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace

void sort_canonical(SpectrumMultiset& s) { std::sort(s.begin(), s.end(), canonical_less); }

SpectrumMultiset eigenvalues(const ComplexMatrix& m) {
  require_square(m, "eigenvalues");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<EMatrix> solver(to_eigen(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw InvariantError("eigenvalue iteration did not converge");
  SpectrumMultiset s(solver.eigenvalues().begin(), solver.eigenvalues().end());
  sort_canonical(s);
  return s;
}

EigenpairResult eigenpairs(const ComplexMatrix& m) {
  require_square(m, "eigenpairs");
  const std::size_t n = m.rows();
  EigenpairResult result;
  if (n == 0) return result;

  const EMatrix em = to_eigen(m);
  Eigen::ComplexEigenSolver<EMatrix> solver(em, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw InvariantError("eigenvalue iteration did not converge");
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  const double scale = std::max(1.0, m.max_abs());
  const double cluster_tol = 1e-6 * scale;

  // Single-linkage clusters of numerically equal eigenvalues.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(values[a], values[b]); });
  std::vector<int> cluster(n, -1);
  int clusters = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (cluster[a] >= 0) continue;
    std::vector<std::size_t> stack{a};
    cluster[a] = clusters;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n; ++y) {
        if (cluster[y] < 0 && std::abs(values[x] - values[y]) <= cluster_tol) {
          cluster[y] = clusters;
          stack.push_back(y);
        }
      }
    }
    ++clusters;
  }

  for (int c = 0; c < clusters; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t a : order)
      if (cluster[a] == c) members.push_back(a);

    if (members.size() == 1) {
      const std::size_t a = members.front();
      Eigen::VectorXcd v = vectors.col(static_cast<Eigen::Index>(a));
      v.normalize();
      result.pairs.push_back({values[a], CVector(v.data(), v.data() + n)});
      continue;
    }

    Complex mean = 0.0;
    for (std::size_t a : members) mean += values[a];
    mean /= static_cast<double>(members.size());
    double spread = 0.0;
    for (std::size_t a : members) spread = std::max(spread, std::abs(values[a] - mean));

    EMatrix shifted = em;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= mean;
    Eigen::JacobiSVD<EMatrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double null_tol = std::max(1e-9 * scale, 10.0 * spread);
    std::size_t nullity = 0;
    for (Eigen::Index i = sv.size() - 1; i >= 0 && sv[i] <= null_tol; --i) ++nullity;
    nullity = std::min(nullity, members.size());
    if (nullity < members.size()) result.defective = true;
    for (std::size_t t = 0; t < nullity; ++t) {
      Eigen::VectorXcd v = svd.matrixV().col(static_cast<Eigen::Index>(n - 1 - t));
      result.pairs.push_back({mean, CVector(v.data(), v.data() + n)});
    }
  }
  return result;
}

double default_spectrum_tolerance(const ComplexMatrix& m) {
  return 1e-8 * std::max(1.0, m.max_abs() / 10.0);
}

bool multiset_equal(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  if (tol <= 0.0) throw ValidationError("multiset_equal: tolerance must be positive");
  if (a.size() != b.size()) return false;
  SpectrumMultiset sa(a.begin(), a.end()), sb(b.begin(), b.end());
  sort_canonical(sa);
  sort_canonical(sb);

  // Greedy: walk sa in canonical order, take the nearest unused element of sb
  // within tolerance.
  std::vector<char> used(sb.size(), 0);
  bool greedy_ok = true;
  for (const auto& x : sa) {
    std::ptrdiff_t best = -1;
    double best_d = tol;
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - sb[j]);
      if (d <= best_d) {
        best_d = d;
        best = static_cast<std::ptrdiff_t>(j);
      }
    }
    if (best < 0) {
      greedy_ok = false;
      break;
    }
    used[static_cast<std::size_t>(best)] = 1;
  }
  if (greedy_ok) return true;
  return threshold_matching(sa, sb, tol);
}

SpectrumMultiset spectrum_union(std::span<const SpectrumMultiset> parts) {
  SpectrumMultiset all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  sort_canonical(all);
  return all;
}

double spectral_radius(const ComplexMatrix& m) {
  require_square(m, "spectral_radius");
  double rho = 0.0;
  for (const auto& z : eigenvalues(m)) rho = std::max(rho, std::abs(z));
  return rho;
}

Irreducibility is_irreducible_nonnegative(const ComplexMatrix& m) {
  require_square(m, "is_irreducible_nonnegative");
  const std::size_t n = m.rows();
  Irreducibility out;
  out.nonnegative = std::all_of(m.data().begin(), m.data().end(), [](const Complex& z) {
    return z.imag() == 0.0 && z.real() >= 0.0;
  });
  if (n == 0) return out;

  // Strongly connected iff every vertex is reachable from vertex 0 both in the
  // digraph and in its reverse.
  auto all_reachable = [&](bool reverse) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        const Complex e = reverse ? m(v, u) : m(u, v);
        if (!seen[v] && e != Complex(0.0)) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  out.irreducible = all_reachable(false) && all_reachable(true);
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.empty()) return {};
  Eigen::BDCSVD<EMatrix> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

ComplexMatrix column_matrix(std::span<const CVector> columns) {
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  ComplexMatrix out(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw ValidationError("column vectors differ in length");
    for (std::size_t i = 0; i < n; ++i) out(i, j) = columns[j][i];
  }
  return out;
}

}  // namespace eqd
