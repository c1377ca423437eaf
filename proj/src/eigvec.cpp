#include "eqdecomp/eigvec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eqdecomp/error.hpp"
#include "eqdecomp/graph.hpp"
#include "eqdecomp/kernels.hpp"
#include "eqdecomp/spectrum.hpp"

namespace eqd {
namespace {

void scale_to_unit(CVector& v) {
  const double s = norm2(v);
  if (s > 0.0)
    for (auto& z : v) z /= s;
}

void require_full_rank(const std::vector<LiftedVector>& vs) {
  if (!full_rank(vs)) {
    throw ValidationError("lifted vectors are numerically dependent; the supplied bases are not bases");
  }
}

CVector to_labels(std::span<const Complex> x, std::span<const Vertex> ordering) {
  CVector out(x.size());
  for (std::size_t a = 0; a < ordering.size(); ++a) out[ordering[a] - 1] = x[a];
  return out;
}

CVector from_labels(std::span<const Complex> z, std::span<const Vertex> ordering) {
  CVector out(z.size());
  for (std::size_t a = 0; a < ordering.size(); ++a) out[a] = z[ordering[a] - 1];
  return out;
}

}  // namespace

LiftedVector lift_block_vector(std::span<const Complex> u, std::size_t m, std::size_t N, std::size_t k) {
  if (k < 2 || m < 1 || m >= k) {
    throw ValidationError("block index " + std::to_string(m) + " outside 1.." + std::to_string(k == 0 ? 0 : k - 1));
  }
  const std::size_t r = u.size();
  LiftedVector out;
  out.source = VectorSource::block;
  out.block = m;
  out.vector.assign(N + k * r, Complex(0.0));
  for (std::size_t j = 0; j < k; ++j) {
    const Complex w = root_of_unity(k, m * j);
    for (std::size_t t = 0; t < r; ++t) out.vector[N + j * r + t] = w * u[t];
  }
  return out;
}

LiftedVector lift_divisor_vector(std::span<const Complex> w, std::span<const Complex> v, std::size_t k) {
  LiftedVector out;
  out.vector.assign(w.begin(), w.end());
  for (std::size_t j = 0; j < k; ++j) out.vector.insert(out.vector.end(), v.begin(), v.end());
  return out;
}

CVector apply_similarity(std::size_t N, std::size_t r, std::size_t k, std::span<const Complex> y) {
  if (y.size() != N + k * r) throw ValidationError("vector length does not match the similarity");
  CVector x(y.size(), Complex(0.0));
  std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(N), x.begin());
  std::span<Complex> xs(x);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      kernels::caxpy(root_of_unity(k, i * j), y.subspan(N + j * r, r), xs.subspan(N + i * r, r));
  return x;
}

bool full_rank(const std::vector<LiftedVector>& vectors) {
  if (vectors.empty()) return true;
  std::vector<CVector> cols;
  for (const auto& v : vectors) cols.push_back(v.vector);
  const auto sv = singular_values(column_matrix(cols));
  if (sv.size() < vectors.size() || vectors.size() != vectors.front().vector.size()) return false;
  return sv.back() > 1e-8 * sv.front();
}

std::vector<LiftedVector> reconstruct_eigenbasis(const BasicDecomposition& d,
                                                 const std::vector<BasisVector>& divisor_basis,
                                                 const std::vector<std::vector<BasisVector>>& block_bases,
                                                 const ReconstructOptions& opt) {
  const std::size_t N = d.N, r = d.r, k = d.k;
  if (divisor_basis.size() != N + r) {
    throw ValidationError("divisor basis has " + std::to_string(divisor_basis.size()) + " vectors, expected " +
                          std::to_string(N + r));
  }
  if (block_bases.size() != k - 1) {
    throw ValidationError("expected bases for " + std::to_string(k - 1) + " blocks, got " +
                          std::to_string(block_bases.size()));
  }

  std::vector<LiftedVector> out;
  for (std::size_t i = 0; i < divisor_basis.size(); ++i) {
    const auto& b = divisor_basis[i];
    if (b.vector.size() != N + r) {
      throw ValidationError("divisor basis vector " + std::to_string(i + 1) + " has length " +
                            std::to_string(b.vector.size()) + ", expected " + std::to_string(N + r));
    }
    std::span<const Complex> all(b.vector);
    LiftedVector lv = lift_divisor_vector(all.first(N), all.subspan(N), k);
    lv.eigenvalue = b.eigenvalue;
    lv.generalized_rank = b.generalized_rank;
    lv.index = i;
    out.push_back(std::move(lv));
  }
  for (std::size_t m = 1; m < k; ++m) {
    const auto& basis = block_bases[m - 1];
    if (basis.size() != r) {
      throw ValidationError("basis of block " + std::to_string(m) + " has " + std::to_string(basis.size()) +
                            " vectors, expected " + std::to_string(r));
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (basis[i].vector.size() != r) {
        throw ValidationError("vector " + std::to_string(i + 1) + " of block " + std::to_string(m) +
                              " has length " + std::to_string(basis[i].vector.size()) + ", expected " +
                              std::to_string(r));
      }
      LiftedVector lv = lift_block_vector(basis[i].vector, m, N, k);
      lv.eigenvalue = basis[i].eigenvalue;
      lv.generalized_rank = basis[i].generalized_rank;
      lv.index = i;
      out.push_back(std::move(lv));
    }
  }
  require_full_rank(out);
  for (auto& lv : out) {
    if (opt.original_labels) lv.vector = to_labels(lv.vector, d.plan.ordering);
    if (opt.normalize) scale_to_unit(lv.vector);
  }
  return out;
}

std::vector<LiftedVector> reconstruct_eigenbasis(const SequentialDecomposition& d,
                                                 const std::vector<std::vector<BasisVector>>& bases,
                                                 const ReconstructOptions& opt) {
  if (bases.size() != d.final_blocks.size()) {
    throw ValidationError("expected bases for " + std::to_string(d.final_blocks.size()) + " blocks, got " +
                          std::to_string(bases.size()));
  }
  const std::size_t n = d.stages.front().matrix.rows();
  std::vector<LiftedVector> out;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto& labels = d.final_blocks[b].labels;
    if (bases[b].size() != labels.size()) {
      throw ValidationError("basis of final block " + std::to_string(b) + " has " + std::to_string(bases[b].size()) +
                            " vectors, expected " + std::to_string(labels.size()));
    }
    for (std::size_t i = 0; i < bases[b].size(); ++i) {
      const auto& u = bases[b][i];
      if (u.vector.size() != labels.size()) {
        throw ValidationError("vector " + std::to_string(i + 1) + " of final block " + std::to_string(b) +
                              " has the wrong length");
      }
      CVector z(n, Complex(0.0));
      for (std::size_t t = 0; t < labels.size(); ++t) z[labels[t] - 1] = u.vector[t];
      for (auto st = d.stages.rbegin(); st != d.stages.rend(); ++st) {
        const auto& bd = st->decomposition;
        z = to_labels(apply_similarity(bd.N, bd.r, bd.k, from_labels(z, bd.plan.ordering)), bd.plan.ordering);
      }
      LiftedVector lv;
      lv.vector = std::move(z);
      lv.eigenvalue = u.eigenvalue;
      lv.generalized_rank = u.generalized_rank;
      lv.source = b == 0 ? VectorSource::divisor : VectorSource::block;
      lv.block = b;
      lv.index = i;
      out.push_back(std::move(lv));
    }
  }
  require_full_rank(out);
  if (opt.normalize)
    for (auto& lv : out) scale_to_unit(lv.vector);
  return out;
}

std::vector<LiftedVector> computed_eigenbasis(const SequentialDecomposition& d) {
  std::vector<std::vector<BasisVector>> bases;
  for (std::size_t b = 0; b < d.final_blocks.size(); ++b) {
    const auto ep = eigenpairs(d.final_blocks[b].matrix);
    if (ep.defective) {
      throw ValidationError("final block " + std::to_string(b) +
                            " is defective; plain eigenvectors do not form a basis");
    }
    std::vector<BasisVector> basis;
    for (const auto& p : ep.pairs) basis.push_back({p.value, p.vector, 1});
    bases.push_back(std::move(basis));
  }
  return reconstruct_eigenbasis(d, bases);
}

DivisorRadius divisor_spectral_radius(const ComplexMatrix& m, const Permutation& phi, PrimeOrder order) {
  if (!m.is_square()) throw ValidationError("matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (z.imag() != 0.0 || z.real() < 0.0) {
        throw ValidationError("matrix entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") is negative or complex; the divisor radius needs a nonnegative matrix");
      }
    }
  }
  const SequentialDecomposition seq = decompose_separable(m, phi, order);
  DivisorRadius out;
  out.divisor = seq.divisor();
  out.divisor_labels = seq.divisor_labels();
  out.irreducible = is_irreducible_nonnegative(m).irreducible;
  const auto ev = eigenvalues(out.divisor);
  for (const auto& z : ev) out.rho = std::max(out.rho, std::abs(z));
  if (out.irreducible) {
    out.is_eigenvalue_of_divisor =
        std::any_of(ev.begin(), ev.end(), [&](const Complex& z) { return std::abs(z - out.rho) <= 1e-8; });
  }
  return out;
}

RadiusChain radius_chain(const BasicDecomposition& d) {
  RadiusChain c;
  c.divisor = spectral_radius(d.divisor);
  std::vector<std::size_t> idx(d.r);
  std::iota(idx.begin(), idx.end(), d.N);
  c.b0 = spectral_radius(d.divisor.submatrix(idx, idx));
  for (const auto& b : d.blocks) c.blocks.push_back(spectral_radius(b));
  return c;
}

}  // namespace eqd
