#include "eqdecomp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqdecomp/error.hpp"
#include "eqdecomp/kernels.hpp"

namespace eqd {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ValidationError("matrix expects " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(data_.size()));
  }
  if (!all_finite()) throw ValidationError("matrix contains a non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ValidationError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw ValidationError("matrix contains a non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix c = *this;
  for (auto& z : c.data_) z = std::conj(z);
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const { return transpose().conjugate(); }

ComplexMatrix ComplexMatrix::submatrix(std::span<const std::size_t> row_idx,
                                       std::span<const std::size_t> col_idx) const {
  ComplexMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a)
    for (std::size_t b = 0; b < col_idx.size(); ++b) s(a, b) = (*this)(row_idx[a], col_idx[b]);
  return s;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& block) {
  if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_) {
    throw ValidationError("block does not fit");
  }
  for (std::size_t i = 0; i < block.rows(); ++i)
    std::copy(block.row(i).begin(), block.row(i).end(), row(r0 + i).begin() + c0);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::inf_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) m = std::max(m, kernels::abs_sum(row(i)));
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::is_real(double tol) const {
  return std::all_of(data_.begin(), data_.end(),
                     [tol](const Complex& z) { return std::abs(z.imag()) <= tol; });
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("shape mismatch in +");
  kernels::caxpy(1.0, other.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("shape mismatch in -");
  kernels::caxpy(-1.0, other.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("shape mismatch in matrix product");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik != Complex(0.0)) kernels::caxpy(aik, b.row(k), out);
    }
  }
  return c;
}

CVector operator*(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw ValidationError("shape mismatch in matrix-vector product");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    const auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("shape mismatch in max_abs_diff");
  }
  return kernels::max_abs_diff(a.data(), b.data());
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  ComplexMatrix out(r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    out.set_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

namespace {
std::vector<std::size_t> positions_of(std::span<const Vertex> ordering, std::size_t n) {
  if (ordering.size() != n) throw ValidationError("ordering length does not match matrix size");
  std::vector<std::size_t> idx(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (ordering[a] < 1 || static_cast<std::size_t>(ordering[a]) > n) {
      throw ValidationError("ordering contains out-of-range vertex " + std::to_string(ordering[a]));
    }
    idx[a] = static_cast<std::size_t>(ordering[a] - 1);
  }
  return idx;
}
}  // namespace

ComplexMatrix reorder(const ComplexMatrix& m, std::span<const Vertex> ordering) {
  const auto idx = positions_of(ordering, m.rows());
  return m.submatrix(idx, idx);
}

ComplexMatrix unreorder(const ComplexMatrix& m, std::span<const Vertex> ordering) {
  const auto idx = positions_of(ordering, m.rows());
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(idx[a], idx[b]) = m(a, b);
  return out;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex snap_integer(Complex z, double tol) {
  auto snap = [tol](double x) {
    const double r = std::round(x);
    return std::abs(x - r) <= tol ? r + 0.0 : x;
  };
  return {snap(z.real()), snap(z.imag())};
}

ComplexMatrix snap_integers(const ComplexMatrix& m, double tol) {
  ComplexMatrix out = m;
  for (auto& z : out.data()) z = snap_integer(z, tol);
  return out;
}

}  // namespace eqd
