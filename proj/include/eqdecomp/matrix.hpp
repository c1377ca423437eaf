#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eqd {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// 1-based vertex label. Matrices are indexed by 0-based positions; a
// label-indexed matrix stores vertex v at position v - 1.
using Vertex = int;

// Dense row-major complex matrix. Entries must be finite; constructors that
// take data reject NaN/Inf.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix adjoint() const;

  // Submatrix with the given 0-based row and column positions, in order.
  ComplexMatrix submatrix(std::span<const std::size_t> row_idx,
                          std::span<const std::size_t> col_idx) const;
  // Copies `block` into this matrix with its (0,0) entry at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& block);

  // Largest entry modulus.
  double max_abs() const;
  // Max absolute row sum.
  double inf_norm() const;
  Complex trace() const;
  bool is_real(double tol = 0.0) const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const Complex> x);

// max |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Block-diagonal direct sum.
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);

// Reorders rows and columns: result(a, b) = m(label[a] - 1, label[b] - 1).
ComplexMatrix reorder(const ComplexMatrix& m, std::span<const Vertex> ordering);
// Inverse of reorder: result(label[a] - 1, label[b] - 1) = m(a, b).
ComplexMatrix unreorder(const ComplexMatrix& m, std::span<const Vertex> ordering);

double norm2(std::span<const Complex> v);

// Round entries within `tol` of an integer (real and imaginary parts
// separately) to that integer. For display only.
ComplexMatrix snap_integers(const ComplexMatrix& m, double tol = 1e-9);
Complex snap_integer(Complex z, double tol = 1e-9);

}  // namespace eqd
