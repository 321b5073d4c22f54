#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jacclan/scalar.hpp"

namespace jc {

// Dense matrix over F_p or Q with exact elimination.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, uint32_t p);
  static Matrix identity(size_t n, uint32_t p);
  static Matrix scalar(size_t n, const Scalar& s, uint32_t p);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  uint32_t field() const { return p_; }
  Scalar& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return a_[i * c_ + j]; }
  Scalar& operator()(size_t i, size_t j) { return at(i, j); }
  const Scalar& operator()(size_t i, size_t j) const { return at(i, j); }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  struct Echelon;
  Echelon echelon() const;
  size_t rank() const;
  // Basis of {x : A x = 0}, as columns of the returned matrix.
  Matrix nullspace() const;
  // Returns false when singular.
  bool inverse(Matrix& out) const;
  Matrix inverse() const;
  Scalar det() const;
  // Solve A X = B; false when inconsistent.
  bool solve(const Matrix& b, Matrix& x) const;

  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const Matrix& m);
  Matrix col(size_t j) const { return block(0, j, r_, 1); }
  static Matrix hstack(const std::vector<Matrix>& ms, size_t rows, uint32_t p);
  static Matrix vstack(const std::vector<Matrix>& ms, size_t cols, uint32_t p);
  static Matrix direct_sum(const Matrix& a, const Matrix& b);
  Matrix pow(unsigned e) const;
  std::string str() const;

 private:
  size_t r_ = 0, c_ = 0;
  uint32_t p_ = 0;
  std::vector<Scalar> a_;
};

// Row echelon data: reduced rows and pivot columns.
struct Matrix::Echelon {
  Matrix rref;
  std::vector<size_t> pivots;
};

}  // namespace jc
