#include "jacclan/matrix.hpp"

#include <sstream>

namespace jc {

Matrix::Matrix(size_t rows, size_t cols, uint32_t p) : r_(rows), c_(cols), p_(p) {
  Scalar z = p ? Scalar::mod(p, 0) : Scalar(0);
  a_.assign(rows * cols, z);
}

Matrix Matrix::identity(size_t n, uint32_t p) { return scalar(n, Scalar(1), p); }

Matrix Matrix::scalar(size_t n, const Scalar& s, uint32_t p) {
  Matrix m(n, n, p);
  Scalar v = s.in_field(p);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = v;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) fail(ErrorKind::GradeMismatch, "matrix product shape mismatch");
  Matrix m(r_, o.c_, p_ ? p_ : o.p_);
  if (m.p_) {
    const int64_t p = m.p_;
    std::vector<int64_t> acc(o.c_);
    for (size_t i = 0; i < r_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (size_t k = 0; k < c_; ++k) {
        int64_t x = at(i, k).in_field(m.p_).residue();
        if (!x) continue;
        for (size_t j = 0; j < o.c_; ++j) {
          acc[j] = (acc[j] + x * o.at(k, j).in_field(m.p_).residue()) % p;
        }
      }
      for (size_t j = 0; j < o.c_; ++j) m.at(i, j) = Scalar::mod(m.p_, acc[j]);
    }
    return m;
  }
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      const Scalar& x = at(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < o.c_; ++j) m.at(i, j) += x * o.at(k, j);
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) fail(ErrorKind::GradeMismatch, "matrix sum shape mismatch");
  Matrix m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x * s;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(c_, r_, p_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix::Echelon Matrix::echelon() const {
  Echelon e;
  if (p_) {
    const int64_t p = p_;
    std::vector<int64_t> w(r_ * c_);
    for (size_t i = 0; i < a_.size(); ++i) w[i] = a_[i].in_field(p_).residue();
    size_t row = 0;
    for (size_t col = 0; col < c_ && row < r_; ++col) {
      size_t piv = row;
      while (piv < r_ && w[piv * c_ + col] == 0) ++piv;
      if (piv == r_) continue;
      if (piv != row)
        for (size_t j = 0; j < c_; ++j) std::swap(w[piv * c_ + j], w[row * c_ + j]);
      int64_t iv = inv_mod(w[row * c_ + col], p);
      for (size_t j = col; j < c_; ++j) w[row * c_ + j] = (w[row * c_ + j] * iv) % p;
      for (size_t i = 0; i < r_; ++i) {
        if (i == row) continue;
        int64_t f = w[i * c_ + col];
        if (!f) continue;
        for (size_t j = col; j < c_; ++j) {
          int64_t x = w[row * c_ + j];
          if (x) w[i * c_ + j] = ((w[i * c_ + j] - f * x) % p + p) % p;
        }
      }
      e.pivots.push_back(col);
      ++row;
    }
    e.rref = Matrix(row, c_, p_);
    for (size_t i = 0; i < row; ++i)
      for (size_t j = 0; j < c_; ++j) e.rref.at(i, j) = Scalar::mod(p_, w[i * c_ + j]);
    return e;
  }
  std::vector<mpq_class> w(r_ * c_);
  for (size_t i = 0; i < a_.size(); ++i) w[i] = a_[i].to_mpq();
  size_t row = 0;
  for (size_t col = 0; col < c_ && row < r_; ++col) {
    size_t piv = row;
    while (piv < r_ && w[piv * c_ + col] == 0) ++piv;
    if (piv == r_) continue;
    if (piv != row)
      for (size_t j = 0; j < c_; ++j) std::swap(w[piv * c_ + j], w[row * c_ + j]);
    mpq_class iv = 1 / w[row * c_ + col];
    for (size_t j = col; j < c_; ++j) w[row * c_ + j] *= iv;
    for (size_t i = 0; i < r_; ++i) {
      if (i == row) continue;
      mpq_class f = w[i * c_ + col];
      if (f == 0) continue;
      for (size_t j = col; j < c_; ++j)
        if (w[row * c_ + j] != 0) w[i * c_ + j] -= f * w[row * c_ + j];
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.rref = Matrix(row, c_, p_);
  for (size_t i = 0; i < row; ++i)
    for (size_t j = 0; j < c_; ++j) e.rref.at(i, j) = Scalar::rational(w[i * c_ + j]);
  return e;
}

size_t Matrix::rank() const { return echelon().pivots.size(); }

Matrix Matrix::nullspace() const {
  Echelon e = echelon();
  std::vector<bool> is_piv(c_, false);
  for (size_t c : e.pivots) is_piv[c] = true;
  std::vector<size_t> free;
  for (size_t j = 0; j < c_; ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix n(c_, free.size(), p_);
  for (size_t k = 0; k < free.size(); ++k) {
    n.at(free[k], k) = Scalar(1).in_field(p_);
    for (size_t i = 0; i < e.pivots.size(); ++i) n.at(e.pivots[i], k) = -e.rref.at(i, free[k]);
  }
  return n;
}

bool Matrix::solve(const Matrix& b, Matrix& x) const {
  Matrix aug = hstack({*this, b}, r_, p_);
  Echelon e = aug.echelon();
  x = Matrix(c_, b.c_, p_);
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= c_) return false;
    for (size_t j = 0; j < b.c_; ++j) x.at(e.pivots[i], j) = e.rref.at(i, c_ + j);
  }
  return true;
}

bool Matrix::inverse(Matrix& out) const {
  if (r_ != c_) return false;
  if (!solve(identity(r_, p_), out)) return false;
  return rank() == r_;
}

Matrix Matrix::inverse() const {
  Matrix out;
  if (!inverse(out)) fail(ErrorKind::DivisionByZero, "singular matrix");
  return out;
}

Scalar Matrix::det() const {
  if (r_ != c_) fail(ErrorKind::GradeMismatch, "determinant of non-square matrix");
  Matrix m = *this;
  Scalar d = Scalar(1).in_field(p_);
  for (size_t col = 0; col < c_; ++col) {
    size_t piv = col;
    while (piv < r_ && m.at(piv, col).is_zero()) ++piv;
    if (piv == r_) return Scalar(0).in_field(p_);
    if (piv != col) {
      for (size_t j = 0; j < c_; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = -d;
    }
    d = d * m.at(col, col);
    Scalar iv = m.at(col, col).inv();
    for (size_t i = col + 1; i < r_; ++i) {
      Scalar f = m.at(i, col) * iv;
      if (f.is_zero()) continue;
      for (size_t j = col; j < c_; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  Matrix m(nr, nc, p_);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(size_t r0, size_t c0, const Matrix& m) {
  for (size_t i = 0; i < m.r_; ++i)
    for (size_t j = 0; j < m.c_; ++j) at(r0 + i, c0 + j) = m.at(i, j);
}

Matrix Matrix::hstack(const std::vector<Matrix>& ms, size_t rows, uint32_t p) {
  size_t cols = 0;
  for (const auto& m : ms) cols += m.c_;
  Matrix out(rows, cols, p);
  size_t c = 0;
  for (const auto& m : ms) {
    out.set_block(0, c, m);
    c += m.c_;
  }
  return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& ms, size_t cols, uint32_t p) {
  size_t rows = 0;
  for (const auto& m : ms) rows += m.r_;
  Matrix out(rows, cols, p);
  size_t r = 0;
  for (const auto& m : ms) {
    out.set_block(r, 0, m);
    r += m.r_;
  }
  return out;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.r_ + b.r_, a.c_ + b.c_, a.p_ ? a.p_ : b.p_);
  m.set_block(0, 0, a);
  m.set_block(a.r_, a.c_, b);
  return m;
}

Matrix Matrix::pow(unsigned e) const {
  Matrix r = identity(r_, p_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < r_; ++i) {
    os << "[";
    for (size_t j = 0; j < c_; ++j) os << (j ? " " : "") << at(i, j).str();
    os << "]\n";
  }
  return os.str();
}

}  // namespace jc
