// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The secrelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Dense complex linear algebra for the small matrices that appear in
// link-level MIMO simulation (a handful of antennas per node).
//
// All kernels are pure and use a fixed accumulation order, so identical
// inputs give bit-identical outputs.

#ifndef SECRELAY_NUMERICS_HPP
#define SECRELAY_NUMERICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace secrelay {

using Complex = std::complex<double>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised by inverse() for singular or ill-conditioned input. `condition` is
// the 1-norm condition estimate (infinity for an exact zero pivot).
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

inline constexpr double kMaxConditionNumber = 1e12;

// Row-major dense matrix. Storage up to kInline entries lives inside the
// object; the simulator builds and discards many 2x2..6x6 matrices per slot.
class ComplexMatrix {
 public:
  static constexpr std::size_t kInline = 36;

  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (size() > kInline) heap_.assign(size(), Complex{});
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init)
      : ComplexMatrix(init.size(), init.size() == 0 ? 0 : init.begin()->size()) {
    std::size_t r = 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeError("ragged initializer list");
      std::size_t c = 0;
      for (const auto& v : row) (*this)(r, c++) = v;
      ++r;
    }
  }

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return rows_ * cols_; }
  bool empty() const noexcept { return size() == 0; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex* data() noexcept { return heap_.empty() ? inline_.data() : heap_.data(); }
  const Complex* data() const noexcept { return heap_.empty() ? inline_.data() : heap_.data(); }

  std::span<Complex> entries() noexcept { return {data(), size()}; }
  std::span<const Complex> entries() const noexcept { return {data(), size()}; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data()[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data()[r * cols_ + c];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+=");
    Complex* a = data();
    const Complex* b = o.data();
    for (std::size_t i = 0; i < size(); ++i) a[i] += b[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-=");
    Complex* a = data();
    const Complex* b = o.data();
    for (std::size_t i = 0; i < size(); ++i) a[i] -= b[i];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) noexcept {
    for (auto& v : entries()) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) noexcept {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    return std::equal(a.data(), a.data() + a.size(), b.data());
  }

  // Adds `s` to every diagonal entry.
  ComplexMatrix& add_identity(double s = 1.0) {
    if (!is_square()) throw ShapeError("add_identity: matrix not square");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, i) += s;
    return *this;
  }

  // Columns [first, first + count).
  ComplexMatrix col_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw ShapeError("col_block out of range");
    ComplexMatrix m(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
    return m;
  }

  // Rows [first, first + count).
  ComplexMatrix row_block(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw ShapeError("row_block out of range");
    ComplexMatrix m(count, cols_);
    std::copy(data() + first * cols_, data() + (first + count) * cols_, m.data());
    return m;
  }

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError(std::string(op) + ": shape " + shape_string() + " vs " + o.shape_string());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::array<Complex, kInline> inline_{};
  std::vector<Complex> heap_;
};

inline ComplexMatrix conj_transpose(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = std::conj(a(r, c));
  return t;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: " + a.shape_string() + " * " + b.shape_string());
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  const Complex* pa = a.data();
  const Complex* pb = b.data();
  Complex* pc = c.data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = pa[i * n + k];
      for (std::size_t j = 0; j < m; ++j) pc[i * m + j] += aik * pb[k * m + j];
    }
  }
  return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

// A * A^H without materialising the transpose.
inline ComplexMatrix gram(const ComplexMatrix& a) {
  ComplexMatrix g(a.rows(), a.rows());
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * std::conj(a(j, k));
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
  }
  return g;
}

// A * C * A^H for Hermitian C; the result is exactly Hermitian.
inline ComplexMatrix congruence(const ComplexMatrix& a, const ComplexMatrix& c) {
  const ComplexMatrix ac = matmul(a, c);
  ComplexMatrix g(a.rows(), a.rows());
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += ac(i, k) * std::conj(a(j, k));
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

inline Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("trace: matrix not square");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

inline double frobenius_norm_sq(const ComplexMatrix& a) noexcept {
  double s = 0.0;
  for (const auto& v : a.entries()) s += std::norm(v);
  return s;
}

inline double frobenius_norm(const ComplexMatrix& a) noexcept {
  return std::sqrt(frobenius_norm_sq(a));
}

inline bool all_finite(const ComplexMatrix& a) noexcept {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

// [a b ...] side by side; all blocks need the same row count.
inline ComplexMatrix hstack(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks.front().rows()) throw ShapeError("hstack: row mismatch");
    cols += b.cols();
  }
  ComplexMatrix m(blocks.front().rows(), cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) m(r, off + c) = b(r, c);
    off += b.cols();
  }
  return m;
}

// [a; b; ...] stacked vertically; all blocks need the same column count.
inline ComplexMatrix vstack(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks.front().cols()) throw ShapeError("vstack: column mismatch");
    rows += b.rows();
  }
  ComplexMatrix m(rows, blocks.front().cols());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    std::copy(b.data(), b.data() + b.size(), m.data() + off * m.cols());
    off += b.rows();
  }
  return m;
}

inline double hermitian_defect(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("hermitian_defect: matrix not square");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(s);
}

namespace detail {

// In-place LU with partial pivoting (largest magnitude, lowest row on ties).
// Returns false on an exactly zero pivot column.
struct LuFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

inline LuFactors lu_decompose(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("LU: matrix not square (" + a.shape_string() + ")");
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n), 1, false};
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  ComplexMatrix& m = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(m(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    const Complex inv_pivot = 1.0 / m(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex factor = m(r, k) * inv_pivot;
      m(r, k) = factor;
      if (factor == Complex{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= factor * m(k, c);
    }
  }
  return f;
}

inline double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) s += std::abs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace detail

inline Complex det(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("det: matrix not square (" + a.shape_string() + ")");
  if (a.rows() == 1) return a(0, 0);
  const auto f = detail::lu_decompose(a);
  if (f.singular) return Complex{};
  Complex d = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
  return d;
}

// Inverse via pivoted LU. Throws SingularMatrixError when a pivot is exactly
// zero or the 1-norm condition number exceeds kMaxConditionNumber.
inline ComplexMatrix inverse(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("inverse: matrix not square (" + a.shape_string() + ")");
  const std::size_t n = a.rows();
  const auto f = detail::lu_decompose(a);
  if (f.singular)
    throw SingularMatrixError("inverse: singular matrix", std::numeric_limits<double>::infinity());
  ComplexMatrix inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    // Solve L U x = P e_col.
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = (f.perm[i] == col) ? Complex{1.0} : Complex{};
      for (std::size_t k = 0; k < i; ++k) s -= f.lu(i, k) * x[k];
      x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = x[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= f.lu(ii, k) * x[k];
      x[ii] = s / f.lu(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  const double cond = detail::one_norm(a) * detail::one_norm(inv);
  if (!(cond <= kMaxConditionNumber)) {
    std::ostringstream os;
    os << "inverse: ill-conditioned matrix (condition estimate " << cond << ")";
    throw SingularMatrixError(os.str(), cond);
  }
  return inv;
}

// Lower-triangular L with A = L L^H. Only the lower triangle of A is read.
inline ComplexMatrix cholesky(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeError("cholesky: matrix not square (" + a.shape_string() + ")");
  const std::size_t n = a.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) throw DomainError("cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

// Solves L X = B for lower-triangular L.
inline ComplexMatrix solve_lower(const ComplexMatrix& l, const ComplexMatrix& b) {
  if (!l.is_square() || l.rows() != b.rows()) throw ShapeError("solve_lower: shape mismatch");
  const std::size_t n = l.rows();
  ComplexMatrix x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i);
    }
  }
  return x;
}

// Base-2 log-determinant of a Hermitian positive-definite matrix.
inline double log_det_herm(const ComplexMatrix& a) {
  const ComplexMatrix l = cholesky(a);
  double s = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) s += std::log2(l(i, i).real());
  return 2.0 * s;
}

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

// Cyclic Jacobi eigensolver for Hermitian matrices.
inline HermitianEigen eigh(const ComplexMatrix& input) {
  if (!input.is_square()) throw ShapeError("eigh: matrix not square (" + input.shape_string() + ")");
  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G acts on columns p, q: G = [[c, s], [-s conj(phase), c conj(phase)]].
        const Complex g_pp = c, g_pq = s;
        const Complex g_qp = -s * std::conj(phase), g_qq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A G
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- G^H A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {  // V <- V G
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

inline constexpr double kHermitianTolerance = 1e-10;

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// [-1e-10, 0) are clamped to zero; anything more negative is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& r) {
  if (!r.is_square()) throw ShapeError("psd_sqrt: matrix not square (" + r.shape_string() + ")");
  if (hermitian_defect(r) >= kHermitianTolerance)
    throw DomainError("psd_sqrt: matrix is not Hermitian");
  const auto eig = eigh(r);
  const std::size_t n = r.rows();
  if (n > 0 && eig.values.front() < -kHermitianTolerance)
    throw DomainError("psd_sqrt: matrix is indefinite (min eigenvalue " +
                      std::to_string(eig.values.front()) + ")");
  // V diag(l^(1/4)) times its conjugate transpose is V diag(sqrt(l)) V^H.
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const double root = std::sqrt(std::sqrt(std::max(eig.values[c], 0.0)));
    for (std::size_t k = 0; k < n; ++k) scaled(k, c) *= root;
  }
  ComplexMatrix s = gram(scaled);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = s(i, i).real();
  return s;
}

}  // namespace secrelay

#endif  // SECRELAY_NUMERICS_HPP
