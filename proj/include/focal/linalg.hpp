#pragma once

// Dense linear algebra over F_p and over (nested) dual rings.
//
// Elimination always pivots on units. Over F_p that is every nonzero entry;
// over a dual ring it is every entry with nonzero residue. When elimination
// over a dual ring leaves a non-zero remainder below the pivot rows the
// kernel is not free of the residue-field rank and the input is treated as
// a non-generic sample (DegeneratePivot).

#include <algorithm>
#include <cassert>
#include <optional>
#include <span>
#include <vector>

#include "focal/dual.hpp"
#include "focal/errors.hpp"
#include "focal/field.hpp"

namespace focal {

template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const R& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<R>>& rows) {
    assert(!rows.empty());
    Matrix m(rows.size(), rows[0].size(), zero_like(rows[0][0]));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == m.cols_);
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  static Matrix identity(std::size_t n, const R& one) {
    Matrix m(n, n, zero_like(one));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<R> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const R> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<R> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

  void append_row(std::span<const R> v) {
    assert(rows_ == 0 || v.size() == cols_);
    if (rows_ == 0) cols_ = v.size();
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back((*this)(i, j));
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> data_;
};

template <class R>
std::vector<R> mat_vec(const Matrix<R>& m, std::span<const R> v) {
  assert(v.size() == m.cols());
  std::vector<R> out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    R acc = zero_like(v[0]);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out.push_back(acc);
  }
  return out;
}

/// v * M (row vector times matrix).
template <class R>
std::vector<R> vec_mat(std::span<const R> v, const Matrix<R>& m) {
  assert(v.size() == m.rows());
  std::vector<R> out(m.cols(), zero_like(m(0, 0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  return out;
}

template <class R>
Matrix<R> mat_mul(const Matrix<R>& a, const Matrix<R>& b) {
  assert(a.cols() == b.rows());
  Matrix<R> c(a.rows(), b.cols(), zero_like(a(0, 0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class R>
R dot(std::span<const R> a, std::span<const R> b) {
  assert(a.size() == b.size() && !a.empty());
  R acc = zero_like(a[0]);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Reduced row-echelon form with the pivot column of each nonzero row.
template <class R>
struct Echelon {
  Matrix<R> reduced;             // first pivots.size() rows are the pivot rows
  std::vector<std::size_t> pivots;
  bool exact = true;             // rows below the pivot rows are identically zero

  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination with unit pivots. With `stop_col` the pivot
/// search is limited to the first stop_col columns.
template <class R>
Echelon<R> echelonize(Matrix<R> m, std::optional<std::size_t> stop_col = std::nullopt) {
  Echelon<R> e;
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t last = stop_col ? std::min(*stop_col, cols) : cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < last && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (is_unit(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    m.swap_rows(r, piv);
    const R pinv = inverse(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= pinv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const R f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows && e.exact; ++i)
    for (std::size_t j = 0; j < last; ++j)
      if (!is_zero(m(i, j))) {
        e.exact = false;
        break;
      }
  e.reduced = std::move(m);
  return e;
}

/// Kernel basis in canonical form: one vector per free column f, with a 1
/// at f and 0 at every other free column.
template <class R>
Matrix<R> kernel_from_echelon(const Echelon<R>& e, std::size_t cols, const R& one) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix<R> k(0, cols, zero_like(one));
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<R> v(cols, zero_like(one));
    v[f] = one;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    k.append_row(v);
  }
  return k;
}

template <class R>
struct RankKernel {
  std::size_t rank = 0;
  Matrix<R> kernel;  // rows span {v : M v = 0}
};

/// rank + kernel over F_p.
inline RankKernel<Fp> rank_and_kernel(const Matrix<Fp>& m) {
  assert(m.rows() > 0 && m.cols() > 0);
  auto e = echelonize(m);
  return {e.rank(), kernel_from_echelon(e, m.cols(), one_like(m(0, 0)))};
}

inline std::size_t rank(const Matrix<Fp>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return echelonize(m).rank();
}

/// Kernel over a dual ring. The residue parts of the returned rows are the
/// canonical kernel basis of the residue matrix.
template <class R>
Matrix<R> dual_rank_kernel(const Matrix<R>& m) {
  assert(m.rows() > 0 && m.cols() > 0);
  auto e = echelonize(m);
  if (!e.exact)
    throw Error(ErrorKind::DegeneratePivot,
                "residue rank differs from rank over the dual ring (non-generic input)");
  return kernel_from_echelon(e, m.cols(), one_like(m(0, 0)));
}

template <class R>
struct AffineSolution {
  std::vector<R> particular;
  Matrix<R> kernel;
};

/// Solves M x = b. Returns nullopt when b is outside the column span.
template <class R>
std::optional<AffineSolution<R>> solve_affine(const Matrix<R>& m, std::span<const R> b) {
  assert(b.size() == m.rows());
  const std::size_t cols = m.cols();
  Matrix<R> aug(m.rows(), cols + 1, zero_like(b[0]));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
    aug(i, cols) = b[i];
  }
  auto e = echelonize(std::move(aug), cols);
  if (!e.exact)
    throw Error(ErrorKind::DegeneratePivot, "solve_affine: residue rank mismatch over dual ring");
  for (std::size_t i = e.rank(); i < m.rows(); ++i)
    if (!is_zero(e.reduced(i, cols))) return std::nullopt;
  const R one = one_like(b[0]);
  AffineSolution<R> s;
  s.particular.assign(cols, zero_like(one));
  for (std::size_t i = 0; i < e.rank(); ++i) s.particular[e.pivots[i]] = e.reduced(i, cols);
  Echelon<R> trimmed{e.reduced, e.pivots, true};
  s.kernel = kernel_from_echelon(trimmed, cols, one);
  return s;
}

/// Determinant by elimination when a unit pivot always exists, which over a
/// field means always. Returns nullopt when a dual-ring input gets stuck.
template <class R>
std::optional<R> det_by_elimination(Matrix<R> m) {
  const std::size_t n = m.rows();
  assert(n == m.cols() && n > 0);
  R det = one_like(m(0, 0));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (is_unit(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) {
      bool all_zero = true;
      for (std::size_t i = c; i < n; ++i) all_zero = all_zero && is_zero(m(i, c));
      if (all_zero) return zero_like(det);
      return std::nullopt;
    }
    if (piv != c) {
      m.swap_rows(piv, c);
      det = -det;
    }
    det *= m(c, c);
    const R pinv = inverse(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      const R f = m(i, c) * pinv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Row space of `sub` contained in row space of `sup`.
inline bool row_space_contains(const Matrix<Fp>& sup, const Matrix<Fp>& sub) {
  Matrix<Fp> stacked = sup;
  for (std::size_t i = 0; i < sub.rows(); ++i) stacked.append_row(sub.row(i));
  return rank(stacked) == rank(sup);
}

inline bool same_row_space(const Matrix<Fp>& a, const Matrix<Fp>& b) {
  return rank(a) == rank(b) && row_space_contains(a, b);
}

/// Coordinates of v in the basis given by the rows of `basis`, or nullopt
/// if v is outside their span. Basis rows must be independent.
template <class R>
std::optional<std::vector<R>> coordinates_in(const Matrix<R>& basis, std::span<const R> v) {
  auto sol = solve_affine(basis.transpose(), v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

}  // namespace focal
