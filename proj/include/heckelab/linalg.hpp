#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace heckelab {

// Dense matrix over an exact ring T.  T() must be the zero element;
// elements must provide +, -, *, unary -, is_zero(), ==.
template <typename T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

  T& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const T& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  static Mat identity_like(int n, const T& one) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  Mat mul(const Mat& o) const {
    assert(cols == o.rows);
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const T& x = at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < o.cols; ++j) {
          if (o.at(k, j).is_zero()) continue;
          r.at(i, j) += x * o.at(k, j);
        }
      }
    return r;
  }
  Mat add(const Mat& o) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Mat sub(const Mat& o) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Mat scale(const T& c) const {
    Mat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
    return r;
  }
  std::vector<T> mul_vec(const std::vector<T>& v) const {
    assert(int(v.size()) == cols);
    std::vector<T> r(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
  }
  Mat transpose() const {
    Mat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }
};

// In-place reduced row echelon form over a field (T must also provide /).
// Returns pivot columns.  Deterministic: first nonzero pivot.
template <typename T>
std::vector<int> rref_in_place(Mat<T>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    T inv_piv = m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) / inv_piv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      T f = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename T>
int rank_field(Mat<T> m) {
  return int(rref_in_place(m).size());
}

// Particular solution of A x = b, if consistent.
template <typename T>
std::optional<std::vector<T>> solve_field(const Mat<T>& A,
                                          const std::vector<T>& b) {
  Mat<T> m(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, A.cols) = b[i];
  }
  auto pivots = rref_in_place(m);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
  std::vector<T> x(A.cols);
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m.at(int(k), A.cols);
  return x;
}

// Basis of the right nullspace of A.  `one` is the field's unit.
template <typename T>
std::vector<std::vector<T>> nullspace_field(Mat<T> A, const T& one) {
  auto pivots = rref_in_place(A);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (int fc = 0; fc < A.cols; ++fc) {
    if (is_pivot[fc]) continue;
    // Free column fc: x_fc = 1, x_{pivot_k} = -A[k][fc].
    std::vector<T> v(A.cols);
    v[fc] = one;
    for (size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = -A.at(int(k), fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
std::optional<Mat<T>> inverse_field(const Mat<T>& A, const T& one) {
  assert(A.rows == A.cols);
  int n = A.rows;
  Mat<T> m(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = A.at(i, j);
  for (int i = 0; i < n; ++i) m.at(i, n + i) = one;
  auto pivots = rref_in_place(m);
  if (int(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  Mat<T> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = m.at(i, n + j);
  return inv;
}

// Incrementally maintained row space over a field; rows are kept in
// forward-echelon form.  Used for span dimensions and membership.
template <typename T>
class EchelonSpan {
 public:
  // Returns true when v enlarges the span.
  bool insert(std::vector<T> v) {
    reduce(v);
    int p = pivot_of(v);
    if (p < 0) return false;
    T piv = v[p];
    for (auto& x : v) x = x / piv;
    rows_[p] = std::move(v);
    return true;
  }
  bool contains(std::vector<T> v) const {
    reduce(v);
    return pivot_of(v) < 0;
  }
  int dim() const { return int(rows_.size()); }
  const std::map<int, std::vector<T>>& rows() const { return rows_; }

 private:
  void reduce(std::vector<T>& v) const {
    for (const auto& [p, row] : rows_) {
      if (v[p].is_zero()) continue;
      T f = v[p];
      for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * row[j];
    }
  }
  static int pivot_of(const std::vector<T>& v) {
    for (size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) return int(j);
    return -1;
  }
  std::map<int, std::vector<T>> rows_;  // pivot column -> row
};

// Fraction-free Gaussian elimination over an integral domain.  Div must
// perform exact division; divisions below are exact by the Bareiss
// identity.
template <typename T, typename Div>
int bareiss_rank(Mat<T> m, const Div& div) {
  int r = 0;
  std::optional<T> prev;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    for (int i = r + 1; i < m.rows; ++i) {
      for (int j = c + 1; j < m.cols; ++j) {
        T num = m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j);
        m.at(i, j) = prev ? div(num, *prev) : num;
      }
      m.at(i, c) = T();
    }
    prev = m.at(r, c);
    ++r;
  }
  return r;
}

template <typename T, typename Div>
T bareiss_det(Mat<T> m, const Div& div) {
  assert(m.rows == m.cols);
  int n = m.rows;
  if (n == 0) throw std::invalid_argument("bareiss_det: empty matrix");
  bool neg = false;
  std::optional<T> prev;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return T();
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      neg = !neg;
    }
    for (int i = c + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j) {
        T num = m.at(c, c) * m.at(i, j) - m.at(i, c) * m.at(c, j);
        m.at(i, j) = prev ? div(num, *prev) : num;
      }
      m.at(i, c) = T();
    }
    prev = m.at(c, c);
  }
  T det = m.at(n - 1, n - 1);
  return neg ? -det : det;
}

}  // namespace heckelab
