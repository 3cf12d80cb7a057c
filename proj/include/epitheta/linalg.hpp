#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

#include "epitheta/field.hpp"

namespace epitheta {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using FMat = Mat<Fq>;
using FVec = Vec<Fq>;

// Row echelon form; returns pivot columns. Pivots must be units.
template <class S>
std::vector<int> rref_inplace(Mat<S>& A) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < A.rows(); ++i)
      if (is_unit(A(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) A.row(piv).swap(A.row(r));
    S inv = inverse(A(r, c));
    for (int j = c; j < A.cols(); ++j) A(r, j) = A(r, j) * inv;
    for (int i = 0; i < A.rows(); ++i) {
      if (i == r || is_zero(A(i, c))) continue;
      S f = A(i, c);
      for (int j = c; j < A.cols(); ++j) A(i, j) = A(i, j) - f * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S>
int rank(Mat<S> A) {
  return static_cast<int>(rref_inplace(A).size());
}

// Columns form a basis of {v : A v = 0}.
template <class S>
Mat<S> kernel(Mat<S> A) {
  const int n = static_cast<int>(A.cols());
  std::vector<int> piv = rref_inplace(A);
  std::vector<char> is_piv(n, 0);
  for (int c : piv) is_piv[c] = 1;
  Mat<S> K(n, n - static_cast<int>(piv.size()));
  for (int i = 0; i < K.rows(); ++i)
    for (int j = 0; j < K.cols(); ++j) K(i, j) = S(0);
  int col = 0;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    K(f, col) = S(1);
    for (size_t r = 0; r < piv.size(); ++r) K(piv[r], col) = -A(static_cast<int>(r), f);
    ++col;
  }
  return K;
}

template <class S>
std::optional<Mat<S>> try_inverse(const Mat<S>& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  Mat<S> aug(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      aug(i, j) = A(i, j);
      aug(i, n + j) = S(i == j ? 1 : 0);
    }
  std::vector<int> piv = rref_inplace(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  return Mat<S>(aug.rightCols(n));
}

template <class S>
Mat<S> inverse(const Mat<S>& A) {
  auto r = try_inverse(A);
  if (!r) throw std::domain_error("singular matrix");
  return *r;
}

template <class S>
S det(Mat<S> A) {
  const int n = static_cast<int>(A.rows());
  S d(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (is_unit(A(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) return S(0);
    if (piv != c) {
      A.row(piv).swap(A.row(c));
      d = -d;
    }
    d = d * A(c, c);
    S inv = inverse(A(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(A(i, c))) continue;
      S f = A(i, c) * inv;
      for (int j = c; j < n; ++j) A(i, j) = A(i, j) - f * A(c, j);
    }
  }
  return d;
}

// Coefficients c[0..n] of det(z I - A), via reduction to Hessenberg form.
template <class S>
std::vector<S> charpoly(Mat<S> H) {
  const int n = static_cast<int>(H.rows());
  for (int m = 1; m < n - 1; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (!is_zero(H(i, m - 1))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      H.row(piv).swap(H.row(m));
      H.col(piv).swap(H.col(m));
    }
    S inv = inverse(H(m, m - 1));
    for (int i = m + 1; i < n; ++i) {
      if (is_zero(H(i, m - 1))) continue;
      S u = H(i, m - 1) * inv;
      for (int j = 0; j < n; ++j) H(i, j) = H(i, j) - u * H(m, j);
      for (int j = 0; j < n; ++j) H(j, m) = H(j, m) + u * H(j, i);
    }
  }
  // p[k] is the characteristic polynomial of the leading k x k block.
  std::vector<std::vector<S>> p(n + 1);
  p[0] = {S(1)};
  for (int k = 1; k <= n; ++k) {
    std::vector<S> next(k + 1, S(0));
    for (int d = 0; d < k; ++d) {
      next[d + 1] = next[d + 1] + p[k - 1][d];
      next[d] = next[d] - H(k - 1, k - 1) * p[k - 1][d];
    }
    S prod(1);
    for (int i = 1; i < k; ++i) {
      prod = prod * H(k - i, k - i - 1);
      if (is_zero(prod)) break;
      S t = prod * H(k - i - 1, k - 1);
      for (size_t d = 0; d < p[k - i - 1].size(); ++d) next[d] = next[d] - t * p[k - i - 1][d];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

template <class S>
Mat<S> zeros(int r, int c) {
  Mat<S> A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = S(0);
  return A;
}

template <class S>
Mat<S> identity(int n) {
  Mat<S> A = zeros<S>(n, n);
  for (int i = 0; i < n; ++i) A(i, i) = S(1);
  return A;
}

// Entrywise involution followed by transpose.
template <class S>
Mat<S> conj_transpose(const Mat<S>& A) {
  Mat<S> B(A.cols(), A.rows());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) B(j, i) = involute(A(i, j));
  return B;
}

template <class S>
bool is_zero_matrix(const Mat<S>& A) {
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (!is_zero(A(i, j))) return false;
  return true;
}

template <class S>
S trace(const Mat<S>& A) {
  S t(0);
  for (int i = 0; i < std::min(A.rows(), A.cols()); ++i) t = t + A(i, i);
  return t;
}

// Finite-field helpers.
FMat fmat(const FieldDesc& f, int rows, int cols, std::initializer_list<long long> entries);
FMat fzeros(const FieldDesc& f, int rows, int cols);
FMat fidentity(const FieldDesc& f, int n);
FMat embed(const FMat& A, const FieldDesc& f);
std::vector<std::uint16_t> matrix_key(const FMat& A, const FieldDesc& f);
std::string format_matrix(const FMat& A);

}  // namespace epitheta
