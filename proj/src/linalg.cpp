#include "epitheta/linalg.hpp"

#include <sstream>

namespace epitheta {

FMat fmat(const FieldDesc& f, int rows, int cols, std::initializer_list<long long> entries) {
  if (static_cast<int>(entries.size()) != rows * cols) throw std::invalid_argument("fmat: wrong entry count");
  FMat A(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = Fq::from_int(f, *it++);
  return A;
}

FMat fzeros(const FieldDesc& f, int rows, int cols) {
  FMat A(rows, cols);
  A.fill(Fq(f, 0));
  return A;
}

FMat fidentity(const FieldDesc& f, int n) {
  FMat A = fzeros(f, n, n);
  for (int i = 0; i < n; ++i) A(i, i) = Fq(f, 1);
  return A;
}

FMat embed(const FMat& A, const FieldDesc& f) {
  FMat B(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) B(i, j) = A(i, j).in(f);
  return B;
}

std::vector<std::uint16_t> matrix_key(const FMat& A, const FieldDesc& f) {
  std::vector<std::uint16_t> k;
  k.reserve(A.size() + 2);
  k.push_back(static_cast<std::uint16_t>(A.rows()));
  k.push_back(static_cast<std::uint16_t>(A.cols()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) k.push_back(static_cast<std::uint16_t>(A(i, j).in(f).code()));
  return k;
}

std::string format_matrix(const FMat& A) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < A.rows(); ++i) {
    if (i) os << ";";
    for (int j = 0; j < A.cols(); ++j) os << (j ? "," : "") << A(i, j).str();
  }
  os << "]";
  return os.str();
}

}  // namespace epitheta
