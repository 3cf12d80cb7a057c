#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epitheta/linalg.hpp"

namespace epitheta {

enum class WittLabel { plus, minus, aniso };

// Finite-dimensional space over a field with involution, carrying the
// eps-hermitian form <v1,v2> = v1^dagger G v2 with G^dagger = eps G.
struct EpsHermSpace {
  const FieldDesc* field = nullptr;
  int epsilon = 1;
  FMat gram;
  FMat gram_inv;
  std::vector<WittLabel> labels;

  int dim() const { return static_cast<int>(gram.rows()); }
  bool unitary() const { return field->involution() == InvolutionKind::frobenius; }
  Fq pair(const FVec& v1, const FVec& v2) const;
};

// Basis e_1..e_h, anisotropic vectors, e_{-1}..e_{-h}.
EpsHermSpace witt_basis(const FieldDesc& f, int dim, int epsilon, int witt_index, const std::vector<Fq>& aniso);
// Arbitrary Gram matrix; every basis vector labelled anisotropic.
EpsHermSpace space_from_gram(const FieldDesc& f, int epsilon, const FMat& gram);

// Adjoint of w : V -> V' with respect to both forms: G^{-1} w^dagger G'.
template <class S>
Mat<S> adjoint(const Mat<S>& w, const Mat<S>& gram_inv, const Mat<S>& gram_target) {
  return gram_inv * conj_transpose(w) * gram_target;
}

struct FormedMap {
  const EpsHermSpace* source = nullptr;
  const EpsHermSpace* target = nullptr;
  FMat matrix;  // dim target x dim source
};

FMat star(const FMat& w, const EpsHermSpace& V, const EpsHermSpace& Vp);
inline FMat star(const FMat& X, const EpsHermSpace& V) { return star(X, V, V); }
FormedMap star(const FormedMap& w);
// Sign s with (w*)* = s w, computed on a generic probe map.
int double_star_sign(const EpsHermSpace& V, const EpsHermSpace& Vp);

bool is_isometry(const FMat& g, const EpsHermSpace& V);
bool lie_member(const FMat& X, const EpsHermSpace& V);
// 1/2 tr_{D/k} tr(X2* X1).
Fq trace_form(const FMat& X1, const FMat& X2, const EpsHermSpace& V);
// tr_{D/k}: x + x^tau for a nontrivial involution, x otherwise.
Fq reduced_trace(const Fq& x);

// Subspace of a matrix space, as a vector space over the fixed field of the
// involution (for unitary data this is half the dimension over F_q).
class MatSpace {
 public:
  MatSpace() = default;
  MatSpace(const FieldDesc& f, int rows, int cols, const std::vector<FMat>& spanning);
  // Solutions X of a fixed-field-linear equation L(X) = 0.
  static MatSpace kernel_of(const FieldDesc& f, int rows, int cols, const std::function<FMat(const FMat&)>& L);
  static MatSpace full(const FieldDesc& f, int rows, int cols);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<FMat>& basis() const { return basis_; }
  const FieldDesc& field() const { return *f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::optional<std::vector<Fq>> coords(const FMat& X) const;
  // Coordinates without the membership check.
  std::vector<Fq> coords_unchecked(const FMat& X) const;
  bool contains(const FMat& X) const { return coords(X).has_value(); }
  FMat combine(const std::vector<Fq>& c) const;
  // All elements, enumerated in lexicographic coefficient order.
  std::uint64_t size() const;
  FMat element(std::uint64_t index) const;

 private:
  const FieldDesc* f_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<FMat> basis_;
  std::vector<int> pivot_rows_;
  FMat pivot_inv_;
};

// Real coordinates of a matrix over the fixed field (length rows*cols*[F_q:F_q0]).
FVec real_coords(const FMat& X);
// Basis of F_q over the fixed field.
std::vector<Fq> scalar_basis(const FieldDesc& f);

MatSpace lie_algebra(const EpsHermSpace& V);

std::string describe(const EpsHermSpace& V);

}  // namespace epitheta
