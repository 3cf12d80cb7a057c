#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epitheta/check.hpp"
#include "epitheta/moment.hpp"
#include "epitheta/rational.hpp"

namespace epitheta {

// Form involution composed with Ad(t_bar).
struct Twist {
  enum Kind { none, inner, outer } kind = none;  // X -> J X J^-1, X -> -J^-1 X^T J
  FMat J;
  std::string str() const;
};

FMat apply_twist(const Twist& t, const FMat& X);

// Z/m grading of a classical Lie algebra. Piece j is the zeta^{-j}
// eigenspace of theta = Ad(t_bar) o twist, or, for label gradings, the span
// of matrix units E_ik with labels[i] - labels[k] = j (mod m).
struct GradedGroup {
  LieAlgebra g;
  MatSpace lie;
  std::optional<EpsHermSpace> space;  // absent for gl
  int m = 1;
  std::optional<Fq> zeta;
  std::optional<FMat> t_bar;  // diag(zeta^{-labels})
  Twist twist;
  std::vector<int> labels;
  std::vector<MatSpace> pieces;  // index j in [0, m)
  int center0_dim = 0;           // dim (center of g) meet g_0

  const FieldDesc& field() const { return *g.field; }
  int n() const { return g.type.n; }
  FMat theta(const FMat& X) const;  // requires zeta
  std::optional<int> degree_of(const FMat& X) const;
  // Degree-0 group membership: isometry (or invertible for gl) commuting with theta.
  bool in_degree0_group(const FMat& h) const;
  std::string describe() const;
};

struct GradedVector {
  int degree = 0;
  FMat value;
};

// Eigenspace grading; requires m | (q0 - 1) with q0 the fixed-field size.
GradedGroup build_grading(const EpsHermSpace& V, int m, const std::vector<int>& labels, const Twist& twist = {});
GradedGroup build_grading(const FieldDesc& f, int n, int m, const std::vector<int>& labels, const Twist& twist = {});
// Same pieces read off from labels; no root of unity needed.
GradedGroup build_label_grading(const EpsHermSpace& V, int m, const std::vector<int>& labels);
GradedGroup build_label_grading(const FieldDesc& f, int n, int m, const std::vector<int>& labels);

// Integer labels m * a_k, shifted so that they are integers; throws if the
// pairwise differences are not integral.
std::vector<int> labels_from_coords(const std::vector<Rational>& coords, int m);

int degree0_centralizer_dim(const GradedGroup& G, const FMat& lam);
bool stable_candidate(const GradedGroup& G, const FMat& lam);

// Bracket compatibility, theta^m = 1, dimension count, degree-0 group action.
Checks grading_checks(const GradedGroup& G, std::uint64_t samples, std::uint64_t seed);

}  // namespace epitheta
