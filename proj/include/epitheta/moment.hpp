#pragma once

#include <memory>
#include <random>
#include <string>

#include "epitheta/check.hpp"
#include "epitheta/dual.hpp"
#include "epitheta/parallel.hpp"
#include "epitheta/spaces.hpp"

namespace epitheta {

// Lie algebra of a classical group, as used by the invariant P.
struct LieType {
  enum Kind { gl, sp, o, u };
  Kind kind = gl;
  int n = 0;  // matrix size
  int rank() const { return kind == sp || kind == o ? n / 2 : n; }
  std::string str() const;
};

struct LieAlgebra {
  LieType type;
  const FieldDesc* field = nullptr;
  MatSpace basis;  // unused for gl / u, whose ad is taken on matrix units
  static LieAlgebra of(const EpsHermSpace& V);
  static LieAlgebra general_linear(const FieldDesc& f, int n);
  int dim() const;  // dimension of the space ad acts on
};

FMat ad_matrix(const FMat& X, const LieAlgebra& g);
// Coefficient of z^rank in det(z + ad X).
Fq invariant_P(const FMat& X, const LieAlgebra& g);
bool is_regular_semisimple(const FMat& X, const LieAlgebra& g);
// Independent test: dim ker ad X = rank and ker ad X = ker (ad X)^2.
bool regular_semisimple_oracle(const FMat& X, const LieAlgebra& g);
int centralizer_dim(const FMat& X, const LieAlgebra& g);

template <class S>
Mat<S> cayley(const Mat<S>& g) {
  const int n = static_cast<int>(g.rows());
  Mat<S> I = identity<S>(n);
  auto inv = try_inverse<S>(Mat<S>(g + I));
  if (!inv) throw std::domain_error("cayley: g + 1 is not invertible");
  return Mat<S>((g - I) * (*inv) * S(2));
}

// Reductive dual pair realized over a residue field. Elements of W are
// matrices of size w_rows x w_cols; Lie algebra elements are matrices in
// lie() / lie_p(); group elements are matrices acting via act().
class PairModel {
 public:
  virtual ~PairModel() = default;
  virtual const FieldDesc& field() const = 0;
  virtual std::string describe() const = 0;
  virtual int w_rows() const = 0;
  virtual int w_cols() const = 0;
  virtual FMat M(const FMat& w) const = 0;
  virtual FMat Mp(const FMat& w) const = 0;
  virtual Fq pairing(const FMat& w1, const FMat& w2) const = 0;
  virtual Fq B(const FMat& X1, const FMat& X2) const = 0;
  virtual Fq Bp(const FMat& X1, const FMat& X2) const = 0;
  virtual FMat lie_act(const FMat& X, const FMat& w) const = 0;
  virtual FMat lie_act_p(const FMat& X, const FMat& w) const = 0;
  virtual FMat act(const FMat& g, const FMat& gp, const FMat& w) const = 0;
  virtual bool in_group(const FMat& g) const = 0;
  virtual bool in_group_p(const FMat& g) const = 0;
  virtual FMat random_group(std::mt19937_64& rng) const = 0;
  virtual FMat random_group_p(std::mt19937_64& rng) const = 0;
  virtual const LieAlgebra& lie() const = 0;
  virtual const LieAlgebra& lie_p() const = 0;
  virtual const MatSpace& lie_space() const = 0;
  virtual const MatSpace& lie_space_p() const = 0;
  const MatSpace& W() const;

 protected:
  mutable std::shared_ptr<MatSpace> W_;
};

// Hom(V, V') with w* = G^{-1} w^dagger G'.
class FormedPair : public PairModel {
 public:
  FormedPair(EpsHermSpace V, EpsHermSpace Vp, int moment_sign = 1);
  const EpsHermSpace& V() const { return V_; }
  const EpsHermSpace& Vp() const { return Vp_; }

  const FieldDesc& field() const override { return *V_.field; }
  std::string describe() const override;
  int w_rows() const override { return Vp_.dim(); }
  int w_cols() const override { return V_.dim(); }
  FMat star(const FMat& w) const;
  FMat M(const FMat& w) const override;
  FMat Mp(const FMat& w) const override;
  Fq pairing(const FMat& w1, const FMat& w2) const override;
  Fq B(const FMat& X1, const FMat& X2) const override { return trace_form(X1, X2, V_); }
  Fq Bp(const FMat& X1, const FMat& X2) const override { return trace_form(X1, X2, Vp_); }
  FMat lie_act(const FMat& X, const FMat& w) const override { return -(w * X); }
  FMat lie_act_p(const FMat& X, const FMat& w) const override { return X * w; }
  FMat act(const FMat& g, const FMat& gp, const FMat& w) const override { return gp * w * inverse(g); }
  bool in_group(const FMat& g) const override { return is_isometry(g, V_); }
  bool in_group_p(const FMat& g) const override { return is_isometry(g, Vp_); }
  FMat random_group(std::mt19937_64& rng) const override;
  FMat random_group_p(std::mt19937_64& rng) const override;
  const LieAlgebra& lie() const override { return g_; }
  const LieAlgebra& lie_p() const override { return gp_; }
  const MatSpace& lie_space() const override { return lie_; }
  const MatSpace& lie_space_p() const override { return lie_p_; }

 private:
  EpsHermSpace V_, Vp_;
  int moment_sign_;
  LieAlgebra g_, gp_;
  MatSpace lie_, lie_p_;
};

// Split unitary pair over D = F x F, i.e. (GL_n, GL_n'). w = (x, y) with
// x, y of size n' x n, stacked as [x; y]. (x,y)* = (y^T, -x^T) blockwise,
// M(w) = y^T x, M'(w) = x y^T, (h,h').(x,y) = (h' x h^-1, h'^-T y h^T).
class GlPair : public PairModel {
 public:
  GlPair(const FieldDesc& f, int n, int np);
  int n() const { return n_; }
  int np() const { return np_; }
  static FMat x_of(const FMat& w, int np) { return w.topRows(np); }
  static FMat y_of(const FMat& w, int np) { return w.bottomRows(np); }
  static FMat stack(const FMat& x, const FMat& y);

  const FieldDesc& field() const override { return *f_; }
  std::string describe() const override;
  int w_rows() const override { return 2 * np_; }
  int w_cols() const override { return n_; }
  FMat M(const FMat& w) const override;
  FMat Mp(const FMat& w) const override;
  Fq pairing(const FMat& w1, const FMat& w2) const override;
  Fq B(const FMat& X1, const FMat& X2) const override { return -trace<Fq>(X1 * X2); }
  Fq Bp(const FMat& X1, const FMat& X2) const override { return -trace<Fq>(X1 * X2); }
  FMat lie_act(const FMat& X, const FMat& w) const override;
  FMat lie_act_p(const FMat& X, const FMat& w) const override;
  FMat act(const FMat& g, const FMat& gp, const FMat& w) const override;
  bool in_group(const FMat& g) const override { return g.rows() == n_ && !det<Fq>(g).is_zero(); }
  bool in_group_p(const FMat& g) const override { return g.rows() == np_ && !det<Fq>(g).is_zero(); }
  FMat random_group(std::mt19937_64& rng) const override;
  FMat random_group_p(std::mt19937_64& rng) const override;
  const LieAlgebra& lie() const override { return g_; }
  const LieAlgebra& lie_p() const override { return gp_; }
  const MatSpace& lie_space() const override { return lie_; }
  const MatSpace& lie_space_p() const override { return lie_p_; }

 private:
  const FieldDesc* f_;
  int n_, np_;
  LieAlgebra g_, gp_;
  MatSpace lie_, lie_p_;
};

FMat random_matrix(const FieldDesc& f, int rows, int cols, std::mt19937_64& rng);
FMat random_element(const MatSpace& S, std::mt19937_64& rng);
FMat random_isometry(const EpsHermSpace& V, std::mt19937_64& rng);

// Property suites. `samples` = 0 means exhaustive over W (and over the Lie
// algebras where stated); otherwise random sampling with the given seed.
struct SuiteOptions {
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  const Executor* exec = nullptr;
};

Checks star_identity_check(const FormedPair& P, const SuiteOptions& opt);
Checks pairing_identities_check(const PairModel& P, const SuiteOptions& opt);
Checks equivariance_check(const PairModel& P, const SuiteOptions& opt);
Checks first_order_osc_check(const FormedPair& P, const SuiteOptions& opt);
// Dual-number identity for one (X, w): 1/2 <g.w - w, w> = B(M(w), c(g)), g = 1 + eps X.
bool first_order_osc_holds(const FormedPair& P, const FMat& X, const FMat& w);
bool first_order_osc_holds_p(const FormedPair& P, const FMat& Xp, const FMat& w);
Checks rs_oracle_check(const LieAlgebra& g, const MatSpace& space, std::uint64_t samples, std::uint64_t seed);
// Lie action sign convention self-test; throws with a diagnostic if it fails.
void assert_action_convention();

}  // namespace epitheta
