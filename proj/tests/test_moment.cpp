#include <gtest/gtest.h>

#include <random>

#include "epitheta/moment.hpp"

using namespace epitheta;

namespace {

const FieldDesc& F3() { return FieldDesc::make(3, 1); }
const FieldDesc& F5() { return FieldDesc::make(5, 1); }

FMat diag(const FieldDesc& f, const std::vector<long long>& d) {
  FMat A = fzeros(f, static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) A(static_cast<int>(i), static_cast<int>(i)) = Fq::from_int(f, d[i]);
  return A;
}

// product over roots alpha(X) for the diagonal torus element with entries a
Fq root_product(const FieldDesc& f, LieType::Kind kind, const std::vector<long long>& a, bool odd) {
  Fq r(f, 1);
  const int n = static_cast<int>(a.size());
  auto F = [&](long long v) { return Fq::from_int(f, v); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r *= F(a[i] - a[j]);
  if (kind == LieType::gl) return r;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r *= -F(a[i] + a[j]) * F(a[i] + a[j]);
  for (int i = 0; i < n; ++i) {
    if (kind == LieType::sp) r *= -F(4 * a[i] * a[i]);
    if (kind == LieType::o && odd) r *= -F(a[i] * a[i]);
  }
  return r;
}

// closed forms written with squares: prod_{i != j}(a_i^2 - a_j^2) times the diagonal factor
Fq squared_form(const FieldDesc& f, LieType::Kind kind, const std::vector<long long>& a, bool odd) {
  Fq r(f, 1);
  const int n = static_cast<int>(a.size());
  auto F = [&](long long v) { return Fq::from_int(f, v); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r *= F(a[i] * a[i] - a[j] * a[j]);
  for (int j = 0; j < n; ++j) {
    if (kind == LieType::sp) r *= -F(4 * a[j] * a[j]);
    if (kind == LieType::o && odd) r *= -F(a[j] * a[j]);
  }
  return r;
}

}  // namespace

TEST(InvariantP, Gl2Examples) {
  auto g = LieAlgebra::general_linear(F5(), 2);
  EXPECT_EQ(invariant_P(diag(F5(), {1, 2}), g), Fq::from_int(F5(), -1));
  EXPECT_TRUE(is_regular_semisimple(diag(F5(), {1, 2}), g));
  EXPECT_FALSE(is_regular_semisimple(fidentity(F5(), 2), g));
  EXPECT_TRUE(invariant_P(fmat(F5(), 2, 2, {0, 1, 0, 0}), g).is_zero());
}

TEST(InvariantP, Sp2DiagonalIsMinusFourASquared) {
  auto V = witt_basis(F5(), 2, -1, 1, {});
  auto g = LieAlgebra::of(V);
  for (long long a = 0; a < 5; ++a) EXPECT_EQ(invariant_P(diag(F5(), {a, -a}), g), Fq::from_int(F5(), -4 * a * a));
  EXPECT_TRUE(invariant_P(fmat(F5(), 2, 2, {0, 1, 0, 0}), g).is_zero());
}

TEST(InvariantP, ClosedFormsOnDiagonalTori) {
  std::mt19937_64 rng(9);
  const auto& f = FieldDesc::make(7, 1);
  std::uniform_int_distribution<int> d(0, 6);
  for (int n = 1; n <= 3; ++n) {
    auto gl = LieAlgebra::general_linear(f, n);
    auto sp = LieAlgebra::of(witt_basis(f, 2 * n, -1, n, {}));
    auto oe = LieAlgebra::of(witt_basis(f, 2 * n, 1, n, {}));
    auto oo = LieAlgebra::of(witt_basis(f, 2 * n + 1, 1, n, {Fq(f, 1)}));
    for (int t = 0; t < 40; ++t) {
      std::vector<long long> a;
      for (int i = 0; i < n; ++i) a.push_back(d(rng));
      std::vector<long long> even = a, odd = a;
      for (int i = 0; i < n; ++i) even.push_back(-a[i]);
      odd.push_back(0);
      for (int i = 0; i < n; ++i) odd.push_back(-a[i]);
      ASSERT_EQ(invariant_P(diag(f, a), gl), root_product(f, LieType::gl, a, false));
      ASSERT_EQ(invariant_P(diag(f, even), sp), root_product(f, LieType::sp, a, false));
      ASSERT_EQ(invariant_P(diag(f, even), oe), root_product(f, LieType::o, a, false));
      ASSERT_EQ(invariant_P(diag(f, odd), oo), root_product(f, LieType::o, a, true));
      // the squared closed forms agree up to sign
      for (auto [g, k, o, x] : {std::tuple{&sp, LieType::sp, false, &even}, {&oe, LieType::o, false, &even}, {&oo, LieType::o, true, &odd}}) {
        Fq P = invariant_P(diag(f, *x), *g), S = squared_form(f, k, a, o);
        ASSERT_TRUE(P == S || P == -S);
      }
    }
  }
}

TEST(InvariantP, UnitaryUsesComplexification) {
  const auto& f = FieldDesc::make(5, 2, InvolutionKind::frobenius);
  auto V = witt_basis(f, 2, 1, 0, {Fq(f, 1), Fq(f, 1)});
  auto g = LieAlgebra::of(V);
  EXPECT_EQ(g.type.rank(), 2);
  Fq s(f, f.generator());
  Fq a = s - involute(s), b = a * Fq(2);
  FMat X = fzeros(f, 2, 2);
  X(0, 0) = a;
  X(1, 1) = b;
  ASSERT_TRUE(lie_member(X, V));
  EXPECT_EQ(invariant_P(X, g), -(a - b) * (a - b));
}

TEST(RegularSemisimple, OracleAgreement) {
  const auto& f = F5();
  const auto& f25 = FieldDesc::make(5, 2, InvolutionKind::frobenius);
  std::vector<EpsHermSpace> spaces = {witt_basis(f, 2, -1, 1, {}), witt_basis(f, 4, -1, 2, {}),
                                      witt_basis(f, 3, 1, 1, {Fq(f, 1)}), witt_basis(f, 4, 1, 2, {}),
                                      witt_basis(f, 4, 1, 1, {Fq(f, 1), Fq(f, 2)}), witt_basis(f25, 2, 1, 1, {})};
  for (const auto& V : spaces) {
    auto c = rs_oracle_check(LieAlgebra::of(V), lie_algebra(V), 1000, 1);
    EXPECT_TRUE(c[0].pass) << c[0].name << " " << c[0].witness;
  }
  auto c = rs_oracle_check(LieAlgebra::general_linear(f, 3), MatSpace::full(f, 3, 3), 1000, 1);
  EXPECT_TRUE(c[0].pass) << c[0].witness;
}

TEST(RegularSemisimple, RegularNilpotentIsNotSemisimple) {
  // dim ker ad X = rank alone accepts regular nilpotents
  auto g = LieAlgebra::general_linear(F5(), 2);
  FMat N = fmat(F5(), 2, 2, {0, 1, 0, 0});
  EXPECT_EQ(centralizer_dim(N, g), 2);
  EXPECT_FALSE(regular_semisimple_oracle(N, g));
  EXPECT_FALSE(is_regular_semisimple(N, g));
}

TEST(Cayley, Basics) {
  auto V = witt_basis(F5(), 4, -1, 2, {});
  EXPECT_TRUE(is_zero_matrix<Fq>(cayley<Fq>(fidentity(F5(), 4))));
  EXPECT_THROW(cayley<Fq>(FMat(-fidentity(F5(), 4))), std::domain_error);
  std::mt19937_64 rng(10);
  int tested = 0;
  for (int t = 0; t < 1000; ++t) {
    FMat g = random_isometry(V, rng);
    if (!try_inverse<Fq>(FMat(g + fidentity(F5(), 4)))) continue;
    ++tested;
    ASSERT_TRUE(lie_member(cayley<Fq>(g), V));
  }
  EXPECT_GT(tested, 200);
}

TEST(Moment, ZeroAndRankBound) {
  const auto& f = F5();
  FormedPair P(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}));
  EXPECT_TRUE(is_zero_matrix<Fq>(P.M(fzeros(f, 3, 2))));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    FMat w = random_matrix(f, 3, 2, rng);
    ASSERT_LE(rank(P.Mp(w)), 2 * rank(w));
    ASSERT_TRUE(lie_member(P.M(w), P.V()));
  }
}

TEST(Moment, ExhaustiveStarOracleF3) {
  const auto& f = F3();
  FormedPair P(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}));
  const MatSpace& W = P.W();
  ASSERT_EQ(W.size(), 729u);
  for (std::uint64_t i = 0; i < W.size(); ++i) {
    FMat w = W.element(i);
    // entrywise: M(w)_{ab} = <e_a, w* w e_b> via G^{-1}
    FMat M = P.M(w);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Fq s(0);
        for (int c = 0; c < 2; ++c) s += P.V().gram_inv(a, c) * (w.transpose() * P.Vp().gram * w)(c, b);
        ASSERT_EQ(M(a, b), s);
      }
  }
}

TEST(Moment, GlWitness) {
  const auto& f = F5();
  GlPair P(f, 2, 3);
  FMat a = diag(f, {1, 2}), b = diag(f, {3, 4});
  FMat x = fzeros(f, 3, 2), y = fzeros(f, 3, 2);
  x.topRows(2) = a;
  y.topRows(2) = b;
  FMat w = GlPair::stack(x, y);
  EXPECT_TRUE(P.M(w) == FMat(a * b));
  FMat mp = fzeros(f, 3, 3);
  mp.topLeftCorner(2, 2) = a * b;
  EXPECT_TRUE(P.Mp(w) == mp);
}

TEST(Identities, ExhaustiveSpOF3) {
  const auto& f = F3();
  FormedPair P(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}));
  SuiteOptions opt;
  for (auto suite : {pairing_identities_check(P, opt), star_identity_check(P, opt), first_order_osc_check(P, opt)})
    for (const auto& c : suite) EXPECT_TRUE(c.pass) << c.name << " " << c.witness;
}

TEST(Identities, SampledF5) {
  const auto& f = F5();
  const auto& f25 = FieldDesc::make(5, 2, InvolutionKind::frobenius);
  Fq s(f25, f25.generator());
  std::vector<FormedPair> pairs = {
      FormedPair(witt_basis(f, 4, -1, 2, {}), witt_basis(f, 5, 1, 2, {Fq(f, 1)})),
      FormedPair(witt_basis(f, 4, 1, 1, {Fq(f, 1), Fq(f, 2)}), witt_basis(f, 2, -1, 1, {})),
      FormedPair(witt_basis(f25, 2, 1, 1, {}), witt_basis(f25, 3, -1, 1, {s - involute(s)})),
  };
  SuiteOptions opt;
  opt.samples = 500;
  opt.seed = 2;
  for (const auto& P : pairs)
    for (auto suite : {pairing_identities_check(P, opt), equivariance_check(P, opt), first_order_osc_check(P, opt)})
      for (const auto& c : suite) EXPECT_TRUE(c.pass) << P.describe() << " " << c.name << " " << c.witness;
  GlPair gl(f, 2, 3);
  for (auto suite : {pairing_identities_check(gl, opt), equivariance_check(gl, opt)})
    for (const auto& c : suite) EXPECT_TRUE(c.pass) << c.name << " " << c.witness;
}

TEST(Identities, SignFlipIsDetected) {
  const auto& f = F3();
  FormedPair P(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}), -1);
  SuiteOptions opt;
  opt.samples = 200;
  auto cs = pairing_identities_check(P, opt);
  bool caught = false;
  for (const auto& c : cs)
    if (c.name == "moment_pairing_identity" && !c.pass) caught = true;
  EXPECT_TRUE(caught);
  EXPECT_NO_THROW(assert_action_convention());
}

TEST(FirstOrder, ZeroElement) {
  const auto& f = F5();
  FormedPair P(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}));
  std::mt19937_64 rng(12);
  FMat w = random_matrix(f, 3, 2, rng);
  EXPECT_TRUE(first_order_osc_holds(P, fzeros(f, 2, 2), w));
}
