#include <gtest/gtest.h>

#include <random>

#include "epitheta/moment.hpp"
#include "epitheta/spaces.hpp"

using namespace epitheta;

namespace {

// all n x n matrices over a prime field, by index
FMat matrix_from_index(const FieldDesc& f, int r, int c, std::uint64_t idx) {
  FMat A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      A(i, j) = Fq(f, static_cast<FieldDesc::Code>(idx % f.q()));
      idx /= f.q();
    }
  return A;
}

}  // namespace

TEST(WittBasis, SymplecticPlane) {
  const auto& f = FieldDesc::make(3, 1);
  auto V = witt_basis(f, 2, -1, 1, {});
  EXPECT_TRUE(V.gram == fmat(f, 2, 2, {0, 1, -1, 0}));
  EXPECT_EQ(V.labels[0], WittLabel::plus);
  EXPECT_EQ(V.labels[1], WittLabel::minus);
}

TEST(WittBasis, SplitOrthogonalThree) {
  const auto& f = FieldDesc::make(3, 1);
  auto V = witt_basis(f, 3, 1, 1, {Fq(f, 1)});
  EXPECT_TRUE(V.gram == fmat(f, 3, 3, {0, 0, 1, 0, 1, 0, 1, 0, 0}));
}

TEST(WittBasis, AnisotropicPlanes) {
  // x^2 + y^2 over F3 and x^2 + 2y^2 over F5 have no nonzero isotropic vector
  for (auto [p, d] : {std::pair{3, 1}, {5, 2}}) {
    const auto& f = FieldDesc::make(p, 1);
    auto V = witt_basis(f, 2, 1, 0, {Fq(f, 1), Fq::from_int(f, d)});
    int isotropic = 0;
    for (Fq x : field_elements(f))
      for (Fq y : field_elements(f)) {
        FVec v(2);
        v << x, y;
        if (!(x.is_zero() && y.is_zero()) && V.pair(v, v).is_zero()) ++isotropic;
      }
    EXPECT_EQ(isotropic, 0) << p;
  }
  // x^2 + 2y^2 over F3 is split
  const auto& f3 = FieldDesc::make(3, 1);
  auto V = witt_basis(f3, 2, 1, 0, {Fq(f3, 1), Fq(f3, 2)});
  FVec v(2);
  v << Fq(f3, 1), Fq(f3, 1);
  EXPECT_TRUE(V.pair(v, v).is_zero());
}

TEST(WittBasis, Rejections) {
  const auto& f = FieldDesc::make(3, 1);
  EXPECT_THROW(witt_basis(f, 3, -1, 1, {Fq(f, 1)}), std::invalid_argument);
  EXPECT_THROW(witt_basis(f, 3, 1, 1, {Fq(f, 0)}), std::invalid_argument);
  EXPECT_THROW(witt_basis(f, 4, 1, 1, {Fq(f, 1)}), std::invalid_argument);
  const auto& f9 = FieldDesc::make(3, 2, InvolutionKind::frobenius);
  Fq g(f9, f9.generator());
  EXPECT_THROW(witt_basis(f9, 1, 1, 0, {g}), std::invalid_argument);  // not hermitian
  EXPECT_NO_THROW(witt_basis(f9, 1, 1, 0, {g * involute(g)}));
}

TEST(Star, DefiningIdentityAllTypes) {
  std::mt19937_64 rng(1);
  const auto& f5 = FieldDesc::make(5, 1);
  const auto& f25 = FieldDesc::make(5, 2, InvolutionKind::frobenius);
  Fq s(f25, f25.generator());
  Fq skew = s - involute(s);
  std::vector<std::pair<EpsHermSpace, EpsHermSpace>> pairs = {
      {witt_basis(f5, 4, -1, 2, {}), witt_basis(f5, 5, 1, 2, {Fq(f5, 1)})},
      {witt_basis(f5, 2, 1, 0, {Fq(f5, 1), Fq(f5, 2)}), witt_basis(f5, 2, -1, 1, {})},
      {witt_basis(f25, 2, 1, 1, {}), witt_basis(f25, 3, -1, 1, {skew})},
  };
  for (auto& [V, Vp] : pairs) {
    FormedPair P(V, Vp);
    SuiteOptions opt;
    opt.samples = 300;
    opt.seed = 3;
    for (const auto& c : star_identity_check(P, opt)) EXPECT_TRUE(c.pass) << c.name << " " << c.witness;
    EXPECT_EQ(double_star_sign(V, Vp), -1);
  }
}

TEST(Star, ZeroAndGlModel) {
  const auto& f = FieldDesc::make(5, 1);
  auto V = witt_basis(f, 2, -1, 1, {});
  auto Vp = witt_basis(f, 3, 1, 1, {Fq(f, 1)});
  EXPECT_TRUE(is_zero_matrix<Fq>(star(fzeros(f, 3, 2), V, Vp)));
  // J^{-1} w^T J'
  std::mt19937_64 rng(2);
  FMat w = random_matrix(f, 3, 2, rng);
  EXPECT_TRUE(star(w, V, Vp) == FMat(inverse(V.gram) * w.transpose() * Vp.gram));
}

// The GL pair model is the restriction of the generic construction to a split
// space V = F^n + F^n with form [[0, eps I],[I, 0]] and block-diagonal maps.
TEST(Star, GlModelMatchesEmbedding) {
  const auto& f = FieldDesc::make(5, 1);
  std::mt19937_64 rng(4);
  for (auto [n, np] : {std::pair{1, 1}, {1, 2}, {2, 2}, {2, 3}}) {
    auto split = [&](int m, int eps) {
      FMat G = fzeros(f, 2 * m, 2 * m);
      for (int i = 0; i < m; ++i) {
        G(i, m + i) = Fq::from_int(f, eps);
        G(m + i, i) = Fq(f, 1);
      }
      return space_from_gram(f, eps, G);
    };
    FormedPair big(split(n, 1), split(np, -1));
    GlPair gl(f, n, np);
    for (int t = 0; t < 50; ++t) {
      FMat x = random_matrix(f, np, n, rng), y = random_matrix(f, np, n, rng);
      FMat x2 = random_matrix(f, np, n, rng), y2 = random_matrix(f, np, n, rng);
      auto block = [&](const FMat& a, const FMat& b) {
        FMat w = fzeros(f, 2 * np, 2 * n);
        w.topLeftCorner(np, n) = a;
        w.bottomRightCorner(np, n) = b;
        return w;
      };
      FMat w = block(x, y), w2 = block(x2, y2);
      FMat ws = big.star(w);
      // (x,y)* = (y^T, -x^T) blockwise
      EXPECT_TRUE(FMat(ws.topLeftCorner(n, np)) == FMat(y.transpose()));
      EXPECT_TRUE(FMat(ws.bottomRightCorner(n, np)) == FMat(-x.transpose()));
      FMat m = gl.M(GlPair::stack(x, y)), mp = gl.Mp(GlPair::stack(x, y));
      EXPECT_TRUE(FMat(big.M(w).topLeftCorner(n, n)) == m);
      EXPECT_TRUE(FMat(big.Mp(w).topLeftCorner(np, np)) == mp);
      EXPECT_EQ(big.pairing(w, w2), gl.pairing(GlPair::stack(x, y), GlPair::stack(x2, y2)));
    }
  }
}

TEST(Isometry, Sp2F3Has24Elements) {
  const auto& f = FieldDesc::make(3, 1);
  auto V = witt_basis(f, 2, -1, 1, {});
  int count = 0;
  for (std::uint64_t i = 0; i < 81; ++i)
    if (is_isometry(matrix_from_index(f, 2, 2, i), V)) ++count;
  EXPECT_EQ(count, 24);
  EXPECT_TRUE(is_isometry(fidentity(f, 2), V));
  EXPECT_TRUE(is_isometry(FMat(-fidentity(f, 2)), V));
}

TEST(Isometry, OrderOfSmallGroups) {
  // |O(1,1)(F3)| = 4, |O(2) anisotropic(F3)| = 8, |U(1)(F9)| = 4
  const auto& f = FieldDesc::make(3, 1);
  auto split = witt_basis(f, 2, 1, 1, {});
  auto aniso = witt_basis(f, 2, 1, 0, {Fq(f, 1), Fq(f, 1)});
  int a = 0, b = 0;
  for (std::uint64_t i = 0; i < 81; ++i) {
    a += is_isometry(matrix_from_index(f, 2, 2, i), split);
    b += is_isometry(matrix_from_index(f, 2, 2, i), aniso);
  }
  EXPECT_EQ(a, 4);
  EXPECT_EQ(b, 8);
  const auto& f9 = FieldDesc::make(3, 2, InvolutionKind::frobenius);
  auto u1 = witt_basis(f9, 1, 1, 0, {Fq(f9, 1)});
  int c = 0;
  for (Fq x : field_elements(f9)) {
    FMat g(1, 1);
    g(0, 0) = x;
    c += is_isometry(g, u1);
  }
  EXPECT_EQ(c, 4);
}

TEST(Isometry, ClosedUnderProducts) {
  std::mt19937_64 rng(5);
  const auto& f = FieldDesc::make(5, 1);
  auto V = witt_basis(f, 5, 1, 2, {Fq(f, 2)});
  for (int t = 0; t < 100; ++t) {
    FMat g = random_isometry(V, rng), h = random_isometry(V, rng);
    ASSERT_TRUE(is_isometry(g, V));
    ASSERT_TRUE(is_isometry(FMat(g * h), V));
  }
}

TEST(Lie, Dimensions) {
  const auto& f3 = FieldDesc::make(3, 1);
  const auto& f5 = FieldDesc::make(5, 1);
  EXPECT_EQ(lie_algebra(witt_basis(f3, 2, -1, 1, {})).dim(), 3);
  EXPECT_EQ(lie_algebra(witt_basis(f5, 3, 1, 1, {Fq(f5, 1)})).dim(), 3);
  EXPECT_EQ(lie_algebra(witt_basis(f5, 4, -1, 2, {})).dim(), 10);
  EXPECT_EQ(lie_algebra(witt_basis(f5, 5, 1, 2, {Fq(f5, 1)})).dim(), 10);
  const auto& f9 = FieldDesc::make(3, 2, InvolutionKind::frobenius);
  EXPECT_EQ(lie_algebra(witt_basis(f9, 2, 1, 1, {})).dim(), 4);  // u(2) has real dimension 4
  EXPECT_TRUE(lie_member(fzeros(f3, 2, 2), witt_basis(f3, 2, -1, 1, {})));
}

TEST(Lie, ClosedUnderCommutator) {
  std::mt19937_64 rng(6);
  const auto& f = FieldDesc::make(5, 1);
  const auto& f25 = FieldDesc::make(5, 2, InvolutionKind::frobenius);
  for (const auto& V : {witt_basis(f, 4, -1, 2, {}), witt_basis(f, 3, 1, 1, {Fq(f, 3)}), witt_basis(f25, 3, 1, 1, {Fq(f25, 1)})}) {
    MatSpace g = lie_algebra(V);
    for (int t = 0; t < 100; ++t) {
      FMat X = random_element(g, rng), Y = random_element(g, rng);
      ASSERT_TRUE(lie_member(X, V));
      ASSERT_TRUE(lie_member(FMat(X * Y - Y * X), V));
    }
  }
}

TEST(TraceForm, ZeroSymmetricInvariant) {
  std::mt19937_64 rng(7);
  const auto& f = FieldDesc::make(5, 1);
  const auto& f25 = FieldDesc::make(5, 2, InvolutionKind::frobenius);
  for (const auto& V : {witt_basis(f, 4, -1, 2, {}), witt_basis(f, 5, 1, 2, {Fq(f, 1)}), witt_basis(f25, 2, -1, 1, {})}) {
    MatSpace g = lie_algebra(V);
    for (int t = 0; t < 1000; ++t) {
      FMat X1 = random_element(g, rng), X2 = random_element(g, rng), h = random_isometry(V, rng);
      ASSERT_TRUE(trace_form(fzeros(*V.field, V.dim(), V.dim()), X1, V).is_zero());
      ASSERT_EQ(trace_form(X1, X2, V), trace_form(X2, X1, V));
      FMat hi = inverse(h);
      ASSERT_EQ(trace_form(FMat(h * X1 * hi), FMat(h * X2 * hi), V), trace_form(X1, X2, V));
    }
  }
}

TEST(TraceForm, NondegenerateOnSp2F5) {
  const auto& f = FieldDesc::make(5, 1);
  auto V = witt_basis(f, 2, -1, 1, {});
  MatSpace g = lie_algebra(V);
  FMat Gm = fzeros(f, g.dim(), g.dim());
  for (int a = 0; a < g.dim(); ++a)
    for (int b = 0; b < g.dim(); ++b) Gm(a, b) = trace_form(g.basis()[a], g.basis()[b], V);
  EXPECT_EQ(rank(Gm), 3);
}

TEST(MatSpace, CoordinatesRoundTrip) {
  std::mt19937_64 rng(8);
  const auto& f9 = FieldDesc::make(3, 2, InvolutionKind::frobenius);
  auto V = witt_basis(f9, 3, -1, 1, {Fq(f9, 3) - involute(Fq(f9, 3))});
  MatSpace g = lie_algebra(V);
  EXPECT_EQ(g.dim(), 9);
  for (int t = 0; t < 200; ++t) {
    FMat X = random_element(g, rng);
    auto c = g.coords(X);
    ASSERT_TRUE(c.has_value());
    ASSERT_TRUE(g.combine(*c) == X);
  }
  EXPECT_FALSE(g.contains(fidentity(f9, 3)));
  EXPECT_EQ(g.size(), 19683u);
}
