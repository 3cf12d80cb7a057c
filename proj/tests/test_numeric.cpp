#include <gtest/gtest.h>

#include <random>

#include "epitheta/dual.hpp"
#include "epitheta/field.hpp"
#include "epitheta/linalg.hpp"
#include "epitheta/rational.hpp"

using namespace epitheta;

TEST(Field, PrimeFieldBasics) {
  const auto& f = FieldDesc::make(3, 1);
  EXPECT_EQ(f.q(), 3);
  EXPECT_EQ(f.q0(), 3);
  EXPECT_EQ(f.generator(), 2u);
  Fq two = Fq::from_int(f, 2);
  EXPECT_EQ(two * two, Fq::from_int(f, 1));
  EXPECT_EQ(two + Fq(1), Fq(0));
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(FieldDesc::make(2, 1), std::invalid_argument);
  EXPECT_THROW(FieldDesc::make(9, 1), std::invalid_argument);
  EXPECT_THROW(FieldDesc::make(5, 1, InvolutionKind::frobenius), std::invalid_argument);
  EXPECT_THROW(FieldDesc::make(5, 3), std::invalid_argument);
}

TEST(Field, InterningGivesSameObject) {
  EXPECT_EQ(&FieldDesc::make(5, 2, InvolutionKind::frobenius), &FieldDesc::make(5, 2, InvolutionKind::frobenius));
}

TEST(Field, ConwayQuadratics) {
  // Conway polynomials x^2+2x+2, x^2+4x+2, x^2+6x+3.
  EXPECT_EQ(FieldDesc::make(3, 2).modulus(), (std::array<int, 2>{2, 2}));
  EXPECT_EQ(FieldDesc::make(5, 2).modulus(), (std::array<int, 2>{2, 4}));
  EXPECT_EQ(FieldDesc::make(7, 2).modulus(), (std::array<int, 2>{3, 6}));
}

TEST(Field, F9FrobeniusOnGenerator) {
  const auto& f = FieldDesc::make(3, 2, InvolutionKind::frobenius);
  Fq g(f, f.generator());
  EXPECT_EQ(involute(g), g.pow(3));
  EXPECT_NE(involute(g), g);
}

TEST(Field, InvolutionFixedPointsF25) {
  const auto& f = FieldDesc::make(5, 2, InvolutionKind::frobenius);
  int fixed = 0;
  for (Fq x : field_elements(f)) {
    EXPECT_EQ(involute(involute(x)), x);
    if (involute(x) == x) ++fixed;
  }
  EXPECT_EQ(fixed, 5);
  EXPECT_EQ(f.fixed_elements().size(), 5u);
  for (auto c : f.fixed_elements()) EXPECT_LT(c, 5u);
}

TEST(Field, IdentityInvolution) {
  const auto& f = FieldDesc::make(7, 1);
  for (Fq x : field_elements(f)) EXPECT_EQ(involute(x), x);
}

TEST(Field, RootOfUnity) {
  EXPECT_EQ(root_of_unity(FieldDesc::make(5, 1), 2), 4u);
  EXPECT_EQ(root_of_unity(FieldDesc::make(7, 1), 3), 2u);
  EXPECT_THROW(root_of_unity(FieldDesc::make(5, 1), 3), std::invalid_argument);
  const auto& f = FieldDesc::make(5, 2);
  Fq z(f, root_of_unity(f, 8));
  EXPECT_EQ(z.pow(8), Fq(1));
  EXPECT_NE(z.pow(4), Fq(1));
}

TEST(Field, RootOfUnityIsLeastLog) {
  for (int p : {5, 7, 11, 13}) {
    const auto& f = FieldDesc::make(p, 1);
    for (int m = 1; m < p; ++m) {
      if ((p - 1) % m) continue;
      // brute force: least-log element of exact order m
      int best = -1;
      for (auto c : f.elements()) {
        if (c == 0) continue;
        Fq x(f, c);
        int ord = 1;
        while (x.pow(ord) != Fq(1)) ++ord;
        if (ord == m) {
          best = static_cast<int>(c);
          break;
        }
      }
      EXPECT_EQ(static_cast<int>(root_of_unity(f, m)), best) << p << " " << m;
    }
  }
}

TEST(Field, AxiomsSampled) {
  std::mt19937_64 rng(7);
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}, {11, 2}}) {
    const auto& f = FieldDesc::make(p, k, k == 2 ? InvolutionKind::frobenius : InvolutionKind::identity);
    std::uniform_int_distribution<int> d(0, f.q() - 1);
    for (int t = 0; t < 2000; ++t) {
      Fq a(f, d(rng)), b(f, d(rng)), c(f, d(rng));
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a + b, b + a);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ(a - a, Fq(0));
      if (!a.is_zero()) ASSERT_EQ(a * a.inverse(), Fq(1));
      ASSERT_EQ(involute(a * b), involute(a) * involute(b));
      ASSERT_EQ(involute(a + b), involute(a) + involute(b));
    }
  }
}

TEST(Field, LiteralEmbedding) {
  const auto& f = FieldDesc::make(5, 1);
  Fq x = Fq::from_int(f, 3);
  EXPECT_EQ(x + Fq(2), Fq(0));
  EXPECT_EQ(Fq(7), Fq(7));
  EXPECT_EQ(x * Fq(2), Fq::from_int(f, 1));
  EXPECT_EQ(Fq::from_int(f, -1), Fq::from_int(f, 4));
}

TEST(Rational, Normalization) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(Rational::parse("1/4"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("-3/6"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("2"), Rational(2));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x/2"), std::invalid_argument);
  EXPECT_EQ(Rational(3, 4).str(), "3/4");
}

TEST(Rational, FloorCeilMod) {
  EXPECT_EQ(Rational(-1, 4).floor(), -1);
  EXPECT_EQ(Rational(-1, 4).ceil(), 0);
  EXPECT_EQ(Rational(5, 4).floor(), 1);
  EXPECT_EQ(Rational(-1, 4).mod(Rational(1)), Rational(3, 4));
  EXPECT_EQ(Rational(3, 4).mod(Rational(1, 2)), Rational(1, 4));
  EXPECT_EQ(Rational(-1, 2).mod(Rational(1, 2)), Rational(0));
}

TEST(Rational, RoundTrips) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n(-1000, 1000), d(1, 1000);
  for (int t = 0; t < 10000; ++t) {
    Rational a(n(rng), d(rng)), b(n(rng), d(rng));
    ASSERT_EQ((a + b) - b, a);
    ASSERT_EQ(a * b, b * a);
    if (b != Rational(0)) ASSERT_EQ((a / b) * b, a);
    ASSERT_EQ(Rational::parse(a.str()), a);
  }
}

TEST(Dual, EpsilonSquaredVanishes) {
  const auto& f = FieldDesc::make(5, 1);
  using D = Dual<Fq>;
  for (Fq x : field_elements(f)) {
    D a(Fq(f, 1), x), b(Fq(f, 1), -x);
    EXPECT_EQ(a * b, D(Fq(f, 1)));
    for (Fq y : field_elements(f)) {
      // (1 + eps x)^2 = 1 + 2 eps x, (y + eps x)^3 = y^3 + 3 y^2 x eps
      EXPECT_EQ(a * a, D(Fq(f, 1), x + x));
      D c(y, x);
      EXPECT_EQ(c * c * c, D(y * y * y, Fq(3) * y * y * x));
      if (!y.is_zero()) EXPECT_EQ(c * c.inverse(), D(Fq(f, 1)));
    }
  }
}

TEST(Dual, MatrixInverse) {
  const auto& f = FieldDesc::make(5, 1);
  using D = Dual<Fq>;
  Mat<D> X(2, 2);
  X << D(Fq(f, 1), Fq(f, 2)), D(Fq(f, 3)), D(Fq(f, 0), Fq(f, 1)), D(Fq(f, 1));
  Mat<D> I = X * inverse(X);
  EXPECT_TRUE(I == identity<D>(2));
}

TEST(Linalg, RankKernelDet) {
  const auto& f = FieldDesc::make(5, 1);
  FMat A = fmat(f, 3, 3, {1, 2, 3, 2, 4, 6, 0, 1, 1});
  EXPECT_EQ(rank(A), 2);
  FMat K = kernel(A);
  EXPECT_EQ(K.cols(), 1);
  EXPECT_TRUE(is_zero_matrix<Fq>(A * K));
  EXPECT_EQ(det(A), Fq(0));
  FMat B = fmat(f, 2, 2, {1, 2, 3, 4});
  EXPECT_EQ(det(B), Fq::from_int(f, -2));
  EXPECT_TRUE(B * inverse(B) == fidentity(f, 2));
}

TEST(Linalg, CharpolyMatchesDeterminant) {
  std::mt19937_64 rng(3);
  const auto& f = FieldDesc::make(7, 1);
  std::uniform_int_distribution<int> d(0, 6);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + t % 6;
    FMat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = Fq(f, d(rng));
    if (t % 3 == 0)  // sparse, exercises zero subdiagonals
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if ((i + j + t) % 2) A(i, j) = Fq(f, 0);
    auto c = charpoly(A);
    ASSERT_EQ(static_cast<int>(c.size()), n + 1);
    for (Fq z : field_elements(f)) {
      FMat M = fidentity(f, n) * z - A;
      Fq val(0), pw(1);
      for (int k = 0; k <= n; ++k) {
        val += c[k] * pw;
        pw *= z;
      }
      ASSERT_EQ(val, det(M));
    }
  }
}
