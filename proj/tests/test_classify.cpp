#include <gtest/gtest.h>

#include "epitheta/classify.hpp"

using namespace epitheta;

namespace {

std::vector<Fq> vals(const FieldDesc& f, std::initializer_list<int> xs) {
  std::vector<Fq> out;
  for (int x : xs) out.push_back(Fq::from_int(f, x));
  return out;
}

FMat diag(const FieldDesc& f, std::initializer_list<int> xs) {
  FMat D = fzeros(f, static_cast<int>(xs.size()), static_cast<int>(xs.size()));
  int i = 0;
  for (int x : xs) {
    D(i, i) = Fq::from_int(f, x);
    ++i;
  }
  return D;
}

}  // namespace

TEST(Witness, GeneralLinear) {
  const auto& f = FieldDesc::make(5, 1);
  PairType t{PairType::gl_gl, 2, 2};
  auto m = build_model(t, f);
  FMat w = witness(*m, t, vals(f, {1, 2}), vals(f, {1, 1}));
  EXPECT_EQ(m->M(w), diag(f, {1, 2}));
  EXPECT_EQ(m->Mp(w), diag(f, {1, 2}));
}

TEST(Witness, SymplecticOddOrthogonal) {
  const auto& f = FieldDesc::make(5, 1);
  PairType t{PairType::sp_o, 2, 3};
  auto m = build_model(t, f);
  FMat w = witness(*m, t, vals(f, {1}), vals(f, {1}));
  EXPECT_EQ(m->Mp(w), diag(f, {1, 0, -1}));
  EXPECT_EQ(m->M(w), diag(f, {1, -1}));
  EXPECT_TRUE(upsilon_check(*m, t, w));
}

TEST(Witness, ZeroParameters) {
  const auto& f = FieldDesc::make(5, 1);
  PairType t{PairType::sp_o, 4, 5};
  auto m = build_model(t, f);
  FMat w = witness(*m, t, vals(f, {0, 0}), vals(f, {0, 0}));
  EXPECT_EQ(m->M(w), fzeros(f, 4, 4));
  EXPECT_TRUE(upsilon_check(*m, t, w));
}

TEST(Witness, RejectsWrongOrder) {
  const auto& f = FieldDesc::make(5, 1);
  EXPECT_THROW(build_model({PairType::gl_gl, 3, 2}, f), std::invalid_argument);
  PairType t{PairType::gl_gl, 2, 3};
  auto m = build_model(t, f);
  EXPECT_THROW(witness(*m, t, vals(f, {1}), vals(f, {1, 2})), std::invalid_argument);
}

TEST(Witness, UpsilonAndTorusForAllTypes) {
  for (const auto& t : pair_types(2)) {
    const auto& f = pair_field(t, 5);
    auto m = build_model(t, f);
    std::vector<Fq> a, b;
    for (int i = 0; i < witness_length(t); ++i) {
      a.push_back(Fq::from_int(f, i + 1));
      b.push_back(Fq::from_int(f, 2 * i + 3));
    }
    EXPECT_TRUE(upsilon_check(*m, t, witness(*m, t, a, b))) << t.str();
    auto c = torus_stability(t, 5, 20, 3);
    EXPECT_TRUE(c.pass) << t.str() << " " << c.witness;
  }
}

TEST(Classify, MinimalRanks) {
  EXPECT_EQ(min_rs_rank({LieType::gl, 3}), 2);
  EXPECT_EQ(min_rs_rank({LieType::sp, 4}), 4);
  EXPECT_EQ(min_rs_rank({LieType::o, 5}), 4);
  EXPECT_EQ(min_rs_rank({LieType::o, 4}), 2);
  EXPECT_EQ(min_rs_rank({LieType::o, 2}), 0);
}

TEST(Classify, OrthogonalSymplecticYes) {
  auto r = rs_pair_exists({PairType::sp_o, 2, 2}, 5);
  EXPECT_EQ(r.verdict, RsResult::yes);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.oracle_ok);
  EXPECT_NE(r.P, "0");
  EXPECT_NE(r.Pp, "0");
}

TEST(Classify, SymplecticOrthogonalFiveNo) {
  auto r = rs_pair_exists({PairType::sp_o, 2, 5}, 5);
  EXPECT_EQ(r.verdict, RsResult::no);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.enumerated, 9765625u);
  EXPECT_FALSE(r.certificate.empty());
}

TEST(Classify, GeneralLinearGapNo) {
  auto r = rs_pair_exists({PairType::gl_gl, 1, 3}, 5);
  EXPECT_EQ(r.verdict, RsResult::no);
  EXPECT_NE(r.certificate.find("gl3"), std::string::npos);
}

TEST(Classify, SymplecticOrthogonalSixNo) {
  auto r = rs_pair_exists({PairType::sp_o, 2, 6}, 3);
  EXPECT_EQ(r.verdict, RsResult::no);
  EXPECT_EQ(r.enumerated, 531441u);
}

TEST(Classify, BudgetGivesInconclusive) {
  SearchOptions opt;
  opt.budget = 1000;
  auto r = rs_pair_exists({PairType::sp_o, 2, 5}, 5, opt);
  EXPECT_EQ(r.verdict, RsResult::inconclusive);
}

TEST(Classify, ParallelMatchesSerial) {
  Executor ex(3);
  SearchOptions opt;
  opt.exec = &ex;
  auto a = rs_pair_exists({PairType::o_sp, 2, 4}, 5, opt);
  auto b = rs_pair_exists({PairType::o_sp, 2, 4}, 5);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.enumerated, b.enumerated);
}

TEST(Classify, ExhaustiveFindsWitnessWithoutFamily) {
  SearchOptions opt;
  opt.family_tries = 0;
  opt.random_samples = 0;
  auto r = rs_pair_exists({PairType::sp_o, 2, 3}, 3, opt);
  EXPECT_EQ(r.verdict, RsResult::yes);
  EXPECT_EQ(r.source, "exhaustive");
  EXPECT_TRUE(r.oracle_ok);
}

TEST(Classify, ListMembership) {
  EXPECT_TRUE(in_rs_list({PairType::sp_o, 2, 2}));
  EXPECT_TRUE(in_rs_list({PairType::sp_o, 4, 6}));
  EXPECT_FALSE(in_rs_list({PairType::sp_o, 2, 5}));
  EXPECT_FALSE(in_rs_list({PairType::o_sp, 3, 4}));
  EXPECT_TRUE(in_rs_list({PairType::gl_gl, 2, 3}));
  EXPECT_FALSE(in_rs_list({PairType::gl_gl, 1, 3}));
}

TEST(Classify, TableRankOne) {
  auto T = classification_table(1, 5);
  EXPECT_TRUE(T.all_match());
  // GL(1)^2, Sp2 x O2, Sp2 x O3 and U(1)^2
  int yes = 0;
  for (const auto& r : T.rows) yes += r.result.verdict == RsResult::yes;
  EXPECT_EQ(yes, 4);
  EXPECT_EQ(T.rows.size(), 4u);
}
