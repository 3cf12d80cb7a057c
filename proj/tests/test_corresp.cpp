#include <gtest/gtest.h>

#include <set>

#include "epitheta/corresp.hpp"

using namespace epitheta;

namespace {

ApartmentPoint point(DKind d, int eps, std::vector<Rational> witt, std::vector<Rational> aniso = {}) {
  ApartmentPoint pt;
  pt.d = d;
  pt.epsilon = eps;
  pt.witt = std::move(witt);
  pt.aniso = std::move(aniso);
  pt.validate();
  return pt;
}

std::string failures(const VerifyResult& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.pass) s += c.name + ": " + c.witness + "\n";
  return s;
}

const Rational q1(1, 4), q3(3, 4), half(1, 2);

}  // namespace

TEST(Abelian, CyclicAndKlein) {
  const auto& f = FieldDesc::make(5, 1);
  std::vector<FMat> cyc;
  for (int k = 1; k <= 4; ++k) cyc.push_back(fmat(f, 1, 1, {k}));
  AbelianGroup C(f, cyc);
  EXPECT_EQ(C.order(), 4);
  EXPECT_EQ(C.divisors(), (std::vector<int>{4}));
  std::vector<FMat> klein;
  for (int a : {1, 4})
    for (int b : {1, 4}) klein.push_back(fmat(f, 2, 2, {a, 0, 0, b}));
  AbelianGroup K(f, klein);
  EXPECT_EQ(K.divisors(), (std::vector<int>{2, 2}));
  EXPECT_EQ(all_characters(K).size(), 4u);
  for (const auto& chi : all_characters(K))
    for (int g = 0; g < K.order(); ++g)
      EXPECT_EQ((char_value(K, chi, g) + char_value(K, contragredient(K, chi), g)).mod(Rational(1)), Rational(0));
}

TEST(Abelian, RejectsNonClosed) {
  const auto& f = FieldDesc::make(5, 1);
  EXPECT_THROW(AbelianGroup(f, {fmat(f, 1, 1, {1}), fmat(f, 1, 1, {2})}), std::invalid_argument);
}

TEST(Corresp, SymplecticOrthogonalSetting) {
  auto s = direct_setting(point(DKind::split, -1, {q1}), point(DKind::split, 1, {half}, {0}), 3, 2);
  EXPECT_EQ(s.X.dim(), 3);
  EXPECT_EQ(dual_pair_type(s), "(C_1, B_1)");
}

TEST(Corresp, GeneralLinearSetting) {
  const auto& f = FieldDesc::make(3, 1);
  auto s = gl_setting(f, {0, half}, {q1, q3}, 2);
  EXPECT_EQ(s.X.dim(), 4);
  EXPECT_EQ(dual_pair_type(s), "(A_1, A_1)");
}

TEST(Corresp, StandardSettings) {
  auto generic = [](const CorrespInstance& i) { return !detect_case_E(i); };
  for (const auto& [name, s] : standard_settings(3)) {
    ASSERT_TRUE(dual_pair_type(s).has_value()) << name;
    auto ws = find_stable_w(s, 3, 7, 200000, generic);
    ASSERT_EQ(ws.size(), 3u) << name;
    for (const auto& w : ws) {
      auto r = verify_theorem(make_instance(s, w));
      EXPECT_TRUE(all_pass(r.checks)) << name << " w=" << format_matrix(w) << "\n" << failures(r);
      EXPECT_FALSE(r.case_E);
      EXPECT_EQ(r.fiber_size, r.order_S) << name;
    }
  }
}

TEST(Corresp, CaseERankOne) {
  auto inst = case_E_instances(3)[0].instance;
  EXPECT_TRUE(detect_case_E(inst));
  auto r = verify_theorem(inst);
  EXPECT_TRUE(all_pass(r.checks)) << failures(r);
  EXPECT_TRUE(r.case_E);
  // ramified U(1) reduces to mu_2; lam = 0 so Sbar = S and only the trivial character occurs
  EXPECT_EQ(r.order_S, 2);
  EXPECT_EQ(r.index_sbar, 1);
  EXPECT_EQ(r.fiber_size, 1);
}

TEST(Corresp, CaseERankTwo) {
  auto inst = case_E_instances(3)[1].instance;
  auto r = verify_theorem(inst);
  EXPECT_TRUE(all_pass(r.checks)) << failures(r);
  EXPECT_TRUE(r.case_E);
  EXPECT_EQ(r.order_S, 4);
  EXPECT_EQ(r.order_S / r.index_sbar, 2);
  EXPECT_EQ(r.fiber_size, 2);
}

TEST(Corresp, CaseEMultiplicities) {
  auto inst = case_E_instances(3)[1].instance;
  const auto& s = inst.setting;
  auto S = stabilizer(s.grading, inst.lam), Sp = stabilizer(s.grading_p, inst.lam_p);
  auto fib = fiber_oracle(inst);
  auto dec = perm_character_multiplicities(inst, fib, S, Sp);
  auto sbar = sbar_lambda(inst, S);
  std::set<Character> occurring;
  for (const auto& [k, v] : dec.mult) {
    EXPECT_EQ(v, 1);
    EXPECT_TRUE(is_trivial_on(S, k.first, sbar));
    occurring.insert(k.first);
  }
  EXPECT_EQ(static_cast<int>(occurring.size()), S.order() / static_cast<int>(sbar.size()));
  EXPECT_EQ(dec.total, static_cast<int>(fib.size()));
}

TEST(Corresp, DetectCaseE) {
  const auto& f = FieldDesc::make(3, 1);
  auto s = tilde_setting(f, fidentity(f, 2), fidentity(f, 2));
  FMat x = fidentity(f, 2);
  EXPECT_FALSE(detect_case_E(make_instance(s, GlPair::stack(x, x))));
  auto sp = standard_settings(3)[0].setting;
  EXPECT_FALSE(detect_case_E(make_instance(sp, find_stable_w(sp, 1, 1, 1000)[0])));
}

TEST(Corresp, ZeroIsNotStableForSymplectic) {
  auto s = standard_settings(3)[0].setting;
  auto inst = make_instance(s, fzeros(s.field(), 3, 2));
  EXPECT_FALSE(is_stable_instance(inst));
  EXPECT_FALSE(all_pass(verify_theorem(inst).checks));
}

TEST(Corresp, UnsupportedTypeIsRejected) {
  // O3 x Sp2 is not among the supported pair types; freeness fails there
  auto s = direct_setting(point(DKind::split, 1, {half}, {0}), point(DKind::split, -1, {q1}), 3, 2);
  EXPECT_FALSE(dual_pair_type(s).has_value());
  auto ws = find_stable_w(s, 1, 7, 20000);
  ASSERT_EQ(ws.size(), 1u);
  auto r = verify_theorem(make_instance(s, ws[0]));
  EXPECT_FALSE(r.checks.front().pass);
}

TEST(Corresp, AlphaIsHomomorphism) {
  auto s = standard_settings(3)[2].setting;
  auto inst = make_instance(s, find_stable_w(s, 1, 5, 200000)[0]);
  auto S = stabilizer(s.grading, inst.lam), Sp = stabilizer(s.grading_p, inst.lam_p);
  auto a = alpha(inst, S, Sp);
  ASSERT_TRUE(a.exists && a.unique);
  EXPECT_EQ(a.image[Sp.identity()], S.identity());
  for (int g = 0; g < Sp.order(); ++g)
    for (int h = 0; h < Sp.order(); ++h) EXPECT_EQ(a.image[Sp.mul(g, h)], S.mul(a.image[g], a.image[h]));
}

TEST(Corresp, StabilizerBudget) {
  auto s = standard_settings(3)[2].setting;
  auto inst = make_instance(s, find_stable_w(s, 1, 5, 200000)[0]);
  EXPECT_THROW(stabilizer(s.grading, inst.lam, 2), std::runtime_error);
}

TEST(Corresp, RejectsBadInput) {
  const auto& f = FieldDesc::make(3, 1);
  EXPECT_THROW(tilde_setting(f, fidentity(f, 2), fmat(f, 2, 2, {0, 1, 2, 0})), std::invalid_argument);
  EXPECT_THROW(direct_setting(point(DKind::split, -1, {q1}), point(DKind::split, -1, {half}), 3, 2),
               std::invalid_argument);
}

TEST(Corresp, MutatedInstanceFails) {
  auto s = direct_setting(point(DKind::split, -1, {q1}), point(DKind::split, 1, {half}, {0}), 3, 2);
  auto ws = find_stable_w(s, 1, 7, 20000);
  ASSERT_EQ(ws.size(), 1u);
  auto inst = make_instance(s, ws[0]);
  inst.lam = FMat(inst.lam * Fq(2));
  auto r = verify_theorem(inst);
  EXPECT_FALSE(all_pass(r.checks));
}
