#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epitheta/abelian.hpp"
#include "epitheta/check.hpp"
#include "epitheta/grading.hpp"
#include "epitheta/lattice.hpp"
#include "epitheta/moment.hpp"
#include "epitheta/parallel.hpp"

namespace epitheta {

enum class Picture { direct, tilde };

// Residual model of one epipelagic dual-pair configuration: the space sfX
// inside W, the reduced moment maps, and the two graded Lie algebras whose
// degree-0 groups act on sfX.
struct CorrespSetting {
  std::string kind;  // GL-GL, Sp-O, O-Sp, U-U unramified, U-U ramified
  Picture picture = Picture::direct;
  int m = 2;
  std::shared_ptr<PairModel> pair;
  MatSpace X;
  GradedGroup grading, grading_p;
  bool ramified_unitary = false;
  std::vector<std::pair<std::string, std::string>> info;

  const FieldDesc& field() const { return pair->field(); }
};

// Points over D = k (symplectic-orthogonal) or unramified D (unitary).
CorrespSetting direct_setting(const ApartmentPoint& V, const ApartmentPoint& Vp, int p, int m,
                              const std::vector<Fq>& units = {}, const std::vector<Fq>& units_p = {});
// (GL_n, GL_n') with coordinates of the two lattice functions.
CorrespSetting gl_setting(const FieldDesc& f, const std::vector<Rational>& a, const std::vector<Rational>& ap, int m);
// Pairs (x, y) of n' x n matrices fixed by (x, y) -> (J'^-1 y J, J'^T x J^-T); J, J' of equal symmetry.
CorrespSetting tilde_setting(const FieldDesc& f, const FMat& J, const FMat& Jp);
// Ramified unitary points with V concentrated in class 0 and V' in class nu/2.
CorrespSetting ramified_setting(const ApartmentPoint& V, const ApartmentPoint& Vp, int p);

// Root-system type (G, G') of the pair when it is one of (D_n, C_n),
// (C_n, D_n+1), (C_n, B_n), (A_n, A_n), (A_n, A_n+1); nullopt otherwise.
std::optional<std::string> dual_pair_type(const CorrespSetting& s);

struct CorrespInstance {
  CorrespSetting setting;
  FMat w_bar, lam, lam_p;
};

// (M(w), -M'(w)).
std::pair<FMat, FMat> lambda_from_w(const CorrespSetting& s, const FMat& w);
CorrespInstance make_instance(const CorrespSetting& s, const FMat& w);
// Degree -1 on both sides and both stable candidates.
bool is_stable_instance(const CorrespInstance& inst);
// Up to `count` elements of sfX with pairwise different (lam, lam') giving
// stable instances, in a seeded random order; `filter` may reject candidates.
std::vector<FMat> find_stable_w(const CorrespSetting& s, int count, std::uint64_t seed, std::uint64_t budget,
                                const std::function<bool(const CorrespInstance&)>& filter = {});

// Degree-0 elements commuting with lam, by enumeration of the commutant algebra.
AbelianGroup stabilizer(const GradedGroup& G, const FMat& lam, std::uint64_t budget = 10'000'000);

std::vector<FMat> fiber_oracle(const CorrespInstance& inst, const Executor* exec = nullptr);
std::vector<FMat> fiber_orbit(const CorrespInstance& inst, const AbelianGroup& S);

struct Alpha {
  std::vector<int> image;                   // S-index of alpha(g') for each g' in S'
  std::vector<std::vector<int>> solutions;  // all g with g' w = w g
  bool exists = true, unique = true, homomorphism = true;
};
Alpha alpha(const CorrespInstance& inst, const AbelianGroup& S, const AbelianGroup& Sp);

bool detect_case_E(const CorrespInstance& inst);
// {g in S : g lam = lam}
std::vector<int> sbar_lambda(const CorrespInstance& inst, const AbelianGroup& S);
// {g in S : w g^-1 = w}
std::vector<int> stab_w(const CorrespInstance& inst, const AbelianGroup& S);

using Multiplicities = std::map<std::pair<Character, Character>, int>;
struct PermDecomposition {
  Multiplicities mult;  // nonzero entries only
  int orbits = 0;
  int total = 0;    // sum of all multiplicities
  int trivial = 0;  // multiplicity of the trivial pair
};
PermDecomposition perm_character_multiplicities(const CorrespInstance& inst, const std::vector<FMat>& fiber,
                                                const AbelianGroup& S, const AbelianGroup& Sp);

// chi* o alpha, or nullopt in case (E) when chi is nontrivial on sbar.
std::optional<Character> predicted_lift(const Character& chi, const AbelianGroup& S, const AbelianGroup& Sp,
                                        const Alpha& a, const std::vector<int>& sbar, bool case_E);

struct VerifyOptions {
  std::uint64_t budget = 10'000'000;
  const Executor* exec = nullptr;
};

struct VerifyResult {
  Checks checks;
  bool stable = false;
  bool case_E = false;
  int order_S = 0, order_Sp = 0, fiber_size = 0, index_sbar = 0;
  std::string structure_S, structure_Sp;
};

VerifyResult verify_theorem(const CorrespInstance& inst, const VerifyOptions& opt = {});

struct NamedSetting {
  std::string name;
  CorrespSetting setting;
};
// One setting per supported pair type and picture at residue characteristic p.
std::vector<NamedSetting> standard_settings(int p = 3);

struct NamedInstance {
  std::string name;
  CorrespInstance instance;
};
// Instances of case (E): U(1) x U(1) with w = 0 and U(2) x U(2) with x = diag(1, 0).
std::vector<NamedInstance> case_E_instances(int p = 3);

}  // namespace epitheta
