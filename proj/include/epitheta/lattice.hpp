#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epitheta/rational.hpp"
#include "epitheta/spaces.hpp"

namespace epitheta {

// Ambient division algebra D, through its residue data.
enum class DKind { split, unramified, ramified };

std::string to_string(DKind d);

// Self-dual lattice function in apartment coordinates: basis
// e_1..e_n, anisotropic vectors, e_{-1}..e_{-n}, with a_{-i} = -a_i.
struct ApartmentPoint {
  DKind d = DKind::split;
  int epsilon = 1;
  std::vector<Rational> witt;   // a_1..a_n
  std::vector<Rational> aniso;  // each in {0, nu/2}

  Rational nu() const { return d == DKind::ramified ? Rational(1, 2) : Rational(1); }
  int residue_degree() const { return d == DKind::unramified ? 2 : 1; }
  int degree() const { return d == DKind::split ? 1 : 2; }  // [D:k]
  int dim() const { return 2 * static_cast<int>(witt.size()) + static_cast<int>(aniso.size()); }
  // Coordinates of all basis vectors, in basis order.
  std::vector<Rational> coords() const;
  // Throws if an anisotropic coordinate is not in {0, nu/2}.
  void validate() const;
  // Weyl normal form: |a_i| sorted descending, anisotropic sorted.
  ApartmentPoint normal_form() const;
  bool operator==(const ApartmentPoint& o) const;
  std::string str() const;
};

// Split lattice function L_s = sum_i e_i p_D^{ceil((s - b_i)/nu)} with an
// arbitrary coordinate per basis vector; partner[i] is the basis vector paired
// with e_i by the form, form_val[i] the valuation of <e_i, e_partner(i)>.
struct SplitLatticeFunction {
  Rational nu{1};
  std::vector<Rational> b;
  std::vector<int> partner;
  std::vector<Rational> form_val;

  static SplitLatticeFunction of(const ApartmentPoint& pt);
  // (L#)_s = (L_{(-s)+})#, evaluated line by line from the definition.
  SplitLatticeFunction dual() const;
  // Whether e_i x with val(x) = v lies in L_s.
  bool contains(int i, const Rational& v, const Rational& s) const;
};

bool is_selfdual(const SplitLatticeFunction& L);
bool is_selfdual(const ApartmentPoint& pt);

struct JumpSet {
  Rational period{1};
  int residue_degree = 1;           // [f_D : f]
  std::map<Rational, int> entries;  // representative in [0, period) -> dim over f_D

  int total() const;
  bool symmetric() const;
  // Period-1 multiset measured in f-dimensions.
  JumpSet unfold() const;
  bool operator==(const JumpSet& o) const = default;
  std::string str() const;
};

JumpSet jumps(const ApartmentPoint& pt);
JumpSet tensor_jumps(const JumpSet& J, const JumpSet& Jp);

enum class Dichotomy { case_i, case_ii, violation };
std::string to_string(Dichotomy d);
Dichotomy epipelagic_dichotomy(const JumpSet& J, const JumpSet& Jp, int m);

// Residue field f_D with its involution.
const FieldDesc& residue_field(DKind d, int p);

struct GradedPiece {
  Rational r;
  enum Kind { form, pairing } kind = form;
  int dim = 0;
  Rational partner;                   // -r mod nu
  std::optional<EpsHermSpace> space;  // for form pieces
  std::vector<int> members;           // basis indices contributing
};

// Unit parts of <e,e> for anisotropic vectors; empty means canonical defaults.
GradedPiece graded_piece(const ApartmentPoint& pt, const Rational& r, int p, const std::vector<Fq>& aniso_units = {});
// Residual Gram matrix on the full residue space, with every basis vector
// rescaled to its class; entry (i,j) is the unit part of the pairing.
FMat residual_gram(const ApartmentPoint& pt, const FieldDesc& fD, const std::vector<Fq>& aniso_units = {});
std::vector<Fq> default_aniso_units(const ApartmentPoint& pt, const FieldDesc& fD);

struct GroupFactor {
  std::string type;  // Sp, O, U or GL
  int dim = 0;
  Rational r;
  std::string field;
  std::string str() const;
};
std::vector<GroupFactor> residue_group_shape(const ApartmentPoint& pt, int p);

using RMat = std::vector<std::vector<Rational>>;

// Entry (j,i): least valuation nu*ceil((r + a_i - a'_j)/nu) of the (j,i)
// entry of an element of Hom(L, L')_r.
RMat hom_entry_bounds(const ApartmentPoint& V, const ApartmentPoint& Vp, const Rational& r);
// Same bounds found by scanning w(L_s) in L'_{s+r} over a grid of s.
RMat hom_entry_bounds_scan(const ApartmentPoint& V, const ApartmentPoint& Vp, const Rational& r);
// Min-plus product (A (x) B)_{ki} = min_j A_kj + B_ji.
RMat tropical_product(const RMat& A, const RMat& B);
bool entrywise_geq(const RMat& A, const RMat& B);
// Bounds for w* given bounds for w : V -> V'.
RMat star_bounds(const ApartmentPoint& V, const ApartmentPoint& Vp, const RMat& B);

struct SplittingDims {
  int dim_sfW = 0, dim_sfX = 0, dim_sfY = 0;
  std::map<Rational, int> per_class;  // mu mod 1 -> dim_f X^[mu]
  int dim_W = 0;                      // dim_k Hom_D(V, V')
  int sfX_from_tensor = 0;            // multiplicity of -1/(2m) in tensor_jumps / [D:k]
};
SplittingDims splitting_dims(const ApartmentPoint& V, const ApartmentPoint& Vp, int m);

// Position of the point among filtration jumps: first positive jump of the
// Lie algebra lattice function (the depth r(x)).
Rational first_lie_jump(const ApartmentPoint& pt);

// Random valid point: Witt coordinates k/d with d <= max_den, anisotropic
// coordinates in {0, nu/2} compatible with (d, eps).
ApartmentPoint random_apartment_point(std::mt19937_64& rng, DKind d, int epsilon, int witt_index, int n_aniso,
                                      int max_den = 12);

}  // namespace epitheta
