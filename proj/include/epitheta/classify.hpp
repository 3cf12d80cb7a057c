#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epitheta/check.hpp"
#include "epitheta/moment.hpp"
#include "epitheta/parallel.hpp"

namespace epitheta {

// Irreducible dual pair (G, G') with G acting on the smaller space.
// Sp-O is (Sp(dim), O(dim')), O-Sp is (O(dim), Sp(dim')).
struct PairType {
  enum Kind { gl_gl, sp_o, o_sp, u_u };
  Kind kind = gl_gl;
  int dim = 1, dim_p = 1;

  LieType lie() const;
  LieType lie_p() const;
  int rank() const { return lie().rank(); }
  int rank_p() const { return lie_p().rank(); }
  std::string str() const;
  bool operator==(const PairType& o) const { return kind == o.kind && dim == o.dim && dim_p == o.dim_p; }
};

// Split forms over F_p (or F_p^2 with its involution for U-U).
std::shared_ptr<PairModel> build_model(const PairType& t, const FieldDesc& f);
// Field on which the pair is realized: F_p, or F_p^2 with Frobenius for U-U.
const FieldDesc& pair_field(const PairType& t, int p, int extension = 1);

// Diagonal family: w e_i = a_i f_i, w e_-i = s b_i f_-i (s = -1 when V is
// symplectic), anisotropic vectors of V sent to 0. For GL, w = ((a 0), (b 0)).
FMat witness(const PairModel& model, const PairType& t, const std::vector<Fq>& a, const std::vector<Fq>& b);
// Number of parameters a_i (= b_i) of the family.
int witness_length(const PairType& t);

// Eigenvalues of M'(w) are those of M(w) padded with dim' - dim zeros; both diagonal.
bool upsilon_check(const PairModel& model, const PairType& t, const FMat& w);
// Diagonal torus pairs map the family into itself.
Check torus_stability(const PairType& t, int p, int samples, std::uint64_t seed);

// Smallest rank of a regular semisimple element of the Lie algebra.
int min_rs_rank(const LieType& t);

struct RsResult {
  enum Verdict { yes, no, no_over_field, inconclusive };
  Verdict verdict = inconclusive;
  std::string source;  // witness family, random, exhaustive, extension
  std::optional<FMat> witness;
  std::string witness_field;
  std::string P, Pp;        // invariant values at the witness
  bool oracle_ok = false;   // independent regular-semisimple test at the witness
  std::string certificate;  // rank obstruction, when one exists
  bool exhaustive = false;
  std::uint64_t enumerated = 0;
  std::uint64_t random_samples = 0, extension_samples = 0;
};

std::string to_string(RsResult::Verdict v);

struct SearchOptions {
  std::uint64_t budget = 1'000'000'000;
  std::uint64_t seed = 1;
  int family_tries = 200;
  int random_samples = 2000;
  int extension_samples = 2000;
  const Executor* exec = nullptr;
};

RsResult rs_pair_exists(const PairType& t, int p, const SearchOptions& opt = {});

// Whether the pair is of type (D_n,C_n), (C_n,D_n+1), (C_n,B_n), (A_n,A_n) or (A_n,A_n+1) up to order.
bool in_rs_list(const PairType& t);
// All pair types with both ranks in [1, max_rank].
std::vector<PairType> pair_types(int max_rank);

struct TableRow {
  PairType type;
  RsResult result;
  bool expected = false;
  bool match = false;
};

struct ClassificationTable {
  int max_rank = 0, p = 0;
  std::vector<TableRow> rows;
  bool all_match() const;
};

ClassificationTable classification_table(int max_rank, int p, const SearchOptions& opt = {});

}  // namespace epitheta
