#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epitheta/linalg.hpp"
#include "epitheta/rational.hpp"

namespace epitheta {

// Finite abelian group of invertible matrices, with an invariant-factor
// decomposition Z/d_1 x ... x Z/d_r (d_1 | d_2 | ...) and chosen generators.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  // Elements must form a finite abelian group under matrix product; throws otherwise.
  AbelianGroup(const FieldDesc& f, std::vector<FMat> elements);

  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<FMat>& elements() const { return elements_; }
  const FMat& element(int i) const { return elements_[i]; }
  const std::vector<int>& divisors() const { return divisors_; }
  const std::vector<int>& generators() const { return generators_; }
  int exponent() const;
  int identity() const { return identity_; }
  int index_of(const FMat& g) const;  // -1 if absent
  int mul(int i, int j) const { return table_[i][j]; }
  int inv(int i) const { return inverse_[i]; }
  int pow(int i, long long k) const;
  int order_of(int i) const;
  const std::vector<int>& exps(int i) const { return exps_[i]; }
  int from_exps(const std::vector<int>& e) const;
  std::string structure() const;  // "Z/2 x Z/4"

 private:
  const FieldDesc* f_ = nullptr;
  std::vector<FMat> elements_;
  std::map<std::vector<std::uint16_t>, int> index_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::vector<int> divisors_, generators_;
  std::vector<std::vector<int>> exps_;
  std::map<std::vector<int>, int> from_exps_;
};

// Invariant factors d_1 | ... | d_r (all > 1) of an abelian group, from the
// counts of elements of each prime-power order.
std::vector<int> invariant_factors(const std::vector<int>& element_orders);

// Character given by exponents c_i mod d_i: chi(g) = sum_i c_i x_i / d_i in Q/Z.
struct Character {
  std::vector<int> e;
  bool operator==(const Character&) const = default;
  auto operator<=>(const Character&) const = default;
};

std::vector<Character> all_characters(const AbelianGroup& G);
Rational char_value(const AbelianGroup& G, const Character& chi, int element);
// Value as an element of Z/N, N the group exponent.
int char_value_mod(const AbelianGroup& G, const Character& chi, int element);
Character contragredient(const AbelianGroup& G, const Character& chi);
bool is_trivial_on(const AbelianGroup& G, const Character& chi, const std::vector<int>& subgroup);
// Character with prescribed values on all elements; nullopt if not a homomorphism.
std::optional<Character> character_from_values(const AbelianGroup& G, const std::function<Rational(int)>& value);
std::string to_string(const Character& chi);

}  // namespace epitheta
