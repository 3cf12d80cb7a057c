#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace epitheta {

enum class InvolutionKind { identity, frobenius };

// Finite field F_q, q = p^k with k in {1, 2}, optionally carrying the
// involution x -> x^{q0}, q0^2 = q. Elements are encoded as c0 + p*c1 for
// c0 + c1*x in F_p[x]/(x^2 + c1' x + c0'). Instances are interned: equal
// parameters give the same object, so pointer identity is field identity.
class FieldDesc {
 public:
  using Code = std::uint32_t;

  static const FieldDesc& make(int p, int k, InvolutionKind inv = InvolutionKind::identity);

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }
  // Size of the fixed field of the involution.
  int q0() const { return inv_ == InvolutionKind::identity ? q_ : p_; }
  InvolutionKind involution() const { return inv_; }
  // x^2 + poly_[1] x + poly_[0] (only meaningful for k = 2).
  std::array<int, 2> modulus() const { return poly_; }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code generator() const { return exp_[1 % (q_ - 1)]; }
  Code add(Code a, Code b) const { return add_[a * q_ + b]; }
  Code sub(Code a, Code b) const { return add_[a * q_ + neg_[b]]; }
  Code neg(Code a) const { return neg_[a]; }
  Code mul(Code a, Code b) const { return mul_[a * q_ + b]; }
  Code inv(Code a) const;
  Code conj(Code a) const { return conj_[a]; }
  Code pow(Code a, long long e) const;
  Code from_int(long long n) const;
  // Discrete log with respect to generator(); log(0) is -1.
  int log(Code a) const { return log_[a]; }
  Code exp(long long e) const { return exp_[((e % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }
  // 0 first, then generator powers g^0, g^1, ...
  const std::vector<Code>& elements() const { return order_; }
  // Elements of the fixed field of the involution, in the same order.
  const std::vector<Code>& fixed_elements() const { return fixed_; }
  // Position in elements().
  int rank_of(Code a) const { return a == 0 ? 0 : log_[a] + 1; }

  std::string format(Code a) const;
  std::string name() const;

 private:
  FieldDesc(int p, int k, InvolutionKind inv);

  int p_, k_, q_;
  InvolutionKind inv_;
  std::array<int, 2> poly_{0, 0};
  std::vector<Code> add_, mul_, neg_, conj_, exp_, order_, fixed_;
  std::vector<int> log_;
};

bool is_prime(long long n);

// exp(-1) generator power of exact order m: g^{(q-1)/m}.
FieldDesc::Code root_of_unity(const FieldDesc& f, int m);

// Element of a finite field. A default or integer-constructed value carries no
// field ("literal") and is embedded into the field of the other operand; this
// lets Eigen build Scalar(0) and Scalar(1) before a field is known.
class Fq {
 public:
  using Code = FieldDesc::Code;

  Fq() = default;
  Fq(int n) : lit_(n) {}  // NOLINT(implicit)
  Fq(const FieldDesc& f, Code c) : f_(&f), lit_(c) {}
  static Fq from_int(const FieldDesc& f, long long n) { return Fq(f, f.from_int(n)); }

  const FieldDesc* field() const { return f_; }
  bool has_field() const { return f_ != nullptr; }
  // Canonical code; requires a field.
  Code code() const { return static_cast<Code>(lit_); }
  long long literal() const { return lit_; }
  Fq in(const FieldDesc& f) const { return f_ ? *this : Fq(f, f.from_int(lit_)); }

  bool is_zero() const { return lit_ == 0; }
  bool is_one() const { return f_ ? lit_ == 1 : lit_ == 1; }

  Fq operator-() const { return f_ ? Fq(*f_, f_->neg(code())) : Fq(lit(-lit_)); }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  Fq& operator/=(const Fq& o) { return *this = *this / o; }

  friend Fq operator+(const Fq& a, const Fq& b) {
    const FieldDesc* f = common(a, b);
    if (!f) return Fq(lit(a.lit_ + b.lit_));
    return Fq(*f, f->add(a.in(*f).code(), b.in(*f).code()));
  }
  friend Fq operator-(const Fq& a, const Fq& b) {
    const FieldDesc* f = common(a, b);
    if (!f) return Fq(lit(a.lit_ - b.lit_));
    return Fq(*f, f->sub(a.in(*f).code(), b.in(*f).code()));
  }
  friend Fq operator*(const Fq& a, const Fq& b) {
    const FieldDesc* f = common(a, b);
    if (!f) return Fq(lit(a.lit_ * b.lit_));
    return Fq(*f, f->mul(a.in(*f).code(), b.in(*f).code()));
  }
  friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inverse(); }
  friend bool operator==(const Fq& a, const Fq& b) {
    const FieldDesc* f = common(a, b);
    if (!f) return a.lit_ == b.lit_;
    return a.in(*f).code() == b.in(*f).code();
  }
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  Fq inverse() const;
  Fq conj() const { return f_ ? Fq(*f_, f_->conj(code())) : *this; }
  Fq pow(long long e) const;

  std::string str() const;

 private:
  static const FieldDesc* common(const Fq& a, const Fq& b);
  static int lit(long long v);

  const FieldDesc* f_ = nullptr;
  long long lit_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Fq& x);

inline Fq involute(const Fq& x) { return x.conj(); }
inline bool is_zero(const Fq& x) { return x.is_zero(); }
inline bool is_unit(const Fq& x) { return !x.is_zero(); }
inline Fq inverse(const Fq& x) { return x.inverse(); }

// All elements of f in canonical order.
std::vector<Fq> field_elements(const FieldDesc& f);

}  // namespace epitheta

namespace Eigen {
template <>
struct NumTraits<epitheta::Fq> : GenericNumTraits<epitheta::Fq> {
  using Real = epitheta::Fq;
  using NonInteger = epitheta::Fq;
  using Nested = epitheta::Fq;
  using Literal = epitheta::Fq;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
