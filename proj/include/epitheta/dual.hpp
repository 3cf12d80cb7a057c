#pragma once

#include <Eigen/Core>

#include <ostream>

namespace epitheta {

namespace detail {
template <class S>
S scalar_inverse(const S& x) {
  return inverse(x);
}
}  // namespace detail

// a + b*eps with eps^2 = 0.
template <class S>
struct Dual {
  S a{}, b{};

  Dual() = default;
  Dual(int n) : a(n), b(0) {}  // NOLINT(implicit)
  Dual(const S& a_, const S& b_ = S(0)) : a(a_), b(b_) {}

  Dual operator-() const { return {-a, -b}; }
  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  friend Dual operator/(const Dual& x, const Dual& y) { return x * y.inverse(); }
  friend bool operator==(const Dual& x, const Dual& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }

  // Requires a invertible.
  Dual inverse() const {
    S ai = detail::scalar_inverse(a);
    return {ai, -(b * ai * ai)};
  }
};

template <class S>
Dual<S> involute(const Dual<S>& x) {
  return {involute(x.a), involute(x.b)};
}
template <class S>
bool is_zero(const Dual<S>& x) {
  return is_zero(x.a) && is_zero(x.b);
}
template <class S>
bool is_unit(const Dual<S>& x) {
  return is_unit(x.a);
}
template <class S>
Dual<S> inverse(const Dual<S>& x) {
  return x.inverse();
}
template <class S>
std::ostream& operator<<(std::ostream& os, const Dual<S>& x) {
  return os << x.a << "+" << x.b << "e";
}

}  // namespace epitheta

namespace Eigen {
template <class S>
struct NumTraits<epitheta::Dual<S>> : GenericNumTraits<epitheta::Dual<S>> {
  using Real = epitheta::Dual<S>;
  using NonInteger = epitheta::Dual<S>;
  using Nested = epitheta::Dual<S>;
  using Literal = epitheta::Dual<S>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 6
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
