#include "epitheta/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace epitheta {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

long long mod(long long a, long long p) { return ((a % p) + p) % p; }

int least_primitive_root(int p) {
  for (int g = 2; g < p; ++g) {
    int x = 1, ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 1;  // p = 2 never reaches here; p = 3 handled by loop
}

}  // namespace

const FieldDesc& FieldDesc::make(int p, int k, InvolutionKind inv) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<FieldDesc>> cache;
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not a prime");
  if (k != 1 && k != 2) throw std::invalid_argument("extension degree must be 1 or 2");
  if (inv == InvolutionKind::frobenius && k != 2)
    throw std::invalid_argument("nontrivial involution requires an even extension degree");
  long long q = k == 1 ? p : static_cast<long long>(p) * p;
  if (q > 1024) throw std::invalid_argument("field too large for table arithmetic");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, k, static_cast<int>(inv));
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<FieldDesc>(new FieldDesc(p, k, inv))).first;
  return *it->second;
}

FieldDesc::FieldDesc(int p, int k, InvolutionKind inv) : p_(p), k_(k), q_(k == 1 ? p : p * p), inv_(inv) {
  const int q = q_;
  // Polynomial-coordinate multiplication, used only while building tables.
  auto pmul = [&](int a, int b) -> int {
    if (k_ == 1) return static_cast<int>(mod(static_cast<long long>(a) * b, p));
    int a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
    // x^2 = -c1 x - c0
    long long c0 = a0 * b0, c1 = a0 * b1 + a1 * b0, c2 = a1 * b1;
    c0 -= c2 * poly_[0];
    c1 -= c2 * poly_[1];
    return static_cast<int>(mod(c0, p) + p * mod(c1, p));
  };
  auto order_of = [&](int a) {
    int x = a, ord = 1;
    while (x != 1) {
      x = pmul(x, a);
      if (++ord > q) return 0;
    }
    return ord;
  };

  int g = least_primitive_root(p);
  int gen = g;
  if (k == 2) {
    poly_[0] = g;
    bool found = false;
    for (int c = 0; c < p && !found; ++c) {
      poly_[1] = static_cast<int>(mod(-c, p));
      // irreducible iff no root in F_p
      bool root = false;
      for (int x = 0; x < p; ++x)
        if (mod(static_cast<long long>(x) * x + poly_[1] * x + poly_[0], p) == 0) root = true;
      if (root) continue;
      if (order_of(p) == q - 1) found = true;  // the class of x is encoded as p
    }
    if (!found) throw std::logic_error("no primitive quadratic polynomial");
    gen = p;
  }

  exp_.assign(q - 1, 0);
  log_.assign(q, -1);
  int x = 1;
  for (int e = 0; e < q - 1; ++e) {
    exp_[e] = x;
    log_[x] = e;
    x = pmul(x, gen);
  }
  add_.assign(static_cast<size_t>(q) * q, 0);
  mul_.assign(static_cast<size_t>(q) * q, 0);
  neg_.assign(q, 0);
  conj_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    int a0 = a % p, a1 = k == 2 ? a / p : 0;
    neg_[a] = static_cast<Code>(mod(-a0, p) + (k == 2 ? p * mod(-a1, p) : 0));
    for (int b = 0; b < q; ++b) {
      int b0 = b % p, b1 = k == 2 ? b / p : 0;
      add_[a * q + b] = static_cast<Code>((a0 + b0) % p + (k == 2 ? p * ((a1 + b1) % p) : 0));
      mul_[a * q + b] = (a == 0 || b == 0) ? 0 : exp_[(log_[a] + log_[b]) % (q - 1)];
    }
  }
  for (int a = 0; a < q; ++a) {
    if (inv_ == InvolutionKind::identity || a == 0)
      conj_[a] = a;
    else
      conj_[a] = exp_[(static_cast<long long>(log_[a]) * p) % (q - 1)];
  }
  order_.push_back(0);
  for (int e = 0; e < q - 1; ++e) order_.push_back(exp_[e]);
  for (Code c : order_)
    if (conj_[c] == c) fixed_.push_back(c);
}

FieldDesc::Code FieldDesc::inv(Code a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FieldDesc::Code FieldDesc::pow(Code a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("negative power of zero");
    return e == 0 ? 1 : 0;
  }
  long long l = (static_cast<long long>(log_[a]) * mod(e, q_ - 1)) % (q_ - 1);
  return exp_[l];
}

FieldDesc::Code FieldDesc::from_int(long long n) const { return static_cast<Code>(mod(n, p_)); }

std::string FieldDesc::format(Code a) const {
  if (k_ == 1) return std::to_string(a);
  int a0 = a % p_, a1 = a / p_;
  if (a1 == 0) return std::to_string(a0);
  std::string s = (a1 == 1 ? "" : std::to_string(a1)) + "x";
  if (a0 != 0) s += "+" + std::to_string(a0);
  return s;
}

std::string FieldDesc::name() const { return "F" + std::to_string(q_); }

FieldDesc::Code root_of_unity(const FieldDesc& f, int m) {
  if (m <= 0 || (f.q() - 1) % m != 0)
    throw std::invalid_argument("no primitive " + std::to_string(m) + "-th root of unity in " + f.name() +
                                " (m does not divide q-1)");
  // Elements of exact order m are g^{j(q-1)/m} with gcd(j, m) = 1; least log is j = 1.
  return f.exp((f.q() - 1) / m);
}

Fq Fq::inverse() const {
  if (f_) return Fq(*f_, f_->inv(code()));
  if (lit_ == 1 || lit_ == -1) return *this;
  throw std::domain_error("inverse of a field-less literal " + std::to_string(lit_));
}

Fq Fq::pow(long long e) const {
  if (f_) return Fq(*f_, f_->pow(code(), e));
  Fq r(1);
  Fq b = e < 0 ? inverse() : *this;
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) r = r * b;
  return r;
}

const FieldDesc* Fq::common(const Fq& a, const Fq& b) {
  if (a.f_ && b.f_ && a.f_ != b.f_) throw std::logic_error("mixing elements of different fields");
  return a.f_ ? a.f_ : b.f_;
}

int Fq::lit(long long v) {
  if (v > (1 << 30) || v < -(1 << 30)) throw std::overflow_error("field-less literal overflow");
  return static_cast<int>(v);
}

std::string Fq::str() const { return f_ ? f_->format(code()) : std::to_string(lit_); }

std::ostream& operator<<(std::ostream& os, const Fq& x) { return os << x.str(); }

std::vector<Fq> field_elements(const FieldDesc& f) {
  std::vector<Fq> out;
  out.reserve(f.q());
  for (auto c : f.elements()) out.emplace_back(f, c);
  return out;
}

}  // namespace epitheta
