#include "epitheta/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace epitheta {

namespace {

std::vector<int> prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

std::vector<int> invariant_factors(const std::vector<int>& element_orders) {
  const int N = static_cast<int>(element_orders.size());
  std::vector<std::vector<int>> per_prime;  // descending exponents of each prime
  std::vector<int> primes = prime_factors(N);
  for (int l : primes) {
    // counts[k] = #{g : g^(l^k) = 1}
    std::vector<int> ranks;
    long long prev = 1;
    for (long long pk = l;; pk *= l) {
      long long cnt = 0;
      for (int o : element_orders)
        if (pk % o == 0) ++cnt;
      if (cnt == prev) break;
      int r = 0;
      for (long long x = cnt / prev; x > 1; x /= l) ++r;
      ranks.push_back(r);  // #{i : e_i >= k}
      prev = cnt;
    }
    std::vector<int> e;
    const int r0 = ranks.empty() ? 0 : ranks[0];
    for (int i = 0; i < r0; ++i) {
      int k = 0;
      while (k < static_cast<int>(ranks.size()) && ranks[k] > i) ++k;
      e.push_back(k);
    }
    per_prime.push_back(e);
  }
  size_t r = 0;
  for (const auto& e : per_prime) r = std::max(r, e.size());
  std::vector<int> d(r, 1);
  for (size_t pi = 0; pi < primes.size(); ++pi)
    for (size_t i = 0; i < per_prime[pi].size(); ++i)
      for (int k = 0; k < per_prime[pi][i]; ++k) d[r - 1 - i] *= primes[pi];
  return d;
}

AbelianGroup::AbelianGroup(const FieldDesc& f, std::vector<FMat> elements) : f_(&f) {
  for (auto& g : elements) g = embed(g, f);
  std::sort(elements.begin(), elements.end(),
            [&](const FMat& a, const FMat& b) { return matrix_key(a, f) < matrix_key(b, f); });
  elements.erase(std::unique(elements.begin(), elements.end(),
                             [&](const FMat& a, const FMat& b) { return matrix_key(a, f) == matrix_key(b, f); }),
                 elements.end());
  elements_ = std::move(elements);
  if (elements_.empty()) throw std::invalid_argument("empty group");
  const int n = order();
  for (int i = 0; i < n; ++i) index_[matrix_key(elements_[i], f)] = i;
  table_.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = index_of(FMat(elements_[i] * elements_[j]));
      if (k < 0) throw std::invalid_argument("set of matrices is not closed under products");
      table_[i][j] = k;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (table_[i][j] != table_[j][i]) throw std::invalid_argument("group is not abelian");
  identity_ = index_of(fidentity(f, static_cast<int>(elements_[0].rows())));
  if (identity_ < 0) throw std::invalid_argument("identity missing");
  inverse_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (table_[i][j] == identity_) inverse_[i] = j;
  for (int i = 0; i < n; ++i)
    if (inverse_[i] < 0) throw std::invalid_argument("element without inverse");

  std::vector<int> orders(n);
  for (int i = 0; i < n; ++i) orders[i] = order_of(i);
  divisors_ = invariant_factors(orders);

  // generators, largest factor first, each cyclic part meeting the previous span trivially
  std::vector<int> desc(divisors_.rbegin(), divisors_.rend());
  std::vector<int> chosen;
  std::function<bool(size_t, std::vector<char>&)> pick = [&](size_t k, std::vector<char>& span) {
    if (k == desc.size()) return true;
    for (int g = 0; g < n; ++g) {
      if (orders[g] != desc[k]) continue;
      bool ok = true;
      for (int t = 1, x = g; t < desc[k] && ok; ++t, x = table_[x][g])
        if (span[x]) ok = false;
      if (!ok) continue;
      std::vector<char> next(n, 0);
      for (int s = 0; s < n; ++s)
        if (span[s])
          for (int t = 0, x = s; t < desc[k]; ++t, x = table_[x][g]) next[x] = 1;
      chosen.push_back(g);
      if (pick(k + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  std::vector<char> span(n, 0);
  span[identity_] = 1;
  if (!pick(0, span)) throw std::logic_error("no generating set matches the invariant factors");
  std::reverse(chosen.begin(), chosen.end());
  generators_ = chosen;

  exps_.assign(n, {});
  std::vector<int> e(divisors_.size(), 0);
  for (int c = 0; c < n; ++c) {
    int x = identity_;
    for (size_t i = 0; i < e.size(); ++i) x = table_[x][pow(generators_[i], e[i])];
    if (!exps_[x].empty() || (x == identity_ && c > 0)) throw std::logic_error("generators are not independent");
    exps_[x] = e;
    from_exps_[e] = x;
    for (size_t i = 0; i < e.size(); ++i) {
      if (++e[i] < divisors_[i]) break;
      e[i] = 0;
    }
  }
}

int AbelianGroup::exponent() const { return divisors_.empty() ? 1 : divisors_.back(); }

int AbelianGroup::index_of(const FMat& g) const {
  auto it = index_.find(matrix_key(embed(g, *f_), *f_));
  return it == index_.end() ? -1 : it->second;
}

int AbelianGroup::pow(int i, long long k) const {
  const int o = order_of(i);
  k = ((k % o) + o) % o;
  int x = identity_;
  for (long long t = 0; t < k; ++t) x = table_[x][i];
  return x;
}

int AbelianGroup::order_of(int i) const {
  int o = 1;
  for (int x = i; x != identity_; x = table_[x][i]) ++o;
  return o;
}

int AbelianGroup::from_exps(const std::vector<int>& e) const {
  std::vector<int> r(e.size());
  for (size_t i = 0; i < e.size(); ++i) r[i] = ((e[i] % divisors_[i]) + divisors_[i]) % divisors_[i];
  return from_exps_.at(r);
}

std::string AbelianGroup::structure() const {
  if (divisors_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < divisors_.size(); ++i) os << (i ? " x " : "") << "Z/" << divisors_[i];
  return os.str();
}

std::vector<Character> all_characters(const AbelianGroup& G) {
  std::vector<Character> out;
  std::vector<int> e(G.divisors().size(), 0);
  for (int c = 0; c < G.order(); ++c) {
    out.push_back({e});
    for (size_t i = 0; i < e.size(); ++i) {
      if (++e[i] < G.divisors()[i]) break;
      e[i] = 0;
    }
  }
  return out;
}

Rational char_value(const AbelianGroup& G, const Character& chi, int element) {
  Rational v(0);
  const auto& x = G.exps(element);
  for (size_t i = 0; i < x.size(); ++i) v += Rational(static_cast<std::int64_t>(chi.e[i]) * x[i], G.divisors()[i]);
  return v.mod(Rational(1));
}

int char_value_mod(const AbelianGroup& G, const Character& chi, int element) {
  Rational v = char_value(G, chi, element) * Rational(G.exponent());
  return static_cast<int>(v.num());
}

Character contragredient(const AbelianGroup& G, const Character& chi) {
  Character c = chi;
  for (size_t i = 0; i < c.e.size(); ++i) c.e[i] = (G.divisors()[i] - c.e[i]) % G.divisors()[i];
  return c;
}

bool is_trivial_on(const AbelianGroup& G, const Character& chi, const std::vector<int>& subgroup) {
  for (int h : subgroup)
    if (char_value(G, chi, h) != Rational(0)) return false;
  return true;
}

std::optional<Character> character_from_values(const AbelianGroup& G, const std::function<Rational(int)>& value) {
  Character c;
  for (size_t i = 0; i < G.generators().size(); ++i) {
    Rational v = value(G.generators()[i]).mod(Rational(1)) * Rational(G.divisors()[i]);
    if (v.den() != 1) return std::nullopt;
    c.e.push_back(static_cast<int>(v.num()));
  }
  for (int g = 0; g < G.order(); ++g)
    if (char_value(G, c, g) != value(g).mod(Rational(1))) return std::nullopt;
  return c;
}

std::string to_string(const Character& chi) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < chi.e.size(); ++i) os << (i ? "," : "") << chi.e[i];
  os << ")";
  return os.str();
}

}  // namespace epitheta
