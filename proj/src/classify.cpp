#include "epitheta/classify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "epitheta/runner.hpp"

namespace epitheta {

namespace {

std::vector<int> positions(const EpsHermSpace& V, WittLabel l) {
  std::vector<int> out;
  for (int i = 0; i < V.dim(); ++i)
    if (V.labels[i] == l) out.push_back(i);
  return out;
}

EpsHermSpace split_space(const FieldDesc& f, int dim, int eps) {
  const int h = dim / 2;
  std::vector<Fq> aniso;
  if (dim % 2) {
    if (f.involution() == InvolutionKind::frobenius && eps == -1) {
      Fq g(f, f.generator());
      aniso.push_back(g - involute(g));
    } else {
      aniso.push_back(Fq(f, 1));
    }
  }
  return witt_basis(f, dim, eps, h, aniso);
}

Fq random_unit(const FieldDesc& f, std::mt19937_64& rng) {
  return Fq(f, f.exp(static_cast<long long>(rng() % (f.q() - 1))));
}

bool certified(const PairModel& m, const FMat& w) {
  return !invariant_P(m.M(w), m.lie()).is_zero() && !invariant_P(m.Mp(w), m.lie_p()).is_zero();
}

// Integer kernel for prime fields: M, M' and their ranks mod p.
class IntKernel {
 public:
  IntKernel(const PairModel& model, const PairType& t) : p_(model.field().p()) {
    rows_ = model.w_rows();
    cols_ = model.w_cols();
    gl_ = t.kind == PairType::gl_gl;
    inv_.assign(p_, 0);
    for (int a = 1; a < p_; ++a)
      for (int b = 1; b < p_; ++b)
        if (a * b % p_ == 1) inv_[a] = b;
    if (gl_) {
      n_ = cols_;
      np_ = rows_ / 2;
    } else {
      const auto& fp = dynamic_cast<const FormedPair&>(model);
      n_ = fp.V().dim();
      np_ = fp.Vp().dim();
      auto ginv = to_int(fp.V().gram_inv), gp = to_int(fp.Vp().gram);
      // star(i, j) = sum_{k,l} ginv(i, k) w(l, k) gp(l, j)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < np_; ++j) {
          std::vector<std::pair<int, int>> terms;
          for (int k = 0; k < n_; ++k)
            for (int l = 0; l < np_; ++l) {
              int c = ginv[i * n_ + k] * gp[l * np_ + j] % p_;
              if (c) terms.emplace_back(l * cols_ + k, c);
            }
          star_terms_.push_back(std::move(terms));
        }
    }
    const int big = 64 * p_ * p_;
    mod_.resize(2 * big);
    for (int x = -big; x < big; ++x) mod_[x + big] = ((x % p_) + p_) % p_;
    off_ = big;
    star_.assign(n_ * np_, 0);
    M_.assign(n_ * n_, 0);
    Mp_.assign(np_ * np_, 0);
    work_.assign(std::max(n_, np_) * std::max(n_, np_), 0);
  }

  int entries() const { return rows_ * cols_; }

  // Whether rank M(w) >= rM and rank M'(w) >= rMp, for w given row-major.
  bool ranks_at_least(const std::vector<int>& w, int rM, int rMp) {
    if (gl_) {
      const int* x = w.data();
      const int* y = w.data() + np_ * n_;
      for (int i = 0; i < np_; ++i)
        for (int j = 0; j < np_; ++j) {
          int s = 0;
          for (int k = 0; k < n_; ++k) s += x[i * n_ + k] * y[j * n_ + k];
          Mp_[i * np_ + j] = md(s);
        }
      if (rank(Mp_, np_) < rMp) return false;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          int s = 0;
          for (int k = 0; k < np_; ++k) s += y[k * n_ + i] * x[k * n_ + j];
          M_[i * n_ + j] = md(s);
        }
      return rank(M_, n_) >= rM;
    }
    for (size_t e = 0; e < star_terms_.size(); ++e) {
      int s = 0;
      for (auto [idx, c] : star_terms_[e]) s += w[idx] * c;
      star_[e] = md(s);
    }
    // the side with the larger threshold first
    const bool primed_first = rMp >= rM;
    for (int pass = 0; pass < 2; ++pass) {
      if ((pass == 0) == primed_first) {
        for (int i = 0; i < np_; ++i)
          for (int j = 0; j < np_; ++j) {
            int s = 0;
            for (int k = 0; k < n_; ++k) s += w[i * cols_ + k] * star_[k * np_ + j];
            Mp_[i * np_ + j] = md(s);
          }
        if (rank(Mp_, np_) < rMp) return false;
      } else {
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j) {
            int s = 0;
            for (int k = 0; k < np_; ++k) s += star_[i * np_ + k] * w[k * cols_ + j];
            M_[i * n_ + j] = md(s);
          }
        if (rank(M_, n_) < rM) return false;
      }
    }
    return true;
  }

 private:
  int md(int x) const { return mod_[x + off_]; }

  std::vector<int> to_int(const FMat& A) const {
    std::vector<int> out(A.rows() * A.cols());
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j) out[i * A.cols() + j] = static_cast<int>(A(i, j).code());
    return out;
  }

  int rank(const std::vector<int>& A, int n) {
    std::copy(A.begin(), A.begin() + n * n, work_.begin());
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (work_[i * n + c]) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      if (piv != r)
        for (int j = c; j < n; ++j) std::swap(work_[piv * n + j], work_[r * n + j]);
      const int iv = inv_[work_[r * n + c]];
      for (int i = r + 1; i < n; ++i) {
        const int f = md(work_[i * n + c] * iv);
        if (!f) continue;
        for (int j = c; j < n; ++j) work_[i * n + j] = md(work_[i * n + j] - f * work_[r * n + j]);
      }
      ++r;
    }
    return r;
  }

  int p_, rows_, cols_, n_ = 0, np_ = 0, off_ = 0;
  bool gl_ = false;
  std::vector<std::vector<std::pair<int, int>>> star_terms_;
  std::vector<int> inv_, mod_, star_, M_, Mp_, work_;
};

std::uint64_t ipow(std::uint64_t b, int e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

void record_witness(RsResult& r, const PairModel& m, const FMat& w, const std::string& source) {
  r.verdict = RsResult::yes;
  r.source = source;
  r.witness = w;
  r.witness_field = m.field().name();
  r.P = invariant_P(m.M(w), m.lie()).str();
  r.Pp = invariant_P(m.Mp(w), m.lie_p()).str();
  r.oracle_ok = regular_semisimple_oracle(m.M(w), m.lie()) && regular_semisimple_oracle(m.Mp(w), m.lie_p());
}

}  // namespace

LieType PairType::lie() const {
  switch (kind) {
    case gl_gl: return {LieType::gl, dim};
    case sp_o: return {LieType::sp, dim};
    case o_sp: return {LieType::o, dim};
    case u_u: return {LieType::u, dim};
  }
  return {};
}

LieType PairType::lie_p() const {
  switch (kind) {
    case gl_gl: return {LieType::gl, dim_p};
    case sp_o: return {LieType::o, dim_p};
    case o_sp: return {LieType::sp, dim_p};
    case u_u: return {LieType::u, dim_p};
  }
  return {};
}

std::string PairType::str() const {
  static const char* g[] = {"GL", "Sp", "O", "U"};
  static const char* gp[] = {"GL", "O", "Sp", "U"};
  return "(" + std::string(g[kind]) + "(" + std::to_string(dim) + "), " + gp[kind] + "(" + std::to_string(dim_p) + "))";
}

const FieldDesc& pair_field(const PairType& t, int p, int extension) {
  if (t.kind == PairType::u_u) {
    if (extension != 1) throw std::invalid_argument("unitary pairs are realized over F_p^2 only");
    return FieldDesc::make(p, 2, InvolutionKind::frobenius);
  }
  return FieldDesc::make(p, extension);
}

std::shared_ptr<PairModel> build_model(const PairType& t, const FieldDesc& f) {
  if (t.dim < 1 || t.dim_p < t.dim) throw std::invalid_argument("need 1 <= dim <= dim'");
  switch (t.kind) {
    case PairType::gl_gl: return std::make_shared<GlPair>(f, t.dim, t.dim_p);
    case PairType::sp_o:
      if (t.dim % 2) throw std::invalid_argument("symplectic dimension must be even");
      return std::make_shared<FormedPair>(split_space(f, t.dim, -1), split_space(f, t.dim_p, 1));
    case PairType::o_sp:
      if (t.dim_p % 2) throw std::invalid_argument("symplectic dimension must be even");
      return std::make_shared<FormedPair>(split_space(f, t.dim, 1), split_space(f, t.dim_p, -1));
    case PairType::u_u:
      if (f.involution() != InvolutionKind::frobenius) throw std::invalid_argument("unitary pairs need F_p^2");
      return std::make_shared<FormedPair>(split_space(f, t.dim, 1), split_space(f, t.dim_p, -1));
  }
  throw std::invalid_argument("unknown pair kind");
}

int witness_length(const PairType& t) { return t.kind == PairType::gl_gl ? t.dim : t.dim / 2; }

FMat witness(const PairModel& model, const PairType& t, const std::vector<Fq>& a, const std::vector<Fq>& b) {
  const FieldDesc& f = model.field();
  if (t.dim > t.dim_p) throw std::invalid_argument("witness needs dim <= dim'");
  const int len = witness_length(t);
  if (static_cast<int>(a.size()) != len || static_cast<int>(b.size()) != len)
    throw std::invalid_argument("witness parameters must have length " + std::to_string(len));
  if (t.kind == PairType::gl_gl) {
    FMat x = fzeros(f, t.dim_p, t.dim), y = fzeros(f, t.dim_p, t.dim);
    for (int i = 0; i < len; ++i) {
      x(i, i) = a[i].in(f);
      y(i, i) = b[i].in(f);
    }
    return GlPair::stack(x, y);
  }
  const auto& fp = dynamic_cast<const FormedPair&>(model);
  auto plus = positions(fp.V(), WittLabel::plus), minus = positions(fp.V(), WittLabel::minus);
  auto plus_p = positions(fp.Vp(), WittLabel::plus), minus_p = positions(fp.Vp(), WittLabel::minus);
  const Fq s = Fq::from_int(f, fp.V().epsilon == -1 && !fp.V().unitary() ? -1 : 1);
  FMat w = fzeros(f, t.dim_p, t.dim);
  for (int i = 0; i < len; ++i) {
    w(plus_p[i], plus[i]) = a[i].in(f);
    w(minus_p[i], minus[i]) = s * b[i].in(f);
  }
  return w;
}

bool upsilon_check(const PairModel& model, const PairType& t, const FMat& w) {
  const FieldDesc& f = model.field();
  auto diagonal = [&](const FMat& A0) -> std::optional<std::vector<FieldDesc::Code>> {
    FMat A = embed(A0, f);
    std::vector<FieldDesc::Code> d;
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        if (i != j && !A(i, j).is_zero()) return std::nullopt;
    for (int i = 0; i < A.rows(); ++i) d.push_back(A(i, i).code());
    std::sort(d.begin(), d.end());
    return d;
  };
  auto d = diagonal(model.M(w)), dp = diagonal(model.Mp(w));
  if (!d || !dp) return false;
  std::vector<FieldDesc::Code> padded = *d;
  padded.insert(padded.end(), t.dim_p - t.dim, f.zero());
  std::sort(padded.begin(), padded.end());
  return padded == *dp;
}

Check torus_stability(const PairType& t, int p, int samples, std::uint64_t seed) {
  Check c;
  c.name = "witness_family_torus_stable";
  c.anchor = "(t, t') . A subset A for diagonal tori Y x Y'";
  const FieldDesc& f = pair_field(t, p);
  auto model = build_model(t, f);
  const int len = witness_length(t);
  auto torus = [&](const EpsHermSpace& V, std::mt19937_64& rng) {
    FMat h = fidentity(f, V.dim());
    auto plus = positions(V, WittLabel::plus), minus = positions(V, WittLabel::minus);
    for (size_t i = 0; i < plus.size(); ++i) {
      Fq u = random_unit(f, rng);
      h(plus[i], plus[i]) = u;
      h(minus[i], minus[i]) = inverse(involute(u));
    }
    return h;
  };
  auto diag = [&](int n, std::mt19937_64& rng) {
    FMat h = fidentity(f, n);
    for (int i = 0; i < n; ++i) h(i, i) = random_unit(f, rng);
    return h;
  };
  for (int i = 0; i < samples; ++i) {
    auto rng = case_rng(seed, 41, i);
    std::vector<Fq> a, b;
    for (int k = 0; k < len; ++k) {
      a.push_back(Fq(f, f.elements()[rng() % f.q()]));
      b.push_back(Fq(f, f.elements()[rng() % f.q()]));
    }
    FMat w = witness(*model, t, a, b);
    FMat h, hp;
    if (t.kind == PairType::gl_gl) {
      h = diag(t.dim, rng);
      hp = diag(t.dim_p, rng);
    } else {
      const auto& fp = dynamic_cast<const FormedPair&>(*model);
      h = torus(fp.V(), rng);
      hp = torus(fp.Vp(), rng);
    }
    ++c.cases;
    if (!model->in_group(h) || !model->in_group_p(hp)) {
      c.fail("torus element outside the group: " + format_matrix(h) + " " + format_matrix(hp));
      break;
    }
    FMat v = embed(model->act(h, hp, w), f);
    // read the parameters back and rebuild
    FMat zero = witness(*model, t, std::vector<Fq>(len, Fq(f, 0)), std::vector<Fq>(len, Fq(f, 0)));
    std::vector<Fq> a2(len, Fq(f, 0)), b2(len, Fq(f, 0));
    for (int k = 0; k < len; ++k) {
      std::vector<Fq> e(len, Fq(f, 0));
      e[k] = Fq(f, 1);
      FMat ea = witness(*model, t, e, std::vector<Fq>(len, Fq(f, 0)));
      FMat eb = witness(*model, t, std::vector<Fq>(len, Fq(f, 0)), e);
      for (int r = 0; r < ea.rows(); ++r)
        for (int s = 0; s < ea.cols(); ++s) {
          if (!ea(r, s).is_zero()) a2[k] = v(r, s) * inverse(ea(r, s));
          if (!eb(r, s).is_zero()) b2[k] = v(r, s) * inverse(eb(r, s));
        }
    }
    (void)zero;
    if (!(embed(witness(*model, t, a2, b2), f) == v)) {
      c.fail("w=" + format_matrix(w) + " moved to " + format_matrix(v));
      break;
    }
  }
  return c;
}

int min_rs_rank(const LieType& t) {
  switch (t.kind) {
    case LieType::gl:
    case LieType::u: return t.n - 1;
    case LieType::sp: return t.n;
    case LieType::o: return t.n % 2 ? t.n - 1 : std::max(0, t.n - 2);
  }
  return 0;
}

std::string to_string(RsResult::Verdict v) {
  switch (v) {
    case RsResult::yes: return "yes";
    case RsResult::no: return "no";
    case RsResult::no_over_field: return "no-over-this-field";
    case RsResult::inconclusive: return "inconclusive";
  }
  return "?";
}

RsResult rs_pair_exists(const PairType& t, int p, const SearchOptions& opt) {
  RsResult r;
  const FieldDesc& f = pair_field(t, p);
  auto model = build_model(t, f);
  const int len = witness_length(t);

  const int bound = std::min(t.dim, t.dim_p);
  std::ostringstream cert;
  if (bound < min_rs_rank(t.lie()))
    cert << "rank M(w) <= " << bound << " < " << min_rs_rank(t.lie()) << " needed in " << t.lie().str();
  else if (bound < min_rs_rank(t.lie_p()))
    cert << "rank M'(w) <= " << bound << " < " << min_rs_rank(t.lie_p()) << " needed in " << t.lie_p().str();
  r.certificate = cert.str();

  // diagonal family
  for (int i = 0; i < opt.family_tries; ++i) {
    auto rng = case_rng(opt.seed, 51, i);
    std::vector<Fq> a, b;
    for (int k = 0; k < len; ++k) {
      a.push_back(random_unit(f, rng));
      b.push_back(random_unit(f, rng));
    }
    FMat w = witness(*model, t, a, b);
    if (certified(*model, w)) {
      record_witness(r, *model, w, "witness family");
      return r;
    }
  }

  const MatSpace& W = model->W();
  for (int i = 0; i < opt.random_samples; ++i) {
    auto rng = case_rng(opt.seed, 52, i);
    FMat w = random_element(W, rng);
    ++r.random_samples;
    if (certified(*model, w)) {
      record_witness(r, *model, w, "random");
      return r;
    }
  }

  Executor serial(1);
  const Executor& ex = opt.exec ? *opt.exec : serial;
  const std::uint64_t total = ipow(f.q(), W.dim(), opt.budget);
  if (total <= opt.budget) {
    const std::uint64_t none = ~std::uint64_t{0};
    std::vector<std::uint64_t> found;
    if (f.k() == 1) {
      const int rM = min_rs_rank(t.lie()), rMp = min_rs_rank(t.lie_p());
      found = ex.map_blocks<std::uint64_t>(total, [&](std::uint64_t b, std::uint64_t e) -> std::uint64_t {
        IntKernel K(*model, t);
        const int n = K.entries();
        std::vector<int> digits(n);
        std::uint64_t x = b;
        for (int k = 0; k < n; ++k) {
          digits[k] = static_cast<int>(x % p);
          x /= p;
        }
        for (std::uint64_t i = b; i < e; ++i) {
          if (K.ranks_at_least(digits, rM, rMp)) {
            FMat w = fzeros(f, model->w_rows(), model->w_cols());
            for (int k = 0; k < n; ++k) w(k / model->w_cols(), k % model->w_cols()) = Fq::from_int(f, digits[k]);
            if (certified(*model, w)) return i;
          }
          for (int k = 0; k < n; ++k) {
            if (++digits[k] < p) break;
            digits[k] = 0;
          }
        }
        return none;
      });
    } else {
      found = ex.map_blocks<std::uint64_t>(total, [&](std::uint64_t b, std::uint64_t e) -> std::uint64_t {
        for (std::uint64_t i = b; i < e; ++i)
          if (certified(*model, W.element(i))) return i;
        return none;
      });
    }
    r.exhaustive = true;
    r.enumerated = total;
    for (auto i : found)
      if (i != none) {
        FMat w;
        if (f.k() == 1) {
          w = fzeros(f, model->w_rows(), model->w_cols());
          std::uint64_t x = i;
          for (int k = 0; k < model->w_rows() * model->w_cols(); ++k) {
            w(k / model->w_cols(), k % model->w_cols()) = Fq::from_int(f, static_cast<long long>(x % p));
            x /= p;
          }
        } else {
          w = W.element(i);
        }
        record_witness(r, *model, w, "exhaustive");
        return r;
      }
  }

  if (t.kind != PairType::u_u) {
    const FieldDesc& f2 = pair_field(t, p, 2);
    auto model2 = build_model(t, f2);
    for (int i = 0; i < opt.extension_samples; ++i) {
      auto rng = case_rng(opt.seed, 53, i);
      FMat w = random_element(model2->W(), rng);
      ++r.extension_samples;
      if (certified(*model2, w)) {
        record_witness(r, *model2, w, "extension");
        return r;
      }
    }
  }

  if (!r.exhaustive) r.verdict = RsResult::inconclusive;
  else r.verdict = r.certificate.empty() ? RsResult::no_over_field : RsResult::no;
  return r;
}

bool in_rs_list(const PairType& t) {
  switch (t.kind) {
    case PairType::gl_gl:
    case PairType::u_u: return t.dim_p - t.dim <= 1;
    case PairType::sp_o: return t.dim_p >= t.dim && t.dim_p <= t.dim + 2;
    case PairType::o_sp: return t.dim == t.dim_p;
  }
  return false;
}

std::vector<PairType> pair_types(int max_rank) {
  std::vector<PairType> out;
  for (int n = 1; n <= max_rank; ++n)
    for (int np = n; np <= max_rank; ++np) out.push_back({PairType::gl_gl, n, np});
  // Sp(2n) x O(N), smaller space first
  for (int n = 1; n <= max_rank; ++n)
    for (int N = 2; N <= 2 * max_rank + 1; ++N) {
      if (2 * n <= N) out.push_back({PairType::sp_o, 2 * n, N});
      else out.push_back({PairType::o_sp, N, 2 * n});
    }
  for (int n = 1; n <= max_rank; ++n)
    for (int np = n; np <= max_rank; ++np) out.push_back({PairType::u_u, n, np});
  return out;
}

bool ClassificationTable::all_match() const {
  for (const auto& r : rows)
    if (!r.match) return false;
  return !rows.empty();
}

ClassificationTable classification_table(int max_rank, int p, const SearchOptions& opt) {
  if (max_rank < 1 || max_rank > 3) throw std::invalid_argument("max_rank must be in [1, 3]");
  ClassificationTable T;
  T.max_rank = max_rank;
  T.p = p;
  for (const auto& t : pair_types(max_rank)) {
    TableRow row;
    row.type = t;
    row.result = rs_pair_exists(t, p, opt);
    row.expected = in_rs_list(t);
    const auto v = row.result.verdict;
    row.match = row.expected ? (v == RsResult::yes && row.result.oracle_ok) : v == RsResult::no;
    T.rows.push_back(row);
  }
  return T;
}

}  // namespace epitheta
