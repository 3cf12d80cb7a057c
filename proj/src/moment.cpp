#include "epitheta/moment.hpp"
#include "epitheta/runner.hpp"

#include <sstream>
#include <stdexcept>

namespace epitheta {

std::string LieType::str() const {
  static const char* names[] = {"gl", "sp", "o", "u"};
  return std::string(names[kind]) + std::to_string(n);
}

LieAlgebra LieAlgebra::of(const EpsHermSpace& V) {
  LieAlgebra g;
  g.field = V.field;
  g.type.n = V.dim();
  if (V.unitary()) {
    g.type.kind = LieType::u;
  } else {
    g.type.kind = V.epsilon == 1 ? LieType::o : LieType::sp;
    g.basis = lie_algebra(V);
  }
  return g;
}

LieAlgebra LieAlgebra::general_linear(const FieldDesc& f, int n) {
  LieAlgebra g;
  g.field = &f;
  g.type = {LieType::gl, n};
  return g;
}

int LieAlgebra::dim() const {
  if (type.kind == LieType::gl || type.kind == LieType::u) return type.n * type.n;
  return basis.dim();
}

FMat ad_matrix(const FMat& X, const LieAlgebra& g) {
  const FieldDesc& f = *g.field;
  if (g.type.kind == LieType::gl || g.type.kind == LieType::u) {
    const int n = g.type.n;
    FMat A = fzeros(f, n * n, n * n);
    // column (k,l) is X E_kl - E_kl X
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const int c = k * n + l;
        for (int i = 0; i < n; ++i) A(i * n + l, c) += X(i, k);
        for (int j = 0; j < n; ++j) A(k * n + j, c) -= X(l, j);
      }
    return A;
  }
  const auto& bs = g.basis.basis();
  const int d = static_cast<int>(bs.size());
  FMat A = fzeros(f, d, d);
  for (int c = 0; c < d; ++c) {
    auto co = g.basis.coords_unchecked(FMat(X * bs[c] - bs[c] * X));
    for (int r = 0; r < d; ++r) A(r, c) = co[r];
  }
  return A;
}

Fq invariant_P(const FMat& X, const LieAlgebra& g) {
  FMat A = ad_matrix(X, g);
  auto c = charpoly<Fq>(FMat(-A));
  return c[g.type.rank()].in(*g.field);
}

bool is_regular_semisimple(const FMat& X, const LieAlgebra& g) { return !invariant_P(X, g).is_zero(); }

int centralizer_dim(const FMat& X, const LieAlgebra& g) {
  FMat A = ad_matrix(X, g);
  return static_cast<int>(A.cols()) - rank(A);
}

bool regular_semisimple_oracle(const FMat& X, const LieAlgebra& g) {
  FMat A = ad_matrix(X, g);
  const int d = static_cast<int>(A.cols());
  const int k1 = d - rank(A);
  if (k1 != g.type.rank()) return false;
  return d - rank<Fq>(FMat(A * A)) == k1;
}

const MatSpace& PairModel::W() const {
  if (!W_) W_ = std::make_shared<MatSpace>(MatSpace::full(field(), w_rows(), w_cols()));
  return *W_;
}

FMat random_matrix(const FieldDesc& f, int rows, int cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, f.q() - 1);
  FMat A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = Fq(f, d(rng));
  return A;
}

FMat random_element(const MatSpace& S, std::mt19937_64& rng) {
  const auto& fx = S.field().fixed_elements();
  std::uniform_int_distribution<size_t> d(0, fx.size() - 1);
  std::vector<Fq> c;
  for (int i = 0; i < S.dim(); ++i) c.emplace_back(S.field(), fx[d(rng)]);
  return S.combine(c);
}

FMat random_isometry(const EpsHermSpace& V, std::mt19937_64& rng) {
  const FieldDesc& f = *V.field;
  const int n = V.dim();
  MatSpace lie = lie_algebra(V);
  FMat g = fidentity(f, n);
  FMat two = fidentity(f, n) * Fq(2);
  for (int t = 0; t < 3; ++t) {
    FMat X = random_element(lie, rng);
    auto inv = try_inverse<Fq>(FMat(two - X));
    if (inv) g = g * FMat((two + X) * *inv);
  }
  if (!V.unitary() && V.epsilon == 1 && rng() % 2) {
    // reflection in a random anisotropic vector
    for (int tries = 0; tries < 64; ++tries) {
      FMat v = random_matrix(f, n, 1, rng);
      Fq vv = V.pair(v.col(0), v.col(0));
      if (vv.is_zero()) continue;
      FMat s = fidentity(f, n) - v * v.transpose() * V.gram * (Fq(2) / vv);
      g = g * s;
      break;
    }
  }
  if (V.unitary()) {
    // central unitary scalar u with u u^tau = 1
    std::vector<Fq> norm1;
    for (Fq u : field_elements(f))
      if (!u.is_zero() && u * involute(u) == Fq(1)) norm1.push_back(u);
    g = g * norm1[rng() % norm1.size()];
  } else if (rng() % 2) {
    g = -g;
  }
  return g;
}

FormedPair::FormedPair(EpsHermSpace V, EpsHermSpace Vp, int moment_sign)
    : V_(std::move(V)), Vp_(std::move(Vp)), moment_sign_(moment_sign) {
  if (V_.field != Vp_.field) throw std::invalid_argument("dual pair spaces must share a field");
  if (V_.epsilon * Vp_.epsilon != -1) throw std::invalid_argument("dual pair requires eps * eps' = -1");
  g_ = LieAlgebra::of(V_);
  gp_ = LieAlgebra::of(Vp_);
  lie_ = lie_algebra(V_);
  lie_p_ = lie_algebra(Vp_);
}

std::string FormedPair::describe() const {
  return "(" + LieAlgebra::of(V_).type.str() + ", " + LieAlgebra::of(Vp_).type.str() + ") over " + V_.field->name();
}

FMat FormedPair::star(const FMat& w) const { return epitheta::star(w, V_, Vp_); }

FMat FormedPair::M(const FMat& w) const {
  FMat m = star(w) * w;
  return moment_sign_ == 1 ? m : FMat(-m);
}

FMat FormedPair::Mp(const FMat& w) const {
  FMat m = w * star(w);
  return moment_sign_ == 1 ? m : FMat(-m);
}

Fq FormedPair::pairing(const FMat& w1, const FMat& w2) const {
  return reduced_trace(trace<Fq>(star(w2) * w1)).in(field());
}

FMat FormedPair::random_group(std::mt19937_64& rng) const { return random_isometry(V_, rng); }
FMat FormedPair::random_group_p(std::mt19937_64& rng) const { return random_isometry(Vp_, rng); }

GlPair::GlPair(const FieldDesc& f, int n, int np) : f_(&f), n_(n), np_(np) {
  g_ = LieAlgebra::general_linear(f, n);
  gp_ = LieAlgebra::general_linear(f, np);
  lie_ = MatSpace::full(f, n, n);
  lie_p_ = MatSpace::full(f, np, np);
}

std::string GlPair::describe() const {
  return "(gl" + std::to_string(n_) + ", gl" + std::to_string(np_) + ") over " + f_->name();
}

FMat GlPair::stack(const FMat& x, const FMat& y) {
  FMat w(x.rows() + y.rows(), x.cols());
  w << x, y;
  return w;
}

FMat GlPair::M(const FMat& w) const { return y_of(w, np_).transpose() * x_of(w, np_); }
FMat GlPair::Mp(const FMat& w) const { return x_of(w, np_) * y_of(w, np_).transpose(); }

Fq GlPair::pairing(const FMat& w1, const FMat& w2) const {
  FMat x1 = x_of(w1, np_), y1 = y_of(w1, np_), x2 = x_of(w2, np_), y2 = y_of(w2, np_);
  return (trace<Fq>(y2.transpose() * x1) - trace<Fq>(x2.transpose() * y1)).in(*f_);
}

FMat GlPair::lie_act(const FMat& X, const FMat& w) const {
  return stack(-(x_of(w, np_) * X), y_of(w, np_) * X.transpose());
}

FMat GlPair::lie_act_p(const FMat& X, const FMat& w) const {
  return stack(X * x_of(w, np_), -(X.transpose() * y_of(w, np_)));
}

FMat GlPair::act(const FMat& g, const FMat& gp, const FMat& w) const {
  FMat gpit = inverse(gp).transpose();
  return stack(gp * x_of(w, np_) * inverse(g), gpit * y_of(w, np_) * g.transpose());
}

FMat GlPair::random_group(std::mt19937_64& rng) const {
  for (;;) {
    FMat g = random_matrix(*f_, n_, n_, rng);
    if (!det<Fq>(g).is_zero()) return g;
  }
}

FMat GlPair::random_group_p(std::mt19937_64& rng) const {
  for (;;) {
    FMat g = random_matrix(*f_, np_, np_, rng);
    if (!det<Fq>(g).is_zero()) return g;
  }
}

namespace {

// Element i of W for exhaustive runs, or a seeded random element.
struct Sampler {
  const SuiteOptions& opt;
  std::uint64_t count(std::uint64_t exhaustive) const { return opt.samples ? opt.samples : exhaustive; }
  std::mt19937_64 rng(std::uint64_t i, std::uint64_t salt) const { return case_rng(opt.seed, salt, i); }
};

std::string show(const char* label, const FMat& A) { return std::string(label) + "=" + format_matrix(A); }

}  // namespace

Checks star_identity_check(const FormedPair& P, const SuiteOptions& opt) {
  Checks out;
  const MatSpace& W = P.W();
  const EpsHermSpace &V = P.V(), &Vp = P.Vp();
  Sampler s{opt};
  const int sign = double_star_sign(V, Vp);
  out.push_back(run_cases("star_defining_identity", "<w(v),v'>' = <v,w*(v')>", s.count(W.size()), opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 11);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i);
                            FMat ws = P.star(w);
                            for (int a = 0; a < V.dim(); ++a)
                              for (int b = 0; b < Vp.dim(); ++b) {
                                FVec v = fzeros(*V.field, V.dim(), 1).col(0), vp = fzeros(*V.field, Vp.dim(), 1).col(0);
                                v(a) = Fq(1);
                                vp(b) = Fq(1);
                                if (Vp.pair(w * v, vp) != V.pair(v, ws * vp)) return show("w", w);
                              }
                            if (!(star(ws, Vp, V) == FMat(w * Fq(sign)))) return show("double star w", w);
                            return std::nullopt;
                          }));
  out.back().note = "(w*)* = " + std::to_string(sign) + " w";
  if (sign != -1) out.back().fail("(w*)* sign is " + std::to_string(sign) + ", expected -1 from eps eps' = -1");
  out.push_back(run_cases("star_semilinear", "(w c)* = c^tau w*, (w1 + w2)* = w1* + w2*", s.count(W.size()), opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 12);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i);
                            FMat w2 = random_element(W, rng);
                            Fq c(*V.field, rng() % V.field->q());
                            if (!(P.star(FMat(w * c)) == FMat(P.star(w) * involute(c)))) return show("w", w);
                            if (!(P.star(FMat(w + w2)) == FMat(P.star(w) + P.star(w2)))) return show("w", w);
                            return std::nullopt;
                          }));
  // M of the reversed pair at w* is -M'(w).
  out.push_back(run_cases("moment_maps_consistent", "M_{V',V}(w*) = -M'(w)", s.count(W.size()), opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 13);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i);
                            FMat ws = P.star(w);
                            FMat lhs = star(ws, Vp, V) * ws;
                            if (!(lhs == FMat(-P.Mp(w)))) return show("w", w);
                            if (!lie_member(P.M(w), V) || !lie_member(P.Mp(w), Vp)) return show("moment not in Lie algebra, w", w);
                            return std::nullopt;
                          }));
  return out;
}

Checks pairing_identities_check(const PairModel& P, const SuiteOptions& opt) {
  Checks out;
  const MatSpace& W = P.W();
  const MatSpace &g = P.lie_space(), &gp = P.lie_space_p();
  Sampler s{opt};
  const std::uint64_t nW = W.size();
  out.push_back(run_cases("pairing_alternating", "<w,w> = 0, <w1,w2> = -<w2,w1>", s.count(nW), opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 21);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i);
                            FMat w2 = random_element(W, rng);
                            if (!P.pairing(w, w).is_zero()) return show("w", w);
                            if (P.pairing(w, w2) != -P.pairing(w2, w)) return show("w", w) + " " + show("w2", w2);
                            return std::nullopt;
                          }));
  {
    Check c{"pairing_nondegenerate", "rank of <,> on a basis of W = dim W"};
    const auto& bs = W.basis();
    FMat Gm = fzeros(P.field(), static_cast<int>(bs.size()), static_cast<int>(bs.size()));
    for (size_t a = 0; a < bs.size(); ++a)
      for (size_t b = 0; b < bs.size(); ++b) Gm(static_cast<int>(a), static_cast<int>(b)) = P.pairing(bs[a], bs[b]);
    c.cases = 1;
    int r = rank(Gm);
    c.witness = "rank " + std::to_string(r) + " of " + std::to_string(bs.size());
    if (r != static_cast<int>(bs.size())) c.fail(c.witness);
    out.push_back(c);
  }
  const std::uint64_t nX = s.count(g.size() * nW), nXp = s.count(gp.size() * nW);
  out.push_back(run_cases("moment_pairing_identity", "<X.w,w> = 2 B(M(w),X), X.w = -wX", nX, opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 22);
                            FMat X = opt.samples ? random_element(g, rng) : g.element(i / nW);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i % nW);
                            if (P.pairing(P.lie_act(X, w), w) != Fq(2) * P.B(P.M(w), X)) return show("X", X) + " " + show("w", w);
                            return std::nullopt;
                          }));
  out.push_back(run_cases("moment_pairing_identity_prime", "<X'.w,w> = 2 B'(-M'(w),X'), X'.w = X'w", nXp, opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 23);
                            FMat X = opt.samples ? random_element(gp, rng) : gp.element(i / nW);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i % nW);
                            if (P.pairing(P.lie_act_p(X, w), w) != Fq(2) * P.Bp(FMat(-P.Mp(w)), X))
                              return show("X'", X) + " " + show("w", w);
                            return std::nullopt;
                          }));
  return out;
}

Checks equivariance_check(const PairModel& P, const SuiteOptions& opt) {
  Checks out;
  const MatSpace& W = P.W();
  Sampler s{opt};
  const std::uint64_t n = opt.samples ? opt.samples : std::min<std::uint64_t>(W.size(), 2000);
  out.push_back(run_cases("moment_equivariance", "M(g'wg^-1) = g M(w) g^-1, M'(g'wg^-1) = g' M'(w) g'^-1", n, opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 31);
                            FMat g = P.random_group(rng), gp = P.random_group_p(rng);
                            if (!P.in_group(g) || !P.in_group_p(gp)) return show("sampled non-isometry g", g);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i);
                            FMat gw = P.act(g, gp, w);
                            if (!(P.M(gw) == FMat(g * P.M(w) * inverse(g)))) return show("g", g) + " " + show("w", w);
                            if (!(P.Mp(gw) == FMat(gp * P.Mp(w) * inverse(gp)))) return show("g'", gp) + " " + show("w", w);
                            FMat w2 = random_element(W, rng);
                            if (P.pairing(gw, P.act(g, gp, w2)) != P.pairing(w, w2)) return show("pairing not invariant, g", g);
                            return std::nullopt;
                          }));
  out.push_back(run_cases("P_conjugation_invariant", "P(gXg^-1) = P(X)", std::min<std::uint64_t>(n, 500), opt.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 32);
                            FMat g = P.random_group(rng);
                            FMat X = random_element(P.lie_space(), rng);
                            if (invariant_P(X, P.lie()) != invariant_P(FMat(g * X * inverse(g)), P.lie())) return show("X", X);
                            FMat gp = P.random_group_p(rng);
                            FMat Xp = random_element(P.lie_space_p(), rng);
                            if (invariant_P(Xp, P.lie_p()) != invariant_P(FMat(gp * Xp * inverse(gp)), P.lie_p())) return show("X'", Xp);
                            return std::nullopt;
                          }));
  return out;
}

namespace {

using DFq = Dual<Fq>;

Mat<DFq> lift(const FMat& A) {
  Mat<DFq> B(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) B(i, j) = DFq(A(i, j), Fq(0));
  return B;
}

DFq dual_rtrace(const DFq& x, bool unitary) { return unitary ? x + involute(x) : x; }

}  // namespace

bool first_order_osc_holds(const FormedPair& P, const FMat& X, const FMat& w) {
  const EpsHermSpace &V = P.V(), &Vp = P.Vp();
  const FieldDesc& f = *V.field;
  const bool u = V.unitary();
  const DFq half(Fq::from_int(f, 2).inverse());
  Mat<DFq> Gi = lift(V.gram_inv), Gp = lift(Vp.gram), G = lift(V.gram);
  Mat<DFq> g = lift(fidentity(f, V.dim()));
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j) g(i, j) = g(i, j) + DFq(Fq(0), X(i, j));
  Mat<DFq> dw = lift(w);
  Mat<DFq> gw = dw * inverse<DFq>(g) - dw;
  DFq lhs = half * dual_rtrace(trace<DFq>(Mat<DFq>(adjoint<DFq>(dw, Gi, Gp) * gw)), u);
  Mat<DFq> Mw = lift(P.M(w));
  Mat<DFq> c = cayley<DFq>(g);
  DFq rhs = half * dual_rtrace(trace<DFq>(Mat<DFq>(adjoint<DFq>(c, Gi, G) * Mw)), u);
  if (!(lhs == rhs)) return false;
  return lhs.a.is_zero() && lhs.b == P.B(P.M(w), X);
}

bool first_order_osc_holds_p(const FormedPair& P, const FMat& Xp, const FMat& w) {
  const EpsHermSpace &V = P.V(), &Vp = P.Vp();
  const FieldDesc& f = *V.field;
  const bool u = V.unitary();
  const DFq half(Fq::from_int(f, 2).inverse());
  Mat<DFq> Gi = lift(V.gram_inv), Gp = lift(Vp.gram), Gpi = lift(Vp.gram_inv);
  Mat<DFq> g = lift(fidentity(f, Vp.dim()));
  for (int i = 0; i < Xp.rows(); ++i)
    for (int j = 0; j < Xp.cols(); ++j) g(i, j) = g(i, j) + DFq(Fq(0), Xp(i, j));
  Mat<DFq> dw = lift(w);
  Mat<DFq> gw = g * dw - dw;
  DFq lhs = half * dual_rtrace(trace<DFq>(Mat<DFq>(adjoint<DFq>(dw, Gi, Gp) * gw)), u);
  Mat<DFq> Mw = lift(FMat(-P.Mp(w)));
  Mat<DFq> c = cayley<DFq>(g);
  DFq rhs = half * dual_rtrace(trace<DFq>(Mat<DFq>(adjoint<DFq>(c, Gpi, Gp) * Mw)), u);
  if (!(lhs == rhs)) return false;
  return lhs.a.is_zero() && lhs.b == P.Bp(FMat(-P.Mp(w)), Xp);
}

Checks first_order_osc_check(const FormedPair& P, const SuiteOptions& opt) {
  Checks out;
  const MatSpace& W = P.W();
  const MatSpace &g = P.lie_space(), &gp = P.lie_space_p();
  Sampler s{opt};
  const std::uint64_t nW = W.size();
  out.push_back(run_cases("first_order_oscillator", "1/2 <(g-1)w,w> = B(M(w),c(g)) in F[eps], g = 1 + eps X",
                          s.count(g.size() * nW), opt.exec, [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 41);
                            FMat X = opt.samples ? random_element(g, rng) : g.element(i / nW);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i % nW);
                            if (!first_order_osc_holds(P, X, w)) return show("X", X) + " " + show("w", w);
                            return std::nullopt;
                          }));
  out.push_back(run_cases("first_order_oscillator_prime", "1/2 <(g'-1)w,w> = B'(-M'(w),c(g')) in F[eps]",
                          s.count(gp.size() * nW), opt.exec, [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = s.rng(i, 42);
                            FMat X = opt.samples ? random_element(gp, rng) : gp.element(i / nW);
                            FMat w = opt.samples ? random_element(W, rng) : W.element(i % nW);
                            if (!first_order_osc_holds_p(P, X, w)) return show("X'", X) + " " + show("w", w);
                            return std::nullopt;
                          }));
  return out;
}

Checks rs_oracle_check(const LieAlgebra& g, const MatSpace& space, std::uint64_t samples, std::uint64_t seed) {
  Check c{"rs_P_vs_centralizer_" + g.type.str(), "P(X) != 0 <=> dim ker ad X = rank, ker ad X = ker (ad X)^2"};
  std::uint64_t rs = 0;
  for (std::uint64_t i = 0; i < samples && c.pass; ++i) {
    std::mt19937_64 rng(mix(seed * 7919 + static_cast<std::uint64_t>(g.type.kind) * 131 + g.type.n) ^ mix(i));
    FMat X = random_element(space, rng);
    if (i % 2) {
      // sparser elements hit the non-regular locus more often
      auto co = space.coords_unchecked(X);
      for (auto& x : co)
        if (rng() % 3) x = Fq(*g.field, 0);
      X = space.combine(co);
    }
    bool a = is_regular_semisimple(X, g), b = regular_semisimple_oracle(X, g);
    rs += a;
    ++c.cases;
    if (a != b) c.fail("X=" + format_matrix(X));
  }
  c.note = std::to_string(rs) + " regular semisimple of " + std::to_string(c.cases);
  return {c};
}

void assert_action_convention() {
  const auto& f = FieldDesc::make(3, 1);
  FormedPair P(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}));
  SuiteOptions opt;
  opt.samples = 200;
  opt.seed = 5;
  for (const auto& c : pairing_identities_check(P, opt))
    if (!c.pass)
      throw std::runtime_error("Lie action convention X.w = -wX fails " + c.name + " (" + c.anchor + "): " + c.witness);
}

}  // namespace epitheta
