#include "epitheta/suites.hpp"

#include <atomic>
#include <map>
#include <optional>
#include <random>

#include "epitheta/corresp.hpp"
#include "epitheta/dual.hpp"
#include "epitheta/grading.hpp"
#include "epitheta/lattice.hpp"
#include "epitheta/moment.hpp"
#include "epitheta/runner.hpp"

namespace epitheta {

Checks tagged(Checks cs, const std::string& label) {
  for (auto& c : cs) c.name += " [" + label + "]";
  return cs;
}

namespace {

void append(Checks& out, Checks more) {
  for (auto& c : more) out.push_back(std::move(c));
}

const FieldDesc& F(int p, int k = 1) {
  return FieldDesc::make(p, k, k == 2 ? InvolutionKind::frobenius : InvolutionKind::identity);
}

Fq skew_unit(const FieldDesc& f) {
  Fq s(f, f.generator());
  return s - involute(s);
}

SuiteOptions options(const SuiteContext& ctx, std::uint64_t samples) { return {samples, ctx.seed, ctx.exec}; }

// Formed pairs of the desk-scale moment runs over F_5.
std::vector<FormedPair> sampled_pairs(int sign) {
  const auto &f = F(5), &f25 = F(5, 2);
  return {FormedPair(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}), sign),
          FormedPair(witt_basis(f, 4, -1, 2, {}), witt_basis(f, 5, 1, 2, {Fq(f, 1)}), sign),
          FormedPair(witt_basis(f, 4, 1, 1, {Fq(f, 1), Fq(f, 2)}), witt_basis(f, 2, -1, 1, {}), sign),
          FormedPair(witt_basis(f, 4, 1, 2, {}), witt_basis(f, 4, -1, 2, {}), sign),
          FormedPair(witt_basis(f25, 2, 1, 1, {}), witt_basis(f25, 3, -1, 1, {skew_unit(f25)}), sign)};
}

std::vector<FormedPair> exhaustive_pairs(int sign) {
  const auto& f = F(3);
  return {FormedPair(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 1)}), sign),
          FormedPair(witt_basis(f, 2, -1, 1, {}), witt_basis(f, 3, 1, 1, {Fq(f, 2)}), sign)};
}

}  // namespace

Checks numeric_suite(const SuiteContext& ctx) {
  Checks out;
  const std::uint64_t n = std::min<std::uint64_t>(ctx.samples, 2000);
  for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {3, 2}, {5, 2}}) {
    const auto& f = F(p, k);
    out.push_back(run_cases("field_axioms [" + f.name() + "]", "ring axioms, a a^-1 = 1, (ab)^tau = a^tau b^tau, tau^2 = 1", n,
                            ctx.exec, [&](std::uint64_t i) -> std::optional<std::string> {
                              auto rng = case_rng(ctx.seed, 101, i);
                              Fq a(f, rng() % f.q()), b(f, rng() % f.q()), c(f, rng() % f.q());
                              std::string w = "a=" + a.str() + " b=" + b.str() + " c=" + c.str();
                              if ((a + b) + c != a + (b + c) || (a * b) * c != a * (b * c)) return w;
                              if (a * (b + c) != a * b + a * c || a * b != b * a) return w;
                              if (!a.is_zero() && !(a * a.inverse()).is_one()) return w;
                              if (involute(a * b) != involute(a) * involute(b) || involute(a + b) != involute(a) + involute(b))
                                return w;
                              if (involute(involute(a)) != a) return w;
                              return std::nullopt;
                            }));
    for (int m : {2, 3, 4}) {
      if ((f.q() - 1) % m) continue;
      Check c{"root_of_unity_order [" + f.name() + ", m=" + std::to_string(m) + "]", "zeta^m = 1, zeta^j != 1 for 0 < j < m"};
      Fq z(f, root_of_unity(f, m));
      c.cases = 1;
      c.witness = "zeta=" + z.str();
      if (!z.pow(m).is_one()) c.fail(c.witness);
      for (int j = 1; j < m; ++j)
        if (z.pow(j).is_one()) c.fail(c.witness);
      out.push_back(c);
    }
  }
  out.push_back(run_cases("rational_arithmetic", "(a+b)-b = a, (ab)/b = a, parse(str(a)) = a, floor a <= a < floor a + 1",
                          n, ctx.exec, [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = case_rng(ctx.seed, 102, i);
                            std::uniform_int_distribution<int> num(-50, 50), den(1, 24);
                            Rational a(num(rng), den(rng)), b(num(rng), den(rng));
                            std::string w = "a=" + a.str() + " b=" + b.str();
                            if ((a + b) - b != a || Rational::parse(a.str()) != a) return w;
                            if (b != Rational(0) && (a * b) / b != a) return w;
                            if (!(Rational(a.floor()) <= a && a < Rational(a.floor() + 1))) return w;
                            return std::nullopt;
                          }));
  const auto& f = F(5);
  out.push_back(run_cases("dual_number_ring", "eps^2 = 0, (y + eps x)^3 = y^3 + 3 y^2 x eps, d d^-1 = 1", n, ctx.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = case_rng(ctx.seed, 103, i);
                            using D = Dual<Fq>;
                            Fq x(f, rng() % 5), y(f, rng() % 5);
                            D c(y, x), e(Fq(f, 0), Fq(f, 1));
                            if (!is_zero(e * e)) return "eps^2";
                            if (c * c * c != D(y * y * y, Fq(3) * y * y * x)) return "x=" + x.str() + " y=" + y.str();
                            if (!y.is_zero() && c * c.inverse() != D(Fq(f, 1))) return "x=" + x.str() + " y=" + y.str();
                            return std::nullopt;
                          }));
  return out;
}

Checks moment_suite(const SuiteContext& ctx) {
  Checks out;
  for (const auto& P : exhaustive_pairs(ctx.moment_sign)) {
    auto opt = options(ctx, 0);
    append(out, tagged(star_identity_check(P, opt), P.describe() + ", exhaustive"));
    append(out, tagged(pairing_identities_check(P, opt), P.describe() + ", exhaustive"));
    append(out, tagged(equivariance_check(P, opt), P.describe() + ", exhaustive"));
  }
  for (const auto& P : sampled_pairs(ctx.moment_sign)) {
    auto opt = options(ctx, ctx.samples);
    append(out, tagged(star_identity_check(P, opt), P.describe()));
    append(out, tagged(pairing_identities_check(P, opt), P.describe()));
    append(out, tagged(equivariance_check(P, opt), P.describe()));
  }
  for (auto [n, np] : {std::pair{2, 3}, {2, 2}}) {
    GlPair P(F(5), n, np);
    auto opt = options(ctx, ctx.samples);
    append(out, tagged(pairing_identities_check(P, opt), P.describe()));
    append(out, tagged(equivariance_check(P, opt), P.describe()));
  }
  return out;
}

Checks oscillator_suite(const SuiteContext& ctx) {
  Checks out;
  for (const auto& P : exhaustive_pairs(ctx.moment_sign))
    append(out, tagged(first_order_osc_check(P, options(ctx, 0)), P.describe() + ", exhaustive"));
  for (const auto& P : sampled_pairs(ctx.moment_sign))
    append(out, tagged(first_order_osc_check(P, options(ctx, ctx.samples)), P.describe()));
  return out;
}

Checks rs_oracle_suite(const SuiteContext& ctx) {
  Checks out;
  const auto &f = F(5), &f25 = F(5, 2);
  for (int n : {2, 3})
    append(out, rs_oracle_check(LieAlgebra::general_linear(f, n), MatSpace::full(f, n, n), ctx.samples, ctx.seed));
  std::vector<std::pair<std::string, EpsHermSpace>> spaces = {
      {"split", witt_basis(f, 2, -1, 1, {})},
      {"split", witt_basis(f, 4, -1, 2, {})},
      {"split", witt_basis(f, 3, 1, 1, {Fq(f, 1)})},
      {"split", witt_basis(f, 4, 1, 2, {})},
      {"quasi-split", witt_basis(f, 4, 1, 1, {Fq(f, 1), Fq(f, 2)})},
      {"split", witt_basis(f, 5, 1, 2, {Fq(f, 1)})},
      {"split", witt_basis(f25, 2, 1, 1, {})},
      {"split", witt_basis(f25, 3, 1, 1, {Fq(f25, 1)})}};
  for (const auto& [label, V] : spaces)
    append(out, tagged(rs_oracle_check(LieAlgebra::of(V), lie_algebra(V), ctx.samples, ctx.seed), label));
  return out;
}

namespace {

ApartmentPoint random_point(std::mt19937_64& rng, int max_den) {
  DKind d = static_cast<DKind>(rng() % 3);
  int eps = rng() % 2 ? 1 : -1;
  int h = 1 + static_cast<int>(rng() % 3);
  int a = (d == DKind::split && eps == -1) ? 0 : static_cast<int>(rng() % 3);
  return random_apartment_point(rng, d, eps, h, a, max_den);
}

// Witt coordinates in (1/m)Z or in 1/(2m) + (1/m)Z.
void snap(ApartmentPoint& pt, std::mt19937_64& rng, int m, bool shifted) {
  for (auto& a : pt.witt) {
    int k = static_cast<int>(rng() % (2 * m)) - m;
    a = shifted ? Rational(2 * k + 1, 2 * m) : Rational(k, m);
  }
}

bool in_shifted_coset(const JumpSet& T, int m) {
  for (const auto& [r, k] : T.entries)
    if ((r * Rational(m) - Rational(1, 2)).den() != 1) return false;
  return true;
}

}  // namespace

Checks jump_suite(const SuiteContext& ctx) {
  Checks out;
  const std::uint64_t n = ctx.points;
  out.push_back(run_cases("lattice_selfdual", "L = L#, (L#)_s = (L_{(-s)+})#", n, ctx.exec, [&](std::uint64_t i) -> std::optional<std::string> {
    auto rng = case_rng(ctx.seed, 201, i);
    auto pt = random_point(rng, 12);
    if (!is_selfdual(pt)) return pt.str();
    return std::nullopt;
  }));
  out.push_back(run_cases("jump_symmetry", "Jump(L) = -Jump(L), sum of multiplicities = dim V", n, ctx.exec,
                          [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = case_rng(ctx.seed, 201, i);
                            auto pt = random_point(rng, 12);
                            auto J = jumps(pt);
                            if (!J.symmetric() || J.total() != pt.dim() || J.unfold().total() != pt.dim() * pt.degree())
                              return pt.str() + " -> " + J.str();
                            return std::nullopt;
                          }));
  out.push_back(run_cases("tensor_sum_law", "Jump(L (x) L') = Jump(L) + Jump(L'), commutative, associative, symmetric", n,
                          ctx.exec, [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = case_rng(ctx.seed, 202, i);
                            auto p1 = random_point(rng, 12), p2 = random_point(rng, 12), p3 = random_point(rng, 12);
                            auto J1 = jumps(p1), J2 = jumps(p2), J3 = jumps(p3);
                            auto T = tensor_jumps(J1, J2);
                            std::string w = p1.str() + " ; " + p2.str();
                            if (!T.symmetric() || T != tensor_jumps(J2, J1)) return w;
                            if (tensor_jumps(T, J3) != tensor_jumps(J1, tensor_jumps(J2, J3))) return w + " ; " + p3.str();
                            if (T.total() != J1.unfold().total() * J2.unfold().total()) return w;
                            return std::nullopt;
                          }));
  std::atomic<std::uint64_t> compatible{0};
  out.push_back(run_cases("jump_dichotomy",
                          "Jump(L)+Jump(L') in 1/(2m)+(1/m)Z <=> (Jump(L) in (1/m)Z, Jump(L') in 1/(2m)+(1/m)Z) or the reverse",
                          n, ctx.exec, [&](std::uint64_t i) -> std::optional<std::string> {
                            auto rng = case_rng(ctx.seed, 203, i);
                            int m = 2 + static_cast<int>(rng() % 5);
                            auto V = random_point(rng, 2 * m), Vp = random_point(rng, 2 * m);
                            if (rng() % 2) {
                              bool s = rng() % 2;
                              snap(V, rng, m, s);
                              snap(Vp, rng, m, !s);
                            }
                            auto J = jumps(V), Jp = jumps(Vp);
                            auto d = epipelagic_dichotomy(J, Jp, m), e = epipelagic_dichotomy(Jp, J, m);
                            bool coset = in_shifted_coset(tensor_jumps(J, Jp), m);
                            std::string w = V.str() + " ; " + Vp.str() + " m=" + std::to_string(m) + " -> " + to_string(d);
                            if ((d != Dichotomy::violation) != coset) return w;
                            if ((d == Dichotomy::case_i) != (e == Dichotomy::case_ii)) return w + ", swapped " + to_string(e);
                            if ((d == Dichotomy::case_ii) != (e == Dichotomy::case_i)) return w + ", swapped " + to_string(e);
                            if (coset) ++compatible;
                            return std::nullopt;
                          }));
  out.back().note = std::to_string(compatible.load()) + " pairs in case (i) or (ii)";
  return out;
}

Checks splitting_suite(const SuiteContext& ctx) {
  struct Sample {
    ApartmentPoint V, Vp;
    int m = 0;
    SplittingDims s;
  };
  const std::uint64_t n = ctx.points;
  std::vector<std::optional<Sample>> samples(n);
  run_cases("splitting_sampler", "", n, ctx.exec, [&](std::uint64_t i) -> std::optional<std::string> {
    auto rng = case_rng(ctx.seed, 301, i);
    int m = 2 + static_cast<int>(rng() % 5);
    DKind d = static_cast<DKind>(rng() % 3);
    int eps = rng() % 2 ? 1 : -1;
    auto aniso = [&](int e) { return (d == DKind::split && e == -1) ? 0 : static_cast<int>(rng() % 2); };
    auto V = random_apartment_point(rng, d, eps, 1 + rng() % 2, aniso(eps), 2 * m);
    auto Vp = random_apartment_point(rng, d, -eps, 1 + rng() % 2, aniso(-eps), 2 * m);
    if (rng() % 2) {
      bool s = rng() % 2;
      snap(V, rng, m, s);
      snap(Vp, rng, m, !s);
    }
    if (epipelagic_dichotomy(jumps(V), jumps(Vp), m) == Dichotomy::violation) return std::nullopt;
    samples[i] = Sample{V, Vp, m, splitting_dims(V, Vp, m)};
    return std::nullopt;
  });
  Check sum{"splitting_sum", "dim sfW = dim sfX + dim sfY"}, half{"splitting_lagrangian", "2 dim sfY = dim sfW"},
      tensor{"splitting_tensor_count", "dim sfX = mult of -1/(2m) in Jump(L)+Jump(L') / [D:k]"},
      cls{"splitting_classes", "sum_mu dim X^[mu] = dim W, dim X^[-1/(2m)] = dim sfX"};
  for (const auto& smp : samples) {
    if (!smp) continue;
    const auto& s = smp->s;
    std::string w = smp->V.str() + " ; " + smp->Vp.str() + " m=" + std::to_string(smp->m) + " W=" + std::to_string(s.dim_sfW) +
                    " X=" + std::to_string(s.dim_sfX) + " Y=" + std::to_string(s.dim_sfY);
    for (Check* c : {&sum, &half, &tensor, &cls}) ++c->cases;
    if (s.dim_sfW != s.dim_sfX + s.dim_sfY) sum.fail(w);
    if (2 * s.dim_sfY != s.dim_sfW) half.fail(w);
    if (s.sfX_from_tensor != s.dim_sfX) tensor.fail(w);
    int total = 0;
    for (const auto& [mu, x] : s.per_class) total += x;
    auto it = s.per_class.find(Rational(-1, 2 * smp->m).mod(1));
    if (total != s.dim_W || (it == s.per_class.end() ? 0 : it->second) != s.dim_sfX) cls.fail(w);
  }
  Checks out{sum, half, tensor, cls};
  for (auto& c : out) {
    c.note = std::to_string(c.cases) + " compatible configurations of " + std::to_string(n) + " drawn";
    if (c.cases == 0) c.fail("no compatible configuration drawn");
  }
  return out;
}

Checks grading_suite(const SuiteContext& ctx) {
  Checks out;
  const std::uint64_t n = std::min<std::uint64_t>(ctx.samples, 200);
  for (const auto& [name, s] : standard_settings(3)) {
    append(out, tagged(grading_checks(s.grading, n, ctx.seed), name + ", G"));
    append(out, tagged(grading_checks(s.grading_p, n, ctx.seed), name + ", G'"));
  }
  const auto& f = F(5);
  append(out, tagged(grading_checks(build_grading(witt_basis(f, 4, -1, 2, {}), 4, {3, 1, -3, -1}), n, ctx.seed), "Sp(4) m=4"));
  append(out, tagged(grading_checks(build_grading(f, 3, 4, {0, 1, 2}), n, ctx.seed), "GL(3) m=4"));
  return out;
}

namespace {

// Merges per-instance verification checks into one record per check name.
struct Merger {
  std::vector<std::string> order;
  std::map<std::string, Check> by_name;

  void add(const Check& c, const std::string& label) {
    auto [it, fresh] = by_name.try_emplace(c.name, Check{c.name, c.anchor});
    if (fresh) order.push_back(c.name);
    Check& m = it->second;
    m.cases += 1;
    if (!c.pass) m.fail(label + ": " + c.witness);
  }
  void flush(Checks& out, const std::string& label) {
    for (const auto& name : order) {
      Check c = by_name[name];
      c.name += " [" + label + "]";
      if (c.pass) c.witness = std::to_string(c.cases) + " instances";
      out.push_back(std::move(c));
    }
    order.clear();
    by_name.clear();
  }
};

}  // namespace

Checks corresp_suite(const SuiteContext& ctx, int per_setting) {
  Checks out;
  VerifyOptions vopt{ctx.budget, ctx.exec};
  auto generic = [](const CorrespInstance& i) { return !detect_case_E(i); };
  for (const auto& [name, s] : standard_settings(3)) {
    auto type = dual_pair_type(s);
    Check found{"stable_instances [" + name + "]", "#{w in sfX : (M(w), -M'(w)) stable, pairwise distinct} >= " +
                                                       std::to_string(per_setting)};
    auto ws = find_stable_w(s, per_setting, ctx.seed, ctx.budget, generic);
    found.cases = ws.size();
    found.witness = (type ? *type : std::string("unsupported")) + ", " + std::to_string(ws.size()) + " found";
    if (!type || static_cast<int>(ws.size()) < per_setting) found.fail(found.witness);
    out.push_back(found);
    Merger merged;
    std::vector<std::string> shapes;
    for (const auto& w : ws) {
      auto r = verify_theorem(make_instance(s, w), vopt);
      std::string label = "w=" + format_matrix(w);
      for (const auto& c : r.checks) merged.add(c, label);
      shapes.push_back("|S|=" + std::to_string(r.order_S) + " " + r.structure_S + ", fiber " + std::to_string(r.fiber_size));
    }
    std::size_t first = out.size();
    merged.flush(out, name);
    if (first < out.size()) {
      std::string joined;
      for (const auto& sh : shapes) joined += (joined.empty() ? "" : "; ") + sh;
      out[first].note = joined;
    }
  }
  for (const auto& [name, inst] : case_E_instances(3)) {
    Check det{"case_E_detected [" + name + "]", "ramified, equal rank, rank lam~ = n - 1"};
    det.cases = 1;
    if (!detect_case_E(inst)) det.fail("not recognized as case (E)");
    out.push_back(det);
    auto r = verify_theorem(inst, vopt);
    std::string info = "|S|=" + std::to_string(r.order_S) + " [S:Sbar]=" + std::to_string(r.index_sbar) + " fiber " +
                       std::to_string(r.fiber_size);
    auto cs = tagged(r.checks, name);
    if (!cs.empty()) cs.front().note = info;
    append(out, cs);
  }
  return out;
}

Check classification_row_check(const PairType& type, const RsResult& r, bool expected) {
  Check c{"rs_pair " + type.str(),
          "exists w with M(w), M'(w) regular semisimple <=> type in {(D_n,C_n), (C_n,D_n+1), (C_n,B_n), (A_n,A_n), (A_n,A_n+1)}"};
  c.cases = std::max<std::uint64_t>(1, r.enumerated + r.random_samples + r.extension_samples);
  std::string w = "expected " + std::string(expected ? "yes" : "no") + ", got " + to_string(r.verdict);
  if (r.witness)
    w += " via " + r.source + " over " + r.witness_field + ": w=" + format_matrix(*r.witness) + " P=" + r.P + " P'=" + r.Pp +
         (r.oracle_ok ? ", oracle agrees" : ", oracle disagrees");
  if (!r.certificate.empty()) w += "; " + r.certificate;
  if (r.exhaustive) w += "; exhaustive over " + std::to_string(r.enumerated) + " elements";
  c.witness = w;
  bool ok = expected ? (r.verdict == RsResult::yes && r.oracle_ok) : (r.verdict == RsResult::no && r.exhaustive);
  if (!ok) c.fail(w);
  return c;
}

Checks classification_checks(const ClassificationTable& t, const SuiteContext& ctx) {
  Checks out;
  for (const auto& row : t.rows) out.push_back(classification_row_check(row.type, row.result, row.expected));
  for (const auto& row : t.rows)
    if (row.expected) out.push_back(tagged({torus_stability(row.type, t.p, 50, ctx.seed)}, row.type.str()).front());
  return out;
}

}  // namespace epitheta
