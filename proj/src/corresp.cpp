#include "epitheta/corresp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "epitheta/runner.hpp"

namespace epitheta {

namespace {

using Key = std::vector<std::uint16_t>;

Key key(const FMat& A, const FieldDesc& f) { return matrix_key(A, f); }

bool same(const FMat& A, const FMat& B, const FieldDesc& f) { return key(A, f) == key(B, f); }

int fixed_field_size(const FieldDesc& f) { return f.involution() == InvolutionKind::frobenius ? f.p() : f.q(); }

GradedGroup grade(const EpsHermSpace& V, int m, const std::vector<int>& labels) {
  if ((fixed_field_size(*V.field) - 1) % m == 0) return build_grading(V, m, labels);
  return build_label_grading(V, m, labels);
}

GradedGroup grade_gl(const FieldDesc& f, int n, int m, const std::vector<int>& labels) {
  if ((fixed_field_size(f) - 1) % m == 0) return build_grading(f, n, m, labels);
  return build_label_grading(f, n, m, labels);
}

bool congruent(const Rational& x, const Rational& y) { return (x - y).den() == 1; }

std::string coords_str(const std::vector<Rational>& c) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

FMat zero_outside(const FMat& w, const std::vector<std::vector<char>>& mask) {
  FMat out = w;
  for (int j = 0; j < w.rows(); ++j)
    for (int i = 0; i < w.cols(); ++i)
      if (mask[j][i]) out(j, i) = Fq(0);
  return out;
}

}  // namespace

CorrespSetting direct_setting(const ApartmentPoint& V, const ApartmentPoint& Vp, int p, int m,
                              const std::vector<Fq>& units, const std::vector<Fq>& units_p) {
  V.validate();
  Vp.validate();
  if (V.d != Vp.d) throw std::invalid_argument("points over different D");
  if (V.d == DKind::ramified) throw std::invalid_argument("ramified points use the tilde picture");
  if (V.epsilon * Vp.epsilon != -1) throw std::invalid_argument("need eps eps' = -1");
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (epipelagic_dichotomy(jumps(V), jumps(Vp), m) == Dichotomy::violation)
    throw std::invalid_argument("jump sets violate the epipelagic dichotomy for m = " + std::to_string(m));
  const FieldDesc& fD = residue_field(V.d, p);
  EpsHermSpace Vb = space_from_gram(fD, V.epsilon, residual_gram(V, fD, units));
  EpsHermSpace Vpb = space_from_gram(fD, Vp.epsilon, residual_gram(Vp, fD, units_p));
  CorrespSetting s;
  s.kind = V.d == DKind::unramified ? "U-U unramified" : (V.epsilon == -1 ? "Sp-O" : "O-Sp");
  s.picture = Picture::direct;
  s.m = m;
  s.pair = std::make_shared<FormedPair>(Vb, Vpb);
  s.grading = grade(Vb, m, labels_from_coords(V.coords(), m));
  s.grading_p = grade(Vpb, m, labels_from_coords(Vp.coords(), m));
  auto a = V.coords(), ap = Vp.coords();
  const Rational target(-1, 2 * m);
  std::vector<std::vector<char>> off(ap.size(), std::vector<char>(a.size(), 1));
  for (size_t j = 0; j < ap.size(); ++j)
    for (size_t i = 0; i < a.size(); ++i) off[j][i] = !congruent(ap[j] - a[i], target);
  s.X = MatSpace::kernel_of(fD, Vp.dim(), V.dim(), [&](const FMat& w) { return zero_outside(w, off); });
  s.info = {{"V", V.str()}, {"V'", Vp.str()}, {"gram", format_matrix(Vb.gram)}, {"gram'", format_matrix(Vpb.gram)},
            {"grading", s.grading.describe()}, {"grading'", s.grading_p.describe()}};
  return s;
}

CorrespSetting gl_setting(const FieldDesc& f, const std::vector<Rational>& a, const std::vector<Rational>& ap, int m) {
  if (a.empty() || ap.empty()) throw std::invalid_argument("empty coordinates");
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  auto dual_jumps = [](const std::vector<Rational>& c) {
    JumpSet J;
    for (const auto& x : c) {
      J.entries[x.mod(Rational(1))] += 1;
      J.entries[(-x).mod(Rational(1))] += 1;
    }
    return J;
  };
  if (epipelagic_dichotomy(dual_jumps(a), dual_jumps(ap), m) == Dichotomy::violation)
    throw std::invalid_argument("jump sets violate the epipelagic dichotomy for m = " + std::to_string(m));
  const int n = static_cast<int>(a.size()), np = static_cast<int>(ap.size());
  CorrespSetting s;
  s.kind = "GL-GL";
  s.m = m;
  s.pair = std::make_shared<GlPair>(f, n, np);
  s.grading = grade_gl(f, n, m, labels_from_coords(a, m));
  s.grading_p = grade_gl(f, np, m, labels_from_coords(ap, m));
  const Rational target(-1, 2 * m);
  std::vector<std::vector<char>> off(2 * np, std::vector<char>(n, 1));
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < n; ++i) {
      off[j][i] = !congruent(ap[j] - a[i], target);
      off[np + j][i] = !congruent(a[i] - ap[j], target);
    }
  s.X = MatSpace::kernel_of(f, 2 * np, n, [&](const FMat& w) { return zero_outside(w, off); });
  s.info = {{"a", coords_str(a)}, {"a'", coords_str(ap)}, {"grading", s.grading.describe()},
            {"grading'", s.grading_p.describe()}};
  return s;
}

CorrespSetting tilde_setting(const FieldDesc& f, const FMat& J0, const FMat& Jp0) {
  FMat J = embed(J0, f), Jp = embed(Jp0, f);
  const int n = static_cast<int>(J.rows()), np = static_cast<int>(Jp.rows());
  if (J.cols() != n || Jp.cols() != np) throw std::invalid_argument("J and J' must be square");
  if (det<Fq>(J).is_zero() || det<Fq>(Jp).is_zero()) throw std::invalid_argument("J and J' must be invertible");
  auto symmetry = [&](const FMat& A) {
    if (A.transpose() == A) return 1;
    if (FMat(A.transpose()) == FMat(-A)) return -1;
    return 0;
  };
  int sJ = symmetry(J), sJp = symmetry(Jp);
  if (sJ == 0 || sJ != sJp) throw std::invalid_argument("J and J' must be both symmetric or both alternating");
  CorrespSetting s;
  s.kind = "U-U ramified";
  s.picture = Picture::tilde;
  s.m = 2;
  s.ramified_unitary = true;
  s.pair = std::make_shared<GlPair>(f, n, np);
  s.grading = build_grading(f, n, 2, {}, Twist{Twist::outer, J});
  s.grading_p = build_grading(f, np, 2, {}, Twist{Twist::outer, Jp});
  FMat JinvT = inverse(FMat(J.transpose()));
  FMat JpT = Jp.transpose();
  s.X = MatSpace::kernel_of(f, 2 * np, n, [&](const FMat& w) {
    return FMat(GlPair::y_of(w, np) - JpT * GlPair::x_of(w, np) * JinvT);
  });
  s.info = {{"J", format_matrix(J)}, {"J'", format_matrix(Jp)}, {"grading", s.grading.describe()},
            {"grading'", s.grading_p.describe()}};
  return s;
}

CorrespSetting ramified_setting(const ApartmentPoint& V, const ApartmentPoint& Vp, int p) {
  V.validate();
  Vp.validate();
  if (V.d != DKind::ramified || Vp.d != DKind::ramified) throw std::invalid_argument("ramified points required");
  if (V.epsilon * Vp.epsilon != -1) throw std::invalid_argument("need eps eps' = -1");
  const Rational nu = V.nu(), quarter = nu / Rational(2);
  for (const auto& a : V.coords())
    if (a.mod(nu) != Rational(0)) throw std::invalid_argument("V must be concentrated in class 0");
  for (const auto& a : Vp.coords())
    if (a.mod(nu) != quarter) throw std::invalid_argument("V' must be concentrated in class nu/2");
  auto g = graded_piece(V, 0, p), gp = graded_piece(Vp, quarter, p);
  CorrespSetting s = tilde_setting(*g.space->field, g.space->gram, gp.space->gram);
  s.info.insert(s.info.begin(), {{"V", V.str()}, {"V'", Vp.str()}});
  return s;
}

std::optional<std::string> dual_pair_type(const CorrespSetting& s) {
  const auto* formed = dynamic_cast<const FormedPair*>(s.pair.get());
  const int n = s.pair->w_cols();
  const int np = formed ? s.pair->w_rows() : s.pair->w_rows() / 2;
  auto name = [](char a, int r, char b, int rp) {
    return std::string("(") + a + "_" + std::to_string(r) + ", " + b + "_" + std::to_string(rp) + ")";
  };
  if (s.kind == "Sp-O") {
    if (np == n + 1) return name('C', n / 2, 'B', n / 2);
    if (np == n + 2) return name('C', n / 2, 'D', n / 2 + 1);
    return std::nullopt;
  }
  if (s.kind == "O-Sp") {
    if (n % 2 == 0 && np == n) return name('D', n / 2, 'C', n / 2);
    return std::nullopt;
  }
  if (np == n || np == n + 1) return name('A', n - 1, 'A', np - 1);
  return std::nullopt;
}

std::pair<FMat, FMat> lambda_from_w(const CorrespSetting& s, const FMat& w) {
  return {s.pair->M(w), FMat(-s.pair->Mp(w))};
}

CorrespInstance make_instance(const CorrespSetting& s, const FMat& w) {
  CorrespInstance inst;
  inst.setting = s;
  inst.w_bar = embed(w, s.field());
  auto [l, lp] = lambda_from_w(s, inst.w_bar);
  inst.lam = l;
  inst.lam_p = lp;
  return inst;
}

bool is_stable_instance(const CorrespInstance& inst) {
  const auto& s = inst.setting;
  if (!s.X.contains(inst.w_bar)) return false;
  const int top = s.m - 1;
  if (!s.grading.pieces[top].contains(inst.lam) || !s.grading_p.pieces[top].contains(inst.lam_p)) return false;
  return stable_candidate(s.grading, inst.lam) && stable_candidate(s.grading_p, inst.lam_p);
}

std::vector<FMat> find_stable_w(const CorrespSetting& s, int count, std::uint64_t seed, std::uint64_t budget,
                                const std::function<bool(const CorrespInstance&)>& filter) {
  std::mt19937_64 rng(mix(seed));
  std::vector<FMat> out;
  std::set<std::pair<Key, Key>> seen;
  const std::uint64_t N = s.X.size();
  std::vector<std::uint64_t> order;
  const bool exhaustive = N <= std::min<std::uint64_t>(budget, 1'000'000);
  if (exhaustive) {
    order.resize(N);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
  }
  const std::uint64_t tries = exhaustive ? N : budget;
  for (std::uint64_t t = 0; t < tries && static_cast<int>(out.size()) < count; ++t) {
    FMat w = exhaustive ? s.X.element(order[t]) : random_element(s.X, rng);
    auto inst = make_instance(s, w);
    if (!is_stable_instance(inst)) continue;
    if (filter && !filter(inst)) continue;
    auto k = std::make_pair(key(inst.lam, s.field()), key(inst.lam_p, s.field()));
    if (!seen.insert(k).second) continue;
    out.push_back(inst.w_bar);
  }
  return out;
}

AbelianGroup stabilizer(const GradedGroup& G, const FMat& lam, std::uint64_t budget) {
  const int n = G.n();
  MatSpace C = MatSpace::kernel_of(G.field(), n, n, [&](const FMat& Y) { return FMat(Y * lam - lam * Y); });
  if (C.size() > budget)
    throw std::runtime_error("commutant has " + std::to_string(C.size()) + " elements, over the budget " +
                             std::to_string(budget));
  std::vector<FMat> elems;
  for (std::uint64_t i = 0; i < C.size(); ++i) {
    FMat h = C.element(i);
    if (G.in_degree0_group(h)) elems.push_back(h);
  }
  return AbelianGroup(G.field(), elems);
}

std::vector<FMat> fiber_oracle(const CorrespInstance& inst, const Executor* exec) {
  const auto& s = inst.setting;
  Executor serial(1);
  const Executor& ex = exec ? *exec : serial;
  const FieldDesc& f = s.field();
  const Key kl = key(inst.lam, f), klp = key(inst.lam_p, f);
  auto parts = ex.map_blocks<std::vector<FMat>>(s.X.size(), [&](std::uint64_t b, std::uint64_t e) {
    std::vector<FMat> found;
    for (std::uint64_t i = b; i < e; ++i) {
      FMat w = s.X.element(i);
      auto [l, lp] = lambda_from_w(s, w);
      if (key(l, f) == kl && key(lp, f) == klp) found.push_back(embed(w, f));
    }
    return found;
  });
  std::vector<FMat> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end(), [&](const FMat& x, const FMat& y) { return key(x, f) < key(y, f); });
  return out;
}

namespace {

FMat identity_p(const CorrespInstance& inst) { return fidentity(inst.setting.field(), static_cast<int>(inst.lam_p.rows())); }

}  // namespace

std::vector<FMat> fiber_orbit(const CorrespInstance& inst, const AbelianGroup& S) {
  const FieldDesc& f = inst.setting.field();
  std::map<Key, FMat> orbit;
  FMat Ip = identity_p(inst);
  for (const FMat& g : S.elements()) {
    FMat w = embed(inst.setting.pair->act(g, Ip, inst.w_bar), f);
    orbit.emplace(key(w, f), w);
  }
  std::vector<FMat> out;
  for (auto& [k, w] : orbit) out.push_back(w);
  return out;
}

Alpha alpha(const CorrespInstance& inst, const AbelianGroup& S, const AbelianGroup& Sp) {
  const FieldDesc& f = inst.setting.field();
  Alpha a;
  a.solutions.resize(Sp.order());
  for (int b = 0; b < Sp.order(); ++b) {
    for (int g = 0; g < S.order(); ++g)
      if (same(inst.setting.pair->act(S.element(g), Sp.element(b), inst.w_bar), inst.w_bar, f)) a.solutions[b].push_back(g);
    if (a.solutions[b].empty()) a.exists = false;
    if (a.solutions[b].size() != 1) a.unique = false;
  }
  a.image.assign(Sp.order(), -1);
  if (!a.exists) {
    a.homomorphism = false;
    return a;
  }
  if (a.unique) {
    for (int b = 0; b < Sp.order(); ++b) a.image[b] = a.solutions[b][0];
  } else {
    // homomorphic section: generator images of order dividing the generator order
    std::vector<int> gen_img;
    for (size_t k = 0; k < Sp.generators().size(); ++k) {
      int chosen = -1;
      for (int g : a.solutions[Sp.generators()[k]])
        if (S.pow(g, Sp.divisors()[k]) == S.identity()) {
          chosen = g;
          break;
        }
      if (chosen < 0) {
        a.exists = false;
        a.homomorphism = false;
        return a;
      }
      gen_img.push_back(chosen);
    }
    for (int b = 0; b < Sp.order(); ++b) {
      int x = S.identity();
      for (size_t k = 0; k < gen_img.size(); ++k) x = S.mul(x, S.pow(gen_img[k], Sp.exps(b)[k]));
      a.image[b] = x;
      const auto& sol = a.solutions[b];
      if (std::find(sol.begin(), sol.end(), x) == sol.end()) a.exists = false;
    }
  }
  for (int b1 = 0; b1 < Sp.order() && a.homomorphism; ++b1)
    for (int b2 = 0; b2 < Sp.order(); ++b2)
      if (a.image[Sp.mul(b1, b2)] != S.mul(a.image[b1], a.image[b2])) {
        a.homomorphism = false;
        break;
      }
  return a;
}

bool detect_case_E(const CorrespInstance& inst) {
  const int n = static_cast<int>(inst.lam.rows()), np = static_cast<int>(inst.lam_p.rows());
  return inst.setting.ramified_unitary && n == np && rank<Fq>(inst.lam) == n - 1;
}

std::vector<int> sbar_lambda(const CorrespInstance& inst, const AbelianGroup& S) {
  std::vector<int> out;
  for (int g = 0; g < S.order(); ++g)
    if (same(S.element(g) * inst.lam, inst.lam, inst.setting.field())) out.push_back(g);
  return out;
}

std::vector<int> stab_w(const CorrespInstance& inst, const AbelianGroup& S) {
  std::vector<int> out;
  FMat Ip = identity_p(inst);
  for (int g = 0; g < S.order(); ++g)
    if (same(inst.setting.pair->act(S.element(g), Ip, inst.w_bar), inst.w_bar, inst.setting.field())) out.push_back(g);
  return out;
}

PermDecomposition perm_character_multiplicities(const CorrespInstance& inst, const std::vector<FMat>& fiber,
                                                const AbelianGroup& S, const AbelianGroup& Sp) {
  const FieldDesc& f = inst.setting.field();
  PermDecomposition out;
  std::map<Key, int> index;
  for (size_t i = 0; i < fiber.size(); ++i) index[key(fiber[i], f)] = static_cast<int>(i);
  std::vector<char> seen(fiber.size(), 0);
  auto chars = all_characters(S), chars_p = all_characters(Sp);
  for (size_t i = 0; i < fiber.size(); ++i) {
    if (seen[i]) continue;
    ++out.orbits;
    std::vector<std::pair<int, int>> H;
    for (int g = 0; g < S.order(); ++g)
      for (int gp = 0; gp < Sp.order(); ++gp) {
        FMat w = inst.setting.pair->act(S.element(g), Sp.element(gp), fiber[i]);
        auto it = index.find(key(w, f));
        if (it == index.end()) throw std::logic_error("fiber is not stable under S x S'");
        seen[it->second] = 1;
        if (it->second == static_cast<int>(i)) H.emplace_back(g, gp);
      }
    for (const auto& chi : chars)
      for (const auto& chip : chars_p) {
        bool trivial = true;
        for (auto [h, hp] : H)
          if ((char_value(S, chi, h) + char_value(Sp, chip, hp)).mod(Rational(1)) != Rational(0)) {
            trivial = false;
            break;
          }
        if (trivial) out.mult[{chi, chip}] += 1;
      }
  }
  for (const auto& [k, v] : out.mult) out.total += v;
  auto triv = std::make_pair(Character{std::vector<int>(S.divisors().size(), 0)},
                             Character{std::vector<int>(Sp.divisors().size(), 0)});
  auto it = out.mult.find(triv);
  out.trivial = it == out.mult.end() ? 0 : it->second;
  return out;
}

std::optional<Character> predicted_lift(const Character& chi, const AbelianGroup& S, const AbelianGroup& Sp,
                                        const Alpha& a, const std::vector<int>& sbar, bool case_E) {
  if (case_E && !is_trivial_on(S, chi, sbar)) return std::nullopt;
  return character_from_values(Sp, [&](int gp) { return -char_value(S, chi, a.image[gp]); });
}

namespace {

std::string members(const AbelianGroup& G, const std::vector<int>& idx) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < idx.size(); ++i) os << (i ? ", " : "") << format_matrix(G.element(idx[i]));
  os << "}";
  return os.str();
}

Check make(const std::string& name, const std::string& anchor) {
  Check c;
  c.name = name;
  c.anchor = anchor;
  c.cases = 1;
  return c;
}

}  // namespace

VerifyResult verify_theorem(const CorrespInstance& inst, const VerifyOptions& opt) {
  VerifyResult r;
  const auto& s = inst.setting;
  const FieldDesc& f = s.field();
  auto& out = r.checks;

  Check pre = make("precondition_stable", "lam = M(w), lam' = -M'(w) stable of degree -1");
  auto type = dual_pair_type(s);
  auto [l, lp] = lambda_from_w(s, inst.w_bar);
  if (!type) pre.fail(s.kind + " pair of dimensions " + std::to_string(s.pair->w_cols()) + " and " +
                      std::to_string(s.pair->w_rows()) + " is not a supported type");
  else if (!same(l, inst.lam, f) || !same(lp, inst.lam_p, f)) pre.fail("lam does not match M(w)");
  else if (!is_stable_instance(inst)) pre.fail("w=" + format_matrix(inst.w_bar) + " lam=" + format_matrix(inst.lam) +
                                               " lam'=" + format_matrix(inst.lam_p) + " not stable");
  if (pre.pass) pre.witness = *type;
  out.push_back(pre);
  r.stable = pre.pass;
  if (!pre.pass) return r;

  AbelianGroup S, Sp;
  Check grp = make("stabilizer_abelian_prime_to_p", "S_lam, S'_lam' finite abelian of order prime to p");
  try {
    S = stabilizer(s.grading, inst.lam, opt.budget);
    Sp = stabilizer(s.grading_p, inst.lam_p, opt.budget);
    if (S.order() % f.p() == 0 || Sp.order() % f.p() == 0)
      grp.fail("orders " + std::to_string(S.order()) + ", " + std::to_string(Sp.order()));
  } catch (const std::exception& e) {
    grp.fail(e.what());
    out.push_back(grp);
    return r;
  }
  grp.witness = "S = " + S.structure() + ", S' = " + Sp.structure();
  out.push_back(grp);
  r.order_S = S.order();
  r.order_Sp = Sp.order();
  r.structure_S = S.structure();
  r.structure_Sp = Sp.structure();

  auto oracle = fiber_oracle(inst, opt.exec);
  auto orbit = fiber_orbit(inst, S);
  r.fiber_size = static_cast<int>(oracle.size());
  Check fib = make("fiber_equals_orbit", "M^-1(lam) meet M'^-1(-lam') = S_lam . w");
  fib.cases = s.X.size();
  if (oracle.size() != orbit.size()) {
    fib.fail("|fiber| = " + std::to_string(oracle.size()) + ", |orbit| = " + std::to_string(orbit.size()));
  } else {
    for (size_t i = 0; i < oracle.size(); ++i)
      if (!same(oracle[i], orbit[i], f)) {
        fib.fail("fiber element " + format_matrix(oracle[i]) + " vs orbit element " + format_matrix(orbit[i]));
        break;
      }
  }
  fib.witness = fib.pass ? "|fiber| = " + std::to_string(oracle.size()) : fib.witness;
  out.push_back(fib);

  r.case_E = detect_case_E(inst);
  auto sw = stab_w(inst, S);
  auto sl = sbar_lambda(inst, S);
  r.index_sbar = S.order() / static_cast<int>(sl.size());
  if (!r.case_E) {
    Check fr = make("free_action", "Stab_{S_lam}(w) = 1");
    if (sw.size() != 1) fr.fail("stabilizer " + members(S, sw));
    out.push_back(fr);
  } else {
    Check eq = make("sbar_w_equals_sbar_lambda", "Sbar_w = Sbar_lam = {g : g lam = lam}");
    if (sw != sl) eq.fail("Sbar_w = " + members(S, sw) + ", Sbar_lam = " + members(S, sl));
    eq.witness = eq.pass ? "|Sbar| = " + std::to_string(sl.size()) : eq.witness;
    out.push_back(eq);
    Check os = make("orbit_stabilizer_count", "|fiber| |Sbar_lam| = |S_lam|");
    if (oracle.size() * sl.size() != static_cast<size_t>(S.order()))
      os.fail(std::to_string(oracle.size()) + " * " + std::to_string(sl.size()) + " != " + std::to_string(S.order()));
    out.push_back(os);
  }

  Alpha a = alpha(inst, S, Sp);
  Check aw = make("alpha_well_defined", "g' w = w alpha(g')");
  aw.cases = Sp.order();
  if (!a.exists) aw.fail("no solution g for some g' in S'");
  else if (!a.unique && !r.case_E) aw.fail("alpha not unique outside case (E)");
  out.push_back(aw);
  Check ah = make("alpha_homomorphism", "alpha(g1' g2') = alpha(g1') alpha(g2')");
  ah.cases = static_cast<std::uint64_t>(Sp.order()) * Sp.order();
  if (!a.homomorphism) ah.fail("alpha is not multiplicative");
  if (a.image.empty() || a.image[Sp.identity()] != S.identity()) ah.fail("alpha(1) != 1");
  out.push_back(ah);
  Check ag = make("alpha_graph_is_stabilizer", "Stab_{S x S'}(w) = {(alpha(g') s, g') : s in Sbar_w}");
  {
    int stab = 0;
    for (int g = 0; g < S.order(); ++g)
      for (int gp = 0; gp < Sp.order(); ++gp)
        if (same(s.pair->act(S.element(g), Sp.element(gp), inst.w_bar), inst.w_bar, f)) ++stab;
    int expect = Sp.order() * static_cast<int>(sw.size());
    ag.cases = static_cast<std::uint64_t>(S.order()) * Sp.order();
    if (stab != expect) ag.fail("|Stab| = " + std::to_string(stab) + ", expected " + std::to_string(expect));
    if (a.exists)
      for (int gp = 0; gp < Sp.order(); ++gp)
        if (!same(s.pair->act(S.element(a.image[gp]), Sp.element(gp), inst.w_bar), inst.w_bar, f)) {
          ag.fail("graph element does not fix w");
          break;
        }
  }
  out.push_back(ag);

  auto dec = perm_character_multiplicities(inst, oracle, S, Sp);
  Check z1 = make("multiplicities_zero_one", "m(chi, chi') in {0, 1}");
  for (const auto& [k, v] : dec.mult)
    if (v > 1) z1.fail(to_string(k.first) + "," + to_string(k.second) + " -> " + std::to_string(v));
  out.push_back(z1);

  Check sup = make("multiplicity_support", r.case_E ? "m(chi, chi') = 1 iff chi|Sbar = 1 and chi' = chi* o alpha"
                                                    : "m(chi, chi') = 1 iff chi' = chi* o alpha");
  Check pl = make("predicted_lift_agrees", "predicted_lift(chi) = unique chi' with m(chi, chi') = 1");
  int lifted = 0;
  if (a.exists && a.homomorphism) {
    std::set<std::pair<Character, Character>> expected;
    for (const auto& chi : all_characters(S)) {
      auto lift = predicted_lift(chi, S, Sp, a, sl, r.case_E);
      if (lift) {
        expected.insert({chi, *lift});
        ++lifted;
      } else if (!r.case_E || is_trivial_on(S, chi, sl)) {
        pl.fail("chi* o alpha is not a character for chi = " + to_string(chi));
      }
      std::vector<Character> partners;
      for (const auto& [k, v] : dec.mult)
        if (k.first == chi && v > 0) partners.push_back(k.second);
      bool ok = lift ? (partners.size() == 1 && partners[0] == *lift) : partners.empty();
      if (!ok) pl.fail("chi = " + to_string(chi));
    }
    pl.cases = S.order();
    std::set<std::pair<Character, Character>> actual;
    for (const auto& [k, v] : dec.mult)
      if (v > 0) actual.insert(k);
    sup.cases = static_cast<std::uint64_t>(S.order()) * Sp.order();
    if (actual != expected)
      sup.fail("support has " + std::to_string(actual.size()) + " pairs, prediction " + std::to_string(expected.size()));
    sup.witness = sup.pass ? std::to_string(actual.size()) + " pairs" : sup.witness;
  } else {
    sup.fail("alpha unavailable");
    pl.fail("alpha unavailable");
  }
  out.push_back(sup);
  out.push_back(pl);
  if (r.case_E) {
    Check cnt = make("lifted_character_count", "#{chi occurring} = [S_lam : Sbar_lam]");
    std::set<Character> occurring;
    for (const auto& [k, v] : dec.mult) occurring.insert(k.first);
    if (static_cast<int>(occurring.size()) != r.index_sbar || lifted != r.index_sbar)
      cnt.fail(std::to_string(occurring.size()) + " occurring, index " + std::to_string(r.index_sbar));
    cnt.witness = cnt.pass ? std::to_string(occurring.size()) : cnt.witness;
    out.push_back(cnt);
  }
  Check bt = make("burnside_totals", "sum m = |fiber|, m(1, 1) = #orbits");
  if (dec.total != static_cast<int>(oracle.size()) || dec.trivial != dec.orbits)
    bt.fail("sum " + std::to_string(dec.total) + " vs " + std::to_string(oracle.size()) + ", trivial " +
            std::to_string(dec.trivial) + " vs orbits " + std::to_string(dec.orbits));
  out.push_back(bt);
  return r;
}

namespace {

ApartmentPoint point(DKind d, int eps, std::vector<Rational> witt, std::vector<Rational> aniso = {}) {
  ApartmentPoint pt;
  pt.d = d;
  pt.epsilon = eps;
  pt.witt = std::move(witt);
  pt.aniso = std::move(aniso);
  pt.validate();
  return pt;
}

}  // namespace

std::vector<NamedSetting> standard_settings(int p) {
  const Rational z(0), q1(1, 4), q3(3, 4), h(1, 2);
  const auto& f = FieldDesc::make(p, 1);
  std::vector<NamedSetting> out;
  out.push_back({"Sp2 x O3", direct_setting(point(DKind::split, -1, {q1}), point(DKind::split, 1, {h}, {z}), p, 2)});
  out.push_back({"Sp2 x O4", direct_setting(point(DKind::split, -1, {q1}), point(DKind::split, 1, {h, z}), p, 2)});
  out.push_back({"O4 x Sp4", direct_setting(point(DKind::split, 1, {h, z}), point(DKind::split, -1, {q1, q1}), p, 2)});
  out.push_back({"GL2 x GL2", gl_setting(f, {z, h}, {q1, q3}, 2)});
  out.push_back({"U2 x U2 unramified",
                 direct_setting(point(DKind::unramified, 1, {q1}), point(DKind::unramified, -1, {}, {z, h}), p, 2)});
  out.push_back({"U2 x U2 ramified",
                 ramified_setting(point(DKind::ramified, 1, {z}), point(DKind::ramified, -1, {q1}), p)});
  out.push_back({"U2 x U3 ramified",
                 ramified_setting(point(DKind::ramified, 1, {z}), point(DKind::ramified, -1, {q1}, {q1}), p)});
  return out;
}

std::vector<NamedInstance> case_E_instances(int p) {
  const auto& f = FieldDesc::make(p, 1);
  std::vector<NamedInstance> out;
  auto s1 = tilde_setting(f, fidentity(f, 1), fidentity(f, 1));
  out.push_back({"U1 x U1 ramified, w = 0", make_instance(s1, fzeros(f, 2, 1))});
  auto s2 = tilde_setting(f, fidentity(f, 2), fidentity(f, 2));
  FMat x = fmat(f, 2, 2, {1, 0, 0, 0});
  out.push_back({"U2 x U2 ramified, x = diag(1,0)", make_instance(s2, GlPair::stack(x, x))});
  return out;
}

}  // namespace epitheta
