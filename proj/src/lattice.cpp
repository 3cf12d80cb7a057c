#include "epitheta/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace epitheta {

std::string to_string(DKind d) {
  switch (d) {
    case DKind::split: return "split";
    case DKind::unramified: return "unramified";
    case DKind::ramified: return "ramified";
  }
  return "?";
}

std::vector<Rational> ApartmentPoint::coords() const {
  std::vector<Rational> c(witt);
  c.insert(c.end(), aniso.begin(), aniso.end());
  for (const auto& a : witt) c.push_back(-a);
  return c;
}

void ApartmentPoint::validate() const {
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  for (const auto& a : aniso)
    if (a != Rational(0) && a != nu() / Rational(2))
      throw std::invalid_argument("anisotropic coordinate " + a.str() + " not in {0, nu/2}");
  if (d == DKind::split && epsilon == -1 && !aniso.empty())
    throw std::invalid_argument("symplectic spaces have no anisotropic part");
}

ApartmentPoint ApartmentPoint::normal_form() const {
  ApartmentPoint p = *this;
  for (auto& a : p.witt)
    if (a < Rational(0)) a = -a;
  std::sort(p.witt.begin(), p.witt.end(), [](const Rational& x, const Rational& y) { return y < x; });
  std::sort(p.aniso.begin(), p.aniso.end());
  return p;
}

bool ApartmentPoint::operator==(const ApartmentPoint& o) const {
  auto a = normal_form(), b = o.normal_form();
  return a.d == b.d && a.epsilon == b.epsilon && a.witt == b.witt && a.aniso == b.aniso;
}

std::string ApartmentPoint::str() const {
  std::ostringstream os;
  os << to_string(d) << " eps=" << epsilon << " witt=(";
  for (size_t i = 0; i < witt.size(); ++i) os << (i ? "," : "") << witt[i];
  os << ") aniso=(";
  for (size_t i = 0; i < aniso.size(); ++i) os << (i ? "," : "") << aniso[i];
  os << ")";
  return os.str();
}

SplitLatticeFunction SplitLatticeFunction::of(const ApartmentPoint& pt) {
  SplitLatticeFunction L;
  L.nu = pt.nu();
  L.b = pt.coords();
  const int h = static_cast<int>(pt.witt.size()), a = static_cast<int>(pt.aniso.size());
  L.partner.resize(L.b.size());
  L.form_val.assign(L.b.size(), Rational(0));
  for (int i = 0; i < h; ++i) {
    L.partner[i] = h + a + i;
    L.partner[h + a + i] = i;
  }
  for (int i = 0; i < a; ++i) {
    L.partner[h + i] = h + i;
    L.form_val[h + i] = pt.aniso[i] * Rational(2);
  }
  return L;
}

bool SplitLatticeFunction::contains(int i, const Rational& v, const Rational& s) const { return v + b[i] >= s; }

namespace {

std::int64_t lcm_den(const std::vector<Rational>& xs, std::int64_t start) {
  std::int64_t L = start;
  for (const auto& x : xs) L = std::lcm(L, x.den());
  return L;
}

}  // namespace

SplitLatticeFunction SplitLatticeFunction::dual() const {
  SplitLatticeFunction D = *this;
  std::vector<Rational> all(b);
  all.insert(all.end(), form_val.begin(), form_val.end());
  all.push_back(nu);
  const std::int64_t L = 2 * lcm_den(all, 1);
  for (size_t j = 0; j < b.size(); ++j) {
    const int i = partner[j];
    // e_j lies in (L#)_s iff <e_j, e_i y> is in p_D for every e_i y in L_{(-s)+}
    auto in_dual = [&](const Rational& s) {
      // least y in nu Z with y + b_i > -s
      Rational t = (-s - b[i]) / nu;
      Rational ymin = nu * Rational(t.floor() + 1);
      return ymin + form_val[j] > Rational(0);
    };
    std::optional<Rational> best;
    for (std::int64_t k = -8 * L; k <= 8 * L; ++k) {
      Rational s(k, L);
      if (in_dual(s)) best = s;
    }
    if (!best) throw std::logic_error("dual lattice function scan window too small");
    D.b[j] = *best;
  }
  return D;
}

bool is_selfdual(const SplitLatticeFunction& L) { return L.dual().b == L.b; }
bool is_selfdual(const ApartmentPoint& pt) { return is_selfdual(SplitLatticeFunction::of(pt)); }

int JumpSet::total() const {
  int t = 0;
  for (const auto& [r, m] : entries) t += m;
  return t;
}

bool JumpSet::symmetric() const {
  for (const auto& [r, m] : entries) {
    auto it = entries.find((-r).mod(period));
    if (it == entries.end() || it->second != m) return false;
  }
  return true;
}

JumpSet JumpSet::unfold() const {
  JumpSet J;
  J.period = Rational(1);
  for (const auto& [r, m] : entries)
    for (Rational s = r; s < Rational(1); s += period) J.entries[s] += m * residue_degree;
  return J;
}

std::string JumpSet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [r, m] : entries) {
    os << (first ? "" : ", ") << r << ":" << m;
    first = false;
  }
  os << "} mod " << period;
  return os.str();
}

JumpSet jumps(const ApartmentPoint& pt) {
  JumpSet J;
  J.period = pt.nu();
  J.residue_degree = pt.residue_degree();
  for (const auto& a : pt.coords()) J.entries[a.mod(J.period)] += 1;
  return J;
}

JumpSet tensor_jumps(const JumpSet& J, const JumpSet& Jp) {
  JumpSet a = J.unfold(), b = Jp.unfold(), out;
  out.period = Rational(1);
  for (const auto& [r, m] : a.entries)
    for (const auto& [s, n] : b.entries) out.entries[(r + s).mod(Rational(1))] += m * n;
  return out;
}

std::string to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::case_i: return "case_i";
    case Dichotomy::case_ii: return "case_ii";
    case Dichotomy::violation: return "violation";
  }
  return "?";
}

Dichotomy epipelagic_dichotomy(const JumpSet& J, const JumpSet& Jp, int m) {
  auto in_lattice = [&](const JumpSet& S) {
    for (const auto& [r, k] : S.unfold().entries)
      if ((r * Rational(m)).den() != 1) return false;
    return true;
  };
  auto in_shift = [&](const JumpSet& S) {
    for (const auto& [r, k] : S.unfold().entries)
      if ((r * Rational(m) - Rational(1, 2)).den() != 1) return false;
    return true;
  };
  if (in_lattice(J) && in_shift(Jp)) return Dichotomy::case_i;
  if (in_shift(J) && in_lattice(Jp)) return Dichotomy::case_ii;
  return Dichotomy::violation;
}

const FieldDesc& residue_field(DKind d, int p) {
  if (d == DKind::unramified) return FieldDesc::make(p, 2, InvolutionKind::frobenius);
  return FieldDesc::make(p, 1);
}

std::vector<Fq> default_aniso_units(const ApartmentPoint& pt, const FieldDesc& fD) {
  std::vector<Fq> u;
  for (const auto& a : pt.aniso) {
    if (pt.d == DKind::unramified && pt.epsilon == -1) {
      Fq g(fD, fD.generator());
      u.push_back(g - involute(g));
    } else if (pt.d == DKind::ramified) {
      // u pi_D^k is eps-hermitian only when eps (-1)^k = 1
      int k = static_cast<int>(((a * Rational(2)) / pt.nu()).floor());
      if (pt.epsilon * (k % 2 ? -1 : 1) != 1)
        throw std::invalid_argument("anisotropic coordinate " + a.str() + " incompatible with eps over ramified D");
      u.push_back(Fq(fD, 1));
    } else {
      if (pt.d == DKind::split && pt.epsilon == -1) throw std::invalid_argument("alternating form with anisotropic part");
      u.push_back(Fq(fD, 1));
    }
  }
  return u;
}

namespace {

// Unit part of <e_i, e_j> in the Witt basis.
Fq witt_unit(const ApartmentPoint& pt, const FieldDesc& fD, const std::vector<Fq>& units, int i, int j) {
  const int h = static_cast<int>(pt.witt.size()), a = static_cast<int>(pt.aniso.size());
  if (i < h && j == h + a + i) return Fq(fD, 1);
  if (i >= h + a && j == i - h - a) return Fq::from_int(fD, pt.epsilon);
  if (i >= h && i < h + a && i == j) return units[i - h].in(fD);
  return Fq(fD, 0);
}

std::vector<Fq> units_or_default(const ApartmentPoint& pt, const FieldDesc& fD, const std::vector<Fq>& units) {
  if (!units.empty()) {
    if (units.size() != pt.aniso.size()) throw std::invalid_argument("one unit per anisotropic vector required");
    return units;
  }
  return default_aniso_units(pt, fD);
}

}  // namespace

FMat residual_gram(const ApartmentPoint& pt, const FieldDesc& fD, const std::vector<Fq>& aniso_units) {
  if (pt.d == DKind::ramified) throw std::invalid_argument("residual_gram: ramified points use graded_piece");
  auto units = units_or_default(pt, fD, aniso_units);
  const int n = pt.dim();
  FMat G = fzeros(fD, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = witt_unit(pt, fD, units, i, j);
  return G;
}

GradedPiece graded_piece(const ApartmentPoint& pt, const Rational& r_in, int p, const std::vector<Fq>& aniso_units) {
  const Rational nu = pt.nu();
  const Rational r = r_in.mod(nu);
  auto J = jumps(pt);
  if (!J.entries.count(r)) throw std::invalid_argument("graded_piece: " + r_in.str() + " is not a jump");
  const FieldDesc& fD = residue_field(pt.d, p);
  auto c = pt.coords();
  GradedPiece g;
  g.r = r;
  g.partner = (-r).mod(nu);
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    if (c[i].mod(nu) == r) g.members.push_back(i);
  g.dim = static_cast<int>(g.members.size());
  const bool twisted = r == nu / Rational(2);
  if (r != Rational(0) && !twisted) {
    g.kind = GradedPiece::pairing;
    return g;
  }
  auto units = units_or_default(pt, fD, aniso_units);
  FMat G = fzeros(fD, g.dim, g.dim);
  for (int x = 0; x < g.dim; ++x)
    for (int y = 0; y < g.dim; ++y) {
      int i = g.members[x], j = g.members[y];
      Fq u = witt_unit(pt, fD, units, i, j);
      if (pt.d == DKind::ramified) {
        // rescaling e_i by pi_D^k contributes (pi_D^tau / pi_D)^k = (-1)^k
        std::int64_t k = ((r - c[i]) / nu).floor();
        if (k % 2) u = -u;
      }
      G(x, y) = u;
    }
  int eps = pt.epsilon;
  if (twisted && pt.d == DKind::ramified) eps = -eps;
  g.kind = GradedPiece::form;
  g.space = space_from_gram(fD, eps, G);
  return g;
}

std::string GroupFactor::str() const { return type + "(" + std::to_string(dim) + ", " + field + ")@" + r.str(); }

std::vector<GroupFactor> residue_group_shape(const ApartmentPoint& pt, int p) {
  const Rational nu = pt.nu();
  auto J = jumps(pt);
  const FieldDesc& fD = residue_field(pt.d, p);
  std::vector<GroupFactor> out;
  auto form_type = [&](int eps) {
    if (pt.d == DKind::unramified) return std::string("U");
    return std::string(eps == 1 ? "O" : "Sp");
  };
  if (J.entries.count(Rational(0))) out.push_back({form_type(pt.epsilon), J.entries[Rational(0)], Rational(0), fD.name()});
  Rational half = nu / Rational(2);
  if (J.entries.count(half)) {
    int eps = pt.d == DKind::ramified ? -pt.epsilon : pt.epsilon;
    out.push_back({form_type(eps), J.entries[half], half, fD.name()});
  }
  for (const auto& [r, m] : J.entries)
    if (r > Rational(0) && r < half) out.push_back({"GL", m, r, fD.name()});
  return out;
}

RMat hom_entry_bounds(const ApartmentPoint& V, const ApartmentPoint& Vp, const Rational& r) {
  const Rational nu = V.nu();
  auto a = V.coords(), ap = Vp.coords();
  RMat B(ap.size(), std::vector<Rational>(a.size()));
  for (size_t j = 0; j < ap.size(); ++j)
    for (size_t i = 0; i < a.size(); ++i) B[j][i] = nu * Rational(((r + a[i] - ap[j]) / nu).ceil());
  return B;
}

RMat hom_entry_bounds_scan(const ApartmentPoint& V, const ApartmentPoint& Vp, const Rational& r) {
  const Rational nu = V.nu();
  auto a = V.coords(), ap = Vp.coords();
  std::vector<Rational> all(a);
  all.insert(all.end(), ap.begin(), ap.end());
  all.push_back(r);
  const std::int64_t L = 2 * lcm_den(all, 2);
  RMat B(ap.size(), std::vector<Rational>(a.size()));
  for (size_t j = 0; j < ap.size(); ++j)
    for (size_t i = 0; i < a.size(); ++i) {
      // least v in nu Z with (e_i x -> e'_j c x) mapping L_s into L'_{s+r} for all s
      for (std::int64_t k = -20; k <= 20; ++k) {
        Rational v = nu * Rational(k);
        bool ok = true;
        for (std::int64_t t = 0; t < L && ok; ++t) {
          Rational s(t, L);
          Rational xmin = nu * Rational(((s - a[i]) / nu).ceil());
          Rational need = nu * Rational(((s + r - ap[j]) / nu).ceil());
          if (xmin + v < need) ok = false;
        }
        if (ok) {
          B[j][i] = v;
          break;
        }
      }
    }
  return B;
}

RMat tropical_product(const RMat& A, const RMat& B) {
  RMat C(A.size(), std::vector<Rational>(B.empty() ? 0 : B[0].size()));
  for (size_t k = 0; k < A.size(); ++k)
    for (size_t i = 0; i < C[k].size(); ++i) {
      std::optional<Rational> best;
      for (size_t j = 0; j < B.size(); ++j) {
        Rational v = A[k][j] + B[j][i];
        if (!best || v < *best) best = v;
      }
      C[k][i] = best.value_or(Rational(0));
    }
  return C;
}

bool entrywise_geq(const RMat& A, const RMat& B) {
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j)
      if (A[i][j] < B[i][j]) return false;
  return true;
}

RMat star_bounds(const ApartmentPoint& V, const ApartmentPoint& Vp, const RMat& B) {
  auto L = SplitLatticeFunction::of(V), Lp = SplitLatticeFunction::of(Vp);
  const size_t n = L.b.size(), np = Lp.b.size();
  RMat S(n, std::vector<Rational>(np));
  // (w*)_{ij} = (G^-1)_{i,p(i)} conj(w_{p'(j),p(i)}) G'_{p'(j),j}
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < np; ++j) S[i][j] = -L.form_val[i] + B[Lp.partner[j]][L.partner[i]] + Lp.form_val[j];
  return S;
}

SplittingDims splitting_dims(const ApartmentPoint& V, const ApartmentPoint& Vp, int m) {
  if (V.d != Vp.d) throw std::invalid_argument("splitting_dims: points over different D");
  SplittingDims out;
  const Rational nu = V.nu();
  const int dk = V.degree(), fdeg = V.residue_degree();
  auto a = V.coords(), ap = Vp.coords();
  out.dim_W = static_cast<int>(a.size() * ap.size()) * dk;
  // V^[t]: f-dimension of the part of V in class t mod 1
  auto classes = [&](const std::vector<Rational>& c) {
    std::map<Rational, int> D;
    for (const auto& x : c)
      for (Rational s = x; s < x + Rational(1); s += nu) D[s.mod(Rational(1))] += fdeg;
    return D;
  };
  auto Dv = classes(a), Dvp = classes(ap);
  for (const auto& [t, d] : Dv)
    for (const auto& [tp, dp] : Dvp) out.per_class[(tp - t).mod(Rational(1))] += d * dp;
  for (auto& [mu, d] : out.per_class) d /= dk;
  // graded pieces of the Hom lattice function between -1/(2m) and 1/(2m)
  const Rational lo(-1, 2 * m), hi(1, 2 * m);
  for (const auto& x : a)
    for (const auto& y : ap) {
      Rational base = (y - x).mod(nu);
      for (Rational d = base - Rational(4); d <= Rational(4); d += nu) {
        if (d < lo || d > hi) continue;
        out.dim_sfW += fdeg;
        if (d == hi) out.dim_sfY += fdeg;
        if (d == lo) out.dim_sfX += fdeg;
      }
    }
  auto T = tensor_jumps(jumps(V), jumps(Vp));
  auto it = T.entries.find(lo.mod(Rational(1)));
  out.sfX_from_tensor = it == T.entries.end() ? 0 : it->second / dk;
  return out;
}

Rational first_lie_jump(const ApartmentPoint& pt) {
  if (pt.d == DKind::ramified) throw std::invalid_argument("first_lie_jump: ramified points are handled in the tilde picture");
  auto L = SplitLatticeFunction::of(pt);
  const bool orthogonal = pt.d == DKind::split && pt.epsilon == 1;
  std::optional<Rational> best;
  for (size_t i = 0; i < L.b.size(); ++i)
    for (size_t j = 0; j < L.b.size(); ++j) {
      if (orthogonal && static_cast<int>(j) == L.partner[i]) continue;  // skew entries vanish
      Rational d = (L.b[i] - L.b[j]).mod(Rational(1));
      if (d == Rational(0)) d = Rational(1);
      if (!best || d < *best) best = d;
    }
  return best.value_or(Rational(1));
}

}  // namespace epitheta

namespace epitheta {

ApartmentPoint random_apartment_point(std::mt19937_64& rng, DKind d, int epsilon, int witt_index, int n_aniso,
                                      int max_den) {
  ApartmentPoint pt;
  pt.d = d;
  pt.epsilon = epsilon;
  std::uniform_int_distribution<int> den(1, max_den);
  for (int i = 0; i < witt_index; ++i) {
    int q = den(rng);
    std::uniform_int_distribution<int> num(-2 * q, 2 * q);
    pt.witt.push_back(Rational(num(rng), q));
  }
  const Rational half = pt.nu() / Rational(2);
  for (int i = 0; i < n_aniso; ++i) {
    if (d == DKind::ramified)
      pt.aniso.push_back(epsilon == 1 ? Rational(0) : half);
    else
      pt.aniso.push_back(rng() % 2 ? half : Rational(0));
  }
  pt.validate();
  return pt;
}

}  // namespace epitheta
