#include "epitheta/grading.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace epitheta {

std::string Twist::str() const {
  switch (kind) {
    case none: return "identity";
    case inner: return "inner J=" + format_matrix(J);
    case outer: return "outer J=" + format_matrix(J);
  }
  return "?";
}

FMat apply_twist(const Twist& t, const FMat& X) {
  switch (t.kind) {
    case Twist::none: return X;
    case Twist::inner: return t.J * X * inverse(t.J);
    case Twist::outer: return -(inverse(t.J) * X.transpose() * t.J);
  }
  return X;
}

namespace {

int mod(long long a, int m) { return static_cast<int>(((a % m) + m) % m); }

// Columns real_coords([Y_a, Z]) over a basis Y_a of S.
int bracket_kernel_dim(const MatSpace& S, const std::vector<FMat>& Zs) {
  if (S.dim() == 0) return 0;
  std::vector<FVec> cols;
  for (const FMat& Y : S.basis()) {
    std::vector<Fq> v;
    for (const FMat& Z : Zs) {
      FVec c = real_coords(embed(FMat(Y * Z - Z * Y), S.field()));
      for (int i = 0; i < c.size(); ++i) v.push_back(c(i));
    }
    FVec col(static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) col(static_cast<int>(i)) = v[i];
    cols.push_back(col);
  }
  FMat A = fzeros(S.field(), static_cast<int>(cols[0].size()), S.dim());
  for (int c = 0; c < S.dim(); ++c)
    for (int r = 0; r < A.rows(); ++r) A(r, c) = cols[c](r);
  return S.dim() - rank<Fq>(A);
}

FMat hstack(const FMat& A, const FMat& B) {
  FMat C(A.rows(), A.cols() + B.cols());
  C << A, B;
  return C;
}

struct Ambient {
  const FieldDesc* f;
  int n;
  std::optional<EpsHermSpace> V;

  FMat lie_eq(const FMat& X) const { return V ? FMat(X + star(X, *V)) : FMat(fzeros(*f, n, n)); }
};

GradedGroup base(const Ambient& a, int m, const std::vector<int>& labels) {
  if (m < 1) throw std::invalid_argument("grading order m must be positive");
  if (!labels.empty() && static_cast<int>(labels.size()) != a.n)
    throw std::invalid_argument("need one label per basis vector");
  GradedGroup G;
  G.space = a.V;
  G.g = a.V ? LieAlgebra::of(*a.V) : LieAlgebra::general_linear(*a.f, a.n);
  G.lie = a.V ? lie_algebra(*a.V) : MatSpace::full(*a.f, a.n, a.n);
  G.m = m;
  G.labels = labels;
  return G;
}

void finish(GradedGroup& G) {
  int total = 0;
  for (const auto& P : G.pieces) total += P.dim();
  if (total != G.lie.dim()) throw std::invalid_argument("grading pieces do not span the Lie algebra");
  G.center0_dim = bracket_kernel_dim(G.pieces[0], G.lie.basis());
}

void check_similitude(const Ambient& a, const FMat& t) {
  if (!a.V) return;
  FMat H = conj_transpose(t) * a.V->gram * t;
  std::optional<Fq> c;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      const Fq& g = a.V->gram(i, j);
      if (g.is_zero()) {
        if (!H(i, j).is_zero()) throw std::invalid_argument("t_bar does not preserve the form");
        continue;
      }
      Fq r = H(i, j) * inverse(g);
      if (c && !(*c == r)) throw std::invalid_argument("t_bar does not preserve the form up to a scalar");
      c = r;
    }
}

GradedGroup eigen_grading(const Ambient& a, int m, const std::vector<int>& labels, const Twist& twist) {
  GradedGroup G = base(a, m, labels);
  const FieldDesc& f = *a.f;
  const FieldDesc& f0 = FieldDesc::make(f.p(), f.involution() == InvolutionKind::frobenius ? 1 : f.k());
  if ((f0.q() - 1) % m != 0)
    throw std::invalid_argument("m = " + std::to_string(m) + " does not divide q0 - 1 = " + std::to_string(f0.q() - 1));
  Fq zeta = f0.k() == 1 ? Fq::from_int(f, root_of_unity(f0, m)) : Fq(f, root_of_unity(f, m));
  G.zeta = zeta;
  G.twist = twist;
  FMat t = fidentity(f, a.n);
  if (!labels.empty())
    for (int i = 0; i < a.n; ++i) t(i, i) = zeta.pow(mod(-labels[i], m));
  check_similitude(a, t);
  G.t_bar = t;
  if (twist.kind != Twist::none && (twist.J.rows() != a.n || twist.J.cols() != a.n))
    throw std::invalid_argument("twist matrix has the wrong size");
  for (int j = 0; j < m; ++j) {
    Fq c = zeta.pow(mod(-j, m));
    G.pieces.push_back(MatSpace::kernel_of(f, a.n, a.n, [&](const FMat& X) {
      return hstack(FMat(G.theta(X) - X * c), a.lie_eq(X));
    }));
  }
  // theta must preserve g and have order dividing m
  for (const FMat& X : G.lie.basis()) {
    FMat Y = X;
    for (int k = 0; k < m; ++k) Y = G.theta(Y);
    if (!(Y == X)) throw std::invalid_argument("theta^m is not the identity");
    if (!G.lie.contains(G.theta(X))) throw std::invalid_argument("theta does not preserve the Lie algebra");
  }
  finish(G);
  return G;
}

GradedGroup label_grading(const Ambient& a, int m, const std::vector<int>& labels) {
  if (labels.empty()) throw std::invalid_argument("label grading needs labels");
  GradedGroup G = base(a, m, labels);
  for (int j = 0; j < m; ++j)
    G.pieces.push_back(MatSpace::kernel_of(*a.f, a.n, a.n, [&](const FMat& X) {
      FMat off = X;
      for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k)
          if (mod(labels[i] - labels[k], m) == j) off(i, k) = Fq(*a.f, 0);
      return hstack(off, a.lie_eq(X));
    }));
  finish(G);
  return G;
}

}  // namespace

FMat GradedGroup::theta(const FMat& X) const {
  if (!t_bar) throw std::logic_error("label grading has no theta");
  return *t_bar * apply_twist(twist, X) * inverse(*t_bar);
}

std::optional<int> GradedGroup::degree_of(const FMat& X) const {
  for (int j = 0; j < m; ++j)
    if (pieces[j].contains(X)) return j;
  return std::nullopt;
}

bool GradedGroup::in_degree0_group(const FMat& h) const {
  if (space) {
    if (!is_isometry(h, *space)) return false;
  } else if (det<Fq>(h).is_zero()) {
    return false;
  }
  if (twist.kind == Twist::none) {
    for (int i = 0; i < n(); ++i)
      for (int k = 0; k < n(); ++k)
        if (!h(i, k).is_zero() && !labels.empty() && mod(labels[i] - labels[k], m) != 0) return false;
    return true;
  }
  FMat th;
  if (twist.kind == Twist::inner)
    th = twist.J * h * inverse(twist.J);
  else
    th = inverse(twist.J) * inverse(FMat(h.transpose())) * twist.J;
  th = *t_bar * th * inverse(*t_bar);
  return th == h;
}

std::string GradedGroup::describe() const {
  std::ostringstream os;
  os << g.type.str() << " over " << field().name() << ", m=" << m << ", dims (";
  for (int j = 0; j < m; ++j) os << (j ? "," : "") << pieces[j].dim();
  os << ")";
  if (!labels.empty()) {
    os << ", labels (";
    for (size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
    os << ")";
  }
  if (twist.kind != Twist::none) os << ", twist " << twist.str();
  return os.str();
}

GradedGroup build_grading(const EpsHermSpace& V, int m, const std::vector<int>& labels, const Twist& twist) {
  return eigen_grading(Ambient{V.field, V.dim(), V}, m, labels, twist);
}
GradedGroup build_grading(const FieldDesc& f, int n, int m, const std::vector<int>& labels, const Twist& twist) {
  return eigen_grading(Ambient{&f, n, std::nullopt}, m, labels, twist);
}
GradedGroup build_label_grading(const EpsHermSpace& V, int m, const std::vector<int>& labels) {
  return label_grading(Ambient{V.field, V.dim(), V}, m, labels);
}
GradedGroup build_label_grading(const FieldDesc& f, int n, int m, const std::vector<int>& labels) {
  return label_grading(Ambient{&f, n, std::nullopt}, m, labels);
}

std::vector<int> labels_from_coords(const std::vector<Rational>& coords, int m) {
  std::vector<int> out;
  if (coords.empty()) return out;
  const Rational base = coords[0] * Rational(m);
  const Rational shift = base - Rational(base.floor());
  for (const auto& a : coords) {
    Rational u = a * Rational(m) - shift;
    if (u.den() != 1) throw std::invalid_argument("coordinates do not give an integral grading for m = " + std::to_string(m));
    out.push_back(static_cast<int>(u.num()));
  }
  return out;
}

int degree0_centralizer_dim(const GradedGroup& G, const FMat& lam) { return bracket_kernel_dim(G.pieces[0], {lam}); }

bool stable_candidate(const GradedGroup& G, const FMat& lam) {
  if (!is_regular_semisimple(lam, G.g)) return false;
  return degree0_centralizer_dim(G, lam) == G.center0_dim;
}

Checks grading_checks(const GradedGroup& G, std::uint64_t samples, std::uint64_t seed) {
  Check dims{"grading_dimension_count", "sum_j dim g_j = dim g"};
  int total = 0;
  for (const auto& P : G.pieces) total += P.dim();
  dims.cases = 1;
  if (total != G.lie.dim()) dims.fail(std::to_string(total) + " != " + std::to_string(G.lie.dim()));

  Check br{"grading_bracket", "[g_j, g_k] in g_{j+k mod m}"};
  for (int j = 0; j < G.m; ++j)
    for (int k = 0; k < G.m; ++k)
      for (const FMat& X : G.pieces[j].basis())
        for (const FMat& Y : G.pieces[k].basis()) {
          ++br.cases;
          if (!G.pieces[(j + k) % G.m].contains(FMat(X * Y - Y * X)))
            br.fail("degrees " + std::to_string(j) + "," + std::to_string(k) + ": " + format_matrix(X) + " " + format_matrix(Y));
        }

  Check ord{"grading_theta_order", "theta^m = 1 and g_j is the zeta^-j eigenspace"};
  if (G.zeta) {
    for (int j = 0; j < G.m; ++j)
      for (const FMat& X : G.pieces[j].basis()) {
        ++ord.cases;
        if (!(G.theta(X) == FMat(X * G.zeta->pow(mod(-j, G.m))))) ord.fail(format_matrix(X));
      }
  } else {
    ord.note = "label grading";
  }

  Check act{"grading_degree0_action", "Ad(h) g_j = g_j for h in G_0"};
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < samples && G.pieces[0].dim() > 0; ++s) {
    FMat Y = random_element(G.pieces[0], rng);
    FMat two = fidentity(G.field(), G.n()) * Fq(G.field(), 2);
    auto d = try_inverse<Fq>(FMat(two - Y));
    if (!d) continue;
    FMat h = (two + Y) * *d;
    if (det<Fq>(h).is_zero()) continue;
    ++act.cases;
    if (!G.in_degree0_group(h)) {
      act.fail("cayley image not in G_0: " + format_matrix(h));
      continue;
    }
    FMat hi = inverse(h);
    for (int j = 0; j < G.m; ++j)
      for (const FMat& X : G.pieces[j].basis())
        if (!G.pieces[j].contains(FMat(h * X * hi))) act.fail("h=" + format_matrix(h) + " j=" + std::to_string(j));
  }
  return {dims, br, ord, act};
}

}  // namespace epitheta
