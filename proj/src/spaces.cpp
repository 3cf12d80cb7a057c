#include "epitheta/spaces.hpp"

#include <sstream>
#include <stdexcept>

namespace epitheta {

Fq EpsHermSpace::pair(const FVec& v1, const FVec& v2) const {
  Fq s(0);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) s += involute(v1(i)) * gram(i, j) * v2(j);
  return s.in(*field);
}

namespace {

void check_form(const EpsHermSpace& V) {
  const FMat& G = V.gram;
  if (G.rows() != G.cols()) throw std::invalid_argument("Gram matrix must be square");
  FMat Gd = conj_transpose(G);
  if (!(Gd == G * Fq(V.epsilon))) throw std::invalid_argument("Gram matrix is not eps-hermitian");
  if (rank(G) != G.rows()) throw std::invalid_argument("Gram matrix is degenerate");
}

}  // namespace

EpsHermSpace witt_basis(const FieldDesc& f, int dim, int epsilon, int witt_index, const std::vector<Fq>& aniso) {
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  if (witt_index < 0 || 2 * witt_index + static_cast<int>(aniso.size()) != dim)
    throw std::invalid_argument("dim must equal 2*witt_index + number of anisotropic entries");
  bool unitary = f.involution() == InvolutionKind::frobenius;
  if (!unitary && epsilon == -1 && !aniso.empty())
    throw std::invalid_argument("alternating forms have no anisotropic vectors");
  EpsHermSpace V;
  V.field = &f;
  V.epsilon = epsilon;
  V.gram = fzeros(f, dim, dim);
  const int h = witt_index, a = static_cast<int>(aniso.size());
  for (int i = 0; i < h; ++i) {
    V.gram(i, h + a + i) = Fq(f, 1);
    V.gram(h + a + i, i) = Fq::from_int(f, epsilon);
  }
  for (int i = 0; i < a; ++i) {
    Fq d = aniso[i].in(f);
    if (d.is_zero()) throw std::invalid_argument("anisotropic diagonal entries must be nonzero");
    if (involute(d) * Fq(epsilon) != d)
      throw std::invalid_argument("anisotropic entry " + d.str() + " violates d = eps d^tau");
    V.gram(h + i, h + i) = d;
  }
  for (int i = 0; i < h; ++i) V.labels.push_back(WittLabel::plus);
  for (int i = 0; i < a; ++i) V.labels.push_back(WittLabel::aniso);
  for (int i = 0; i < h; ++i) V.labels.push_back(WittLabel::minus);
  check_form(V);
  V.gram_inv = inverse(V.gram);
  return V;
}

EpsHermSpace space_from_gram(const FieldDesc& f, int epsilon, const FMat& gram) {
  EpsHermSpace V;
  V.field = &f;
  V.epsilon = epsilon;
  V.gram = embed(gram, f);
  check_form(V);
  V.gram_inv = inverse(V.gram);
  V.labels.assign(V.dim(), WittLabel::aniso);
  return V;
}

FMat star(const FMat& w, const EpsHermSpace& V, const EpsHermSpace& Vp) {
  if (w.cols() != V.dim() || w.rows() != Vp.dim()) throw std::invalid_argument("star: dimension mismatch");
  return adjoint<Fq>(w, V.gram_inv, Vp.gram);
}

FormedMap star(const FormedMap& w) { return {w.target, w.source, star(w.matrix, *w.source, *w.target)}; }

int double_star_sign(const EpsHermSpace& V, const EpsHermSpace& Vp) {
  const FieldDesc& f = *V.field;
  FMat w = fzeros(f, Vp.dim(), V.dim());
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = Fq(f, f.exp(i * 7 + j * 3 + 1));
  FMat ww = star(star(w, V, Vp), Vp, V);
  if (ww == w) return 1;
  if (ww == FMat(-w)) return -1;
  throw std::logic_error("(w*)* is not +-w");
}

bool is_isometry(const FMat& g, const EpsHermSpace& V) {
  if (g.rows() != V.dim() || g.cols() != V.dim()) return false;
  return conj_transpose(g) * V.gram * g == V.gram;
}

bool lie_member(const FMat& X, const EpsHermSpace& V) {
  if (X.rows() != V.dim() || X.cols() != V.dim()) return false;
  return is_zero_matrix<Fq>(X + star(X, V));
}

Fq reduced_trace(const Fq& x) {
  if (x.has_field() && x.field()->involution() == InvolutionKind::frobenius) return x + involute(x);
  return x;
}

Fq trace_form(const FMat& X1, const FMat& X2, const EpsHermSpace& V) {
  if (!lie_member(X1, V) || !lie_member(X2, V)) throw std::invalid_argument("trace_form: arguments must lie in the Lie algebra");
  const FieldDesc& f = *V.field;
  return (reduced_trace(trace<Fq>(star(X2, V) * X1)) * Fq::from_int(f, 2).inverse()).in(f);
}

std::vector<Fq> scalar_basis(const FieldDesc& f) {
  if (f.involution() == InvolutionKind::frobenius) return {Fq(f, 1), Fq(f, static_cast<FieldDesc::Code>(f.p()))};
  return {Fq(f, 1)};
}

FVec real_coords(const FMat& X) {
  const FieldDesc* f = nullptr;
  for (int i = 0; i < X.size() && !f; ++i) f = X(i).field();
  bool two = f && f->involution() == InvolutionKind::frobenius;
  FVec v(X.size() * (two ? 2 : 1));
  int k = 0;
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j) {
      if (!f) {
        v(k++) = X(i, j);
        continue;
      }
      Fq x = X(i, j).in(*f);
      if (two) {
        v(k++) = Fq(*f, x.code() % f->p());
        v(k++) = Fq(*f, x.code() / f->p());
      } else {
        v(k++) = x;
      }
    }
  return v;
}

namespace {

std::vector<FMat> real_basis(const FieldDesc& f, int rows, int cols) {
  std::vector<FMat> out;
  auto sb = scalar_basis(f);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (const Fq& s : sb) {
        FMat E = fzeros(f, rows, cols);
        E(i, j) = s;
        out.push_back(E);
      }
  return out;
}

FMat from_real(const FieldDesc& f, int rows, int cols, const FVec& v) {
  auto sb = scalar_basis(f);
  const int t = static_cast<int>(sb.size());
  FMat X = fzeros(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Fq x(f, 0);
      for (int s = 0; s < t; ++s) x += v((i * cols + j) * t + s) * sb[s];
      X(i, j) = x;
    }
  return X;
}

}  // namespace

MatSpace::MatSpace(const FieldDesc& f, int rows, int cols, const std::vector<FMat>& spanning)
    : f_(&f), rows_(rows), cols_(cols) {
  const int N = rows * cols * static_cast<int>(scalar_basis(f).size());
  FMat A = fzeros(f, static_cast<int>(spanning.size()), N);
  for (size_t r = 0; r < spanning.size(); ++r) {
    FVec v = real_coords(embed(spanning[r], f));
    for (int c = 0; c < N; ++c) A(static_cast<int>(r), c) = v(c);
  }
  pivot_rows_ = rref_inplace(A);
  for (size_t r = 0; r < pivot_rows_.size(); ++r) basis_.push_back(from_real(f, rows, cols, FVec(A.row(static_cast<int>(r)).transpose())));
}

MatSpace MatSpace::full(const FieldDesc& f, int rows, int cols) { return MatSpace(f, rows, cols, real_basis(f, rows, cols)); }

MatSpace MatSpace::kernel_of(const FieldDesc& f, int rows, int cols, const std::function<FMat(const FMat&)>& L) {
  auto rb = real_basis(f, rows, cols);
  std::vector<FVec> images;
  for (const FMat& E : rb) images.push_back(real_coords(embed(L(E), f)));
  const int n = static_cast<int>(rb.size());
  if (images.empty()) return MatSpace(f, rows, cols, {});
  FMat A = fzeros(f, static_cast<int>(images[0].size()), n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < A.rows(); ++r) A(r, c) = images[c](r);
  FMat K = kernel(A);
  std::vector<FMat> span;
  for (int c = 0; c < K.cols(); ++c) {
    FMat X = fzeros(f, rows, cols);
    for (int i = 0; i < n; ++i)
      if (!K(i, c).is_zero()) X += rb[i] * K(i, c);
    span.push_back(X);
  }
  return MatSpace(f, rows, cols, span);
}

std::optional<std::vector<Fq>> MatSpace::coords(const FMat& X) const {
  if (X.rows() != rows_ || X.cols() != cols_) return std::nullopt;
  FVec v = real_coords(embed(X, *f_));
  std::vector<Fq> c;
  for (int p : pivot_rows_) c.push_back(v(p));
  if (!(combine(c) == embed(X, *f_))) return std::nullopt;
  return c;
}

std::vector<Fq> MatSpace::coords_unchecked(const FMat& X) const {
  FVec v = real_coords(embed(X, *f_));
  std::vector<Fq> c;
  c.reserve(pivot_rows_.size());
  for (int p : pivot_rows_) c.push_back(v(p).in(*f_));
  return c;
}

FMat MatSpace::combine(const std::vector<Fq>& c) const {
  FMat X = fzeros(*f_, rows_, cols_);
  for (size_t k = 0; k < basis_.size(); ++k)
    if (!c[k].is_zero()) X += basis_[k] * c[k];
  return X;
}

std::uint64_t MatSpace::size() const {
  std::uint64_t n = 1;
  const std::uint64_t q0 = f_->q0();
  for (int i = 0; i < dim(); ++i) n *= q0;
  return n;
}

FMat MatSpace::element(std::uint64_t index) const {
  const auto& fx = f_->fixed_elements();
  const std::uint64_t q0 = fx.size();
  std::vector<Fq> c(dim(), Fq(*f_, 0));
  for (int k = dim() - 1; k >= 0; --k) {
    c[k] = Fq(*f_, fx[index % q0]);
    index /= q0;
  }
  return combine(c);
}

MatSpace lie_algebra(const EpsHermSpace& V) {
  return MatSpace::kernel_of(*V.field, V.dim(), V.dim(), [&](const FMat& X) { return FMat(X + star(X, V)); });
}

std::string describe(const EpsHermSpace& V) {
  std::ostringstream os;
  os << V.field->name() << (V.unitary() ? "/tau" : "") << " eps=" << V.epsilon << " gram=" << format_matrix(V.gram);
  return os.str();
}

}  // namespace epitheta
