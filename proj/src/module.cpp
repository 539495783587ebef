#include "recollab/module.hpp"

#include <algorithm>
#include <limits>

namespace recollab {

namespace {

template <class S>
Mat<S> zero_mat(const Algebra<S>& a, Index r, Index c) {
  return Mat<S>::Constant(r, c, a.scalar(0));
}

template <class S>
Mat<S> eye(const Algebra<S>& a, Index n) {
  Mat<S> m = zero_mat(a, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = a.scalar(1);
  return m;
}

template <class S>
Mat<S> combine(const Algebra<S>& a, const std::vector<Mat<S>>& action, Index dim, const Vec<S>& x) {
  if (x.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "algebra element has wrong length");
  Mat<S> out = zero_mat(a, dim, dim);
  for (Index i = 0; i < x.size(); ++i)
    if (!is_zero(x(i))) out += x(i) * action[static_cast<std::size_t>(i)];
  return out;
}

template <class S>
void check_shapes(const Algebra<S>& a, Index dim, const std::vector<Mat<S>>& action) {
  if (dim < 0) throw Error(ErrorCode::InvalidModule, "negative module dimension");
  if (static_cast<Index>(action.size()) != a.dim())
    throw Error(ErrorCode::InvalidModule, "need one action matrix per basis element");
  for (const auto& m : action)
    if (m.rows() != dim || m.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "action matrix has wrong shape");
}

// left = true checks act(x y) = act(x) act(y), otherwise act(y) act(x).
template <class S>
void check_action(const Algebra<S>& a, Index dim, const std::vector<Mat<S>>& action, bool left) {
  check_shapes(a, dim, action);
  if (combine(a, action, dim, a.unit()) != eye(a, dim))
    throw Error(ErrorCode::InvalidModule, "the unit does not act as the identity");
  for (Index i = 0; i < a.dim(); ++i)
    for (Index g : a.generators()) {
      Vec<S> prod = a.zero();
      for (const auto& [k, c] : a.product(i, g)) prod(k) += c;
      const Mat<S>& x = action[static_cast<std::size_t>(i)];
      const Mat<S>& y = action[static_cast<std::size_t>(g)];
      Mat<S> expect = left ? Mat<S>(x * y) : Mat<S>(y * x);
      if (combine(a, action, dim, prod) != expect)
        throw Error(ErrorCode::InvalidModule, "action is not multiplicative at " + a.label(i) + "*" + a.label(g));
    }
}

std::uint64_t mix(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= 0xff;
  return h * 1099511628211ull;
}

template <class S>
Vec<S> kron_vec(const Vec<S>& a, const Vec<S>& b) {
  Vec<S> out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) out(i * b.size() + j) = a(i) * b(j);
  return out;
}

// Coordinates of the images of a subspace basis under each operator.
template <class S>
std::vector<Mat<S>> restrict_ops(const Subspace<S>& w, const Mat<S>& basis, const std::vector<Mat<S>>& ops,
                                 const char* what) {
  std::vector<Mat<S>> out;
  out.reserve(ops.size());
  for (const auto& op : ops) {
    Mat<S> img = op * basis;
    for (Index c = 0; c < img.cols(); ++c)
      if (!w.contains(img.col(c))) throw Error(ErrorCode::InvalidModule, std::string(what) + " is not invariant");
    out.push_back(w.coordinates(img));
  }
  return out;
}

template <class S>
std::vector<Mat<S>> quotient_ops(const Algebra<S>& a, const Subspace<S>& w, const std::vector<Mat<S>>& ops,
                                 const char* what) {
  std::vector<Index> comp = w.complement();
  const Index q = static_cast<Index>(comp.size());
  std::vector<Mat<S>> out;
  out.reserve(ops.size());
  for (const auto& op : ops) {
    for (Index c = 0; c < w.dim(); ++c)
      if (!w.contains(op * w.basis_vector(c)))
        throw Error(ErrorCode::InvalidModule, std::string(what) + " is not invariant");
    Mat<S> m = zero_mat(a, q, q);
    for (Index c = 0; c < q; ++c) m.col(c) = w.quotient_coordinates(op.col(comp[static_cast<std::size_t>(c)]));
    out.push_back(std::move(m));
  }
  return out;
}

template <class S>
Mat<S> projection_matrix(const Algebra<S>& a, const Subspace<S>& w) {
  const Index n = w.ambient();
  const Index q = n - w.dim();
  Mat<S> p = zero_mat(a, q, n);
  for (Index j = 0; j < n; ++j) {
    Vec<S> e = Vec<S>::Constant(n, a.scalar(0));
    e(j) = a.scalar(1);
    p.col(j) = w.quotient_coordinates(e);
  }
  return p;
}

}  // namespace

// ---------------------------------------------------------------- modules

template <class S>
RightModule<S>::RightModule(AlgebraPtr<S> algebra, Index dim, std::vector<Mat<S>> action, bool verify) {
  if (!algebra) throw Error(ErrorCode::InvalidModule, "module without algebra");
  if (verify) check_action(*algebra, dim, action, false);
  else check_shapes(*algebra, dim, action);
  rep_ = std::make_shared<const Representation<S>>(Representation<S>{std::move(algebra), dim, std::move(action)});
}

template <class S>
RightModule<S> RightModule<S>::zero(AlgebraPtr<S> algebra) {
  std::vector<Mat<S>> action(static_cast<std::size_t>(algebra->dim()), Mat<S>(0, 0));
  return RightModule(std::move(algebra), 0, std::move(action), false);
}

template <class S>
RightModule<S> RightModule<S>::regular(AlgebraPtr<S> algebra) {
  std::vector<Mat<S>> action;
  for (Index i = 0; i < algebra->dim(); ++i) action.push_back(algebra->right_matrix(algebra->basis_vector(i)));
  const Index n = algebra->dim();
  return RightModule(std::move(algebra), n, std::move(action), false);
}

template <class S>
RightModule<S> RightModule<S>::projective(AlgebraPtr<S> algebra, std::size_t i) {
  const auto& ps = algebra->projective(i);
  return RightModule(algebra, ps.basis.cols(), ps.action, false);
}

template <class S>
RightModule<S> RightModule<S>::simple(AlgebraPtr<S> algebra, std::size_t i) {
  RightModule p = projective(algebra, i);
  return quotient_module(p, radical_submodule(p)).module;
}

template <class S>
Mat<S> RightModule<S>::act(const Vec<S>& x) const {
  return combine(*rep_->algebra, rep_->action, rep_->dim, x);
}

template <class S>
std::uint64_t RightModule<S>::hash() const {
  std::uint64_t h = mix(1469598103934665603ull, std::to_string(rep_->algebra->hash()));
  h = mix(h, std::to_string(rep_->dim));
  for (std::size_t k = 0; k < rep_->action.size(); ++k) {
    const Mat<S>& m = rep_->action[k];
    h = mix(h, "#" + std::to_string(k));
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (!is_zero(m(i, j))) h = mix(h, std::to_string(i) + "," + std::to_string(j) + "=" + format_scalar(m(i, j)));
  }
  return h;
}

template <class S>
LeftModule<S>::LeftModule(AlgebraPtr<S> algebra, Index dim, std::vector<Mat<S>> action, bool verify) {
  if (!algebra) throw Error(ErrorCode::InvalidModule, "module without algebra");
  if (verify) check_action(*algebra, dim, action, true);
  else check_shapes(*algebra, dim, action);
  rep_ = std::make_shared<const Representation<S>>(Representation<S>{std::move(algebra), dim, std::move(action)});
}

template <class S>
LeftModule<S> LeftModule<S>::regular(AlgebraPtr<S> algebra) {
  std::vector<Mat<S>> action;
  for (Index i = 0; i < algebra->dim(); ++i) action.push_back(algebra->left_matrix(algebra->basis_vector(i)));
  const Index n = algebra->dim();
  return LeftModule(std::move(algebra), n, std::move(action), false);
}

template <class S>
Mat<S> LeftModule<S>::act(const Vec<S>& x) const {
  return combine(*rep_->algebra, rep_->action, rep_->dim, x);
}

template <class S>
RightModule<S> LeftModule<S>::as_right(const AlgebraPtr<S>& opposite_algebra) const {
  return RightModule<S>(opposite_algebra, dim(), actions());
}

template <class S>
LeftModule<S> as_left(const RightModule<S>& m, const AlgebraPtr<S>& opposite_algebra) {
  return LeftModule<S>(opposite_algebra, m.dim(), m.actions());
}

template <class S>
Bimodule<S>::Bimodule(AlgebraPtr<S> left, AlgebraPtr<S> right, Index dim, std::vector<Mat<S>> left_action,
                      std::vector<Mat<S>> right_action)
    : dim_(dim),
      left_(std::move(left), dim, std::move(left_action)),
      right_(std::move(right), dim, std::move(right_action)) {
  if (left_.algebra()->field() != right_.algebra()->field())
    throw Error(ErrorCode::FieldMismatch, "bimodule over algebras with different fields");
  for (Index g : left_.algebra()->generators())
    for (Index h : right_.algebra()->generators())
      if (left_.action(g) * right_.action(h) != right_.action(h) * left_.action(g))
        throw Error(ErrorCode::InvalidModule, "left and right actions do not commute");
}

template <class S>
Bimodule<S> Bimodule<S>::regular(AlgebraPtr<S> a) {
  std::vector<Mat<S>> l, r;
  for (Index i = 0; i < a->dim(); ++i) {
    l.push_back(a->left_matrix(a->basis_vector(i)));
    r.push_back(a->right_matrix(a->basis_vector(i)));
  }
  const Index n = a->dim();
  return Bimodule(a, a, n, std::move(l), std::move(r));
}

template <class S>
RightModule<S> Bimodule<S>::as_right_module(const AlgebraPtr<S>& env) const {
  const Index db = left_algebra()->dim(), da = right_algebra()->dim();
  if (env->dim() != db * da) throw Error(ErrorCode::DimensionMismatch, "enveloping algebra has wrong dimension");
  std::vector<Mat<S>> action;
  action.reserve(static_cast<std::size_t>(db * da));
  for (Index i = 0; i < db; ++i)
    for (Index j = 0; j < da; ++j) action.push_back(left_.action(i) * right_.action(j));
  return RightModule<S>(env, dim_, std::move(action), false);
}

template <class S>
LeftModule<S> Bimodule<S>::as_left_module(const AlgebraPtr<S>& env) const {
  const Index db = left_algebra()->dim(), da = right_algebra()->dim();
  if (env->dim() != db * da) throw Error(ErrorCode::DimensionMismatch, "enveloping algebra has wrong dimension");
  std::vector<Mat<S>> action;
  action.reserve(static_cast<std::size_t>(db * da));
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j) action.push_back(left_.action(j) * right_.action(i));
  return LeftModule<S>(env, dim_, std::move(action), false);
}

// ---------------------------------------------------------------- maps

template <class S>
bool is_homomorphism(const RightModule<S>& m, const RightModule<S>& n, const Mat<S>& f) {
  require_same(*m.algebra(), *n.algebra(), "is_homomorphism");
  if (f.rows() != n.dim() || f.cols() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "map has wrong shape");
  for (Index g : m.algebra()->generators())
    if (n.action(g) * f != f * m.action(g)) return false;
  return true;
}

template <class S>
std::vector<Mat<S>> hom_space(const RightModule<S>& m, const RightModule<S>& n) {
  require_same(*m.algebra(), *n.algebra(), "hom_space");
  const Algebra<S>& a = *m.algebra();
  const Index dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return {};
  const auto& gens = a.generators();
  const Index unknowns = dm * dn;
  Mat<S> system = zero_mat(a, std::max<Index>(1, static_cast<Index>(gens.size())) * unknowns, unknowns);
  Mat<S> im = eye(a, dm), in = eye(a, dn);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    // vec(N X - X M) with column-major vec.
    system.block(static_cast<Index>(g) * unknowns, 0, unknowns, unknowns) =
        kron<S>(im, n.action(gens[g])) - kron<S>(Mat<S>(m.action(gens[g]).transpose()), in);
  }
  Mat<S> ker = kernel_basis(system);
  std::vector<Mat<S>> out;
  for (Index k = 0; k < ker.cols(); ++k) {
    Mat<S> x(dn, dm);
    for (Index c = 0; c < dm; ++c)
      for (Index r = 0; r < dn; ++r) x(r, c) = ker(r + c * dn, k);
    out.push_back(std::move(x));
  }
  return out;
}

template <class S>
Submodule<S> submodule(const RightModule<S>& m, const Subspace<S>& w) {
  if (w.ambient() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace lives in a different space");
  const Algebra<S>& a = *m.algebra();
  Mat<S> basis = w.dim() ? w.basis() : zero_mat(a, m.dim(), 0);
  auto ops = restrict_ops(w, basis, m.actions(), "submodule");
  return {RightModule<S>(m.algebra(), w.dim(), std::move(ops), false), basis};
}

template <class S>
QuotientModule<S> quotient_module(const RightModule<S>& m, const Subspace<S>& w) {
  if (w.ambient() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace lives in a different space");
  const Algebra<S>& a = *m.algebra();
  auto ops = quotient_ops(a, w, m.actions(), "quotient");
  return {RightModule<S>(m.algebra(), m.dim() - w.dim(), std::move(ops), false), projection_matrix(a, w)};
}

template <class S>
KernelCokernel<S> kernel_cokernel(const RightModule<S>& m, const RightModule<S>& n, const Mat<S>& f) {
  if (!is_homomorphism(m, n, f)) throw Error(ErrorCode::InvalidModule, "map is not a module homomorphism");
  Subspace<S> ker = Subspace<S>::span(kernel_basis(f));
  Subspace<S> img = Subspace<S>::span(f);
  if (ker.ambient() != m.dim()) ker = Subspace<S>(m.dim());
  if (img.ambient() != n.dim()) img = Subspace<S>(n.dim());
  return {submodule(m, ker), quotient_module(n, img)};
}

template <class S>
Subspace<S> radical_submodule(const RightModule<S>& m) {
  const Subspace<S>& rad = m.algebra()->radical();
  Subspace<S> out(m.dim());
  for (Index k = 0; k < rad.dim() && out.dim() < m.dim(); ++k) out.insert_columns(m.act(rad.basis_vector(k)));
  return out;
}

template <class S>
RightModule<S> restrict_module(const RightModule<S>& m, const AlgebraPtr<S>& b, const Mat<S>& phi) {
  if (phi.rows() != m.algebra()->dim() || phi.cols() != b->dim())
    throw Error(ErrorCode::DimensionMismatch, "algebra map has wrong shape");
  std::vector<Mat<S>> action;
  for (Index j = 0; j < b->dim(); ++j) action.push_back(m.act(phi.col(j)));
  return RightModule<S>(b, m.dim(), std::move(action));
}

// ---------------------------------------------------------------- tensor

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class S>
Mat<S> TensorSpace<S>::induce(const Mat<S>& op) const {
  const Index n = dim_m * dim_n;
  if (op.rows() != n || op.cols() != n) throw Error(ErrorCode::DimensionMismatch, "operator has wrong shape");
  std::vector<Index> comp = relations.complement();
  Mat<S> out(dim, dim);
  for (Index c = 0; c < dim; ++c) out.col(c) = relations.quotient_coordinates(op.col(comp[static_cast<std::size_t>(c)]));
  return out;
}

template <class S>
Vec<S> TensorSpace<S>::element(const Vec<S>& m, const Vec<S>& n) const {
  return relations.quotient_coordinates(kron_vec(m, n));
}

template <class S>
TensorSpace<S> tensor_space(const RightModule<S>& m, const LeftModule<S>& n) {
  require_same(*m.algebra(), *n.algebra(), "tensor_space");
  const Algebra<S>& a = *m.algebra();
  TensorSpace<S> t;
  t.dim_m = m.dim();
  t.dim_n = n.dim();
  t.relations = Subspace<S>(t.dim_m * t.dim_n);
  Mat<S> im = eye(a, t.dim_m), in = eye(a, t.dim_n);
  for (Index g : a.generators()) {
    if (t.relations.dim() == t.relations.ambient()) break;
    t.relations.insert_columns(kron<S>(m.action(g), in) - kron<S>(im, n.action(g)));
  }
  t.dim = t.relations.ambient() - t.relations.dim();
  return t;
}

template <class S>
RightModule<S> tensor_over(const RightModule<S>& m, const Bimodule<S>& n) {
  TensorSpace<S> t = tensor_space(m, n.left());
  const Algebra<S>& a = *m.algebra();
  Mat<S> im = eye(a, m.dim());
  std::vector<Mat<S>> action;
  for (Index j = 0; j < n.right_algebra()->dim(); ++j) action.push_back(t.induce(kron<S>(im, n.right().action(j))));
  return RightModule<S>(n.right_algebra(), t.dim, std::move(action));
}

template <class S>
Bimodule<S> tensor_over(const Bimodule<S>& m, const Bimodule<S>& n) {
  TensorSpace<S> t = tensor_space(m.right(), n.left());
  const Algebra<S>& a = *m.right_algebra();
  Mat<S> im = eye(a, m.dim()), in = eye(a, n.dim());
  std::vector<Mat<S>> l, r;
  for (Index i = 0; i < m.left_algebra()->dim(); ++i) l.push_back(t.induce(kron<S>(m.left().action(i), in)));
  for (Index j = 0; j < n.right_algebra()->dim(); ++j) r.push_back(t.induce(kron<S>(im, n.right().action(j))));
  return Bimodule<S>(m.left_algebra(), n.right_algebra(), t.dim, std::move(l), std::move(r));
}

// ---------------------------------------------------------------- covers

template <class S>
RightModule<S> projective_module(const AlgebraPtr<S>& a, const std::vector<std::size_t>& summands) {
  Index total = 0;
  for (std::size_t i : summands) total += a->projective(i).basis.cols();
  std::vector<Mat<S>> action(static_cast<std::size_t>(a->dim()), zero_mat(*a, total, total));
  Index off = 0;
  for (std::size_t i : summands) {
    const auto& ps = a->projective(i);
    const Index d = ps.basis.cols();
    for (Index l = 0; l < a->dim(); ++l) action[static_cast<std::size_t>(l)].block(off, off, d, d) = ps.action[static_cast<std::size_t>(l)];
    off += d;
  }
  return RightModule<S>(a, total, std::move(action), false);
}

template <class S>
ProjectiveCover<S> projective_cover(const RightModule<S>& m) {
  const AlgebraPtr<S>& a = m.algebra();
  const auto& prims = a->primitives();
  Subspace<S> span = radical_submodule(m);
  ProjectiveCover<S> pc;
  for (std::size_t i = 0; i < prims.size() && span.dim() < m.dim(); ++i) {
    Mat<S> slice = m.act(prims[i]);
    for (Index c = 0; c < slice.cols() && span.dim() < m.dim(); ++c) {
      Vec<S> v = slice.col(c);
      if (span.insert(v)) {
        pc.summands.push_back(i);
        pc.generators.push_back(v);
      }
    }
  }
  for (std::size_t i : pc.summands) pc.dim += a->projective(i).basis.cols();
  pc.map = zero_mat(*a, m.dim(), pc.dim);
  Index off = 0;
  for (std::size_t k = 0; k < pc.summands.size(); ++k) {
    const Mat<S>& basis = a->projective(pc.summands[k]).basis;
    for (Index c = 0; c < basis.cols(); ++c) pc.map.col(off + c) = m.act(basis.col(c)) * pc.generators[k];
    off += basis.cols();
  }
  return pc;
}

template <class S>
FreeCover<S> free_cover(const RightModule<S>& m) {
  const AlgebraPtr<S>& a = m.algebra();
  ProjectiveCover<S> pc = projective_cover(m);
  const std::size_t np = a->primitives().size();
  std::vector<std::vector<Vec<S>>> by_summand(np);
  for (std::size_t k = 0; k < pc.summands.size(); ++k) by_summand[pc.summands[k]].push_back(pc.generators[k]);
  std::size_t r = 0;
  for (const auto& v : by_summand) r = std::max(r, v.size());
  const Index n = a->dim();
  FreeCover<S> fc;
  fc.rank = static_cast<Index>(r);
  fc.map = zero_mat(*a, m.dim(), fc.rank * n);
  for (std::size_t k = 0; k < r; ++k) {
    Vec<S> x = Vec<S>::Constant(m.dim(), a->scalar(0));
    for (const auto& v : by_summand)
      if (k < v.size()) x += v[k];
    for (Index l = 0; l < n; ++l) fc.map.col(static_cast<Index>(k) * n + l) = m.action(l) * x;
  }
  std::vector<Mat<S>> action(static_cast<std::size_t>(n), zero_mat(*a, fc.rank * n, fc.rank * n));
  for (Index l = 0; l < n; ++l) {
    Mat<S> rl = a->right_matrix(a->basis_vector(l));
    for (Index k = 0; k < fc.rank; ++k) action[static_cast<std::size_t>(l)].block(k * n, k * n, n, n) = rl;
  }
  fc.free = RightModule<S>(a, fc.rank * n, std::move(action), false);
  return fc;
}

template <class S>
bool is_projective(const RightModule<S>& m) {
  return projective_cover(m).dim == m.dim();
}

// ---------------------------------------------------------------- iso test

const char* to_string(IsoVerdict v) noexcept {
  switch (v) {
    case IsoVerdict::Isomorphic: return "isomorphic";
    case IsoVerdict::NotIsomorphic: return "not_isomorphic";
    case IsoVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <class S>
IsoResult<S> iso_test(const RightModule<S>& m, const RightModule<S>& n, long budget) {
  require_same(*m.algebra(), *n.algebra(), "iso_test");
  const Algebra<S>& a = *m.algebra();
  IsoResult<S> res;
  const Index d = m.dim();
  if (d != n.dim()) {
    res.verdict = IsoVerdict::NotIsomorphic;
    return res;
  }
  if (d == 0) {
    res.verdict = IsoVerdict::Isomorphic;
    res.witness = Mat<S>(0, 0);
    return res;
  }
  if (a.has_primitives()) {
    for (const auto& p : a.primitives())
      if (rank(m.act(p)) != rank(n.act(p))) {
        res.verdict = IsoVerdict::NotIsomorphic;
        return res;
      }
  }
  std::vector<Mat<S>> homs = hom_space(m, n);
  const std::size_t h = homs.size();
  if (h == 0) {
    res.verdict = IsoVerdict::NotIsomorphic;
    return res;
  }
  // det(sum c_k H_k) has degree d, so a grid with d + 1 values per coordinate
  // hits a nonzero point if there is one. Over a small F_p use all of F_p^h.
  long values = static_cast<long>(d) + 1;
  if (!a.field().is_rational() && static_cast<long>(a.field().prime) < values) values = static_cast<long>(a.field().prime);

  auto try_coeffs = [&](const std::vector<long>& c) -> bool {
    ++res.evaluations;
    Mat<S> x = zero_mat(a, d, d);
    for (std::size_t k = 0; k < h; ++k)
      if (c[k] != 0) x += a.scalar(c[k]) * homs[k];
    if (rank(x) == d) {
      res.verdict = IsoVerdict::Isomorphic;
      res.witness = x;
      return true;
    }
    return false;
  };

  std::vector<long> c(h, 1);
  if (try_coeffs(c)) return res;
  if (values > 2) {
    for (std::size_t k = 0; k < h; ++k) c[k] = 1 + static_cast<long>(k) % (values - 1);
    if (try_coeffs(c)) return res;
  }
  std::fill(c.begin(), c.end(), 0);
  while (true) {
    std::size_t k = 0;
    while (k < h && ++c[k] == values) c[k++] = 0;
    if (k == h) break;
    if (res.evaluations >= budget) {
      res.verdict = IsoVerdict::Inconclusive;
      return res;
    }
    if (try_coeffs(c)) return res;
  }
  res.verdict = IsoVerdict::NotIsomorphic;
  return res;
}

// ---------------------------------------------------------------- algebras

template <class S>
Triangular<S> triangular(const AlgebraPtr<S>& a1, const AlgebraPtr<S>& a2, const Bimodule<S>& m) {
  if (a1->field() != a2->field()) throw Error(ErrorCode::FieldMismatch, "triangular: fields differ");
  require_same(*m.left_algebra(), *a2, "triangular (left action)");
  require_same(*m.right_algebra(), *a1, "triangular (right action)");
  const Index n1 = a1->dim(), n2 = a2->dim(), dm = m.dim(), n = n1 + n2 + dm;
  AlgebraData<S> d;
  d.field = a1->field();
  d.dim = n;
  for (const auto& l : a1->labels()) d.labels.push_back("1:" + l);
  for (const auto& l : a2->labels()) d.labels.push_back("2:" + l);
  for (Index s = 0; s < dm; ++s) d.labels.push_back("M:m" + std::to_string(s));
  d.table.resize(static_cast<std::size_t>(n * n));
  auto put = [&](Index i, Index j, Index off, const SparseVec<S>& v) {
    auto& cell = d.table[static_cast<std::size_t>(i * n + j)];
    for (const auto& [k, c] : v) cell.emplace_back(off + k, c);
  };
  auto col = [&](const Mat<S>& mat, Index c) {
    SparseVec<S> v;
    for (Index r = 0; r < mat.rows(); ++r)
      if (!is_zero(mat(r, c))) v.emplace_back(r, mat(r, c));
    return v;
  };
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n1; ++j) put(i, j, 0, a1->product(i, j));
  for (Index i = 0; i < n2; ++i)
    for (Index j = 0; j < n2; ++j) put(n1 + i, n1 + j, n1, a2->product(i, j));
  for (Index s = 0; s < dm; ++s) {
    for (Index k = 0; k < n1; ++k) put(n1 + n2 + s, k, n1 + n2, col(m.right().action(k), s));
    for (Index t = 0; t < n2; ++t) put(n1 + t, n1 + n2 + s, n1 + n2, col(m.left().action(t), s));
  }
  Vec<S> zero = Vec<S>::Constant(n, a1->scalar(0));
  Triangular<S> out;
  out.e1 = zero;
  out.e1.head(n1) = a1->unit();
  out.e2 = zero;
  out.e2.segment(n1, n2) = a2->unit();
  d.unit = out.e1 + out.e2;
  if (a1->has_radical() && a2->has_radical()) {
    const Subspace<S>& r1 = a1->radical();
    const Subspace<S>& r2 = a2->radical();
    Mat<S> rad = Mat<S>::Constant(n, r1.dim() + r2.dim() + dm, a1->scalar(0));
    for (Index k = 0; k < r1.dim(); ++k) rad.col(k).head(n1) = r1.basis_vector(k);
    for (Index k = 0; k < r2.dim(); ++k) rad.col(r1.dim() + k).segment(n1, n2) = r2.basis_vector(k);
    for (Index s = 0; s < dm; ++s) rad(n1 + n2 + s, r1.dim() + r2.dim() + s) = a1->scalar(1);
    d.radical = rad;
  }
  if (a1->has_primitives() && a2->has_primitives()) {
    for (std::size_t i = 0; i < a1->primitives().size(); ++i) {
      Vec<S> p = zero;
      p.head(n1) = a1->primitives()[i];
      d.primitives.push_back(p);
      d.primitive_labels.push_back("1:" + a1->primitive_labels()[i]);
    }
    for (std::size_t i = 0; i < a2->primitives().size(); ++i) {
      Vec<S> p = zero;
      p.segment(n1, n2) = a2->primitives()[i];
      d.primitives.push_back(p);
      d.primitive_labels.push_back("2:" + a2->primitive_labels()[i]);
    }
  }
  out.algebra = Algebra<S>::create(std::move(d));
  return out;
}

template <class S>
Bimodule<S> scalar_bimodule(const AlgebraPtr<S>& left, const AlgebraPtr<S>& right, Index d) {
  if (left->dim() != 1 || right->dim() != 1)
    throw Error(ErrorCode::InvalidModule, "scalar bimodule needs one-dimensional algebras");
  Mat<S> id = eye(*left, d);
  S cl = inverse(left->unit()(0)), cr = inverse(right->unit()(0));
  return Bimodule<S>(left, right, d, {Mat<S>(cl * id)}, {Mat<S>(cr * id)});
}

template <class S>
CanonicalBimodules<S> canonical_bimodules(const AlgebraPtr<S>& a, const Vec<S>& e) {
  const Index n = a->dim();
  CanonicalBimodules<S> out{corner(a, e), ideal_and_quotient(a, e), Bimodule<S>::regular(a), {}, {}, {}, {}, {}, {}};
  const AlgebraPtr<S>& c = out.corner.algebra;
  const Mat<S>& emb = out.corner.embedding;
  std::vector<Mat<S>> la, ra, lc, rc;
  for (Index i = 0; i < n; ++i) {
    la.push_back(a->left_matrix(a->basis_vector(i)));
    ra.push_back(a->right_matrix(a->basis_vector(i)));
  }
  for (Index i = 0; i < c->dim(); ++i) {
    lc.push_back(a->left_matrix(emb.col(i)));
    rc.push_back(a->right_matrix(emb.col(i)));
  }
  auto sub = [](const Subspace<S>& w, const std::vector<Mat<S>>& ops) {
    return restrict_ops(w, w.basis(), ops, "bimodule");
  };
  Subspace<S> ae = Subspace<S>::span(a->right_matrix(e));
  out.ae = Bimodule<S>(a, c, ae.dim(), sub(ae, la), sub(ae, rc));
  Subspace<S> ea = Subspace<S>::span(a->left_matrix(e));
  out.ea = Bimodule<S>(c, a, ea.dim(), sub(ea, lc), sub(ea, ra));
  const Subspace<S>& ideal = out.quotient.ideal;
  out.aea = Bimodule<S>(a, a, ideal.dim(), sub(ideal, la), sub(ideal, ra));
  out.inclusion = ideal.basis();
  out.projection = out.quotient.projection;
  if (out.quotient.quotient) {
    out.a_mod = Bimodule<S>(a, a, n - ideal.dim(), quotient_ops(*a, ideal, la, "bimodule"),
                            quotient_ops(*a, ideal, ra, "bimodule"));
  }
  return out;
}

#define RECOLLAB_INSTANTIATE(S)                                                                              \
  template class RightModule<S>;                                                                             \
  template class LeftModule<S>;                                                                              \
  template class Bimodule<S>;                                                                                \
  template struct TensorSpace<S>;                                                                            \
  template LeftModule<S> as_left<S>(const RightModule<S>&, const AlgebraPtr<S>&);                            \
  template bool is_homomorphism<S>(const RightModule<S>&, const RightModule<S>&, const Mat<S>&);             \
  template std::vector<Mat<S>> hom_space<S>(const RightModule<S>&, const RightModule<S>&);                   \
  template Submodule<S> submodule<S>(const RightModule<S>&, const Subspace<S>&);                             \
  template QuotientModule<S> quotient_module<S>(const RightModule<S>&, const Subspace<S>&);                  \
  template KernelCokernel<S> kernel_cokernel<S>(const RightModule<S>&, const RightModule<S>&, const Mat<S>&); \
  template Subspace<S> radical_submodule<S>(const RightModule<S>&);                                          \
  template RightModule<S> restrict_module<S>(const RightModule<S>&, const AlgebraPtr<S>&, const Mat<S>&);    \
  template Mat<S> kron<S>(const Mat<S>&, const Mat<S>&);                                                     \
  template TensorSpace<S> tensor_space<S>(const RightModule<S>&, const LeftModule<S>&);                      \
  template RightModule<S> tensor_over<S>(const RightModule<S>&, const Bimodule<S>&);                         \
  template Bimodule<S> tensor_over<S>(const Bimodule<S>&, const Bimodule<S>&);                               \
  template RightModule<S> projective_module<S>(const AlgebraPtr<S>&, const std::vector<std::size_t>&);       \
  template ProjectiveCover<S> projective_cover<S>(const RightModule<S>&);                                    \
  template FreeCover<S> free_cover<S>(const RightModule<S>&);                                                \
  template bool is_projective<S>(const RightModule<S>&);                                                     \
  template IsoResult<S> iso_test<S>(const RightModule<S>&, const RightModule<S>&, long);                     \
  template Triangular<S> triangular<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&, const Bimodule<S>&);     \
  template Bimodule<S> scalar_bimodule<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&, Index);                \
  template CanonicalBimodules<S> canonical_bimodules<S>(const AlgebraPtr<S>&, const Vec<S>&);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
