#include "recollab/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace recollab {

namespace {

template <class S>
void add_scaled(Vec<S>& out, const SparseVec<S>& v, const S& c) {
  for (const auto& [k, x] : v) out(k) += c * x;
}

template <class S>
SparseVec<S> to_sparse(const Vec<S>& v) {
  SparseVec<S> out;
  for (Index k = 0; k < v.size(); ++k)
    if (!is_zero(v(k))) out.emplace_back(k, v(k));
  return out;
}

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= 0xff;
  h *= 1099511628211ull;
  return h;
}

template <class S>
std::uint64_t content_hash(const AlgebraData<S>& d) {
  std::uint64_t h = 1469598103934665603ull;
  h = fnv(h, d.field.to_string());
  h = fnv(h, std::to_string(d.dim));
  for (const auto& l : d.labels) h = fnv(h, l);
  for (std::size_t t = 0; t < d.table.size(); ++t) {
    for (const auto& [k, x] : d.table[t]) {
      h = fnv(h, std::to_string(t) + ":" + std::to_string(k) + "=" + format_scalar(x));
    }
  }
  for (Index k = 0; k < d.unit.size(); ++k) h = fnv(h, format_scalar(d.unit(k)));
  return h;
}

}  // namespace

template <class S>
void require_same(const Algebra<S>& a, const Algebra<S>& b, const char* where) {
  if (!same_algebra(a, b)) throw Error(ErrorCode::AlgebraMismatch, std::string(where) + ": algebras differ");
}

template <class S>
Algebra<S>::Algebra(AlgebraData<S> data) : d_(std::move(data)) {
  hash_ = content_hash(d_);
  projectives_.resize(d_.primitives.size());
}

template <class S>
AlgebraPtr<S> Algebra<S>::create(AlgebraData<S> d) {
  const Index n = d.dim;
  if (n < 1) throw Error(ErrorCode::InvalidAlgebra, "algebra dimension must be at least 1");
  if (static_cast<Index>(d.table.size()) != n * n)
    throw Error(ErrorCode::InvalidAlgebra, "structure table must have dim^2 entries");
  if (d.unit.size() != n) throw Error(ErrorCode::InvalidAlgebra, "unit has wrong length");
  if (d.labels.empty()) {
    for (Index i = 0; i < n; ++i) d.labels.push_back("b" + std::to_string(i));
  }
  if (static_cast<Index>(d.labels.size()) != n) throw Error(ErrorCode::InvalidAlgebra, "label count differs from dim");
  for (auto& entry : d.table) {
    std::sort(entry.begin(), entry.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec<S> merged;
    for (auto& [k, x] : entry) {
      if (k < 0 || k >= n) throw Error(ErrorCode::InvalidAlgebra, "structure constant index out of range");
      if (!merged.empty() && merged.back().first == k) {
        merged.back().second += x;
      } else {
        merged.emplace_back(k, x);
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& t) { return is_zero(t.second); }),
                 merged.end());
    entry = std::move(merged);
  }
  if (d.radical && d.radical->rows() != n) throw Error(ErrorCode::InvalidAlgebra, "radical basis has wrong length");
  if (d.primitive_labels.size() != d.primitives.size()) {
    d.primitive_labels.clear();
    for (std::size_t i = 0; i < d.primitives.size(); ++i) d.primitive_labels.push_back("p" + std::to_string(i));
  }

  auto a = std::make_shared<Algebra<S>>(std::move(d));
  const auto& data = a->d_;

  for (Index j = 0; j < n; ++j) {
    Vec<S> bj = a->basis_vector(j);
    if (a->multiply(data.unit, bj) != bj || a->multiply(bj, data.unit) != bj)
      throw Error(ErrorCode::InvalidAlgebra, "unit fails on basis element " + data.labels[static_cast<std::size_t>(j)]);
  }
  const auto& gens = a->generators();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index g : gens) {
        Vec<S> lhs = a->zero();
        for (const auto& [k, x] : a->product(i, j)) add_scaled(lhs, a->product(k, g), x);
        Vec<S> rhs = a->zero();
        for (const auto& [k, x] : a->product(j, g)) add_scaled(rhs, a->product(i, k), x);
        if (lhs != rhs)
          throw Error(ErrorCode::InvalidAlgebra, "associativity fails on (" + data.labels[static_cast<std::size_t>(i)] +
                                                     ", " + data.labels[static_cast<std::size_t>(j)] + ", " +
                                                     data.labels[static_cast<std::size_t>(g)] + ")");
      }
    }
  }

  if (!data.primitives.empty()) {
    Vec<S> sum = a->zero();
    for (std::size_t i = 0; i < data.primitives.size(); ++i) {
      const Vec<S>& p = data.primitives[i];
      if (p.size() != n) throw Error(ErrorCode::NotSplitBasic, "primitive idempotent has wrong length");
      sum += p;
      for (std::size_t j = 0; j < data.primitives.size(); ++j) {
        Vec<S> pq = a->multiply(p, data.primitives[j]);
        Vec<S> expect = i == j ? p : a->zero();
        if (is_zero<S>(p) || pq != expect)
          throw Error(ErrorCode::NotSplitBasic, "listed idempotents are not nonzero orthogonal idempotents");
      }
    }
    if (sum != data.unit) throw Error(ErrorCode::NotSplitBasic, "listed idempotents do not sum to the unit");
    if (a->has_radical()) {
      Index top = n - a->radical().dim();
      if (top != static_cast<Index>(data.primitives.size()))
        throw Error(ErrorCode::NotSplitBasic, "A/rad has dimension " + std::to_string(top) + " but " +
                                                  std::to_string(data.primitives.size()) +
                                                  " primitive idempotents were given; algebra is not split basic");
    }
  } else if (a->has_radical() && a->radical().dim() == n - 1) {
    AlgebraData<S> local = data;
    local.primitives.push_back(local.unit);
    local.primitive_labels.push_back("1");
    return create(std::move(local));
  }
  return a;
}

template <class S>
Vec<S> Algebra<S>::zero() const {
  return Vec<S>::Constant(d_.dim, scalar(0));
}

template <class S>
Vec<S> Algebra<S>::basis_vector(Index i) const {
  Vec<S> v = zero();
  v(i) = scalar(1);
  return v;
}

template <class S>
Vec<S> Algebra<S>::multiply(const Vec<S>& x, const Vec<S>& y) const {
  Vec<S> out = zero();
  for (Index i = 0; i < d_.dim; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < d_.dim; ++j) {
      if (is_zero(y(j))) continue;
      add_scaled(out, product(i, j), S(x(i) * y(j)));
    }
  }
  return out;
}

template <class S>
Mat<S> Algebra<S>::left_matrix(const Vec<S>& x) const {
  Mat<S> m = Mat<S>::Constant(d_.dim, d_.dim, scalar(0));
  for (Index i = 0; i < d_.dim; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < d_.dim; ++j)
      for (const auto& [k, c] : product(i, j)) m(k, j) += x(i) * c;
  }
  return m;
}

template <class S>
Mat<S> Algebra<S>::right_matrix(const Vec<S>& x) const {
  Mat<S> m = Mat<S>::Constant(d_.dim, d_.dim, scalar(0));
  for (Index i = 0; i < d_.dim; ++i) {
    if (is_zero(x(i))) continue;
    for (Index j = 0; j < d_.dim; ++j)
      for (const auto& [k, c] : product(j, i)) m(k, j) += x(i) * c;
  }
  return m;
}

template <class S>
bool Algebra<S>::is_idempotent(const Vec<S>& e) const {
  return e.size() == d_.dim && multiply(e, e) == e;
}

template <class S>
bool Algebra<S>::has_radical() const {
  return d_.radical.has_value() || d_.field.is_rational();
}

template <class S>
const Subspace<S>& Algebra<S>::radical() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (radical_) return *radical_;
  if (d_.radical) {
    radical_ = Subspace<S>::span(*d_.radical);
    return *radical_;
  }
  if (!d_.field.is_rational())
    throw Error(ErrorCode::UnsupportedField,
                "Jacobson radical over " + d_.field.to_string() + " needs a quiver presentation");
  // Characteristic zero: the radical is the kernel of the trace form of the
  // regular representation, tr(L(b_i b_j)).
  const Index n = d_.dim;
  Vec<S> traces(n);
  for (Index k = 0; k < n; ++k) {
    S t = scalar(0);
    for (Index j = 0; j < n; ++j)
      for (const auto& [m, c] : product(k, j))
        if (m == j) t += c;
    traces(k) = t;
  }
  Mat<S> gram(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      S g = scalar(0);
      for (const auto& [k, c] : product(i, j)) g += c * traces(k);
      gram(i, j) = g;
    }
  radical_ = Subspace<S>::span(kernel_basis(gram));
  return *radical_;
}

template <class S>
const std::vector<Vec<S>>& Algebra<S>::primitives() const {
  if (d_.primitives.empty())
    throw Error(ErrorCode::NotSplitBasic, "no complete set of primitive idempotents is known for this algebra");
  return d_.primitives;
}

template <class S>
const ProjectiveSummand<S>& Algebra<S>::projective(std::size_t i) const {
  const auto& prims = primitives();
  std::lock_guard<std::mutex> lock(mu_);
  if (projectives_.at(i)) return *projectives_[i];
  auto ps = std::make_unique<ProjectiveSummand<S>>();
  Mat<S> span = left_matrix(prims[i]);
  ps->space = Subspace<S>::span(span);
  ps->basis = ps->space.basis();
  ps->action.reserve(static_cast<std::size_t>(d_.dim));
  for (Index l = 0; l < d_.dim; ++l) {
    Mat<S> moved = right_matrix(basis_vector(l)) * ps->basis;
    ps->action.push_back(ps->space.coordinates(moved));
  }
  projectives_[i] = std::move(ps);
  return *projectives_[i];
}

template <class S>
const std::vector<Index>& Algebra<S>::generators() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (generators_) return *generators_;
  std::vector<Index> gens;
  Subspace<S> reached(d_.dim);
  reached.insert(d_.unit);
  for (Index i = 0; i < d_.dim && reached.dim() < d_.dim; ++i) {
    if (reached.contains(basis_vector(i))) continue;
    gens.push_back(i);
    std::vector<Vec<S>> frontier;
    for (Index r = 0; r < reached.dim(); ++r) frontier.push_back(reached.basis_vector(r));
    reached.insert(basis_vector(i));
    frontier.push_back(basis_vector(i));
    while (!frontier.empty()) {
      std::vector<Vec<S>> next;
      for (const auto& v : frontier) {
        for (Index g : gens) {
          Vec<S> w = zero();
          for (Index k = 0; k < d_.dim; ++k)
            if (!is_zero(v(k))) add_scaled(w, product(k, g), v(k));
          if (reached.insert(w)) next.push_back(w);
        }
      }
      frontier = std::move(next);
    }
  }
  if (reached.dim() < d_.dim) throw Error(ErrorCode::Internal, "basis does not generate the algebra");
  generators_ = std::move(gens);
  return *generators_;
}

template <class S>
std::string Algebra<S>::format(const Vec<S>& x) const {
  std::ostringstream os;
  bool first = true;
  for (Index i = 0; i < x.size(); ++i) {
    if (is_zero(x(i))) continue;
    std::string c = format_scalar(x(i));
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (c != "1") os << c << "*";
    os << label(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

template <class S>
void check_idempotent(const Algebra<S>& a, const Vec<S>& e) {
  if (e.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "idempotent has wrong length");
  if (is_zero<S>(e)) throw Error(ErrorCode::NotIdempotent, "zero is not an admissible idempotent");
  if (!a.is_idempotent(e)) throw Error(ErrorCode::NotIdempotent, a.format(e) + " is not idempotent");
}

template <class S>
AlgebraPtr<S> opposite(const AlgebraPtr<S>& a) {
  AlgebraData<S> d = a->data();
  const Index n = d.dim;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d.table[static_cast<std::size_t>(i * n + j)] = a->product(j, i);
  return Algebra<S>::create(std::move(d));
}

template <class S>
Vec<S> tensor_element(const Vec<S>& x, const Vec<S>& y) {
  Vec<S> out(x.size() * y.size());
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = 0; j < y.size(); ++j) out(i * y.size() + j) = x(i) * y(j);
  return out;
}

template <class S>
AlgebraPtr<S> tensor(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b) {
  if (a->field() != b->field())
    throw Error(ErrorCode::FieldMismatch, "tensor of algebras over " + a->field().to_string() + " and " +
                                              b->field().to_string());
  const Index na = a->dim(), nb = b->dim(), n = na * nb;
  AlgebraData<S> d;
  d.field = a->field();
  d.dim = n;
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j) {
      if (na == 1) d.labels.push_back(b->label(j));
      else if (nb == 1) d.labels.push_back(a->label(i));
      else d.labels.push_back(a->label(i) + "|" + b->label(j));
    }
  d.table.resize(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j)
      for (Index k = 0; k < na; ++k)
        for (Index l = 0; l < nb; ++l) {
          SparseVec<S> prod;
          for (const auto& [p, x] : a->product(i, k))
            for (const auto& [q, y] : b->product(j, l)) prod.emplace_back(p * nb + q, x * y);
          d.table[static_cast<std::size_t>((i * nb + j) * n + (k * nb + l))] = std::move(prod);
        }
  d.unit = tensor_element<S>(a->unit(), b->unit());
  if (a->has_radical() && b->has_radical()) {
    // Over a perfect field A/rad (x) B/rad is semisimple, so the radical of
    // the tensor product is rad A (x) B + A (x) rad B.
    Subspace<S> rad(n);
    const Subspace<S>& ra = a->radical();
    const Subspace<S>& rb = b->radical();
    for (Index r = 0; r < ra.dim(); ++r)
      for (Index j = 0; j < nb; ++j) rad.insert(tensor_element<S>(ra.basis_vector(r), b->basis_vector(j)));
    for (Index i = 0; i < na; ++i)
      for (Index r = 0; r < rb.dim(); ++r) rad.insert(tensor_element<S>(a->basis_vector(i), rb.basis_vector(r)));
    d.radical = rad.basis();
    if (rad.dim() == 0) d.radical = Mat<S>(n, 0);
  }
  if (a->has_primitives() && b->has_primitives()) {
    for (std::size_t i = 0; i < a->primitives().size(); ++i)
      for (std::size_t j = 0; j < b->primitives().size(); ++j) {
        d.primitives.push_back(tensor_element<S>(a->primitives()[i], b->primitives()[j]));
        d.primitive_labels.push_back(a->primitive_labels()[i] + "|" + b->primitive_labels()[j]);
      }
  }
  return Algebra<S>::create(std::move(d));
}

template <class S>
AlgebraPtr<S> enveloping(const AlgebraPtr<S>& a) {
  return tensor(opposite(a), a);
}

template <class S>
Corner<S> corner(const AlgebraPtr<S>& a, const Vec<S>& e) {
  check_idempotent(*a, e);
  Mat<S> sandwich = a->left_matrix(e) * a->right_matrix(e);
  Subspace<S> w = Subspace<S>::span(sandwich);
  Mat<S> basis = w.basis();
  const Index m = w.dim();
  AlgebraData<S> d;
  d.field = a->field();
  d.dim = m;
  for (Index i = 0; i < m; ++i) {
    std::string label = "c" + std::to_string(i);
    Index hit = -1;
    for (Index k = 0; k < a->dim(); ++k) {
      if (is_zero(basis(k, i))) continue;
      if (hit >= 0 || basis(k, i) != a->scalar(1)) {
        hit = -2;
        break;
      }
      hit = k;
    }
    if (hit >= 0) label = a->label(hit);
    d.labels.push_back(label);
  }
  d.table.resize(static_cast<std::size_t>(m * m));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      d.table[static_cast<std::size_t>(i * m + j)] =
          to_sparse<S>(w.coordinates(a->multiply(basis.col(i), basis.col(j))));
  d.unit = w.coordinates(e);
  if (a->has_radical()) {
    const Subspace<S>& rad = a->radical();
    Subspace<S> r(m);
    for (Index k = 0; k < rad.dim(); ++k) r.insert(w.coordinates(Vec<S>(sandwich * rad.basis_vector(k))));
    d.radical = r.dim() ? r.basis() : Mat<S>(m, 0);
  }
  if (a->has_primitives()) {
    Vec<S> sum = a->zero();
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < a->primitives().size(); ++i) {
      const Vec<S>& p = a->primitives()[i];
      if (a->multiply(e, p) == p && a->multiply(p, e) == p) {
        inside.push_back(i);
        sum += p;
      }
    }
    if (sum == e) {
      for (std::size_t i : inside) {
        d.primitives.push_back(w.coordinates(a->primitives()[i]));
        d.primitive_labels.push_back(a->primitive_labels()[i]);
      }
    }
  }
  return {Algebra<S>::create(std::move(d)), basis};
}

template <class S>
IdealQuotient<S> ideal_and_quotient(const AlgebraPtr<S>& a, const Vec<S>& e) {
  check_idempotent(*a, e);
  const Index n = a->dim();
  Mat<S> ea = a->left_matrix(e);
  Subspace<S> ideal(n);
  for (Index i = 0; i < n && ideal.dim() < n; ++i) ideal.insert_columns(a->left_matrix(a->basis_vector(i)) * ea);
  IdealQuotient<S> out{ideal, std::nullopt, Mat<S>(0, n), Mat<S>(n, 0)};
  std::vector<Index> comp = ideal.complement();
  const Index q = static_cast<Index>(comp.size());
  if (q == 0) return out;
  out.projection = Mat<S>(q, n);
  for (Index j = 0; j < n; ++j) out.projection.col(j) = ideal.quotient_coordinates(a->basis_vector(j));
  out.lift = Mat<S>::Constant(n, q, a->scalar(0));
  for (Index i = 0; i < q; ++i) out.lift(comp[static_cast<std::size_t>(i)], i) = a->scalar(1);

  AlgebraData<S> d;
  d.field = a->field();
  d.dim = q;
  for (Index c : comp) d.labels.push_back(a->label(c));
  d.table.resize(static_cast<std::size_t>(q * q));
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < q; ++j) {
      Vec<S> prod = a->zero();
      add_scaled(prod, a->product(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)]), a->scalar(1));
      d.table[static_cast<std::size_t>(i * q + j)] = to_sparse<S>(ideal.quotient_coordinates(prod));
    }
  d.unit = ideal.quotient_coordinates(a->unit());
  if (a->has_radical()) {
    const Subspace<S>& rad = a->radical();
    Subspace<S> r(q);
    for (Index k = 0; k < rad.dim(); ++k) r.insert(ideal.quotient_coordinates(rad.basis_vector(k)));
    d.radical = r.dim() ? r.basis() : Mat<S>(q, 0);
  }
  if (a->has_primitives()) {
    for (std::size_t i = 0; i < a->primitives().size(); ++i) {
      Vec<S> img = ideal.quotient_coordinates(a->primitives()[i]);
      if (is_zero<S>(img)) continue;
      d.primitives.push_back(img);
      d.primitive_labels.push_back(a->primitive_labels()[i]);
    }
  }
  out.quotient = Algebra<S>::create(std::move(d));
  return out;
}

template <class S>
Subspace<S> center(const Algebra<S>& a) {
  const Index n = a.dim();
  const auto& gens = a.generators();
  Mat<S> stacked(n * static_cast<Index>(std::max<std::size_t>(gens.size(), 1)), n);
  stacked.setConstant(a.scalar(0));
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Vec<S> b = a.basis_vector(gens[g]);
    stacked.block(static_cast<Index>(g) * n, 0, n, n) = a.right_matrix(b) - a.left_matrix(b);
  }
  return Subspace<S>::span(kernel_basis(stacked));
}

template <class S>
Subspace<S> commutator_subspace(const Algebra<S>& a) {
  const Index n = a.dim();
  Subspace<S> w(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Vec<S> c = a.zero();
      add_scaled(c, a.product(i, j), a.scalar(1));
      add_scaled(c, a.product(j, i), a.scalar(-1));
      w.insert(c);
    }
  return w;
}

template <class S>
AlgebraPtr<S> ground_field(const FieldTag& field) {
  AlgebraData<S> d;
  d.field = field;
  d.dim = 1;
  d.labels = {"1"};
  d.table = {SparseVec<S>{{0, make_scalar<S>(field, 1)}}};
  d.unit = Vec<S>::Constant(1, make_scalar<S>(field, 1));
  d.radical = Mat<S>(1, 0);
  d.primitives = {d.unit};
  d.primitive_labels = {"1"};
  return Algebra<S>::create(std::move(d));
}

#define RECOLLAB_INSTANTIATE(S)                                                        \
  template class Algebra<S>;                                                           \
  template void require_same<S>(const Algebra<S>&, const Algebra<S>&, const char*);    \
  template void check_idempotent<S>(const Algebra<S>&, const Vec<S>&);                 \
  template AlgebraPtr<S> opposite<S>(const AlgebraPtr<S>&);                            \
  template AlgebraPtr<S> tensor<S>(const AlgebraPtr<S>&, const AlgebraPtr<S>&);        \
  template AlgebraPtr<S> enveloping<S>(const AlgebraPtr<S>&);                          \
  template Vec<S> tensor_element<S>(const Vec<S>&, const Vec<S>&);                     \
  template Corner<S> corner<S>(const AlgebraPtr<S>&, const Vec<S>&);                   \
  template IdealQuotient<S> ideal_and_quotient<S>(const AlgebraPtr<S>&, const Vec<S>&); \
  template Subspace<S> center<S>(const Algebra<S>&);                                   \
  template Subspace<S> commutator_subspace<S>(const Algebra<S>&);                      \
  template AlgebraPtr<S> ground_field<S>(const FieldTag&);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
