#include "recollab/les.hpp"

#include <algorithm>

namespace recollab {

namespace {

template <class S>
Mat<S> zmat(const FieldTag& f, Index r, Index c) {
  return Mat<S>::Constant(r, c, make_scalar<S>(f, 0));
}

template <class S>
Mat<S> eye(const FieldTag& f, Index n) {
  Mat<S> m = zmat<S>(f, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = make_scalar<S>(f, 1);
  return m;
}

template <class S>
Index mat_rank(const Mat<S>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rank(m);
}

template <class S>
bool product_zero(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return true;
  return is_zero<S>(Mat<S>(a * b));
}

// Some X with m X = b column by column; throws if a column is not in the image.
template <class S>
Mat<S> preimage(const FieldTag& field, const Mat<S>& m, const Mat<S>& b, const char* what) {
  if (b.cols() == 0 || m.cols() == 0) {
    if (b.cols() && !is_zero<S>(b)) throw Error(ErrorCode::Internal, what);
    return zmat<S>(field, m.cols(), b.cols());
  }
  auto x = solve<S>(m, b);
  if (!x) throw Error(ErrorCode::Internal, what);
  return *x;
}

template <class S>
void check_ses(const CochainComplex<S>& k, const CochainComplex<S>& c, const CochainComplex<S>& q,
               const CochainMap<S>& f, const CochainMap<S>& g) {
  const FieldTag& field = c.field;
  const int lo = std::min({k.lo, c.lo, q.lo}), hi = std::max({k.hi(), c.hi(), q.hi()});
  auto fail = [](const std::string& why, int n) {
    return Error(ErrorCode::InputNotExact, why + " in degree " + std::to_string(n));
  };
  for (int n = lo; n <= hi; ++n) {
    const Mat<S> fn = f.at(n, c.dim(n), k.dim(n), field), gn = g.at(n, q.dim(n), c.dim(n), field);
    if (fn.rows() != c.dim(n) || fn.cols() != k.dim(n) || gn.rows() != q.dim(n) || gn.cols() != c.dim(n))
      throw fail("maps have the wrong shape", n);
    if (mat_rank<S>(fn) != k.dim(n)) throw fail("first map not injective", n);
    if (mat_rank<S>(gn) != q.dim(n)) throw fail("second map not surjective", n);
    if (k.dim(n) + q.dim(n) != c.dim(n)) throw fail("dimensions do not add up", n);
    if (!product_zero<S>(gn, fn)) throw fail("composite not zero", n);
    const Mat<S> f1 = f.at(n + 1, c.dim(n + 1), k.dim(n + 1), field);
    const Mat<S> g1 = g.at(n + 1, q.dim(n + 1), c.dim(n + 1), field);
    const Mat<S> lhs_f = c.diff(n) * fn, rhs_f = f1 * k.diff(n);
    const Mat<S> lhs_g = q.diff(n) * gn, rhs_g = g1 * c.diff(n);
    if ((lhs_f.size() && lhs_f != rhs_f) || (lhs_g.size() && lhs_g != rhs_g)) throw fail("not a chain map", n);
  }
}

}  // namespace

template <class S>
std::size_t LesReport<S>::find(const std::string& label, int degree) const {
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (terms[i].label == label && terms[i].degree == degree) return i;
  return static_cast<std::size_t>(-1);
}

template <class S>
LesReport<S> les_from_complexes(const CochainComplex<S>& k, const CochainComplex<S>& c, const CochainComplex<S>& q,
                                const CochainMap<S>& f, const CochainMap<S>& g, int lo, int hi, const LesLabels& labels,
                                bool lower_closed, bool upper_closed) {
  check_ses(k, c, q, f, g);
  const FieldTag& field = c.field;
  LesReport<S> r;
  std::vector<Cohomology<S>> hk, hc, hq;
  for (int n = lo; n <= hi + 1; ++n) {
    hk.push_back(cohomology(k, n));
    hc.push_back(cohomology(c, n));
    hq.push_back(cohomology(q, n));
  }
  for (int n = lo; n <= hi; ++n) {
    const std::size_t i = static_cast<std::size_t>(n - lo);
    r.terms.push_back({labels.k, n, hk[i].dim()});
    r.terms.push_back({labels.c, n, hc[i].dim()});
    r.terms.push_back({labels.q, n, hq[i].dim()});
    r.maps.push_back(induced_map(hk[i], hc[i], f.at(n, c.dim(n), k.dim(n), field)));
    r.map_kinds.push_back("induced");
    r.maps.push_back(induced_map(hc[i], hq[i], g.at(n, q.dim(n), c.dim(n), field)));
    r.map_kinds.push_back("induced");
    if (n == hi) break;
    // Snake: lift through g, apply d, pull back along f.
    const Cohomology<S>& next = hk[i + 1];
    Mat<S> delta = zmat<S>(field, next.dim(), hq[i].dim());
    if (hq[i].dim() && next.dim()) {
      Mat<S> y = preimage(field, g.at(n, q.dim(n), c.dim(n), field), hq[i].reps, "connecting map: lift failed");
      Mat<S> w = c.diff(n) * y;
      Mat<S> x = preimage(field, f.at(n + 1, c.dim(n + 1), k.dim(n + 1), field), w, "connecting map: pullback failed");
      delta = next.coordinates(x);
    }
    r.maps.push_back(std::move(delta));
    r.map_kinds.push_back("connecting");
  }
  r.exact = !r.terms.empty();
  for (std::size_t t = 0; t < r.terms.size(); ++t) {
    typename LesReport<S>::Joint j;
    j.term = t;
    const bool has_in = t > 0, has_out = t < r.maps.size();
    j.checked = (has_in || lower_closed) && (has_out || upper_closed);
    if (has_in) j.rank_in = mat_rank<S>(r.maps[t - 1]);
    if (has_out) j.rank_out = mat_rank<S>(r.maps[t]);
    if (has_in && has_out) j.composes_to_zero = product_zero<S>(r.maps[t], r.maps[t - 1]);
    j.exact = j.composes_to_zero && j.rank_in + j.rank_out == r.terms[t].dim;
    if (j.checked && !j.exact) r.exact = false;
    r.joints.push_back(j);
  }
  return r;
}

template <class S>
QuotientComplex<S> quotient_complex(const CochainComplex<S>& c, const CochainMap<S>& f) {
  const FieldTag& field = c.field;
  QuotientComplex<S> out;
  out.complex.field = field;
  out.complex.lo = c.lo;
  out.projection.lo = c.lo;
  out.section.lo = c.lo;
  auto& lifts = out.section.f;
  for (int n = c.lo; n <= c.hi(); ++n) {
    const Index dn = c.dim(n);
    Subspace<S> w(dn);
    if (n >= f.lo && n < f.lo + static_cast<int>(f.f.size())) {
      const Mat<S>& fn = f.f[static_cast<std::size_t>(n - f.lo)];
      if (fn.rows() != dn) throw Error(ErrorCode::DimensionMismatch, "quotient_complex: map has the wrong shape");
      if (fn.cols()) w.insert_columns(fn);
    }
    const Index qd = dn - w.dim();
    Mat<S> proj = zmat<S>(field, qd, dn), lift = zmat<S>(field, dn, qd);
    for (Index j = 0; j < dn; ++j) {
      Vec<S> e = Vec<S>::Constant(dn, make_scalar<S>(field, 0));
      e(j) = make_scalar<S>(field, 1);
      if (qd) proj.col(j) = w.quotient_coordinates(e);
    }
    for (Index i = 0; i < qd; ++i) {
      Vec<S> e = Vec<S>::Constant(qd, make_scalar<S>(field, 0));
      e(i) = make_scalar<S>(field, 1);
      lift.col(i) = w.lift_quotient(e);
    }
    out.complex.dims.push_back(qd);
    out.projection.f.push_back(std::move(proj));
    lifts.push_back(std::move(lift));
  }
  for (int n = c.lo; n < c.hi(); ++n) {
    const std::size_t i = static_cast<std::size_t>(n - c.lo);
    out.complex.d.push_back(out.projection.f[i + 1] * c.diff(n) * lifts[i]);
  }
  return out;
}

template <class S>
LesReport<S> les_covariant(const ShortExact<S>& ses, const RightModule<S>& t, int n_max, const LesLabels& labels) {
  check_short_exact(ses.left, ses.middle, ses.right, ses.f, ses.g);
  const int top = n_max + 1;
  auto p = cached_resolution(t, top);
  auto k = hom_complex(p, ses.left, top);
  auto c = hom_complex(p, ses.middle, top);
  auto q = hom_complex(p, ses.right, top);
  auto f = hom_postcompose(p, ses.left, ses.middle, ses.f, top);
  auto g = hom_postcompose(p, ses.middle, ses.right, ses.g, top);
  return les_from_complexes(k, c, q, f, g, 0, n_max, labels, true, false);
}

template <class S>
LesReport<S> les_contravariant(const ShortExact<S>& ses, const RightModule<S>& t, int n_max, const LesLabels& labels) {
  const int top = n_max + 1;
  auto h = horseshoe(ses.left, ses.middle, ses.right, ses.f, ses.g, top);
  const FieldTag& field = t.algebra()->field();
  // Hom(P'', T) -> Hom(P, T) -> Hom(P', T); cochains on P list the P' generators first.
  auto k = hom_complex(h.right, t, top);
  auto c = hom_complex(h.middle, t, top);
  auto q = hom_complex(h.left, t, top);
  CochainMap<S> f{0, {}}, g{0, {}};
  for (int n = 0; n <= top; ++n) {
    const Index kd = k.dim(n), qd = q.dim(n);
    f.f.push_back(vstack<S>(zmat<S>(field, qd, kd), eye<S>(field, kd)));
    g.f.push_back(hstack<S>(eye<S>(field, qd), zmat<S>(field, qd, kd)));
  }
  return les_from_complexes(k, c, q, f, g, 0, n_max, labels, true, false);
}

template <class S>
LesReport<S> les_tensor(const ShortExact<S>& ses, const LeftModule<S>& t, int n_max, const LesLabels& labels) {
  const int top = n_max + 1;
  auto h = horseshoe(ses.left, ses.middle, ses.right, ses.f, ses.g, top);
  const FieldTag& field = h.middle.algebra()->field();
  auto k = tensor_complex(h.left, t, top);
  auto c = tensor_complex(h.middle, t, top);
  auto q = tensor_complex(h.right, t, top);
  CochainMap<S> f{-top, {}}, g{-top, {}};
  for (int n = -top; n <= 0; ++n) {
    const Index kd = k.dim(n), qd = q.dim(n);
    f.f.push_back(vstack<S>(eye<S>(field, kd), zmat<S>(field, qd, kd)));
    g.f.push_back(hstack<S>(zmat<S>(field, qd, kd), eye<S>(field, qd)));
  }
  auto r = les_from_complexes(k, c, q, f, g, -n_max, 0, labels, false, true);
  r.homological = true;
  for (auto& term : r.terms) term.degree = -term.degree;
  return r;
}

#define RECOLLAB_INSTANTIATE(S)                                                                                    \
  template struct LesReport<S>;                                                                                    \
  template LesReport<S> les_from_complexes<S>(const CochainComplex<S>&, const CochainComplex<S>&,                  \
                                              const CochainComplex<S>&, const CochainMap<S>&, const CochainMap<S>&, \
                                              int, int, const LesLabels&, bool, bool);                             \
  template QuotientComplex<S> quotient_complex<S>(const CochainComplex<S>&, const CochainMap<S>&);                 \
  template LesReport<S> les_covariant<S>(const ShortExact<S>&, const RightModule<S>&, int, const LesLabels&);      \
  template LesReport<S> les_contravariant<S>(const ShortExact<S>&, const RightModule<S>&, int, const LesLabels&);  \
  template LesReport<S> les_tensor<S>(const ShortExact<S>&, const LeftModule<S>&, int, const LesLabels&);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
