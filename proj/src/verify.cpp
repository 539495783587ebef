#include "recollab/verify.hpp"

#include <algorithm>

namespace recollab {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::ConsistentVacuous: return "ConsistentVacuous";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::Falsified: return "FALSIFIED";
  }
  return "?";
}

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
GradedDims hh_or_zero(const std::optional<AlgebraPtr<S>>& a, int n_max, bool cohomology) {
  if (!a) return {0, std::vector<Index>(static_cast<std::size_t>(n_max + 1), 0)};
  return cohomology ? hochschild_cohomology(*a, n_max) : hochschild_homology(*a, n_max);
}

template <class S>
bool term_matches(const LesReport<S>& les, const std::string& label, const GradedDims& want, int n_max,
                  std::string& detail) {
  for (int n = 0; n <= n_max; ++n) {
    const std::size_t i = les.find(label, n);
    if (i == std::string::npos) continue;
    if (les.terms[i].dim != want.at(n)) {
      detail = label + " in degree " + std::to_string(n) + ": " + std::to_string(les.terms[i].dim) + " vs " +
               std::to_string(want.at(n));
      return false;
    }
  }
  return true;
}

template <class S>
ShortExact<S> bimodule_sequence(const CanonicalBimodules<S>& p, const Diagonal<S>& diag) {
  return {p.aea.as_right_module(diag.env), diag.right, p.a_mod->as_right_module(diag.env), p.inclusion, p.projection};
}

template <class S>
CochainComplex<S> direct_sum(const CochainComplex<S>& x, const CochainComplex<S>& y) {
  CochainComplex<S> out{x.field, x.lo, {}, {}};
  for (int n = x.lo; n <= x.hi(); ++n) out.dims.push_back(x.dim(n) + y.dim(n));
  for (int n = x.lo; n < x.hi(); ++n) out.d.push_back(recollab::direct_sum<S>(x.diff(n), y.diff(n)));
  return out;
}

}  // namespace

template <class S>
KellerReport<S> keller_homology(const RecollementData<S>& r, int n_max) {
  const auto& p = r.bimodules();
  const auto a = r.a;
  KellerReport<S> out;
  out.hh = hochschild_homology(a, n_max);
  out.hh_corner = hochschild_homology(p.corner.algebra, n_max);
  out.hh_quotient = hh_or_zero(p.quotient.quotient, n_max, false);
  if (!p.a_mod) {
    out.degenerate = true;
    out.checks.add("HH_*(A) = HH_*(eAe)", out.hh == out.hh_corner);
  } else {
    auto diag = diagonal(a);
    out.les = les_tensor(bimodule_sequence(p, diag), diag.left, n_max, LesLabels{"Tor(AeA,A)", "HH(A)", "Tor(A/AeA,A)"});
    std::string detail;
    bool ok = term_matches(out.les, "Tor(AeA,A)", out.hh_corner, n_max, detail);
    out.checks.add("Tor(AeA, A) = HH_*(eAe)", ok, detail);
    detail.clear();
    ok = term_matches(out.les, "HH(A)", out.hh, n_max, detail);
    out.checks.add("middle column is HH_*(A)", ok, detail);
    detail.clear();
    ok = term_matches(out.les, "Tor(A/AeA,A)", out.hh_quotient, n_max, detail);
    out.checks.add("Tor(A/AeA, A) = HH_*(A/AeA)", ok, detail);
    out.checks.add("sequence is exact", out.les.exact);
  }
  if (r.perfect == Perfectness::Verified) {
    bool add = true;
    for (int n = 0; n <= n_max; ++n) add = add && out.hh.at(n) == out.hh_corner.at(n) + out.hh_quotient.at(n);
    out.additive = add;
  }
  return out;
}

template <class S>
bool CohomologyLesReport<S>::ok() const {
  if (!checks.ok()) return false;
  return std::all_of(sequences.begin(), sequences.end(), [](const LesReport<S>& s) { return s.exact; });
}

template <class S>
CohomologyLesReport<S> cohomology_les(const RecollementData<S>& r, int n_max) {
  const auto& p = r.bimodules();
  const auto a = r.a;
  const FieldTag& field = a->field();
  CohomologyLesReport<S> out;
  out.hh = hochschild_cohomology(a, n_max);
  out.hh_corner = hochschild_cohomology(p.corner.algebra, n_max);
  out.hh_quotient = hh_or_zero(p.quotient.quotient, n_max, true);
  if (!p.a_mod) {
    out.degenerate = true;
    out.checks.add("HH^*(A) = HH^*(eAe)", out.hh == out.hh_corner);
    return out;
  }
  auto diag = diagonal(a);
  auto ses = bimodule_sequence(p, diag);
  std::string detail;

  auto s1 = les_covariant(ses, diag.right, n_max, LesLabels{"Ext(A,AeA)", "HH(A)", "Ext(A,A/AeA)"});
  out.checks.add("Ext(A, A/AeA) = HH^*(A/AeA)", term_matches(s1, "Ext(A,A/AeA)", out.hh_quotient, n_max, detail), detail);
  detail.clear();
  out.checks.add("Ext(A, A) = HH^*(A)", term_matches(s1, "HH(A)", out.hh, n_max, detail), detail);
  detail.clear();
  out.sequences.push_back(std::move(s1));

  auto s2 = les_contravariant(ses, diag.right, n_max, LesLabels{"Ext(A/AeA,A)", "HH(A)", "Ext(AeA,A)"});
  out.checks.add("Ext(AeA, A) = HH^*(eAe)", term_matches(s2, "Ext(AeA,A)", out.hh_corner, n_max, detail), detail);
  detail.clear();
  out.sequences.push_back(std::move(s2));

  // Hom(P'', AeA) -> Hom(P, A) through Hom(P'', A), P = P' (+) P'' from the horseshoe.
  const int top = n_max + 1;
  auto h = horseshoe(ses.left, ses.middle, ses.right, ses.f, ses.g, top);
  auto k = hom_complex(h.right, ses.left, top);
  auto c = hom_complex(h.middle, ses.middle, top);
  auto d1 = hom_complex(h.left, ses.middle, top);
  auto d2 = hom_complex(h.middle, ses.right, top);
  auto post = hom_postcompose(h.right, ses.left, ses.middle, ses.f, top);
  auto proj = hom_postcompose(h.middle, ses.middle, ses.right, ses.g, top);
  CochainMap<S> f{0, {}}, g{0, {}};
  for (int n = 0; n <= top; ++n) {
    const Index pd = d1.dim(n), cd = c.dim(n);
    f.f.push_back(vstack<S>(zmat<S>(field, pd, k.dim(n)), post.at(n, cd - pd, k.dim(n), field)));
    g.f.push_back(vstack<S>(hstack<S>(eye<S>(field, pd), zmat<S>(field, pd, cd - pd)), proj.at(n, d2.dim(n), cd, field)));
  }
  auto q = quotient_complex(c, f);
  auto s3 = les_from_complexes(k, c, q.complex, f, q.projection, 0, n_max,
                               LesLabels{"Ext(A/AeA,AeA)", "HH(A)", "HH(A/AeA)+HH(eAe)"}, true, false);
  auto dsum = direct_sum(d1, d2);
  bool quasi = true;
  for (int n = 0; n <= n_max && quasi; ++n) {
    auto hq = cohomology(q.complex, n);
    auto hd = cohomology(dsum, n);
    Mat<S> m = g.f[static_cast<std::size_t>(n)] * q.section.f[static_cast<std::size_t>(n)];
    Mat<S> ind = induced_map(hq, hd, m);
    quasi = hq.dim() == hd.dim() && (hq.dim() == 0 || rank(ind) == hq.dim());
    if (!quasi) detail = "degree " + std::to_string(n);
  }
  out.checks.add("quotient is Hom(P', A) + Hom(P, A/AeA)", quasi, detail);
  detail.clear();
  GradedDims sum{0, {}};
  for (int n = 0; n <= n_max; ++n) sum.dims.push_back(out.hh_quotient.at(n) + out.hh_corner.at(n));
  out.checks.add("third column is HH^*(A/AeA) + HH^*(eAe)", term_matches(s3, "HH(A/AeA)+HH(eAe)", sum, n_max, detail),
                 detail);
  out.sequences.push_back(std::move(s3));
  return out;
}

namespace {

template <class S>
EquivalenceReport equivalence(const RecollementData<S>& r, int cutoff, bool hochschild) {
  EquivalenceReport out;
  out.invariant = hochschild ? "hochschild_dimension" : "global_dimension";
  out.applies = !hochschild || r.perfect == Perfectness::Verified;
  auto side = [&](const std::string& name, const AlgebraPtr<S>& x) {
    EquivalenceReport::Side s{name, {}, {}};
    if (hochschild) {
      s.bound = hochschild_dimension(x, cutoff);
      if (!s.bound.finite)
        if (auto w = periodic_syzygy(diagonal(x).right, cutoff)) s.witness = name + " over " + name + "^e: " + *w;
    } else {
      s.bound = global_dimension(x, cutoff);
      for (std::size_t i = 0; !s.bound.finite && s.witness.empty() && i < x->primitives().size(); ++i)
        if (auto w = periodic_syzygy(RightModule<S>::simple(x, i), cutoff))
          s.witness = "simple " + x->primitive_labels()[i] + " of " + name + ": " + *w;
    }
    return s;
  };
  out.sides.push_back(side("A", r.a));
  if (r.a1) out.sides.push_back(side("A1", *r.a1));
  if (r.a2) out.sides.push_back(side("A2", *r.a2));

  const auto& whole = out.sides.front();
  bool sides_finite = true, any_side_finite = false, side_refuted = false;
  for (std::size_t i = 1; i < out.sides.size(); ++i) {
    sides_finite = sides_finite && out.sides[i].bound.finite;
    any_side_finite = any_side_finite || out.sides[i].bound.finite;
    side_refuted = side_refuted || !out.sides[i].witness.empty();
  }
  const bool whole_refuted = !whole.witness.empty();
  const bool contradiction = (whole.bound.finite && side_refuted) || (sides_finite && whole_refuted);
  if (contradiction && out.applies) {
    out.verdict = Verdict::Falsified;
    out.note = "a finite dimension on one side of the equivalence and a proven infinite one on the other";
  } else if (whole.bound.finite && sides_finite) {
    out.verdict = Verdict::Consistent;
  } else if (!whole.bound.finite && !any_side_finite) {
    out.verdict = Verdict::ConsistentVacuous;
  } else if (!whole.bound.finite && !sides_finite) {
    out.verdict = Verdict::Consistent;
  } else {
    out.verdict = Verdict::Inconclusive;
    out.note = out.applies ? "finite on one side only; raise the cutoff"
                           : "the recollement is not known to be perfect, so the equivalence is not guaranteed here";
  }
  return out;
}

}  // namespace

template <class S>
EquivalenceReport smoothness_equivalence(const RecollementData<S>& r, int cutoff) {
  return equivalence(r, cutoff, true);
}

template <class S>
EquivalenceReport gldim_equivalence(const RecollementData<S>& r, int cutoff) {
  return equivalence(r, cutoff, false);
}

template <class S>
RightModule<S> cohomology_module(const ProjectiveComplex<S>& x, int n) {
  if (n < x.lo || n > x.hi()) return RightModule<S>::zero(x.algebra);
  auto kc = kernel_cokernel(x.module(n), x.module(n + 1), x.diff(n));
  const auto& ker = kc.kernel;
  Mat<S> image = x.diff(n - 1);
  Subspace<S> w(ker.module.dim());
  for (Index j = 0; j < image.cols(); ++j) {
    auto c = solve(ker.inclusion, Vec<S>(image.col(j)));
    if (!c) throw Error(ErrorCode::Internal, "cohomology_module: boundary outside the kernel");
    w.insert(*c);
  }
  return quotient_module(ker.module, w).module;
}

template <class S>
DualityReport duality_roundtrip(const ProjectiveComplex<S>& x, const AlgebraPtr<S>& opposite_algebra) {
  auto y = dualize_perfect(x, opposite_algebra);
  auto z = dualize_perfect(y, x.algebra);
  DualityReport out;
  out.lo = x.lo;
  out.dual_lo = y.lo;
  out.dims = cohomology_dims(x);
  out.dual_dims = cohomology_dims(y);
  out.double_dual_dims = cohomology_dims(z);
  out.dims_equal = z.lo == x.lo && out.dims == out.double_dual_dims;
  auto h = cohomology_module(x, 0), hz = cohomology_module(z, 0);
  if (h.dim() != hz.dim())
    out.h0 = IsoVerdict::NotIsomorphic;
  else
    out.h0 = h.dim() == 0 ? IsoVerdict::Isomorphic : iso_test(h, hz).verdict;
  return out;
}

#define RECOLLAB_INSTANTIATE(S)                                                                              \
  template struct KellerReport<S>;                                                                           \
  template struct CohomologyLesReport<S>;                                                                    \
  template KellerReport<S> keller_homology<S>(const RecollementData<S>&, int);                               \
  template CohomologyLesReport<S> cohomology_les<S>(const RecollementData<S>&, int);                         \
  template EquivalenceReport smoothness_equivalence<S>(const RecollementData<S>&, int);                      \
  template EquivalenceReport gldim_equivalence<S>(const RecollementData<S>&, int);                           \
  template RightModule<S> cohomology_module<S>(const ProjectiveComplex<S>&, int);                            \
  template DualityReport duality_roundtrip<S>(const ProjectiveComplex<S>&, const AlgebraPtr<S>&);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
