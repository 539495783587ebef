#include "recollab/homology.hpp"

#include <algorithm>
#include <sstream>

namespace recollab {

Index GradedDims::at(int n) const {
  if (n < lo || n > hi()) return 0;
  return dims[static_cast<std::size_t>(n - lo)];
}

std::string GradedDims::format() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < dims.size(); ++k) os << (k ? ", " : "") << dims[k];
  os << ']';
  if (lo != 0) os << "@" << lo;
  return os.str();
}

std::string DimBound::format() const {
  return (finite ? "Finite(" : "AtLeast(") + std::to_string(value) + ")";
}

template <class S>
RightModule<S> dual_module(const RightModule<S>& m, const AlgebraPtr<S>& opposite_algebra) {
  std::vector<Mat<S>> act;
  act.reserve(m.actions().size());
  for (const auto& x : m.actions()) act.push_back(x.transpose());
  return RightModule<S>(opposite_algebra, m.dim(), std::move(act));
}

template <class S>
GradedDims tor(const RightModule<S>& m, const LeftModule<S>& n, int n_max, Resolve side) {
  require_same(*m.algebra(), *n.algebra(), "tor");
  GradedDims out;
  CochainComplex<S> c;
  if (side == Resolve::First) {
    c = tensor_complex(cached_resolution(m, n_max + 1), n, n_max + 1);
  } else {
    auto op = opposite(m.algebra());
    c = tensor_complex(cached_resolution(n.as_right(op), n_max + 1), as_left(m, op), n_max + 1);
  }
  for (int k = 0; k <= n_max; ++k) out.dims.push_back(cohomology_dim(c, -k));
  return out;
}

template <class S>
GradedDims ext(const RightModule<S>& m, const RightModule<S>& n, int n_max, Resolve side) {
  require_same(*m.algebra(), *n.algebra(), "ext");
  GradedDims out;
  CochainComplex<S> c;
  if (side == Resolve::First) {
    c = hom_complex(cached_resolution(m, n_max + 1), n, n_max + 1);
  } else {
    auto op = opposite(m.algebra());
    c = hom_complex(cached_resolution(dual_module(n, op), n_max + 1), dual_module(m, op), n_max + 1);
  }
  for (int k = 0; k <= n_max; ++k) out.dims.push_back(cohomology_dim(c, k));
  return out;
}

template <class S>
DimBound projective_dimension(const RightModule<S>& m, int cutoff) {
  auto r = cached_resolution(m, cutoff);
  return r.stabilized ? DimBound::exactly(r.length()) : DimBound::at_least(cutoff + 1);
}

template <class S>
std::optional<std::string> periodic_syzygy(const RightModule<S>& m, int cutoff) {
  auto r = cached_resolution(m, cutoff + 1);
  if (r.stabilized) return std::nullopt;
  std::vector<RightModule<S>> syz;
  for (int n = 1; n <= r.length(); ++n)
    syz.push_back(submodule(r.term(n - 1), Subspace<S>::span(r.diff(n))).module);
  for (std::size_t j = 1; j < syz.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (syz[i].dim() != syz[j].dim() || syz[i].dim() == 0) continue;
      if (iso_test(syz[i], syz[j]).verdict == IsoVerdict::Isomorphic)
        return "syzygy " + std::to_string(i + 1) + " is isomorphic to syzygy " + std::to_string(j + 1);
    }
  return std::nullopt;
}

template <class S>
DimBound global_dimension(const AlgebraPtr<S>& a, int cutoff) {
  int d = 0;
  for (std::size_t i = 0; i < a->primitives().size(); ++i) {
    DimBound b = projective_dimension(RightModule<S>::simple(a, i), cutoff);
    if (!b.finite) return b;
    d = std::max(d, b.value);
  }
  return DimBound::exactly(d);
}

template <class S>
Diagonal<S> diagonal(const AlgebraPtr<S>& a) {
  auto env = enveloping(a);
  auto reg = Bimodule<S>::regular(a);
  return {env, reg.as_right_module(env), reg.as_left_module(env)};
}

template <class S>
DimBound hochschild_dimension(const AlgebraPtr<S>& a, int cutoff) {
  return projective_dimension(diagonal(a).right, cutoff);
}

template <class S>
GradedDims hochschild_homology(const AlgebraPtr<S>& a, int n_max) {
  auto d = diagonal(a);
  return tor(d.right, d.left, n_max);
}

template <class S>
GradedDims hochschild_cohomology(const AlgebraPtr<S>& a, int n_max) {
  auto d = diagonal(a);
  return ext(d.right, d.right, n_max);
}

template <class S>
ExtGroups<S> ext_groups(const RightModule<S>& m, const RightModule<S>& n, int n_max) {
  require_same(*m.algebra(), *n.algebra(), "ext_groups");
  ExtGroups<S> g{m, n, cached_resolution(m, n_max + 1), {}, {}};
  g.complex = hom_complex(g.resolution, n, n_max + 1);
  for (int k = 0; k <= n_max; ++k) g.groups.push_back(cohomology(g.complex, k));
  return g;
}

template <class S>
Vec<S> yoneda_product(const ExtGroups<S>& left, int p, const Vec<S>& x, const ExtGroups<S>& right, int q,
                      const Vec<S>& y, const ExtGroups<S>& target) {
  if (p < 0 || q < 0 || p > left.top() || q > right.top())
    throw Error(ErrorCode::DepthInsufficient, "Yoneda factor outside the computed degrees");
  if (p + q > target.top()) throw Error(ErrorCode::DepthInsufficient, "Yoneda product degree not computed");
  if (left.m.hash() != right.n.hash() || target.m.hash() != right.m.hash() || target.n.hash() != left.n.hash())
    throw Error(ErrorCode::InvalidModule, "Yoneda factors do not compose");
  const auto& gx = left.groups[static_cast<std::size_t>(p)];
  const auto& gy = right.groups[static_cast<std::size_t>(q)];
  if (x.size() != gx.dim() || y.size() != gy.dim())
    throw Error(ErrorCode::DimensionMismatch, "Yoneda class has the wrong length");
  const auto& pm = target.resolution;
  const auto& pn = left.resolution;
  Vec<S> ycoc = gy.reps.cols() ? Vec<S>(gy.reps * y) : Vec<S>(Vec<S>::Constant(gy.reps.rows(), make_scalar<S>(pm.algebra()->field(), 0)));
  Vec<S> xcoc = gx.reps.cols() ? Vec<S>(gx.reps * x) : Vec<S>(Vec<S>::Constant(gx.reps.rows(), make_scalar<S>(pm.algebra()->field(), 0)));
  Mat<S> phi = cochain_to_map(pm, q, right.n, ycoc);
  Mat<S> psi = cochain_to_map(pn, p, left.n, xcoc);
  ChainMap<S> lift = lift_cocycle(phi, q, pm, pn, p);
  Mat<S> prod = psi * lift.f[static_cast<std::size_t>(p)];
  Vec<S> coc = map_to_cochain(pm, p + q, target.n, prod);
  return target.groups[static_cast<std::size_t>(p + q)].coordinates(coc);
}

#define RECOLLAB_INSTANTIATE(S)                                                                                 \
  template RightModule<S> dual_module<S>(const RightModule<S>&, const AlgebraPtr<S>&);                          \
  template GradedDims tor<S>(const RightModule<S>&, const LeftModule<S>&, int, Resolve);                        \
  template GradedDims ext<S>(const RightModule<S>&, const RightModule<S>&, int, Resolve);                       \
  template DimBound projective_dimension<S>(const RightModule<S>&, int);                                        \
  template std::optional<std::string> periodic_syzygy<S>(const RightModule<S>&, int);                         \
  template DimBound global_dimension<S>(const AlgebraPtr<S>&, int);                                             \
  template struct Diagonal<S>;                                                                                  \
  template Diagonal<S> diagonal<S>(const AlgebraPtr<S>&);                                                       \
  template DimBound hochschild_dimension<S>(const AlgebraPtr<S>&, int);                                         \
  template GradedDims hochschild_homology<S>(const AlgebraPtr<S>&, int);                                        \
  template GradedDims hochschild_cohomology<S>(const AlgebraPtr<S>&, int);                                      \
  template struct ExtGroups<S>;                                                                                 \
  template ExtGroups<S> ext_groups<S>(const RightModule<S>&, const RightModule<S>&, int);                       \
  template Vec<S> yoneda_product<S>(const ExtGroups<S>&, int, const Vec<S>&, const ExtGroups<S>&, int,          \
                                    const Vec<S>&, const ExtGroups<S>&);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
