#include <doctest.h>

#include "fixtures.hpp"
#include "recollab/les.hpp"

using namespace recollab;
using Q = Rational;

namespace {

template <class S>
std::vector<AlgebraPtr<S>> small_algebras(const FieldTag& f) {
  return {fx::dual_numbers<S>(f), fx::a2<S>(f), fx::a3_zero<S>(f), fx::kronecker<S>(f), fx::two_cycle<S>(f)};
}

template <class S>
std::vector<RightModule<S>> test_modules(const AlgebraPtr<S>& a) {
  std::vector<RightModule<S>> out{RightModule<S>::regular(a)};
  for (std::size_t i = 0; i < a->primitives().size(); ++i) {
    out.push_back(RightModule<S>::projective(a, i));
    out.push_back(RightModule<S>::simple(a, i));
  }
  return out;
}

// 0 -> rad M -> M -> top M -> 0
template <class S>
ShortExact<S> radical_sequence(const RightModule<S>& m) {
  auto rad = radical_submodule(m);
  auto sub = submodule(m, rad);
  auto quo = quotient_module(m, rad);
  return {sub.module, m, quo.module, sub.inclusion, quo.projection};
}

template <class S>
ShortExact<S> split_sequence(const RightModule<S>& x, const RightModule<S>& y) {
  std::vector<Mat<S>> act;
  for (Index i = 0; i < x.algebra()->dim(); ++i) act.push_back(direct_sum<S>(x.action(i), y.action(i)));
  RightModule<S> sum(x.algebra(), x.dim() + y.dim(), act);
  Mat<S> f = Mat<S>::Zero(sum.dim(), x.dim()), g = Mat<S>::Zero(y.dim(), sum.dim());
  for (Index i = 0; i < x.dim(); ++i) f(i, i) = S(1);
  for (Index i = 0; i < y.dim(); ++i) g(i, x.dim() + i) = S(1);
  return {x, sum, y, f, g};
}

template <class S>
bool connecting_maps_zero(const LesReport<S>& r) {
  for (std::size_t i = 0; i < r.maps.size(); ++i)
    if (r.map_kinds[i] == "connecting" && r.maps[i].size() && !is_zero<S>(r.maps[i])) return false;
  return true;
}

const LesLabels kLabels{"K", "C", "Q"};

}  // namespace

TEST_CASE("sequences from radical filtrations are exact") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    auto op = opposite(a);
    for (const auto& m : test_modules(a)) {
      auto ses = radical_sequence(m);
      for (const auto& t : test_modules(a)) {
        auto cov = les_covariant(ses, t, 3, kLabels);
        CHECK(cov.exact);
        auto con = les_contravariant(ses, t, 3, kLabels);
        CHECK(con.exact);
        for (const auto& j : con.joints) CHECK(j.composes_to_zero);
      }
      for (const auto& t : test_modules(op)) {
        auto ten = les_tensor(ses, as_left(t, a), 3, kLabels);
        CHECK(ten.exact);
        CHECK(ten.homological);
        CHECK(ten.terms.front().degree == 3);
        CHECK(ten.terms.back().degree == 0);
      }
    }
  }
}

TEST_CASE("split sequences have zero connecting maps") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    auto mods = test_modules(a);
    auto ses = split_sequence(mods[1], mods.back());
    for (const auto& t : mods) {
      auto r = les_covariant(ses, t, 3, kLabels);
      CHECK(r.exact);
      CHECK(connecting_maps_zero(r));
      auto s = les_contravariant(ses, t, 3, kLabels);
      CHECK(s.exact);
      CHECK(connecting_maps_zero(s));
    }
  }
}

TEST_CASE("connecting maps carry the extension over the dual numbers") {
  // 0 -> k -> D -> k -> 0 with D self-injective: Ext^n(k, D) = 0 for n >= 1,
  // so every connecting map Ext^n(k, k) -> Ext^{n+1}(k, k) is an isomorphism.
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto ses = radical_sequence(RightModule<Q>::regular(d));
  auto s = RightModule<Q>::simple(d, 0);
  auto r = les_covariant(ses, s, 4, LesLabels{"Ext(k,k)", "Ext(k,D)", "Ext(k,k)'"});
  CHECK(r.exact);
  for (std::size_t i = 0; i < r.maps.size(); ++i)
    if (r.map_kinds[i] == "connecting") CHECK(rank(r.maps[i]) == 1);
  CHECK(r.terms[r.find("Ext(k,D)", 0)].dim == 1);
  CHECK(r.terms[r.find("Ext(k,D)", 2)].dim == 0);
}

TEST_CASE("bimodule sequence 0 -> AeA -> A -> A/AeA -> 0") {
  auto a = fx::a2<Q>(fx::q_field());
  auto diag = diagonal(a);
  auto cb = canonical_bimodules(a, vertex_idempotent(*a, {"2"}));
  REQUIRE(cb.a_mod.has_value());
  ShortExact<Q> ses{cb.aea.as_right_module(diag.env), diag.right, cb.a_mod->as_right_module(diag.env), cb.inclusion,
                    cb.projection};
  auto con = les_contravariant(ses, diag.right, 4, LesLabels{"Ext(A/AeA,A)", "HH(A)", "Ext(AeA,A)"});
  CHECK(con.exact);
  CHECK(con.terms.size() == 15);
  auto ten = les_tensor(ses, diag.left, 4, LesLabels{"Tor(AeA,A)", "HH(A)", "Tor(A/AeA,A)"});
  CHECK(ten.exact);
  // Middle column is HH_*(A).
  auto hh = hochschild_homology(a, 4);
  for (int n = 0; n <= 4; ++n) CHECK(ten.terms[ten.find("HH(A)", n)].dim == hh.at(n));
}

TEST_CASE("non-exact input is rejected") {
  auto a = fx::a2<Q>(fx::q_field());
  auto ses = radical_sequence(RightModule<Q>::regular(a));
  ses.g = Mat<Q>::Zero(ses.g.rows(), ses.g.cols());
  CHECK_THROWS_AS(les_covariant(ses, RightModule<Q>::regular(a), 2, kLabels), Error);
  CHECK_THROWS_AS(les_contravariant(ses, RightModule<Q>::regular(a), 2, kLabels), Error);
}

TEST_CASE("quotient complexes") {
  auto f = fx::q_field();
  CochainComplex<Q> c{f, 0, {2, 2}, {Mat<Q>(Mat<Q>::Identity(2, 2))}};
  Mat<Q> inc(2, 1), inc1(2, 1);
  inc << Q(1), Q(0);
  inc1 << Q(1), Q(0);
  CochainComplex<Q> k{f, 0, {1, 1}, {Mat<Q>(Mat<Q>::Identity(1, 1))}};
  CochainMap<Q> m{0, {inc, inc1}};
  auto qc = quotient_complex(c, m);
  CHECK(qc.complex.dims == std::vector<Index>{1, 1});
  CHECK(cohomology_dim(qc.complex, 0) == 0);
  CHECK(cohomology_dim(qc.complex, 1) == 0);
  auto r = les_from_complexes(k, c, qc.complex, m, qc.projection, 0, 1, kLabels, true, true);
  CHECK(r.exact);
}
