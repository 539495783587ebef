#include <doctest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "recollab/complex.hpp"

using namespace recollab;
using Q = Rational;

namespace {

template <class S>
std::vector<AlgebraPtr<S>> small_algebras(const FieldTag& f) {
  return {fx::field_k<S>(f), fx::dual_numbers<S>(f), fx::a2<S>(f), fx::a3_zero<S>(f), fx::kronecker<S>(f),
          fx::two_cycle<S>(f)};
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

template <class S>
bool is_chain_map(const ProjectiveResolution<S>& p, const ProjectiveResolution<S>& q, const ChainMap<S>& f,
                  const Mat<S>& base) {
  if (!is_zero<S>(Mat<S>(q.augmentation * f.f[0] - base * p.augmentation))) return false;
  for (std::size_t n = 1; n < f.f.size(); ++n) {
    const int k = static_cast<int>(n);
    if (!is_zero<S>(Mat<S>(q.diff(k) * f.f[n] - f.f[n - 1] * p.diff(k)))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("resolutions over the dual numbers never stop") {
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto s = RightModule<Q>::simple(d, 0);
  auto r = projective_resolution(s, 6);
  CHECK_FALSE(r.stabilized);
  CHECK(r.length() == 6);
  for (int n = 0; n <= 6; ++n) CHECK(r.dim(n) == 2);
  CHECK(is_exact(r));
  // Ext^n(k, k) = k in every degree below the truncation.
  auto c = hom_complex(r, s, 6);
  c.check();
  for (int n = 0; n <= 6; ++n) CHECK(c.dim(n) == 1);
  for (int n = 0; n <= 5; ++n) CHECK(cohomology_dim(c, n) == 1);
}

TEST_CASE("resolutions of quiver algebras stabilize at the projective dimension") {
  auto a = fx::a2<Q>(fx::q_field());
  auto s1 = projective_resolution(RightModule<Q>::simple(a, 0), 5);
  CHECK(s1.stabilized);
  CHECK(s1.length() == 1);
  CHECK(s1.terms(1) == std::vector<std::size_t>{1});
  CHECK(is_exact(s1));
  auto s2 = projective_resolution(RightModule<Q>::simple(a, 1), 5);
  CHECK(s2.stabilized);
  CHECK(s2.length() == 0);
  // 1 -> 2 -> 3 with ab = 0: the simple at 1 has projective dimension 2.
  auto b = fx::a3_zero<Q>(fx::q_field());
  auto t = projective_resolution(RightModule<Q>::simple(b, 0), 5);
  CHECK(t.stabilized);
  CHECK(t.length() == 2);
  // Depth 0 still records the cover and does not claim stabilization.
  auto u = projective_resolution(RightModule<Q>::simple(b, 0), 0);
  CHECK(u.length() == 0);
  CHECK_FALSE(u.stabilized);
}

TEST_CASE("Ext^0 and Ext^1 agree with Hom spaces and dimension shifting") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    auto mods = test_modules(a);
    for (const auto& m : mods) {
      auto r = projective_resolution(m, 3);
      REQUIRE(is_exact(r));
      auto syz = kernel_cokernel(r.term(0), m, r.augmentation).kernel.module;
      for (const auto& n : mods) {
        auto c = hom_complex(r, n, 3);
        c.check();
        const Index hom = static_cast<Index>(hom_space(m, n).size());
        CHECK(cohomology_dim(c, 0) == hom);
        // 0 -> Hom(M, N) -> Hom(P_0, N) -> Hom(Omega M, N) -> Ext^1(M, N) -> 0.
        const Index p0 = static_cast<Index>(hom_space(r.term(0), n).size());
        const Index om = static_cast<Index>(hom_space(syz, n).size());
        CHECK(cohomology_dim(c, 1) == om - p0 + hom);
      }
    }
  }
}

TEST_CASE("Tor_0 is the balanced tensor product") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    auto op = opposite(a);
    auto mods = test_modules(a);
    for (const auto& m : mods) {
      auto r = projective_resolution(m, 2);
      for (const auto& n : test_modules(op)) {
        auto left = as_left(n, a);
        auto c = tensor_complex(r, left, 2);
        c.check();
        CHECK(cohomology_dim(c, 0) == tensor_space(m, left).dim);
      }
    }
  }
}

TEST_CASE("element matrices round trip") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    for (const auto& m : test_modules(a)) {
      auto r = projective_resolution(m, 2);
      for (int n = 1; n <= r.length(); ++n) {
        auto el = to_elements(*a, r.terms(n - 1), r.terms(n), r.diff(n));
        CHECK(from_elements(*a, r.terms(n - 1), r.terms(n), el) == r.diff(n));
      }
    }
  }
}

TEST_CASE("maps lift to chain maps") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    auto mods = test_modules(a);
    for (const auto& m : mods) {
      auto p = projective_resolution(m, 3);
      for (const auto& n : mods) {
        auto q = projective_resolution(n, 3);
        for (const auto& h : hom_space(m, n)) {
          auto f = lift_map(h, p, q);
          CHECK(is_chain_map(p, q, f, h));
        }
      }
    }
  }
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto s = RightModule<Q>::simple(d, 0);
  auto shortq = projective_resolution(s, 1);
  auto longp = projective_resolution(s, 3);
  Mat<Q> id = Mat<Q>::Identity(1, 1);
  CHECK_THROWS_AS(lift_map(id, longp, shortq), Error);
}

TEST_CASE("horseshoe resolutions") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    for (const auto& m : test_modules(a)) {
      auto rad = radical_submodule(m);
      auto sub = submodule(m, rad);
      auto quo = quotient_module(m, rad);
      auto h = horseshoe(sub.module, m, quo.module, sub.inclusion, quo.projection, 3);
      CHECK(is_exact(h.middle));
      for (int n = 0; n <= h.middle.length(); ++n) CHECK(h.middle.dim(n) == h.left.dim(n) + h.right.dim(n));
    }
  }
  // 0 -> AeA -> A -> A/AeA -> 0 as bimodules, i.e. over the enveloping algebra.
  auto a = fx::a2<Q>(fx::q_field());
  auto env = enveloping(a);
  auto cb = canonical_bimodules(a, vertex_idempotent(*a, {"1"}));
  REQUIRE(cb.a_mod.has_value());
  auto x = cb.aea.as_right_module(env);
  auto y = cb.a.as_right_module(env);
  auto z = cb.a_mod->as_right_module(env);
  auto h = horseshoe(x, y, z, cb.inclusion, cb.projection, 4);
  CHECK(h.middle.stabilized);
  CHECK(is_exact(h.middle));
  // Swapping the maps is not exact.
  CHECK_THROWS_AS(horseshoe(x, y, z, Mat<Q>(Mat<Q>::Zero(3, 2)), cb.projection, 2), Error);
}

TEST_CASE("Hom of complexes squares to zero and detects exceptional objects") {
  auto a = fx::a2<Q>(fx::q_field());
  auto s1 = projective_resolution(RightModule<Q>::simple(a, 0), 3).complex(1);
  auto c = hom_complex(s1, BoundedComplex<Q>::from_projective(s1));
  c.check();
  CHECK(is_exceptional(s1));
  CHECK(cohomology_dim(c, 0) == 1);
  auto b = fx::a3_zero<Q>(fx::q_field());
  // P_1 (+) P_3 has no self-extensions either, but the dual-numbers simple does.
  ProjectiveComplex<Q> sum{b, 0, {{0, 2}}, {}};
  CHECK(is_exceptional(sum));
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto trunc = projective_resolution(RightModule<Q>::simple(d, 0), 1).complex(1);
  CHECK_FALSE(is_exceptional(trunc));
  // Hom(X, X[2]) is Hom(X, X) moved down two degrees.
  auto sh = s1.shift(2);
  auto c2 = hom_complex(s1, BoundedComplex<Q>::from_projective(sh));
  CHECK(cohomology_dim(c2, -2) == 1);
  CHECK(cohomology_dim(c2, 0) == 0);
}

TEST_CASE("duals of perfect complexes") {
  for (auto a : small_algebras<Q>(fx::q_field())) {
    auto op = opposite(a);
    for (const auto& m : test_modules(a)) {
      auto r = projective_resolution(m, 3);
      if (!r.stabilized) continue;
      auto x = r.complex(r.length());
      auto dx = dualize_perfect(x, op);
      CHECK(dx.lo == -x.hi());
      CHECK(dx.hi() == -x.lo);
      underlying(dx).check();
      auto ddx = dualize_perfect(dx, a);
      CHECK(ddx.lo == x.lo);
      for (int n = x.lo; n < x.hi(); ++n) CHECK(ddx.diff(n) == x.diff(n));
      // RHom(M, A) has total dimension that of the dual complex's cohomology.
      auto c = hom_complex(x, BoundedComplex<Q>::concentrated(RightModule<Q>::regular(a)));
      auto dims = cohomology_dims(dx);
      for (int n = dx.lo; n <= dx.hi(); ++n)
        CHECK(dims[static_cast<std::size_t>(n - dx.lo)] == cohomology_dim(c, n));
    }
  }
}

TEST_CASE("cohomology representatives and induced maps") {
  auto f = fx::q_field();
  CochainComplex<Q> c{f, 0, {1, 2, 1}, {}};
  Mat<Q> d0(2, 1), d1(1, 2);
  d0 << Q(1), Q(1);
  d1 << Q(1), Q(-1);
  c.d = {d0, d1};
  c.check();
  auto h = cohomology(c, 1);
  CHECK(h.dim() == 0);
  CHECK(cohomology_dim(c, 2) == 0);
  CochainComplex<Q> e{f, 0, {1, 2, 1}, {Mat<Q>(Mat<Q>::Zero(2, 1)), Mat<Q>(Mat<Q>::Zero(1, 2))}};
  auto h1 = cohomology(e, 1);
  CHECK(h1.dim() == 2);
  Mat<Q> swap(2, 2);
  swap << Q(0), Q(1), Q(1), Q(0);
  CHECK(rank(induced_map(h1, h1, swap)) == 2);
  Mat<Q> proj(2, 2);
  proj << Q(1), Q(1), Q(1), Q(1);
  CHECK(rank(induced_map(h1, h1, proj)) == 1);
}

TEST_CASE("resolution cache") {
  auto a = fx::a3_zero<Zp>(fx::f5());
  auto s = RightModule<Zp>::simple(a, 0);
  auto r = projective_resolution(s, 4);
  auto back = deserialize_resolution<Zp>(serialize_resolution(r), s);
  CHECK(back.stabilized == r.stabilized);
  CHECK(back.summands == r.summands);
  CHECK(back.augmentation == r.augmentation);
  for (int n = 1; n <= r.length(); ++n) CHECK(back.diff(n) == r.diff(n));
  CHECK_THROWS_AS(deserialize_resolution<Zp>("garbage", s), Error);
  CHECK_THROWS_AS(deserialize_resolution<Zp>(serialize_resolution(r), RightModule<Zp>::simple(a, 1)), Error);

  auto dir = std::filesystem::temp_directory_path() / "recollab-cache-test";
  std::filesystem::remove_all(dir);
  set_resolution_cache(dir);
  clear_resolution_memo();
  auto d = fx::dual_numbers<Zp>(fx::f5());
  auto k = RightModule<Zp>::simple(d, 0);
  auto deep = cached_resolution(k, 5);
  CHECK(deep.length() == 5);
  CHECK_FALSE(std::filesystem::is_empty(dir));
  // Shallower requests are truncations of the stored one, from memo or disk.
  auto shallow = cached_resolution(k, 2);
  CHECK(shallow.length() == 2);
  CHECK_FALSE(shallow.stabilized);
  clear_resolution_memo();
  auto again = cached_resolution(k, 3);
  CHECK(again.length() == 3);
  CHECK(again.diff(3) == deep.diff(3));
  set_resolution_cache(std::nullopt);
  clear_resolution_memo();
  std::filesystem::remove_all(dir);
}
