#include <doctest.h>

#include "fixtures.hpp"
#include "recollab/verify.hpp"

using namespace recollab;
using Q = Rational;

namespace {

struct Case {
  std::string name;
  RecollementData<Q> r;
};

std::vector<Case> perfect_cases(int n) {
  const auto q = fx::q_field();
  auto k = fx::field_k<Q>(q);
  auto d = fx::dual_numbers<Q>(q);
  std::vector<Case> out;
  auto add = [&](std::string name, AlgebraPtr<Q> a, const char* v) {
    out.push_back({std::move(name), from_idempotent(a, vertex_idempotent(*a, {v}), n)});
  };
  add("A2 e2", fx::a2<Q>(q), "2");
  add("A2 e1", fx::a2<Q>(q), "1");
  add("Kronecker e2", fx::kronecker<Q>(q), "2");
  add("two-cycle e2", fx::two_cycle<Q>(q), "2");
  add("A3 e3", fx::a3_zero<Q>(q), "3");
  out.push_back({"triangular(D, k, k)", from_triangular(d, k, fx::augmentation_bimodule(k, d), n)});
  return out;
}

void check_report(const Certificate& c) {
  for (const auto& line : c.checks) {
    INFO(line.name << " " << line.detail);
    CHECK(line.ok);
  }
}

}  // namespace

TEST_CASE("Keller sequences and additivity") {
  for (const auto& [name, r] : perfect_cases(4)) {
    INFO(name);
    auto rep = keller_homology(r, 4);
    check_report(rep.checks);
    CHECK(rep.les.exact);
    REQUIRE(rep.additive.has_value());
    CHECK(*rep.additive);
    CHECK(rep.ok());
  }
  // Values from the engine, frozen: A_2 splits as k and k.
  auto a2 = perfect_cases(4).front();
  auto rep = keller_homology(a2.r, 4);
  CHECK(rep.hh == GradedDims{0, {2, 0, 0, 0, 0}});
  CHECK(rep.hh_corner == GradedDims{0, {1, 0, 0, 0, 0}});
  CHECK(rep.hh_quotient == GradedDims{0, {1, 0, 0, 0, 0}});
}

TEST_CASE("Keller with the unit idempotent") {
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto r = from_idempotent(d, d->unit(), 3);
  auto rep = keller_homology(r, 3);
  CHECK(rep.degenerate);
  CHECK(rep.ok());
  auto coh = cohomology_les(r, 3);
  CHECK(coh.degenerate);
  CHECK(coh.ok());
}

TEST_CASE("three cohomology sequences") {
  for (const auto& [name, r] : perfect_cases(4)) {
    INFO(name);
    auto rep = cohomology_les(r, 4);
    REQUIRE(rep.sequences.size() == 3);
    check_report(rep.checks);
    for (const auto& s : rep.sequences) {
      CHECK(s.exact);
      for (const auto& j : s.joints)
        if (j.checked) CHECK(j.rank_in + j.rank_out == s.terms[j.term].dim);
    }
    CHECK(rep.ok());
  }
}

TEST_CASE("sequences without perfectness") {
  auto a = fx::looped_pair<Q>(fx::q_field());
  auto r = from_idempotent(a, vertex_idempotent(*a, {"1"}), 3);
  REQUIRE(r.perfect == Perfectness::Refuted);
  auto k = keller_homology(r, 3);
  CHECK_FALSE(k.additive.has_value());
  CHECK(k.les.exact);
  check_report(k.checks);
  auto c = cohomology_les(r, 3);
  check_report(c.checks);
  CHECK(c.ok());
}

TEST_CASE("smoothness and global dimension") {
  const auto q = fx::q_field();
  auto k = fx::field_k<Q>(q);
  auto d = fx::dual_numbers<Q>(q);
  auto tri = from_triangular(k, k, scalar_bimodule(k, k, 1), 6);
  auto s = smoothness_equivalence(tri, 6);
  CHECK(s.verdict == Verdict::Consistent);
  for (const auto& side : s.sides) CHECK(side.bound.finite);
  CHECK(s.sides[0].bound == DimBound::exactly(1));

  auto kr = perfect_cases(3)[2].r;
  CHECK(smoothness_equivalence(kr, 6).verdict == Verdict::Consistent);
  CHECK(gldim_equivalence(kr, 6).verdict == Verdict::Consistent);

  auto td = from_triangular(d, k, fx::augmentation_bimodule(k, d), 6);
  for (auto rep : {smoothness_equivalence(td, 6), gldim_equivalence(td, 6)}) {
    CHECK(rep.verdict == Verdict::Consistent);
    REQUIRE(rep.sides.size() == 3);
    CHECK_FALSE(rep.sides[0].bound.finite);
    CHECK_FALSE(rep.sides[1].bound.finite);  // the dual-numbers block
    CHECK_FALSE(rep.sides[1].witness.empty());
    CHECK(rep.sides[2].bound == DimBound::exactly(0));
  }

  auto unit = from_idempotent(d, d->unit(), 4);
  CHECK(smoothness_equivalence(unit, 4).verdict == Verdict::ConsistentVacuous);
  CHECK(gldim_equivalence(unit, 4).verdict == Verdict::ConsistentVacuous);
}

TEST_CASE("the falsification detector fires on inconsistent data") {
  // A_2 is smooth; pretending one side is the dual numbers contradicts the equivalence.
  auto r = perfect_cases(3).front().r;
  r.a1 = fx::dual_numbers<Q>(fx::q_field());
  auto rep = smoothness_equivalence(r, 4);
  CHECK(rep.verdict == Verdict::Falsified);
  CHECK(gldim_equivalence(r, 4).verdict == Verdict::Falsified);
  // Without perfectness the same pattern is only inconclusive.
  r.perfect = Perfectness::Inconclusive;
  CHECK(smoothness_equivalence(r, 4).verdict == Verdict::Inconclusive);
}

TEST_CASE("duality round trip") {
  const auto q = fx::q_field();
  for (auto a : {fx::a2<Q>(q), fx::two_cycle<Q>(q), fx::a3_zero<Q>(q)}) {
    auto op = opposite(a);
    auto reg = cached_resolution(RightModule<Q>::regular(a), 1);
    auto x = reg.complex(reg.length());
    auto rep = duality_roundtrip(x, op);
    CHECK(rep.ok());
    CHECK(rep.dims == std::vector<Index>{a->dim()});
    // Shifting commutes with duality.
    auto shifted = duality_roundtrip(x.shift(2), op);
    CHECK(shifted.dual_lo == 2);
    CHECK(shifted.dims_equal);
    for (std::size_t i = 0; i < a->primitives().size(); ++i) {
      auto res = cached_resolution(RightModule<Q>::simple(a, i), 4);
      if (!res.stabilized) continue;
      auto r = duality_roundtrip(res.complex(res.length()), op);
      CHECK(r.ok());
      CHECK(cohomology_module(res.complex(res.length()), 0).dim() == 1);
    }
  }
  // A/AeA for A_2, e = e_2 has a two-term resolution.
  auto a = fx::a2<Q>(q);
  auto cb = canonical_bimodules(a, vertex_idempotent(*a, {"2"}));
  auto res = cached_resolution(cb.a_mod->right(), 3);
  REQUIRE(res.stabilized);
  CHECK(res.length() == 1);
  CHECK(duality_roundtrip(res.complex(1), opposite(a)).ok());
}
