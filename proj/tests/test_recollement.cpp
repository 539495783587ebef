#include <doctest.h>

#include "fixtures.hpp"
#include "recollab/recollement.hpp"

using namespace recollab;
using Q = Rational;

namespace {

template <class S>
void require_certified(const RecollementData<S>& r) {
  for (const auto& c : r.certificate.checks) {
    INFO(c.name << " " << c.detail);
    CHECK(c.ok);
  }
}

// dim M e computed directly from the action of e.
template <class S>
Index corner_part(const RightModule<S>& m, const Vec<S>& e) {
  return rank(m.act(e));
}

}  // namespace

TEST_CASE("stratifying idempotents of A_2") {
  auto a = fx::a2<Q>(fx::q_field());
  for (const char* v : {"1", "2"}) {
    auto e = vertex_idempotent(*a, {v});
    auto rep = check_stratifying(a, e, 4);
    CHECK(rep.stratifying);
    CHECK(rep.mult_iso);
    CHECK(rep.perfect_ideal == Perfectness::Verified);
    auto r = from_idempotent(a, e, 4);
    CHECK(r.flavor == Flavor::IdempotentStratifying);
    REQUIRE(r.a1.has_value());
    CHECK((*r.a1)->dim() == 1);
    CHECK((*r.a2)->dim() == 1);
    require_certified(r);
  }
}

TEST_CASE("a non-stratifying idempotent") {
  // e_1 A e_1 is the dual numbers and Ae_1 has a simple summand over it.
  auto a = fx::two_cycle<Q>(fx::q_field());
  auto e = vertex_idempotent(*a, {"1"});
  auto rep = check_stratifying(a, e, 3);
  CHECK_FALSE(rep.stratifying);
  REQUIRE(rep.failing_degree.has_value());
  CHECK(*rep.failing_degree == 1);
  CHECK(rep.tor.at(1) == 1);
  try {
    from_idempotent(a, e, 3);
    FAIL("expected NotStratifying");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotStratifying);
    CHECK(std::string(err.what()).find("Tor_1") != std::string::npos);
  }
  // The other vertex is fine.
  auto r = from_idempotent(a, vertex_idempotent(*a, {"2"}), 3);
  CHECK(r.perfect == Perfectness::Verified);
  CHECK(r.stratifying.pd_quotient == DimBound::exactly(1));
  require_certified(r);
}

TEST_CASE("the unit idempotent gives a trivial left-hand side") {
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto r = from_idempotent(d, d->unit(), 3);
  CHECK_FALSE(r.a1.has_value());
  CHECK((*r.a2)->dim() == 2);
  CHECK(r.perfect == Perfectness::Verified);
  require_certified(r);
  auto m = RightModule<Q>::simple(d, 0);
  CHECK(eval_functor(r, Functor::IUpperStar, m, 3) == GradedDims{-3, {0, 0, 0, 0}});
  CHECK_THROWS_AS(functor_source(r, Functor::ILowerStar), Error);
}

TEST_CASE("triangular recollements") {
  const auto q = fx::q_field();
  auto k = fx::field_k<Q>(q);
  for (Index d = 0; d <= 3; ++d) {
    auto r = from_triangular(k, k, scalar_bimodule(k, k, d), 3);
    CHECK(r.flavor == Flavor::Triangular);
    CHECK(r.a->dim() == 2 + d);
    CHECK(r.perfect == Perfectness::Verified);
    require_certified(r);
  }
}

TEST_CASE("functor values") {
  auto a = fx::a3_zero<Q>(fx::q_field());
  for (const char* v : {"1", "2", "3"}) {
    auto e = vertex_idempotent(*a, {v});
    if (!check_stratifying(a, e, 4).stratifying) continue;
    auto r = from_idempotent(a, e, 4);
    require_certified(r);
    for (const auto& m : module_battery(a)) {
      // j^! is exact: M -> Me.
      auto j = eval_functor(r, Functor::JUpperShriek, m, 3);
      CHECK(j.at(0) == corner_part(m, e));
      for (int n = -3; n < 0; ++n) CHECK(j.at(n) == 0);
      // i^! in degree 0 is the part killed by AeA, i^* the part modulo M AeA.
      CHECK(eval_functor(r, Functor::IUpperShriek, m, 3).lo == 0);
      CHECK(eval_functor(r, Functor::IUpperStar, m, 3).hi() == 0);
    }
    for (const auto& n : module_battery(*r.a2)) {
      auto js = eval_functor(r, Functor::JLowerStar, n, 3);
      auto jl = eval_functor(r, Functor::JLowerShriek, n, 3);
      CHECK(js.lo == 0);
      CHECK(jl.hi() == 0);
    }
    if (r.a1)
      for (const auto& n : module_battery(*r.a1)) {
        auto i = eval_functor(r, Functor::ILowerStar, n, 3);
        CHECK(i.at(0) == n.dim());
      }
  }
  CHECK(parse_functor("j^!") == Functor::JUpperShriek);
  CHECK_FALSE(parse_functor("j^?").has_value());
}

TEST_CASE("tensor transfer") {
  const auto q = fx::q_field();
  auto a = fx::a2<Q>(q);
  auto r = from_idempotent(a, vertex_idempotent(*a, {"2"}), 3);
  for (auto b : {fx::field_k<Q>(q), fx::dual_numbers<Q>(q), fx::a2<Q>(q)}) {
    auto t = tensor_transfer(b, r, 3);
    CHECK(t.a->dim() == b->dim() * a->dim());
    CHECK((*t.a1)->dim() == b->dim());
    CHECK((*t.a2)->dim() == b->dim());
    require_certified(t);
  }
  auto tri = from_triangular(fx::field_k<Q>(q), fx::field_k<Q>(q), scalar_bimodule(fx::field_k<Q>(q), fx::field_k<Q>(q), 2), 3);
  auto t = tensor_transfer(fx::dual_numbers<Q>(q), tri, 3);
  CHECK(t.flavor == Flavor::Triangular);
  require_certified(t);
}

TEST_CASE("opposite transfer") {
  const auto q = fx::q_field();
  std::vector<std::pair<AlgebraPtr<Q>, const char*>> cases{
      {fx::a2<Q>(q), "2"}, {fx::a2<Q>(q), "1"}, {fx::two_cycle<Q>(q), "2"}, {fx::kronecker<Q>(q), "2"}};
  for (auto& [a, v] : cases) {
    auto r = from_idempotent(a, vertex_idempotent(*a, {v}), 3);
    auto o = opposite_transfer(r, 3);
    CHECK(o.flavor == Flavor::Opposite);
    CHECK(o.a->dim() == a->dim());
    // Sides swap: the corner of A becomes the left-hand side.
    REQUIRE(o.a1.has_value());
    CHECK((*o.a1)->dim() == (*r.a2)->dim());
    CHECK((*o.a2)->dim() == (*r.a1)->dim());
    CHECK(o.perfect == Perfectness::Verified);
    CHECK(o.has_idempotent());
    require_certified(o);
  }
}

TEST_CASE("a stratifying recollement that is not perfect") {
  auto a = fx::looped_pair<Q>(fx::q_field());
  auto e = vertex_idempotent(*a, {"1"});
  auto rep = check_stratifying(a, e, 4);
  CHECK(rep.stratifying);
  CHECK(rep.perfect_ideal == Perfectness::Refuted);
  CHECK_FALSE(rep.witness.empty());
  CHECK(rep.pd_quotient == DimBound::at_least(5));
  auto r = from_idempotent(a, e, 4);
  CHECK(r.perfect == Perfectness::Refuted);
  require_certified(r);
  try {
    opposite_transfer(r, 4);
    FAIL("expected NotPerfect");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotPerfect);
  }
}

TEST_CASE("functors of the opposite recollement") {
  auto a = fx::a3_zero<Q>(fx::q_field());
  auto r = from_idempotent(a, vertex_idempotent(*a, {"3"}), 3);
  auto o = opposite_transfer(r, 3);
  CHECK_THROWS_AS(eval_functor(o, Functor::IUpperStar, RightModule<Q>::regular(o.a), 3), Error);
  CHECK(functor_source(o, Functor::JUpperShriek) == o.a);
  CHECK(functor_source(o, Functor::ILowerStar) == *o.a1);
  // j^! of the turned recollement kills the image of its i_*.
  for (const auto& n : module_battery(*o.a1)) {
    auto g = eval_functor(o, Functor::ILowerStar, n, 3);
    bool module = true;
    for (int k = -3; k < 0; ++k) module = module && g.at(k) == 0;
    if (!module) continue;
    auto x = tensor_over(n, o.bimodules().ea);
    auto j = eval_functor(o, Functor::JUpperShriek, x, 3);
    for (int k = j.lo; k <= j.hi(); ++k) CHECK(j.at(k) == 0);
  }
}

TEST_CASE("results do not depend on the field") {
  auto a = fx::two_cycle<Zp>(fx::f5());
  auto rep = check_stratifying(a, vertex_idempotent(*a, {"1"}), 3);
  CHECK_FALSE(rep.stratifying);
  auto r = from_idempotent(a, vertex_idempotent(*a, {"2"}), 3);
  require_certified(r);
}
