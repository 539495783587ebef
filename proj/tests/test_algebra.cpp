#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "recollab/quiver.hpp"

using namespace recollab;
using Q = Rational;

namespace {

// Center by brute force over all basis commutators, solved with GMP directly.
template <class S>
int center_dim_oracle(const Algebra<S>& a) {
  const Index n = a.dim();
  oracle::QMat rows;
  for (Index j = 0; j < n; ++j) {
    // z b_j - b_j z = sum_i z_i (b_i b_j - b_j b_i); one row per output coordinate.
    for (Index k = 0; k < n; ++k) {
      std::vector<mpq_class> row(static_cast<std::size_t>(n));
      for (Index i = 0; i < n; ++i) {
        mpq_class c = 0;
        for (const auto& [m, x] : a.product(i, j))
          if (m == k) c += mpq_class(x.to_string());
        for (const auto& [m, x] : a.product(j, i))
          if (m == k) c -= mpq_class(x.to_string());
        row[static_cast<std::size_t>(i)] = c;
      }
      rows.push_back(row);
    }
  }
  return static_cast<int>(n) - oracle::rank_q(rows);
}

}  // namespace

TEST_CASE("quiver algebras have the expected path bases") {
  auto k = fx::field_k<Q>(fx::q_field());
  CHECK(k->dim() == 1);
  auto d = fx::dual_numbers<Q>(fx::q_field());
  CHECK(d->dim() == 2);
  CHECK(d->labels() == std::vector<std::string>{"e_1", "x"});
  auto a = fx::a2<Q>(fx::q_field());
  CHECK(a->dim() == 3);
  CHECK(a->labels() == std::vector<std::string>{"e_1", "e_2", "a"});
  CHECK(fx::kronecker<Q>(fx::q_field())->dim() == 4);
  CHECK(fx::a3_zero<Q>(fx::q_field())->dim() == 5);
  CHECK(fx::two_cycle<Q>(fx::q_field())->dim() == 5);
  CHECK(fx::two_cycle<Zp>(fx::f5())->dim() == 5);
}

TEST_CASE("quiver errors") {
  QuiverPresentation<Q> q;
  q.vertices = {"1"};
  q.arrows = {{"x", "1", "1"}};
  CHECK_THROWS_WITH_AS(from_quiver(q, fx::q_field()), doctest::Contains("NotFiniteDimensional"), Error);
  q.relations = {fx::monomial<Q>(fx::q_field(), {"x"})};
  CHECK_THROWS_WITH_AS(from_quiver(q, fx::q_field()), doctest::Contains("InvalidRelation"), Error);
  // x^2 - x^3 does not contain a power of the arrow ideal.
  q.relations = {{RelationTerm<Q>{Q(1), {"x", "x"}}, RelationTerm<Q>{Q(-1), {"x", "x", "x"}}}};
  QuiverOptions small;
  small.degree_bound = 6;
  CHECK_THROWS_AS(from_quiver(q, fx::q_field(), small), Error);
}

TEST_CASE("mixed-length relations are certified") {
  // Loops x, y with x^2 = y^3, xy = yx = 0: basis 1, x, y, y^2, y^3.
  QuiverPresentation<Q> q;
  q.vertices = {"1"};
  q.arrows = {{"x", "1", "1"}, {"y", "1", "1"}};
  q.relations = {{RelationTerm<Q>{Q(1), {"x", "x"}}, RelationTerm<Q>{Q(-1), {"y", "y", "y"}}},
                 fx::monomial<Q>(fx::q_field(), {"x", "y"}), fx::monomial<Q>(fx::q_field(), {"y", "x"})};
  auto a = from_quiver(q, fx::q_field());
  CHECK(a->dim() == 5);
  CHECK(a->radical().dim() == 4);
  CHECK(center(*a).dim() == 5);
}

TEST_CASE("opposite, tensor, enveloping") {
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto a = fx::a2<Q>(fx::q_field());
  CHECK(opposite(d)->data().table == d->data().table);
  auto aop = opposite(a);
  CHECK(aop->product(2, 0) == a->product(0, 2));
  CHECK(opposite(aop)->data().table == a->data().table);
  CHECK(opposite(opposite(d))->hash() == d->hash());
  auto k = fx::field_k<Q>(fx::q_field());
  auto ak = tensor(a, k);
  CHECK(ak->hash() == tensor(a, k)->hash());
  CHECK(ak->labels() == a->labels());
  CHECK(ak->data().table == a->data().table);
  CHECK(tensor(d, d)->dim() == 4);
  CHECK(enveloping(a)->dim() == 9);
  CHECK(enveloping(k)->dim() == 1);
  auto de = enveloping(d);
  CHECK(de->dim() == 4);
  CHECK(commutator_subspace(*de).dim() == 0);
  CHECK_THROWS_AS(tensor(fx::field_k<Zp>(fx::f5()), fx::field_k<Zp>(FieldTag::prime_field(7))), Error);
}

TEST_CASE("tensor products are associative up to relabeling") {
  auto d = fx::dual_numbers<Q>(fx::q_field());
  auto a = fx::a2<Q>(fx::q_field());
  auto k2 = fx::kronecker<Q>(fx::q_field());
  auto left = tensor(tensor(d, a), k2);
  auto right = tensor(d, tensor(a, k2));
  CHECK(left->dim() == right->dim());
  CHECK(left->data().table == right->data().table);
}

TEST_CASE("corners and quotients") {
  auto a = fx::a2<Q>(fx::q_field());
  Vec<Q> e2 = vertex_idempotent(*a, {"2"});
  auto c = corner(a, e2);
  CHECK(c.algebra->dim() == 1);
  auto iq = ideal_and_quotient(a, e2);
  CHECK(iq.ideal.dim() == 2);
  REQUIRE(iq.quotient);
  CHECK((*iq.quotient)->dim() == 1);
  CHECK((*iq.quotient)->labels() == std::vector<std::string>{"e_1"});
  CHECK(iq.ideal.contains(a->basis_vector(2)));
  CHECK(iq.ideal.contains(a->basis_vector(1)));

  auto whole = corner(a, a->unit());
  CHECK(whole.algebra->data().table == a->data().table);
  auto none = ideal_and_quotient(a, a->unit());
  CHECK_FALSE(none.quotient);
  CHECK(none.ideal.dim() == 3);

  auto kr = fx::kronecker<Q>(fx::q_field());
  CHECK(corner(kr, vertex_idempotent(*kr, {"1"})).algebra->dim() == 1);
  auto d = fx::dual_numbers<Q>(fx::q_field());
  CHECK_FALSE(ideal_and_quotient(d, d->unit()).quotient);
  CHECK_THROWS_AS(corner(d, d->basis_vector(1)), Error);

  // dim AeA + dim A/AeA = dim A on every vertex subset of A3 with a zero relation.
  auto a3 = fx::a3_zero<Q>(fx::q_field());
  for (auto vs : std::vector<std::vector<std::string>>{{"1"}, {"2"}, {"3"}, {"1", "3"}, {"2", "3"}}) {
    auto r = ideal_and_quotient(a3, vertex_idempotent(*a3, vs));
    Index qd = r.quotient ? (*r.quotient)->dim() : 0;
    CHECK(r.ideal.dim() + qd == a3->dim());
    if (r.quotient) CHECK((*r.quotient)->primitives().size() == 3 - vs.size());
  }
}

TEST_CASE("center dimensions against a direct solve") {
  auto a = fx::a2<Q>(fx::q_field());
  CHECK(center(*a).dim() == 1);
  CHECK(center_dim_oracle(*a) == 1);
  auto kr = fx::kronecker<Q>(fx::q_field());
  CHECK(center(*kr).dim() == 1);
  CHECK(center_dim_oracle(*kr) == 1);
  for (auto alg : {fx::dual_numbers<Q>(fx::q_field()), fx::a3_zero<Q>(fx::q_field()), fx::two_cycle<Q>(fx::q_field())})
    CHECK(center(*alg).dim() == center_dim_oracle(*alg));
  auto d = fx::dual_numbers<Q>(fx::q_field());
  CHECK(center(*d).dim() == 2);
}

TEST_CASE("radical: structural versus trace form") {
  auto a = fx::a2<Q>(fx::q_field());
  CHECK(a->radical().dim() == 1);
  CHECK(a->radical().contains(a->basis_vector(2)));
  // Strip the structural radical: the trace form must recover it over Q.
  for (auto alg : {fx::a2<Q>(fx::q_field()), fx::dual_numbers<Q>(fx::q_field()), fx::a3_zero<Q>(fx::q_field()),
                   fx::kronecker<Q>(fx::q_field()), fx::two_cycle<Q>(fx::q_field())}) {
    AlgebraData<Q> raw = alg->data();
    raw.radical.reset();
    auto stripped = Algebra<Q>::create(raw);
    CHECK(stripped->radical() == alg->radical());
    // Nilpotent: rad^dim = 0.
    Subspace<Q> power = alg->radical();
    for (Index step = 0; step < alg->dim() && power.dim() > 0; ++step) {
      Subspace<Q> next(alg->dim());
      for (Index i = 0; i < power.dim(); ++i)
        for (Index j = 0; j < alg->radical().dim(); ++j)
          next.insert(alg->multiply(power.basis_vector(i), alg->radical().basis_vector(j)));
      power = next;
    }
    CHECK(power.dim() == 0);
  }
  auto kf = ground_field<Q>(fx::q_field());
  CHECK(kf->radical().dim() == 0);
  AlgebraData<Zp> raw = fx::dual_numbers<Zp>(fx::f5())->data();
  raw.radical.reset();
  raw.primitives.clear();
  raw.primitive_labels.clear();
  auto bare = Algebra<Zp>::create(raw);
  CHECK_THROWS_WITH_AS(bare->radical(), doctest::Contains("UnsupportedField"), Error);
}

TEST_CASE("invalid structure constants are rejected") {
  // Basis 1, x with x*x = x + 1 is associative (commutative, generated by x);
  // breaking the unit law must be caught.
  AlgebraData<Q> d;
  d.dim = 2;
  d.table = {{{0, Q(1)}}, {{1, Q(1)}}, {{1, Q(1)}}, {{0, Q(1)}, {1, Q(1)}}};
  d.unit = Vec<Q>::Zero(2);
  d.unit(0) = Q(1);
  CHECK_NOTHROW(Algebra<Q>::create(d));
  d.table[1] = {{1, Q(2)}};
  CHECK_THROWS_WITH_AS(Algebra<Q>::create(d), doctest::Contains("unit"), Error);

  // Basis 1, x, y with xy = x, yx = y and all else zero: (xy)y = xy = x but
  // x(yy) = 0.
  AlgebraData<Q> n;
  n.dim = 3;
  n.table.assign(9, {});
  for (Index i = 0; i < 3; ++i) {
    n.table[static_cast<std::size_t>(i)] = {{i, Q(1)}};
    n.table[static_cast<std::size_t>(3 * i)] = {{i, Q(1)}};
  }
  n.table[1 * 3 + 2] = {{1, Q(1)}};
  n.table[2 * 3 + 1] = {{2, Q(1)}};
  n.unit = Vec<Q>::Zero(3);
  n.unit(0) = Q(1);
  CHECK_THROWS_WITH_AS(Algebra<Q>::create(n), doctest::Contains("associativity"), Error);
}

TEST_CASE("split-basic guard") {
  auto a = fx::a2<Q>(fx::q_field());
  AlgebraData<Q> d = a->data();
  d.primitives = {a->unit()};
  d.primitive_labels = {"1"};
  CHECK_THROWS_WITH_AS(Algebra<Q>::create(d), doctest::Contains("NotSplitBasic"), Error);
}
