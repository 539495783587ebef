#pragma once

#include <string>
#include <vector>

#include "recollab/module.hpp"
#include "recollab/quiver.hpp"

namespace fx {

using namespace recollab;

inline FieldTag q_field() { return FieldTag::rationals(); }
inline FieldTag f5() { return FieldTag::prime_field(5); }

template <class S>
Relation<S> monomial(const FieldTag& f, std::vector<std::string> path) {
  return {RelationTerm<S>{make_scalar<S>(f, 1), std::move(path)}};
}

template <class S>
AlgebraPtr<S> field_k(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1"};
  return from_quiver(q, f);
}

template <class S>
AlgebraPtr<S> dual_numbers(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1"};
  q.arrows = {{"x", "1", "1"}};
  q.relations = {monomial<S>(f, {"x", "x"})};
  return from_quiver(q, f);
}

/// 1 --a--> 2
template <class S>
AlgebraPtr<S> a2(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", "1", "2"}};
  return from_quiver(q, f);
}

/// 1 --a--> 2 --b--> 3 with ab = 0
template <class S>
AlgebraPtr<S> a3_zero(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", "1", "2"}, {"b", "2", "3"}};
  q.relations = {monomial<S>(f, {"a", "b"})};
  return from_quiver(q, f);
}

/// Two arrows 1 => 2.
template <class S>
AlgebraPtr<S> kronecker(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", "1", "2"}, {"b", "1", "2"}};
  return from_quiver(q, f);
}

/// 2-cycle a: 1 -> 2, b: 2 -> 1 with ba = 0; basis e1, e2, a, b, ab.
template <class S>
AlgebraPtr<S> two_cycle(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", "1", "2"}, {"b", "2", "1"}};
  q.relations = {monomial<S>(f, {"b", "a"})};
  return from_quiver(q, f);
}

/// Loop x at 1, a: 1 -> 2, b: 2 -> 1 with xx = bx = ab = 0. The vertex 1
/// is stratifying but A/AeA has periodic syzygies.
template <class S>
AlgebraPtr<S> looped_pair(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1", "2"};
  q.arrows = {{"x", "1", "1"}, {"a", "1", "2"}, {"b", "2", "1"}};
  q.relations = {monomial<S>(f, {"x", "x"}), monomial<S>(f, {"b", "x"}), monomial<S>(f, {"a", "b"})};
  return from_quiver(q, f);
}

/// Commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with ac = bd.
template <class S>
AlgebraPtr<S> commutative_square(const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = {"1", "2", "3", "4"};
  q.arrows = {{"a", "1", "2"}, {"b", "1", "3"}, {"c", "2", "4"}, {"d", "3", "4"}};
  q.relations = {{RelationTerm<S>{make_scalar<S>(f, 1), {"a", "c"}}, RelationTerm<S>{make_scalar<S>(f, -1), {"b", "d"}}}};
  return from_quiver(q, f);
}

/// The ground field as a k-B-bimodule for a local algebra B whose unit is a
/// basis vector: B acts through its augmentation.
template <class S>
Bimodule<S> augmentation_bimodule(const AlgebraPtr<S>& k, const AlgebraPtr<S>& b) {
  std::vector<Mat<S>> left{Mat<S>::Constant(1, 1, make_scalar<S>(k->field(), 1))}, right;
  for (Index i = 0; i < b->dim(); ++i) right.push_back(Mat<S>::Constant(1, 1, b->unit()(i)));
  return Bimodule<S>(k, b, 1, left, right);
}

}  // namespace fx
