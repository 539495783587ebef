#pragma once

#include <string>
#include <vector>

#include "recollab/algebra.hpp"

namespace recollab {

struct Arrow {
  std::string label;
  std::string source;
  std::string target;
};

template <class S>
struct RelationTerm {
  S coeff;
  std::vector<std::string> path;  // arrow labels, traversed left to right
};

template <class S>
using Relation = std::vector<RelationTerm<S>>;

template <class S>
struct QuiverPresentation {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation<S>> relations;
};

struct QuiverOptions {
  int degree_bound = 32;
  /// Refuse to enumerate more paths than this in any one degree.
  long path_budget = 200000;
};

/// Path algebra modulo the ideal generated by the relations. Paths compose
/// left to right (p * q = "p then q"), so e_v A is spanned by paths starting
/// at v. The basis consists of path classes; vertices get labels "e_<v>" and
/// longer paths the arrow labels joined by "*". Vertex idempotents are the
/// primitive idempotents and the arrow ideal is attached as the radical.
template <class S>
AlgebraPtr<S> from_quiver(const QuiverPresentation<S>& q, const FieldTag& field, const QuiverOptions& opts = {});

/// Coordinates of a vertex idempotent (or a sum of them) in from_quiver's basis.
template <class S>
Vec<S> vertex_idempotent(const Algebra<S>& a, const std::vector<std::string>& vertices);

}  // namespace recollab
