#include "recollab/quiver.hpp"

#include <algorithm>
#include <map>

namespace recollab {

namespace {

struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;
};

struct PathTable {
  std::vector<std::vector<Path>> by_length;
  std::vector<std::map<std::vector<int>, Index>> index;  // lengths >= 1
};

template <class S>
struct Piece {
  int source = 0;
  int target = 0;
  int length = 0;
  bool homogeneous = true;
  std::vector<std::pair<std::vector<int>, S>> terms;
};

class QuiverIndex {
 public:
  explicit QuiverIndex(const std::vector<std::string>& vertices, const std::vector<Arrow>& arrows) {
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (!vertex_.emplace(vertices[v], static_cast<int>(v)).second)
        throw Error(ErrorCode::InvalidRelation, "duplicate vertex \"" + vertices[v] + "\"");
    }
    for (std::size_t a = 0; a < arrows.size(); ++a) {
      auto s = vertex_.find(arrows[a].source);
      auto t = vertex_.find(arrows[a].target);
      if (s == vertex_.end() || t == vertex_.end())
        throw Error(ErrorCode::InvalidRelation, "arrow \"" + arrows[a].label + "\" uses an unknown vertex");
      if (!arrow_.emplace(arrows[a].label, static_cast<int>(a)).second)
        throw Error(ErrorCode::InvalidRelation, "duplicate arrow \"" + arrows[a].label + "\"");
      source_.push_back(s->second);
      target_.push_back(t->second);
    }
  }

  int arrow(const std::string& label) const {
    auto it = arrow_.find(label);
    if (it == arrow_.end()) throw Error(ErrorCode::InvalidRelation, "unknown arrow \"" + label + "\" in relation");
    return it->second;
  }
  int source(int a) const { return source_[static_cast<std::size_t>(a)]; }
  int target(int a) const { return target_[static_cast<std::size_t>(a)]; }
  int arrow_count() const { return static_cast<int>(source_.size()); }
  int vertex_count() const { return static_cast<int>(vertex_.size()); }

 private:
  std::map<std::string, int> vertex_;
  std::map<std::string, int> arrow_;
  std::vector<int> source_, target_;
};

void extend_paths(PathTable& t, const QuiverIndex& q, int length, long budget) {
  while (static_cast<int>(t.by_length.size()) <= length) {
    const int d = static_cast<int>(t.by_length.size());
    std::vector<Path> next;
    if (d == 0) {
      for (int v = 0; v < q.vertex_count(); ++v) next.push_back({v, v, {}});
    } else if (d == 1) {
      for (int a = 0; a < q.arrow_count(); ++a) next.push_back({q.source(a), q.target(a), {a}});
    } else {
      for (const Path& p : t.by_length[static_cast<std::size_t>(d - 1)])
        for (int a = 0; a < q.arrow_count(); ++a) {
          if (q.source(a) != p.target) continue;
          Path np = p;
          np.arrows.push_back(a);
          np.target = q.target(a);
          next.push_back(std::move(np));
          if (static_cast<long>(next.size()) > budget)
            throw Error(ErrorCode::NotFiniteDimensional,
                        "more than " + std::to_string(budget) + " paths of length " + std::to_string(d));
        }
    }
    std::map<std::vector<int>, Index> idx;
    for (std::size_t i = 0; i < next.size(); ++i) idx.emplace(next[i].arrows, static_cast<Index>(i));
    t.by_length.push_back(std::move(next));
    t.index.push_back(std::move(idx));
  }
}

template <class S>
std::vector<Piece<S>> split_relations(const QuiverPresentation<S>& qp, const QuiverIndex& q) {
  std::vector<Piece<S>> pieces;
  for (std::size_t r = 0; r < qp.relations.size(); ++r) {
    std::map<std::pair<int, int>, Piece<S>> parts;
    for (const auto& term : qp.relations[r]) {
      if (term.path.size() < 2)
        throw Error(ErrorCode::InvalidRelation, "relation " + std::to_string(r) + " has a term of length " +
                                                    std::to_string(term.path.size()) + " (must be at least 2)");
      std::vector<int> arrows;
      for (const auto& l : term.path) arrows.push_back(q.arrow(l));
      for (std::size_t i = 1; i < arrows.size(); ++i)
        if (q.target(arrows[i - 1]) != q.source(arrows[i]))
          throw Error(ErrorCode::InvalidRelation, "relation " + std::to_string(r) + " contains a non-composable path");
      int s = q.source(arrows.front()), t = q.target(arrows.back());
      Piece<S>& piece = parts[{s, t}];
      if (piece.terms.empty()) {
        piece.source = s;
        piece.target = t;
        piece.length = static_cast<int>(arrows.size());
      } else if (piece.length != static_cast<int>(arrows.size())) {
        piece.homogeneous = false;
        piece.length = std::min(piece.length, static_cast<int>(arrows.size()));
      }
      bool merged = false;
      for (auto& [path, c] : piece.terms)
        if (path == arrows) {
          c += term.coeff;
          merged = true;
        }
      if (!merged) piece.terms.emplace_back(arrows, term.coeff);
    }
    for (auto& [key, piece] : parts) {
      std::erase_if(piece.terms, [](const auto& t) { return is_zero(t.second); });
      if (!piece.terms.empty()) pieces.push_back(std::move(piece));
    }
  }
  return pieces;
}

// Graded layout: global basis index of each surviving path, by degree.
template <class S>
struct Layout {
  std::vector<Subspace<S>> ideal;            // per degree, inside paths of that degree
  std::vector<std::vector<Index>> global;    // per degree, path index -> global index or -1
  std::vector<std::pair<int, Index>> basis;  // global index -> (degree, path index)
  int top = 0;                               // first degree that vanishes
};

template <class S>
void finish_layout(Layout<S>& lay, const PathTable& t) {
  for (int d = 0; d < lay.top; ++d) {
    const auto& ideal = lay.ideal[static_cast<std::size_t>(d)];
    std::vector<Index> g(t.by_length[static_cast<std::size_t>(d)].size(), -1);
    for (Index c : ideal.complement()) {
      g[static_cast<std::size_t>(c)] = static_cast<Index>(lay.basis.size());
      lay.basis.emplace_back(d, c);
    }
    lay.global.push_back(std::move(g));
  }
}

template <class S>
Layout<S> homogeneous_layout(const std::vector<Piece<S>>& pieces, const QuiverIndex& q, PathTable& t,
                             const FieldTag& field, const QuiverOptions& opts) {
  Layout<S> lay;
  const S one = make_scalar<S>(field, 1);
  for (int d = 0;; ++d) {
    if (d > opts.degree_bound)
      throw Error(ErrorCode::NotFiniteDimensional,
                  "paths of length " + std::to_string(opts.degree_bound) + " survive the relations");
    extend_paths(t, q, d, opts.path_budget);
    const auto& paths = t.by_length[static_cast<std::size_t>(d)];
    const Index np = static_cast<Index>(paths.size());
    Subspace<S> ideal(np);
    if (d >= 2) {
      const auto& prev = lay.ideal[static_cast<std::size_t>(d - 1)];
      const auto& prev_paths = t.by_length[static_cast<std::size_t>(d - 1)];
      for (Index r = 0; r < prev.dim(); ++r) {
        Vec<S> row = prev.basis_vector(r);
        for (int a = 0; a < q.arrow_count(); ++a) {
          Vec<S> v = Vec<S>::Constant(np, make_scalar<S>(field, 0));
          bool any = false;
          for (Index k = 0; k < row.size(); ++k) {
            if (is_zero(row(k))) continue;
            const Path& p = prev_paths[static_cast<std::size_t>(k)];
            if (p.target != q.source(a)) continue;
            std::vector<int> w = p.arrows;
            w.push_back(a);
            v(t.index[static_cast<std::size_t>(d)].at(w)) += row(k);
            any = true;
          }
          if (any) ideal.insert(v);
        }
      }
      for (const auto& piece : pieces) {
        if (piece.length > d) continue;
        const int a = d - piece.length;
        for (const Path& p : t.by_length[static_cast<std::size_t>(a)]) {
          if (p.target != piece.source) continue;
          Vec<S> v = Vec<S>::Constant(np, make_scalar<S>(field, 0));
          for (const auto& [arrows, c] : piece.terms) {
            std::vector<int> w = p.arrows;
            w.insert(w.end(), arrows.begin(), arrows.end());
            v(t.index[static_cast<std::size_t>(d)].at(w)) += c * one;
          }
          ideal.insert(v);
        }
      }
    }
    const bool vanished = ideal.dim() == np;
    lay.ideal.push_back(std::move(ideal));
    if (vanished) {
      lay.top = d;
      break;
    }
  }
  finish_layout(lay, t);
  return lay;
}

// Relations of mixed length: find N with every path of length N in the ideal,
// certified by an explicit combination of p * rho * q, then work in kQ / J^N.
template <class S>
Layout<S> certified_layout(const std::vector<Piece<S>>& pieces, const QuiverIndex& q, PathTable& t,
                           const FieldTag& field, const QuiverOptions& opts) {
  int max_len = 0;
  for (const auto& piece : pieces)
    for (const auto& term : piece.terms) max_len = std::max(max_len, static_cast<int>(term.first.size()));

  auto offsets_for = [&](int up_to) {
    std::vector<Index> off(static_cast<std::size_t>(up_to) + 2, 0);
    for (int d = 0; d <= up_to; ++d)
      off[static_cast<std::size_t>(d) + 1] =
          off[static_cast<std::size_t>(d)] + static_cast<Index>(t.by_length[static_cast<std::size_t>(d)].size());
    return off;
  };
  // Span of p * rho * q with |p| + |q| <= m, keeping terms of length < cut.
  auto ideal_span = [&](int m, int cut, const std::vector<Index>& off) {
    Subspace<S> w(off.back());
    for (const auto& piece : pieces) {
      for (int a = 0; a <= m; ++a) {
        for (int b = 0; a + b <= m; ++b) {
          for (const Path& p : t.by_length[static_cast<std::size_t>(a)]) {
            if (p.target != piece.source) continue;
            for (const Path& r : t.by_length[static_cast<std::size_t>(b)]) {
              if (r.source != piece.target) continue;
              Vec<S> v = Vec<S>::Constant(off.back(), make_scalar<S>(field, 0));
              bool any = false;
              for (const auto& [arrows, c] : piece.terms) {
                std::vector<int> word = p.arrows;
                word.insert(word.end(), arrows.begin(), arrows.end());
                word.insert(word.end(), r.arrows.begin(), r.arrows.end());
                const int len = static_cast<int>(word.size());
                if (len >= cut) continue;
                v(off[static_cast<std::size_t>(len)] + t.index[static_cast<std::size_t>(len)].at(word)) += c;
                any = true;
              }
              if (any) w.insert(v);
            }
          }
        }
      }
    }
    return w;
  };

  int found = -1;
  for (int m = 0; m <= opts.degree_bound && found < 0; ++m) {
    const int up_to = m + max_len;
    extend_paths(t, q, up_to, opts.path_budget);
    auto off = offsets_for(up_to);
    Subspace<S> w = ideal_span(m, up_to + 1, off);
    for (int n = 2; n <= m + 2 && found < 0; ++n) {
      bool all = true;
      const auto& paths = t.by_length[static_cast<std::size_t>(n)];
      for (std::size_t i = 0; i < paths.size() && all; ++i) {
        Vec<S> v = Vec<S>::Constant(off.back(), make_scalar<S>(field, 0));
        v(off[static_cast<std::size_t>(n)] + static_cast<Index>(i)) = make_scalar<S>(field, 1);
        all = w.contains(v);
      }
      if (all) found = n;
    }
  }
  if (found < 0)
    throw Error(ErrorCode::NotFiniteDimensional,
                "no power of the arrow ideal was shown to lie in the relation ideal within degree bound " +
                    std::to_string(opts.degree_bound));

  const int n = found;
  auto off = offsets_for(n - 1);
  Subspace<S> ideal = ideal_span(n - 2, n, off);
  // Re-slice the truncated ideal per degree is not possible for mixed
  // relations, so the layout keeps a single block and maps degrees onto it.
  Layout<S> lay;
  lay.top = n;
  std::vector<Index> comp = ideal.complement();
  lay.global.assign(static_cast<std::size_t>(n), {});
  for (int d = 0; d < n; ++d)
    lay.global[static_cast<std::size_t>(d)].assign(t.by_length[static_cast<std::size_t>(d)].size(), -1);
  for (Index c : comp) {
    int d = 0;
    while (off[static_cast<std::size_t>(d) + 1] <= c) ++d;
    Index local = c - off[static_cast<std::size_t>(d)];
    lay.global[static_cast<std::size_t>(d)][static_cast<std::size_t>(local)] = static_cast<Index>(lay.basis.size());
    lay.basis.emplace_back(d, local);
  }
  lay.ideal.push_back(std::move(ideal));
  return lay;
}

}  // namespace

template <class S>
AlgebraPtr<S> from_quiver(const QuiverPresentation<S>& qp, const FieldTag& field, const QuiverOptions& opts) {
  if (qp.vertices.empty()) throw Error(ErrorCode::InvalidRelation, "quiver has no vertices");
  QuiverIndex q(qp.vertices, qp.arrows);
  std::vector<Piece<S>> pieces = split_relations(qp, q);
  const bool homogeneous =
      std::all_of(pieces.begin(), pieces.end(), [](const Piece<S>& p) { return p.homogeneous; });
  PathTable t;
  Layout<S> lay = homogeneous ? homogeneous_layout(pieces, q, t, field, opts) : certified_layout(pieces, q, t, field, opts);

  const Index n = static_cast<Index>(lay.basis.size());
  const S zero = make_scalar<S>(field, 0);
  const S one = make_scalar<S>(field, 1);

  std::vector<Index> off(static_cast<std::size_t>(lay.top) + 1, 0);
  for (int d = 0; d < lay.top; ++d)
    off[static_cast<std::size_t>(d) + 1] =
        off[static_cast<std::size_t>(d)] + static_cast<Index>(t.by_length[static_cast<std::size_t>(d)].size());

  // Normal form of a single path of degree d as a sparse global vector.
  auto normal_form = [&](int d, Index path) {
    SparseVec<S> out;
    if (d >= lay.top) return out;
    Index g = lay.global[static_cast<std::size_t>(d)][static_cast<std::size_t>(path)];
    if (g >= 0) {
      out.emplace_back(g, one);
      return out;
    }
    Vec<S> v;
    const Subspace<S>* ideal;
    Index shift = 0;
    if (homogeneous) {
      ideal = &lay.ideal[static_cast<std::size_t>(d)];
      v = Vec<S>::Constant(ideal->ambient(), zero);
    } else {
      ideal = &lay.ideal[0];
      v = Vec<S>::Constant(ideal->ambient(), zero);
      shift = off[static_cast<std::size_t>(d)];
    }
    v(shift + path) = one;
    Vec<S> r = ideal->reduce(v);
    for (Index k = 0; k < r.size(); ++k) {
      if (is_zero(r(k))) continue;
      int dk = d;
      Index local = k;
      if (!homogeneous) {
        dk = 0;
        while (off[static_cast<std::size_t>(dk) + 1] <= k) ++dk;
        local = k - off[static_cast<std::size_t>(dk)];
      }
      Index gk = lay.global[static_cast<std::size_t>(dk)][static_cast<std::size_t>(local)];
      if (gk < 0) throw Error(ErrorCode::Internal, "path reduction left a non-normal path");
      out.emplace_back(gk, r(k));
    }
    return out;
  };

  AlgebraData<S> data;
  data.field = field;
  data.dim = n;
  data.table.resize(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    auto [di, pi] = lay.basis[static_cast<std::size_t>(i)];
    const Path& p = t.by_length[static_cast<std::size_t>(di)][static_cast<std::size_t>(pi)];
    if (di == 0) {
      data.labels.push_back("e_" + qp.vertices[static_cast<std::size_t>(p.source)]);
    } else {
      std::string l;
      for (std::size_t k = 0; k < p.arrows.size(); ++k)
        l += (k ? "*" : "") + qp.arrows[static_cast<std::size_t>(p.arrows[k])].label;
      data.labels.push_back(l);
    }
    for (Index j = 0; j < n; ++j) {
      auto [dj, pj] = lay.basis[static_cast<std::size_t>(j)];
      const Path& r = t.by_length[static_cast<std::size_t>(dj)][static_cast<std::size_t>(pj)];
      if (p.target != r.source) continue;
      SparseVec<S>& cell = data.table[static_cast<std::size_t>(i * n + j)];
      if (di == 0) {
        cell.emplace_back(j, one);
      } else if (dj == 0) {
        cell.emplace_back(i, one);
      } else {
        const int d = di + dj;
        if (d >= lay.top) continue;
        extend_paths(t, q, d, opts.path_budget);
        std::vector<int> w = p.arrows;
        w.insert(w.end(), r.arrows.begin(), r.arrows.end());
        cell = normal_form(d, t.index[static_cast<std::size_t>(d)].at(w));
      }
    }
  }
  data.unit = Vec<S>::Constant(n, zero);
  const Index nv = static_cast<Index>(qp.vertices.size());
  Mat<S> rad = Mat<S>::Constant(n, n - nv, zero);
  for (Index i = 0; i < n; ++i) {
    if (lay.basis[static_cast<std::size_t>(i)].first == 0) {
      data.unit(i) = one;
      Vec<S> e = Vec<S>::Constant(n, zero);
      e(i) = one;
      data.primitives.push_back(e);
      data.primitive_labels.push_back(qp.vertices[static_cast<std::size_t>(
          t.by_length[0][static_cast<std::size_t>(lay.basis[static_cast<std::size_t>(i)].second)].source)]);
    } else {
      rad(i, i - nv) = one;
    }
  }
  data.radical = rad;
  return Algebra<S>::create(std::move(data));
}

template <class S>
Vec<S> vertex_idempotent(const Algebra<S>& a, const std::vector<std::string>& vertices) {
  Vec<S> e = a.zero();
  const auto& labels = a.primitive_labels();
  for (const auto& v : vertices) {
    auto it = std::find(labels.begin(), labels.end(), v);
    if (it == labels.end()) throw Error(ErrorCode::NotIdempotent, "no primitive idempotent named \"" + v + "\"");
    e += a.primitives()[static_cast<std::size_t>(it - labels.begin())];
  }
  return e;
}

#define RECOLLAB_INSTANTIATE(S)                                                                        \
  template AlgebraPtr<S> from_quiver<S>(const QuiverPresentation<S>&, const FieldTag&, const QuiverOptions&); \
  template Vec<S> vertex_idempotent<S>(const Algebra<S>&, const std::vector<std::string>&);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
