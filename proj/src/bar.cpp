#include <map>

#include "recollab/homology.hpp"

namespace recollab {

namespace {

template <class S>
using Sparse = std::vector<std::pair<Index, S>>;

template <class S>
Sparse<S> compress(const std::map<Index, S>& acc) {
  Sparse<S> out;
  for (const auto& [i, x] : acc)
    if (!is_zero(x)) out.emplace_back(i, x);
  return out;
}

// Rank of a stream of sparse vectors by elimination on leading indices.
template <class S>
class SparseRank {
 public:
  explicit SparseRank(const FieldTag& f) : field_(f) {}

  void insert(Sparse<S> v) {
    while (!v.empty()) {
      auto it = pivots_.find(v.front().first);
      if (it == pivots_.end()) {
        const S inv = make_scalar<S>(field_, 1) / v.front().second;
        for (auto& e : v) e.second = e.second * inv;
        pivots_.emplace(v.front().first, std::move(v));
        return;
      }
      v = axpy(v, it->second, v.front().second);
    }
  }

  Index rank() const { return static_cast<Index>(pivots_.size()); }

 private:
  // v - c w
  static Sparse<S> axpy(const Sparse<S>& v, const Sparse<S>& w, const S& c) {
    Sparse<S> out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
      if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
        out.push_back(v[i++]);
      } else if (i == v.size() || w[j].first < v[i].first) {
        out.emplace_back(w[j].first, -(c * w[j].second));
        ++j;
      } else {
        S x = v[i].second - c * w[j].second;
        if (!is_zero(x)) out.emplace_back(v[i].first, x);
        ++i;
        ++j;
      }
    }
    return out;
  }

  FieldTag field_;
  std::map<Index, Sparse<S>> pivots_;
};

// Tuples over {0..m-1}, most significant first.
struct Tuples {
  Index m;
  Index count(int n) const {
    Index c = 1;
    for (int i = 0; i < n; ++i) c *= m;
    return c;
  }
  std::vector<Index> decode(Index x, int n) const {
    std::vector<Index> t(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = x % m;
      x /= m;
    }
    return t;
  }
  Index encode(const std::vector<Index>& t) const {
    Index x = 0;
    for (Index s : t) x = x * m + s;
    return x;
  }
};

template <class S>
struct BarData {
  Index d = 0, m = 0;
  std::vector<Index> bar;                   // basis indices spanning a complement of k1
  std::vector<std::vector<Sparse<S>>> mul;  // mul[i][j]: b_i b_j in A
  std::vector<std::vector<Sparse<S>>> red;  // red[s][t]: image of bar_s bar_t in Abar
};

template <class S>
BarData<S> bar_data(const Algebra<S>& a) {
  BarData<S> b;
  b.d = a.dim();
  Subspace<S> unit = Subspace<S>::span(Mat<S>(a.unit()));
  for (Index i : unit.complement()) b.bar.push_back(i);
  b.m = static_cast<Index>(b.bar.size());
  std::vector<Index> pos(static_cast<std::size_t>(b.d), -1);
  for (Index s = 0; s < b.m; ++s) pos[static_cast<std::size_t>(b.bar[static_cast<std::size_t>(s)])] = s;
  b.mul.assign(static_cast<std::size_t>(b.d), std::vector<Sparse<S>>(static_cast<std::size_t>(b.d)));
  for (Index i = 0; i < b.d; ++i)
    for (Index j = 0; j < b.d; ++j) {
      std::map<Index, S> acc;
      for (const auto& [k, x] : a.product(i, j)) acc[k] = x;
      b.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = compress(acc);
    }
  b.red.assign(static_cast<std::size_t>(b.m), std::vector<Sparse<S>>(static_cast<std::size_t>(b.m)));
  for (Index s = 0; s < b.m; ++s)
    for (Index t = 0; t < b.m; ++t) {
      const Sparse<S>& prod = b.mul[static_cast<std::size_t>(b.bar[static_cast<std::size_t>(s)])]
                                   [static_cast<std::size_t>(b.bar[static_cast<std::size_t>(t)])];
      Vec<S> v = Vec<S>::Constant(b.d, a.scalar(0));
      for (const auto& [k, x] : prod) v(k) = x;
      v = unit.reduce(v);
      std::map<Index, S> acc;
      for (Index k = 0; k < b.d; ++k)
        if (!is_zero(v(k))) acc[pos[static_cast<std::size_t>(k)]] = v(k);
      b.red[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = compress(acc);
    }
  return b;
}

// Rank of b_n : A (x) Abar^n -> A (x) Abar^{n-1}; index k * m^n + tuple.
template <class S>
Index homology_rank(const Algebra<S>& a, const BarData<S>& b, int n) {
  SparseRank<S> r(a.field());
  if (n <= 0) return 0;
  Tuples tp{b.m};
  const Index tn = tp.count(n), tn1 = tp.count(n - 1);
  const S one = a.scalar(1);
  for (Index k = 0; k < b.d; ++k)
    for (Index x = 0; x < tn; ++x) {
      std::vector<Index> s = tp.decode(x, n);
      std::map<Index, S> acc;
      auto add = [&](Index key, const S& c) {
        auto it = acc.find(key);
        if (it == acc.end()) acc.emplace(key, c);
        else it->second = it->second + c;
      };
      std::vector<Index> rest(s.begin() + 1, s.end());
      const Index rest_code = tp.encode(rest);
      for (const auto& [j, c] : b.mul[static_cast<std::size_t>(k)][static_cast<std::size_t>(b.bar[static_cast<std::size_t>(s[0])])])
        add(j * tn1 + rest_code, c);
      for (int i = 0; i + 1 < n; ++i) {
        const S sign = (i % 2 == 0) ? S(-one) : one;
        for (const auto& [u, c] : b.red[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])][static_cast<std::size_t>(s[static_cast<std::size_t>(i + 1)])]) {
          std::vector<Index> t;
          t.insert(t.end(), s.begin(), s.begin() + i);
          t.push_back(u);
          t.insert(t.end(), s.begin() + i + 2, s.end());
          add(k * tn1 + tp.encode(t), sign * c);
        }
      }
      const S last = (n % 2 == 0) ? one : S(-one);
      std::vector<Index> front(s.begin(), s.end() - 1);
      const Index front_code = tp.encode(front);
      for (const auto& [j, c] : b.mul[static_cast<std::size_t>(b.bar[static_cast<std::size_t>(s.back())])][static_cast<std::size_t>(k)])
        add(j * tn1 + front_code, last * c);
      r.insert(compress(acc));
    }
  return r.rank();
}

// Rank of delta^n : Hom(Abar^n, A) -> Hom(Abar^{n+1}, A), via its rows.
// Cochain coordinate (t, k) sits at tuple(t) * d + k.
template <class S>
Index cohomology_rank(const Algebra<S>& a, const BarData<S>& b, int n) {
  SparseRank<S> r(a.field());
  if (n < 0) return 0;
  Tuples tp{b.m};
  const Index tn1 = tp.count(n + 1);
  const S one = a.scalar(1);
  for (Index x = 0; x < tn1; ++x) {
    std::vector<Index> s = tp.decode(x, n + 1);
    std::vector<std::map<Index, S>> rows(static_cast<std::size_t>(b.d));
    auto add = [&](Index out, Index key, const S& c) {
      auto& acc = rows[static_cast<std::size_t>(out)];
      auto it = acc.find(key);
      if (it == acc.end()) acc.emplace(key, c);
      else it->second = it->second + c;
    };
    const Index b_first = b.bar[static_cast<std::size_t>(s.front())];
    const Index b_last = b.bar[static_cast<std::size_t>(s.back())];
    std::vector<Index> tail(s.begin() + 1, s.end()), head(s.begin(), s.end() - 1);
    const Index tail_code = tp.encode(tail), head_code = tp.encode(head);
    for (Index k = 0; k < b.d; ++k) {
      for (const auto& [out, c] : b.mul[static_cast<std::size_t>(b_first)][static_cast<std::size_t>(k)])
        add(out, tail_code * b.d + k, c);
      const S last = ((n + 1) % 2 == 0) ? one : S(-one);
      for (const auto& [out, c] : b.mul[static_cast<std::size_t>(k)][static_cast<std::size_t>(b_last)])
        add(out, head_code * b.d + k, last * c);
    }
    for (int i = 0; i < n; ++i) {
      const S sign = (i % 2 == 0) ? S(-one) : one;
      for (const auto& [u, c] : b.red[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])][static_cast<std::size_t>(s[static_cast<std::size_t>(i + 1)])]) {
        std::vector<Index> t;
        t.insert(t.end(), s.begin(), s.begin() + i);
        t.push_back(u);
        t.insert(t.end(), s.begin() + i + 2, s.end());
        const Index code = tp.encode(t);
        for (Index k = 0; k < b.d; ++k) add(k, code * b.d + k, sign * c);
      }
    }
    for (const auto& acc : rows) r.insert(compress(acc));
  }
  return r.rank();
}

}  // namespace

template <class S>
BarDims bar_oracle(const Algebra<S>& a, int n_max, Index budget) {
  BarData<S> b = bar_data(a);
  Tuples tp{b.m};
  for (int n = 0; n <= n_max + 1; ++n)
    if (b.d * tp.count(n) > budget)
      throw Error(ErrorCode::BudgetExceeded, "bar complex term " + std::to_string(n) + " has dimension " +
                                                 std::to_string(b.d * tp.count(n)) + " > " + std::to_string(budget));
  BarDims out;
  std::vector<Index> hr, cr;
  for (int n = 0; n <= n_max + 1; ++n) {
    hr.push_back(homology_rank(a, b, n));
    cr.push_back(cohomology_rank(a, b, n));
  }
  for (int n = 0; n <= n_max; ++n) {
    const Index dim = b.d * tp.count(n);
    const std::size_t k = static_cast<std::size_t>(n);
    out.homology.dims.push_back(dim - hr[k] - hr[k + 1]);
    out.cohomology.dims.push_back(dim - cr[k] - (n > 0 ? cr[k - 1] : 0));
  }
  return out;
}

#define RECOLLAB_INSTANTIATE(S) template BarDims bar_oracle<S>(const Algebra<S>&, int, Index);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
