#include "recollab/complex.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>
#include <typeinfo>

namespace recollab {

namespace {

template <class S>
Mat<S> zmat(const FieldTag& f, Index r, Index c) {
  return Mat<S>::Constant(r, c, make_scalar<S>(f, 0));
}

// Kernel as columns; a matrix without rows has everything in its kernel.
template <class S>
Mat<S> null_space(const FieldTag& f, const Mat<S>& m) {
  if (m.cols() == 0) return zmat<S>(f, 0, 0);
  if (m.rows() == 0) {
    Mat<S> id = zmat<S>(f, m.cols(), m.cols());
    for (Index i = 0; i < m.cols(); ++i) id(i, i) = make_scalar<S>(f, 1);
    return id;
  }
  return kernel_basis(m);
}

template <class S>
Index mat_rank(const Mat<S>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rank(m);
}

template <class S>
Mat<S> basis_of(const Subspace<S>& w, const FieldTag& f) {
  return w.dim() ? w.basis() : zmat<S>(f, w.ambient(), 0);
}

// Bases of the slices M e_i (right modules) or e_i N (left modules).
template <class S>
struct Slices {
  std::vector<Subspace<S>> space;
  std::vector<Mat<S>> basis;
};

template <class S, class Module>
Slices<S> slices(const Module& m) {
  const Algebra<S>& a = *m.algebra();
  Slices<S> s;
  for (const auto& p : a.primitives()) {
    Subspace<S> w = m.dim() ? Subspace<S>::span(m.act(p)) : Subspace<S>(0);
    s.basis.push_back(basis_of(w, a.field()));
    s.space.push_back(std::move(w));
  }
  return s;
}

// Module map out of a sum of e_i A determined by the images of the generators.
template <class S>
Mat<S> map_from_generators(const Algebra<S>& a, const std::vector<std::size_t>& source, const RightModule<S>& target,
                           const std::vector<Vec<S>>& images) {
  std::vector<Index> off = summand_offsets(a, source);
  Mat<S> out = zmat<S>(a.field(), target.dim(), off.back());
  for (std::size_t k = 0; k < source.size(); ++k) {
    const Mat<S>& basis = a.projective(source[k]).basis;
    for (Index c = 0; c < basis.cols(); ++c) out.col(off[k] + c) = target.act(basis.col(c)) * images[k];
  }
  return out;
}

// Some x in the target with m x = y, right-multiplied by e so it generates
// a copy of e A.
template <class S>
Vec<S> lift_through(const Mat<S>& m, const Vec<S>& y, const RightModule<S>& target, const Vec<S>& e, const char* what) {
  if (m.cols() == 0) {
    if (!is_zero<S>(y)) throw Error(ErrorCode::Internal, std::string(what) + ": nothing to lift into");
    return Vec<S>(0);
  }
  auto x = solve<S>(m, y);
  if (!x) throw Error(ErrorCode::Internal, std::string(what) + ": element not in the image");
  return target.act(e) * *x;
}

}  // namespace

// ---------------------------------------------------------------- cochain complexes

template <class S>
Index CochainComplex<S>::dim(int n) const {
  if (n < lo || n > hi()) return 0;
  return dims[static_cast<std::size_t>(n - lo)];
}

template <class S>
Mat<S> CochainComplex<S>::diff(int n) const {
  if (n >= lo && n < hi()) return d[static_cast<std::size_t>(n - lo)];
  return zmat<S>(field, dim(n + 1), dim(n));
}

template <class S>
void CochainComplex<S>::check() const {
  for (int n = lo; n + 1 < hi(); ++n)
    if (!is_zero<S>(Mat<S>(diff(n + 1) * diff(n))))
      throw Error(ErrorCode::Internal, "d^2 != 0 at degree " + std::to_string(n));
}

template <class S>
Mat<S> CochainMap<S>::at(int n, Index rows, Index cols, const FieldTag& field) const {
  if (n >= lo && n < lo + static_cast<int>(f.size())) return f[static_cast<std::size_t>(n - lo)];
  return zmat<S>(field, rows, cols);
}

template <class S>
Mat<S> Cohomology<S>::coordinates(const Mat<S>& cocycles) const {
  if (reps.cols() == 0) return Mat<S>(0, cocycles.cols());
  auto x = solve<S>(system, cocycles);
  if (!x) throw Error(ErrorCode::Internal, "not a cocycle of this degree");
  return x->bottomRows(reps.cols());
}

template <class S>
Cohomology<S> cohomology(const CochainComplex<S>& c, int n) {
  Cohomology<S> h;
  h.degree = n;
  const Index dn = c.dim(n);
  Mat<S> z = null_space(c.field, c.diff(n));
  if (dn == 0) {
    h.reps = zmat<S>(c.field, 0, 0);
    h.system = h.reps;
    return h;
  }
  Subspace<S> sp(dn);
  Mat<S> incoming = c.diff(n - 1);
  if (incoming.cols()) sp.insert_columns(incoming);
  h.boundaries = sp.dim();
  Mat<S> bnd = basis_of(sp, c.field);
  std::vector<Vec<S>> reps;
  for (Index k = 0; k < z.cols(); ++k)
    if (sp.insert(z.col(k))) reps.push_back(z.col(k));
  h.reps = zmat<S>(c.field, dn, static_cast<Index>(reps.size()));
  for (std::size_t k = 0; k < reps.size(); ++k) h.reps.col(static_cast<Index>(k)) = reps[k];
  h.system = hstack<S>(bnd, h.reps);
  return h;
}

template <class S>
Index cohomology_dim(const CochainComplex<S>& c, int n) {
  const Index dn = c.dim(n);
  if (dn == 0) return 0;
  return dn - mat_rank<S>(c.diff(n)) - mat_rank<S>(c.diff(n - 1));
}

template <class S>
Mat<S> induced_map(const Cohomology<S>& from, const Cohomology<S>& to, const Mat<S>& f) {
  if (from.dim() == 0) return Mat<S>(to.dim(), 0);
  if (to.dim() == 0) return Mat<S>(0, from.dim());
  return to.coordinates(f * from.reps);
}

// ---------------------------------------------------------------- projective terms

template <class S>
std::vector<Index> summand_offsets(const Algebra<S>& a, const std::vector<std::size_t>& summands) {
  std::vector<Index> off{0};
  for (std::size_t i : summands) off.push_back(off.back() + a.projective(i).basis.cols());
  return off;
}

template <class S>
Vec<S> generator_vector(const Algebra<S>& a, const std::vector<std::size_t>& summands, std::size_t k) {
  std::vector<Index> off = summand_offsets(a, summands);
  Vec<S> v = Vec<S>::Constant(off.back(), a.scalar(0));
  const auto& ps = a.projective(summands[k]);
  v.segment(off[k], ps.basis.cols()) = ps.space.coordinates(a.primitives()[summands[k]]);
  return v;
}

template <class S>
ElementMatrix<S> to_elements(const Algebra<S>& a, const std::vector<std::size_t>& target,
                             const std::vector<std::size_t>& source, const Mat<S>& f) {
  std::vector<Index> toff = summand_offsets(a, target);
  ElementMatrix<S> c(target.size(), std::vector<Vec<S>>(source.size()));
  for (std::size_t k = 0; k < source.size(); ++k) {
    Vec<S> img = f * generator_vector(a, source, k);
    for (std::size_t l = 0; l < target.size(); ++l) {
      const Mat<S>& basis = a.projective(target[l]).basis;
      c[l][k] = basis * img.segment(toff[l], basis.cols());
    }
  }
  return c;
}

template <class S>
Mat<S> from_elements(const Algebra<S>& a, const std::vector<std::size_t>& target,
                     const std::vector<std::size_t>& source, const ElementMatrix<S>& c) {
  std::vector<Index> toff = summand_offsets(a, target), soff = summand_offsets(a, source);
  Mat<S> out = zmat<S>(a.field(), toff.back(), soff.back());
  for (std::size_t l = 0; l < target.size(); ++l) {
    const auto& tp = a.projective(target[l]);
    for (std::size_t k = 0; k < source.size(); ++k) {
      if (is_zero<S>(c[l][k])) continue;
      const auto& sp = a.projective(source[k]);
      out.block(toff[l], soff[k], tp.basis.cols(), sp.basis.cols()) =
          tp.space.coordinates(Mat<S>(a.left_matrix(c[l][k]) * sp.basis));
    }
  }
  return out;
}

template <class S>
const std::vector<std::size_t>& ProjectiveComplex<S>::terms(int n) const {
  static const std::vector<std::size_t> none;
  if (n < lo || n > hi()) return none;
  return summands[static_cast<std::size_t>(n - lo)];
}

template <class S>
Index ProjectiveComplex<S>::dim(int n) const {
  return summand_offsets(*algebra, terms(n)).back();
}

template <class S>
RightModule<S> ProjectiveComplex<S>::module(int n) const {
  return projective_module(algebra, terms(n));
}

template <class S>
Mat<S> ProjectiveComplex<S>::diff(int n) const {
  if (n >= lo && n < hi()) return d[static_cast<std::size_t>(n - lo)];
  return zmat<S>(algebra->field(), dim(n + 1), dim(n));
}

template <class S>
ProjectiveComplex<S> ProjectiveComplex<S>::shift(int k) const {
  ProjectiveComplex out = *this;
  out.lo = lo - k;
  if (k % 2 != 0)
    for (auto& m : out.d) m = -m;
  return out;
}

template <class S>
BoundedComplex<S> BoundedComplex<S>::concentrated(const RightModule<S>& m, int degree) {
  return BoundedComplex{m.algebra(), degree, {m}, {}};
}

template <class S>
BoundedComplex<S> BoundedComplex<S>::from_projective(const ProjectiveComplex<S>& x) {
  BoundedComplex out{x.algebra, x.lo, {}, x.d};
  for (int n = x.lo; n <= x.hi(); ++n) out.modules.push_back(x.module(n));
  return out;
}

template <class S>
CochainComplex<S> underlying(const ProjectiveComplex<S>& x) {
  CochainComplex<S> c{x.algebra->field(), x.lo, {}, x.d};
  for (int n = x.lo; n <= x.hi(); ++n) c.dims.push_back(x.dim(n));
  return c;
}

template <class S>
std::vector<Index> cohomology_dims(const ProjectiveComplex<S>& x) {
  CochainComplex<S> c = underlying(x);
  std::vector<Index> out;
  for (int n = x.lo; n <= x.hi(); ++n) out.push_back(cohomology_dim(c, n));
  return out;
}

// ---------------------------------------------------------------- resolutions

template <class S>
const std::vector<std::size_t>& ProjectiveResolution<S>::terms(int n) const {
  static const std::vector<std::size_t> none;
  if (n < 0 || n > length()) return none;
  return summands[static_cast<std::size_t>(n)];
}

template <class S>
Index ProjectiveResolution<S>::dim(int n) const {
  return summand_offsets(*algebra(), terms(n)).back();
}

template <class S>
Mat<S> ProjectiveResolution<S>::diff(int n) const {
  if (n >= 1 && n <= length()) return d[static_cast<std::size_t>(n)];
  return zmat<S>(algebra()->field(), dim(n - 1), dim(n));
}

template <class S>
RightModule<S> ProjectiveResolution<S>::term(int n) const {
  return projective_module(algebra(), terms(n));
}

template <class S>
ProjectiveComplex<S> ProjectiveResolution<S>::complex(int top) const {
  ProjectiveComplex<S> x{algebra(), -top, {}, {}};
  for (int n = top; n >= 0; --n) x.summands.push_back(terms(n));
  for (int n = top; n >= 1; --n) x.d.push_back(diff(n));
  return x;
}

template <class S>
ProjectiveResolution<S> projective_resolution(const RightModule<S>& m, int depth) {
  if (depth < 0) throw Error(ErrorCode::DepthInsufficient, "negative resolution depth");
  const AlgebraPtr<S>& a = m.algebra();
  ProjectiveResolution<S> r;
  r.module = m;
  r.depth = depth;
  ProjectiveCover<S> cover = projective_cover(m);
  r.summands.push_back(cover.summands);
  r.d.push_back(Mat<S>());
  r.augmentation = cover.map;
  Mat<S> current = cover.map;
  for (int n = 0;; ++n) {
    Mat<S> ker = null_space(a->field(), current);
    if (ker.cols() == 0) {
      r.stabilized = true;
      break;
    }
    if (n == depth) break;
    RightModule<S> pn = r.term(n);
    Submodule<S> syz = submodule(pn, Subspace<S>::span(ker));
    ProjectiveCover<S> pc = projective_cover(syz.module);
    r.summands.push_back(pc.summands);
    current = syz.inclusion * pc.map;
    r.d.push_back(current);
  }
  return r;
}

template <class S>
bool is_exact(const ProjectiveResolution<S>& r) {
  const Mat<S>& eps = r.augmentation;
  if (mat_rank<S>(eps) != r.module.dim()) return false;
  auto exact_at = [&](const Mat<S>& out, const Mat<S>& in, Index mid) {
    if (out.rows() && in.cols() && !is_zero<S>(Mat<S>(out * in))) return false;
    return mat_rank<S>(in) == mid - mat_rank<S>(out);
  };
  for (int n = 0; n <= r.length(); ++n) {
    Mat<S> out = n == 0 ? eps : r.diff(n);
    if (n < r.length() && !exact_at(out, r.diff(n + 1), r.dim(n))) return false;
    if (n == r.length() && r.stabilized && mat_rank<S>(out) != r.dim(n)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- cache

namespace {

struct MemoKey {
  std::uint64_t algebra, module;
  std::string scalar;
  bool operator<(const MemoKey& o) const {
    return std::tie(algebra, module, scalar) < std::tie(o.algebra, o.module, o.scalar);
  }
};

std::mutex cache_mu;
std::optional<std::filesystem::path> cache_dir;
std::map<MemoKey, std::shared_ptr<const void>> memo;

template <class S>
ProjectiveResolution<S> truncate(const ProjectiveResolution<S>& r, int depth) {
  ProjectiveResolution<S> out = r;
  out.depth = depth;
  if (r.length() > depth) {
    out.summands.resize(static_cast<std::size_t>(depth + 1));
    out.d.resize(static_cast<std::size_t>(depth + 1));
    out.stabilized = false;
  }
  return out;
}

template <class S>
bool covers(const ProjectiveResolution<S>& r, int depth) {
  return r.stabilized || r.depth >= depth;
}

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace

void set_resolution_cache(std::optional<std::filesystem::path> dir) {
  std::lock_guard<std::mutex> lock(cache_mu);
  cache_dir = std::move(dir);
}

std::optional<std::filesystem::path> resolution_cache() {
  std::lock_guard<std::mutex> lock(cache_mu);
  return cache_dir;
}

void clear_resolution_memo() {
  std::lock_guard<std::mutex> lock(cache_mu);
  memo.clear();
}

template <class S>
std::string serialize_resolution(const ProjectiveResolution<S>& r) {
  std::ostringstream os;
  auto put = [&](const char* tag, const Mat<S>& m) {
    os << tag << ' ' << m.rows() << ' ' << m.cols();
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) os << ' ' << format_scalar(m(i, j));
    os << '\n';
  };
  os << "recollab-resolution 1\n";
  os << "field " << r.algebra()->field().to_string() << '\n';
  os << "algebra " << hex(r.algebra()->hash()) << '\n';
  os << "module " << hex(r.module.hash()) << '\n';
  os << "depth " << r.depth << '\n';
  os << "stabilized " << (r.stabilized ? 1 : 0) << '\n';
  os << "length " << r.length() << '\n';
  for (const auto& s : r.summands) {
    os << "summands " << s.size();
    for (std::size_t i : s) os << ' ' << i;
    os << '\n';
  }
  put("augmentation", r.augmentation);
  for (int n = 1; n <= r.length(); ++n) put("d", r.d[static_cast<std::size_t>(n)]);
  return os.str();
}

template <class S>
ProjectiveResolution<S> deserialize_resolution(const std::string& text, const RightModule<S>& m) {
  std::istringstream is(text);
  const FieldTag& field = m.algebra()->field();
  auto fail = [](const std::string& why) { return Error(ErrorCode::ParseError, "resolution cache: " + why); };
  auto expect = [&](const std::string& word) {
    std::string w;
    if (!(is >> w) || w != word) throw fail("expected '" + word + "'");
  };
  auto get_mat = [&](const std::string& tag) {
    expect(tag);
    Index rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw fail("bad matrix shape");
    Mat<S> mat(rows, cols);
    std::string tok;
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) {
        if (!(is >> tok)) throw fail("truncated matrix");
        mat(i, j) = ScalarTraits<S>::parse(field, tok);
      }
    return mat;
  };
  std::string tok;
  expect("recollab-resolution");
  is >> tok;
  expect("field");
  is >> tok;
  if (tok != field.to_string()) throw fail("field differs");
  expect("algebra");
  is >> tok;
  if (tok != hex(m.algebra()->hash())) throw fail("algebra hash differs");
  expect("module");
  is >> tok;
  if (tok != hex(m.hash())) throw fail("module hash differs");
  ProjectiveResolution<S> r;
  r.module = m;
  int stab = 0, length = 0;
  expect("depth");
  is >> r.depth;
  expect("stabilized");
  is >> stab;
  expect("length");
  is >> length;
  if (!is || length < 0) throw fail("bad header");
  r.stabilized = stab != 0;
  const std::size_t np = m.algebra()->primitives().size();
  for (int n = 0; n <= length; ++n) {
    expect("summands");
    std::size_t count = 0;
    is >> count;
    std::vector<std::size_t> s(count);
    for (auto& i : s) {
      if (!(is >> i) || i >= np) throw fail("bad summand");
    }
    r.summands.push_back(std::move(s));
  }
  r.augmentation = get_mat("augmentation");
  r.d.push_back(Mat<S>());
  for (int n = 1; n <= length; ++n) r.d.push_back(get_mat("d"));
  if (r.augmentation.rows() != m.dim() || r.augmentation.cols() != r.dim(0)) throw fail("augmentation shape");
  for (int n = 1; n <= length; ++n)
    if (r.d[static_cast<std::size_t>(n)].rows() != r.dim(n - 1) || r.d[static_cast<std::size_t>(n)].cols() != r.dim(n))
      throw fail("differential shape");
  return r;
}

template <class S>
ProjectiveResolution<S> cached_resolution(const RightModule<S>& m, int depth) {
  MemoKey key{m.algebra()->hash(), m.hash(), typeid(S).name()};
  std::optional<std::filesystem::path> dir;
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = memo.find(key);
    if (it != memo.end()) {
      const auto& r = *static_cast<const ProjectiveResolution<S>*>(it->second.get());
      if (same_algebra(*r.algebra(), *m.algebra()) && covers(r, depth)) return truncate(r, depth);
    }
    dir = cache_dir;
  }
  std::optional<ProjectiveResolution<S>> found;
  std::filesystem::path file;
  if (dir) {
    file = *dir / (hex(key.algebra) + "-" + hex(key.module) + "-" + ScalarTraits<S>::name + ".res");
    std::ifstream in(file);
    if (in) {
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        auto r = deserialize_resolution<S>(buf.str(), m);
        if (covers(r, depth)) found = std::move(r);
      } catch (const Error&) {
        // A damaged or foreign entry is simply recomputed.
      }
    }
  }
  if (!found) {
    found = projective_resolution(m, depth);
    if (dir) {
      std::error_code ec;
      std::filesystem::create_directories(*dir, ec);
      std::filesystem::path tmp = file;
      tmp += "." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + ".tmp";
      {
        std::ofstream out(tmp);
        out << serialize_resolution(*found);
      }
      std::filesystem::rename(tmp, file, ec);
    }
  }
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto& slot = memo[key];
    if (!slot || !covers(*static_cast<const ProjectiveResolution<S>*>(slot.get()), found->depth))
      slot = std::make_shared<const ProjectiveResolution<S>>(*found);
  }
  return truncate(*found, depth);
}

// ---------------------------------------------------------------- Hom and tensor

template <class S>
CochainComplex<S> hom_complex(const ProjectiveComplex<S>& x, const BoundedComplex<S>& y) {
  const Algebra<S>& a = *x.algebra;
  require_same(a, *y.algebra, "hom_complex");
  const FieldTag& field = a.field();
  std::vector<Slices<S>> ys;
  for (const auto& mod : y.modules) ys.push_back(slices<S>(mod));
  auto yslice = [&](int q) -> const Slices<S>& { return ys[static_cast<std::size_t>(q - y.lo)]; };
  auto ymod = [&](int q) -> const RightModule<S>& { return y.modules[static_cast<std::size_t>(q - y.lo)]; };
  auto ydiff = [&](int q) -> const Mat<S>& { return y.d[static_cast<std::size_t>(q - y.lo)]; };
  std::vector<ElementMatrix<S>> elems;  // elems[p - x.lo]: X^p -> X^{p+1}
  for (int p = x.lo; p < x.hi(); ++p) elems.push_back(to_elements(a, x.terms(p + 1), x.terms(p), x.diff(p)));

  // Layout of Hom^n: components p with q = p + n, each a sum over generators of Y^q e_i.
  struct Comp {
    int p;
    Index offset;
    std::vector<Index> gen;  // offsets of generator blocks, relative to offset
  };
  auto layout = [&](int n, Index& total) {
    std::vector<Comp> comps;
    total = 0;
    for (int p = x.lo; p <= x.hi(); ++p) {
      const int q = p + n;
      if (q < y.lo || q > y.hi()) continue;
      Comp c{p, total, {0}};
      for (std::size_t i : x.terms(p)) c.gen.push_back(c.gen.back() + yslice(q).basis[i].cols());
      total += c.gen.back();
      comps.push_back(std::move(c));
    }
    return comps;
  };

  CochainComplex<S> out;
  out.field = field;
  out.lo = y.lo - x.hi();
  const int top = y.hi() - x.lo;
  if (x.summands.empty() || y.modules.empty() || top < out.lo) {
    out.lo = 0;
    return out;
  }
  std::vector<std::vector<Comp>> comps;
  for (int n = out.lo; n <= top; ++n) {
    Index total = 0;
    comps.push_back(layout(n, total));
    out.dims.push_back(total);
  }
  for (int n = out.lo; n < top; ++n) {
    const auto& src = comps[static_cast<std::size_t>(n - out.lo)];
    const auto& dst = comps[static_cast<std::size_t>(n + 1 - out.lo)];
    Mat<S> dm = zmat<S>(field, out.dim(n + 1), out.dim(n));
    const S sign = make_scalar<S>(field, (n % 2 == 0) ? -1 : 1);
    for (const Comp& c : src) {
      const int p = c.p, q = p + n;
      const auto& terms = x.terms(p);
      for (const Comp& t : dst) {
        if (t.p == p && q + 1 <= y.hi()) {
          // f -> d_Y f, generator by generator.
          for (std::size_t k = 0; k < terms.size(); ++k) {
            const std::size_t i = terms[k];
            const Mat<S>& from = yslice(q).basis[i];
            if (from.cols() == 0 || yslice(q + 1).basis[i].cols() == 0) continue;
            Mat<S> img = ydiff(q) * from;
            dm.block(t.offset + t.gen[k], c.offset + c.gen[k], t.gen[k + 1] - t.gen[k], from.cols()) =
                yslice(q + 1).space[i].coordinates(img);
          }
        }
        if (t.p == p - 1) {
          // f -> sign * f d_X: (f d)(g_k) = sum_l f(g_l) c_lk.
          const ElementMatrix<S>& c_el = elems[static_cast<std::size_t>(p - 1 - x.lo)];
          const auto& sterms = x.terms(p - 1);
          for (std::size_t k = 0; k < sterms.size(); ++k) {
            const Mat<S>& tb = yslice(q).basis[sterms[k]];
            if (tb.cols() == 0) continue;
            for (std::size_t l = 0; l < terms.size(); ++l) {
              const Vec<S>& el = c_el[l][k];
              const Mat<S>& fb = yslice(q).basis[terms[l]];
              if (fb.cols() == 0 || is_zero<S>(el)) continue;
              Mat<S> img = ymod(q).act(el) * fb;
              dm.block(t.offset + t.gen[k], c.offset + c.gen[l], tb.cols(), fb.cols()) =
                  sign * yslice(q).space[sterms[k]].coordinates(img);
            }
          }
        }
      }
    }
    out.d.push_back(std::move(dm));
  }
  return out;
}

template <class S>
CochainComplex<S> hom_complex(const ProjectiveResolution<S>& p, const RightModule<S>& n, int top) {
  return hom_complex(p.complex(top), BoundedComplex<S>::concentrated(n, 0));
}

template <class S>
CochainMap<S> hom_postcompose(const ProjectiveResolution<S>& p, const RightModule<S>& n, const RightModule<S>& n2,
                              const Mat<S>& h, int top) {
  if (!is_homomorphism(n, n2, h)) throw Error(ErrorCode::InvalidModule, "hom_postcompose: not a module map");
  const Algebra<S>& a = *p.algebra();
  Slices<S> s1 = slices<S>(n), s2 = slices<S>(n2);
  CochainMap<S> out;
  out.lo = 0;
  for (int deg = 0; deg <= top; ++deg) {
    const auto& terms = p.terms(deg);
    Index rows = 0, cols = 0;
    for (std::size_t i : terms) {
      rows += s2.basis[i].cols();
      cols += s1.basis[i].cols();
    }
    Mat<S> m = zmat<S>(a.field(), rows, cols);
    Index r = 0, c = 0;
    for (std::size_t i : terms) {
      const Index w1 = s1.basis[i].cols(), w2 = s2.basis[i].cols();
      if (w1 && w2) m.block(r, c, w2, w1) = s2.space[i].coordinates(Mat<S>(h * s1.basis[i]));
      r += w2;
      c += w1;
    }
    out.f.push_back(std::move(m));
  }
  return out;
}

template <class S>
Mat<S> cochain_to_map(const ProjectiveResolution<S>& p, int n, const RightModule<S>& target, const Vec<S>& cochain) {
  const Algebra<S>& a = *p.algebra();
  Slices<S> sl = slices<S>(target);
  const auto& terms = p.terms(n);
  std::vector<Vec<S>> images;
  Index off = 0;
  for (std::size_t i : terms) {
    const Mat<S>& b = sl.basis[i];
    images.push_back(b.cols() ? Vec<S>(b * cochain.segment(off, b.cols())) : Vec<S>(Vec<S>::Constant(target.dim(), a.scalar(0))));
    off += b.cols();
  }
  if (off != cochain.size()) throw Error(ErrorCode::DimensionMismatch, "cochain has the wrong length");
  return map_from_generators(a, terms, target, images);
}

template <class S>
Vec<S> map_to_cochain(const ProjectiveResolution<S>& p, int n, const RightModule<S>& target, const Mat<S>& map) {
  const Algebra<S>& a = *p.algebra();
  Slices<S> sl = slices<S>(target);
  const auto& terms = p.terms(n);
  std::vector<Vec<S>> parts;
  Index total = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    Vec<S> img = map * generator_vector(a, terms, k);
    parts.push_back(sl.space[terms[k]].dim() ? sl.space[terms[k]].coordinates(img) : Vec<S>(0));
    total += parts.back().size();
  }
  Vec<S> out(total);
  Index off = 0;
  for (const auto& v : parts) {
    out.segment(off, v.size()) = v;
    off += v.size();
  }
  return out;
}

template <class S>
CochainComplex<S> tensor_complex(const ProjectiveComplex<S>& x, const LeftModule<S>& n) {
  const Algebra<S>& a = *x.algebra;
  require_same(a, *n.algebra(), "tensor_complex");
  Slices<S> sl = slices<S>(n);
  CochainComplex<S> out;
  out.field = a.field();
  out.lo = x.lo;
  auto dims_of = [&](const std::vector<std::size_t>& terms) {
    std::vector<Index> off{0};
    for (std::size_t i : terms) off.push_back(off.back() + sl.basis[i].cols());
    return off;
  };
  for (int p = x.lo; p <= x.hi(); ++p) out.dims.push_back(dims_of(x.terms(p)).back());
  for (int p = x.lo; p < x.hi(); ++p) {
    const auto& src = x.terms(p);
    const auto& dst = x.terms(p + 1);
    ElementMatrix<S> c = to_elements(a, dst, src, x.diff(p));
    std::vector<Index> so = dims_of(src), to = dims_of(dst);
    Mat<S> dm = zmat<S>(a.field(), to.back(), so.back());
    for (std::size_t k = 0; k < src.size(); ++k) {
      const Mat<S>& fb = sl.basis[src[k]];
      if (fb.cols() == 0) continue;
      for (std::size_t l = 0; l < dst.size(); ++l) {
        if (sl.basis[dst[l]].cols() == 0 || is_zero<S>(c[l][k])) continue;
        dm.block(to[l], so[k], to[l + 1] - to[l], fb.cols()) =
            sl.space[dst[l]].coordinates(Mat<S>(n.act(c[l][k]) * fb));
      }
    }
    out.d.push_back(std::move(dm));
  }
  return out;
}

template <class S>
CochainComplex<S> tensor_complex(const ProjectiveResolution<S>& p, const LeftModule<S>& n, int top) {
  return tensor_complex(p.complex(top), n);
}

// ---------------------------------------------------------------- lifts

template <class S>
ChainMap<S> lift_map(const Mat<S>& f, const ProjectiveResolution<S>& p, const ProjectiveResolution<S>& q) {
  if (!is_homomorphism(p.module, q.module, f)) throw Error(ErrorCode::InvalidModule, "lift_map: not a module map");
  if (!q.stabilized && q.length() < p.length())
    throw Error(ErrorCode::DepthMismatch, "lift_map: target resolution is shorter than the source");
  return lift_cocycle<S>(Mat<S>(f * p.augmentation), 0, p, q, p.length());
}

template <class S>
ChainMap<S> lift_cocycle(const Mat<S>& phi, int shift, const ProjectiveResolution<S>& p,
                         const ProjectiveResolution<S>& q, int steps) {
  const Algebra<S>& a = *p.algebra();
  require_same(a, *q.algebra(), "lift");
  if (shift + steps > p.length() && !p.stabilized)
    throw Error(ErrorCode::DepthInsufficient, "source resolution too short for the requested lift");
  if (steps > q.length() && !q.stabilized)
    throw Error(ErrorCode::DepthInsufficient, "target resolution too short for the requested lift");
  ChainMap<S> out;
  Mat<S> prev;  // F_{j-1} as a map P_{shift+j-1} -> Q_{j-1}
  for (int j = 0; j <= steps; ++j) {
    const auto& src = p.terms(shift + j);
    RightModule<S> qj = q.term(j);
    std::vector<Vec<S>> images;
    for (std::size_t k = 0; k < src.size(); ++k) {
      Vec<S> g = generator_vector(a, src, k);
      Vec<S> target = j == 0 ? Vec<S>(phi * g) : Vec<S>(prev * (p.diff(shift + j) * g));
      Mat<S> through = j == 0 ? q.augmentation : q.diff(j);
      images.push_back(lift_through<S>(through, target, qj, a.primitives()[src[k]], "lift"));
    }
    Mat<S> fj = map_from_generators(a, src, qj, images);
    out.f.push_back(fj);
    prev = fj;
  }
  return out;
}

template <class S>
void check_short_exact(const RightModule<S>& m1, const RightModule<S>& m, const RightModule<S>& m2, const Mat<S>& f,
                       const Mat<S>& g) {
  auto fail = [](const std::string& why) { return Error(ErrorCode::InputNotExact, why); };
  if (f.rows() != m.dim() || f.cols() != m1.dim() || g.rows() != m2.dim() || g.cols() != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "short exact sequence maps have wrong shapes");
  if (!is_homomorphism(m1, m, f) || !is_homomorphism(m, m2, g)) throw fail("maps are not module homomorphisms");
  if (mat_rank<S>(f) != m1.dim()) throw fail("first map is not injective");
  if (mat_rank<S>(g) != m2.dim()) throw fail("second map is not surjective");
  if (m1.dim() + m2.dim() != m.dim()) throw fail("dimensions do not add up");
  if (f.cols() && g.rows() && !is_zero<S>(Mat<S>(g * f))) throw fail("composite is not zero");
}

template <class S>
Horseshoe<S> horseshoe(const RightModule<S>& m1, const RightModule<S>& m, const RightModule<S>& m2, const Mat<S>& f,
                       const Mat<S>& g, int depth) {
  check_short_exact(m1, m, m2, f, g);
  const Algebra<S>& a = *m.algebra();
  const FieldTag& field = a.field();
  Horseshoe<S> h{cached_resolution(m1, depth), {}, cached_resolution(m2, depth)};
  const auto& pl = h.left;
  const auto& pr = h.right;
  ProjectiveResolution<S>& mid = h.middle;
  mid.module = m;
  mid.depth = depth;
  mid.stabilized = pl.stabilized && pr.stabilized;
  const int len = std::max(pl.length(), pr.length());
  for (int n = 0; n <= len; ++n) {
    std::vector<std::size_t> s = pl.terms(n);
    s.insert(s.end(), pr.terms(n).begin(), pr.terms(n).end());
    mid.summands.push_back(std::move(s));
  }
  // sigma: P''_0 -> M lifting the augmentation of M'' through g.
  std::vector<Vec<S>> imgs;
  for (std::size_t k = 0; k < pr.terms(0).size(); ++k) {
    Vec<S> y = pr.augmentation * generator_vector(a, pr.terms(0), k);
    imgs.push_back(lift_through<S>(g, y, m, a.primitives()[pr.terms(0)[k]], "horseshoe"));
  }
  Mat<S> sigma = map_from_generators(a, pr.terms(0), m, imgs);
  mid.augmentation = hstack<S>(Mat<S>(f * pl.augmentation), sigma);
  mid.d.push_back(Mat<S>());
  Mat<S> tau_prev;
  for (int n = 1; n <= len; ++n) {
    const auto& src = pr.terms(n);
    RightModule<S> target = pl.term(n - 1);
    std::vector<Vec<S>> t;
    for (std::size_t k = 0; k < src.size(); ++k) {
      Vec<S> gk = generator_vector(a, src, k);
      const Vec<S>& e = a.primitives()[src[k]];
      if (n == 1) {
        // epsilon' tau_1 = -f^{-1} sigma d''_1.
        Vec<S> y = sigma * (pr.diff(1) * gk);
        auto x = solve<S>(f, Vec<S>(-y));
        if (!x) throw Error(ErrorCode::Internal, "horseshoe: boundary not in the kernel");
        t.push_back(lift_through<S>(pl.augmentation, *x, target, e, "horseshoe"));
      } else {
        // d'_{n-1} tau_n = -tau_{n-1} d''_n.
        Vec<S> y = -(tau_prev * (pr.diff(n) * gk));
        t.push_back(lift_through<S>(pl.diff(n - 1), y, target, e, "horseshoe"));
      }
    }
    Mat<S> tau = map_from_generators(a, src, target, t);
    const Index r1 = pl.dim(n - 1), r2 = pr.dim(n - 1), c1 = pl.dim(n), c2 = pr.dim(n);
    Mat<S> dn = zmat<S>(field, r1 + r2, c1 + c2);
    if (r1 && c1) dn.topLeftCorner(r1, c1) = pl.diff(n);
    if (r1 && c2) dn.topRightCorner(r1, c2) = tau;
    if (r2 && c2) dn.bottomRightCorner(r2, c2) = pr.diff(n);
    mid.d.push_back(std::move(dn));
    tau_prev = tau;
  }
  if (!is_exact(mid)) throw Error(ErrorCode::Internal, "horseshoe resolution is not exact");
  return h;
}

// ---------------------------------------------------------------- perfect complexes

template <class S>
bool is_exceptional(const ProjectiveComplex<S>& x) {
  CochainComplex<S> c = hom_complex(x, BoundedComplex<S>::from_projective(x));
  for (int n = c.lo; n <= c.hi(); ++n)
    if (n != 0 && cohomology_dim(c, n) != 0) return false;
  return true;
}

template <class S>
ProjectiveComplex<S> dualize_perfect(const ProjectiveComplex<S>& x, const AlgebraPtr<S>& opposite_algebra) {
  const Algebra<S>& a = *x.algebra;
  const Algebra<S>& op = *opposite_algebra;
  if (op.dim() != a.dim() || op.primitives().size() != a.primitives().size())
    throw Error(ErrorCode::AlgebraMismatch, "dualize_perfect: not the opposite algebra");
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j)
      if (op.product(i, j) != a.product(j, i))
        throw Error(ErrorCode::AlgebraMismatch, "dualize_perfect: not the opposite algebra");
  ProjectiveComplex<S> out{opposite_algebra, -x.hi(), {}, {}};
  for (int p = x.hi(); p >= x.lo; --p) out.summands.push_back(x.terms(p));
  for (int p = x.hi(); p > x.lo; --p) {
    // Dual of d: X^{p-1} -> X^p maps the dual of X^p to the dual of X^{p-1}.
    ElementMatrix<S> c = to_elements(a, x.terms(p), x.terms(p - 1), x.diff(p - 1));
    ElementMatrix<S> t(x.terms(p - 1).size(), std::vector<Vec<S>>(x.terms(p).size()));
    for (std::size_t l = 0; l < c.size(); ++l)
      for (std::size_t k = 0; k < c[l].size(); ++k) t[k][l] = c[l][k];
    out.d.push_back(from_elements(op, x.terms(p - 1), x.terms(p), t));
  }
  return out;
}

#define RECOLLAB_INSTANTIATE(S)                                                                                     \
  template struct CochainComplex<S>;                                                                                \
  template struct CochainMap<S>;                                                                                    \
  template struct Cohomology<S>;                                                                                    \
  template struct ProjectiveComplex<S>;                                                                             \
  template struct BoundedComplex<S>;                                                                                \
  template struct ProjectiveResolution<S>;                                                                          \
  template Cohomology<S> cohomology<S>(const CochainComplex<S>&, int);                                              \
  template Index cohomology_dim<S>(const CochainComplex<S>&, int);                                                  \
  template Mat<S> induced_map<S>(const Cohomology<S>&, const Cohomology<S>&, const Mat<S>&);                        \
  template std::vector<Index> summand_offsets<S>(const Algebra<S>&, const std::vector<std::size_t>&);               \
  template Vec<S> generator_vector<S>(const Algebra<S>&, const std::vector<std::size_t>&, std::size_t);             \
  template ElementMatrix<S> to_elements<S>(const Algebra<S>&, const std::vector<std::size_t>&,                      \
                                           const std::vector<std::size_t>&, const Mat<S>&);                         \
  template Mat<S> from_elements<S>(const Algebra<S>&, const std::vector<std::size_t>&,                              \
                                   const std::vector<std::size_t>&, const ElementMatrix<S>&);                       \
  template CochainComplex<S> underlying<S>(const ProjectiveComplex<S>&);                                            \
  template std::vector<Index> cohomology_dims<S>(const ProjectiveComplex<S>&);                                      \
  template ProjectiveResolution<S> projective_resolution<S>(const RightModule<S>&, int);                            \
  template ProjectiveResolution<S> cached_resolution<S>(const RightModule<S>&, int);                                \
  template std::string serialize_resolution<S>(const ProjectiveResolution<S>&);                                     \
  template ProjectiveResolution<S> deserialize_resolution<S>(const std::string&, const RightModule<S>&);            \
  template bool is_exact<S>(const ProjectiveResolution<S>&);                                                        \
  template CochainComplex<S> hom_complex<S>(const ProjectiveComplex<S>&, const BoundedComplex<S>&);                 \
  template CochainComplex<S> hom_complex<S>(const ProjectiveResolution<S>&, const RightModule<S>&, int);            \
  template CochainMap<S> hom_postcompose<S>(const ProjectiveResolution<S>&, const RightModule<S>&,                  \
                                            const RightModule<S>&, const Mat<S>&, int);                             \
  template CochainComplex<S> tensor_complex<S>(const ProjectiveComplex<S>&, const LeftModule<S>&);                  \
  template Mat<S> cochain_to_map<S>(const ProjectiveResolution<S>&, int, const RightModule<S>&, const Vec<S>&);      \
  template Vec<S> map_to_cochain<S>(const ProjectiveResolution<S>&, int, const RightModule<S>&, const Mat<S>&);      \
  template CochainComplex<S> tensor_complex<S>(const ProjectiveResolution<S>&, const LeftModule<S>&, int);          \
  template ChainMap<S> lift_map<S>(const Mat<S>&, const ProjectiveResolution<S>&, const ProjectiveResolution<S>&);  \
  template ChainMap<S> lift_cocycle<S>(const Mat<S>&, int, const ProjectiveResolution<S>&,                          \
                                       const ProjectiveResolution<S>&, int);                                        \
  template void check_short_exact<S>(const RightModule<S>&, const RightModule<S>&, const RightModule<S>&,           \
                                     const Mat<S>&, const Mat<S>&);                                                 \
  template Horseshoe<S> horseshoe<S>(const RightModule<S>&, const RightModule<S>&, const RightModule<S>&,           \
                                     const Mat<S>&, const Mat<S>&, int);                                            \
  template bool is_exceptional<S>(const ProjectiveComplex<S>&);                                                     \
  template ProjectiveComplex<S> dualize_perfect<S>(const ProjectiveComplex<S>&, const AlgebraPtr<S>&);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
