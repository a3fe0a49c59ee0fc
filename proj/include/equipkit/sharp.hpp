#pragma once

// Simplicial categories of slice objects over the standard simplices: faces
// and degeneracies, universal boundary extensions, companions of chains,
// cotabulators and double colimits. The cat and sset sites share one
// implementation through the traits in site.hpp; cospans are separate.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "equipkit/profcollage.hpp"
#include "equipkit/site.hpp"

namespace equipkit {

/// An object of level n: a carrier with a monotone labelling of its points
/// by 0..n, i.e. a map to the n-simplex. Labels are indexed by element id;
/// for simplicial sets only vertex entries are meaningful (others are -1).
template <class S>
struct Slice {
  typename S::Obj carrier;
  int n = 0;
  std::vector<int> label;
};

using SSetSlice = Slice<SSetSite>;
using CatSlice = Slice<CatSite>;

template <class S>
std::optional<std::string> slice_violation(const Slice<S>& x) {
  if (x.n < 0) return "negative level";
  if (x.label.size() != S::size(x.carrier)) return "label vector has wrong length";
  for (int v : S::points(x.carrier))
    if (x.label[v] < 0 || x.label[v] > x.n) return "label out of range";
  if constexpr (std::is_same_v<S, SSetSite>) {
    for (size_t s = 0; s < x.carrier->size(); ++s) {
      const auto& vs = x.carrier->verts[s];
      for (size_t a = 0; a + 1 < vs.size(); ++a)
        if (x.label[vs[a]] > x.label[vs[a + 1]]) return "labels decrease along '" + x.carrier->names[s] + "'";
    }
  } else {
    for (int m = 0; m < x.carrier->num_morphisms(); ++m)
      if (x.label[x.carrier->src(m)] > x.label[x.carrier->dst(m)])
        return "morphism " + x.carrier->morphisms[m].id + " runs downward";
  }
  return std::nullopt;
}

template <class S>
void validate(const Slice<S>& x) {
  if (auto v = slice_violation(x)) throw Error(ErrorCode::ValidationError, "slice object: " + *v);
}

/// Level-0 object with every point labelled 0.
template <class S>
Slice<S> level_zero(const typename S::Obj& x) {
  Slice<S> s{x, 0, std::vector<int>(S::size(x), -1)};
  for (int v : S::points(x)) s.label[v] = 0;
  return s;
}

template <class S>
Slice<S> from_labels(const typename S::Obj& x, int n, const std::vector<int>& point_label) {
  Slice<S> s{x, n, point_label};
  validate(s);
  return s;
}

inline SSetSlice sset_slice(const SimplicialMap& p, int n) {
  SSetSlice s{p.src, n, vertex_labels(p)};
  validate(s);
  return s;
}

inline SimplicialMap structure_map(const SSetSlice& x) {
  return map_to_simplex(x.carrier, share(std_simplex(x.n)), x.n, x.label);
}

inline CatSlice cat_slice(const Collage& c) { return {c.carrier, c.n, c.p.ob}; }
inline Collage to_collage(const CatSlice& x) { return make_collage(x.carrier, x.label, x.n); }

/// Slice morphisms respect the labels; this is the check.
template <class S>
bool over_same_simplex(const typename S::Map& f, const Slice<S>& a, const Slice<S>& b,
                       const delta::Mono* theta = nullptr) {
  for (int v : S::points(a.carrier)) {
    int t = a.label[v];
    if (theta) t = (*theta)[t];
    if (b.label[S::point_image(f, v)] != t) return false;
  }
  return true;
}

// ---- faces, restrictions, degeneracies ----------------------------------

template <class S>
struct Restriction {
  Slice<S> obj;
  typename S::Map incl;
};

/// The part over the vertices `keep` (ascending), relabelled to 0..|keep|-1; names kept.
template <class S>
Restriction<S> restrict_slice(const Slice<S>& x, const std::vector<int>& keep) {
  std::vector<int> pos(x.n + 1, -1);
  for (size_t a = 0; a < keep.size(); ++a) {
    if (keep[a] < 0 || keep[a] > x.n || (a && keep[a] <= keep[a - 1]))
      throw Error(ErrorCode::ValidationError, "restriction: vertex list must be ascending within range");
    pos[keep[a]] = static_cast<int>(a);
  }
  auto [sub, incl] = S::sub(x.carrier, [&](int v) { return pos[x.label[v]] >= 0; });
  Slice<S> r{sub, static_cast<int>(keep.size()) - 1, std::vector<int>(S::size(sub), -1)};
  for (int v : S::points(sub)) r.label[v] = pos[x.label[S::point_image(incl, v)]];
  return {std::move(r), std::move(incl)};
}

inline std::vector<int> all_but(int n, int i) {
  std::vector<int> v;
  for (int j = 0; j <= n; ++j)
    if (j != i) v.push_back(j);
  return v;
}

/// d_i: pullback along the coface d^i, i.e. the part avoiding label i.
template <class S>
Restriction<S> face_slice(const Slice<S>& x, int i) {
  if (x.n == 0) throw Error(ErrorCode::ValidationError, "level-0 objects have no faces");
  if (i < 0 || i > x.n) throw Error(ErrorCode::ValidationError, "face index out of range");
  return restrict_slice(x, all_but(x.n, i));
}

template <class S>
struct Degeneracy {
  Slice<S> obj;
  typename S::Map proj;  // to the original carrier
};

/// s_i: pullback of x × Δ¹ along ι_i = (s^i, χ_{>i}) : Δ^{n+1} → Δⁿ × Δ¹.
/// ι_i is a mono onto the chain (0,0) < … < (i,0) < (i,1) < … < (n,1), so the
/// pullback is the part of x × Δ¹ whose points lie over that chain.
template <class S>
Degeneracy<S> degeneracy_slice(const Slice<S>& x, int i) {
  if (i < 0 || i > x.n) throw Error(ErrorCode::ValidationError, "degeneracy index out of range");
  auto t = S::times(x.carrier, 1);
  auto base_label = [&](int v) { return x.label[S::point_image(t.proj, v)]; };
  auto [sub, incl] = S::sub(t.obj(), [&](int v) {
    int j = base_label(v);
    return t.coord[v] == 0 ? j <= i : j >= i;
  });
  Slice<S> r{sub, x.n + 1, std::vector<int>(S::size(sub), -1)};
  for (int v : S::points(sub)) {
    int w = S::point_image(incl, v);
    r.label[v] = base_label(w) + t.coord[w];
  }
  return {std::move(r), S::compose(t.proj, incl)};
}

/// s_0^{(n)} of a level-0 object, through iterated degeneracies.
template <class S>
Degeneracy<S> iterated_degeneracy(const typename S::Obj& x, int n) {
  Degeneracy<S> d{level_zero<S>(x), S::identity(x)};
  for (int k = 0; k < n; ++k) {
    auto next = degeneracy_slice(d.obj, 0);
    d = {std::move(next.obj), S::compose(d.proj, next.proj)};
  }
  return d;
}

/// Label-preserving isomorphism between objects of the same level.
template <class S>
std::optional<std::pair<typename S::Map, typename S::Map>> slice_iso(const Slice<S>& a, const Slice<S>& b,
                                                                     long budget = 1000000) {
  if (a.n != b.n) return std::nullopt;
  return S::iso(a.carrier, &a.label, b.carrier, &b.label, budget);
}

template <class S>
bool same_by_ids(const Slice<S>& a, const Slice<S>& b) {
  return a.n == b.n && S::same_by_ids(a.carrier, a.label, b.carrier, b.label);
}

// ---- boundary extension ---------------------------------------------------

template <class S>
struct Extension {
  Slice<S> y;
  typename S::Map f;  // x -> y
};

namespace detail {

template <class S>
std::vector<int> push_labels(const typename S::Obj& target, const std::vector<typename S::Map>& maps,
                             const std::vector<std::vector<int>>& labels) {
  std::vector<int> out(S::size(target), -1);
  for (size_t k = 0; k < maps.size(); ++k)
    for (int v : S::points(maps[k].src)) {
      int w = S::point_image(maps[k], v);
      if (out[w] >= 0 && out[w] != labels[k][v])
        throw Error(ErrorCode::IncompatibleBoundary, "boundary maps disagree on the simplex of a point");
      out[w] = labels[k][v];
    }
  return out;
}

/// Keys present in both maps must agree.
inline std::optional<std::string> disagreement(const std::map<std::string, std::string>& a,
                                               const std::map<std::string, std::string>& b) {
  for (auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end() && it->second != v) return k;
  }
  return std::nullopt;
}

}  // namespace detail

/// The universal y with d_i y = y^i and d_i f = f^i: the pushout of ∂x → x
/// along f^•. `fs[i]` may have any domain named like d_i x. New elements are
/// named `prefix` + their name in x.
template <class S>
Extension<S> equipment_extend(const Slice<S>& x, const std::vector<Slice<S>>& ys,
                              const std::vector<typename S::Map>& fs, const std::string& prefix,
                              long budget = 10000) {
  validate(x);
  int n = x.n;
  if (n == 0) return {x, S::identity(x.carrier)};
  if (static_cast<int>(ys.size()) != n + 1 || static_cast<int>(fs.size()) != n + 1)
    throw Error(ErrorCode::ValidationError, "boundary data needs one object and one map per face");
  std::vector<Restriction<S>> dx;
  std::vector<typename S::Map> g;
  for (int i = 0; i <= n; ++i) {
    if (ys[i].n != n - 1) throw Error(ErrorCode::IncompatibleBoundary, "boundary object " + std::to_string(i) + " has wrong level");
    dx.push_back(face_slice(x, i));
    auto gi = S::compose(fs[i], S::by_names(dx[i].obj.carrier, fs[i].src));
    if (gi.dst != ys[i].carrier) gi = S::corestrict(gi, ys[i].carrier);
    if (!over_same_simplex<S>(gi, dx[i].obj, ys[i]))
      throw Error(ErrorCode::IncompatibleBoundary, "boundary map " + std::to_string(i) + " does not respect labels");
    g.push_back(std::move(gi));
  }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j && n >= 2; ++i) {
      auto a = face_slice(ys[j], i);
      auto b = face_slice(ys[i], j - 1);
      if (!same_by_ids(a.obj, b.obj))
        throw Error(ErrorCode::IncompatibleBoundary,
                    "d_" + std::to_string(i) + " y^" + std::to_string(j) + " differs from d_" + std::to_string(j - 1) +
                        " y^" + std::to_string(i));
    }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j; ++i)
      if (auto k = detail::disagreement(S::image_names(g[i]), S::image_names(g[j])))
        throw Error(ErrorCode::IncompatibleBoundary, "boundary maps " + std::to_string(i) + " and " + std::to_string(j) +
                                                         " disagree at '" + *k + "'");
  typename S::Diagram d;
  std::vector<int> ynode;
  for (int i = 0; i <= n; ++i) ynode.push_back(d.add_node(ys[i].carrier, ""));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j && n >= 2; ++i) {
      auto z = face_slice(ys[j], i);
      int zn = d.add_node(z.obj.carrier, "");
      d.add_edge(zn, ynode[j], z.incl);
      d.add_edge(zn, ynode[i], S::by_names(z.obj.carrier, ys[i].carrier));
    }
  int xnode = d.add_node(x.carrier, prefix);
  for (int i = 0; i <= n; ++i) {
    int fnode = d.add_node(dx[i].obj.carrier, prefix);
    d.add_edge(fnode, xnode, dx[i].incl);
    d.add_edge(fnode, ynode[i], g[i]);
  }
  auto col = S::colimit(d, budget);
  const auto& Y = S::colimit_obj(col);
  std::vector<typename S::Map> legs;
  std::vector<std::vector<int>> labs;
  for (int i = 0; i <= n; ++i) {
    legs.push_back(col.cocone[ynode[i]]);
    auto l = ys[i].label;
    auto up = delta::coface(n, i);
    for (int& v : l)
      if (v >= 0) v = up[v];
    labs.push_back(std::move(l));
  }
  legs.push_back(col.cocone[xnode]);
  labs.push_back(x.label);
  Extension<S> out{{Y, n, detail::push_labels<S>(Y, legs, labs)}, col.cocone[xnode]};
  validate(out.y);
  for (int i = 0; i <= n; ++i)
    if (!same_by_ids(face_slice(out.y, i).obj, ys[i]))
      throw Error(ErrorCode::IncompatibleBoundary,
                  "the pushout acquires elements over face " + std::to_string(i) + " (composites across the boundary); no filler",
                  {{"face", i}, {"expected", S::describe(ys[i].carrier)},
                   {"got", S::describe(face_slice(out.y, i).obj.carrier)}});
  return out;
}

/// Extension from maps on a cover of the vertices: every vertex subset not
/// inside a cover piece is filled in by equipment_extend, bottom dimension up.
template <class S>
Extension<S> strong_equipment_extend(const Slice<S>& x, const std::vector<std::vector<int>>& cover,
                                     const std::vector<Slice<S>>& ys, const std::vector<typename S::Map>& fs,
                                     const std::string& prefix, long budget = 10000) {
  validate(x);
  int n = x.n;
  if (cover.size() != ys.size() || cover.size() != fs.size())
    throw Error(ErrorCode::ValidationError, "cover, targets and maps must have equal length");
  std::vector<char> covered(n + 1, 0);
  std::vector<Restriction<S>> xa;
  for (size_t a = 0; a < cover.size(); ++a) {
    if (cover[a].empty()) throw Error(ErrorCode::ValidationError, "empty cover piece");
    for (int v : cover[a])
      if (v >= 0 && v <= n) covered[v] = 1;
    xa.push_back(restrict_slice(x, cover[a]));
    if (ys[a].n != static_cast<int>(cover[a].size()) - 1)
      throw Error(ErrorCode::ValidationError, "cover target has wrong level");
  }
  for (int v = 0; v <= n; ++v)
    if (!covered[v]) throw Error(ErrorCode::CoverIncomplete, "vertex " + std::to_string(v) + " lies in no cover piece");
  std::vector<typename S::Map> ga;
  for (size_t a = 0; a < cover.size(); ++a) {
    auto g = S::compose(fs[a], S::by_names(xa[a].obj.carrier, fs[a].src));
    if (g.dst != ys[a].carrier) g = S::corestrict(g, ys[a].carrier);
    if (!over_same_simplex<S>(g, xa[a].obj, ys[a]))
      throw Error(ErrorCode::ValidationError, "cover map does not respect labels");
    ga.push_back(std::move(g));
  }
  auto positions = [](const std::vector<int>& sub, const std::vector<int>& in) -> std::optional<std::vector<int>> {
    std::vector<int> p;
    for (int v : sub) {
      auto it = std::find(in.begin(), in.end(), v);
      if (it == in.end()) return std::nullopt;
      p.push_back(static_cast<int>(it - in.begin()));
    }
    return p;
  };
  // agreement on overlaps
  for (size_t a = 0; a < cover.size(); ++a)
    for (size_t b = a + 1; b < cover.size(); ++b) {
      std::vector<int> common;
      for (int v : cover[a])
        if (std::find(cover[b].begin(), cover[b].end(), v) != cover[b].end()) common.push_back(v);
      if (common.empty()) continue;
      std::sort(common.begin(), common.end());
      auto ra = restrict_slice(ys[a], *positions(common, cover[a]));
      auto rb = restrict_slice(ys[b], *positions(common, cover[b]));
      if (!same_by_ids(ra.obj, rb.obj))
        throw Error(ErrorCode::RestrictionMismatch, "targets of cover pieces " + std::to_string(a) + " and " +
                                                        std::to_string(b) + " differ on their overlap");
      if (auto k = detail::disagreement(S::image_names(ga[a]), S::image_names(ga[b])))
        throw Error(ErrorCode::RestrictionMismatch, "cover maps disagree at '" + *k + "'");
    }
  std::map<std::vector<int>, Extension<S>> done;
  std::map<std::vector<int>, Slice<S>> dom;
  for (int size = 1; size <= n + 1; ++size)
    for (auto& sub : delta::subsets(n + 1, size)) {
      auto xs = restrict_slice(x, sub).obj;
      dom[sub] = xs;
      std::optional<Extension<S>> e;
      for (size_t a = 0; a < cover.size() && !e; ++a) {
        auto p = positions(sub, cover[a]);
        if (!p) continue;
        auto ry = restrict_slice(ys[a], *p);
        auto h = S::compose(ga[a], S::by_names(xs.carrier, xa[a].obj.carrier));
        e = Extension<S>{ry.obj, S::corestrict(h, ry.obj.carrier)};
      }
      if (!e) {
        std::vector<Slice<S>> bys;
        std::vector<typename S::Map> bfs;
        for (int i = 0; i < size; ++i) {
          auto face = sub;
          face.erase(face.begin() + i);
          bys.push_back(done.at(face).y);
          bfs.push_back(done.at(face).f);
        }
        e = equipment_extend(xs, bys, bfs, prefix + delta::vertex_string(sub, n) + ":", budget);
      }
      done.emplace(sub, std::move(*e));
    }
  auto top = delta::identity(n);
  auto& res = done.at(top);
  return {res.y, S::compose(res.f, S::by_names(x.carrier, dom.at(top).carrier))};
}

// ---- companions of chains ---------------------------------------------------

template <class S>
struct Arrow {
  typename S::Map map;
  std::string name;
  bool identity = false;
  int tag = -1;  // index morphism, when the chain comes from a diagram
};

template <class S>
struct Chain {
  std::vector<typename S::Obj> objects;
  std::vector<std::string> object_names;
  std::vector<Arrow<S>> arrows;  // arrows[k] : objects[k] -> objects[k+1]

  int dim() const { return static_cast<int>(arrows.size()); }
  std::string label() const {
    if (arrows.empty()) return object_names.at(0);
    std::string s = "<";
    for (size_t k = 0; k < arrows.size(); ++k) s += (k ? "," : "") + arrows[k].name;
    return s + ">";
  }
};

template <class S>
Arrow<S> compose_arrows(const Arrow<S>& g, const Arrow<S>& f) {
  return {S::compose(g.map, f.map), g.name + "." + f.name, g.identity && f.identity, -1};
}

/// Builds σ* recursively: σ* = σ for n = 0, otherwise the extension of
/// s^{(n)} x_0 = x_0 × Δⁿ along (φ_{d_nσ}, …, φ_{d_1σ}, φ_{d_0σ} ∘ s^{n-1} f_1).
/// Results are memoized by chain label, so faces are shared by identity.
template <class S>
class CompanionBuilder {
 public:
  using Composer = std::function<Arrow<S>(const Arrow<S>&, const Arrow<S>&)>;

  struct Entry {
    Slice<S> obj;
    typename S::Map phi;  // base.obj() -> obj.carrier
    typename S::Times base;
    std::string label;
  };

  explicit CompanionBuilder(Composer c = compose_arrows<S>, long budget = 10000)
      : compose_(std::move(c)), budget_(budget) {}

  Chain<S> face(const Chain<S>& c, int i) const {
    int n = c.dim();
    if (n == 0 || i < 0 || i > n) throw Error(ErrorCode::ValidationError, "chain face out of range");
    Chain<S> d = c;
    d.objects.erase(d.objects.begin() + i);
    d.object_names.erase(d.object_names.begin() + i);
    if (i == 0) {
      d.arrows.erase(d.arrows.begin());
    } else if (i == n) {
      d.arrows.pop_back();
    } else {
      d.arrows[i - 1] = compose_(c.arrows[i], c.arrows[i - 1]);
      d.arrows.erase(d.arrows.begin() + i);
    }
    return d;
  }

  const Entry& build(const Chain<S>& c) {
    auto key = c.label();
    if (auto it = memo_.find(key); it != memo_.end()) return *it->second;
    int n = c.dim();
    if (static_cast<int>(c.objects.size()) != n + 1) throw Error(ErrorCode::ValidationError, "chain object count");
    for (int k = 0; k < n; ++k)
      if (c.arrows[k].map.src != c.objects[k] || c.arrows[k].map.dst != c.objects[k + 1])
        throw Error(ErrorCode::ValidationError, "chain arrow " + c.arrows[k].name + " does not connect its objects");
    auto e = std::make_shared<Entry>();
    e->label = key;
    e->base = S::times(c.objects[0], n);
    if (n == 0) {
      e->obj = level_zero<S>(c.objects[0]);
      e->phi = e->base.proj;
    } else {
      Slice<S> x{e->base.obj(), n, e->base.coord};
      std::vector<Slice<S>> ys;
      std::vector<typename S::Map> fs;
      for (int i = 0; i <= n; ++i) {
        const Entry& sub = build(face(c, i));
        auto r = face_slice(x, i);
        auto a = S::compose(e->base.proj, r.incl);
        if (i == 0) a = S::compose(c.arrows[0].map, a);
        fs.push_back(S::compose(sub.phi, S::times_pair(sub.base, a, r.obj.label)));
        ys.push_back(sub.obj);
      }
      auto ext = equipment_extend(x, ys, fs, key + ":", budget_);
      e->obj = std::move(ext.y);
      e->phi = std::move(ext.f);
    }
    memo_[key] = e;
    return *e;
  }

  size_t size() const { return memo_.size(); }

 private:
  Composer compose_;
  long budget_;
  std::map<std::string, std::shared_ptr<Entry>> memo_;
};

/// Chain from objects and maps; object names default to "x0", "x1", … and
/// arrow names to "f1", "f2", …. Elements are prefixed by their object name
/// so that the gluing in the companions is unambiguous.
template <class S>
Chain<S> make_chain(const std::vector<typename S::Obj>& objects, const std::vector<typename S::Map>& maps,
                    std::vector<std::string> object_names = {}, std::vector<std::string> map_names = {}) {
  if (objects.size() != maps.size() + 1) throw Error(ErrorCode::ValidationError, "a chain has one more object than maps");
  Chain<S> c;
  if (object_names.empty())
    for (size_t k = 0; k < objects.size(); ++k) object_names.push_back("x" + std::to_string(k));
  if (map_names.empty())
    for (size_t k = 0; k < maps.size(); ++k) map_names.push_back("f" + std::to_string(k + 1));
  c.object_names = object_names;
  for (size_t k = 0; k < objects.size(); ++k) c.objects.push_back(S::rename(objects[k], object_names[k] + ":"));
  for (size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].src != objects[k] || maps[k].dst != objects[k + 1])
      throw Error(ErrorCode::ValidationError, "map " + map_names[k] + " does not connect its objects");
    c.arrows.push_back({S::retarget(maps[k], c.objects[k], c.objects[k + 1]), map_names[k], false, -1});
  }
  return c;
}

template <class S>
Extension<S> companion_simplex(const Chain<S>& c, long budget = 10000) {
  CompanionBuilder<S> b(compose_arrows<S>, budget);
  const auto& e = b.build(c);
  return {e.obj, e.phi};
}

/// Iterated one-step extensions: step k uses the cover {0}, …, {k-1}, {k..n}
/// with identities on the singletons and s^{n-k} f_k on the last piece.
template <class S>
Slice<S> tower_representation(const Chain<S>& c, long budget = 10000) {
  int n = c.dim();
  auto prev = S::times(c.objects[0], n);
  Slice<S> cur{prev.obj(), n, prev.coord};
  for (int k = 1; k <= n; ++k) {
    auto next = S::times(c.objects[k], n - k);
    std::vector<std::vector<int>> cover;
    std::vector<Slice<S>> ys;
    std::vector<typename S::Map> fs;
    for (int j = 0; j < k; ++j) {
      auto r = restrict_slice(cur, {j});
      cover.push_back({j});
      ys.push_back(r.obj);
      fs.push_back(S::identity(r.obj.carrier));
    }
    std::vector<int> top;
    for (int j = k; j <= n; ++j) top.push_back(j);
    auto r = restrict_slice(cur, top);
    auto a = S::compose(prev.proj, S::by_names(r.obj.carrier, prev.obj()));
    cover.push_back(top);
    ys.push_back({next.obj(), n - k, next.coord});
    fs.push_back(S::times_pair(next, S::compose(c.arrows[k - 1].map, a), r.obj.label));
    cur = strong_equipment_extend(cur, cover, ys, fs, "t" + std::to_string(k) + ":", budget).y;
    prev = std::move(next);
  }
  return cur;
}

/// Chain with an identity inserted at position i (the degeneracy s_i σ). The
/// repeated object enters as a renamed copy so both ends stay distinguishable.
template <class S>
Chain<S> degenerate_chain(const Chain<S>& c, int i) {
  if (i < 0 || i > c.dim()) throw Error(ErrorCode::ValidationError, "chain degeneracy out of range");
  Chain<S> d = c;
  auto name = c.object_names[i] + "'";
  auto copy = S::rename(c.objects[i], name + ":");
  d.objects.insert(d.objects.begin() + i, copy);
  d.object_names.insert(d.object_names.begin() + i, name);
  if (i > 0) d.arrows[i - 1].map = S::retarget(c.arrows[i - 1].map, c.objects[i - 1], copy);
  d.arrows.insert(d.arrows.begin() + i,
                  Arrow<S>{S::retarget(S::identity(c.objects[i]), copy, c.objects[i]), "1_" + c.object_names[i], true, -1});
  return d;
}

struct AlphaReport {
  int index = 0;
  bool isomorphic = false;  // (s_i σ)* ≅ s_i(σ*) over Δ^{n+1}
  std::string lhs, rhs;     // sizes
};

/// Compares (s_i σ)* with s_i(σ*) by a label-preserving isomorphism search.
template <class S>
AlphaReport alpha_comparison(const Chain<S>& c, int i, long budget = 10000, long iso_budget = 1000000) {
  auto lhs = companion_simplex(degenerate_chain(c, i), budget).y;
  auto rhs = degeneracy_slice(companion_simplex(c, budget).y, i).obj;
  AlphaReport r{i, slice_iso(lhs, rhs, iso_budget).has_value(), S::describe(lhs.carrier), S::describe(rhs.carrier)};
  return r;
}

// ---- cotabulators and double colimits -------------------------------------

template <class S>
struct Cotabulator {
  typename S::Obj obj;
  typename S::Times cylinder;  // obj × Δⁿ
  typename S::Map eta;         // x -> s^{(n)} ⊥_x, as a map into obj × Δⁿ
};

/// ⊥_x forgets the map to the simplex; η pairs the identity with the labels.
template <class S>
Cotabulator<S> cotabulator(const Slice<S>& x) {
  validate(x);
  auto t = S::times(x.carrier, x.n);
  auto eta = S::times_pair(t, S::identity(x.carrier), x.label);
  return {x.carrier, std::move(t), std::move(eta)};
}

/// Checks ⊥ of the strong extension against the pushout of
/// ∐⊥x_α → ⊥x and ∐⊥x_α → ∐⊥y_α; returns the isomorphism.
template <class S>
std::pair<typename S::Map, typename S::Map> cotab_of_extension(const Slice<S>& x,
                                                               const std::vector<std::vector<int>>& cover,
                                                               const std::vector<Slice<S>>& ys,
                                                               const std::vector<typename S::Map>& fs,
                                                               long budget = 10000, long iso_budget = 1000000) {
  auto ext = strong_equipment_extend(x, cover, ys, fs, "e:", budget);
  typename S::Diagram d;
  int xn = d.add_node(x.carrier, "x:");
  for (size_t a = 0; a < cover.size(); ++a) {
    int yn = d.add_node(ys[a].carrier, "y" + std::to_string(a) + ":");
    auto r = restrict_slice(x, cover[a]);
    int an = d.add_node(r.obj.carrier, "a" + std::to_string(a) + ":");
    d.add_edge(an, xn, r.incl);
    d.add_edge(an, yn, S::compose(fs[a], S::by_names(r.obj.carrier, fs[a].src)));
  }
  auto col = S::colimit(d, budget);
  auto iso = S::iso(ext.y.carrier, nullptr, S::colimit_obj(col), nullptr, iso_budget);
  if (!iso)
    throw Error(ErrorCode::VerificationFailed, "cotabulator of the extension is not the pushout",
                {{"extension", S::describe(ext.y.carrier)}, {"pushout", S::describe(S::colimit_obj(col))}});
  return *iso;
}

/// A lax horizontal diagram restricted to the nondegenerate simplices of the
/// index: a slice object per simplex σ and, per operator σ → θ*σ, the map
/// ψ_θ : F(θ*σ) → F(σ) over θ.
template <class S>
struct HorizontalDiagram {
  CatPtr index;
  GroIndex gro;
  std::vector<Slice<S>> value;
  std::vector<typename S::Map> psi;

  void validate() const {
    const auto& G = *gro.cat;
    if (static_cast<int>(value.size()) != G.num_objects() || static_cast<int>(psi.size()) != G.num_morphisms())
      throw Error(ErrorCode::ValidationError, "horizontal diagram size mismatch");
    for (int o = 0; o < G.num_objects(); ++o) {
      equipkit::validate(value[o]);
      if (value[o].n != gro.nerve.obj->dims[gro.simplex[o]])
        throw Error(ErrorCode::ValidationError, "level of F(" + G.objects[o] + ") differs from the simplex dimension");
    }
    for (int p = 0; p < G.num_morphisms(); ++p) {
      const auto& m = psi[p];
      if (m.src != value[G.dst(p)].carrier || m.dst != value[G.src(p)].carrier)
        throw Error(ErrorCode::ValidationError, "psi at " + G.morphisms[p].id + " has wrong ends");
      S::validate(m);
      if (!over_same_simplex<S>(m, value[G.dst(p)], value[G.src(p)], &gro.theta[p]))
        throw Error(ErrorCode::ValidationError, "psi at " + G.morphisms[p].id + " is not over its operator");
    }
    for (int p = 0; p < G.num_morphisms(); ++p)
      for (int q = 0; q < G.num_morphisms(); ++q)
        if (G.src(q) == G.dst(p) && !(psi[G.compose(q, p)] == S::compose(psi[p], psi[q])))
          throw Error(ErrorCode::ValidationError, "psi not functorial at " + G.morphisms[q].id + " . " + G.morphisms[p].id);
  }
};

template <class S>
struct DoubleColimit {
  typename S::Obj obj;
  std::vector<typename S::Map> legs;  // ⊥F(σ) -> dcolim, per simplex
};

/// Colimit over Gro(J)^op of the cotabulators.
template <class S>
DoubleColimit<S> dcolim(const HorizontalDiagram<S>& D, long budget = 10000, bool prefix_nodes = false) {
  D.validate();
  const auto& G = *D.gro.cat;
  typename S::Diagram d;
  for (int o = 0; o < G.num_objects(); ++o)
    d.add_node(D.value[o].carrier, prefix_nodes ? G.objects[o] + ":" : "");
  for (int p = 0; p < G.num_morphisms(); ++p)
    if (!G.is_identity(p)) d.add_edge(G.dst(p), G.src(p), D.psi[p]);
  auto col = S::colimit(d, budget);
  return {S::colimit_obj(col), col.cocone};
}

/// Functor data J -> vertical category of a site.
template <class S>
struct VerticalDiagram {
  CatPtr index;
  std::vector<typename S::Obj> nodes;  // per object
  std::vector<typename S::Map> edges;  // per morphism

  void validate() const {
    const auto& J = *index;
    if (static_cast<int>(nodes.size()) != J.num_objects() || static_cast<int>(edges.size()) != J.num_morphisms())
      throw Error(ErrorCode::ValidationError, "diagram size mismatch");
    for (int a = 0; a < J.num_morphisms(); ++a) {
      if (edges[a].src != nodes[J.src(a)] || edges[a].dst != nodes[J.dst(a)])
        throw Error(ErrorCode::ValidationError, "edge " + J.morphisms[a].id + " has wrong ends");
      S::validate(edges[a]);
    }
    for (int x = 0; x < J.num_objects(); ++x)
      if (!(edges[J.identities[x]] == S::identity(nodes[x])))
        throw Error(ErrorCode::ValidationError, "identity not sent to identity at " + J.objects[x]);
    for (int f = 0; f < J.num_morphisms(); ++f)
      for (int g = 0; g < J.num_morphisms(); ++g)
        if (J.src(g) == J.dst(f) && !(edges[J.compose(g, f)] == S::compose(edges[g], edges[f])))
          throw Error(ErrorCode::ValidationError, "not functorial at " + J.morphisms[g].id + " . " + J.morphisms[f].id);
  }

  /// The same diagram with node elements prefixed by their index object.
  VerticalDiagram renamed() const {
    VerticalDiagram r{index, {}, {}};
    for (int x = 0; x < index->num_objects(); ++x) r.nodes.push_back(S::rename(nodes[x], index->objects[x] + ":"));
    for (int a = 0; a < index->num_morphisms(); ++a)
      r.edges.push_back(S::retarget(edges[a], r.nodes[index->src(a)], r.nodes[index->dst(a)]));
    return r;
  }

  /// The chain of a nondegenerate nerve simplex.
  Chain<S> chain(const Nerve& nv, int s) const {
    Chain<S> c;
    int o = nv.vertex_object[s];
    c.objects.push_back(nodes[o]);
    c.object_names.push_back(index->objects[o]);
    for (int a : nv.chain[s]) {
      o = index->dst(a);
      c.objects.push_back(nodes[o]);
      c.object_names.push_back(index->objects[o]);
      c.arrows.push_back({edges[a], index->morphisms[a].id, index->is_identity(a), a});
    }
    return c;
  }

  typename CompanionBuilder<S>::Composer composer() const {
    auto J = index;
    auto es = edges;
    return [J, es](const Arrow<S>& g, const Arrow<S>& f) {
      int a = J->compose(g.tag, f.tag);
      return Arrow<S>{es[a], J->morphisms[a].id, J->is_identity(a), a};
    };
  }
};

inline VerticalDiagram<CatSite> to_vertical(const CatDiagram& F) { return {F.index, F.nodes, F.edges}; }

/// F*: the companion of every nondegenerate simplex of the index, faces
/// shared by name, ψ the name inclusions. Node elements are prefixed by
/// their index object so that the gluing is unambiguous.
template <class S>
HorizontalDiagram<S> companion_horizontal(const VerticalDiagram<S>& F, int dim_bound, long budget = 10000) {
  F.validate();
  auto R = F.renamed();
  HorizontalDiagram<S> H;
  H.index = F.index;
  H.gro = gro_of_index(*F.index, dim_bound);
  CompanionBuilder<S> b(R.composer(), budget);
  const auto& G = *H.gro.cat;
  for (int o = 0; o < G.num_objects(); ++o) H.value.push_back(b.build(R.chain(H.gro.nerve, H.gro.simplex[o])).obj);
  for (int p = 0; p < G.num_morphisms(); ++p)
    H.psi.push_back(S::by_names(H.value[G.dst(p)].carrier, H.value[G.src(p)].carrier));
  return H;
}

// ---- cospans --------------------------------------------------------------

/// A functor from the costar category: legs X_0..X_n, each with a function to the apex.
struct CospanSlice {
  int n = 0;
  std::vector<std::string> apex;
  std::vector<std::vector<std::string>> legs;
  std::vector<std::vector<int>> maps;  // maps[i][e] in apex

  bool operator==(const CospanSlice&) const = default;
  std::optional<std::string> violation() const {
    if (static_cast<int>(legs.size()) != n + 1 || maps.size() != legs.size()) return "need n+1 legs";
    for (size_t i = 0; i < legs.size(); ++i) {
      if (maps[i].size() != legs[i].size()) return "leg " + std::to_string(i) + " map has wrong length";
      for (int t : maps[i])
        if (t < 0 || t >= static_cast<int>(apex.size())) return "leg " + std::to_string(i) + " maps outside the apex";
    }
    return std::nullopt;
  }
  void validate() const {
    if (auto v = violation()) throw Error(ErrorCode::ValidationError, "cospan: " + *v);
  }
};

/// Component maps on each leg and on the apex.
struct CospanMorphism {
  std::vector<std::vector<int>> legs;
  std::vector<int> apex;
};

/// Precomposition with the coface: leg i is deleted.
inline CospanSlice face_cospan(const CospanSlice& x, int i) {
  x.validate();
  if (x.n == 0 || i < 0 || i > x.n) throw Error(ErrorCode::ValidationError, "cospan face out of range");
  auto y = x;
  --y.n;
  y.legs.erase(y.legs.begin() + i);
  y.maps.erase(y.maps.begin() + i);
  return y;
}

/// Precomposition with the codegeneracy: leg i is repeated.
inline CospanSlice degeneracy_cospan(const CospanSlice& x, int i) {
  x.validate();
  if (i < 0 || i > x.n) throw Error(ErrorCode::ValidationError, "cospan degeneracy out of range");
  auto y = x;
  ++y.n;
  y.legs.insert(y.legs.begin() + i, x.legs[i]);
  y.maps.insert(y.maps.begin() + i, x.maps[i]);
  return y;
}

struct CospanExtension {
  CospanSlice y;
  CospanMorphism f;
};

/// Filler of a cospan boundary. For n = 1 the apex is the pushout of the two
/// apex maps; for n ≥ 2 the faces already share their apex.
inline CospanExtension equipment_extend(const CospanSlice& x, const std::vector<CospanSlice>& ys,
                                        const std::vector<CospanMorphism>& fs) {
  x.validate();
  int n = x.n;
  if (n == 0) {
    CospanMorphism id;
    for (auto& l : x.legs) {
      std::vector<int> v(l.size());
      for (size_t e = 0; e < l.size(); ++e) v[e] = static_cast<int>(e);
      id.legs.push_back(v);
    }
    for (size_t e = 0; e < x.apex.size(); ++e) id.apex.push_back(static_cast<int>(e));
    return {x, id};
  }
  if (static_cast<int>(ys.size()) != n + 1 || static_cast<int>(fs.size()) != n + 1)
    throw Error(ErrorCode::ValidationError, "boundary data needs one object and one map per face");
  for (int i = 0; i <= n; ++i) {
    ys[i].validate();
    if (ys[i].n != n - 1) throw Error(ErrorCode::IncompatibleBoundary, "boundary cospan has wrong level");
  }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j && n >= 2; ++i)
      if (!(face_cospan(ys[j], i) == face_cospan(ys[i], j - 1)))
        throw Error(ErrorCode::IncompatibleBoundary, "boundary cospans disagree on a shared face");
  // face i of x has legs d^i(0..n-1); check naturality of each f^i
  for (int i = 0; i <= n; ++i) {
    auto dx = face_cospan(x, i);
    if (fs[i].legs.size() != dx.legs.size() || fs[i].apex.size() != dx.apex.size())
      throw Error(ErrorCode::IncompatibleBoundary, "boundary map " + std::to_string(i) + " has wrong shape");
    for (size_t l = 0; l < dx.legs.size(); ++l)
      for (size_t e = 0; e < dx.legs[l].size(); ++e)
        if (fs[i].apex[dx.maps[l][e]] != ys[i].maps[l][fs[i].legs[l][e]])
          throw Error(ErrorCode::IncompatibleBoundary, "boundary map " + std::to_string(i) + " is not natural");
  }
  CospanExtension out;
  out.y.n = n;
  out.f.legs.resize(n + 1);
  // leg j of the filler comes from any face keeping it; faces must agree
  for (int j = 0; j <= n; ++j) {
    int i = j == 0 ? 1 : 0;
    int pos = j > i ? j - 1 : j;
    out.y.legs.push_back(ys[i].legs[pos]);
    out.f.legs[j] = fs[i].legs[pos];
    for (int k = 0; k <= n; ++k) {
      if (k == j) continue;
      int pk = j > k ? j - 1 : j;
      if (fs[k].legs[pk] != out.f.legs[j] || ys[k].legs[pk] != out.y.legs[j])
        throw Error(ErrorCode::IncompatibleBoundary, "boundary maps disagree on leg " + std::to_string(j));
    }
  }
  if (n == 1) {
    // pushout of apex(y^0) <- apex(x) -> apex(y^1)
    size_t a0 = ys[0].apex.size(), a1 = ys[1].apex.size();
    detail::UnionFind uf(a0 + a1);
    for (size_t e = 0; e < x.apex.size(); ++e) uf.unite(fs[0].apex[e], static_cast<int>(a0) + fs[1].apex[e]);
    std::map<int, int> cls;
    std::vector<int> of(a0 + a1);
    for (size_t e = 0; e < a0 + a1; ++e) {
      int r = uf.find(static_cast<int>(e));
      if (!cls.count(r)) {
        cls[r] = static_cast<int>(out.y.apex.size());
        out.y.apex.push_back(e < a0 ? ys[0].apex[e] : ys[1].apex[e - a0]);
      }
      of[e] = cls[r];
    }
    // leg 0 lives in y^1 (face 1 keeps leg 0), leg 1 in y^0
    out.y.maps.push_back({});
    for (int t : ys[1].maps[0]) out.y.maps.back().push_back(of[a0 + t]);
    out.y.maps.push_back({});
    for (int t : ys[0].maps[0]) out.y.maps.back().push_back(of[t]);
    for (size_t e = 0; e < x.apex.size(); ++e) out.f.apex.push_back(of[fs[0].apex[e]]);
  } else {
    for (int i = 1; i <= n; ++i)
      if (ys[i].apex != ys[0].apex || fs[i].apex != fs[0].apex)
        throw Error(ErrorCode::IncompatibleBoundary, "faces of a cospan of level >= 2 must share the apex map");
    out.y.apex = ys[0].apex;
    out.f.apex = fs[0].apex;
    for (int j = 0; j <= n; ++j) {
      int i = j == 0 ? 1 : 0;
      out.y.maps.push_back(ys[i].maps[j > i ? j - 1 : j]);
    }
  }
  out.y.validate();
  return out;
}

// ---- sites ------------------------------------------------------------------

enum class Site { Cat, SSet, Cospan };

inline Site parse_site(const std::string& s) {
  if (s == "cat") return Site::Cat;
  if (s == "sset") return Site::SSet;
  if (s == "cospan") return Site::Cospan;
  throw Error(ErrorCode::ValidationError, "unknown site '" + s + "' (expected cat, sset or cospan)");
}

inline const char* to_string(Site s) {
  switch (s) {
    case Site::Cat: return "cat";
    case Site::SSet: return "sset";
    case Site::Cospan: return "cospan";
  }
  return "?";
}

using SliceObject = std::variant<CatSlice, SSetSlice, CospanSlice>;

}  // namespace equipkit
