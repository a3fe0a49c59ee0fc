#pragma once

// Profunctors, collages, the coequalizer tensor, cells of Prof and double
// colimits of horizontal diagrams of profunctors.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equipkit/cat_colimit.hpp"
#include "equipkit/fincat.hpp"
#include "equipkit/sset_limits.hpp"

namespace equipkit {

/// u: C -|-> D. x . f for f: c' -> c in C, g . x for g: d -> d' in D.
struct Profunctor {
  struct Elem {
    int c, d;
    std::string id;
  };
  CatPtr src, dst;
  std::vector<Elem> elems;
  std::vector<std::vector<int>> lact;  // [x][f], -1 unless dst f = c(x)
  std::vector<std::vector<int>> ract;  // [x][g], -1 unless src g = d(x)

  int size() const { return static_cast<int>(elems.size()); }
  int left(int x, int f) const { return lact[x][f]; }
  int right(int g, int x) const { return ract[x][g]; }

  std::vector<int> at(int c, int d) const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (elems[x].c == c && elems[x].d == d) out.push_back(x);
    return out;
  }
  std::optional<int> find(int c, int d, const std::string& id) const {
    for (int x = 0; x < size(); ++x)
      if (elems[x].c == c && elems[x].d == d && elems[x].id == id) return x;
    return std::nullopt;
  }

  /// Fills both action tables from functions of (x, f) and (g, x).
  template <class L, class R>
  void fill(L&& l, R&& r) {
    lact.assign(elems.size(), std::vector<int>(src->num_morphisms(), -1));
    ract.assign(elems.size(), std::vector<int>(dst->num_morphisms(), -1));
    for (int x = 0; x < size(); ++x) {
      for (int f = 0; f < src->num_morphisms(); ++f)
        if (src->dst(f) == elems[x].c) lact[x][f] = l(x, f);
      for (int g = 0; g < dst->num_morphisms(); ++g)
        if (dst->src(g) == elems[x].d) ract[x][g] = r(g, x);
    }
  }

  std::optional<std::string> violation() const {
    const auto& C = *src;
    const auto& D = *dst;
    if (lact.size() != elems.size() || ract.size() != elems.size()) return std::string("action tables missing");
    for (int x = 0; x < size(); ++x) {
      auto [c, d, id] = elems[x];
      if (c < 0 || c >= C.num_objects() || d < 0 || d >= D.num_objects()) return "element " + id + " has bad endpoints";
      if (find(c, d, id) != x) return "duplicate element " + id;
      for (int f = 0; f < C.num_morphisms(); ++f) {
        if (C.dst(f) != c) continue;
        int y = lact[x][f];
        if (y < 0 || y >= size() || elems[y].c != C.src(f) || elems[y].d != d)
          return "left action misplaced at " + id + "." + C.morphisms[f].id;
      }
      for (int g = 0; g < D.num_morphisms(); ++g) {
        if (D.src(g) != d) continue;
        int y = ract[x][g];
        if (y < 0 || y >= size() || elems[y].c != c || elems[y].d != D.dst(g))
          return "right action misplaced at " + D.morphisms[g].id + "." + id;
      }
      if (lact[x][C.identities[c]] != x) return "left unit fails at " + id;
      if (ract[x][D.identities[d]] != x) return "right unit fails at " + id;
      for (int f = 0; f < C.num_morphisms(); ++f) {
        if (C.dst(f) != c) continue;
        for (int f2 = 0; f2 < C.num_morphisms(); ++f2)
          if (C.dst(f2) == C.src(f) && lact[lact[x][f]][f2] != lact[x][C.compose(f, f2)])
            return "left action not functorial at " + id;
        for (int g = 0; g < D.num_morphisms(); ++g)
          if (D.src(g) == d && ract[lact[x][f]][g] != lact[ract[x][g]][f]) return "actions do not commute at " + id;
      }
      for (int g = 0; g < D.num_morphisms(); ++g) {
        if (D.src(g) != d) continue;
        for (int g2 = 0; g2 < D.num_morphisms(); ++g2)
          if (D.src(g2) == D.dst(g) && ract[ract[x][g]][g2] != ract[x][D.compose(g2, g)])
            return "right action not functorial at " + id;
      }
    }
    return std::nullopt;
  }
  void validate() const {
    if (auto v = violation()) throw Error(ErrorCode::ValidationError, "profunctor: " + *v);
  }

  bool operator==(const Profunctor& o) const {
    if (!(*src == *o.src) || !(*dst == *o.dst) || elems.size() != o.elems.size()) return false;
    for (size_t x = 0; x < elems.size(); ++x)
      if (elems[x].c != o.elems[x].c || elems[x].d != o.elems[x].d || elems[x].id != o.elems[x].id) return false;
    return lact == o.lact && ract == o.ract;
  }
};

using ProfPtr = std::shared_ptr<const Profunctor>;
inline ProfPtr share(Profunctor p) { return std::make_shared<const Profunctor>(std::move(p)); }

inline bool same_category(const CatPtr& a, const CatPtr& b) { return a == b || *a == *b; }

// ---- basic profunctors -------------------------------------------------------

/// C(-,-), the horizontal unit.
inline Profunctor hom_profunctor(const CatPtr& C) {
  Profunctor u{C, C, {}, {}, {}};
  for (int c = 0; c < C->num_objects(); ++c)
    for (int d = 0; d < C->num_objects(); ++d)
      for (int m : C->hom(c, d)) u.elems.push_back({c, d, C->morphisms[m].id});
  std::vector<int> elem_of(C->num_morphisms());
  for (int x = 0; x < u.size(); ++x) elem_of[C->morphism(u.elems[x].id)] = x;
  auto mor = [&](int x) { return C->morphism(u.elems[x].id); };
  u.fill([&](int x, int f) { return elem_of[C->compose(mor(x), f)]; },
         [&](int g, int x) { return elem_of[C->compose(g, mor(x))]; });
  return u;
}

/// F^*(a,b) = B(Fa, b).
inline Profunctor companion(const FinFunctor& F) {
  const auto& B = *F.dst;
  Profunctor u{F.src, F.dst, {}, {}, {}};
  std::vector<int> mor;
  std::map<std::pair<int, int>, int> elem_of;  // (a, morphism of B)
  for (int a = 0; a < F.src->num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b)
      for (int m : B.hom(F.ob[a], b)) {
        elem_of[{a, m}] = u.size();
        u.elems.push_back({a, b, B.morphisms[m].id});
        mor.push_back(m);
      }
  u.fill([&](int x, int f) { return elem_of.at({F.src->src(f), B.compose(mor[x], F.mor[f])}); },
         [&](int g, int x) { return elem_of.at({u.elems[x].c, B.compose(g, mor[x])}); });
  return u;
}

/// F_*(b,a) = B(b, Fa), a profunctor B -|-> A.
inline Profunctor cojoint(const FinFunctor& F) {
  const auto& B = *F.dst;
  Profunctor u{F.dst, F.src, {}, {}, {}};
  std::vector<int> mor;
  std::map<std::pair<int, int>, int> elem_of;  // (a, morphism of B)
  for (int b = 0; b < B.num_objects(); ++b)
    for (int a = 0; a < F.src->num_objects(); ++a)
      for (int m : B.hom(b, F.ob[a])) {
        elem_of[{a, m}] = u.size();
        u.elems.push_back({b, a, B.morphisms[m].id});
        mor.push_back(m);
      }
  u.fill([&](int x, int g) { return elem_of.at({u.elems[x].d, B.compose(mor[x], g)}); },
         [&](int f, int x) { return elem_of.at({F.src->dst(f), B.compose(F.mor[f], mor[x])}); });
  return u;
}

// ---- collages ----------------------------------------------------------------

/// A category over [n]; part i is the fiber over i.
struct Collage {
  CatPtr carrier;
  int n = 0;
  FinFunctor p;

  int part_of(int object) const { return p.ob[object]; }
  /// Full subcategory on the fiber over i, with ids unchanged.
  std::pair<FinCategory, std::vector<int>> part(int i) const {
    return full_subcategory(*carrier, [&](int x) { return p.ob[x] == i; });
  }
};

/// Validates the collage conditions: no morphism from part i to part j when i > j.
inline Collage make_collage(const CatPtr& carrier, const std::vector<int>& part, int n) {
  if (static_cast<int>(part.size()) != carrier->num_objects())
    throw Error(ErrorCode::NotACollage, "part labels do not cover the objects");
  for (int x = 0; x < carrier->num_objects(); ++x)
    if (part[x] < 0 || part[x] > n) throw Error(ErrorCode::NotACollage, "part label out of range at " + carrier->objects[x]);
  auto dn = share(delta_category(n));
  FinFunctor p{carrier, dn, part, {}};
  for (int m = 0; m < carrier->num_morphisms(); ++m) {
    int a = part[carrier->src(m)], b = part[carrier->dst(m)];
    if (a > b)
      throw Error(ErrorCode::NotACollage, "morphism " + carrier->morphisms[m].id + " runs from part " +
                                              std::to_string(a) + " to part " + std::to_string(b));
    p.mor.push_back(dn->hom(a, b).front());
  }
  p.validate();
  return {carrier, n, std::move(p)};
}

inline std::string cross_id(const std::string& c, const std::string& d, const std::string& x) {
  return "01:" + c + "|" + d + "|" + x;
}

/// col(u): C and D as parts 0 and 1, cross morphisms the elements of u.
inline Collage collage_of(const Profunctor& u) {
  const auto& C = *u.src;
  const auto& D = *u.dst;
  FinCategory c;
  int nc = C.num_objects(), mc = C.num_morphisms(), md = D.num_morphisms();
  for (auto& o : C.objects) c.add_object("0:" + o);
  for (auto& o : D.objects) c.add_object("1:" + o);
  for (auto& m : C.morphisms) c.add_morphism("0:" + m.id, m.src, m.dst);
  for (auto& m : D.morphisms) c.add_morphism("1:" + m.id, nc + m.src, nc + m.dst);
  for (auto& e : u.elems) c.add_morphism(cross_id(C.objects[e.c], D.objects[e.d], e.id), e.c, nc + e.d);
  for (int x = 0; x < nc; ++x) c.set_identity(x, C.identities[x]);
  for (int y = 0; y < D.num_objects(); ++y) c.set_identity(nc + y, mc + D.identities[y]);
  c.fill([&](int g, int f) {
    bool fc = f < mc, gc = g < mc, fd = f >= mc && f < mc + md, gd = g >= mc && g < mc + md;
    if (fc && gc) return C.compose(g, f);
    if (fd && gd) return mc + D.compose(g - mc, f - mc);
    if (fc) return mc + md + u.left(g - mc - md, f);   // x . f
    return mc + md + u.right(g - mc, f - mc - md);     // g . x
  });
  std::vector<int> part(nc, 0);
  part.resize(c.num_objects(), 1);
  return make_collage(share(std::move(c)), part, 1);
}

namespace detail {

inline std::string strip_prefix(const std::string& s, const std::string& pre) {
  return s.rfind(pre, 0) == 0 ? s.substr(pre.size()) : s;
}

/// Part i of a collage with the "i:" prefix removed when every id carries it.
inline std::pair<FinCategory, std::vector<int>> stripped_part(const Collage& U, int i) {
  auto [sub, mold] = U.part(i);
  std::string pre = std::to_string(i) + ":";
  bool all = true;
  for (auto& o : sub.objects) all = all && o.rfind(pre, 0) == 0;
  for (auto& m : sub.morphisms) all = all && m.id.rfind(pre, 0) == 0;
  if (!all) return {std::move(sub), std::move(mold)};
  FinCategory s;
  for (auto& o : sub.objects) s.add_object(strip_prefix(o, pre));
  for (auto& m : sub.morphisms) s.add_morphism(strip_prefix(m.id, pre), m.src, m.dst);
  for (int x = 0; x < sub.num_objects(); ++x) s.set_identity(x, sub.identities[x]);
  s.fill([&](int g, int f) { return sub.compose(g, f); }, false);
  return {std::move(s), std::move(mold)};
}

}  // namespace detail

/// The profunctor of a 1-collage: elements are the cross morphisms.
inline Profunctor profunctor_of(const Collage& U) {
  if (U.n != 1) throw Error(ErrorCode::NotACollage, "profunctor_of needs a collage over [1]");
  auto [C, cold] = detail::stripped_part(U, 0);
  auto [D, dold] = detail::stripped_part(U, 1);
  const auto& K = *U.carrier;
  std::vector<int> local(K.num_objects()), cmor(K.num_morphisms(), -1), dmor(K.num_morphisms(), -1);
  for (int x = 0, a = 0, b = 0; x < K.num_objects(); ++x) local[x] = U.part_of(x) == 0 ? a++ : b++;
  for (size_t m = 0; m < cold.size(); ++m) cmor[cold[m]] = static_cast<int>(m);
  for (size_t m = 0; m < dold.size(); ++m) dmor[dold[m]] = static_cast<int>(m);
  Profunctor u{share(std::move(C)), share(std::move(D)), {}, {}, {}};
  std::vector<int> elem_of(K.num_morphisms(), -1), cross;
  for (int m = 0; m < K.num_morphisms(); ++m) {
    if (U.part_of(K.src(m)) != 0 || U.part_of(K.dst(m)) != 1) continue;
    int c = local[K.src(m)], d = local[K.dst(m)];
    std::string pre = cross_id(u.src->objects[c], u.dst->objects[d], "");
    std::string id = K.morphisms[m].id.rfind(pre, 0) == 0 ? K.morphisms[m].id.substr(pre.size()) : K.morphisms[m].id;
    elem_of[m] = u.size();
    u.elems.push_back({c, d, id});
    cross.push_back(m);
  }
  u.fill([&](int x, int f) { return elem_of[K.compose(cross[x], cold[f])]; },
         [&](int g, int x) { return elem_of[K.compose(dold[g], cross[x])]; });
  u.validate();
  return u;
}

// ---- tensor --------------------------------------------------------------------

/// v (x) u for u: C -|-> D, v: D -|-> E, with canonical representatives.
struct Tensor {
  ProfPtr prof, u, v;
  std::vector<std::pair<int, int>> rep;    // class -> least (y, x)
  std::map<std::pair<int, int>, int> cls;  // (y, x) -> class

  int class_of(int y, int x) const { return cls.at({y, x}); }
};

inline Tensor tensor(const ProfPtr& u, const ProfPtr& v) {
  if (!same_category(u->dst, v->src))
    throw Error(ErrorCode::CompositionMismatch, "tensor: target of the first profunctor is not the source of the second");
  const auto& D = *u->dst;
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> pair_of;
  for (int y = 0; y < v->size(); ++y)
    for (int x = 0; x < u->size(); ++x)
      if (u->elems[x].d == v->elems[y].c) {
        pair_of[{y, x}] = static_cast<int>(pairs.size());
        pairs.push_back({y, x});
      }
  detail::UnionFind uf(pairs.size());
  // (y', g.x) ~ (y'.g, x)
  for (int x = 0; x < u->size(); ++x)
    for (int g = 0; g < D.num_morphisms(); ++g) {
      if (D.src(g) != u->elems[x].d) continue;
      for (int y = 0; y < v->size(); ++y)
        if (v->elems[y].c == D.dst(g)) uf.unite(pair_of.at({y, u->right(g, x)}), pair_of.at({v->left(y, g), x}));
    }
  Tensor t;
  t.u = u;
  t.v = v;
  Profunctor p{u->src, v->dst, {}, {}, {}};
  std::map<int, int> class_of_root;
  for (size_t i = 0; i < pairs.size(); ++i) {
    int r = uf.find(static_cast<int>(i));
    if (!class_of_root.count(r)) {
      class_of_root[r] = static_cast<int>(t.rep.size());
      auto [y, x] = pairs[i];
      t.rep.push_back(pairs[i]);
      p.elems.push_back({u->elems[x].c, v->elems[y].d,
                         "[" + v->elems[y].id + ";" + D.objects[u->elems[x].d] + ";" + u->elems[x].id + "]"});
    }
    t.cls[pairs[i]] = class_of_root[r];
  }
  p.fill([&](int k, int f) { return t.cls.at({t.rep[k].first, u->left(t.rep[k].second, f)}); },
         [&](int h, int k) { return t.cls.at({v->right(h, t.rep[k].first), t.rep[k].second}); });
  t.prof = share(std::move(p));
  return t;
}

// ---- cells ---------------------------------------------------------------------

/// A 2-cell in Prof: top u: A -|-> B over bottom v: C -|-> D along F: A -> C, G: B -> D.
struct ProfCell {
  ProfPtr top, bottom;
  FinFunctor left, right;
  std::vector<int> comp;  // element of top -> element of bottom

  std::optional<std::string> violation() const {
    if (!same_category(left.src, top->src) || !same_category(left.dst, bottom->src) ||
        !same_category(right.src, top->dst) || !same_category(right.dst, bottom->dst))
      return std::string("boundary functors do not match the profunctors");
    if (static_cast<int>(comp.size()) != top->size()) return std::string("component size mismatch");
    for (int x = 0; x < top->size(); ++x) {
      int y = comp[x];
      if (y < 0 || y >= bottom->size()) return "unmapped element " + top->elems[x].id;
      if (bottom->elems[y].c != left.ob[top->elems[x].c] || bottom->elems[y].d != right.ob[top->elems[x].d])
        return "element " + top->elems[x].id + " lands over the wrong objects";
      for (int f = 0; f < top->src->num_morphisms(); ++f)
        if (top->src->dst(f) == top->elems[x].c && comp[top->left(x, f)] != bottom->left(y, left.mor[f]))
          return "not equivariant for the left action at " + top->elems[x].id;
      for (int g = 0; g < top->dst->num_morphisms(); ++g)
        if (top->dst->src(g) == top->elems[x].d && comp[top->right(g, x)] != bottom->right(right.mor[g], y))
          return "not equivariant for the right action at " + top->elems[x].id;
    }
    return std::nullopt;
  }
  void validate() const {
    if (auto v = violation()) throw Error(ErrorCode::ValidationError, "cell: " + *v);
  }
};

inline ProfCell identity_cell(const ProfPtr& u) {
  ProfCell c{u, u, identity_functor(u->src), identity_functor(u->dst), {}};
  for (int x = 0; x < u->size(); ++x) c.comp.push_back(x);
  return c;
}

/// beta . alpha, stacking alpha above beta.
inline ProfCell cell_compose_vertical(const ProfCell& beta, const ProfCell& alpha) {
  if (!(alpha.bottom == beta.top || *alpha.bottom == *beta.top))
    throw Error(ErrorCode::BoundaryMismatch, "vertical composition: bottom of the first cell is not the top of the second");
  ProfCell c{alpha.top, beta.bottom, compose(beta.left, alpha.left), compose(beta.right, alpha.right), {}};
  for (int y : alpha.comp) c.comp.push_back(beta.comp[y]);
  return c;
}

/// Cell out of a tensor given on representatives; checks it is constant on classes.
template <class Fn>
ProfCell cell_on_tensor(const Tensor& t, const ProfPtr& bottom, FinFunctor left, FinFunctor right, Fn&& on_pair) {
  ProfCell c{t.prof, bottom, std::move(left), std::move(right), std::vector<int>(t.rep.size(), -1)};
  for (auto& [yx, k] : t.cls) {
    int z = on_pair(yx.first, yx.second);
    if (c.comp[k] >= 0 && c.comp[k] != z)
      throw Error(ErrorCode::VerificationFailed, "cell is not constant on a tensor class");
    c.comp[k] = z;
  }
  return c;
}

struct HorizontalComposite {
  Tensor top, bottom;
  ProfCell cell;
};

/// beta * alpha : v (x) u => v' (x) u'.
inline HorizontalComposite cell_compose_horizontal(const ProfCell& beta, const ProfCell& alpha) {
  if (!(alpha.right == beta.left) || !same_category(alpha.right.dst, beta.left.dst) ||
      !same_category(alpha.top->dst, beta.top->src))
    throw Error(ErrorCode::BoundaryMismatch, "horizontal composition: shared vertical boundary differs");
  auto t = tensor(alpha.top, beta.top);
  auto b = tensor(alpha.bottom, beta.bottom);
  auto cell = cell_on_tensor(t, b.prof, alpha.left, beta.right,
                             [&](int y, int x) { return b.class_of(beta.comp[y], alpha.comp[x]); });
  return {std::move(t), std::move(b), std::move(cell)};
}

inline bool is_invertible(const ProfCell& c) {
  if (!is_identity_functor(c.left) || !is_identity_functor(c.right) || c.top->size() != c.bottom->size()) return false;
  std::vector<char> hit(c.bottom->size(), 0);
  for (int y : c.comp) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

inline ProfCell inverse(const ProfCell& c) {
  if (!is_invertible(c)) throw Error(ErrorCode::VerificationFailed, "cell is not invertible");
  ProfCell i{c.bottom, c.top, c.left, c.right, std::vector<int>(c.comp.size())};
  for (size_t x = 0; x < c.comp.size(); ++x) i.comp[c.comp[x]] = static_cast<int>(x);
  return i;
}

struct Unitor {
  Tensor tensor;
  ProfCell cell;
};

/// l_u: D(-,-) (x) u => u, [g, x] -> g . x.
inline Unitor left_unitor(const ProfPtr& u) {
  auto t = tensor(u, share(hom_profunctor(u->dst)));
  auto cell = cell_on_tensor(t, u, identity_functor(u->src), identity_functor(u->dst),
                             [&](int g, int x) { return u->right(u->dst->morphism(t.v->elems[g].id), x); });
  return {std::move(t), std::move(cell)};
}

/// r_u: u (x) C(-,-) => u, [x, f] -> x . f.
inline Unitor right_unitor(const ProfPtr& u) {
  auto t = tensor(share(hom_profunctor(u->src)), u);
  auto cell = cell_on_tensor(t, u, identity_functor(u->src), identity_functor(u->dst),
                             [&](int x, int f) { return u->left(x, u->src->morphism(t.u->elems[f].id)); });
  return {std::move(t), std::move(cell)};
}

struct Associator {
  Tensor wv, wv_u, vu, w_vu;
  ProfCell cell;  // (w (x) v) (x) u => w (x) (v (x) u)
};

inline Associator associator(const ProfPtr& u, const ProfPtr& v, const ProfPtr& w) {
  Associator a;
  a.wv = tensor(v, w);
  a.wv_u = tensor(u, a.wv.prof);
  a.vu = tensor(u, v);
  a.w_vu = tensor(a.vu.prof, w);
  a.cell = cell_on_tensor(a.wv_u, a.w_vu.prof, identity_functor(u->src), identity_functor(w->dst), [&](int p, int x) {
    auto [z, y] = a.wv.rep[p];
    return a.w_vu.class_of(z, a.vu.class_of(y, x));
  });
  return a;
}

/// g^* (x) f^* => (gf)^*, [y, x] -> y . G(x).
inline Unitor companion_comparator(const FinFunctor& f, const FinFunctor& g, const ProfPtr& fs, const ProfPtr& gs,
                                   const ProfPtr& gf_star) {
  auto t = tensor(fs, gs);
  const auto& C = *g.dst;
  const auto& B = *f.dst;
  auto cell = cell_on_tensor(t, gf_star, identity_functor(f.src), identity_functor(g.dst), [&](int y, int x) {
    int my = C.morphism(gs->elems[y].id);
    int mx = B.morphism(fs->elems[x].id);
    auto e = gf_star->find(fs->elems[x].c, gs->elems[y].d, C.morphisms[C.compose(my, g.mor[mx])].id);
    return e ? *e : -1;
  });
  return {std::move(t), std::move(cell)};
}

inline Unitor companion_comparator(const FinFunctor& f, const FinFunctor& g) {
  return companion_comparator(f, g, share(companion(f)), share(companion(g)), share(companion(compose(g, f))));
}

// ---- niche fillers ---------------------------------------------------------------

struct NicheFill {
  ProfPtr filler;
  ProfCell phi;  // filler => u along (F, G), identity components
};

/// u^{F,G}(a,b) = u(Fa, Gb).
inline NicheFill niche_fill(const ProfPtr& u, const FinFunctor& F, const FinFunctor& G) {
  if (!same_category(F.dst, u->src) || !same_category(G.dst, u->dst))
    throw Error(ErrorCode::IncompatibleBoundary, "niche: functors do not land on the profunctor's boundary");
  Profunctor r{F.src, G.src, {}, {}, {}};
  std::vector<int> orig;
  std::map<std::pair<int, int>, int> elem_of;  // (a, original element)
  for (int a = 0; a < F.src->num_objects(); ++a)
    for (int b = 0; b < G.src->num_objects(); ++b)
      for (int x : u->at(F.ob[a], G.ob[b])) {
        elem_of[{a * G.src->num_objects() + b, x}] = r.size();
        r.elems.push_back({a, b, u->elems[x].id});
        orig.push_back(x);
      }
  auto key = [&](int a, int b) { return a * G.src->num_objects() + b; };
  r.fill([&](int x, int f) { return elem_of.at({key(F.src->src(f), r.elems[x].d), u->left(orig[x], F.mor[f])}); },
         [&](int g, int x) { return elem_of.at({key(r.elems[x].c, G.src->dst(g)), u->right(G.mor[g], orig[x])}); });
  auto filler = share(std::move(r));
  return {filler, ProfCell{filler, u, F, G, orig}};
}

struct NicheComparison {
  Tensor inner, outer;  // u (x) F^*, then G_* (x) (u (x) F^*)
  ProfCell cell;        // => niche filler
};

/// G_* (x) u (x) F^* => u^{F,G}, [k, [x, h]] -> k . x . h.
inline NicheComparison niche_comparison(const ProfPtr& u, const FinFunctor& F, const FinFunctor& G) {
  auto fill = niche_fill(u, F, G);
  auto fs = share(companion(F));
  auto gs = share(cojoint(G));
  NicheComparison n;
  n.inner = tensor(fs, u);
  n.outer = tensor(n.inner.prof, gs);
  const auto& C = *u->src;
  const auto& D = *u->dst;
  n.cell = cell_on_tensor(n.outer, fill.filler, identity_functor(F.src), identity_functor(G.src), [&](int k, int p) {
    auto [x, h] = n.inner.rep[p];
    int y = u->right(D.morphism(gs->elems[k].id), u->left(x, C.morphism(fs->elems[h].id)));
    auto e = fill.filler->find(fs->elems[h].c, gs->elems[k].d, u->elems[y].id);
    return e ? *e : -1;
  });
  return n;
}

/// Calls `visit` with the components of every cell top => bottom along (F, G).
template <class Visit>
long for_each_cell(const ProfPtr& top, const ProfPtr& bottom, const FinFunctor& F, const FinFunctor& G, long budget,
                   Visit&& visit) {
  std::vector<int> comp(top->size(), -1);
  long steps = 0, found = 0;
  bool stop = false;
  auto ok = [&](int x) {
    const auto& A = *top->src;
    const auto& B = *top->dst;
    for (int f = 0; f < A.num_morphisms(); ++f) {
      if (A.dst(f) == top->elems[x].c) {
        int xf = comp[top->left(x, f)];
        if (xf >= 0 && xf != bottom->left(comp[x], F.mor[f])) return false;
      }
    }
    for (int g = 0; g < B.num_morphisms(); ++g)
      if (B.src(g) == top->elems[x].d) {
        int gx = comp[top->right(g, x)];
        if (gx >= 0 && gx != bottom->right(G.mor[g], comp[x])) return false;
      }
    // constraints where x is the result of an action on an assigned element
    for (int z = 0; z < top->size(); ++z) {
      if (comp[z] < 0) continue;
      for (int f = 0; f < A.num_morphisms(); ++f)
        if (A.dst(f) == top->elems[z].c && top->left(z, f) == x && comp[x] != bottom->left(comp[z], F.mor[f]))
          return false;
      for (int g = 0; g < B.num_morphisms(); ++g)
        if (B.src(g) == top->elems[z].d && top->right(g, z) == x && comp[x] != bottom->right(G.mor[g], comp[z]))
          return false;
    }
    return true;
  };
  std::function<void(int)> go = [&](int x) {
    if (stop) return;
    if (x == top->size()) {
      ++found;
      if (!visit(static_cast<const std::vector<int>&>(comp))) stop = true;
      return;
    }
    for (int y : bottom->at(F.ob[top->elems[x].c], G.ob[top->elems[x].d])) {
      if (++steps > budget) throw Error(ErrorCode::EnumerationBudgetExceeded, "cell enumeration budget exhausted");
      comp[x] = y;
      if (ok(x)) go(x + 1);
      comp[x] = -1;
      if (stop) return;
    }
  };
  go(0);
  return found;
}

struct NicheUniversality {
  long cells = 0;        // cells w => u along (F H, G K)
  long factorizations = 0;  // cells w => u^{F,G} along (H, K)
  bool ok = false;
};

/// Exhaustive check that every cell w => u along (F H, G K) factors uniquely through phi.
inline NicheUniversality verify_niche_universal(const ProfPtr& u, const FinFunctor& F, const FinFunctor& G,
                                                const ProfPtr& w, const FinFunctor& H, const FinFunctor& K,
                                                long budget = 1000000) {
  auto fill = niche_fill(u, F, G);
  NicheUniversality r;
  std::map<std::vector<int>, int> hits;
  r.factorizations = for_each_cell(w, fill.filler, H, K, budget, [&](const std::vector<int>& c) {
    std::vector<int> through;
    for (int y : c) through.push_back(fill.phi.comp[y]);
    ++hits[through];
    return true;
  });
  bool unique = true;
  r.cells = for_each_cell(w, u, compose(F, H), compose(G, K), budget, [&](const std::vector<int>& c) {
    auto it = hits.find(c);
    if (it == hits.end() || it->second != 1) unique = false;
    return true;
  });
  r.ok = unique && static_cast<long>(hits.size()) == r.cells;
  return r;
}

// ---- horizontal diagrams and their double colimits ------------------------------

struct Comparator {
  Tensor tensor;
  ProfCell cell;  // F(g) (x) F(f) => F(gf)
};

/// A normal pseudo-functor J -> Prof: F(id) is the hom profunctor.
struct ProfDiagram {
  CatPtr index;
  std::vector<CatPtr> nodes;
  std::vector<ProfPtr> edges;
  std::map<std::pair<int, int>, Comparator> comparators;  // (f, g) with g . f defined

  void validate() const {
    const auto& J = *index;
    for (int a = 0; a < J.num_morphisms(); ++a) {
      const auto& e = *edges[a];
      if (!same_category(e.src, nodes[J.src(a)]) || !same_category(e.dst, nodes[J.dst(a)]))
        throw Error(ErrorCode::ValidationError, "diagram edge " + J.morphisms[a].id + " has the wrong boundary");
      e.validate();
    }
    for (int x = 0; x < J.num_objects(); ++x)
      if (!(*edges[J.identities[x]] == hom_profunctor(nodes[x])))
        throw Error(ErrorCode::ValidationError, "identity of " + J.objects[x] + " is not sent to the hom profunctor");
    for (int f = 0; f < J.num_morphisms(); ++f)
      for (int g = 0; g < J.num_morphisms(); ++g) {
        if (J.src(g) != J.dst(f)) continue;
        auto it = comparators.find({f, g});
        if (it == comparators.end())
          throw Error(ErrorCode::ValidationError, "missing comparator for " + J.morphisms[g].id + " . " + J.morphisms[f].id);
        it->second.cell.validate();
        if (!is_invertible(it->second.cell))
          throw Error(ErrorCode::ValidationError, "comparator not invertible at " + J.morphisms[g].id + " . " + J.morphisms[f].id);
      }
    // unit comparators are the unitors: [id, x] -> x and [x, id] -> x
    for (int f = 0; f < J.num_morphisms(); ++f) {
      const auto& lc = comparators.at({f, J.identities[J.dst(f)]});
      const auto& rc = comparators.at({J.identities[J.src(f)], f});
      const auto& e = *edges[f];
      for (int x = 0; x < e.size(); ++x) {
        int dl = lc.tensor.v->find(e.elems[x].d, e.elems[x].d, nodes[J.dst(f)]->morphisms[nodes[J.dst(f)]->identities[e.elems[x].d]].id).value();
        int cr = rc.tensor.u->find(e.elems[x].c, e.elems[x].c, nodes[J.src(f)]->morphisms[nodes[J.src(f)]->identities[e.elems[x].c]].id).value();
        if (lc.cell.comp[lc.tensor.class_of(dl, x)] != x || rc.cell.comp[rc.tensor.class_of(x, cr)] != x)
          throw Error(ErrorCode::ValidationError, "unit comparator is not the unitor at " + J.morphisms[f].id);
      }
    }
    // coherence on composable triples, pointwise: [[z, y], x] and [z, [y, x]] agree
    for (int f = 0; f < J.num_morphisms(); ++f)
      for (int g = 0; g < J.num_morphisms(); ++g) {
        if (J.src(g) != J.dst(f)) continue;
        for (int h = 0; h < J.num_morphisms(); ++h) {
          if (J.src(h) != J.dst(g)) continue;
          int gf = J.compose(g, f), hg = J.compose(h, g);
          const auto& a_fg = comparators.at({f, g});
          const auto& a_gh = comparators.at({g, h});
          const auto& a_f_hg = comparators.at({f, hg});
          const auto& a_gf_h = comparators.at({gf, h});
          for (auto& [yx, k1] : a_fg.tensor.cls)
            for (int z = 0; z < edges[h]->size(); ++z) {
              auto [y, x] = yx;
              if (edges[h]->elems[z].c != edges[g]->elems[y].d) continue;
              int lhs = a_gf_h.cell.comp[a_gf_h.tensor.class_of(z, a_fg.cell.comp[k1])];
              int rhs = a_f_hg.cell.comp[a_f_hg.tensor.class_of(a_gh.cell.comp[a_gh.tensor.class_of(z, y)], x)];
              if (lhs != rhs)
                throw Error(ErrorCode::ValidationError, "comparators incoherent at " + J.morphisms[h].id + " . " +
                                                            J.morphisms[g].id + " . " + J.morphisms[f].id);
            }
        }
      }
  }
};

/// F^* for a diagram of categories: companions of every edge with their comparators.
inline ProfDiagram companion_diagram(const CatDiagram& F) {
  const auto& J = *F.index;
  ProfDiagram d{F.index, F.nodes, {}, {}};
  for (int a = 0; a < J.num_morphisms(); ++a) d.edges.push_back(share(companion(F.edges[a])));
  for (int f = 0; f < J.num_morphisms(); ++f)
    for (int g = 0; g < J.num_morphisms(); ++g) {
      if (J.src(g) != J.dst(f)) continue;
      auto c = companion_comparator(F.edges[f], F.edges[g], d.edges[f], d.edges[g], d.edges[J.compose(g, f)]);
      d.comparators.emplace(std::make_pair(f, g), Comparator{std::move(c.tensor), std::move(c.cell)});
    }
  return d;
}

/// The diagram over [1] with a single profunctor; comparators are unitors.
inline ProfDiagram arrow_prof_diagram(const ProfPtr& u) {
  ProfDiagram d{share(delta_category(1)), {u->src, u->dst}, {}, {}};
  const auto& J = *d.index;
  auto h0 = share(hom_profunctor(u->src));
  auto h1 = share(hom_profunctor(u->dst));
  for (int a = 0; a < J.num_morphisms(); ++a) d.edges.push_back(J.src(a) != J.dst(a) ? u : (J.src(a) == 0 ? h0 : h1));
  for (int f = 0; f < J.num_morphisms(); ++f)
    for (int g = 0; g < J.num_morphisms(); ++g) {
      if (J.src(g) != J.dst(f)) continue;
      auto fe = d.edges[f], ge = d.edges[g], be = d.edges[J.compose(g, f)];
      auto t = tensor(fe, ge);
      ProfCell cell;
      if (J.is_identity(g)) {
        // [k, x] -> k . x
        cell = cell_on_tensor(t, be, identity_functor(fe->src), identity_functor(ge->dst),
                              [&](int k, int x) { return fe->right(ge->src->morphism(ge->elems[k].id), x); });
      } else {
        cell = cell_on_tensor(t, be, identity_functor(fe->src), identity_functor(ge->dst),
                              [&](int y, int h) { return ge->left(y, fe->src->morphism(fe->elems[h].id)); });
      }
      d.comparators.emplace(std::make_pair(f, g), Comparator{std::move(t), std::move(cell)});
    }
  return d;
}

/// The constructed double colimit with its universal cocone.
struct ProfColimit {
  CatPtr cat;
  std::vector<FinFunctor> iota;                 // per index object
  std::vector<ProfCell> phi;                    // per index morphism: F(a) => hom along (iota_i, iota_j)
  std::vector<std::pair<int, int>> morphism_of;  // colimit morphism -> (index morphism, element)
};

/// Objects are pairs (i, x); morphisms are (a, e) with e in F(a); composition through the comparators.
inline ProfColimit dcolim_prof(const ProfDiagram& D) {
  const auto& J = *D.index;
  FinCategory c;
  std::vector<std::vector<int>> obj(J.num_objects());
  for (int i = 0; i < J.num_objects(); ++i)
    for (auto& o : D.nodes[i]->objects) obj[i].push_back(c.add_object(J.objects[i] + ":" + o));
  ProfColimit r;
  std::map<std::pair<int, int>, int> mid;
  for (int a = 0; a < J.num_morphisms(); ++a) {
    int i = J.src(a), j = J.dst(a);
    const auto& e = *D.edges[a];
    for (int x = 0; x < e.size(); ++x) {
      const auto& el = e.elems[x];
      std::string name = "(" + J.morphisms[a].id + ";" + D.nodes[i]->objects[el.c] + ";" + el.id + ")";
      if (c.find_morphism(name)) name = "(" + J.morphisms[a].id + ";" + D.nodes[i]->objects[el.c] + ";" +
                                        D.nodes[j]->objects[el.d] + ";" + el.id + ")";
      mid[{a, x}] = c.add_morphism(name, obj[i][el.c], obj[j][el.d]);
      r.morphism_of.push_back({a, x});
    }
  }
  for (int i = 0; i < J.num_objects(); ++i) {
    const auto& N = *D.nodes[i];
    const auto& h = *D.edges[J.identities[i]];
    for (int x = 0; x < N.num_objects(); ++x)
      c.set_identity(obj[i][x], mid.at({J.identities[i], h.find(x, x, N.morphisms[N.identities[x]].id).value()}));
  }
  c.fill([&](int q, int p) {
    auto [a, x] = r.morphism_of[p];
    auto [b, y] = r.morphism_of[q];
    const auto& cmp = D.comparators.at({a, b});
    return mid.at({J.compose(b, a), cmp.cell.comp[cmp.tensor.class_of(y, x)]});
  });
  r.cat = share(std::move(c));
  auto hom = share(hom_profunctor(r.cat));
  for (int i = 0; i < J.num_objects(); ++i) {
    const auto& N = *D.nodes[i];
    const auto& h = *D.edges[J.identities[i]];
    FinFunctor f{D.nodes[i], r.cat, obj[i], {}};
    for (int m = 0; m < N.num_morphisms(); ++m)
      f.mor.push_back(mid.at({J.identities[i], h.find(N.src(m), N.dst(m), N.morphisms[m].id).value()}));
    f.validate();
    r.iota.push_back(std::move(f));
  }
  for (int a = 0; a < J.num_morphisms(); ++a) {
    ProfCell cell{D.edges[a], hom, r.iota[J.src(a)], r.iota[J.dst(a)], {}};
    for (int x = 0; x < D.edges[a]->size(); ++x) {
      int m = mid.at({a, x});
      cell.comp.push_back(hom->find(r.cat->src(m), r.cat->dst(m), r.cat->morphisms[m].id).value());
    }
    cell.validate();
    r.phi.push_back(std::move(cell));
  }
  return r;
}

struct UniversalityReport {
  long cocones = 0;
  long functors = 0;
  bool ok = false;
};

/// Enumerates every cocone from D to X (objects, then cell components subject to the
/// comparator equations) and checks each is induced by exactly one functor out of the colimit.
inline UniversalityReport verify_universal(const ProfDiagram& D, const ProfColimit& colim, const CatPtr& X,
                                           long budget = 1000000) {
  const auto& J = *D.index;
  UniversalityReport rep;
  // flat lists of objects and elements
  std::vector<std::pair<int, int>> objs;
  std::map<std::pair<int, int>, int> obj_ix;
  for (int i = 0; i < J.num_objects(); ++i)
    for (int x = 0; x < D.nodes[i]->num_objects(); ++x) {
      obj_ix[{i, x}] = static_cast<int>(objs.size());
      objs.push_back({i, x});
    }
  std::vector<std::pair<int, int>> els;
  std::map<std::pair<int, int>, int> el_ix;
  for (int a = 0; a < J.num_morphisms(); ++a)
    for (int x = 0; x < D.edges[a]->size(); ++x) {
      el_ix[{a, x}] = static_cast<int>(els.size());
      els.push_back({a, x});
    }
  // composition constraints (p, q, result) read off the comparators
  std::vector<std::vector<std::array<int, 3>>> touching(els.size());
  for (auto& [fg, cmp] : D.comparators) {
    auto [f, g] = fg;
    for (auto& [yx, k] : cmp.tensor.cls) {
      std::array<int, 3> t{el_ix.at({f, yx.second}), el_ix.at({g, yx.first}), el_ix.at({J.compose(g, f), cmp.cell.comp[k]})};
      for (int e : t) touching[e].push_back(t);
    }
  }
  std::vector<int> ob(objs.size(), -1), psi(els.size(), -1);
  long steps = 0;
  auto tick = [&] {
    if (++steps > budget) throw Error(ErrorCode::EnumerationBudgetExceeded, "cocone enumeration budget exhausted");
  };
  bool all_factor = true;
  auto endpoints = [&](int e) {
    auto [a, x] = els[e];
    const auto& el = D.edges[a]->elems[x];
    return std::make_pair(ob[obj_ix.at({J.src(a), el.c})], ob[obj_ix.at({J.dst(a), el.d})]);
  };
  std::function<void(int)> assign_el = [&](int e) {
    if (e == static_cast<int>(els.size())) {
      ++rep.cocones;
      // the induced functor is h(a, x) = psi(a, x); it must be a functor compatible with the cocone
      FinFunctor h{colim.cat, X, std::vector<int>(colim.cat->num_objects()), std::vector<int>(colim.cat->num_morphisms())};
      for (int i = 0; i < J.num_objects(); ++i)
        for (int x = 0; x < D.nodes[i]->num_objects(); ++x) h.ob[colim.iota[i].ob[x]] = ob[obj_ix.at({i, x})];
      for (int m = 0; m < colim.cat->num_morphisms(); ++m) h.mor[m] = psi[el_ix.at(colim.morphism_of[m])];
      if (h.violation()) all_factor = false;
      return;
    }
    auto [a, x] = els[e];
    auto [s, t] = endpoints(e);
    const auto& el = D.edges[a]->elems[x];
    bool unit = J.is_identity(a) && el.c == el.d &&
                el.id == D.nodes[J.src(a)]->morphisms[D.nodes[J.src(a)]->identities[el.c]].id;
    for (int m : X->hom(s, t)) {
      if (unit && m != X->identities[s]) continue;
      tick();
      psi[e] = m;
      bool ok = true;
      for (auto& [p, q, pq] : touching[e])
        if (psi[p] >= 0 && psi[q] >= 0 && psi[pq] >= 0 && psi[pq] != X->compose(psi[q], psi[p])) ok = false;
      if (ok) assign_el(e + 1);
      psi[e] = -1;
    }
  };
  std::function<void(int)> assign_ob = [&](int k) {
    if (k == static_cast<int>(objs.size())) return assign_el(0);
    for (int y = 0; y < X->num_objects(); ++y) {
      tick();
      ob[k] = y;
      assign_ob(k + 1);
    }
  };
  assign_ob(0);
  rep.functors = for_each_functor(colim.cat, X, budget, [](const FinFunctor&) { return true; });
  rep.ok = all_factor && rep.cocones == rep.functors;
  return rep;
}

// ---- the comparison with the Grothendieck construction ----------------------------

struct Thm1Result {
  Grothendieck gro;
  ProfColimit dcolim;
  std::optional<CatIso> iso;
};

inline Thm1Result thm1_check(const CatDiagram& F, long iso_budget = 1000000) {
  F.validate();
  Thm1Result r{grothendieck(F), dcolim_prof(companion_diagram(F)), std::nullopt};
  r.iso = cat_iso(r.gro.cat, r.dcolim.cat, iso_budget);
  return r;
}

}  // namespace equipkit
