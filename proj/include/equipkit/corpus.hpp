#pragma once

// Seeded generators of small test inputs. Everything is drawn from one
// std::mt19937, reduced with `%` so the output is the same on every platform.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "equipkit/fincat.hpp"
#include "equipkit/profcollage.hpp"
#include "equipkit/sharp.hpp"
#include "equipkit/sset_maps.hpp"

namespace equipkit::corpus {

using Rng = std::mt19937;

inline int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

template <class T>
const T& choose(Rng& rng, const std::vector<T>& v) {
  return v.at(pick(rng, static_cast<int>(v.size())));
}

// ---- categories ---------------------------------------------------------

/// Poset on prefix0..prefix{n-1}; `less(i, j)` for i < j, closed transitively.
template <class Less>
FinCategory poset_category(int n, Less less, const std::string& prefix = "") {
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) le[i][j] = i == j || (i < j && less(i, j));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = 1;
  FinCategory c;
  for (int i = 0; i < n; ++i) c.add_object(prefix + std::to_string(i));
  std::map<std::pair<int, int>, int> m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j])
        m[{i, j}] = c.add_morphism(i == j ? "id_" + c.objects[i] : c.objects[i] + "<" + c.objects[j], i, j);
  for (int i = 0; i < n; ++i) c.set_identity(i, m[{i, i}]);
  c.fill([&](int g, int f) { return m.at({c.src(f), c.dst(g)}); });
  return c;
}

/// One object with an idempotent e (e.e = e).
inline FinCategory idempotent_category(const std::string& prefix = "") {
  FinCategory c;
  c.add_object(prefix + "*");
  c.set_identity(0, c.add_morphism("id_" + prefix + "*", 0, 0));
  c.add_morphism(prefix + "e", 0, 0);
  c.fill([](int g, int f) { return g == 0 ? f : (f == 0 ? g : 1); });
  return c;
}

inline FinCategory random_poset(Rng& rng, int max_objects, const std::string& prefix = "") {
  int n = 1 + pick(rng, max_objects);
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rel[i][j] = pick(rng, 2);
  return poset_category(n, [&](int i, int j) { return rel[i][j] != 0; }, prefix);
}

/// A poset of at most `max_objects` objects, or occasionally the idempotent monoid.
inline FinCategory random_category(Rng& rng, int max_objects, const std::string& prefix = "") {
  if (pick(rng, 6) == 0) return idempotent_category(prefix);
  return random_poset(rng, max_objects, prefix);
}

inline FinFunctor random_functor(Rng& rng, const CatPtr& C, const CatPtr& D, long budget = 100000) {
  std::vector<FinFunctor> all;
  for_each_functor(C, D, budget, [&](const FinFunctor& f) {
    all.push_back(f);
    return true;
  });
  if (all.empty()) throw Error(ErrorCode::ValidationError, "no functor between the chosen categories");
  return choose(rng, all);
}

enum class Shape { Arrow, Triangle, Span };

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::Arrow: return "arrow";
    case Shape::Triangle: return "triangle";
    case Shape::Span: return "span";
  }
  return "?";
}

inline FinCategory shape_category(Shape s) {
  switch (s) {
    case Shape::Arrow: return delta_category(1);
    case Shape::Triangle: return delta_category(2);
    case Shape::Span: return span_category();
  }
  return terminal_category();
}

/// Edges of a diagram over a shape from its generating edges: for the arrow
/// and triangle, gens[k] is the step k -> k+1; for the span, the two legs.
template <class S>
std::vector<typename S::Map> shape_edges(const FinCategory& J, Shape s, const std::vector<typename S::Obj>& nodes,
                                         const std::vector<typename S::Map>& gens) {
  std::vector<typename S::Map> edges;
  for (int m = 0; m < J.num_morphisms(); ++m) {
    int a = J.src(m), b = J.dst(m);
    if (a == b) {
      edges.push_back(S::identity(nodes[a]));
    } else if (s == Shape::Span) {
      edges.push_back(gens.at(b - 1));
    } else {
      auto e = gens.at(a);
      for (int k = a + 1; k < b; ++k) e = S::compose(gens.at(k), e);
      edges.push_back(e);
    }
  }
  return edges;
}

inline CatDiagram random_cat_diagram(Rng& rng, Shape s, int max_objects = 4) {
  auto J = share(shape_category(s));
  std::vector<CatPtr> nodes;
  for (int x = 0; x < J->num_objects(); ++x) nodes.push_back(share(random_category(rng, max_objects)));
  std::vector<FinFunctor> gens;
  if (s == Shape::Span) {
    gens.push_back(random_functor(rng, nodes[0], nodes[1]));
    gens.push_back(random_functor(rng, nodes[0], nodes[2]));
  } else {
    for (int k = 0; k + 1 < J->num_objects(); ++k) gens.push_back(random_functor(rng, nodes[k], nodes[k + 1]));
  }
  CatDiagram d{J, nodes, shape_edges<CatSite>(*J, s, nodes, gens)};
  d.validate();
  return d;
}

/// At least `count` diagrams, cycling through the arrow, triangle and span shapes.
inline std::vector<CatDiagram> cat_diagrams(Rng& rng, int count, int max_objects = 4) {
  std::vector<CatDiagram> out;
  const Shape shapes[] = {Shape::Arrow, Shape::Triangle, Shape::Span};
  for (int k = 0; k < count; ++k) out.push_back(random_cat_diagram(rng, shapes[k % 3], max_objects));
  return out;
}

// ---- simplicial sets ------------------------------------------------------

/// Small simplicial sets: simplices, boundaries, horns and a few unions.
inline std::vector<SSetPtr> small_ssets(int max_simplices = 8) {
  std::vector<FinSimplicialSet> all{std_simplex(0), std_simplex(1), std_simplex(2), boundary(1), boundary(2),
                                    horn(2, 0),     horn(2, 1),     horn(2, 2),     disjoint_union(std_simplex(1), std_simplex(0)),
                                    disjoint_union(std_simplex(0), std_simplex(0))};
  std::vector<SSetPtr> out;
  for (auto& x : all)
    if (static_cast<int>(x.size()) <= max_simplices) out.push_back(share(std::move(x)));
  return out;
}

inline SimplicialMap random_sset_map(Rng& rng, const SSetPtr& A, const SSetPtr& B, long budget = 100000) {
  std::vector<SimplicialMap> all;
  for_each_sset_map(A, B, budget, [&](const SimplicialMap& f) {
    all.push_back(f);
    return true;
  });
  if (all.empty()) throw Error(ErrorCode::ValidationError, "no simplicial map between the chosen sets");
  return choose(rng, all);
}

inline VerticalDiagram<SSetSite> random_sset_diagram(Rng& rng, Shape s, int max_simplices = 8) {
  auto pool = small_ssets(max_simplices);
  auto J = share(shape_category(s));
  std::vector<SSetPtr> nodes;
  for (int x = 0; x < J->num_objects(); ++x) nodes.push_back(choose(rng, pool));
  std::vector<SimplicialMap> gens;
  if (s == Shape::Span) {
    gens.push_back(random_sset_map(rng, nodes[0], nodes[1]));
    gens.push_back(random_sset_map(rng, nodes[0], nodes[2]));
  } else {
    for (int k = 0; k + 1 < J->num_objects(); ++k) gens.push_back(random_sset_map(rng, nodes[k], nodes[k + 1]));
  }
  VerticalDiagram<SSetSite> d{J, nodes, shape_edges<SSetSite>(*J, s, nodes, gens)};
  d.validate();
  return d;
}

inline std::vector<VerticalDiagram<SSetSite>> sset_diagrams(Rng& rng, int count, int max_simplices = 8) {
  std::vector<VerticalDiagram<SSetSite>> out;
  const Shape shapes[] = {Shape::Arrow, Shape::Triangle, Shape::Span};
  for (int k = 0; k < count; ++k) out.push_back(random_sset_diagram(rng, shapes[k % 3], max_simplices));
  return out;
}

/// Pairs (x, y) with at most `max_total` nondegenerate simplices together.
inline std::vector<std::pair<SSetPtr, SSetPtr>> sset_pairs(Rng& rng, int count, int max_total = 12) {
  auto pool = small_ssets();
  std::vector<std::pair<SSetPtr, SSetPtr>> ok;
  for (auto& x : pool)
    for (auto& y : pool)
      if (static_cast<int>(x->size() + y->size()) <= max_total) ok.push_back({x, y});
  std::vector<std::pair<SSetPtr, SSetPtr>> out;
  for (int k = 0; k < count; ++k) out.push_back(choose(rng, ok));
  return out;
}

// ---- chains -----------------------------------------------------------------

inline Chain<CatSite> random_cat_chain(Rng& rng, int length, int max_objects = 3) {
  std::vector<CatPtr> objs;
  std::vector<FinFunctor> maps;
  for (int k = 0; k <= length; ++k) objs.push_back(share(random_category(rng, max_objects)));
  for (int k = 0; k < length; ++k) maps.push_back(random_functor(rng, objs[k], objs[k + 1]));
  return make_chain<CatSite>(objs, maps);
}

inline Chain<SSetSite> random_sset_chain(Rng& rng, int length, int max_simplices = 3) {
  auto pool = small_ssets(max_simplices);
  std::vector<SSetPtr> objs;
  std::vector<SimplicialMap> maps;
  for (int k = 0; k <= length; ++k) objs.push_back(choose(rng, pool));
  for (int k = 0; k < length; ++k) maps.push_back(random_sset_map(rng, objs[k], objs[k + 1]));
  return make_chain<SSetSite>(objs, maps);
}

/// f : A -> B and g : B -> C.
inline std::pair<FinFunctor, FinFunctor> composable_pair(Rng& rng, int max_objects = 3) {
  auto A = share(random_category(rng, max_objects, "a"));
  auto B = share(random_category(rng, max_objects, "b"));
  auto C = share(random_category(rng, max_objects, "c"));
  return {random_functor(rng, A, B), random_functor(rng, B, C)};
}

// ---- profunctors --------------------------------------------------------------

/// One element at (c, d) exactly when (c, d) is in `rel`; `rel` must be
/// closed downward in c and upward in d.
inline Profunctor relation_profunctor(const CatPtr& C, const CatPtr& D, const std::vector<std::vector<char>>& rel) {
  Profunctor u{C, D, {}, {}, {}};
  std::map<std::pair<int, int>, int> at;
  for (int c = 0; c < C->num_objects(); ++c)
    for (int d = 0; d < D->num_objects(); ++d)
      if (rel[c][d]) {
        at[{c, d}] = u.size();
        u.elems.push_back({c, d, "r"});
      }
  u.fill([&](int x, int f) { return at.at({C->src(f), u.elems[x].d}); },
         [&](int g, int x) { return at.at({u.elems[x].c, D->dst(g)}); });
  u.validate();
  return u;
}

/// A random relation between posets, closed under the actions.
inline Profunctor random_relation(Rng& rng, const CatPtr& C, const CatPtr& D) {
  int nc = C->num_objects(), nd = D->num_objects();
  std::vector<std::vector<char>> rel(nc, std::vector<char>(nd, 0));
  for (int c = 0; c < nc; ++c)
    for (int d = 0; d < nd; ++d) rel[c][d] = pick(rng, 3) == 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int f = 0; f < C->num_morphisms(); ++f)
      for (int g = 0; g < D->num_morphisms(); ++g)
        if (rel[C->dst(f)][D->src(g)] && !rel[C->src(f)][D->dst(g)]) {
          rel[C->src(f)][D->dst(g)] = 1;
          changed = true;
        }
  }
  return relation_profunctor(C, D, rel);
}

/// Hom profunctors, companions, cojoints and random relations.
inline std::vector<ProfPtr> profunctors(Rng& rng, int count, int max_objects = 3) {
  std::vector<ProfPtr> out;
  for (int k = 0; out.size() < static_cast<size_t>(count); ++k) {
    auto C = share(random_category(rng, max_objects, "c"));
    auto D = share(random_poset(rng, max_objects, "d"));
    switch (k % 4) {
      case 0: out.push_back(share(hom_profunctor(C))); break;
      case 1: out.push_back(share(companion(random_functor(rng, C, D)))); break;
      case 2: out.push_back(share(cojoint(random_functor(rng, C, D)))); break;
      default: {
        auto P = share(random_poset(rng, max_objects, "p"));
        out.push_back(share(random_relation(rng, P, D)));
      }
    }
  }
  return out;
}

// ---- slice objects ------------------------------------------------------------

inline CatSlice random_cat_slice(Rng& rng, int max_level = 2, int max_objects = 4) {
  int n = pick(rng, max_level + 1);
  auto C = share(random_category(rng, max_objects));
  auto f = random_functor(rng, C, share(delta_category(n)));
  return from_labels<CatSite>(C, n, f.ob);
}

inline SSetSlice random_sset_slice(Rng& rng, int max_level = 2, int max_simplices = 8) {
  int n = pick(rng, max_level + 1);
  auto X = choose(rng, small_ssets(max_simplices));
  return sset_slice(random_sset_map(rng, X, share(std_simplex(n))), n);
}

inline CospanSlice random_cospan(Rng& rng, int max_level = 2, int max_size = 3) {
  CospanSlice x;
  x.n = pick(rng, max_level + 1);
  int a = 1 + pick(rng, max_size);
  for (int e = 0; e < a; ++e) x.apex.push_back("a" + std::to_string(e));
  for (int i = 0; i <= x.n; ++i) {
    int l = pick(rng, max_size + 1);
    std::vector<std::string> leg;
    std::vector<int> map;
    for (int e = 0; e < l; ++e) {
      leg.push_back("x" + std::to_string(i) + "_" + std::to_string(e));
      map.push_back(pick(rng, a));
    }
    x.legs.push_back(leg);
    x.maps.push_back(map);
  }
  x.validate();
  return x;
}

/// `count` objects of the given site; companions of random chains are mixed in.
inline std::vector<SliceObject> slice_objects(Rng& rng, Site site, int count, int max_level = 2) {
  std::vector<SliceObject> out;
  for (int k = 0; k < count; ++k) {
    bool chain = k % 3 == 2 && max_level >= 1;
    int len = 1 + pick(rng, max_level);
    switch (site) {
      case Site::Cat:
        if (chain) out.push_back(companion_simplex(random_cat_chain(rng, len)).y);
        else out.push_back(random_cat_slice(rng, max_level));
        break;
      case Site::SSet:
        if (chain) out.push_back(companion_simplex(random_sset_chain(rng, len)).y);
        else out.push_back(random_sset_slice(rng, max_level));
        break;
      case Site::Cospan: out.push_back(random_cospan(rng, max_level)); break;
    }
  }
  return out;
}

}  // namespace equipkit::corpus
