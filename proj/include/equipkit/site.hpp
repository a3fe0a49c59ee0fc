#pragma once

// The two carrier sites, simplicial sets and finite categories, behind one
// static interface so that slice constructions are written once.
//
// A "point" is a vertex (sset) or an object (cat). Elements are simplices or
// objects; label vectors are indexed by element id.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equipkit/cat_colimit.hpp"
#include "equipkit/fincat.hpp"
#include "equipkit/simpset.hpp"
#include "equipkit/sset_iso.hpp"
#include "equipkit/sset_limits.hpp"

namespace equipkit {

struct SSetSite {
  using Obj = SSetPtr;
  using Map = SimplicialMap;
  using Diagram = SSetDiagram;
  using Colimit = SSetColimit;
  static constexpr const char* tag = "sset";

  static size_t size(const Obj& x) { return x->size(); }
  static std::vector<int> points(const Obj& x) { return x->cells_of(0); }
  static int point_image(const Map& f, int v) { return f.assign[v].base; }
  static Map identity(const Obj& x) { return identity_map(x); }
  static Map compose(const Map& g, const Map& f) { return equipkit::compose(g, f); }
  static std::string describe(const Obj& x) {
    std::string s;
    for (auto c : x->nondegenerate_counts()) s += (s.empty() ? "" : ",") + std::to_string(c);
    return "[" + s + "]";
  }

  /// Points of the element in order (vertices of a simplex).
  static std::vector<int> element_points(const Obj& x, int s) { return x->verts[s]; }

  /// Subobject on the elements all of whose points are kept; names kept.
  template <class Keep>
  static std::pair<Obj, Map> sub(const Obj& x, Keep keep) {
    auto [y, to_old] = sub_sset(*x, [&](int s) {
      for (int v : x->verts[s])
        if (!keep(v)) return false;
      return true;
    });
    auto p = share(std::move(y));
    return {p, inclusion_map(p, x, to_old)};
  }

  struct Times {
    Product pr;
    Obj base;
    Map proj;
    std::vector<int> coord;  // simplex coordinate of each vertex
    const Obj& obj() const { return pr.obj(); }
    int n() const { return pr.n; }
  };

  static Times times(const Obj& x, int n) {
    Times t{product_with_simplex(x, n), x, {}, {}};
    t.proj = t.pr.pb.p1;
    t.coord.assign(t.obj()->size(), -1);
    for (int v : t.obj()->cells_of(0)) t.coord[v] = simplex_sequence(t.pr, t.pr.pb.p2.assign[v])[0];
    return t;
  }

  /// (a, label): W -> base x Delta^n.
  static Map times_pair(const Times& t, const Map& a, const std::vector<int>& label) {
    Map m{a.src, t.obj(), {}};
    for (size_t s = 0; s < a.src->size(); ++s) {
      delta::Mono seq;
      for (int v : a.src->verts[s]) seq.push_back(label[v]);
      m.assign.push_back(t.pr.pair(a.assign[s], seq));
    }
    return m;
  }

  static Map times_map(const Times& from, const Times& to, const Map* g, const delta::Mono& theta) {
    return product_map(from.pr, to.pr, g, theta);
  }

  static Colimit colimit(const Diagram& d, long) { return equipkit::colimit(d); }
  static const Obj& colimit_obj(const Colimit& c) { return c.obj; }
  static Map induced(const Colimit& c, const std::vector<Map>& legs, const Obj& target) {
    return colimit_induced(c, legs, target);
  }

  static std::optional<std::pair<Map, Map>> iso(const Obj& a, const std::vector<int>* la, const Obj& b,
                                                const std::vector<int>* lb, long budget) {
    auto r = sset_iso(a, b, budget, la, lb);
    if (!r) return std::nullopt;
    return std::make_pair(r->fwd, r->bwd);
  }

  /// Name of each element of the source mapped to the name of its image.
  static std::map<std::string, std::string> image_names(const Map& f) {
    std::map<std::string, std::string> out;
    for (size_t s = 0; s < f.src->size(); ++s) out[f.src->names[s]] = f.dst->name_of(f.assign[s]);
    return out;
  }

  /// The map sub -> x matching elements by name.
  static Map by_names(const Obj& sub, const Obj& x) {
    Map m{sub, x, {}};
    for (size_t s = 0; s < sub->size(); ++s) {
      auto t = x->find(sub->names[s]);
      if (!t || x->dims[*t] != sub->dims[s])
        throw Error(ErrorCode::ValidationError, "no simplex named '" + sub->names[s] + "' of matching dimension");
      m.assign.push_back({*t, {}});
    }
    if (auto v = m.violation()) throw Error(ErrorCode::ValidationError, "name matching is not simplicial: " + *v);
    return m;
  }

  static bool same_by_ids(const Obj& a, const std::vector<int>& la, const Obj& b, const std::vector<int>& lb) {
    if (a->size() != b->size()) return false;
    for (size_t s = 0; s < a->size(); ++s) {
      auto t = b->find(a->names[s]);
      if (!t || b->dims[*t] != a->dims[s]) return false;
      if (a->dims[s] == 0 && la[s] != lb[*t]) return false;
      for (int i = 0; i <= a->dims[s] && a->dims[s] > 0; ++i)
        if (a->name_of(a->faces[s][i]) != b->name_of(b->faces[*t][i])) return false;
    }
    return true;
  }

  template <class Fn>
  static Obj relabel(const Obj& x, Fn&& fn) {
    // id order, so that maps can be retargeted onto the copy
    FinSimplicialSet y;
    for (size_t s = 0; s < x->size(); ++s) y.add(fn(x->names[s]), x->dims[s], x->faces[s]);
    return share(std::move(y));
  }

  static Obj rename(const Obj& x, const std::string& prefix) {
    return relabel(x, [&](const std::string& n) { return prefix + n; });
  }

  /// f: A -> B viewed as a map into a subobject of B given by names.
  static Map corestrict(const Map& f, const Obj& sub) {
    Map m{f.src, sub, {}};
    for (auto& t : f.assign) {
      auto b = sub->find(f.dst->names[t.base]);
      if (!b) throw Error(ErrorCode::ValidationError, "image '" + f.dst->names[t.base] + "' outside the subobject");
      m.assign.push_back({*b, t.degens});
    }
    return m;
  }

  /// Same assignment between objects with identical element order.
  static Map retarget(const Map& f, const Obj& src, const Obj& dst) { return {src, dst, f.assign}; }
  static void validate(const Map& f) { f.validate(); }
};

struct CatSite {
  using Obj = CatPtr;
  using Map = FinFunctor;
  using Diagram = CatGraphDiagram;
  using Colimit = CatColimit;
  static constexpr const char* tag = "cat";

  static size_t size(const Obj& x) { return static_cast<size_t>(x->num_objects()); }
  static std::vector<int> points(const Obj& x) {
    std::vector<int> p(x->num_objects());
    for (int i = 0; i < x->num_objects(); ++i) p[i] = i;
    return p;
  }
  static int point_image(const Map& f, int v) { return f.ob[v]; }
  static Map identity(const Obj& x) { return identity_functor(x); }
  static Map compose(const Map& g, const Map& f) { return equipkit::compose(g, f); }
  static std::string describe(const Obj& x) {
    return "[" + std::to_string(x->num_objects()) + "," + std::to_string(x->num_morphisms()) + "]";
  }

  template <class Keep>
  static std::pair<Obj, Map> sub(const Obj& x, Keep keep) {
    std::vector<int> kept;
    for (int o = 0; o < x->num_objects(); ++o)
      if (keep(o)) kept.push_back(o);
    auto [c, mold] = full_subcategory(*x, [&](int o) { return keep(o); });
    auto p = share(std::move(c));
    return {p, Map{p, x, kept, mold}};
  }

  struct Times {
    Obj cat;
    Obj base;
    Map proj;
    std::vector<int> coord;
    int dim = 0;
    const Obj& obj() const { return cat; }
    int n() const { return dim; }
    int ob(int c, int v) const { return c * (dim + 1) + v; }
    std::map<std::tuple<int, int, int>, int> mor;
  };

  /// C x [n]: objects "(c|v)", morphisms "(m|vw)".
  static Times times(const Obj& x, int n) {
    Times t;
    t.base = x;
    t.dim = n;
    FinCategory c;
    for (int o = 0; o < x->num_objects(); ++o)
      for (int v = 0; v <= n; ++v) c.add_object("(" + x->objects[o] + "|" + std::to_string(v) + ")");
    std::vector<std::tuple<int, int, int>> parts;
    for (int m = 0; m < x->num_morphisms(); ++m)
      for (int v = 0; v <= n; ++v)
        for (int w = v; w <= n; ++w) {
          int id = c.add_morphism("(" + x->morphisms[m].id + "|" + delta::vertex_string({v, w}, n) + ")",
                                  t.ob(x->src(m), v), t.ob(x->dst(m), w));
          t.mor[{m, v, w}] = id;
          parts.push_back({m, v, w});
        }
    for (int o = 0; o < x->num_objects(); ++o)
      for (int v = 0; v <= n; ++v) c.set_identity(t.ob(o, v), t.mor.at({x->identities[o], v, v}));
    c.fill([&](int g, int f) {
      auto [mg, vg, wg] = parts[g];
      auto [mf, vf, wf] = parts[f];
      return t.mor.at({x->compose(mg, mf), vf, wg});
    });
    t.cat = share(std::move(c));
    t.proj = {t.cat, x, {}, {}};
    for (int o = 0; o < x->num_objects(); ++o)
      for (int v = 0; v <= n; ++v) {
        t.proj.ob.push_back(o);
        t.coord.push_back(v);
      }
    for (auto& [m, v, w] : parts) t.proj.mor.push_back(m);
    return t;
  }

  static Map times_pair(const Times& t, const Map& a, const std::vector<int>& label) {
    Map m{a.src, t.cat, {}, {}};
    for (int o = 0; o < a.src->num_objects(); ++o) m.ob.push_back(t.ob(a.ob[o], label[o]));
    for (int k = 0; k < a.src->num_morphisms(); ++k)
      m.mor.push_back(t.mor.at({a.mor[k], label[a.src->src(k)], label[a.src->dst(k)]}));
    return m;
  }

  static Map times_map(const Times& from, const Times& to, const Map* g, const delta::Mono& theta) {
    const auto& X = *from.base;
    Map m{from.cat, to.cat, {}, {}};
    for (int o = 0; o < X.num_objects(); ++o)
      for (int v = 0; v <= from.dim; ++v) m.ob.push_back(to.ob(g ? g->ob[o] : o, theta[v]));
    m.mor.resize(from.cat->num_morphisms());
    for (auto& [key, id] : from.mor) {
      auto [mm, v, w] = key;
      m.mor[id] = to.mor.at({g ? g->mor[mm] : mm, theta[v], theta[w]});
    }
    return m;
  }

  static Colimit colimit(const Diagram& d, long budget) { return cat_colimit(d, budget); }
  static const Obj& colimit_obj(const Colimit& c) { return c.cat; }
  static Map induced(const Colimit& c, const std::vector<Map>& legs, const Obj& target) {
    return cat_colimit_induced(c, legs, target);
  }

  static std::optional<std::pair<Map, Map>> iso(const Obj& a, const std::vector<int>* la, const Obj& b,
                                                const std::vector<int>* lb, long budget) {
    auto r = cat_iso(a, b, budget, la, lb);
    if (!r) return std::nullopt;
    return std::make_pair(r->fwd, r->bwd);
  }

  static std::map<std::string, std::string> image_names(const Map& f) {
    std::map<std::string, std::string> out;
    for (int o = 0; o < f.src->num_objects(); ++o) out["o:" + f.src->objects[o]] = f.dst->objects[f.ob[o]];
    for (int m = 0; m < f.src->num_morphisms(); ++m)
      out["m:" + f.src->morphisms[m].id] = f.dst->morphisms[f.mor[m]].id;
    return out;
  }

  static Map by_names(const Obj& sub, const Obj& x) {
    Map m{sub, x, {}, {}};
    for (auto& o : sub->objects) {
      auto t = x->find_object(o);
      if (!t) throw Error(ErrorCode::ValidationError, "no object named '" + o + "'");
      m.ob.push_back(*t);
    }
    for (auto& mm : sub->morphisms) {
      auto t = x->find_morphism(mm.id);
      if (!t) throw Error(ErrorCode::ValidationError, "no morphism named '" + mm.id + "'");
      m.mor.push_back(*t);
    }
    if (auto v = m.violation()) throw Error(ErrorCode::ValidationError, "name matching is not functorial: " + *v);
    return m;
  }

  static bool same_by_ids(const Obj& a, const std::vector<int>& la, const Obj& b, const std::vector<int>& lb) {
    if (a->num_objects() != b->num_objects() || a->num_morphisms() != b->num_morphisms()) return false;
    std::vector<int> mo, mm;
    for (int o = 0; o < a->num_objects(); ++o) {
      auto t = b->find_object(a->objects[o]);
      if (!t || la[o] != lb[*t]) return false;
      mo.push_back(*t);
    }
    for (int m = 0; m < a->num_morphisms(); ++m) {
      auto t = b->find_morphism(a->morphisms[m].id);
      if (!t || b->src(*t) != mo[a->src(m)] || b->dst(*t) != mo[a->dst(m)]) return false;
      mm.push_back(*t);
    }
    for (int f = 0; f < a->num_morphisms(); ++f)
      for (int g = 0; g < a->num_morphisms(); ++g)
        if (a->src(g) == a->dst(f) && mm[a->compose(g, f)] != b->compose(mm[g], mm[f])) return false;
    return true;
  }

  template <class Fn>
  static Obj relabel(const Obj& x, Fn&& fn) {
    FinCategory c;
    for (auto& o : x->objects) c.add_object(fn(o));
    for (auto& m : x->morphisms) c.add_morphism(fn(m.id), m.src, m.dst);
    for (int o = 0; o < x->num_objects(); ++o) c.set_identity(o, x->identities[o]);
    c.fill([&](int g, int f) { return x->compose(g, f); }, false);
    return share(std::move(c));
  }

  static Obj rename(const Obj& x, const std::string& prefix) {
    return relabel(x, [&](const std::string& n) { return prefix + n; });
  }

  static Map corestrict(const Map& f, const Obj& sub) {
    Map m{f.src, sub, {}, {}};
    for (int o : f.ob) {
      auto b = sub->find_object(f.dst->objects[o]);
      if (!b) throw Error(ErrorCode::ValidationError, "image '" + f.dst->objects[o] + "' outside the subcategory");
      m.ob.push_back(*b);
    }
    for (int k : f.mor) {
      auto b = sub->find_morphism(f.dst->morphisms[k].id);
      if (!b) throw Error(ErrorCode::ValidationError, "image '" + f.dst->morphisms[k].id + "' outside the subcategory");
      m.mor.push_back(*b);
    }
    return m;
  }

  static Map retarget(const Map& f, const Obj& src, const Obj& dst) { return {src, dst, f.ob, f.mor}; }
  static void validate(const Map& f) { f.validate(); }
};

}  // namespace equipkit
