#pragma once

// Finite categories given by total composition tables, functors, natural
// transformations, nerves and the Grothendieck construction.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "equipkit/delta.hpp"
#include "equipkit/error.hpp"
#include "equipkit/simpset.hpp"

namespace equipkit {

struct Morphism {
  std::string id;
  int src = -1, dst = -1;
};

class FinCategory {
 public:
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<int> identities;

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms.size()); }
  int src(int m) const { return morphisms[m].src; }
  int dst(int m) const { return morphisms[m].dst; }
  bool is_identity(int m) const { return identities[src(m)] == m; }

  /// g . f, or -1 when dst f != src g.
  int compose(int g, int f) const { return table_[static_cast<size_t>(g) * morphisms.size() + f]; }

  const std::vector<int>& hom(int x, int y) const { return hom_[static_cast<size_t>(x) * objects.size() + y]; }

  std::optional<int> find_object(const std::string& s) const {
    auto it = obj_index_.find(s);
    return it == obj_index_.end() ? std::nullopt : std::optional<int>(it->second);
  }
  std::optional<int> find_morphism(const std::string& s) const {
    auto it = mor_index_.find(s);
    return it == mor_index_.end() ? std::nullopt : std::optional<int>(it->second);
  }
  int object(const std::string& s) const {
    if (auto o = find_object(s)) return *o;
    throw Error(ErrorCode::ValidationError, "unknown object '" + s + "'");
  }
  int morphism(const std::string& s) const {
    if (auto m = find_morphism(s)) return *m;
    throw Error(ErrorCode::ValidationError, "unknown morphism '" + s + "'");
  }

  // ---- construction ----

  int add_object(const std::string& name) {
    if (obj_index_.count(name)) throw Error(ErrorCode::ValidationError, "duplicate object '" + name + "'");
    obj_index_[name] = num_objects();
    objects.push_back(name);
    identities.push_back(-1);
    return num_objects() - 1;
  }
  int add_morphism(const std::string& id, int s, int t) {
    if (mor_index_.count(id)) throw Error(ErrorCode::ValidationError, "duplicate morphism '" + id + "'");
    if (s < 0 || t < 0 || s >= num_objects() || t >= num_objects())
      throw Error(ErrorCode::ValidationError, "morphism '" + id + "' has unknown endpoint");
    mor_index_[id] = num_morphisms();
    morphisms.push_back({id, s, t});
    return num_morphisms() - 1;
  }
  void set_identity(int x, int m) { identities[x] = m; }

  /// Allocates the composition table; entries are then filled with set_compose.
  void begin_table() {
    table_.assign(morphisms.size() * morphisms.size(), -1);
    hom_.assign(objects.size() * objects.size(), {});
    for (int m = 0; m < num_morphisms(); ++m) hom_[static_cast<size_t>(src(m)) * objects.size() + dst(m)].push_back(m);
  }
  void set_compose(int g, int f, int gf) { table_[static_cast<size_t>(g) * morphisms.size() + f] = gf; }

  /// Fills the table from a function and checks the category laws.
  template <class Fn>
  void fill(Fn&& comp, bool check = true) {
    begin_table();
    for (int f = 0; f < num_morphisms(); ++f)
      for (int g = 0; g < num_morphisms(); ++g)
        if (src(g) == dst(f)) set_compose(g, f, comp(g, f));
    if (check) validate();
  }

  /// Exhaustive check of the composition table, identities and both laws.
  void validate() const {
    for (int x = 0; x < num_objects(); ++x) {
      int e = identities[x];
      if (e < 0 || src(e) != x || dst(e) != x)
        throw Error(ErrorCode::BadUnit, "object '" + objects[x] + "' lacks an identity", {{"object", objects[x]}});
    }
    for (int f = 0; f < num_morphisms(); ++f)
      for (int g = 0; g < num_morphisms(); ++g) {
        int gf = compose(g, f);
        if (src(g) != dst(f)) {
          if (gf != -1)
            throw Error(ErrorCode::ValidationError, "composite of non-composable pair",
                        {{"g", morphisms[g].id}, {"f", morphisms[f].id}});
          continue;
        }
        if (gf < 0)
          throw Error(ErrorCode::MissingComposite, "no entry for " + morphisms[g].id + " . " + morphisms[f].id,
                      {{"g", morphisms[g].id}, {"f", morphisms[f].id}});
        if (src(gf) != src(f) || dst(gf) != dst(g))
          throw Error(ErrorCode::ValidationError, "composite lands in wrong hom-set",
                      {{"g", morphisms[g].id}, {"f", morphisms[f].id}, {"gf", morphisms[gf].id}});
      }
    for (int f = 0; f < num_morphisms(); ++f) {
      if (compose(identities[dst(f)], f) != f || compose(f, identities[src(f)]) != f)
        throw Error(ErrorCode::BadUnit, "unit law fails at " + morphisms[f].id, {{"f", morphisms[f].id}});
    }
    for (int f = 0; f < num_morphisms(); ++f)
      for (int g = 0; g < num_morphisms(); ++g) {
        if (src(g) != dst(f)) continue;
        int gf = compose(g, f);
        for (int h = 0; h < num_morphisms(); ++h) {
          if (src(h) != dst(g)) continue;
          if (compose(h, gf) != compose(compose(h, g), f))
            throw Error(ErrorCode::NonAssociative,
                        "(" + morphisms[h].id + " . " + morphisms[g].id + ") . " + morphisms[f].id,
                        {{"h", morphisms[h].id}, {"g", morphisms[g].id}, {"f", morphisms[f].id}});
        }
      }
  }

  bool operator==(const FinCategory& o) const {
    if (objects != o.objects || identities != o.identities || table_ != o.table_) return false;
    if (morphisms.size() != o.morphisms.size()) return false;
    for (size_t m = 0; m < morphisms.size(); ++m)
      if (morphisms[m].id != o.morphisms[m].id || morphisms[m].src != o.morphisms[m].src ||
          morphisms[m].dst != o.morphisms[m].dst)
        return false;
    return true;
  }

 private:
  std::unordered_map<std::string, int> obj_index_, mor_index_;
  std::vector<int> table_;
  std::vector<std::vector<int>> hom_;
};

using CatPtr = std::shared_ptr<const FinCategory>;
inline CatPtr share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

/// Category description as read from input, by ids.
struct RawCategory {
  struct Mor {
    std::string id, src, dst;
  };
  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<std::array<std::string, 3>> compose;  // {g, f, gf}
};

inline FinCategory validate_category(const RawCategory& raw) {
  FinCategory c;
  for (auto& o : raw.objects) c.add_object(o);
  for (auto& m : raw.morphisms) c.add_morphism(m.id, c.object(m.src), c.object(m.dst));
  for (auto& [o, m] : raw.identities) c.set_identity(c.object(o), c.morphism(m));
  c.begin_table();
  for (auto& [g, f, gf] : raw.compose) {
    int ig = c.morphism(g), jf = c.morphism(f), k = c.morphism(gf);
    if (c.src(ig) != c.dst(jf))
      throw Error(ErrorCode::ValidationError, "composite given for non-composable pair " + g + " . " + f);
    int prev = c.compose(ig, jf);
    if (prev >= 0 && prev != k)
      throw Error(ErrorCode::ValidationError, "conflicting composites for " + g + " . " + f);
    c.set_compose(ig, jf, k);
  }
  c.validate();
  return c;
}

inline RawCategory to_raw(const FinCategory& c) {
  RawCategory r;
  r.objects = c.objects;
  for (auto& m : c.morphisms) r.morphisms.push_back({m.id, c.objects[m.src], c.objects[m.dst]});
  for (int x = 0; x < c.num_objects(); ++x) r.identities[c.objects[x]] = c.morphisms[c.identities[x]].id;
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g = 0; g < c.num_morphisms(); ++g)
      if (c.src(g) == c.dst(f)) r.compose.push_back({c.morphisms[g].id, c.morphisms[f].id, c.morphisms[c.compose(g, f)].id});
  return r;
}

// ---- standard categories -------------------------------------------------

/// [n] as a poset category; morphism i <= j is named by its two vertices.
inline FinCategory delta_category(int n) {
  FinCategory c;
  for (int i = 0; i <= n; ++i) c.add_object(std::to_string(i));
  std::map<std::pair<int, int>, int> m;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) m[{i, j}] = c.add_morphism(delta::vertex_string({i, j}, n), i, j);
  for (int i = 0; i <= n; ++i) c.set_identity(i, m[{i, i}]);
  c.fill([&](int g, int f) { return m[{c.src(f), c.dst(g)}]; });
  return c;
}

inline FinCategory terminal_category() {
  FinCategory c;
  c.add_object("*");
  c.set_identity(0, c.add_morphism("id", 0, 0));
  c.fill([](int, int) { return 0; });
  return c;
}

inline FinCategory discrete_category(const std::vector<std::string>& objs) {
  FinCategory c;
  for (auto& o : objs) c.add_object(o);
  for (int x = 0; x < c.num_objects(); ++x) c.set_identity(x, c.add_morphism("id_" + objs[x], x, x));
  c.fill([](int g, int) { return g; });
  return c;
}

/// The span 1 <- 0 -> 2.
inline FinCategory span_category() {
  FinCategory c;
  for (auto o : {"0", "1", "2"}) c.add_object(o);
  for (int x = 0; x < 3; ++x) c.set_identity(x, c.add_morphism("id" + std::to_string(x), x, x));
  c.add_morphism("a", 0, 1);
  c.add_morphism("b", 0, 2);
  c.fill([&](int g, int f) { return c.is_identity(g) ? f : g; });
  return c;
}

inline FinCategory opposite(const FinCategory& c) {
  FinCategory o;
  for (auto& x : c.objects) o.add_object(x);
  for (auto& m : c.morphisms) o.add_morphism(m.id, m.dst, m.src);
  for (int x = 0; x < c.num_objects(); ++x) o.set_identity(x, c.identities[x]);
  o.fill([&](int g, int f) { return c.compose(f, g); }, false);
  return o;
}

/// Full subcategory on the objects accepted by `keep`; ids unchanged.
template <class Keep>
std::pair<FinCategory, std::vector<int>> full_subcategory(const FinCategory& c, Keep keep) {
  FinCategory s;
  std::vector<int> onew(c.num_objects(), -1), mnew(c.num_morphisms(), -1), mold;
  for (int x = 0; x < c.num_objects(); ++x)
    if (keep(x)) onew[x] = s.add_object(c.objects[x]);
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (onew[c.src(m)] >= 0 && onew[c.dst(m)] >= 0) {
      mnew[m] = s.add_morphism(c.morphisms[m].id, onew[c.src(m)], onew[c.dst(m)]);
      mold.push_back(m);
    }
  for (int x = 0; x < c.num_objects(); ++x)
    if (onew[x] >= 0) s.set_identity(onew[x], mnew[c.identities[x]]);
  s.fill([&](int g, int f) { return mnew[c.compose(mold[g], mold[f])]; }, false);
  return {std::move(s), std::move(mold)};
}

// ---- functors and transformations ----------------------------------------

struct FinFunctor {
  CatPtr src, dst;
  std::vector<int> ob, mor;

  std::optional<std::string> violation() const {
    if (static_cast<int>(ob.size()) != src->num_objects() || static_cast<int>(mor.size()) != src->num_morphisms())
      return std::string("map size mismatch");
    for (int m = 0; m < src->num_morphisms(); ++m) {
      int fm = mor[m];
      if (fm < 0 || fm >= dst->num_morphisms()) return "unmapped morphism " + src->morphisms[m].id;
      if (dst->src(fm) != ob[src->src(m)] || dst->dst(fm) != ob[src->dst(m)])
        return "endpoints not preserved at " + src->morphisms[m].id;
    }
    for (int x = 0; x < src->num_objects(); ++x)
      if (mor[src->identities[x]] != dst->identities[ob[x]]) return "identity not preserved at " + src->objects[x];
    for (int f = 0; f < src->num_morphisms(); ++f)
      for (int g = 0; g < src->num_morphisms(); ++g)
        if (src->src(g) == src->dst(f) && mor[src->compose(g, f)] != dst->compose(mor[g], mor[f]))
          return "composition not preserved at " + src->morphisms[g].id + " . " + src->morphisms[f].id;
    return std::nullopt;
  }
  void validate() const {
    if (auto v = violation()) throw Error(ErrorCode::ValidationError, "functor: " + *v);
  }
  bool operator==(const FinFunctor& o) const { return ob == o.ob && mor == o.mor; }
};

inline FinFunctor identity_functor(const CatPtr& c) {
  FinFunctor f{c, c, {}, {}};
  for (int x = 0; x < c->num_objects(); ++x) f.ob.push_back(x);
  for (int m = 0; m < c->num_morphisms(); ++m) f.mor.push_back(m);
  return f;
}

/// g . f
inline FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
  FinFunctor h{f.src, g.dst, {}, {}};
  for (int x : f.ob) h.ob.push_back(g.ob[x]);
  for (int m : f.mor) h.mor.push_back(g.mor[m]);
  return h;
}

inline bool is_identity_functor(const FinFunctor& f) {
  for (size_t x = 0; x < f.ob.size(); ++x)
    if (f.ob[x] != static_cast<int>(x)) return false;
  for (size_t m = 0; m < f.mor.size(); ++m)
    if (f.mor[m] != static_cast<int>(m)) return false;
  return true;
}

/// Calls `visit` on every functor C -> D whose object map passes `allowed(x, y)`, until
/// `visit` returns false. Returns the count visited.
template <class Allowed, class Visit>
long for_each_functor_if(const CatPtr& C, const CatPtr& D, long budget, Allowed&& allowed, Visit&& visit) {
  FinFunctor f{C, D, std::vector<int>(C->num_objects(), -1), std::vector<int>(C->num_morphisms(), -1)};
  long steps = 0, found = 0;
  bool stop = false;
  // factorizations m = g . h, checked once both factors are placed
  std::vector<std::vector<std::pair<int, int>>> factors(C->num_morphisms());
  for (int h = 0; h < C->num_morphisms(); ++h)
    for (int g = 0; g < C->num_morphisms(); ++g)
      if (C->src(g) == C->dst(h)) factors[C->compose(g, h)].push_back({g, h});
  auto consistent = [&](int m) {
    for (auto [g, h] : factors[m])
      if (f.mor[g] >= 0 && f.mor[h] >= 0 && f.mor[m] != D->compose(f.mor[g], f.mor[h])) return false;
    for (int g = 0; g < C->num_morphisms(); ++g) {
      if (f.mor[g] < 0) continue;
      if (C->src(g) == C->dst(m)) {
        int gm = f.mor[C->compose(g, m)];
        if (gm >= 0 && gm != D->compose(f.mor[g], f.mor[m])) return false;
      }
      if (C->src(m) == C->dst(g)) {
        int mg = f.mor[C->compose(m, g)];
        if (mg >= 0 && mg != D->compose(f.mor[m], f.mor[g])) return false;
      }
    }
    return true;
  };
  std::function<void(int)> mors = [&](int m) {
    if (stop) return;
    if (m == C->num_morphisms()) {
      ++found;
      if (!visit(static_cast<const FinFunctor&>(f))) stop = true;
      return;
    }
    int a = f.ob[C->src(m)], b = f.ob[C->dst(m)];
    for (int n : D->hom(a, b)) {
      if (C->is_identity(m) && n != D->identities[a]) continue;
      if (++steps > budget) throw Error(ErrorCode::EnumerationBudgetExceeded, "functor enumeration budget exhausted");
      f.mor[m] = n;
      if (consistent(m)) mors(m + 1);
      f.mor[m] = -1;
      if (stop) return;
    }
  };
  // every arrow between placed objects needs a target hom-set
  auto reachable = [&](int x) {
    for (int m = 0; m < C->num_morphisms(); ++m) {
      int a = C->src(m), b = C->dst(m);
      if ((a == x || b == x) && f.ob[a] >= 0 && f.ob[b] >= 0 && D->hom(f.ob[a], f.ob[b]).empty()) return false;
    }
    return true;
  };
  std::function<void(int)> objs = [&](int x) {
    if (stop) return;
    if (x == C->num_objects()) return mors(0);
    for (int y = 0; y < D->num_objects(); ++y) {
      if (!allowed(x, y)) continue;
      if (++steps > budget) throw Error(ErrorCode::EnumerationBudgetExceeded, "functor enumeration budget exhausted");
      f.ob[x] = y;
      if (reachable(x)) objs(x + 1);
    }
    f.ob[x] = -1;
  };
  objs(0);
  return found;
}

template <class Visit>
long for_each_functor(const CatPtr& C, const CatPtr& D, long budget, Visit&& visit) {
  return for_each_functor_if(C, D, budget, [](int, int) { return true; }, visit);
}

/// Functor from id lookups; identities may be omitted from the morphism map.
inline FinFunctor functor_by_ids(const CatPtr& src, const CatPtr& dst, const std::map<std::string, std::string>& obj,
                                 const std::map<std::string, std::string>& mor) {
  FinFunctor f{src, dst, {}, {}};
  for (auto& x : src->objects) f.ob.push_back(dst->object(obj.at(x)));
  for (int m = 0; m < src->num_morphisms(); ++m) {
    auto it = mor.find(src->morphisms[m].id);
    if (it != mor.end()) f.mor.push_back(dst->morphism(it->second));
    else if (src->is_identity(m)) f.mor.push_back(dst->identities[f.ob[src->src(m)]]);
    else throw Error(ErrorCode::ValidationError, "functor: no image for morphism '" + src->morphisms[m].id + "'");
  }
  f.validate();
  return f;
}

struct NatTransformation {
  FinFunctor from, to;
  std::vector<int> comp;

  std::optional<std::string> violation() const {
    const auto& C = *from.src;
    const auto& D = *from.dst;
    for (int x = 0; x < C.num_objects(); ++x)
      if (D.src(comp[x]) != from.ob[x] || D.dst(comp[x]) != to.ob[x]) return "component at " + C.objects[x];
    for (int m = 0; m < C.num_morphisms(); ++m)
      if (D.compose(to.mor[m], comp[C.src(m)]) != D.compose(comp[C.dst(m)], from.mor[m]))
        return "naturality at " + C.morphisms[m].id;
    return std::nullopt;
  }
  void validate() const {
    if (auto v = violation()) throw Error(ErrorCode::ValidationError, "transformation: " + *v);
  }
};

// ---- diagrams of categories ----------------------------------------------

struct CatDiagram {
  CatPtr index;
  std::vector<CatPtr> nodes;       // per index object
  std::vector<FinFunctor> edges;   // per index morphism

  void validate() const {
    const auto& J = *index;
    if (static_cast<int>(nodes.size()) != J.num_objects() || static_cast<int>(edges.size()) != J.num_morphisms())
      throw Error(ErrorCode::ValidationError, "diagram size mismatch");
    for (int a = 0; a < J.num_morphisms(); ++a) {
      const auto& F = edges[a];
      if (F.src != nodes[J.src(a)] && !(*F.src == *nodes[J.src(a)]))
        throw Error(ErrorCode::ValidationError, "edge source mismatch at " + J.morphisms[a].id);
      if (F.dst != nodes[J.dst(a)] && !(*F.dst == *nodes[J.dst(a)]))
        throw Error(ErrorCode::ValidationError, "edge target mismatch at " + J.morphisms[a].id);
      F.validate();
    }
    for (int x = 0; x < J.num_objects(); ++x)
      if (!is_identity_functor(edges[J.identities[x]]))
        throw Error(ErrorCode::ValidationError, "identity not sent to identity at " + J.objects[x]);
    for (int f = 0; f < J.num_morphisms(); ++f)
      for (int g = 0; g < J.num_morphisms(); ++g)
        if (J.src(g) == J.dst(f) && !(edges[J.compose(g, f)] == compose(edges[g], edges[f])))
          throw Error(ErrorCode::ValidationError,
                      "not functorial at " + J.morphisms[g].id + " . " + J.morphisms[f].id);
  }
};

/// Diagram over Delta^1 given by a single functor.
inline CatDiagram arrow_diagram(const FinFunctor& f) {
  CatDiagram d;
  d.index = share(delta_category(1));
  d.nodes = {f.src, f.dst};
  d.edges = {identity_functor(f.src), f, identity_functor(f.dst)};
  return d;
}

// ---- Grothendieck construction -------------------------------------------

struct Grothendieck {
  CatPtr cat;
  std::vector<std::pair<int, int>> obj;          // (index object, fiber object)
  std::vector<std::tuple<int, int, int>> mor;    // (index morphism, source fiber object, fiber morphism)
};

/// Objects (i, x); morphisms (alpha, f: F_alpha x -> y); (b,g)(a,f) = (ba, g . F_b(f)).
inline Grothendieck grothendieck(const CatDiagram& F) {
  const auto& J = *F.index;
  Grothendieck g;
  FinCategory c;
  std::map<std::pair<int, int>, int> oid;
  for (int i = 0; i < J.num_objects(); ++i)
    for (int x = 0; x < F.nodes[i]->num_objects(); ++x) {
      oid[{i, x}] = c.add_object(J.objects[i] + ":" + F.nodes[i]->objects[x]);
      g.obj.push_back({i, x});
    }
  std::map<std::tuple<int, int, int>, int> mid;
  for (int a = 0; a < J.num_morphisms(); ++a) {
    int i = J.src(a), j = J.dst(a);
    const auto& Fa = F.edges[a];
    for (int x = 0; x < F.nodes[i]->num_objects(); ++x)
      for (int f = 0; f < F.nodes[j]->num_morphisms(); ++f) {
        if (F.nodes[j]->src(f) != Fa.ob[x]) continue;
        int y = F.nodes[j]->dst(f);
        std::string name = "(" + J.morphisms[a].id + ";" + F.nodes[i]->objects[x] + ";" + F.nodes[j]->morphisms[f].id + ")";
        mid[{a, x, f}] = c.add_morphism(name, oid[{i, x}], oid[{j, y}]);
        g.mor.push_back({a, x, f});
      }
  }
  for (auto& [ix, o] : oid) {
    auto [i, x] = ix;
    c.set_identity(o, mid[{J.identities[i], x, F.nodes[i]->identities[x]}]);
  }
  c.fill([&](int q, int p) {
    auto [a, x, f] = g.mor[p];
    auto [b, y, h] = g.mor[q];
    int k = J.dst(b);
    int hf = F.nodes[k]->compose(h, F.edges[b].mor[f]);
    return mid.at({J.compose(b, a), x, hf});
  });
  g.cat = share(std::move(c));
  return g;
}

// ---- nerves -----------------------------------------------------------------

struct Nerve {
  SSetPtr obj;
  std::vector<std::vector<int>> chain;  // per simplex: composable morphisms (empty for vertices)
  std::vector<int> vertex_object;       // per simplex: first object of the chain
  bool truncated = false;
};

inline std::string chain_name(const FinCategory& c, const std::vector<int>& ch) {
  std::string s = "<";
  for (size_t i = 0; i < ch.size(); ++i) s += (i ? "," : "") + c.morphisms[ch[i]].id;
  return s + ">";
}

/// Nondegenerate simplices are chains without identities, up to dim_bound.
inline Nerve nerve_chains(const FinCategory& c, int dim_bound, bool exact = false) {
  Nerve nv;
  FinSimplicialSet x;
  std::map<std::vector<int>, int> by_chain;
  std::map<int, int> by_object;
  std::vector<std::vector<int>> level;
  for (int o = 0; o < c.num_objects(); ++o) {
    by_object[o] = x.add(c.objects[o], 0);
    nv.chain.push_back({});
    nv.vertex_object.push_back(o);
  }
  std::vector<int> nonid;
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (!c.is_identity(m)) nonid.push_back(m);
  // A chain with identities is s_{p-1} of the chain without arrow p.
  auto formal = [&](const std::vector<int>& ch, int start_obj) -> FormalSimplex {
    std::vector<int> kept, col;
    for (size_t p = 0; p < ch.size(); ++p) {
      if (c.is_identity(ch[p])) col.push_back(static_cast<int>(p));
      else kept.push_back(ch[p]);
    }
    int base = kept.empty() ? by_object.at(start_obj) : by_chain.at(kept);
    return {base, std::vector<int>(col.rbegin(), col.rend())};
  };
  for (int m : nonid) level.push_back({m});
  for (int k = 1; !level.empty(); ++k) {
    if (k > dim_bound) {
      nv.truncated = true;
      if (exact)
        throw Error(ErrorCode::NerveUnbounded, "nondegenerate chains continue past dimension " + std::to_string(dim_bound));
      break;
    }
    std::vector<std::vector<int>> next;
    for (auto& ch : level) {
      std::vector<FormalSimplex> fs;
      for (int i = 0; i <= k; ++i) {
        if (k == 1) {
          fs.push_back({by_object.at(i == 0 ? c.dst(ch[0]) : c.src(ch[0])), {}});
          continue;
        }
        std::vector<int> sub;
        int start = c.src(ch[0]);
        if (i == 0) {
          sub.assign(ch.begin() + 1, ch.end());
          start = c.dst(ch[0]);
        } else if (i == k) {
          sub.assign(ch.begin(), ch.end() - 1);
        } else {
          sub.assign(ch.begin(), ch.begin() + i - 1);
          sub.push_back(c.compose(ch[i], ch[i - 1]));
          sub.insert(sub.end(), ch.begin() + i + 1, ch.end());
        }
        fs.push_back(formal(sub, start));
      }
      by_chain[ch] = x.add(chain_name(c, ch), k, std::move(fs));
      nv.chain.push_back(ch);
      nv.vertex_object.push_back(c.src(ch[0]));
      for (int m : nonid)
        if (c.src(m) == c.dst(ch.back())) {
          auto ext = ch;
          ext.push_back(m);
          next.push_back(std::move(ext));
        }
    }
    level = std::move(next);
  }
  nv.obj = share(std::move(x));
  return nv;
}

inline FinSimplicialSet nerve(const FinCategory& c, int dim_bound, bool exact = false) {
  return *nerve_chains(c, dim_bound, exact).obj;
}

// ---- Gro(J) of the nerve, nondegenerate part --------------------------------

struct GroIndex {
  CatPtr cat;
  Nerve nerve;
  std::vector<int> simplex;         // object -> nerve simplex
  std::vector<delta::Mono> theta;   // morphism sigma -> tau: tau = theta^* sigma
};

/// Objects are the nondegenerate chains, morphisms the face operators between
/// them. A face that composes to an identity is degenerate and is dropped, so
/// this is the full Gro(J) only when no identity factors nontrivially (posets).
inline GroIndex gro_of_index(const FinCategory& J, int dim_bound) {
  GroIndex g;
  g.nerve = nerve_chains(J, dim_bound, true);
  const auto& N = *g.nerve.obj;
  FinCategory c;
  std::vector<int> obj_of(N.size());
  for (size_t s = 0; s < N.size(); ++s) {
    obj_of[s] = c.add_object(N.names[s]);
    g.simplex.push_back(static_cast<int>(s));
  }
  std::map<std::pair<int, delta::Mono>, int> mid;
  for (size_t s = 0; s < N.size(); ++s) {
    int n = N.dims[s];
    for (int m = 0; m <= n; ++m)
      for (auto& th : delta::all_injective(m, n)) {
        auto tau = N.act({static_cast<int>(s), {}}, th);
        if (tau.degenerate()) continue;
        std::string name = N.names[s] + "/" + delta::vertex_string(th, n);
        mid[{static_cast<int>(s), th}] = c.add_morphism(name, obj_of[s], obj_of[tau.base]);
        g.theta.push_back(th);
      }
    c.set_identity(obj_of[s], mid.at({static_cast<int>(s), delta::identity(n)}));
  }
  c.fill([&](int q, int p) {
    int s = g.simplex[c.src(p)];
    return mid.at({s, delta::compose(g.theta[p], g.theta[q])});
  });
  g.cat = share(std::move(c));
  return g;
}

}  // namespace equipkit
