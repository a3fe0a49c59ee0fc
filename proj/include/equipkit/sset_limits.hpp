#pragma once

// Fiber products, products with standard simplices, finite colimits and
// mapping cylinders of finite simplicial sets.

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "equipkit/simpset.hpp"

namespace equipkit {

// ---- pullbacks ----------------------------------------------------------

struct Pullback {
  SSetPtr obj;
  SimplicialMap p1, p2;
  std::map<std::pair<FormalSimplex, FormalSimplex>, int> index;

  /// The simplex (x, a) of the fiber product, in normal form.
  FormalSimplex pair(const FormalSimplex& x, const FormalSimplex& a) const {
    std::vector<int> common;
    for (int j : x.degens)
      if (std::find(a.degens.begin(), a.degens.end(), j) != a.degens.end()) common.push_back(j);
    FormalSimplex x2 = x, a2 = a;
    // Strip the shared degeneracies: remove s_t for t in common (descending).
    auto strip = [&](FormalSimplex& y) {
      std::vector<int> rest;
      for (int j : y.degens) {
        if (std::find(common.begin(), common.end(), j) != common.end()) continue;
        int shift = 0;
        for (int t : common)
          if (t < j) ++shift;
        rest.push_back(j - shift);
      }
      y.degens = rest;
    };
    strip(x2);
    strip(a2);
    auto it = index.find({x2, a2});
    if (it == index.end()) throw Error(ErrorCode::ValidationError, "pair not in fiber product");
    return {it->second, common};
  }
};

using PairNamer = std::function<std::string(const FormalSimplex&, const FormalSimplex&)>;

/// Levelwise fiber product of f: X -> B and g: A -> B.
inline Pullback pullback(const SimplicialMap& f, const SimplicialMap& g, PairNamer namer = nullptr) {
  const auto& X = *f.src;
  const auto& A = *g.src;
  if (!namer)
    namer = [&](const FormalSimplex& x, const FormalSimplex& a) {
      return "(" + X.name_of(x) + "," + A.name_of(a) + ")";
    };
  FinSimplicialSet P;
  Pullback out;
  int top = X.max_dim() + A.max_dim();
  std::vector<std::pair<FormalSimplex, FormalSimplex>> members;
  for (int k = 0; k <= top && X.max_dim() >= 0 && A.max_dim() >= 0; ++k) {
    std::map<FormalSimplex, std::vector<FormalSimplex>> by_image;
    for (auto& a : A.simplices(k)) by_image[g(a)].push_back(a);
    for (auto& x : X.simplices(k)) {
      auto it = by_image.find(f(x));
      if (it == by_image.end()) continue;
      for (auto& a : it->second) {
        bool disjoint = true;
        for (int j : x.degens)
          if (std::find(a.degens.begin(), a.degens.end(), j) != a.degens.end()) disjoint = false;
        if (!disjoint) continue;
        std::vector<FormalSimplex> fs;
        for (int i = 0; i <= k && k > 0; ++i) fs.push_back(out.pair(X.face(x, i), A.face(a, i)));
        int id = P.add(namer(x, a), k, std::move(fs));
        out.index[{x, a}] = id;
        members.push_back({x, a});
      }
    }
  }
  out.obj = share(std::move(P));
  out.p1 = {out.obj, f.src, {}};
  out.p2 = {out.obj, g.src, {}};
  for (auto& [x, a] : members) {
    out.p1.assign.push_back(x);
    out.p2.assign.push_back(a);
  }
  return out;
}

inline SSetPtr point() {
  static const SSetPtr p = share(std_simplex(0));
  return p;
}

inline SimplicialMap to_point(const SSetPtr& x) {
  SimplicialMap m{x, point(), {}};
  for (size_t s = 0; s < x->size(); ++s) m.assign.push_back({0, std::vector<int>{}});
  for (size_t s = 0; s < x->size(); ++s) {
    std::vector<int> w;
    for (int j = x->dims[s] - 1; j >= 0; --j) w.push_back(j);
    m.assign[s].degens = w;
  }
  return m;
}

/// X x Delta^n via shuffles; p1 projects to X and p2 to Delta^n.
struct Product {
  Pullback pb;
  SSetPtr dn;
  int n = 0;
  const SSetPtr& obj() const { return pb.obj; }
  FormalSimplex pair(const FormalSimplex& x, const delta::Mono& seq) const {
    return pb.pair(x, delta_formal(*dn, n, seq));
  }
};

inline Product product_with_simplex(const SSetPtr& x, int n) {
  Product pr;
  pr.n = n;
  pr.dn = share(std_simplex(n));
  auto dn = pr.dn;
  PairNamer namer = [x, dn, n](const FormalSimplex& a, const FormalSimplex& b) {
    std::string v;
    for (int u : dn->vertices(b)) v += (v.empty() || n < 10 ? "" : ".") + dn->names[u];
    return "(" + x->name_of(a) + "|" + v + ")";
  };
  pr.pb = pullback(to_point(x), to_point(dn), namer);
  return pr;
}

// ---- colimits -----------------------------------------------------------

struct SSetDiagram {
  struct Edge {
    int from, to;
    SimplicialMap map;
  };
  std::vector<SSetPtr> nodes;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  int add_node(SSetPtr x, std::string label) {
    nodes.push_back(std::move(x));
    labels.push_back(std::move(label));
    return static_cast<int>(nodes.size()) - 1;
  }
  void add_edge(int from, int to, SimplicialMap m) { edges.push_back({from, to, std::move(m)}); }
};

struct SSetColimit {
  SSetPtr obj;
  std::vector<SimplicialMap> cocone;
  std::vector<std::pair<int, int>> rep;  // generator -> (node, nondegenerate simplex)
};

namespace detail {
struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(size_t n = 0) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int add() {
    p.push_back(static_cast<int>(p.size()));
    return p.back();
  }
  int find(int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    p[b] = a;
    return true;
  }
};
}  // namespace detail

/// Levelwise colimit by union-find. Generator names take the first
/// nondegenerate representative in node order, prefixed by the node label.
inline SSetColimit colimit(const SSetDiagram& d) {
  int top = -1;
  for (auto& x : d.nodes) top = std::max(top, x->max_dim());
  struct Key {
    int node;
    FormalSimplex s;
    bool operator<(const Key& o) const { return std::tie(node, s) < std::tie(o.node, o.s); }
  };
  std::vector<Key> keys;
  std::map<Key, int> id;
  for (size_t v = 0; v < d.nodes.size(); ++v)
    for (int k = 0; k <= top; ++k)
      for (auto& s : d.nodes[v]->simplices(k)) {
        Key key{static_cast<int>(v), s};
        id[key] = static_cast<int>(keys.size());
        keys.push_back(key);
      }
  detail::UnionFind uf(keys.size());
  for (auto& e : d.edges) {
    const auto& src = *d.nodes[e.from];
    for (int k = 0; k <= src.max_dim(); ++k)
      for (auto& s : src.simplices(k)) uf.unite(id.at({e.from, s}), id.at({e.to, e.map(s)}));
  }
  // A class is degenerate iff some member is.
  std::map<int, std::vector<int>> members;
  for (size_t i = 0; i < keys.size(); ++i) members[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::map<int, int> gen_of_class;
  FinSimplicialSet out;
  SSetColimit res;
  std::map<int, FormalSimplex> nf_memo;
  std::function<FormalSimplex(int)> normal_form = [&](int cls) -> FormalSimplex {
    auto it = nf_memo.find(cls);
    if (it != nf_memo.end()) return it->second;
    auto g = gen_of_class.find(cls);
    FormalSimplex r;
    if (g != gen_of_class.end()) {
      r = {g->second, {}};
    } else {
      const Key* deg = nullptr;
      for (int m : members.at(cls))
        if (keys[m].s.degenerate()) {
          deg = &keys[m];
          break;
        }
      if (!deg) throw Error(ErrorCode::ValidationError, "colimit: class without generator");
      int base_cls = uf.find(id.at({deg->node, FormalSimplex{deg->s.base, {}}}));
      r = degenerate_by(normal_form(base_cls), deg->s.degens);
    }
    nf_memo[cls] = r;
    return r;
  };
  for (int k = 0; k <= top; ++k) {
    for (size_t i = 0; i < keys.size(); ++i) {
      const auto& key = keys[i];
      if (key.s.degenerate() || d.nodes[key.node]->dims[key.s.base] != k) continue;
      int cls = uf.find(static_cast<int>(i));
      if (gen_of_class.count(cls)) continue;
      bool deg = false;
      for (int m : members.at(cls)) deg = deg || keys[m].s.degenerate();
      if (deg) continue;
      const auto& node = *d.nodes[key.node];
      std::vector<FormalSimplex> fs;
      for (int j = 0; j <= k && k > 0; ++j) {
        auto f = node.face(key.s.base, j);
        int fcls = uf.find(id.at({key.node, FormalSimplex{f.base, {}}}));
        fs.push_back(degenerate_by(normal_form(fcls), f.degens));
      }
      int gid = out.add(d.labels[key.node] + node.names[key.s.base], k, std::move(fs));
      gen_of_class[cls] = gid;
      res.rep.push_back({key.node, key.s.base});
    }
  }
  res.obj = share(std::move(out));
  for (size_t v = 0; v < d.nodes.size(); ++v) {
    SimplicialMap m{d.nodes[v], res.obj, {}};
    for (size_t s = 0; s < d.nodes[v]->size(); ++s)
      m.assign.push_back(normal_form(uf.find(id.at({static_cast<int>(v), FormalSimplex{static_cast<int>(s), {}}}))));
    res.cocone.push_back(std::move(m));
  }
  return res;
}

/// The map out of a colimit induced by a cocone `legs` (one per node).
inline SimplicialMap colimit_induced(const SSetColimit& c, const std::vector<SimplicialMap>& legs, const SSetPtr& target) {
  SimplicialMap m{c.obj, target, {}};
  for (auto [node, s] : c.rep) m.assign.push_back(legs[node](s));
  for (size_t v = 0; v < legs.size(); ++v)
    if (compose(m, c.cocone[v]).assign != legs[v].assign)
      throw Error(ErrorCode::ValidationError, "induced map: legs do not form a cocone");
  return m;
}

inline SSetColimit pushout(const SimplicialMap& f, const SimplicialMap& g, const std::string& la = "",
                           const std::string& lb = "", const std::string& lc = "") {
  SSetDiagram d;
  int b = d.add_node(f.dst, lb);
  int c = d.add_node(g.dst, lc);
  int a = d.add_node(f.src, la);
  d.add_edge(a, b, f);
  d.add_edge(a, c, g);
  return colimit(d);
}

// ---- mapping cylinders --------------------------------------------------

struct MappingCylinder {
  SSetPtr obj;
  SimplicialMap incl_x;   // X at vertex 0
  SimplicialMap incl_y;   // Y at vertex 1
  SimplicialMap to_interval;
};

/// Vertex sequence of the Delta^n component of a product simplex.
inline delta::Mono simplex_sequence(const Product& pr, const FormalSimplex& b) {
  delta::Mono seq;
  for (int u : pr.dn->vertices(b)) seq.push_back(std::stoi(pr.dn->names[u]));
  return seq;
}

/// g x theta : X x Delta^m -> X' x Delta^n, theta given by its vertex sequence.
inline SimplicialMap product_map(const Product& from, const Product& to, const SimplicialMap* g,
                                 const delta::Mono& theta) {
  SimplicialMap m{from.obj(), to.obj(), {}};
  for (size_t s = 0; s < from.obj()->size(); ++s) {
    FormalSimplex a = from.pb.p1.assign[s];
    if (g) a = (*g)(a);
    m.assign.push_back(to.pair(a, delta::compose(theta, simplex_sequence(from, from.pb.p2.assign[s]))));
  }
  return m;
}

/// X -> X x Delta^n at vertex v.
inline SimplicialMap vertex_inclusion(const Product& pr, const SSetPtr& x, int v) {
  SimplicialMap m{x, pr.obj(), {}};
  for (size_t s = 0; s < x->size(); ++s)
    m.assign.push_back(pr.pair({static_cast<int>(s), {}}, delta::Mono(x->dims[s] + 1, v)));
  return m;
}

/// Pushout of X x Delta^1 <- X -> Y, X glued at vertex 1 of the interval.
inline MappingCylinder mapping_cylinder(const SimplicialMap& f) {
  auto pr = product_with_simplex(f.src, 1);
  auto end1 = vertex_inclusion(pr, f.src, 1);
  SSetDiagram d;
  int y = d.add_node(f.dst, "");
  int c = d.add_node(pr.obj(), "cyl");
  int x = d.add_node(f.src, "x");
  d.add_edge(x, c, end1);
  d.add_edge(x, y, f);
  auto col = colimit(d);
  MappingCylinder mc;
  mc.obj = col.obj;
  mc.incl_y = col.cocone[y];
  mc.incl_x = compose(col.cocone[c], vertex_inclusion(pr, f.src, 0));
  auto d1 = share(std_simplex(1));
  std::vector<int> lab(mc.obj->size(), 1);
  for (auto& t : mc.incl_x.assign)
    if (mc.obj->dims[t.base] == 0 && t.degens.empty()) lab[t.base] = 0;
  mc.to_interval = map_to_simplex(mc.obj, d1, 1, lab);
  return mc;
}

}  // namespace equipkit
