#pragma once

// Colimits of finite categories by coset enumeration over the free category
// on the constituent morphisms, and isomorphism search between categories.

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equipkit/fincat.hpp"
#include "equipkit/sset_limits.hpp"

namespace equipkit {

/// A diagram given by a graph of functors (no identity or composite edges needed).
struct CatGraphDiagram {
  struct Edge {
    int from, to;
    FinFunctor functor;
  };
  std::vector<CatPtr> nodes;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  int add_node(CatPtr c, std::string label) {
    nodes.push_back(std::move(c));
    labels.push_back(std::move(label));
    return static_cast<int>(nodes.size()) - 1;
  }
  void add_edge(int from, int to, FinFunctor f) { edges.push_back({from, to, std::move(f)}); }
};

inline CatGraphDiagram to_graph(const CatDiagram& d) {
  CatGraphDiagram g;
  for (int i = 0; i < d.index->num_objects(); ++i) g.add_node(d.nodes[i], d.index->objects[i] + ":");
  for (int a = 0; a < d.index->num_morphisms(); ++a)
    if (!d.index->is_identity(a)) g.add_edge(d.index->src(a), d.index->dst(a), d.edges[a]);
  return g;
}

struct CatColimit {
  CatPtr cat;
  std::vector<FinFunctor> cocone;
  long steps = 0;  // coset definitions used
};

namespace detail {

/// Right Cayley graph of the quotient of a free category, enumerated with
/// relations applied at every coset.
class CosetTable {
 public:
  CosetTable(int num_classes, std::vector<int> letter_src, std::vector<int> letter_dst, long budget)
      : lsrc_(std::move(letter_src)), ldst_(std::move(letter_dst)), budget_(budget) {
    from_.resize(num_classes);
    for (int l = 0; l < static_cast<int>(lsrc_.size()); ++l) from_[lsrc_[l]].push_back(l);
    for (int o = 0; o < num_classes; ++o) identity_.push_back(define(o, o, {}));
  }

  int define(int start, int tgt, std::vector<int> word) {
    if (static_cast<long>(parent_.size()) >= budget_)
      throw Error(ErrorCode::ClosureBudgetExceeded, "congruence closure exceeded " + std::to_string(budget_) + " cosets");
    int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    start_.push_back(start);
    tgt_.push_back(tgt);
    word_.push_back(std::move(word));
    next_.emplace_back(lsrc_.size(), -1);
    return id;
  }

  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }

  int step(int e, int l, bool create) {
    e = find(e);
    int t = next_[e][l];
    if (t >= 0) return find(t);
    if (!create) return -1;
    auto w = word_[e];
    w.push_back(l);
    int n = define(start_[e], ldst_[l], std::move(w));
    next_[find(e)][l] = n;
    return n;
  }

  int trace(int e, const std::vector<int>& word, bool create) {
    for (int l : word) {
      if (e < 0) return -1;
      e = step(e, l, create);
    }
    return e < 0 ? -1 : find(e);
  }

  bool coincide(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    std::deque<std::pair<int, int>> q{{a, b}};
    while (!q.empty()) {
      auto [x, y] = q.front();
      q.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (y < x) std::swap(x, y);
      parent_[y] = x;
      for (size_t l = 0; l < lsrc_.size(); ++l) {
        int ty = next_[y][l];
        if (ty < 0) continue;
        int tx = next_[x][l];
        if (tx < 0) next_[x][l] = ty;
        else q.push_back({tx, ty});
      }
    }
    return true;
  }

  size_t size() const { return parent_.size(); }
  bool alive(int e) { return find(e) == e; }
  int start(int e) const { return start_[e]; }
  int target(int e) const { return tgt_[e]; }
  const std::vector<int>& word(int e) const { return word_[e]; }
  const std::vector<int>& letters_from(int o) const { return from_[o]; }
  int identity(int o) { return find(identity_[o]); }

 private:
  std::vector<int> lsrc_, ldst_;
  long budget_;
  std::vector<std::vector<int>> from_;
  std::vector<int> identity_;
  std::vector<int> parent_, start_, tgt_;
  std::vector<std::vector<int>> word_;
  std::vector<std::vector<int>> next_;
};

}  // namespace detail

/// Strict colimit in the category of small categories.
inline CatColimit cat_colimit(const CatGraphDiagram& d, long budget = 10000) {
  // objects
  std::vector<int> obase;
  int total = 0;
  for (auto& c : d.nodes) {
    obase.push_back(total);
    total += c->num_objects();
  }
  detail::UnionFind ouf(total);
  for (auto& e : d.edges)
    for (int x = 0; x < d.nodes[e.from]->num_objects(); ++x) ouf.unite(obase[e.from] + x, obase[e.to] + e.functor.ob[x]);
  std::map<int, int> cls_of_root;
  std::vector<int> ocls(total);
  std::vector<std::pair<int, int>> orep;
  for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i)
    for (int x = 0; x < d.nodes[i]->num_objects(); ++x) {
      int r = ouf.find(obase[i] + x);
      if (!cls_of_root.count(r)) {
        cls_of_root[r] = static_cast<int>(orep.size());
        orep.push_back({i, x});
      }
      ocls[obase[i] + x] = cls_of_root[r];
    }
  int ncls = static_cast<int>(orep.size());
  // letters: non-identity constituent morphisms
  std::map<std::pair<int, int>, int> letter;
  std::vector<std::pair<int, int>> lrep;
  std::vector<int> lsrc, ldst;
  for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i)
    for (int m = 0; m < d.nodes[i]->num_morphisms(); ++m) {
      if (d.nodes[i]->is_identity(m)) continue;
      letter[{i, m}] = static_cast<int>(lrep.size());
      lrep.push_back({i, m});
      lsrc.push_back(ocls[obase[i] + d.nodes[i]->src(m)]);
      ldst.push_back(ocls[obase[i] + d.nodes[i]->dst(m)]);
    }
  auto word_of = [&](int i, int m) -> std::vector<int> {
    if (d.nodes[i]->is_identity(m)) return {};
    return {letter.at({i, m})};
  };
  struct Rel {
    int start;
    std::vector<int> lhs, rhs;
  };
  std::vector<std::vector<Rel>> rels(ncls);
  for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i) {
    const auto& C = *d.nodes[i];
    for (int f = 0; f < C.num_morphisms(); ++f)
      for (int g = 0; g < C.num_morphisms(); ++g)
        if (!C.is_identity(f) && !C.is_identity(g) && C.src(g) == C.dst(f)) {
          int s = ocls[obase[i] + C.src(f)];
          rels[s].push_back({s, {letter.at({i, f}), letter.at({i, g})}, word_of(i, C.compose(g, f))});
        }
  }
  for (auto& e : d.edges) {
    const auto& C = *d.nodes[e.from];
    for (int m = 0; m < C.num_morphisms(); ++m)
      if (!C.is_identity(m)) {
        int s = ocls[obase[e.from] + C.src(m)];
        rels[s].push_back({s, {letter.at({e.from, m})}, word_of(e.to, e.functor.mor[m])});
      }
  }
  detail::CosetTable t(ncls, lsrc, ldst, budget);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t e = 0; e < t.size(); ++e) {
      if (!t.alive(static_cast<int>(e))) continue;
      int tg = t.target(static_cast<int>(e));
      for (auto& r : rels[tg]) {
        int a = t.trace(static_cast<int>(e), r.lhs, true);
        int b = t.trace(static_cast<int>(e), r.rhs, true);
        if (t.coincide(a, b)) changed = true;
        if (!t.alive(static_cast<int>(e))) break;
      }
      if (!t.alive(static_cast<int>(e))) continue;
      for (int l : t.letters_from(tg))
        if (t.step(static_cast<int>(e), l, false) < 0) {
          t.step(static_cast<int>(e), l, true);
          changed = true;
        }
    }
  }
  // assemble
  FinCategory c;
  for (auto [i, x] : orep) c.add_object(d.labels[i] + d.nodes[i]->objects[x]);
  std::map<int, int> mor_of;
  std::vector<int> coset_of;
  auto letter_name = [&](int l) {
    auto [i, m] = lrep[l];
    return d.labels[i] + d.nodes[i]->morphisms[m].id;
  };
  // A class hit by a constituent morphism is named after the first one.
  std::map<int, int> named_by;
  for (int l = static_cast<int>(lrep.size()); l-- > 0;) named_by[t.trace(t.identity(lsrc[l]), {l}, false)] = l;
  for (size_t e = 0; e < t.size(); ++e) {
    if (!t.alive(static_cast<int>(e))) continue;
    const auto& w = t.word(static_cast<int>(e));
    std::string name;
    if (auto it = named_by.find(static_cast<int>(e)); it != named_by.end() && !w.empty()) {
      name = letter_name(it->second);
    } else if (w.empty()) {
      auto [i, x] = orep[t.start(static_cast<int>(e))];
      name = d.labels[i] + d.nodes[i]->morphisms[d.nodes[i]->identities[x]].id;
    } else {
      for (size_t k = w.size(); k-- > 0;) name += (name.empty() ? "" : ".") + letter_name(w[k]);
    }
    mor_of[static_cast<int>(e)] = c.add_morphism(name, t.start(static_cast<int>(e)), t.target(static_cast<int>(e)));
    coset_of.push_back(static_cast<int>(e));
  }
  for (int o = 0; o < ncls; ++o) c.set_identity(o, mor_of.at(t.identity(o)));
  c.fill([&](int g, int f) { return mor_of.at(t.trace(coset_of[f], t.word(coset_of[g]), false)); });
  CatColimit res;
  res.steps = static_cast<long>(t.size());
  res.cat = share(std::move(c));
  for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i) {
    FinFunctor f{d.nodes[i], res.cat, {}, {}};
    for (int x = 0; x < d.nodes[i]->num_objects(); ++x) f.ob.push_back(ocls[obase[i] + x]);
    for (int m = 0; m < d.nodes[i]->num_morphisms(); ++m) {
      int s = ocls[obase[i] + d.nodes[i]->src(m)];
      f.mor.push_back(mor_of.at(t.trace(t.identity(s), word_of(i, m), false)));
    }
    f.validate();
    res.cocone.push_back(std::move(f));
  }
  return res;
}

inline CatColimit cat_colimit(const CatDiagram& d, long budget = 10000) { return cat_colimit(to_graph(d), budget); }

/// The functor out of a colimit induced by compatible legs.
inline FinFunctor cat_colimit_induced(const CatColimit& c, const std::vector<FinFunctor>& legs, const CatPtr& target) {
  FinFunctor h{c.cat, target, std::vector<int>(c.cat->num_objects(), -1), std::vector<int>(c.cat->num_morphisms(), -1)};
  // Every morphism of the colimit is a composite of images of constituent morphisms.
  for (size_t i = 0; i < legs.size(); ++i) {
    for (size_t x = 0; x < legs[i].ob.size(); ++x) {
      int o = c.cocone[i].ob[x];
      if (h.ob[o] >= 0 && h.ob[o] != legs[i].ob[x])
        throw Error(ErrorCode::ValidationError, "induced functor: legs disagree on objects");
      h.ob[o] = legs[i].ob[x];
    }
    for (size_t m = 0; m < legs[i].mor.size(); ++m) {
      int k = c.cocone[i].mor[m];
      if (h.mor[k] >= 0 && h.mor[k] != legs[i].mor[m])
        throw Error(ErrorCode::ValidationError, "induced functor: legs disagree on morphisms");
      h.mor[k] = legs[i].mor[m];
    }
  }
  const auto& C = *c.cat;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int f = 0; f < C.num_morphisms(); ++f)
      for (int g = 0; g < C.num_morphisms(); ++g) {
        if (h.mor[f] < 0 || h.mor[g] < 0 || C.src(g) != C.dst(f)) continue;
        int gf = C.compose(g, f);
        int v = target->compose(h.mor[g], h.mor[f]);
        if (h.mor[gf] < 0) {
          h.mor[gf] = v;
          grew = true;
        } else if (h.mor[gf] != v) {
          throw Error(ErrorCode::ValidationError, "induced functor: legs do not form a cocone");
        }
      }
  }
  h.validate();
  return h;
}

// ---- isomorphism search ---------------------------------------------------

struct CatIso {
  FinFunctor fwd, bwd;
};

/// Backtracking over object bijections (pruned by hom-set sizes), then over
/// indecomposable morphisms with composites forced. With object labels only
/// label-preserving isomorphisms are sought.
inline std::optional<CatIso> cat_iso(const CatPtr& C, const CatPtr& D, long budget = 1000000,
                                     const std::vector<int>* label_c = nullptr,
                                     const std::vector<int>* label_d = nullptr) {
  int no = C->num_objects(), nm = C->num_morphisms();
  if (no != D->num_objects() || nm != D->num_morphisms()) return std::nullopt;
  auto osig = [](const FinCategory& X, int x) {
    std::vector<size_t> out, in;
    for (int y = 0; y < X.num_objects(); ++y) {
      out.push_back(X.hom(x, y).size());
      in.push_back(X.hom(y, x).size());
    }
    std::sort(out.begin(), out.end());
    std::sort(in.begin(), in.end());
    out.insert(out.end(), in.begin(), in.end());
    out.push_back(X.hom(x, x).size());
    return out;
  };
  std::vector<std::vector<size_t>> sc(no), sd(no);
  for (int x = 0; x < no; ++x) {
    sc[x] = osig(*C, x);
    sd[x] = osig(*D, x);
    if (label_c) sc[x].push_back(static_cast<size_t>((*label_c)[x]));
    if (label_d) sd[x].push_back(static_cast<size_t>((*label_d)[x]));
  }
  {
    auto a = sc, b = sd;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  auto indecomposable = [](const FinCategory& X) {
    std::vector<char> dec(X.num_morphisms(), 0);
    for (int f = 0; f < X.num_morphisms(); ++f)
      for (int g = 0; g < X.num_morphisms(); ++g)
        if (!X.is_identity(f) && !X.is_identity(g) && X.src(g) == X.dst(f)) dec[X.compose(g, f)] = 1;
    std::vector<char> ind(X.num_morphisms());
    for (int m = 0; m < X.num_morphisms(); ++m) ind[m] = !X.is_identity(m) && !dec[m];
    return ind;
  };
  auto indC = indecomposable(*C), indD = indecomposable(*D);
  std::vector<int> gens;
  for (int m = 0; m < nm; ++m)
    if (indC[m]) gens.push_back(m);
  std::vector<int> ob(no, -1), obinv(no, -1), mf(nm, -1), mb(nm, -1), trail;
  long steps = 0;
  auto tick = [&] {
    if (++steps > budget) throw Error(ErrorCode::SearchBudgetExceeded, "cat_iso search budget exhausted");
  };
  auto undo = [&](size_t mark) {
    while (trail.size() > mark) {
      int m = trail.back();
      trail.pop_back();
      mb[mf[m]] = -1;
      mf[m] = -1;
    }
  };
  // Assigns m -> n and closes under composition with already assigned morphisms.
  std::function<bool(int, int)> bind = [&](int m, int n) -> bool {
    std::vector<std::pair<int, int>> work{{m, n}};
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      if (mf[a] == b) continue;
      if (mf[a] != -1 || mb[b] != -1) return false;
      if (D->src(b) != ob[C->src(a)] || D->dst(b) != ob[C->dst(a)]) return false;
      mf[a] = b;
      mb[b] = a;
      trail.push_back(a);
      for (int f = 0; f < nm; ++f) {
        if (mf[f] < 0) continue;
        if (C->src(a) == C->dst(f)) work.push_back({C->compose(a, f), D->compose(b, mf[f])});
        if (C->src(f) == C->dst(a)) work.push_back({C->compose(f, a), D->compose(mf[f], b)});
      }
    }
    return true;
  };
  std::function<bool(size_t)> search_mor = [&](size_t k) -> bool {
    while (k < gens.size() && mf[gens[k]] != -1) ++k;
    int m = -1;
    bool free = false;
    if (k < gens.size()) {
      m = gens[k];
    } else {
      // idempotents and the like are decomposable without being reachable
      for (int a = 0; a < nm && m < 0; ++a)
        if (mf[a] < 0) m = a;
      if (m < 0) return true;
      free = true;
    }
    for (int n : D->hom(ob[C->src(m)], ob[C->dst(m)])) {
      if (mb[n] != -1 || (!free && !indD[n])) continue;
      tick();
      size_t mark = trail.size();
      if (bind(m, n) && search_mor(k + 1)) return true;
      undo(mark);
    }
    return false;
  };
  std::function<bool(int)> search_obj = [&](int x) -> bool {
    if (x == no) {
      size_t mark = trail.size();
      bool ok = true;
      for (int y = 0; y < no && ok; ++y) ok = bind(C->identities[y], D->identities[ob[y]]);
      if (ok && search_mor(0)) return true;
      undo(mark);
      return false;
    }
    for (int y = 0; y < no; ++y) {
      if (obinv[y] != -1 || sc[x] != sd[y]) continue;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z)
        ok = C->hom(x, z).size() == D->hom(y, ob[z]).size() && C->hom(z, x).size() == D->hom(ob[z], y).size();
      if (!ok) continue;
      tick();
      ob[x] = y;
      obinv[y] = x;
      if (search_obj(x + 1)) return true;
      ob[x] = -1;
      obinv[y] = -1;
    }
    return false;
  };
  if (!search_obj(0)) return std::nullopt;
  CatIso iso{{C, D, ob, mf}, {D, C, obinv, mb}};
  iso.fwd.validate();
  iso.bwd.validate();
  if (!is_identity_functor(compose(iso.bwd, iso.fwd)) || !is_identity_functor(compose(iso.fwd, iso.bwd)))
    throw Error(ErrorCode::VerificationFailed, "cat_iso certificate is not an isomorphism");
  return iso;
}

}  // namespace equipkit
