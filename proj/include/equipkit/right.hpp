#pragma once

// The right-handed structure of the simplicial-set site: universal lifts
// into boundaries, right companions, tabulators and double limits. Every
// object here has nondegenerate simplices in unboundedly many dimensions in
// general, so each construction is cut off at an explicit dimension bound.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equipkit/sharp.hpp"
#include "equipkit/sset_maps.hpp"
#include "equipkit/vertical.hpp"

namespace equipkit {

constexpr int kDefaultDimBound = 2;

inline int require_bound(std::optional<int> bound) {
  if (!bound) throw Error(ErrorCode::TruncationRequired, "a dimension bound is required");
  if (*bound < 0) throw Error(ErrorCode::ValidationError, "dimension bound must be nonnegative");
  return *bound;
}

namespace detail {

/// Assembles a simplicial set from simplices given as keys, level by level.
/// act(key, α) is precomposition with α : [m] -> [k]; fixed(key) returns the
/// formal simplex of keys that are already present (or nullopt).
template <class Key>
class LevelAssembler {
 public:
  FinSimplicialSet out;
  std::map<int, Key> generator_key;

  template <class Act, class Fixed>
  FormalSimplex lookup(const Key& k, int dim, Act&, Fixed& fixed) const {
    if (auto f = fixed(k)) return *f;
    return level_.at(dim).at(k);
  }

  template <class Act, class Fixed, class Name>
  void add_level(int k, const std::vector<Key>& keys, Act act, Fixed fixed, Name name) {
    if (static_cast<int>(level_.size()) <= k) level_.resize(k + 1);
    for (const auto& key : keys) {
      std::optional<FormalSimplex> f;
      for (int j = 0; j < k && !f; ++j) {
        auto lower = act(key, delta::coface(k, j));
        if (act(lower, delta::codegeneracy(k - 1, j)) == key) f = degenerate(lookup(lower, k - 1, act, fixed), j);
      }
      if (!f) {
        std::vector<FormalSimplex> fs;
        for (int i = 0; i <= k && k > 0; ++i) fs.push_back(lookup(act(key, delta::coface(k, i)), k - 1, act, fixed));
        f = FormalSimplex{out.add(name(key), k, std::move(fs)), {}};
        generator_key[f->base] = key;
      }
      level_[k][key] = *f;
    }
  }

  FormalSimplex at(int k, const Key& key) const { return level_.at(k).at(key); }

 private:
  std::vector<std::map<Key, FormalSimplex>> level_;
};

/// Δ(α) : Δ^m -> Δ^k for α : [m] -> [k].
inline SimplicialMap delta_map(const SSetPtr& dm, const SSetPtr& dk, const delta::Mono& alpha) {
  std::vector<int> label(dm->size(), -1);
  for (int v : dm->cells_of(0)) label[v] = alpha[std::stoi(dm->names[v])];
  return map_to_simplex(dm, dk, static_cast<int>(dk->cells_of(0).size()) - 1, label);
}

inline const SSetPtr& standard(int k) {
  static std::vector<SSetPtr> cache;
  while (static_cast<int>(cache.size()) <= k) cache.push_back(share(std_simplex(static_cast<int>(cache.size()))));
  return cache[k];
}

inline std::vector<int> parse_vertices(const FinSimplicialSet& sub, int s) {
  std::vector<int> vs;
  for (int v : sub.verts[s]) vs.push_back(std::stoi(sub.names[v]));
  return vs;
}

}  // namespace detail

// ---- tabulators -------------------------------------------------------------

/// Sections of a slice: k-simplices are maps Δ^k × Δⁿ -> carrier over Δⁿ.
class SectionComplex {
 public:
  using Key = std::vector<FormalSimplex>;

  SectionComplex(SSetSlice x, long budget) : x_(std::move(x)), budget_(budget) {}

  const SSetSlice& slice() const { return x_; }

  const SSetSite::Times& times(int k) {
    while (static_cast<int>(t_.size()) <= k) t_.push_back(SSetSite::times(detail::standard(static_cast<int>(t_.size())), x_.n));
    return t_[k];
  }

  const std::vector<Key>& sections(int k) {
    if (auto it = sec_.find(k); it != sec_.end()) return it->second;
    auto& out = sec_[k];
    const auto& t = times(k);
    MapConstraints c;
    c.label_src = &t.coord;
    c.label_dst = &x_.label;
    for_each_sset_map(t.obj(), x_.carrier, budget_, [&](const SimplicialMap& m) {
      out.push_back(m.assign);
      return true;
    }, c);
    return out;
  }

  Key act(const Key& s, const delta::Mono& alpha) {
    int m = static_cast<int>(alpha.size()) - 1;
    int k = dim_of(s);
    auto g = detail::delta_map(detail::standard(m), detail::standard(k), alpha);
    auto h = SSetSite::times_map(times(m), times(k), &g, delta::identity(x_.n));
    SimplicialMap sec{times(k).obj(), x_.carrier, s};
    return compose(sec, h).assign;
  }

  /// Restriction along 1 × θ into the face θ*x, matched by names into `target`.
  Key restrict(const Key& s, int k, const delta::Mono& theta, const SSetPtr& target) {
    int m = static_cast<int>(theta.size()) - 1;
    auto lower = SSetSite::times(detail::standard(k), m);
    SimplicialMap sec{times(k).obj(), x_.carrier, s};
    auto h = compose(sec, SSetSite::times_map(lower, times(k), nullptr, theta));
    auto c = SSetSite::corestrict(h, target);
    return c.assign;
  }

  std::string name(const Key& s) const {
    std::string out = "[";
    int k = dim_of(s);
    auto& top = t_.at(k);
    bool first = true;
    for (int g : top.obj()->cells_of(top.obj()->max_dim())) {
      out += (first ? "" : ";") + x_.carrier->name_of(s[g]);
      first = false;
    }
    return out + "]";
  }

  int dim_of(const Key& s) const {
    for (size_t k = 0; k < t_.size(); ++k)
      if (t_[k].obj()->size() == s.size()) return static_cast<int>(k);
    throw Error(ErrorCode::ValidationError, "section of unknown level");
  }

 private:
  SSetSlice x_;
  long budget_;
  std::vector<SSetSite::Times> t_;
  std::map<int, std::vector<Key>> sec_;
};

struct Truncated {
  SSetPtr obj;
  int bound = 0;
};

/// ⊤_x up to dimension `bound`.
inline Truncated tabulator(const SSetSlice& x, std::optional<int> bound, long budget = 1000000) {
  int b = require_bound(bound);
  validate(x);
  SectionComplex sc(x, budget);
  for (int k = 0; k <= b; ++k) sc.times(k);
  detail::LevelAssembler<SectionComplex::Key> as;
  auto act = [&](const SectionComplex::Key& s, const delta::Mono& a) { return sc.act(s, a); };
  auto none = [](const SectionComplex::Key&) { return std::optional<FormalSimplex>{}; };
  for (int k = 0; k <= b; ++k)
    as.add_level(k, sc.sections(k), act, none, [&](const SectionComplex::Key& s) { return sc.name(s); });
  return {share(std::move(as.out)), b};
}

// ---- universal lifts ------------------------------------------------------------

struct RightExtension {
  SSetSlice x;
  SimplicialMap f;  // x -> y
  int bound = 0;
};

namespace detail {

/// Union of subobjects that agree by names.
inline std::pair<SSetPtr, std::vector<SimplicialMap>> union_by_names(const std::vector<SSetPtr>& parts) {
  FinSimplicialSet u;
  for (auto& p : parts)
    for (int k = 0; k <= p->max_dim(); ++k)
      for (int s : p->cells_of(k)) {
        if (auto t = u.find(p->names[s])) {
          for (int i = 0; i <= k && k > 0; ++i)
            if (u.name_of(u.faces[*t][i]) != p->name_of(p->faces[s][i]))
              throw Error(ErrorCode::IncompatibleBoundary, "boundary pieces disagree at '" + p->names[s] + "'");
          continue;
        }
        std::vector<FormalSimplex> fs;
        for (auto f : p->faces[s]) {
          f.base = u.at(p->names[f.base]);
          fs.push_back(f);
        }
        u.add(p->names[s], k, std::move(fs));
      }
  auto U = share(std::move(u));
  std::vector<SimplicialMap> incl;
  for (auto& p : parts) incl.push_back(SSetSite::by_names(p, U));
  return {U, incl};
}

}  // namespace detail

/// The terminal x over Δⁿ with d_i x = xs[i] and a map x -> y restricting to
/// fs[i] : xs[i] -> d_i y. A simplex over a surjective λ : [k] -> [n] is a
/// simplex u of y over λ together with a lift of u on the part of Δ^k that
/// misses a vertex of Δⁿ; the other simplices are those of the boundary.
inline RightExtension right_fill(const SSetSlice& y, const std::vector<SSetSlice>& xs,
                                 const std::vector<SimplicialMap>& fs, const std::string& prefix,
                                 std::optional<int> bound, long budget = 1000000) {
  int b = require_bound(bound);
  validate(y);
  int n = y.n;
  if (n == 0) return {y, identity_map(y.carrier), b};
  if (static_cast<int>(xs.size()) != n + 1 || static_cast<int>(fs.size()) != n + 1)
    throw Error(ErrorCode::ValidationError, "boundary data needs one object and one map per face");
  std::vector<SSetPtr> parts;
  for (int i = 0; i <= n; ++i) {
    validate(xs[i]);
    if (xs[i].n != n - 1) throw Error(ErrorCode::IncompatibleBoundary, "boundary object has wrong level");
    auto dy = face_slice(y, i);
    if (fs[i].src != xs[i].carrier || !SSetSite::same_by_ids(fs[i].dst, dy.obj.label, dy.obj.carrier, dy.obj.label))
      throw Error(ErrorCode::IncompatibleBoundary, "boundary map " + std::to_string(i) + " has wrong ends");
    parts.push_back(xs[i].carrier);
  }
  for (int j = 0; j <= n && n >= 2; ++j)
    for (int i = 0; i < j; ++i)
      if (!same_by_ids(face_slice(xs[j], i).obj, face_slice(xs[i], j - 1).obj))
        throw Error(ErrorCode::IncompatibleBoundary, "boundary objects disagree on a shared face");
  auto [X, incl] = detail::union_by_names(parts);
  // f• : X• -> y, and the labels of X• over Δⁿ
  SimplicialMap fb{X, y.carrier, std::vector<FormalSimplex>(X->size())};
  std::vector<char> set(X->size(), 0);
  std::vector<int> xlabel(X->size(), -1);
  for (int i = 0; i <= n; ++i) {
    auto up = delta::coface(n, i);
    auto to_y = compose(SSetSite::by_names(fs[i].dst, y.carrier), fs[i]);
    if (!over_same_simplex<SSetSite>(to_y, xs[i], y, &up))
      throw Error(ErrorCode::IncompatibleBoundary, "boundary map " + std::to_string(i) + " is not over the simplex");
    for (size_t s = 0; s < xs[i].carrier->size(); ++s) {
      int t = incl[i].assign[s].base;
      if (set[t] && !(fb.assign[t] == to_y.assign[s]))
        throw Error(ErrorCode::IncompatibleBoundary, "boundary maps disagree on '" + X->names[t] + "'");
      fb.assign[t] = to_y.assign[s];
      set[t] = 1;
      if (X->dims[t] == 0) xlabel[t] = up[xs[i].label[s]];
    }
  }

  // interior keys: (u, φ) with φ : B_λ -> X• stored by assignment
  struct Key {
    int kind = 0;  // 0 boundary, 1 interior
    FormalSimplex u;
    std::vector<FormalSimplex> phi;
    bool operator==(const Key&) const = default;
    bool operator<(const Key& o) const { return std::tie(kind, u, phi) < std::tie(o.kind, o.u, o.phi); }
  };
  const auto& Y = *y.carrier;
  auto labels_of = [&](const FormalSimplex& u) {
    delta::Mono l;
    for (int v : Y.vertices(u)) l.push_back(y.label[v]);
    return l;
  };
  auto surjective = [n](const delta::Mono& l) {
    std::vector<char> hit(n + 1, 0);
    for (int v : l) hit[v] = 1;
    return std::find(hit.begin(), hit.end(), 0) == hit.end();
  };
  std::map<delta::Mono, std::pair<SSetPtr, std::vector<int>>> bcache;  // B_λ and its vertex labels
  auto boundary_part = [&](const delta::Mono& l) -> const std::pair<SSetPtr, std::vector<int>>& {
    auto it = bcache.find(l);
    if (it != bcache.end()) return it->second;
    int k = static_cast<int>(l.size()) - 1;
    auto B = share(delta_sub(k, [&](const std::vector<int>& s) {
      std::vector<char> hit(n + 1, 0);
      for (int v : s) hit[l[v]] = 1;
      return std::find(hit.begin(), hit.end(), 0) != hit.end();
    }));
    std::vector<int> bl(B->size(), -1);
    for (int v : B->cells_of(0)) bl[v] = l[std::stoi(B->names[v])];
    return bcache[l] = {B, bl};
  };
  auto act = [&](const Key& key, const delta::Mono& alpha) -> Key {
    if (key.kind == 0) return {0, X->act(key.u, alpha), {}};
    auto l = labels_of(key.u);
    int k = static_cast<int>(l.size()) - 1;
    const auto& Bk = *boundary_part(l).first;
    delta::Mono la = delta::compose(l, alpha);
    if (!surjective(la)) {
      auto f = delta_formal(Bk, k, alpha);
      return {0, degenerate_by(key.phi[f.base], f.degens), {}};
    }
    const auto& Bm = *boundary_part(la).first;
    Key out{1, Y.act(key.u, alpha), {}};
    for (size_t s = 0; s < Bm.size(); ++s) {
      delta::Mono seq;
      for (int v : detail::parse_vertices(Bm, static_cast<int>(s))) seq.push_back(alpha[v]);
      auto f = delta_formal(Bk, k, seq);
      out.phi.push_back(degenerate_by(key.phi[f.base], f.degens));
    }
    return out;
  };
  auto fixed = [&](const Key& key) -> std::optional<FormalSimplex> {
    if (key.kind == 0) return key.u;
    return std::nullopt;
  };
  auto name = [&](const Key& key) {
    std::string s = prefix + Y.name_of(key.u);
    if (!key.phi.empty()) {
      s += "{";
      // B_λ need not be pure: name φ on every maximal cell
      const auto& B = *boundary_part(labels_of(key.u)).first;
      std::vector<char> is_face(B.size(), 0);
      for (size_t t = 0; t < B.size(); ++t)
        for (const auto& f : B.faces[t]) is_face[f.base] = 1;
      bool first = true;
      for (size_t t = 0; t < B.size(); ++t) {
        if (is_face[t]) continue;
        s += (first ? "" : ",") + X->name_of(key.phi[t]);
        first = false;
      }
      s += "}";
    }
    return s;
  };

  detail::LevelAssembler<Key> as;
  for (size_t s = 0; s < X->size(); ++s) as.out.add(X->names[s], X->dims[s], X->faces[s]);
  long count = 0;
  for (int k = n; k <= b; ++k) {
    std::vector<Key> keys;
    for (const auto& u : Y.simplices(k)) {
      auto l = labels_of(u);
      if (!surjective(l)) continue;
      const auto& [B, bl] = boundary_part(l);
      MapConstraints c;
      c.label_src = &bl;
      c.label_dst = &xlabel;
      for_each_sset_map(B, X, budget, [&](const SimplicialMap& phi) {
        for (size_t t = 0; t < B->size(); ++t) {
          delta::Mono seq = detail::parse_vertices(*B, static_cast<int>(t));
          if (!(fb(phi.assign[t]) == Y.act(u, seq))) return true;
        }
        if (++count > budget) throw Error(ErrorCode::EnumerationBudgetExceeded, "right fill exceeded the budget");
        keys.push_back({1, u, phi.assign});
        return true;
      }, c);
    }
    as.add_level(k, keys, act, fixed, name);
  }
  RightExtension r;
  r.bound = b;
  auto obj = share(std::move(as.out));
  r.x = from_labels<SSetSite>(obj, n, [&] {
    std::vector<int> l(obj->size(), -1);
    for (int v : obj->cells_of(0)) l[v] = xlabel[X->at(obj->names[v])];
    return l;
  }());
  r.f = SimplicialMap{obj, y.carrier, {}};
  for (size_t s = 0; s < obj->size(); ++s)
    r.f.assign.push_back(s < X->size() ? fb.assign[s] : as.generator_key.at(static_cast<int>(s)).u);
  r.f.validate();
  return r;
}

// ---- right companions ---------------------------------------------------------

/// σ_* for a chain x_0 -> ... -> x_n: σ_* = σ for n = 0, otherwise the lift
/// into s^{(n)} x_n = x_n × Δⁿ of the boundary (ζ_{d_nσ} followed by f_n × 1,
/// ζ_{d_{n-1}σ}, …, ζ_{d_0σ}). Memoized by chain label.
class RightCompanionBuilder {
 public:
  struct Entry {
    SSetSlice obj;
    SimplicialMap zeta;  // obj.carrier -> base.obj()
    SSetSite::Times base;
    std::string label;
  };

  RightCompanionBuilder(CompanionBuilder<SSetSite>::Composer c, int bound, long budget = 1000000)
      : faces_(std::move(c)), bound_(bound), budget_(budget) {}
  explicit RightCompanionBuilder(int bound, long budget = 1000000)
      : RightCompanionBuilder(compose_arrows<SSetSite>, bound, budget) {}

  const Entry& build(const Chain<SSetSite>& c) {
    auto key = c.label();
    if (auto it = memo_.find(key); it != memo_.end()) return *it->second;
    int n = c.dim();
    auto e = std::make_shared<Entry>();
    e->label = key;
    e->base = SSetSite::times(c.objects[n], n);
    if (n == 0) {
      e->obj = level_zero<SSetSite>(c.objects[0]);
      e->zeta = SSetSite::times_pair(e->base, identity_map(c.objects[0]), e->obj.label);
    } else {
      SSetSlice y{e->base.obj(), n, e->base.coord};
      std::vector<SSetSlice> xs;
      std::vector<SimplicialMap> fs;
      for (int i = 0; i <= n; ++i) {
        const Entry& sub = build(faces_.face(c, i));
        auto r = face_slice(y, i);
        const SimplicialMap* g = i == n ? &c.arrows[n - 1].map : nullptr;
        auto m = compose(SSetSite::times_map(sub.base, e->base, g, delta::coface(n, i)), sub.zeta);
        fs.push_back(SSetSite::corestrict(m, r.obj.carrier));
        xs.push_back(sub.obj);
      }
      auto ext = right_fill(y, xs, fs, key + ":", bound_, budget_);
      e->obj = std::move(ext.x);
      e->zeta = std::move(ext.f);
    }
    memo_[key] = e;
    return *e;
  }

  int bound() const { return bound_; }

 private:
  CompanionBuilder<SSetSite> faces_;
  int bound_;
  long budget_;
  std::map<std::string, std::shared_ptr<Entry>> memo_;
};

inline RightExtension right_companion(const Chain<SSetSite>& c, std::optional<int> bound, long budget = 1000000) {
  RightCompanionBuilder b(require_bound(bound), budget);
  const auto& e = b.build(c);
  return {e.obj, e.zeta, b.bound()};
}

// ---- double limits ---------------------------------------------------------------

/// A right horizontal diagram: a slice per nondegenerate simplex of the index
/// whose faces are, by names, the values at the faces.
struct RightHorizontalDiagram {
  CatPtr index;
  GroIndex gro;
  std::vector<SSetSlice> value;
  int bound = 0;  // dimension up to which the values are exact
};

inline RightHorizontalDiagram right_companion_horizontal(const VerticalDiagram<SSetSite>& F, int dim_bound,
                                                         int bound, long budget = 1000000) {
  F.validate();
  auto R = F.renamed();
  RightHorizontalDiagram H;
  H.index = F.index;
  H.gro = gro_of_index(*F.index, dim_bound);
  H.bound = bound;
  RightCompanionBuilder b(R.composer(), bound, budget);
  const auto& G = *H.gro.cat;
  for (int o = 0; o < G.num_objects(); ++o) H.value.push_back(b.build(R.chain(H.gro.nerve, H.gro.simplex[o])).obj);
  return H;
}

/// Levelwise limit over Gro(J) of the tabulators, up to dimension `bound`.
inline Truncated dlim(const RightHorizontalDiagram& D, std::optional<int> bound, long budget = 1000000) {
  int b = require_bound(bound);
  const auto& G = *D.gro.cat;
  int N = G.num_objects();
  std::vector<std::unique_ptr<SectionComplex>> sc;
  for (int o = 0; o < N; ++o) {
    sc.push_back(std::make_unique<SectionComplex>(D.value[o], budget));
    for (int k = 0; k <= b; ++k) sc.back()->times(k);
  }
  std::vector<int> maximal;
  for (int o = 0; o < N; ++o) {
    bool top = true;
    for (int p = 0; p < G.num_morphisms(); ++p)
      if (!G.is_identity(p) && G.dst(p) == o) top = false;
    if (top) maximal.push_back(o);
  }
  using Key = std::vector<SectionComplex::Key>;
  detail::LevelAssembler<Key> as;
  auto act = [&](const Key& f, const delta::Mono& a) {
    Key out;
    for (int o = 0; o < N; ++o) out.push_back(sc[o]->act(f[o], a));
    return out;
  };
  auto none = [](const Key&) { return std::optional<FormalSimplex>{}; };
  auto name = [&](const Key& f) {
    std::string s = "(";
    for (size_t a = 0; a < maximal.size(); ++a) s += (a ? "," : "") + sc[maximal[a]]->name(f[maximal[a]]);
    return s + ")";
  };
  long count = 0;
  for (int k = 0; k <= b; ++k) {
    std::vector<Key> keys;
    Key cur(N);
    std::function<void(size_t)> go = [&](size_t a) {
      if (a == maximal.size()) {
        if (++count > budget) throw Error(ErrorCode::EnumerationBudgetExceeded, "double limit exceeded the budget");
        keys.push_back(cur);
        return;
      }
      int o = maximal[a];
      for (const auto& s : sc[o]->sections(k)) {
        auto saved = cur;
        bool ok = true;
        for (int p = 0; p < G.num_morphisms() && ok; ++p) {
          if (G.src(p) != o) continue;
          int t = G.dst(p);
          auto r = G.is_identity(p) ? s : sc[o]->restrict(s, k, D.gro.theta[p], D.value[t].carrier);
          if (!cur[t].empty() && cur[t] != r) ok = false;
          else cur[t] = std::move(r);
        }
        if (ok) go(a + 1);
        cur = std::move(saved);
      }
    };
    go(0);
    as.add_level(k, keys, act, none, name);
  }
  return {share(std::move(as.out)), b};
}

/// dlim of the right companions. The companions are computed exactly up to
/// bound + (top index dimension) so that the result is exact up to `bound`.
inline Truncated holim(const VerticalDiagram<SSetSite>& F, int dim_bound, std::optional<int> bound,
                       long budget = 1000000) {
  int b = require_bound(bound);
  auto gro = gro_of_index(*F.index, dim_bound);
  int top = gro.nerve.obj->max_dim();
  return dlim(right_companion_horizontal(F, dim_bound, b + top, budget), b, budget);
}

struct LeftRightReport {
  std::string left, right;
  bool isomorphic = false;
  int bound = 0;
};

/// Left against right companion of a chain, both cut at `bound`.
inline LeftRightReport lr_companions(const Chain<SSetSite>& c, std::optional<int> bound, long budget = 1000000,
                                     long iso_budget = 1000000) {
  int b = require_bound(bound);
  auto cut = [b](const SSetSlice& x) {
    auto [y, to_old] = sub_sset(*x.carrier, [&](int s) { return x.carrier->dims[s] <= b; });
    std::vector<int> l;
    for (int s : to_old) l.push_back(x.label[s]);
    return SSetSlice{share(std::move(y)), x.n, l};
  };
  auto left = cut(companion_simplex(c, budget).y);
  auto right = cut(right_companion(c, b, budget).x);
  LeftRightReport r;
  r.bound = b;
  r.left = SSetSite::describe(left.carrier);
  r.right = SSetSite::describe(right.carrier);
  r.isomorphic = slice_iso(left, right, iso_budget).has_value();
  return r;
}

}  // namespace equipkit
