#pragma once

// Vertical constructions: homotopy colimits through staircase cylinders,
// the comparison with double colimits of companions, tensors and the
// evaluation mapping spaces.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "equipkit/sharp.hpp"
#include "equipkit/sset_maps.hpp"

namespace equipkit {

// ---- staircases ---------------------------------------------------------------

/// M_σ for a chain x_0 -> ... -> x_n: the pieces A_i = x_i × Δ^{n-i} glued
/// along B_i = x_i × Δ^{n-i-1}, once by 1 × d^0 into A_i and once by
/// f_{i+1} × 1 into A_{i+1}. Over Δⁿ with A_i shifted by i.
template <class S>
struct Staircase {
  Slice<S> obj;
  typename S::Colimit col;
  std::vector<typename S::Times> A, B;
  std::vector<int> a_node;  // diagram node of A_i
};

template <class S>
Staircase<S> staircase(const Chain<S>& c, const std::string& prefix, long budget = 10000) {
  int n = c.dim();
  Staircase<S> st;
  typename S::Diagram d;
  std::vector<int> b_node;
  for (int i = 0; i <= n; ++i) {
    st.A.push_back(S::times(c.objects[i], n - i));
    st.a_node.push_back(d.add_node(st.A.back().obj(), prefix + std::to_string(i) + ":"));
    if (i < n) {
      st.B.push_back(S::times(c.objects[i], n - i - 1));
      b_node.push_back(d.add_node(st.B.back().obj(), prefix + "b" + std::to_string(i) + ":"));
    }
  }
  for (int i = 0; i < n; ++i) {
    delta::Mono up;
    for (int v = 0; v < n - i; ++v) up.push_back(v + 1);
    d.add_edge(b_node[i], st.a_node[i], S::times_map(st.B[i], st.A[i], nullptr, up));
    d.add_edge(b_node[i], st.a_node[i + 1], S::times_map(st.B[i], st.A[i + 1], &c.arrows[i].map, delta::identity(n - i - 1)));
  }
  st.col = S::colimit(d, budget);
  std::vector<typename S::Map> legs;
  std::vector<std::vector<int>> labs;
  for (int i = 0; i <= n; ++i) {
    legs.push_back(st.col.cocone[st.a_node[i]]);
    auto l = st.A[i].coord;
    for (auto& v : l) v += i;
    labs.push_back(std::move(l));
  }
  st.obj = from_labels<S>(S::colimit_obj(st.col), n, detail::push_labels<S>(S::colimit_obj(st.col), legs, labs));
  validate(st.obj);
  return st;
}

/// M_{θ*σ} -> M_σ, piece A'_k sent to A_{θ(k)} by 1 × (v ↦ θ(k+v) − θ(k)).
template <class S>
typename S::Map staircase_map(const Staircase<S>& from, const Staircase<S>& to, const delta::Mono& theta) {
  int m = static_cast<int>(theta.size()) - 1;
  std::vector<typename S::Map> legs(from.col.cocone.size());
  for (int k = 0; k <= m; ++k) {
    delta::Mono seq;
    for (int v = 0; v <= m - k; ++v) seq.push_back(theta[k + v] - theta[k]);
    legs[from.a_node[k]] = S::compose(to.col.cocone[to.a_node[theta[k]]], S::times_map(from.A[k], to.A[theta[k]], nullptr, seq));
    if (k < m) {
      delta::Mono up;
      for (int v = 0; v < m - k; ++v) up.push_back(v + 1);
      legs[from.a_node[k] + 1] = S::compose(legs[from.a_node[k]], S::times_map(from.B[k], from.A[k], nullptr, up));
    }
  }
  return S::induced(from.col, legs, S::colimit_obj(to.col));
}

// ---- homotopy colimits ----------------------------------------------------------

template <class S>
struct HomotopyColimit {
  typename S::Obj obj;
  GroIndex gro;
  std::vector<Staircase<S>> stairs;  // per Gro object
};

/// Colimit over Gro(J)^op of the staircases of the nondegenerate chains.
template <class S>
HomotopyColimit<S> hocolim(const VerticalDiagram<S>& F, int dim_bound, long budget = 10000) {
  F.validate();
  auto R = F.renamed();
  HomotopyColimit<S> h;
  h.gro = gro_of_index(*F.index, dim_bound);
  const auto& G = *h.gro.cat;
  typename S::Diagram d;
  for (int o = 0; o < G.num_objects(); ++o) {
    auto c = R.chain(h.gro.nerve, h.gro.simplex[o]);
    h.stairs.push_back(staircase(c, c.label() + "@", budget));
    d.add_node(h.stairs.back().obj.carrier, "");
  }
  for (int p = 0; p < G.num_morphisms(); ++p)
    if (!G.is_identity(p)) d.add_edge(G.dst(p), G.src(p), staircase_map(h.stairs[G.dst(p)], h.stairs[G.src(p)], h.gro.theta[p]));
  h.obj = S::colimit_obj(S::colimit(d, budget));
  return h;
}

/// The ordinary colimit of the diagram.
template <class S>
typename S::Obj strict_colimit(const VerticalDiagram<S>& F, long budget = 10000) {
  F.validate();
  auto R = F.renamed();
  typename S::Diagram d;
  for (auto& x : R.nodes) d.add_node(x, "");
  for (int a = 0; a < F.index->num_morphisms(); ++a)
    if (!F.index->is_identity(a)) d.add_edge(F.index->src(a), F.index->dst(a), R.edges[a]);
  return S::colimit_obj(S::colimit(d, budget));
}

template <class S>
struct ComparisonReport {
  typename S::Obj dcolim, hocolim;
  std::optional<std::pair<typename S::Map, typename S::Map>> iso;  // dcolim -> hocolim and back
  bool isomorphic = false;
};

/// dcolim of the companions against the staircase homotopy colimit.
template <class S>
ComparisonReport<S> theorem2_check(const VerticalDiagram<S>& F, int dim_bound, long budget = 10000,
                                   long iso_budget = 1000000) {
  ComparisonReport<S> r;
  r.dcolim = dcolim(companion_horizontal(F, dim_bound, budget), budget).obj;
  r.hocolim = hocolim(F, dim_bound, budget).obj;
  r.iso = S::iso(r.dcolim, nullptr, r.hocolim, nullptr, iso_budget);
  r.isomorphic = r.iso.has_value();
  return r;
}

// ---- tensors ------------------------------------------------------------------

/// K ⊙ x: one copy of x × Δ^{dim σ} per nondegenerate σ of K, glued along
/// faces (through the degeneracy of a degenerate face).
template <class S>
typename S::Obj tensor_vertical(const SSetPtr& K, const typename S::Obj& x, long budget = 10000) {
  typename S::Diagram d;
  std::vector<typename S::Times> piece;
  std::vector<int> node(K->size());
  for (size_t s = 0; s < K->size(); ++s) {
    piece.push_back(S::times(x, K->dims[s]));
    node[s] = d.add_node(piece.back().obj(), K->names[s] + ":");
  }
  for (size_t s = 0; s < K->size(); ++s) {
    int k = K->dims[s];
    for (int i = 0; i <= k && k > 0; ++i) {
      auto f = K->face(static_cast<int>(s), i);
      auto glue = S::times(x, k - 1);
      int g = d.add_node(glue.obj(), "~" + K->names[s] + "/" + std::to_string(i) + ":");
      d.add_edge(g, node[s], S::times_map(glue, piece[s], nullptr, delta::coface(k, i)));
      std::vector<int> col(f.degens.rbegin(), f.degens.rend());
      d.add_edge(g, node[f.base], S::times_map(glue, piece[f.base], nullptr, delta::surjection(k - 1, col)));
      piece.push_back(std::move(glue));
    }
  }
  return S::colimit_obj(S::colimit(d, budget));
}

// ---- slice maps -----------------------------------------------------------------

/// Maps a -> b over the same simplex.
template <class Visit>
long for_each_slice_map(const SSetSlice& a, const SSetSlice& b, long budget, Visit&& visit) {
  if (a.n != b.n) return 0;
  MapConstraints c;
  c.label_src = &a.label;
  c.label_dst = &b.label;
  return for_each_sset_map(a.carrier, b.carrier, budget, visit, c);
}

template <class Visit>
long for_each_slice_map(const CatSlice& a, const CatSlice& b, long budget, Visit&& visit) {
  if (a.n != b.n) return 0;
  return for_each_functor_if(
      a.carrier, b.carrier, budget, [&](int x, int y) { return a.label[x] == b.label[y]; },
      [&](const FinFunctor& f) { return static_cast<bool>(visit(f)); });
}

/// s_i applied to a slice map: m × 1 restricted to the degeneracies.
template <class S>
typename S::Map degeneracy_map(const typename S::Map& m, const Slice<S>& x, const Slice<S>& y, const Degeneracy<S>& sx,
                               const Degeneracy<S>& sy) {
  auto tx = S::times(x.carrier, 1), ty = S::times(y.carrier, 1);
  auto h = S::times_map(tx, ty, &m, delta::identity(1));
  return S::corestrict(S::compose(h, S::by_names(sx.obj.carrier, tx.obj())), sy.obj.carrier);
}

// ---- evaluation -------------------------------------------------------------------

/// ev(x, y)_n: slice maps s^{(n)}x -> s^{(n)}y over Δⁿ.
template <class S>
struct EvLevel {
  int n = 0;
  Degeneracy<S> sx, sy;
  typename S::Times tx;             // x × Δⁿ
  typename S::Map pair_inverse;     // x × Δⁿ -> s^{(n)}x
  std::vector<typename S::Map> maps;
};

namespace detail {

/// x × Δⁿ -> z, inverse of the pairing (proj, label) of a slice z over Δⁿ.
template <class S>
typename S::Map unpair(const typename S::Times& t, const typename S::Map& proj, const std::vector<int>& label);

template <>
inline SimplicialMap unpair<SSetSite>(const SSetSite::Times& t, const SimplicialMap& proj, const std::vector<int>& label) {
  return invert(SSetSite::times_pair(t, proj, label));
}

inline std::optional<FinFunctor> inverse_functor(const FinFunctor& f) {
  FinFunctor g{f.dst, f.src, std::vector<int>(f.dst->num_objects(), -1), std::vector<int>(f.dst->num_morphisms(), -1)};
  if (f.ob.size() != g.ob.size() || f.mor.size() != g.mor.size()) return std::nullopt;
  for (size_t o = 0; o < f.ob.size(); ++o) {
    if (g.ob[f.ob[o]] >= 0) return std::nullopt;
    g.ob[f.ob[o]] = static_cast<int>(o);
  }
  for (size_t m = 0; m < f.mor.size(); ++m) {
    if (g.mor[f.mor[m]] >= 0) return std::nullopt;
    g.mor[f.mor[m]] = static_cast<int>(m);
  }
  return g;
}

template <>
inline FinFunctor unpair<CatSite>(const CatSite::Times& t, const FinFunctor& proj, const std::vector<int>& label) {
  auto f = CatSite::times_pair(t, proj, label);
  auto inv = inverse_functor(f);
  if (!inv) throw Error(ErrorCode::VerificationFailed, "pairing with the simplex is not invertible");
  return *inv;
}

}  // namespace detail

template <class S>
EvLevel<S> ev_level(const typename S::Obj& x, const typename S::Obj& y, int n, long budget = 1000000) {
  EvLevel<S> e;
  e.n = n;
  e.sx = iterated_degeneracy<S>(x, n);
  e.sy = iterated_degeneracy<S>(y, n);
  e.tx = S::times(x, n);
  e.pair_inverse = detail::unpair<S>(e.tx, e.sx.proj, e.sx.obj.label);
  for_each_slice_map(e.sx.obj, e.sy.obj, budget, [&](const typename S::Map& m) {
    e.maps.push_back(m);
    return true;
  });
  return e;
}

/// The map x × Δⁿ -> y corresponding to a slice map.
template <class S>
typename S::Map ev_to_direct(const EvLevel<S>& e, const typename S::Map& m) {
  return S::compose(e.sy.proj, S::compose(m, e.pair_inverse));
}

template <class S>
struct EvReport {
  int n = 0;
  long ev_count = 0, direct_count = 0;
  bool injective = false;
  bool faces_commute = true, degeneracies_commute = true;
  bool bijective() const { return injective && ev_count == direct_count; }
};

/// Levelwise comparison of ev(x, y)_k with maps x × Δ^k -> y for k ≤ n, and
/// of d_i, s_j on both sides.
template <class S>
std::vector<EvReport<S>> ev_mapping_space(const typename S::Obj& x, const typename S::Obj& y, int n,
                                          long budget = 1000000);

template <>
inline std::vector<EvReport<SSetSite>> ev_mapping_space<SSetSite>(const SSetPtr& x, const SSetPtr& y, int n, long budget) {
  using S = SSetSite;
  std::vector<EvLevel<S>> lv;
  for (int k = 0; k <= n; ++k) lv.push_back(ev_level<S>(x, y, k, budget));
  {
    EvLevel<S> up;  // only the objects are needed one level up
    up.n = n + 1;
    up.sx = iterated_degeneracy<S>(x, n + 1);
    up.sy = iterated_degeneracy<S>(y, n + 1);
    up.tx = S::times(x, n + 1);
    lv.push_back(std::move(up));
  }
  std::vector<EvReport<S>> out;
  for (int k = 0; k <= n; ++k) {
    const auto& e = lv[k];
    const auto& up = lv[k + 1];
    EvReport<S> r;
    r.n = k;
    r.ev_count = static_cast<long>(e.maps.size());
    r.direct_count = count_sset_maps(e.tx.obj(), y, budget);
    // per face: restriction of m, and the two ways round to x × Δ^{k-1} -> y
    struct FaceData {
      Restriction<S> fx, fy;
      SimplicialMap inv, yproj, coface;
    };
    std::vector<FaceData> faces;
    if (k > 0) {
      auto lower = S::times(x, k - 1);
      for (int i = 0; i <= k; ++i) {
        FaceData f{face_slice(e.sx.obj, i), face_slice(e.sy.obj, i), {}, {}, {}};
        f.inv = detail::unpair<S>(lower, S::compose(e.sx.proj, f.fx.incl), f.fx.obj.label);
        f.yproj = S::compose(e.sy.proj, f.fy.incl);
        f.coface = S::times_map(lower, e.tx, nullptr, delta::coface(k, i));
        faces.push_back(std::move(f));
      }
    }
    struct DegenData {
      Degeneracy<S> dx, dy;
      SimplicialMap into_tx, inv, yproj, codegen;
    };
    auto tx1 = S::times(e.sx.obj.carrier, 1), ty1 = S::times(e.sy.obj.carrier, 1);
    std::vector<DegenData> degens;
    for (int j = 0; j <= k; ++j) {
      DegenData d{degeneracy_slice(e.sx.obj, j), degeneracy_slice(e.sy.obj, j), {}, {}, {}, {}};
      d.into_tx = S::by_names(d.dx.obj.carrier, tx1.obj());
      d.inv = detail::unpair<S>(up.tx, S::compose(e.sx.proj, d.dx.proj), d.dx.obj.label);
      d.yproj = S::compose(e.sy.proj, d.dy.proj);
      d.codegen = S::times_map(up.tx, e.tx, nullptr, delta::codegeneracy(k + 1, j));
      degens.push_back(std::move(d));
    }
    std::set<std::vector<FormalSimplex>> seen;
    for (auto& m : e.maps) {
      auto h = ev_to_direct(e, m);
      seen.insert(h.assign);
      for (auto& f : faces) {
        auto mi = S::corestrict(S::compose(m, f.fx.incl), f.fy.obj.carrier);
        if (!(S::compose(f.yproj, S::compose(mi, f.inv)) == S::compose(h, f.coface))) r.faces_commute = false;
      }
      auto m1 = S::times_map(tx1, ty1, &m, delta::identity(1));
      for (auto& d : degens) {
        auto mj = S::corestrict(S::compose(m1, d.into_tx), d.dy.obj.carrier);
        if (!(S::compose(d.yproj, S::compose(mj, d.inv)) == S::compose(h, d.codegen))) r.degeneracies_commute = false;
      }
    }
    r.injective = seen.size() == e.maps.size();
    out.push_back(r);
  }
  return out;
}

/// |hom(Δⁿ ⊙ x, y)|.
inline long tensor_hom_count(const SSetPtr& x, const SSetPtr& y, int n, long budget = 1000000) {
  auto t = tensor_vertical<SSetSite>(share(std_simplex(n)), x, budget);
  return count_sset_maps(t, y, budget);
}

}  // namespace equipkit
