#pragma once

// JSON reading and writing for every value the command-line tool handles.
// Everything is referenced by name; identity morphisms, identity
// composites, unit actions and identity diagram edges may be omitted.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "equipkit/fincat.hpp"
#include "equipkit/homology.hpp"
#include "equipkit/profcollage.hpp"
#include "equipkit/sharp.hpp"
#include "equipkit/simpset.hpp"

namespace equipkit {

using json = nlohmann::json;

namespace detail {

template <class T>
T get(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, what + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, what + ": bad \"" + key + "\": " + e.what());
  }
}

}  // namespace detail

// ---- categories and functors ----------------------------------------------------

inline json to_json(const FinCategory& c) {
  auto r = to_raw(c);
  json j;
  j["objects"] = r.objects;
  j["morphisms"] = json::array();
  for (auto& m : r.morphisms) j["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"dst", m.dst}});
  j["identities"] = r.identities;
  j["compose"] = json::array();
  for (auto& [g, f, gf] : r.compose) j["compose"].push_back({g, f, gf});
  return j;
}

/// Missing identities are created as "id_<obj>"; composites with identities are implied.
inline FinCategory category_from_json(const json& j) {
  RawCategory r;
  r.objects = detail::get<std::vector<std::string>>(j, "objects", "category");
  if (j.contains("morphisms"))
    for (auto& m : j.at("morphisms"))
      r.morphisms.push_back({detail::get<std::string>(m, "id", "morphism"), detail::get<std::string>(m, "src", "morphism"),
                             detail::get<std::string>(m, "dst", "morphism")});
  if (j.contains("identities")) r.identities = j.at("identities").get<std::map<std::string, std::string>>();
  for (auto& o : r.objects)
    if (!r.identities.count(o)) {
      r.identities[o] = "id_" + o;
      r.morphisms.push_back({"id_" + o, o, o});
    }
  std::map<std::pair<std::string, std::string>, std::string> given;
  if (j.contains("compose"))
    for (auto& t : j.at("compose")) {
      auto v = t.get<std::vector<std::string>>();
      if (v.size() != 3) throw Error(ErrorCode::ParseError, "compose entries are [g, f, g.f]");
      given[{v[0], v[1]}] = v[2];
      r.compose.push_back({v[0], v[1], v[2]});
    }
  std::map<std::string, std::string> src, dst;
  std::set<std::string> ids;
  for (auto& m : r.morphisms) {
    src[m.id] = m.src;
    dst[m.id] = m.dst;
  }
  for (auto& [o, m] : r.identities) ids.insert(m);
  for (auto& f : r.morphisms)
    for (auto& g : r.morphisms) {
      if (g.src != f.dst || given.count({g.id, f.id})) continue;
      if (ids.count(g.id)) r.compose.push_back({g.id, f.id, f.id});
      else if (ids.count(f.id)) r.compose.push_back({g.id, f.id, g.id});
    }
  return validate_category(r);
}

inline json to_json(const FinFunctor& f) {
  json j;
  j["objects"] = json::object();
  for (int o = 0; o < f.src->num_objects(); ++o) j["objects"][f.src->objects[o]] = f.dst->objects[f.ob[o]];
  j["morphisms"] = json::object();
  for (int m = 0; m < f.src->num_morphisms(); ++m)
    if (!f.src->is_identity(m)) j["morphisms"][f.src->morphisms[m].id] = f.dst->morphisms[f.mor[m]].id;
  return j;
}

inline FinFunctor functor_from_json(const json& j, const CatPtr& C, const CatPtr& D) {
  FinFunctor f{C, D, std::vector<int>(C->num_objects(), -1), std::vector<int>(C->num_morphisms(), -1)};
  auto obs = detail::get<std::map<std::string, std::string>>(j, "objects", "functor");
  for (auto& [a, b] : obs) f.ob[C->object(a)] = D->object(b);
  for (int o = 0; o < C->num_objects(); ++o)
    if (f.ob[o] < 0) throw Error(ErrorCode::ParseError, "functor: object '" + C->objects[o] + "' unmapped");
  std::map<std::string, std::string> ms;
  if (j.contains("morphisms")) ms = j.at("morphisms").get<std::map<std::string, std::string>>();
  for (auto& [a, b] : ms) f.mor[C->morphism(a)] = D->morphism(b);
  for (int m = 0; m < C->num_morphisms(); ++m) {
    if (f.mor[m] >= 0) continue;
    if (!C->is_identity(m)) throw Error(ErrorCode::ParseError, "functor: morphism '" + C->morphisms[m].id + "' unmapped");
    f.mor[m] = D->identities[f.ob[C->src(m)]];
  }
  f.validate();
  return f;
}

// ---- profunctors --------------------------------------------------------------------

/// Elements are grouped under "c|d"; an element reference is [c, d, id].
inline json to_json(const Profunctor& u) {
  json j;
  j["src"] = to_json(*u.src);
  j["dst"] = to_json(*u.dst);
  j["elements"] = json::object();
  auto ref = [&](int x) { return json::array({u.src->objects[u.elems[x].c], u.dst->objects[u.elems[x].d], u.elems[x].id}); };
  for (auto& e : u.elems) j["elements"][u.src->objects[e.c] + "|" + u.dst->objects[e.d]].push_back(e.id);
  j["lact"] = json::array();
  j["ract"] = json::array();
  for (int x = 0; x < u.size(); ++x) {
    for (int f = 0; f < u.src->num_morphisms(); ++f)
      if (u.lact[x][f] >= 0 && !u.src->is_identity(f)) j["lact"].push_back({ref(x), u.src->morphisms[f].id, ref(u.lact[x][f])});
    for (int g = 0; g < u.dst->num_morphisms(); ++g)
      if (u.ract[x][g] >= 0 && !u.dst->is_identity(g)) j["ract"].push_back({u.dst->morphisms[g].id, ref(x), ref(u.ract[x][g])});
  }
  return j;
}

inline Profunctor profunctor_from_json(const json& j) {
  Profunctor u;
  u.src = share(category_from_json(detail::get<json>(j, "src", "profunctor")));
  u.dst = share(category_from_json(detail::get<json>(j, "dst", "profunctor")));
  auto groups = detail::get<std::map<std::string, std::vector<std::string>>>(j, "elements", "profunctor");
  for (auto& [key, ids] : groups) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw Error(ErrorCode::ParseError, "profunctor: element group '" + key + "' is not c|d");
    int c = u.src->object(key.substr(0, bar)), d = u.dst->object(key.substr(bar + 1));
    for (auto& id : ids) u.elems.push_back({c, d, id});
  }
  std::stable_sort(u.elems.begin(), u.elems.end(), [](auto& a, auto& b) { return std::tie(a.c, a.d) < std::tie(b.c, b.d); });
  auto elem = [&](const json& r) {
    auto v = r.get<std::vector<std::string>>();
    if (v.size() != 3) throw Error(ErrorCode::ParseError, "profunctor: element reference is [c, d, id]");
    auto x = u.find(u.src->object(v[0]), u.dst->object(v[1]), v[2]);
    if (!x) throw Error(ErrorCode::ParseError, "profunctor: unknown element " + v[2]);
    return *x;
  };
  std::map<std::pair<int, int>, int> l, r;
  if (j.contains("lact"))
    for (auto& t : j.at("lact")) l[{elem(t.at(0)), u.src->morphism(t.at(1).get<std::string>())}] = elem(t.at(2));
  if (j.contains("ract"))
    for (auto& t : j.at("ract")) r[{elem(t.at(1)), u.dst->morphism(t.at(0).get<std::string>())}] = elem(t.at(2));
  u.fill(
      [&](int x, int f) {
        if (auto it = l.find({x, f}); it != l.end()) return it->second;
        if (u.src->is_identity(f)) return x;
        throw Error(ErrorCode::ParseError, "profunctor: missing left action " + u.elems[x].id + "." + u.src->morphisms[f].id);
      },
      [&](int g, int x) {
        if (auto it = r.find({x, g}); it != r.end()) return it->second;
        if (u.dst->is_identity(g)) return x;
        throw Error(ErrorCode::ParseError, "profunctor: missing right action " + u.dst->morphisms[g].id + "." + u.elems[x].id);
      });
  u.validate();
  return u;
}

// ---- simplicial sets ----------------------------------------------------------------

inline json formal_to_json(const FinSimplicialSet& x, const FormalSimplex& f) {
  return {{"base", x.names[f.base]}, {"degens", f.degens}};
}

inline FormalSimplex formal_from_json(const FinSimplicialSet& x, const json& j) {
  if (j.is_string()) return {x.at(j.get<std::string>()), {}};
  return {x.at(detail::get<std::string>(j, "base", "simplex")),
          normalize_degeneracies(j.contains("degens") ? j.at("degens").get<std::vector<int>>() : std::vector<int>{})};
}

inline json to_json(const FinSimplicialSet& x) {
  json j;
  j["cells"] = json::object();
  j["faces"] = json::object();
  for (size_t s = 0; s < x.size(); ++s) {
    j["cells"][std::to_string(x.dims[s])].push_back(x.names[s]);
    if (x.dims[s] > 0) {
      json fs = json::array();
      for (auto& f : x.faces[s]) fs.push_back(formal_to_json(x, f));
      j["faces"][x.names[s]] = fs;
    }
  }
  return j;
}

/// Cells are added in order of dimension, and within a dimension in file order.
inline FinSimplicialSet sset_from_json(const json& j) {
  auto cells = detail::get<std::map<std::string, std::vector<std::string>>>(j, "cells", "simplicial set");
  std::map<int, std::vector<std::string>> by_dim;
  for (auto& [k, ids] : cells) {
    int d = 0;
    try {
      d = std::stoi(k);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "simplicial set: dimension key '" + k + "' is not a number");
    }
    by_dim[d] = ids;
  }
  json faces = j.contains("faces") ? j.at("faces") : json::object();
  FinSimplicialSet x;
  for (auto& [d, ids] : by_dim)
    for (auto& id : ids) {
      std::vector<FormalSimplex> fs;
      if (d > 0) {
        if (!faces.contains(id)) throw Error(ErrorCode::ParseError, "simplicial set: no faces for '" + id + "'");
        for (auto& f : faces.at(id)) fs.push_back(formal_from_json(x, f));
      }
      x.add(id, d, std::move(fs));
    }
  x.validate();
  return x;
}

inline json to_json(const SimplicialMap& f) {
  json j = json::object();
  for (size_t s = 0; s < f.src->size(); ++s) j[f.src->names[s]] = formal_to_json(*f.dst, f.assign[s]);
  return j;
}

inline SimplicialMap sset_map_from_json(const json& j, const SSetPtr& A, const SSetPtr& B) {
  SimplicialMap f{A, B, {}};
  for (size_t s = 0; s < A->size(); ++s) {
    if (!j.contains(A->names[s])) throw Error(ErrorCode::ParseError, "map: simplex '" + A->names[s] + "' unassigned");
    f.assign.push_back(formal_from_json(*B, j.at(A->names[s])));
  }
  f.validate();
  return f;
}

// ---- diagrams -----------------------------------------------------------------------

inline json site_carrier_to_json(const CatPtr& c) { return to_json(*c); }
inline json site_carrier_to_json(const SSetPtr& x) { return to_json(*x); }
inline json site_map_to_json(const FinFunctor& f) { return to_json(f); }
inline json site_map_to_json(const SimplicialMap& f) { return to_json(f); }

template <class S>
typename S::Obj carrier_from_json(const json& j) {
  if constexpr (std::is_same_v<S, CatSite>) return share(category_from_json(j));
  else return share(sset_from_json(j));
}

template <class S>
typename S::Map map_from_json(const json& j, const typename S::Obj& a, const typename S::Obj& b) {
  if constexpr (std::is_same_v<S, CatSite>) return functor_from_json(j, a, b);
  else return sset_map_from_json(j, a, b);
}

template <class S>
json to_json(const VerticalDiagram<S>& F) {
  json j;
  j["site"] = S::tag;
  j["index"] = to_json(*F.index);
  j["nodes"] = json::object();
  for (int o = 0; o < F.index->num_objects(); ++o) j["nodes"][F.index->objects[o]] = site_carrier_to_json(F.nodes[o]);
  j["edges"] = json::object();
  for (int a = 0; a < F.index->num_morphisms(); ++a)
    if (!F.index->is_identity(a)) j["edges"][F.index->morphisms[a].id] = site_map_to_json(F.edges[a]);
  return j;
}

/// Edges of composites may be omitted when the index factors them uniquely
/// through given edges; identity edges are always implied.
template <class S>
VerticalDiagram<S> diagram_from_json(const json& j) {
  VerticalDiagram<S> F;
  F.index = share(category_from_json(detail::get<json>(j, "index", "diagram")));
  const auto& J = *F.index;
  auto nodes = detail::get<json>(j, "nodes", "diagram");
  for (auto& o : J.objects) {
    if (!nodes.contains(o)) throw Error(ErrorCode::ParseError, "diagram: no node for '" + o + "'");
    F.nodes.push_back(carrier_from_json<S>(nodes.at(o)));
  }
  json edges = j.contains("edges") ? j.at("edges") : json::object();
  std::vector<std::optional<typename S::Map>> e(J.num_morphisms());
  for (int a = 0; a < J.num_morphisms(); ++a) {
    if (J.is_identity(a)) e[a] = S::identity(F.nodes[J.src(a)]);
    else if (edges.contains(J.morphisms[a].id))
      e[a] = map_from_json<S>(edges.at(J.morphisms[a].id), F.nodes[J.src(a)], F.nodes[J.dst(a)]);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int g = 0; g < J.num_morphisms(); ++g)
      for (int f = 0; f < J.num_morphisms(); ++f)
        if (J.src(g) == J.dst(f) && e[g] && e[f] && !e[J.compose(g, f)]) {
          e[J.compose(g, f)] = S::compose(*e[g], *e[f]);
          changed = true;
        }
  }
  for (int a = 0; a < J.num_morphisms(); ++a) {
    if (!e[a]) throw Error(ErrorCode::ParseError, "diagram: no edge for '" + J.morphisms[a].id + "'");
    F.edges.push_back(std::move(*e[a]));
  }
  F.validate();
  return F;
}

inline CatDiagram to_cat_diagram(const VerticalDiagram<CatSite>& F) { return {F.index, F.nodes, F.edges}; }

// ---- slice objects --------------------------------------------------------------------

inline json to_json(const CospanSlice& x) {
  return {{"site", "cospan"}, {"level", x.n}, {"apex", x.apex}, {"legs", x.legs}, {"maps", x.maps}};
}

inline CospanSlice cospan_from_json(const json& j) {
  CospanSlice x;
  x.n = detail::get<int>(j, "level", "cospan");
  x.apex = detail::get<std::vector<std::string>>(j, "apex", "cospan");
  x.legs = detail::get<std::vector<std::vector<std::string>>>(j, "legs", "cospan");
  x.maps = detail::get<std::vector<std::vector<int>>>(j, "maps", "cospan");
  x.validate();
  return x;
}

/// {"site", "level", "carrier", "structure": {point: vertex of Δⁿ}}.
template <class S>
json to_json(const Slice<S>& x) {
  json j;
  j["site"] = S::tag;
  j["level"] = x.n;
  j["carrier"] = site_carrier_to_json(x.carrier);
  j["structure"] = json::object();
  for (int v : S::points(x.carrier)) {
    if constexpr (std::is_same_v<S, CatSite>) j["structure"][x.carrier->objects[v]] = x.label[v];
    else j["structure"][x.carrier->names[v]] = x.label[v];
  }
  return j;
}

template <class S>
Slice<S> slice_from_json(const json& j) {
  auto carrier = carrier_from_json<S>(detail::get<json>(j, "carrier", "slice object"));
  int n = detail::get<int>(j, "level", "slice object");
  auto st = detail::get<std::map<std::string, int>>(j, "structure", "slice object");
  std::vector<int> label(S::size(carrier), -1);
  for (auto& [name, v] : st) {
    if constexpr (std::is_same_v<S, CatSite>) label[carrier->object(name)] = v;
    else label[carrier->at(name)] = v;
  }
  for (int v : S::points(carrier))
    if (label[v] < 0) throw Error(ErrorCode::ParseError, "slice object: point without a vertex of the simplex");
  auto x = from_labels<S>(carrier, n, label);
  validate(x);
  return x;
}

inline json to_json(const SliceObject& x) {
  return std::visit([](const auto& v) { return to_json(v); }, x);
}

inline SliceObject slice_object_from_json(const json& j, std::optional<Site> site = std::nullopt) {
  Site s = site ? *site : parse_site(detail::get<std::string>(j, "site", "slice object"));
  switch (s) {
    case Site::Cat: return slice_from_json<CatSite>(j);
    case Site::SSet: return slice_from_json<SSetSite>(j);
    case Site::Cospan: return cospan_from_json(j);
  }
  throw Error(ErrorCode::ParseError, "unknown site");
}

// ---- chains ---------------------------------------------------------------------------

/// {"site", "objects": [carrier, ...], "maps": [map, ...]}, optional "names".
template <class S>
Chain<S> chain_from_json(const json& j) {
  auto objs = detail::get<json>(j, "objects", "chain");
  auto maps = detail::get<json>(j, "maps", "chain");
  if (!objs.is_array() || !maps.is_array() || objs.size() != maps.size() + 1)
    throw Error(ErrorCode::ParseError, "chain: need one more object than maps");
  std::vector<typename S::Obj> os;
  std::vector<typename S::Map> ms;
  for (auto& o : objs) os.push_back(carrier_from_json<S>(o));
  for (size_t k = 0; k < maps.size(); ++k) ms.push_back(map_from_json<S>(maps[k], os[k], os[k + 1]));
  std::vector<std::string> names;
  if (j.contains("names")) names = detail::get<std::vector<std::string>>(j, "names", "chain");
  return make_chain<S>(os, ms, names);
}

/// Objects are written without the "x0:" style prefixes make_chain adds.
template <class S>
json to_json(const Chain<S>& c) {
  json j{{"site", S::tag}, {"objects", json::array()}, {"maps", json::array()}, {"names", c.object_names}};
  std::vector<typename S::Obj> plain;
  for (size_t k = 0; k < c.objects.size(); ++k) {
    auto prefix = c.object_names[k] + ":";
    plain.push_back(S::relabel(c.objects[k], [&](const std::string& n) {
      return n.starts_with(prefix) ? n.substr(prefix.size()) : n;
    }));
  }
  for (auto& o : plain) j["objects"].push_back(site_carrier_to_json(o));
  for (size_t k = 0; k < c.arrows.size(); ++k)
    j["maps"].push_back(site_map_to_json(S::retarget(c.arrows[k].map, plain[k], plain[k + 1])));
  return j;
}

inline json to_json(const CospanMorphism& f) { return {{"legs", f.legs}, {"apex", f.apex}}; }

inline CospanMorphism cospan_morphism_from_json(const json& j) {
  return {detail::get<std::vector<std::vector<int>>>(j, "legs", "cospan morphism"),
          detail::get<std::vector<int>>(j, "apex", "cospan morphism")};
}

inline json to_json(const std::vector<AbelianGroup>& h) {
  json j = json::array();
  for (auto& g : h) {
    std::vector<std::string> t;
    for (auto& x : g.torsion) t.push_back(x.str());
    j.push_back({{"rank", g.rank}, {"torsion", t}});
  }
  return j;
}

// ---- files ----------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace equipkit
