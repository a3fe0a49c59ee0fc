#pragma once

// Finite simplicial sets in normal form: nondegenerate generators, a face
// table into formal simplices, and degeneracy words kept strictly decreasing.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "equipkit/delta.hpp"
#include "equipkit/error.hpp"

namespace equipkit {

/// s_{degens[0]} s_{degens[1]} ... (base), degens strictly decreasing.
struct FormalSimplex {
  int base = -1;
  std::vector<int> degens;

  bool operator==(const FormalSimplex& o) const = default;
  bool operator<(const FormalSimplex& o) const {
    return std::tie(base, degens) < std::tie(o.base, o.degens);
  }
  bool degenerate() const { return !degens.empty(); }
};

/// Rewrites a word of degeneracy operators (outermost first) into normal
/// form using s_i s_j = s_{j+1} s_i for i <= j.
inline std::vector<int> normalize_degeneracies(std::vector<int> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a = 0; a + 1 < w.size(); ++a) {
      if (w[a] <= w[a + 1]) {
        int i = w[a], j = w[a + 1];
        w[a] = j + 1;
        w[a + 1] = i;
        changed = true;
      }
    }
  }
  return w;
}

inline FormalSimplex degenerate(const FormalSimplex& x, int j) {
  std::vector<int> w{j};
  w.insert(w.end(), x.degens.begin(), x.degens.end());
  return {x.base, normalize_degeneracies(std::move(w))};
}

/// Applies the degeneracy word `outer` (outermost first) on top of x.
inline FormalSimplex degenerate_by(const FormalSimplex& x, const std::vector<int>& outer) {
  std::vector<int> w = outer;
  w.insert(w.end(), x.degens.begin(), x.degens.end());
  return {x.base, normalize_degeneracies(std::move(w))};
}

class FinSimplicialSet {
 public:
  std::vector<std::string> names;
  std::vector<int> dims;
  std::vector<std::vector<FormalSimplex>> faces;
  std::vector<std::vector<int>> verts;
  std::vector<std::vector<int>> cells;

  size_t size() const { return names.size(); }
  int max_dim() const { return static_cast<int>(cells.size()) - 1; }
  int dim(const FormalSimplex& x) const {
    return dims[x.base] + static_cast<int>(x.degens.size());
  }
  const std::vector<int>& cells_of(int k) const {
    static const std::vector<int> empty;
    return k >= 0 && k < static_cast<int>(cells.size()) ? cells[k] : empty;
  }
  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw Error(ErrorCode::ValidationError, "unknown simplex '" + name + "'");
    return it->second;
  }

  /// Adds a generator; its faces must refer to generators already present.
  int add(const std::string& name, int dim, std::vector<FormalSimplex> fs = {}) {
    if (index_.count(name))
      throw Error(ErrorCode::ValidationError, "duplicate simplex '" + name + "'");
    if (dim < 0) throw Error(ErrorCode::ValidationError, "negative dimension");
    if (static_cast<int>(fs.size()) != (dim == 0 ? 0 : dim + 1))
      throw Error(ErrorCode::ValidationError, "simplex '" + name + "' has wrong face count");
    for (auto& f : fs) {
      if (f.base < 0 || f.base >= static_cast<int>(size()))
        throw Error(ErrorCode::ValidationError, "face of '" + name + "' refers to unknown simplex");
      f.degens = normalize_degeneracies(f.degens);
      if (this->dim(f) != dim - 1)
        throw Error(ErrorCode::ValidationError, "face of '" + name + "' has wrong dimension");
    }
    int id = static_cast<int>(size());
    names.push_back(name);
    dims.push_back(dim);
    faces.push_back(std::move(fs));
    if (static_cast<int>(cells.size()) <= dim) cells.resize(dim + 1);
    cells[dim].push_back(id);
    index_[name] = id;
    if (dim == 0) {
      verts.push_back({id});
    } else {
      auto v = vertices(faces[id][dim]);
      v.push_back(vertices(faces[id][0]).back());
      verts.push_back(std::move(v));
    }
    return id;
  }

  /// d_i through the degeneracy word, using the face/degeneracy identities.
  FormalSimplex face(const FormalSimplex& x, int i) const {
    std::vector<int> prefix;
    for (size_t a = 0; a < x.degens.size(); ++a) {
      int j = x.degens[a];
      if (i == j || i == j + 1) {
        prefix.insert(prefix.end(), x.degens.begin() + a + 1, x.degens.end());
        return {x.base, normalize_degeneracies(std::move(prefix))};
      }
      if (i < j) {
        prefix.push_back(j - 1);
      } else {
        prefix.push_back(j);
        --i;
      }
    }
    return degenerate_by(faces[x.base][i], prefix);
  }

  FormalSimplex face(int s, int i) const { return face(FormalSimplex{s, {}}, i); }

  /// Action of a monotone map theta: [k] -> [dim x].
  FormalSimplex act(const FormalSimplex& x, const delta::Mono& theta) const {
    auto [epi, image] = delta::epi_mono(theta);
    int n = dim(x);
    FormalSimplex cur = x;
    for (int c = n; c >= 0; --c)
      if (!std::binary_search(image.begin(), image.end(), c)) cur = face(cur, c);
    auto col = delta::collapse_set(epi);
    std::reverse(col.begin(), col.end());
    return degenerate_by(cur, col);
  }

  std::vector<int> vertices(const FormalSimplex& x) const {
    const auto& bv = verts[x.base];
    std::vector<int> col(x.degens.rbegin(), x.degens.rend());
    auto eta = delta::surjection(dim(x), col);
    std::vector<int> out;
    for (int e : eta) out.push_back(bv[e]);
    return out;
  }

  /// All simplices of dimension k, degenerate ones included.
  std::vector<FormalSimplex> simplices(int k) const {
    std::vector<FormalSimplex> out;
    for (int m = 0; m <= std::min(k, max_dim()); ++m) {
      for (int b : cells_of(m)) {
        for (auto& s : delta::subsets(k, k - m)) {
          FormalSimplex x{b, std::vector<int>(s.rbegin(), s.rend())};
          out.push_back(std::move(x));
        }
      }
    }
    return out;
  }

  size_t count(int k) const { return simplices(k).size(); }

  std::vector<size_t> nondegenerate_counts() const {
    std::vector<size_t> c;
    for (auto& v : cells) c.push_back(v.size());
    return c;
  }

  std::string name_of(const FormalSimplex& x) const {
    if (x.degens.empty()) return names[x.base];
    std::string s = "s";
    for (size_t a = 0; a < x.degens.size(); ++a) s += (a ? "," : "") + std::to_string(x.degens[a]);
    return s + "(" + names[x.base] + ")";
  }

  /// First violated identity d_i d_j = d_{j-1} d_i (i < j), if any.
  std::optional<std::string> identity_violation() const {
    for (size_t s = 0; s < size(); ++s) {
      int n = dims[s];
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (n >= 2 && face(face(static_cast<int>(s), j), i) != face(face(static_cast<int>(s), i), j - 1))
            return "d_" + std::to_string(i) + "d_" + std::to_string(j) + " on '" + names[s] + "'";
    }
    return std::nullopt;
  }

  void validate() const {
    if (auto v = identity_violation()) throw Error(ErrorCode::ValidationError, "simplicial identity fails: " + *v);
  }

 private:
  std::unordered_map<std::string, int> index_;
};

using SSetPtr = std::shared_ptr<const FinSimplicialSet>;

inline SSetPtr share(FinSimplicialSet x) { return std::make_shared<const FinSimplicialSet>(std::move(x)); }

/// Assignment on nondegenerate source simplices; extends to formal ones.
struct SimplicialMap {
  SSetPtr src, dst;
  std::vector<FormalSimplex> assign;

  FormalSimplex operator()(const FormalSimplex& x) const { return degenerate_by(assign[x.base], x.degens); }
  FormalSimplex operator()(int s) const { return assign[s]; }

  std::optional<std::string> violation() const {
    if (assign.size() != src->size()) return std::string("assignment size mismatch");
    for (size_t s = 0; s < src->size(); ++s) {
      const auto& t = assign[s];
      if (t.base < 0 || t.base >= static_cast<int>(dst->size())) return "unassigned '" + src->names[s] + "'";
      if (dst->dim(t) != src->dims[s]) return "dimension mismatch at '" + src->names[s] + "'";
      for (int i = 0; i <= src->dims[s] && src->dims[s] > 0; ++i)
        if ((*this)(src->face(static_cast<int>(s), i)) != dst->face(t, i))
          return "face " + std::to_string(i) + " of '" + src->names[s] + "'";
    }
    return std::nullopt;
  }
  void validate() const {
    if (auto v = violation()) throw Error(ErrorCode::ValidationError, "simplicial map: " + *v);
  }
  bool operator==(const SimplicialMap& o) const { return assign == o.assign; }
};

inline SimplicialMap identity_map(const SSetPtr& x) {
  SimplicialMap m{x, x, {}};
  for (size_t s = 0; s < x->size(); ++s) m.assign.push_back({static_cast<int>(s), {}});
  return m;
}

/// g . f
inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap m{f.src, g.dst, {}};
  for (auto& t : f.assign) m.assign.push_back(g(t));
  return m;
}

inline bool is_injective(const SimplicialMap& f) {
  std::vector<char> hit(f.dst->size(), 0);
  for (auto& t : f.assign) {
    if (t.degenerate() || hit[t.base]) return false;
    hit[t.base] = 1;
  }
  return true;
}

// ---- standard simplices -------------------------------------------------

/// Sub-simplicial set of Delta^n on the vertex subsets accepted by `keep`
/// (which must be closed under taking nonempty subsets).
template <class Keep>
FinSimplicialSet delta_sub(int n, Keep keep) {
  FinSimplicialSet x;
  for (int k = 0; k <= n; ++k) {
    for (auto& s : delta::subsets(n + 1, k + 1)) {
      if (!keep(s)) continue;
      std::vector<FormalSimplex> fs;
      if (k > 0) {
        for (int i = 0; i <= k; ++i) {
          auto t = s;
          t.erase(t.begin() + i);
          fs.push_back({x.at(delta::vertex_string(t, n)), {}});
        }
      }
      x.add(delta::vertex_string(s, n), k, std::move(fs));
    }
  }
  return x;
}

inline FinSimplicialSet std_simplex(int n) {
  return delta_sub(n, [](const std::vector<int>&) { return true; });
}

inline FinSimplicialSet boundary(int n) {
  return delta_sub(n, [n](const std::vector<int>& s) { return static_cast<int>(s.size()) <= n; });
}

inline FinSimplicialSet horn(int n, int i) {
  if (i < 0 || i > n) throw Error(ErrorCode::ValidationError, "horn index out of range");
  return delta_sub(n, [n, i](const std::vector<int>& s) {
    if (static_cast<int>(s.size()) == n + 1) return false;
    if (static_cast<int>(s.size()) == n) return std::find(s.begin(), s.end(), i) != s.end();
    return true;
  });
}

/// The simplex of Delta^n (or a subobject named like one) with vertex sequence `seq`.
inline FormalSimplex delta_formal(const FinSimplicialSet& d, int n, const delta::Mono& seq) {
  auto [epi, image] = delta::epi_mono(seq);
  auto col = delta::collapse_set(seq);
  return {d.at(delta::vertex_string(image, n)), std::vector<int>(col.rbegin(), col.rend())};
}

/// The map X -> Delta^n determined by a monotone labelling of vertices.
inline SimplicialMap map_to_simplex(const SSetPtr& x, const SSetPtr& dn, int n, const std::vector<int>& label) {
  SimplicialMap m{x, dn, {}};
  for (size_t s = 0; s < x->size(); ++s) {
    delta::Mono seq;
    for (int v : x->verts[s]) seq.push_back(label[v]);
    if (!delta::is_monotone(seq))
      throw Error(ErrorCode::ValidationError, "vertex labelling not monotone on '" + x->names[s] + "'");
    m.assign.push_back(delta_formal(*dn, n, seq));
  }
  return m;
}

/// Labels of vertices under a map into a standard simplex.
inline std::vector<int> vertex_labels(const SimplicialMap& p) {
  std::vector<int> lab(p.src->size(), -1);
  for (int v : p.src->cells_of(0)) lab[v] = p.dst->verts[p.assign[v].base][0];
  return lab;
}

/// Sub-simplicial set on generators accepted by `keep` (closed under faces); names kept.
template <class Keep>
std::pair<FinSimplicialSet, std::vector<int>> sub_sset(const FinSimplicialSet& x, Keep keep) {
  FinSimplicialSet y;
  std::vector<int> to_new(x.size(), -1), to_old;
  for (int k = 0; k <= x.max_dim(); ++k) {
    for (int s : x.cells_of(k)) {
      if (!keep(s)) continue;
      std::vector<FormalSimplex> fs;
      for (auto f : x.faces[s]) {
        if (to_new[f.base] < 0)
          throw Error(ErrorCode::ValidationError, "subobject not closed under faces at '" + x.names[s] + "'");
        f.base = to_new[f.base];
        fs.push_back(f);
      }
      to_new[s] = y.add(x.names[s], k, std::move(fs));
      to_old.push_back(s);
    }
  }
  return {std::move(y), std::move(to_old)};
}

inline SimplicialMap inclusion_map(const SSetPtr& sub, const SSetPtr& x, const std::vector<int>& to_old) {
  SimplicialMap m{sub, x, {}};
  for (int s : to_old) m.assign.push_back({s, {}});
  return m;
}

/// Inclusion of a subobject of Delta^n named by vertex strings (boundary, horn).
inline SimplicialMap delta_inclusion(const SSetPtr& sub, const SSetPtr& dn) {
  SimplicialMap m{sub, dn, {}};
  for (size_t s = 0; s < sub->size(); ++s) m.assign.push_back({dn->at(sub->names[s]), {}});
  return m;
}

inline FinSimplicialSet disjoint_union(const FinSimplicialSet& a, const FinSimplicialSet& b,
                                       const std::string& pa = "0:", const std::string& pb = "1:") {
  FinSimplicialSet x;
  std::vector<int> ma(a.size()), mb(b.size());
  int top = std::max(a.max_dim(), b.max_dim());
  for (int k = 0; k <= top; ++k) {
    for (int s : a.cells_of(k)) {
      auto fs = a.faces[s];
      for (auto& f : fs) f.base = ma[f.base];
      ma[s] = x.add(pa + a.names[s], k, fs);
    }
    for (int s : b.cells_of(k)) {
      auto fs = b.faces[s];
      for (auto& f : fs) f.base = mb[f.base];
      mb[s] = x.add(pb + b.names[s], k, fs);
    }
  }
  return x;
}

}  // namespace equipkit
