#pragma once

// Enumeration of simplicial maps between finite simplicial sets.

#include <functional>
#include <optional>
#include <vector>

#include "equipkit/simpset.hpp"

namespace equipkit {

struct MapConstraints {
  const std::vector<int>* label_src = nullptr;  // vertex labels; images must carry the same label
  const std::vector<int>* label_dst = nullptr;
  std::vector<std::optional<FormalSimplex>> fixed;  // per source generator
};

/// Calls visit(map) for every simplicial map A -> B meeting the constraints;
/// stops early when visit returns false. Returns the number visited.
template <class Visit>
long for_each_sset_map(const SSetPtr& A, const SSetPtr& B, long budget, Visit&& visit,
                       const MapConstraints& c = {}) {
  int top = A->max_dim();
  std::vector<std::vector<FormalSimplex>> cand(top + 1);
  std::vector<std::vector<std::vector<FormalSimplex>>> cand_faces(top + 1);
  for (int k = 0; k <= top; ++k)
    for (auto& t : B->simplices(k)) {
      std::vector<FormalSimplex> fs;
      for (int i = 0; i <= k && k > 0; ++i) fs.push_back(B->face(t, i));
      cand[k].push_back(t);
      cand_faces[k].push_back(std::move(fs));
    }
  // Vertices in breadth-first order along edges; every other generator right
  // after the last of its faces, so constraints prune early.
  std::vector<int> order;
  {
    std::vector<char> placed(A->size(), 0);
    std::vector<std::vector<int>> nbr(A->size());
    for (int s : A->cells_of(1)) {
      int a = A->faces[s][0].base, b = A->faces[s][1].base;
      nbr[a].push_back(b);
      nbr[b].push_back(a);
    }
    auto ready = [&](int s) {
      for (auto& f : A->faces[s])
        if (!placed[f.base]) return false;
      return true;
    };
    auto close = [&] {
      for (bool grew = true; grew;) {
        grew = false;
        for (int k = 1; k <= top; ++k)
          for (int s : A->cells_of(k))
            if (!placed[s] && ready(s)) {
              placed[s] = 1;
              order.push_back(s);
              grew = true;
            }
      }
    };
    std::vector<char> seen(A->size(), 0);
    for (int root : A->cells_of(0)) {
      if (seen[root]) continue;
      std::vector<int> queue{root};
      seen[root] = 1;
      for (size_t q = 0; q < queue.size(); ++q) {
        placed[queue[q]] = 1;
        order.push_back(queue[q]);
        close();
        for (int w : nbr[queue[q]])
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
      }
    }
  }
  SimplicialMap m{A, B, std::vector<FormalSimplex>(A->size())};
  long count = 0, steps = 0;
  bool stop = false;
  auto apply = [&](const FormalSimplex& f) { return degenerate_by(m.assign[f.base], f.degens); };
  std::function<void(size_t)> go = [&](size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (++count > budget) throw Error(ErrorCode::EnumerationBudgetExceeded, "map enumeration exceeded the budget");
      if (!visit(static_cast<const SimplicialMap&>(m))) stop = true;
      return;
    }
    int s = order[pos];
    int k = A->dims[s];
    auto try_one = [&](const FormalSimplex& t, const std::vector<FormalSimplex>& tf) {
      if (++steps > 50 * budget + 100000)
        throw Error(ErrorCode::EnumerationBudgetExceeded, "map enumeration exceeded the search budget");
      if (k == 0 && c.label_src && (*c.label_dst)[t.base] != (*c.label_src)[s]) return;
      for (int i = 0; i <= k && k > 0; ++i)
        if (!(tf[i] == apply(A->faces[s][i]))) return;
      m.assign[s] = t;
      go(pos + 1);
    };
    if (static_cast<size_t>(s) < c.fixed.size() && c.fixed[s]) {
      const auto& t = *c.fixed[s];
      std::vector<FormalSimplex> tf;
      for (int i = 0; i <= k && k > 0; ++i) tf.push_back(B->face(t, i));
      try_one(t, tf);
      return;
    }
    for (size_t j = 0; j < cand[k].size() && !stop; ++j) try_one(cand[k][j], cand_faces[k][j]);
  };
  if (A->size() == 0) {
    visit(static_cast<const SimplicialMap&>(m));
    return 1;
  }
  go(0);
  return count;
}

inline long count_sset_maps(const SSetPtr& A, const SSetPtr& B, long budget, const MapConstraints& c = {}) {
  return for_each_sset_map(A, B, budget, [](const SimplicialMap&) { return true; }, c);
}

/// Inverse of a map that is bijective on generators.
inline SimplicialMap invert(const SimplicialMap& f) {
  SimplicialMap g{f.dst, f.src, std::vector<FormalSimplex>(f.dst->size())};
  std::vector<char> hit(f.dst->size(), 0);
  for (size_t s = 0; s < f.src->size(); ++s) {
    const auto& t = f.assign[s];
    if (t.degenerate() || hit[t.base]) throw Error(ErrorCode::ValidationError, "map is not invertible");
    hit[t.base] = 1;
    g.assign[t.base] = {static_cast<int>(s), {}};
  }
  for (char h : hit)
    if (!h) throw Error(ErrorCode::ValidationError, "map is not invertible");
  g.validate();
  return g;
}

}  // namespace equipkit
