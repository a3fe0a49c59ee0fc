#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "equipkit/simpset.hpp"

namespace equipkit {

struct SSetIso {
  SimplicialMap fwd, bwd;
};

namespace detail {

/// Per simplex: dimension, degenerate-face count, face-base dimensions and,
/// when vertex labels are given, the label sequence.
inline std::vector<std::vector<int>> sset_signatures(const FinSimplicialSet& x, const std::vector<int>* label = nullptr) {
  int top = std::max(x.max_dim(), 0);
  std::vector<std::vector<int>> sig(x.size(), std::vector<int>(2 * top + 4, 0));
  for (size_t s = 0; s < x.size(); ++s) {
    if (label)
      for (int v : x.verts[s]) sig[s].push_back((*label)[v]);
    sig[s][0] = x.dims[s];
    for (int i = 0; i <= x.dims[s] && x.dims[s] > 0; ++i) {
      auto f = x.face(static_cast<int>(s), i);
      ++sig[f.base][2 + x.dims[s]];
      if (f.degenerate()) ++sig[s][1];
    }
  }
  return sig;
}

}  // namespace detail

/// Backtracking over maximal simplices; faces are forced by propagation.
/// With vertex labels (indexed by simplex id) only label-preserving isomorphisms are sought.
inline std::optional<SSetIso> sset_iso(const SSetPtr& X, const SSetPtr& Y, long budget = 1000000,
                                       const std::vector<int>* label_x = nullptr,
                                       const std::vector<int>* label_y = nullptr) {
  if (X->nondegenerate_counts() != Y->nondegenerate_counts()) return std::nullopt;
  auto sx = detail::sset_signatures(*X, label_x), sy = detail::sset_signatures(*Y, label_y);
  {
    auto a = sx, b = sy;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  size_t n = X->size();
  std::vector<int> fw(n, -1), bw(n, -1), trail;
  std::vector<int> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return X->dims[a] > X->dims[b]; });
  long steps = 0;

  std::function<bool(int, int)> bind = [&](int s, int t) -> bool {
    if (fw[s] == t) return true;
    if (fw[s] != -1 || bw[t] != -1 || sx[s] != sy[t]) return false;
    fw[s] = t;
    bw[t] = s;
    trail.push_back(s);
    for (int i = 0; i <= X->dims[s] && X->dims[s] > 0; ++i) {
      auto fx = X->face(s, i), fy = Y->face(t, i);
      if (fx.degens != fy.degens || !bind(fx.base, fy.base)) return false;
    }
    return true;
  };
  auto undo = [&](size_t mark) {
    while (trail.size() > mark) {
      int s = trail.back();
      trail.pop_back();
      bw[fw[s]] = -1;
      fw[s] = -1;
    }
  };
  std::function<bool(size_t)> search = [&](size_t pos) -> bool {
    while (pos < n && fw[order[pos]] != -1) ++pos;
    if (pos == n) return true;
    int s = order[pos];
    for (size_t t = 0; t < n; ++t) {
      if (bw[t] != -1 || sy[t] != sx[s]) continue;
      if (++steps > budget) throw Error(ErrorCode::SearchBudgetExceeded, "sset_iso search budget exhausted");
      size_t mark = trail.size();
      if (bind(s, static_cast<int>(t)) && search(pos + 1)) return true;
      undo(mark);
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  SSetIso iso{{X, Y, {}}, {Y, X, {}}};
  for (size_t s = 0; s < n; ++s) iso.fwd.assign.push_back({fw[s], {}});
  for (size_t t = 0; t < n; ++t) iso.bwd.assign.push_back({bw[t], {}});
  iso.fwd.validate();
  iso.bwd.validate();
  return iso;
}

}  // namespace equipkit
