#pragma once

// Monotone maps [k] -> [n] of the simplex category, stored as value vectors.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace equipkit::delta {

using Mono = std::vector<int>;

inline Mono identity(int n) {
  Mono m(n + 1);
  for (int j = 0; j <= n; ++j) m[j] = j;
  return m;
}

/// d^i : [n-1] -> [n], skips i.
inline Mono coface(int n, int i) {
  Mono m(n);
  for (int j = 0; j < n; ++j) m[j] = j < i ? j : j + 1;
  return m;
}

/// s^i : [n+1] -> [n], hits i twice.
inline Mono codegeneracy(int n, int i) {
  Mono m(n + 2);
  for (int j = 0; j <= n + 1; ++j) m[j] = j <= i ? j : j - 1;
  return m;
}

/// (a . b)(j) = a(b(j)).
inline Mono compose(const Mono& a, const Mono& b) {
  Mono m(b.size());
  for (size_t j = 0; j < b.size(); ++j) m[j] = a[b[j]];
  return m;
}

inline bool is_monotone(const Mono& m) {
  return std::is_sorted(m.begin(), m.end());
}

inline bool is_injective(const Mono& m) {
  return std::adjacent_find(m.begin(), m.end()) == m.end();
}

/// Positions j with m(j) == m(j+1), ascending.
inline std::vector<int> collapse_set(const Mono& m) {
  std::vector<int> s;
  for (size_t j = 0; j + 1 < m.size(); ++j)
    if (m[j] == m[j + 1]) s.push_back(static_cast<int>(j));
  return s;
}

/// The surjection [k] -> [k - |S|] collapsing exactly the positions in S.
inline Mono surjection(int k, const std::vector<int>& collapse) {
  Mono m(k + 1);
  int v = 0;
  for (int j = 0; j <= k; ++j) {
    m[j] = v;
    if (j < k && std::find(collapse.begin(), collapse.end(), j) == collapse.end()) ++v;
  }
  return m;
}

/// Epi-mono factorization m = mono . epi. `mono` lists the image in order.
inline std::pair<Mono, Mono> epi_mono(const Mono& m) {
  Mono image = m;
  image.erase(std::unique(image.begin(), image.end()), image.end());
  Mono epi(m.size());
  size_t p = 0;
  for (size_t j = 0; j < m.size(); ++j) {
    while (image[p] != m[j]) ++p;
    epi[j] = static_cast<int>(p);
  }
  return {epi, image};
}

/// All monotone maps [k] -> [n] in lexicographic order.
inline std::vector<Mono> all_monotone(int k, int n) {
  std::vector<Mono> out;
  Mono cur(k + 1, 0);
  while (true) {
    out.push_back(cur);
    int j = k;
    while (j >= 0 && cur[j] == n) --j;
    if (j < 0) break;
    int v = cur[j] + 1;
    for (int t = j; t <= k; ++t) cur[t] = v;
  }
  return out;
}

inline std::vector<Mono> all_injective(int k, int n) {
  std::vector<Mono> out;
  for (auto& m : all_monotone(k, n))
    if (is_injective(m)) out.push_back(m);
  return out;
}

/// All strictly increasing subsets of {0..n-1} of size r, lexicographic.
inline std::vector<std::vector<int>> subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > n) return out;
  std::vector<int> cur(r);
  for (int j = 0; j < r; ++j) cur[j] = j;
  while (true) {
    out.push_back(cur);
    int j = r - 1;
    while (j >= 0 && cur[j] == n - r + j) --j;
    if (j < 0) break;
    ++cur[j];
    for (int t = j + 1; t < r; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

inline std::string vertex_string(const std::vector<int>& vs, int n) {
  std::string s;
  for (size_t j = 0; j < vs.size(); ++j) {
    if (j && n >= 10) s += '.';
    s += std::to_string(vs[j]);
  }
  return s;
}

}  // namespace equipkit::delta
