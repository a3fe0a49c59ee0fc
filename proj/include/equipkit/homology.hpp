#pragma once

// Integral homology of the normalized chain complex via Smith normal form.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "equipkit/simpset.hpp"

namespace equipkit {

using BigInt = boost::multiprecision::cpp_int;

struct AbelianGroup {
  long rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next

  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroup& o) const { return rank == o.rank && torsion == o.torsion; }
  std::string str() const {
    std::vector<std::string> parts;
    if (rank == 1) parts.push_back("Z");
    if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
    for (auto& t : torsion) parts.push_back("Z/" + t.str());
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) s += "+" + parts[i];
    return s;
  }
};

using Matrix = std::vector<std::vector<BigInt>>;

/// Diagonal of the Smith normal form (nonzero entries only, divisibility chain).
inline std::vector<BigInt> smith_diagonal(Matrix a) {
  using boost::multiprecision::abs;
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero magnitude in the remaining block
    size_t pr = rows, pc = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // enforce divisibility of the rest of the block
        for (size_t i = t + 1; i < rows && clean; ++i)
          for (size_t j = t + 1; j < cols && clean; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (size_t c = t; c < cols; ++c) a[t][c] += a[i][c];
              clean = false;
            }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

inline Matrix boundary_matrix(const FinSimplicialSet& x, int k) {
  const auto& rows = x.cells_of(k - 1);
  const auto& cols = x.cells_of(k);
  std::vector<int> row_of(x.size(), -1);
  for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
  Matrix m(rows.size(), std::vector<BigInt>(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i <= k; ++i) {
      auto f = x.face(cols[j], i);
      if (f.degenerate()) continue;
      m[row_of[f.base]][j] += (i % 2 == 0) ? 1 : -1;
    }
  return m;
}

/// H_0 .. H_{max_dim}.
inline std::vector<AbelianGroup> homology(const FinSimplicialSet& x) {
  int top = x.max_dim();
  std::vector<std::vector<BigInt>> diag(top + 2);
  for (int k = 1; k <= top; ++k) diag[k] = smith_diagonal(boundary_matrix(x, k));
  std::vector<AbelianGroup> out;
  for (int k = 0; k <= top; ++k) {
    AbelianGroup g;
    long rank_out = k >= 1 ? static_cast<long>(diag[k].size()) : 0;
    long rank_in = k + 1 <= top ? static_cast<long>(diag[k + 1].size()) : 0;
    g.rank = static_cast<long>(x.cells_of(k).size()) - rank_out - rank_in;
    if (k + 1 <= top)
      for (auto& d : diag[k + 1])
        if (d > 1) g.torsion.push_back(d);
    out.push_back(std::move(g));
  }
  return out;
}

/// "(Z, Z)" style, trailing trivial groups dropped.
inline std::string homology_string(const std::vector<AbelianGroup>& h) {
  size_t n = h.size();
  while (n > 0 && h[n - 1].trivial()) --n;
  std::string s = "(";
  for (size_t i = 0; i < n; ++i) s += (i ? ", " : "") + h[i].str();
  return s + ")";
}

}  // namespace equipkit
