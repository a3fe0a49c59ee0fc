#pragma once

// Simplicial identities among the face and degeneracy operations on slice
// objects. Faces and degeneracies are computed by pullback, so the
// identities hold up to a label-preserving isomorphism; cospans satisfy them
// on the nose.

#include <functional>
#include <string>
#include <vector>

#include "equipkit/sharp.hpp"

namespace equipkit {

struct IdentityReport {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

/// Runs every identity that applies at level n. `same(a, b)` compares two
/// composite operations, each given as a function on the object.
template <class T, class Face, class Degen, class Same>
IdentityReport simplicial_identities(const T& x, int n, Face d, Degen s, Same same) {
  IdentityReport r;
  auto check = [&](bool ok, const std::string& what) {
    ++r.checked;
    if (!ok) r.failures.push_back(what);
  };
  auto ij = [](const char* rule, int i, int j) { return std::string(rule) + " i=" + std::to_string(i) + " j=" + std::to_string(j); };
  for (int j = 1; j <= n && n >= 2; ++j)
    for (int i = 0; i < j; ++i) check(same(d(d(x, j), i), d(d(x, i), j - 1)), ij("d_i d_j = d_{j-1} d_i", i, j));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n + 1; ++i) {
      auto lhs = d(s(x, j), i);
      if (i < j) check(same(lhs, s(d(x, i), j - 1)), ij("d_i s_j = s_{j-1} d_i", i, j));
      else if (i == j || i == j + 1) check(same(lhs, x), ij("d_i s_j = 1", i, j));
      else check(same(lhs, s(d(x, i - 1), j)), ij("d_i s_j = s_j d_{i-1}", i, j));
    }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= j; ++i) check(same(s(s(x, j), i), s(s(x, i), j + 1)), ij("s_i s_j = s_{j+1} s_i", i, j));
  return r;
}

}  // namespace detail

/// Checks every simplicial identity at x up to label-preserving isomorphism.
template <class S>
IdentityReport check_simplicial_identities(const Slice<S>& x, long iso_budget = 1000000) {
  validate(x);
  auto d = [](const Slice<S>& y, int i) { return face_slice(y, i).obj; };
  auto s = [](const Slice<S>& y, int j) { return degeneracy_slice(y, j).obj; };
  auto same = [&](const Slice<S>& a, const Slice<S>& b) { return slice_iso(a, b, iso_budget).has_value(); };
  return detail::simplicial_identities(x, x.n, d, s, same);
}

inline IdentityReport check_simplicial_identities(const CospanSlice& x) {
  x.validate();
  auto same = [](const CospanSlice& a, const CospanSlice& b) { return a == b; };
  return detail::simplicial_identities(x, x.n, face_cospan, degeneracy_cospan, same);
}

inline IdentityReport check_simplicial_identities(const SliceObject& x, long iso_budget = 1000000) {
  return std::visit(
      [&](const auto& y) {
        if constexpr (std::is_same_v<std::decay_t<decltype(y)>, CospanSlice>) return check_simplicial_identities(y);
        else return check_simplicial_identities(y, iso_budget);
      },
      x);
}

}  // namespace equipkit
