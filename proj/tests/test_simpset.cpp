#include <catch_amalgamated.hpp>

#include "equipkit/corpus.hpp"
#include "equipkit/sset_iso.hpp"
#include "equipkit/sset_limits.hpp"
#include "equipkit/sset_maps.hpp"

using namespace equipkit;

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// strictly increasing chains of length k+1 in the grid [p] x [q]
long grid_chains(int p, int q, int k) {
  std::function<long(int, int, int)> from = [&](int a, int b, int left) -> long {
    if (left == 0) return 1;
    long n = 0;
    for (int c = a; c <= p; ++c)
      for (int d = b; d <= q; ++d)
        if (c + d > a + b) n += from(c, d, left - 1);
    return n;
  };
  long total = 0;
  for (int a = 0; a <= p; ++a)
    for (int b = 0; b <= q; ++b) total += from(a, b, k);
  return total;
}

}  // namespace

TEST_CASE("standard simplices", "[simpset]") {
  for (int n = 0; n <= 3; ++n) {
    auto d = std_simplex(n);
    d.validate();
    auto counts = d.nondegenerate_counts();
    for (int k = 0; k <= n; ++k) CHECK(static_cast<long>(counts[k]) == binomial(n + 1, k + 1));
    // all k-simplices are the monotone maps [k] -> [n]
    for (int k = 0; k <= 3; ++k) CHECK(static_cast<long>(d.count(k)) == binomial(n + k + 1, k + 1));
  }
  CHECK(boundary(2).nondegenerate_counts() == std::vector<size_t>{3, 3});
  CHECK(horn(2, 1).nondegenerate_counts() == std::vector<size_t>{3, 2});
  CHECK_THROWS_AS(horn(2, 3), Error);
}

TEST_CASE("face of a degenerate simplex", "[simpset]") {
  auto d = std_simplex(1);
  FormalSimplex e{d.at("01"), {}};
  auto s0e = degenerate(e, 0);
  CHECK(d.face(s0e, 0) == e);
  CHECK(d.face(s0e, 1) == e);
  CHECK(d.vertices(d.face(s0e, 2)) == std::vector<int>{d.at("0"), d.at("0")});
  CHECK(d.vertices(s0e) == std::vector<int>{d.at("0"), d.at("0"), d.at("1")});
}

TEST_CASE("invalid face data is rejected", "[simpset]") {
  FinSimplicialSet x;
  x.add("a", 0);
  x.add("b", 0);
  x.add("f", 1, {{1, {}}, {0, {}}});
  // all faces f: d1 d0 = a but d0 d2 = b
  x.add("t", 2, {{2, {}}, {2, {}}, {2, {}}});
  CHECK(x.identity_violation().has_value());
  CHECK_THROWS_AS(x.validate(), Error);
}

TEST_CASE("maps out of a simplex are its simplices", "[simpset][property]") {
  for (auto& x : corpus::small_ssets())
    for (int m = 0; m <= 2; ++m)
      CHECK(count_sset_maps(share(std_simplex(m)), x, 100000) == static_cast<long>(x->count(m)));
}

TEST_CASE("maps out of the boundary of the interval are vertex pairs", "[simpset]") {
  auto bd = share(boundary(1));
  for (auto& x : corpus::small_ssets()) {
    long v = static_cast<long>(x->cells_of(0).size());
    CHECK(count_sset_maps(bd, x, 100000) == v * v);
  }
}

TEST_CASE("products with simplices", "[simpset]") {
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) {
      auto pr = product_with_simplex(share(std_simplex(p)), q);
      pr.obj()->validate();
      auto counts = pr.obj()->nondegenerate_counts();
      for (int k = 0; k <= p + q; ++k) CHECK(static_cast<long>(counts[k]) == grid_chains(p, q, k));
    }
}

TEST_CASE("pullback projections commute", "[simpset]") {
  auto d2 = share(std_simplex(2));
  auto bd = share(boundary(2));
  auto inc = delta_inclusion(bd, d2);
  auto pb = pullback(inc, identity_map(d2));
  pb.obj->validate();
  CHECK(pb.obj->nondegenerate_counts() == std::vector<size_t>{3, 3});
  for (size_t s = 0; s < pb.obj->size(); ++s) CHECK(inc(pb.p1(static_cast<int>(s))) == pb.p2(static_cast<int>(s)));
}

TEST_CASE("pushouts and the mapping cylinder", "[simpset]") {
  auto d0 = share(std_simplex(0)), d1 = share(std_simplex(1));
  auto bd1 = share(boundary(1));
  auto inc = delta_inclusion(bd1, d1);
  auto circle = pushout(inc, inc, "", "u", "l");
  circle.obj->validate();
  CHECK(circle.obj->nondegenerate_counts() == std::vector<size_t>{2, 2});
  for (auto& e : circle.cocone) e.validate();

  auto f = to_point(d1);
  f.dst = d0;
  auto mc = mapping_cylinder(f);
  mc.obj->validate();
  mc.incl_x.validate();
  mc.incl_y.validate();
  mc.to_interval.validate();
  // Delta^1 x Delta^1 with the end over vertex 1 collapsed to a point
  CHECK(mc.obj->nondegenerate_counts() == std::vector<size_t>{3, 4, 2});
}

TEST_CASE("simplicial set isomorphism", "[simpset]") {
  auto h0 = share(horn(2, 0)), h2 = share(horn(2, 2)), h1 = share(horn(2, 1));
  CHECK(sset_iso(h0, h0).has_value());
  CHECK_FALSE(sset_iso(h0, h2).has_value());  // orientations differ
  CHECK_FALSE(sset_iso(h0, h1).has_value());
  auto pr = product_with_simplex(share(std_simplex(1)), 0);
  CHECK(sset_iso(pr.obj(), share(std_simplex(1))).has_value());
}
