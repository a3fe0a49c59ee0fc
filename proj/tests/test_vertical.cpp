#include <catch_amalgamated.hpp>

#include "equipkit/corpus.hpp"
#include "equipkit/homology.hpp"
#include "equipkit/vertical.hpp"

using namespace equipkit;

namespace {

SSetPtr simplex(int n) { return share(std_simplex(n)); }

long direct_maps(const SSetPtr& x, const SSetPtr& y, int n) {
  return count_sset_maps(product_with_simplex(x, n).obj(), y, 1000000);
}

SSetPtr product(const SSetPtr& a, const SSetPtr& b) {
  auto pt = point();
  auto fa = to_point(a), fb = to_point(b);
  fa.dst = pt;
  fb.dst = pt;
  return pullback(fa, fb).obj;
}

template <class S>
VerticalDiagram<S> constant_diagram(const CatPtr& J, const typename S::Obj& x) {
  VerticalDiagram<S> F{J, std::vector<typename S::Obj>(J->num_objects(), x), {}};
  for (int a = 0; a < J->num_morphisms(); ++a) F.edges.push_back(S::identity(x));
  return F;
}

VerticalDiagram<SSetSite> arrow(const SimplicialMap& f) {
  auto J = share(delta_category(1));
  VerticalDiagram<SSetSite> F{J, {f.src, f.dst}, {}};
  for (int a = 0; a < J->num_morphisms(); ++a)
    F.edges.push_back(J->is_identity(a) ? identity_map(F.nodes[J->src(a)]) : f);
  return F;
}

VerticalDiagram<SSetSite> span_of(const SSetPtr& a, const SSetPtr& b, const SSetPtr& c, const SimplicialMap& f,
                                  const SimplicialMap& g) {
  auto J = share(span_category());
  VerticalDiagram<SSetSite> F{J, {a, b, c}, {}};
  for (int m = 0; m < J->num_morphisms(); ++m) {
    const auto& id = J->morphisms[m].id;
    F.edges.push_back(id == "a" ? f : id == "b" ? g : identity_map(F.nodes[J->src(m)]));
  }
  return F;
}

std::string h(const SSetPtr& x) { return homology_string(homology(*x)); }

}  // namespace

TEST_CASE("ev on small examples", "[vertical]") {
  auto d0 = simplex(0), d1 = simplex(1), bd1 = share(boundary(1));
  for (int n = 0; n <= 2; ++n) CHECK(ev_level<SSetSite>(d0, d0, n).maps.size() == 1);
  CHECK(ev_level<SSetSite>(d0, bd1, 0).maps.size() == 2);
  CHECK(ev_level<SSetSite>(d1, d1, 0).maps.size() == 3);
}

TEST_CASE("ev levels are maps out of products", "[vertical][property]") {
  corpus::Rng rng(31);
  for (auto& [x, y] : corpus::sset_pairs(rng, 8, 10)) {
    auto rep = ev_mapping_space<SSetSite>(x, y, 2);
    REQUIRE(rep.size() == 3);
    for (auto& e : rep) {
      CHECK(e.bijective());
      CHECK(e.faces_commute);
      CHECK(e.degeneracies_commute);
      CHECK(e.ev_count == direct_maps(x, y, e.n));
      CHECK(tensor_hom_count(x, y, e.n) == e.ev_count);
    }
  }
}

TEST_CASE("ev on the category site", "[vertical]") {
  corpus::Rng rng(32);
  for (int k = 0; k < 6; ++k) {
    auto x = share(corpus::random_poset(rng, 2, "x"));
    auto y = share(corpus::random_poset(rng, 3, "y"));
    for (int n = 0; n <= 2; ++n) {
      auto t = CatSite::times(x, n);
      long direct = for_each_functor(t.obj(), y, 1000000, [](const FinFunctor&) { return true; });
      CHECK(static_cast<long>(ev_level<CatSite>(x, y, n).maps.size()) == direct);
    }
  }
}

TEST_CASE("composition in the vertical enrichment", "[vertical][property]") {
  corpus::Rng rng(33);
  auto sets = corpus::small_ssets(4);
  auto same = [](const SimplicialMap& a, const SimplicialMap& b) { return a.assign == b.assign; };
  auto contains = [&](const EvLevel<SSetSite>& e, const SimplicialMap& m) {
    return std::any_of(e.maps.begin(), e.maps.end(), [&](const SimplicialMap& q) { return same(q, m); });
  };
  for (int k = 0; k < 6; ++k) {
    auto x = corpus::choose(rng, sets), y = corpus::choose(rng, sets), z = corpus::choose(rng, sets);
    for (int n = 0; n <= 2; ++n) {
      auto xy = ev_level<SSetSite>(x, y, n), yz = ev_level<SSetSite>(y, z, n), zz = ev_level<SSetSite>(z, z, n);
      auto xz = ev_level<SSetSite>(x, z, n), xx = ev_level<SSetSite>(x, x, n);
      auto idx = identity_map(xy.sx.obj.carrier);
      CHECK(contains(xx, idx));
      for (auto& f : xy.maps) {
        CHECK(same(compose(f, idx), f));
        CHECK(same(compose(identity_map(xy.sy.obj.carrier), f), f));
        for (auto& g : yz.maps) {
          auto gf = compose(g, f);
          CHECK(contains(xz, gf));
          for (auto& t : zz.maps) CHECK(same(compose(t, gf), compose(compose(t, g), f)));
        }
      }
    }
  }
}

TEST_CASE("tensors with simplicial sets", "[vertical]") {
  auto d0 = simplex(0), d1 = simplex(1), bd1 = share(boundary(1));
  CHECK(sset_iso(tensor_vertical<SSetSite>(d0, d1), d1).has_value());
  auto two = tensor_vertical<SSetSite>(bd1, d0);
  CHECK(two->nondegenerate_counts() == std::vector<size_t>{2});
  for (int n = 0; n <= 2; ++n)
    CHECK(sset_iso(tensor_vertical<SSetSite>(simplex(n), d1), product_with_simplex(d1, n).obj()).has_value());
  auto horn = share(equipkit::horn(2, 1));
  CHECK(sset_iso(tensor_vertical<SSetSite>(horn, d1), product(horn, d1)).has_value());
  // the category site: Δ¹ ⊙ [1] is the square
  auto c1 = share(delta_category(1));
  auto sq = tensor_vertical<CatSite>(d1, c1);
  CHECK(cat_iso(sq, CatSite::times(c1, 1).obj()).has_value());
}

TEST_CASE("staircases are companions", "[vertical][property]") {
  corpus::Rng rng(34);
  for (int len = 0; len <= 2; ++len)
    for (int rep = 0; rep < 4; ++rep) {
      auto cs = corpus::random_sset_chain(rng, len);
      CHECK(slice_iso(staircase(cs, "st").obj, companion_simplex(cs).y).has_value());
      auto cc = corpus::random_cat_chain(rng, len);
      CHECK(slice_iso(staircase(cc, "st").obj, companion_simplex(cc).y).has_value());
    }
}

TEST_CASE("the staircase of an arrow is its mapping cylinder", "[vertical]") {
  corpus::Rng rng(35);
  for (int k = 0; k < 6; ++k) {
    auto c = corpus::random_sset_chain(rng, 1);
    auto mc = mapping_cylinder(c.arrows[0].map);
    CHECK(slice_iso(staircase(c, "st").obj, sset_slice(mc.to_interval, 1)).has_value());
  }
}

TEST_CASE("homotopy colimits of small diagrams", "[vertical]") {
  auto d0 = simplex(0), d1 = simplex(1);
  auto J0 = share(delta_category(0));
  VerticalDiagram<SSetSite> single{J0, {d1}, {identity_map(d1)}};
  CHECK(sset_iso(hocolim(single, 2).obj, d1).has_value());

  auto bd1 = share(boundary(1));
  auto f = to_point(bd1);
  f.dst = d0;
  auto F = arrow(f);
  CHECK(sset_iso(hocolim(F, 2).obj, mapping_cylinder(f).obj).has_value());
  auto r = theorem2_check(F, 2);
  CHECK(r.isomorphic);
  // the cone on two points
  CHECK(r.dcolim->nondegenerate_counts() == std::vector<size_t>{3, 2});
}

TEST_CASE("hocolim of a constant diagram is a product with the nerve", "[vertical][property]") {
  std::vector<CatPtr> shapes{share(delta_category(1)), share(delta_category(2)), share(span_category())};
  for (auto& J : shapes)
    for (auto& x : corpus::small_ssets(4)) {
      auto hc = hocolim(constant_diagram<SSetSite>(J, x), 2).obj;
      CHECK(sset_iso(hc, product(share(nerve(*J, 2)), x)).has_value());
    }
}

TEST_CASE("sphere pushout", "[vertical]") {
  auto d0 = simplex(0), d1 = simplex(1), bd1 = share(boundary(1));
  auto inc = delta_inclusion(bd1, d1);
  auto pt = to_point(bd1);
  pt.dst = d0;
  auto disc = span_of(bd1, d1, d1, inc, inc);
  auto cone = span_of(bd1, d0, d0, pt, pt);
  CHECK(h(hocolim(disc, 2).obj) == "(Z, Z)");
  CHECK(h(hocolim(cone, 2).obj) == "(Z, Z)");
  CHECK(h(strict_colimit(cone)) == "(Z)");
  CHECK(h(strict_colimit(disc)) == "(Z, Z)");
  CHECK(theorem2_check(disc, 2).isomorphic);
  CHECK(theorem2_check(cone, 2).isomorphic);
}

TEST_CASE("double colimit against the homotopy colimit", "[vertical][property]") {
  corpus::Rng rng(36);
  for (auto& F : corpus::sset_diagrams(rng, 9)) {
    auto r = theorem2_check(F, 2);
    CHECK(r.isomorphic);
    REQUIRE(r.iso.has_value());
    CHECK(h(r.dcolim) == h(r.hocolim));
  }
}

TEST_CASE("category site: both sides are the Grothendieck construction", "[vertical]") {
  corpus::Rng rng(37);
  for (auto& F : corpus::cat_diagrams(rng, 6, 3)) {
    auto r = theorem2_check(to_vertical(F), 2);
    CHECK(r.isomorphic);
    CHECK(cat_iso(r.dcolim, grothendieck(F).cat).has_value());
  }
}
