#include <catch_amalgamated.hpp>

#include "equipkit/cat_colimit.hpp"
#include "equipkit/corpus.hpp"
#include "equipkit/profcollage.hpp"

using namespace equipkit;

namespace {

long hom_count(const FinCategory& C, int x, int y) { return static_cast<long>(C.hom(x, y).size()); }

CatDiagram pushout_diagram() {
  auto d0 = share(delta_category(0)), d1 = share(delta_category(1));
  auto sp = share(span_category());
  CatDiagram D{sp, {d0, d1, d1}, {}};
  for (auto& m : sp->morphisms) {
    if (m.id == "a") D.edges.push_back(functor_by_ids(d0, d1, {{"0", "1"}}, {}));
    else if (m.id == "b") D.edges.push_back(functor_by_ids(d0, d1, {{"0", "0"}}, {}));
    else D.edges.push_back(identity_functor(D.nodes[m.src]));
  }
  return D;
}

}  // namespace

TEST_CASE("hom, companion and cojoint sizes", "[profunctor]") {
  corpus::Rng rng(21);
  for (int k = 0; k < 12; ++k) {
    auto C = share(corpus::random_category(rng, 3, "c"));
    auto D = share(corpus::random_category(rng, 3, "d"));
    auto F = corpus::random_functor(rng, C, D);
    auto h = hom_profunctor(D);
    h.validate();
    CHECK(h.size() == D->num_morphisms());
    long comp = 0, coj = 0;
    for (int c = 0; c < C->num_objects(); ++c)
      for (int d = 0; d < D->num_objects(); ++d) {
        comp += hom_count(*D, F.ob[c], d);
        coj += hom_count(*D, d, F.ob[c]);
      }
    auto cs = companion(F);
    auto cj = cojoint(F);
    cs.validate();
    cj.validate();
    CHECK(cs.size() == comp);
    CHECK(cj.size() == coj);
  }
}

TEST_CASE("tensor over a terminal middle is a product", "[profunctor]") {
  auto one = share(terminal_category());
  auto two = share(discrete_category({"p", "q"}));
  auto three = share(discrete_category({"r", "s", "t"}));
  auto u = share(corpus::relation_profunctor(two, one, {{1}, {1}}));
  auto v = share(corpus::relation_profunctor(one, three, {{1, 1, 1}}));
  auto t = tensor(u, v);
  t.prof->validate();
  CHECK(t.prof->size() == 6);
  CHECK_THROWS_AS(tensor(v, u), Error);
}

TEST_CASE("tensor of discrete relations is relational composition", "[profunctor][property]") {
  corpus::Rng rng(4);
  for (int k = 0; k < 15; ++k) {
    auto A = share(discrete_category({"a0", "a1", "a2"}));
    auto B = share(discrete_category({"b0", "b1"}));
    auto C = share(discrete_category({"c0", "c1", "c2"}));
    auto u = share(corpus::random_relation(rng, A, B));
    auto v = share(corpus::random_relation(rng, B, C));
    long oracle = 0;
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c)
        for (int b = 0; b < 2; ++b) oracle += static_cast<long>(u->at(a, b).size() * v->at(b, c).size());
    CHECK(tensor(u, v).prof->size() == oracle);
  }
}

TEST_CASE("collage round trip", "[profunctor][property]") {
  corpus::Rng rng(8);
  for (auto& u : corpus::profunctors(rng, 12)) {
    auto c = collage_of(*u);
    c.carrier->validate();
    CHECK(c.carrier->num_objects() == u->src->num_objects() + u->dst->num_objects());
    CHECK(c.carrier->num_morphisms() == u->src->num_morphisms() + u->dst->num_morphisms() + u->size());
    CHECK(profunctor_of(c) == *u);
  }
}

TEST_CASE("unitors, associators and companion comparators are invertible", "[profunctor][property]") {
  corpus::Rng rng(12);
  for (auto& u : corpus::profunctors(rng, 10)) {
    auto l = left_unitor(u);
    auto r = right_unitor(u);
    l.cell.validate();
    r.cell.validate();
    CHECK(is_invertible(l.cell));
    CHECK(is_invertible(r.cell));
    auto E = share(corpus::random_poset(rng, 3, "e"));
    auto v = share(corpus::random_relation(rng, u->dst, E));
    auto w = share(cojoint(corpus::random_functor(rng, share(corpus::random_poset(rng, 2, "f")), E)));
    auto a = associator(u, v, w);
    a.cell.validate();
    CHECK(is_invertible(a.cell));
    auto back = inverse(a.cell);
    for (int x = 0; x < a.cell.top->size(); ++x) CHECK(back.comp[a.cell.comp[x]] == x);
  }
  for (int k = 0; k < 10; ++k) {
    auto [f, g] = corpus::composable_pair(rng);
    auto c = companion_comparator(f, g);
    c.cell.validate();
    CHECK(is_invertible(c.cell));
  }
}

TEST_CASE("niche filler", "[profunctor]") {
  corpus::Rng rng(30);
  long cells = 0;
  for (auto& u : corpus::profunctors(rng, 10)) {
    auto A = share(corpus::random_poset(rng, 3, "a"));
    auto B = share(corpus::random_poset(rng, 3, "b"));
    auto F = corpus::random_functor(rng, A, u->src);
    auto G = corpus::random_functor(rng, B, u->dst);
    auto fill = niche_fill(u, F, G);
    fill.phi.validate();
    long oracle = 0;
    for (int a = 0; a < A->num_objects(); ++a)
      for (int b = 0; b < B->num_objects(); ++b) oracle += static_cast<long>(u->at(F.ob[a], G.ob[b]).size());
    CHECK(fill.filler->size() == oracle);

    auto cmp = niche_comparison(u, F, G);
    cmp.cell.validate();
    CHECK(is_invertible(cmp.cell));

    auto X = share(corpus::random_poset(rng, 2, "x"));
    auto H = corpus::random_functor(rng, X, A);
    auto K = corpus::random_functor(rng, X, B);
    auto w = share(hom_profunctor(X));
    auto r = verify_niche_universal(u, F, G, w, H, K);
    CHECK(r.ok);
    CHECK(r.cells == r.factorizations);
    cells += r.cells;
  }
  CHECK(cells > 0);
  auto u = share(hom_profunctor(share(delta_category(1))));
  auto wrong = identity_functor(share(delta_category(2)));
  CHECK_THROWS_AS(niche_fill(u, wrong, wrong), Error);
}

TEST_CASE("double colimit of the pushout diagram", "[profunctor]") {
  auto D = pushout_diagram();
  auto r = thm1_check(D);
  REQUIRE(r.iso.has_value());
  // the lax colimit: 5 identities, the two arrows, apex to {1} in the first
  // arrow and apex to {0, 1} in the second
  CHECK(r.dcolim.cat->num_objects() == 5);
  CHECK(r.dcolim.cat->num_morphisms() == 10);
  CHECK(is_identity_functor(compose(r.iso->bwd, r.iso->fwd)));
}

TEST_CASE("double colimits are universal", "[profunctor]") {
  corpus::Rng rng(14);
  auto diagrams = corpus::cat_diagrams(rng, 6, 3);
  diagrams.push_back(pushout_diagram());
  for (auto& F : diagrams) {
    auto pd = companion_diagram(F);
    pd.validate();
    auto colim = dcolim_prof(pd);
    std::vector<CatPtr> targets{colim.cat, share(delta_category(0)), share(delta_category(1))};
    for (auto& n : F.nodes) targets.push_back(n);
    for (auto& X : targets) {
      auto rep = verify_universal(pd, colim, X);
      CHECK(rep.ok);
      CHECK(rep.cocones == rep.functors);
    }
  }
}

TEST_CASE("the double colimit of an arrow is its collage", "[profunctor]") {
  corpus::Rng rng(2);
  for (auto& u : corpus::profunctors(rng, 8)) {
    auto d = arrow_prof_diagram(u);
    d.validate();
    auto c = dcolim_prof(d);
    CHECK(cat_iso(c.cat, collage_of(*u).carrier).has_value());
  }
}

TEST_CASE("Grothendieck construction matches the double colimit", "[profunctor][property]") {
  corpus::Rng rng(99);
  for (auto& F : corpus::cat_diagrams(rng, 15)) {
    auto r = thm1_check(F);
    CHECK(r.iso.has_value());
  }
}
