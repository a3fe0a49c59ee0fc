#include <catch_amalgamated.hpp>

#include "equipkit/cat_colimit.hpp"
#include "equipkit/corpus.hpp"

using namespace equipkit;

namespace {

CatGraphDiagram glue_arrows(const std::string& a_end, const std::string& b_end) {
  auto d0 = share(delta_category(0)), d1 = share(delta_category(1));
  CatGraphDiagram d;
  int p = d.add_node(d0, "p");
  int a = d.add_node(d1, "a");
  int b = d.add_node(d1, "b");
  d.add_edge(p, a, functor_by_ids(d0, d1, {{"0", a_end}}, {}));
  d.add_edge(p, b, functor_by_ids(d0, d1, {{"0", b_end}}, {}));
  return d;
}

void check_cocone(const CatGraphDiagram& d, const CatColimit& c) {
  for (auto& e : d.edges) CHECK(compose(c.cocone[e.to], e.functor) == c.cocone[e.from]);
}

}  // namespace

TEST_CASE("gluing two arrows end to start gives [2]", "[colimit]") {
  auto d = glue_arrows("1", "0");
  auto c = cat_colimit(d);
  c.cat->validate();
  check_cocone(d, c);
  CHECK(cat_iso(c.cat, share(delta_category(2))).has_value());
}

TEST_CASE("gluing two arrows at their sources gives a span", "[colimit]") {
  auto d = glue_arrows("0", "0");
  auto c = cat_colimit(d);
  check_cocone(d, c);
  CHECK(cat_iso(c.cat, share(span_category())).has_value());
}

TEST_CASE("parallel arrows stay distinct", "[colimit]") {
  auto two = share(discrete_category({"x", "y"}));
  auto d1 = share(delta_category(1));
  CatGraphDiagram d;
  int p = d.add_node(two, "p");
  int a = d.add_node(d1, "a");
  int b = d.add_node(d1, "b");
  auto ends = functor_by_ids(two, d1, {{"x", "0"}, {"y", "1"}}, {});
  d.add_edge(p, a, ends);
  d.add_edge(p, b, ends);
  auto c = cat_colimit(d);
  check_cocone(d, c);
  CHECK(c.cat->num_objects() == 2);
  CHECK(c.cat->num_morphisms() == 4);
}

TEST_CASE("a free loop exceeds the budget", "[colimit]") {
  // coequalize both ends of an arrow: the free monoid on one generator
  auto d0 = share(delta_category(0)), d1 = share(delta_category(1));
  CatGraphDiagram d;
  int p = d.add_node(d0, "p");
  int a = d.add_node(d1, "a");
  d.add_edge(p, a, functor_by_ids(d0, d1, {{"0", "0"}}, {}));
  d.add_edge(p, a, functor_by_ids(d0, d1, {{"0", "1"}}, {}));
  try {
    cat_colimit(d, 500);
    FAIL("infinite colimit returned");
  } catch (const Error& e) {
    CHECK(is_budget_error(e.code()));
  }
}

TEST_CASE("induced functor out of a colimit", "[colimit]") {
  auto d = glue_arrows("1", "0");
  auto c = cat_colimit(d);
  // the cocone of [2] by the two edge inclusions
  auto d0 = share(delta_category(0)), d1 = share(delta_category(1)), d2 = share(delta_category(2));
  std::vector<FinFunctor> legs{functor_by_ids(d0, d2, {{"0", "1"}}, {}),
                               functor_by_ids(d1, d2, {{"0", "0"}, {"1", "1"}}, {{"01", "01"}}),
                               functor_by_ids(d1, d2, {{"0", "1"}, {"1", "2"}}, {{"01", "12"}})};
  auto h = cat_colimit_induced(c, legs, d2);
  h.validate();
  for (size_t v = 0; v < legs.size(); ++v) CHECK(compose(h, c.cocone[v]) == legs[v]);
}

TEST_CASE("isomorphism search", "[colimit]") {
  auto d2 = share(delta_category(2));
  CHECK(cat_iso(d2, share(opposite(*d2))).has_value());
  CHECK_FALSE(cat_iso(share(span_category()), share(opposite(span_category()))).has_value());
  auto e = share(corpus::idempotent_category("e"));
  auto iso = cat_iso(e, share(corpus::idempotent_category("f")));
  REQUIRE(iso.has_value());
  CHECK(is_identity_functor(compose(iso->bwd, iso->fwd)));
}

TEST_CASE("isomorphism search on relabelled random categories", "[colimit][property]") {
  corpus::Rng rng(17);
  for (int k = 0; k < 15; ++k) {
    auto c = share(corpus::random_category(rng, 4, "p"));
    auto raw = to_raw(*c);
    // reverse the object order: a relabelling with a nontrivial permutation
    std::reverse(raw.objects.begin(), raw.objects.end());
    std::reverse(raw.morphisms.begin(), raw.morphisms.end());
    auto d = share(validate_category(raw));
    auto iso = cat_iso(c, d);
    REQUIRE(iso.has_value());
    iso->fwd.validate();
    CHECK(is_identity_functor(compose(iso->bwd, iso->fwd)));
    CHECK(is_identity_functor(compose(iso->fwd, iso->bwd)));
  }
}
