#include <catch_amalgamated.hpp>

#include "equipkit/checks.hpp"
#include "equipkit/corpus.hpp"
#include "equipkit/homology.hpp"
#include "equipkit/vertical.hpp"

// Invariants swept over many seeds of the random corpus.

using namespace equipkit;

namespace {

template <class S, class Gen>
void companion_chains(corpus::Rng& rng, Gen gen) {
  for (int len = 1; len <= 3; ++len) {
    auto c = gen(rng, len, 3);
    CompanionBuilder<S> b;
    const auto& e = b.build(c);
    for (int i = 0; i <= len; ++i) CHECK(same_by_ids(face_slice(e.obj, i).obj, b.build(b.face(c, i)).obj));
    CHECK(slice_iso(tower_representation(c), e.obj).has_value());
    if (len <= 2) {
      for (int i = 0; i <= len; ++i) CHECK(alpha_comparison(c, i).isomorphic);
      CHECK(slice_iso(staircase(c, "st").obj, e.obj).has_value());
    }
  }
}

}  // namespace

TEST_CASE("seeded sweep", "[property]") {
  auto seed = GENERATE(range(1, 13));
  INFO("seed " << seed);
  corpus::Rng rng(seed);

  for (auto& d : corpus::cat_diagrams(rng, 3)) CHECK(thm1_check(d).iso.has_value());

  for (auto& d : corpus::sset_diagrams(rng, 3)) {
    auto r = theorem2_check(d, 2);
    CHECK(r.isomorphic);
    CHECK(homology_string(homology(*r.dcolim)) == homology_string(homology(*r.hocolim)));
  }

  for (Site s : {Site::Cat, Site::SSet, Site::Cospan})
    for (auto& x : corpus::slice_objects(rng, s, 4)) CHECK(check_simplicial_identities(x).ok());

  for (auto& u : corpus::profunctors(rng, 3)) {
    CHECK(is_invertible(left_unitor(u).cell));
    CHECK(is_invertible(right_unitor(u).cell));
  }
  auto [f, g] = corpus::composable_pair(rng);
  CHECK(is_invertible(companion_comparator(f, g).cell));

  companion_chains<CatSite>(rng, corpus::random_cat_chain);
  companion_chains<SSetSite>(rng, corpus::random_sset_chain);

  for (auto& [x, y] : corpus::sset_pairs(rng, 2)) {
    for (auto& e : ev_mapping_space<SSetSite>(x, y, 2)) {
      CHECK(e.bijective());
      CHECK(e.faces_commute);
      CHECK(e.degeneracies_commute);
      CHECK(tensor_hom_count(x, y, e.n) == e.ev_count);
    }
  }
}

TEST_CASE("corpus generation is deterministic", "[property]") {
  auto seed = GENERATE(0, 7, 12345);
  corpus::Rng a(seed), b(seed);
  auto da = corpus::cat_diagrams(a, 4), db = corpus::cat_diagrams(b, 4);
  REQUIRE(da.size() == db.size());
  for (size_t k = 0; k < da.size(); ++k) {
    CHECK(*da[k].index == *db[k].index);
    for (size_t n = 0; n < da[k].nodes.size(); ++n) CHECK(*da[k].nodes[n] == *db[k].nodes[n]);
    for (size_t e = 0; e < da[k].edges.size(); ++e) CHECK(da[k].edges[e] == db[k].edges[e]);
  }
}
