#include <catch_amalgamated.hpp>

#include "equipkit/corpus.hpp"
#include "equipkit/homology.hpp"
#include "equipkit/right.hpp"

#include <set>

using namespace equipkit;

namespace {

SSetPtr simplex(int n) { return share(std_simplex(n)); }

// k-simplices of the tabulator: maps Δ^k × Δⁿ -> x over Δⁿ
long sections(const SSetSlice& x, int k) {
  auto t = SSetSite::times(simplex(k), x.n);
  auto src = sset_slice(t.pr.pb.p2, x.n);
  return for_each_slice_map(src, x, 1000000, [](const SimplicialMap&) { return true; });
}

SSetPtr product(const SSetPtr& a, const SSetPtr& b) {
  auto pt = point();
  auto fa = to_point(a), fb = to_point(b);
  fa.dst = pt;
  fb.dst = pt;
  return pullback(fa, fb).obj;
}

VerticalDiagram<SSetSite> arrow(const SimplicialMap& f) {
  auto J = share(delta_category(1));
  VerticalDiagram<SSetSite> F{J, {f.src, f.dst}, {}};
  for (int a = 0; a < J->num_morphisms(); ++a)
    F.edges.push_back(J->is_identity(a) ? identity_map(F.nodes[J->src(a)]) : f);
  return F;
}

std::string h(const SSetPtr& x) { return homology_string(homology(*x)); }

}  // namespace

TEST_CASE("tabulator simplices are sections", "[right][property]") {
  corpus::Rng rng(51);
  for (int k = 0; k < 8; ++k) {
    auto x = corpus::random_sset_slice(rng);
    auto t = tabulator(x, 2);
    t.obj->validate();
    for (int m = 0; m <= 2; ++m) CHECK(static_cast<long>(t.obj->count(m)) == sections(x, m));
  }
}

TEST_CASE("tabulators of simple slices", "[right]") {
  // over Δ⁰ the sections are the simplices of x
  for (auto& x : corpus::small_ssets(4)) {
    auto t = tabulator(sset_slice(to_point(x), 0), 2);
    for (int m = 0; m <= 2; ++m) CHECK(t.obj->count(m) == x->count(m));
  }
  // the identity slice has only the projection
  for (int n = 0; n <= 2; ++n) {
    auto t = tabulator(sset_slice(identity_map(simplex(n)), n), 2);
    CHECK(t.obj->nondegenerate_counts() == std::vector<size_t>{1});
  }
}

TEST_CASE("a dimension bound is required", "[right]") {
  auto x = sset_slice(identity_map(simplex(1)), 1);
  try {
    tabulator(x, std::nullopt);
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationRequired);
  }
  CHECK_THROWS_AS(tabulator(x, -1), Error);
}

TEST_CASE("homotopy limits of small diagrams", "[right]") {
  auto d0 = simplex(0), d1 = simplex(1), bd1 = share(boundary(1));

  // over a point: the diagram's value
  auto J0 = share(delta_category(0));
  for (auto& x : corpus::small_ssets(4)) {
    VerticalDiagram<SSetSite> F{J0, {x}, {identity_map(x)}};
    auto hl = holim(F, 2, 2);
    for (int m = 0; m <= 2; ++m) CHECK(hl.obj->count(m) == x->count(m));
  }

  // over a discrete index: the product
  auto J = share(discrete_category({"p", "q"}));
  auto sets = corpus::small_ssets(3);
  for (auto& x : sets)
    for (auto& y : sets) {
      VerticalDiagram<SSetSite> F{J, {x, y}, {identity_map(x), identity_map(y)}};
      auto hl = holim(F, 2, 2);
      auto pr = product(x, y);
      for (int m = 0; m <= 2; ++m) CHECK(hl.obj->count(m) == pr->count(m));
    }

  // the identity of Δ¹: the path object, contractible
  auto id = holim(arrow(identity_map(d1)), 2, 2);
  CHECK(id.obj->nondegenerate_counts() == std::vector<size_t>{3, 3, 1});
  CHECK(h(id.obj) == "(Z)");

  // two points over a point stay two points
  auto f = to_point(bd1);
  f.dst = d0;
  CHECK(holim(arrow(f), 2, 2).obj->nondegenerate_counts() == std::vector<size_t>{2});
}

TEST_CASE("left and right companions", "[right]") {
  auto d0 = simplex(0), d1 = simplex(1);
  auto f = to_point(d1);
  f.dst = d0;
  auto c = make_chain<SSetSite>({d1, d0}, {f});
  auto r = lr_companions(c, 2);
  // mapping cylinder against the cone of the path space
  CHECK(r.left == "[3,4,2]");
  CHECK(r.right == "[3,3,1]");
  CHECK_FALSE(r.isomorphic);

  corpus::Rng rng(52);
  for (int k = 0; k < 5; ++k) {
    auto c0 = corpus::random_sset_chain(rng, 0);
    CHECK(lr_companions(c0, 2).isomorphic);
  }
}

TEST_CASE("right companions restrict to the chain", "[right][property]") {
  corpus::Rng rng(53);
  for (int k = 0; k < 6; ++k) {
    auto c = corpus::random_sset_chain(rng, 1, 3);
    auto e = right_companion(c, 2);
    validate(e.x);
    e.f.validate();
    CHECK(e.x.n == 1);
    // the faces are the ends of the chain
    CHECK(sset_iso(face_slice(e.x, 1).obj.carrier, c.objects[0]).has_value());
    CHECK(sset_iso(face_slice(e.x, 0).obj.carrier, c.objects[1]).has_value());
  }
}

TEST_CASE("right companion of a collapse onto a vertex", "[right]") {
  // B_λ for λ = 011 is a vertex and an edge, so lifts differ off the top cells
  auto d1 = simplex(1);
  SimplicialMap f{d1, d1, {}};
  for (size_t s = 0; s < d1->size(); ++s) f.assign.push_back({d1->at("0"), std::vector<int>(d1->dims[s], 0)});
  f.assign[d1->at("0")] = {d1->at("0"), {}};
  f.assign[d1->at("1")] = {d1->at("0"), {}};
  f.validate();
  auto e = right_companion(make_chain<SSetSite>({d1, d1}, {f}), 2);
  validate(e.x);
  e.f.validate();
  std::set<std::string> names(e.x.carrier->names.begin(), e.x.carrier->names.end());
  CHECK(names.size() == e.x.carrier->size());
}
