#include <catch_amalgamated.hpp>

#include "equipkit/corpus.hpp"
#include "equipkit/fincat.hpp"

using namespace equipkit;

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// number of monotone maps [m] -> [n], by brute force
long monotone_count(int m, int n) {
  long count = 0;
  std::vector<int> v(m + 1, 0);
  while (true) {
    bool mono = true;
    for (int i = 0; i < m; ++i) mono = mono && v[i] <= v[i + 1];
    count += mono;
    int k = 0;
    while (k <= m && ++v[k] > n) v[k++] = 0;
    if (k > m) break;
  }
  return count;
}

long count_functors(const CatPtr& C, const CatPtr& D) {
  return for_each_functor(C, D, 1000000, [](const FinFunctor&) { return true; });
}

}  // namespace

TEST_CASE("delta categories", "[fincat]") {
  for (int n = 0; n <= 4; ++n) {
    auto d = delta_category(n);
    d.validate();
    CHECK(d.num_objects() == n + 1);
    CHECK(d.num_morphisms() == (n + 1) * (n + 2) / 2);
  }
  auto d2 = delta_category(2);
  CHECK(d2.compose(d2.morphism("12"), d2.morphism("01")) == d2.morphism("02"));
}

TEST_CASE("validation rejects broken composition tables", "[fincat]") {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.morphisms = {{"ia", "a", "a"}, {"ib", "b", "b"}, {"f", "a", "b"}};
  raw.identities = {{"a", "ia"}, {"b", "ib"}};
  raw.compose = {{"ia", "ia", "ia"}, {"ib", "ib", "ib"}, {"f", "ia", "f"}};
  try {
    validate_category(raw);
    FAIL("missing composite accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingComposite);
  }
  raw.compose.push_back({"ib", "f", "f"});
  CHECK_NOTHROW(validate_category(raw));
  raw.compose.push_back({"ib", "f", "ib"});
  CHECK_THROWS_AS(validate_category(raw), Error);
}

TEST_CASE("raw round trip", "[fincat]") {
  corpus::Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    auto c = corpus::random_category(rng, 4);
    CHECK(validate_category(to_raw(c)) == c);
    CHECK(opposite(opposite(c)) == c);
  }
}

TEST_CASE("functors between deltas are monotone maps", "[fincat]") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      long oracle = monotone_count(m, n);
      CHECK(oracle == binomial(m + n + 1, m + 1));
      CHECK(count_functors(share(delta_category(m)), share(delta_category(n))) == oracle);
    }
  // span -> [1]: F0 <= F1 and F0 <= F2
  CHECK(count_functors(share(span_category()), share(delta_category(1))) == 5);
}

TEST_CASE("functor enumeration matches brute force", "[fincat][property]") {
  corpus::Rng rng(23);
  for (int k = 0; k < 25; ++k) {
    auto C = share(corpus::random_category(rng, 3, "c"));
    auto D = share(corpus::random_category(rng, 3, "d"));
    long enumerated = for_each_functor(C, D, 1000000, [](const FinFunctor& f) {
      CHECK_FALSE(f.violation().has_value());
      return true;
    });
    // every assignment of objects and morphisms, kept when it is a functor
    long brute = 0;
    FinFunctor f{C, D, std::vector<int>(C->num_objects()), std::vector<int>(C->num_morphisms())};
    std::function<void(int)> mors = [&](int m) {
      if (m == C->num_morphisms()) {
        brute += !f.violation().has_value();
        return;
      }
      for (int n = 0; n < D->num_morphisms(); ++n) {
        f.mor[m] = n;
        mors(m + 1);
      }
    };
    std::function<void(int)> objs = [&](int x) {
      if (x == C->num_objects()) return mors(0);
      for (int y = 0; y < D->num_objects(); ++y) {
        f.ob[x] = y;
        objs(x + 1);
      }
    };
    objs(0);
    CHECK(enumerated == brute);
  }
}

TEST_CASE("functor composition and identities", "[fincat]") {
  corpus::Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    auto A = share(corpus::random_category(rng, 3, "a"));
    auto B = share(corpus::random_category(rng, 3, "b"));
    auto C = share(corpus::random_category(rng, 3, "c"));
    auto f = corpus::random_functor(rng, A, B);
    auto g = corpus::random_functor(rng, B, C);
    auto gf = compose(g, f);
    gf.validate();
    CHECK(compose(identity_functor(B), f) == f);
    CHECK(compose(f, identity_functor(A)) == f);
    for (int m = 0; m < A->num_morphisms(); ++m) CHECK(gf.mor[m] == g.mor[f.mor[m]]);
  }
}

TEST_CASE("Grothendieck construction sizes", "[fincat]") {
  corpus::Rng rng(5);
  for (auto& F : corpus::cat_diagrams(rng, 12)) {
    auto g = grothendieck(F);
    g.cat->validate();
    long objs = 0, mors = 0;
    const auto& J = *F.index;
    for (auto& c : F.nodes) objs += c->num_objects();
    for (int a = 0; a < J.num_morphisms(); ++a) {
      const auto& Fj = *F.nodes[J.dst(a)];
      for (int x = 0; x < F.nodes[J.src(a)]->num_objects(); ++x)
        for (int f = 0; f < Fj.num_morphisms(); ++f) mors += Fj.src(f) == F.edges[a].ob[x];
    }
    CHECK(g.cat->num_objects() == objs);
    CHECK(g.cat->num_morphisms() == mors);
  }
}

TEST_CASE("Grothendieck of a functor out of a point", "[fincat]") {
  auto d0 = share(delta_category(0)), d1 = share(delta_category(1));
  auto F = functor_by_ids(d0, d1, {{"0", "0"}}, {});
  auto g = grothendieck(arrow_diagram(F));
  CHECK(g.cat->num_objects() == 3);
  CHECK(g.cat->num_morphisms() == 6);
}

TEST_CASE("nerves", "[fincat]") {
  for (int n = 0; n <= 3; ++n) {
    auto N = nerve(delta_category(n), n);
    auto counts = N.nondegenerate_counts();
    REQUIRE(static_cast<int>(counts.size()) == n + 1);
    for (int k = 0; k <= n; ++k) CHECK(static_cast<long>(counts[k]) == binomial(n + 1, k + 1));
    N.validate();
  }
  auto e = corpus::idempotent_category();
  auto nv = nerve_chains(e, 3);
  CHECK(nv.truncated);
  CHECK_THROWS_AS(nerve(e, 3, true), Error);
  try {
    nerve(e, 3, true);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NerveUnbounded);
  }
}

TEST_CASE("Gro of the index category", "[fincat]") {
  // nondegenerate chains of [1]: 0, 1, 01; faces 01 -> 0, 01 -> 1
  auto g = gro_of_index(delta_category(1), 2);
  CHECK(g.cat->num_objects() == 3);
  CHECK(g.cat->num_morphisms() == 5);
  auto s = gro_of_index(span_category(), 2);
  CHECK(s.cat->num_objects() == 5);
  CHECK(s.cat->num_morphisms() == 9);
}
