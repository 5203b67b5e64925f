#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace bgi;
using namespace bgi::testing;

TEST_CASE("validation") {
  auto single = Bigraph::validate({"v"}, {{"v", "v"}}, {});
  CHECK(single.size() == 1);
  auto tensor = Bigraph::validate({"v", "w"}, {{"v", "v"}, {"w", "w"}, {"v", "w"}, {"w", "v"}}, {{"v", "w"}});
  CHECK(classify_pair(tensor, 0, 1) == PairKind::Tensor);
  CHECK(tensor.e2(1, 0));
  try {
    Bigraph::validate({"v"}, {{"v", "v"}}, {{"v", "v"}});
    FAIL("expected SelfLoopInE2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SelfLoopInE2);
  }
  try {
    Bigraph::validate({"v", "w"}, {{"v", "v"}}, {});
    FAIL("expected DiagonalMissing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DiagonalMissing);
  }
  try {
    Bigraph::validate({"v"}, {{"v", "v"}, {"v", "x"}}, {});
    FAIL("expected UnknownVertex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownVertex);
  }
}

TEST_CASE("pair classification") {
  auto boolean = Bigraph::validate({"v", "w"}, {{"v", "v"}, {"w", "w"}}, {});
  CHECK(classify_pair(boolean, 0, 1) == PairKind::Boolean);
  auto mono = Bigraph::validate({"v", "w"}, {{"v", "v"}, {"w", "w"}, {"v", "w"}}, {});
  CHECK(classify_pair(mono, 0, 1) == PairKind::Monotone);
  CHECK(classify_pair(mono, 1, 0) == PairKind::AntiMonotone);
  auto free = Bigraph::validate({"v", "w"}, {{"v", "v"}, {"w", "w"}, {"v", "w"}, {"w", "v"}}, {});
  CHECK(classify_pair(free, 0, 1) == PairKind::Free);
  try {
    classify_pair(free, 0, 0);
    FAIL("expected SamePair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SamePair);
  }
  for (auto kind : {PairKind::Boolean, PairKind::Monotone, PairKind::AntiMonotone, PairKind::Free, PairKind::Tensor})
    CHECK(parse_pair_kind(pair_kind_name(kind)) == kind);
}

TEST_CASE("E2 normalization") {
  auto g = Bigraph::validate({"v", "w"}, {{"v", "v"}, {"w", "w"}}, {{"v", "w"}});
  auto n = normalize_e2(g);
  CHECK(!n.e2(0, 1));
  CHECK(normalize_e2(n) == n);
  auto t = pair_graph(PairKind::Tensor);
  CHECK(normalize_e2(t) == t);
  CHECK(is_normalized(t));
  CHECK(!is_normalized(g));
}

TEST_CASE("from_pairwise") {
  auto all_tensor = from_pairwise({"a", "b", "c"}, {{{"a", "b"}, PairKind::Tensor},
                                                    {{"a", "c"}, PairKind::Tensor},
                                                    {{"b", "c"}, PairKind::Tensor}});
  for (Vertex v = 0; v < 3; ++v)
    for (Vertex w = 0; w < 3; ++w) {
      CHECK(all_tensor.e1(v, w));
      CHECK(all_tensor.e2(v, w) == (v != w));
    }
  auto all_free = from_pairwise({"a", "b"}, {{{"a", "b"}, PairKind::Free}});
  CHECK(all_free.e1(0, 1));
  CHECK(all_free.e1(1, 0));
  CHECK(!all_free.e2(0, 1));
  try {
    from_pairwise({"v", "w"}, {{{"v", "w"}, PairKind::Monotone}, {{"w", "v"}, PairKind::Monotone}});
    FAIL("expected InconsistentKinds");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentKinds);
  }
  // Round trip through classify_pair on random graphs.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto g = normalize_e2(random_bigraph(4, rng));
    std::map<std::pair<std::string, std::string>, PairKind> kinds;
    for (Vertex v = 0; v < 4; ++v)
      for (Vertex w = 0; w < 4; ++w)
        if (v != w) kinds[{g.name(v), g.name(w)}] = classify_pair(g, v, w);
    CHECK(from_pairwise(g.vertices(), kinds) == g);
    for (Vertex v = 0; v < 4; ++v)
      for (Vertex w = 0; w < 4; ++w) {
        if (v == w) continue;
        if (classify_pair(g, v, w) == PairKind::Monotone) CHECK(classify_pair(g, w, v) == PairKind::AntiMonotone);
      }
  }
}

TEST_CASE("induced sub-bigraph") {
  auto g = from_pairwise({"a", "b", "c"}, {{{"a", "b"}, PairKind::Boolean},
                                           {{"a", "c"}, PairKind::Free},
                                           {{"b", "c"}, PairKind::Tensor}});
  CHECK(induced_subbigraph(g, {0, 1, 2}) == g);
  auto ab = induced_subbigraph(g, {0, 1});
  CHECK(ab.size() == 2);
  CHECK(classify_pair(ab, 0, 1) == PairKind::Boolean);
  CHECK(induced_subbigraph(g, {2}).size() == 1);
  CHECK_THROWS_AS(induced_subbigraph(g, {5}), Error);
}

TEST_CASE("operad composition") {
  std::mt19937_64 rng(5);
  auto g = random_bigraph(3, rng);
  CHECK(operad_compose(operad_identity(), {g}).composed.same_shape(g));
  // Unit blocks reproduce the outer graph.
  CHECK(operad_compose(g, {operad_identity(), operad_identity(), operad_identity()}).composed.same_shape(g));
  auto free2 = pair_graph(PairKind::Free);
  auto composed = operad_compose(free2, {operad_identity(), operad_identity()}).composed;
  CHECK(classify_pair(composed, 0, 1) == PairKind::Free);
  CHECK_THROWS_AS(operad_compose(free2, {g}), Error);

  // Cross-block edges follow the outer graph; inner edges are copied.
  auto outer = pair_graph(PairKind::Monotone);
  auto inner0 = pair_graph(PairKind::Boolean), inner1 = pair_graph(PairKind::Tensor);
  auto c = operad_compose(outer, {inner0, inner1});
  CHECK(c.composed.size() == 4);
  CHECK(classify_pair(c.composed, 0, 1) == PairKind::Boolean);
  CHECK(classify_pair(c.composed, 2, 3) == PairKind::Tensor);
  for (Vertex a : {0, 1})
    for (Vertex b : {2, 3}) CHECK(classify_pair(c.composed, a, b) == PairKind::Monotone);

  // Associativity: (outer o inner) o inner' = outer o (inner o inner').
  for (int t = 0; t < 20; ++t) {
    auto o = random_bigraph(2, rng);
    std::vector<Bigraph> mid = {random_bigraph(2, rng), random_bigraph(1, rng)};
    std::vector<Bigraph> leaves = {random_bigraph(2, rng), random_bigraph(1, rng), random_bigraph(2, rng)};
    auto left = operad_compose(operad_compose(o, mid).composed, leaves).composed;
    auto right = operad_compose(o, {operad_compose(mid[0], {leaves[0], leaves[1]}).composed,
                                    operad_compose(mid[1], {leaves[2]}).composed})
                     .composed;
    CHECK(left.same_shape(right));
  }
}

TEST_CASE("symmetric group action") {
  auto mono = pair_graph(PairKind::Monotone);
  auto swapped = permute(mono, {1, 0});
  CHECK(classify_pair(swapped, 0, 1) == PairKind::AntiMonotone);
  CHECK(permute(mono, {0, 1}) == mono);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto g = random_bigraph(4, rng);
    std::vector<std::size_t> s = {0, 1, 2, 3};
    std::shuffle(s.begin(), s.end(), rng);
    std::vector<std::size_t> inv(4);
    for (std::size_t i = 0; i < 4; ++i) inv[s[i]] = i;
    CHECK(permute(permute(g, s), inv).same_shape(g));
  }
}

TEST_CASE("site models") {
  auto single = realize_sites(Bigraph::validate({"v"}, {{"v", "v"}}, {}));
  CHECK(single.sites.size() == 1);
  CHECK(single.s1[0].size() == 1);
  CHECK(single.s2[0].empty());

  auto t = realize_sites(pair_graph(PairKind::Tensor));
  for (std::size_t s : t.s1[0]) CHECK(std::find(t.s1[1].begin(), t.s1[1].end(), s) == t.s1[1].end());

  // Disjoint active sites, no projections: all tensor.
  auto m = SiteModel::validate({"v", "w"}, {"a", "b"}, {{0}, {1}}, {{}, {}});
  CHECK(classify_pair(bigraph_of_sites(m), 0, 1) == PairKind::Tensor);
  // Shared site: free.
  m = SiteModel::validate({"v", "w"}, {"a"}, {{0}, {0}}, {{}, {}});
  CHECK(classify_pair(bigraph_of_sites(m), 0, 1) == PairKind::Free);
  // Each projected on the other's active site: Boolean.
  m = SiteModel::validate({"v", "w"}, {"a", "b"}, {{0}, {1}}, {{1}, {0}});
  CHECK(classify_pair(bigraph_of_sites(m), 0, 1) == PairKind::Boolean);
  try {
    SiteModel::validate({"v"}, {"a"}, {{}}, {{0}});
    FAIL("expected EmptyS1");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyS1);
  }

  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int t = 0; t < 10; ++t) {
      auto g = normalize_e2(random_bigraph(n, rng));
      auto sites = realize_sites(g);
      CHECK(bigraph_of_sites(sites).same_shape(g));
      CHECK(bigraph_of_sites(realize_sites(bigraph_of_sites(sites))).same_shape(bigraph_of_sites(sites)));
    }
  }
}
