#include "doctest.h"
#include "helpers.hpp"
#include "segment_walk.hpp"

using namespace pohp;
using namespace pohp::segments;
using testing_helpers::make;

namespace {

Instance complete(int n, const std::vector<std::pair<int, int>>& prec) {
  Instance inst;
  for (int i = 0; i < n; ++i) inst.graph.add_vertex("v" + std::to_string(i));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) inst.graph.add_edge(u, v, (u + v) % 3);
  inst.order = close_order(n, prec);
  return inst;
}

SegmentConfiguration with_solo(const Instance& inst, SegmentConfiguration c, int v) {
  auto r = attach(inst, c, v, Endpoint{-1, End::back});
  REQUIRE(r);
  return *r;
}

}  // namespace

TEST_CASE("attach examples") {
  auto ab = make({"a", "b", "x"}, {{"a", "b"}, {"a", "x"}, {"x", "b"}}, {{"a", "b"}});
  auto c = with_solo(ab, SegmentConfiguration::empty(3), 0);
  auto r = attach(ab, c, 1, Endpoint{0, End::back});
  REQUIRE(r);
  CHECK(r->fragments[0].seq == std::vector<int>{0, 1});
  CHECK(r->fragments[0].kind == Kind::mid);

  auto ba = make({"a", "b"}, {{"a", "b"}}, {{"b", "a"}});
  c = with_solo(ba, SegmentConfiguration::empty(2), 0);
  CHECK_FALSE(attach(ba, c, 1, Endpoint{0, End::back}));

  auto sandwich = make({"a", "b", "x"}, {{"a", "b"}, {"a", "x"}, {"x", "b"}}, {{"a", "x"}, {"x", "b"}});
  c = with_solo(sandwich, SegmentConfiguration::empty(3), 0);
  CHECK_FALSE(attach(sandwich, c, 1, Endpoint{0, End::back}));
  // the unchecked configuration (a,b) is indeed unextendable
  SegmentConfiguration raw = c;
  raw.fragments[0].seq = {0, 1};
  segment_walk::rebuild(raw.fragments[0], 3);
  raw.placed.set(1);
  CHECK_FALSE(order_feasible(sandwich.order, raw));

  CHECK_THROWS_AS(attach(ab, c, 0, Endpoint{-1, End::back}), AlreadyPlaced);
}

TEST_CASE("attach weight accounting") {
  auto g = make({"a", "b"}, {{"a", "b", 3}}, {});
  auto c = with_solo(g, SegmentConfiguration::empty(2), 0);
  auto r = attach(g, c, 1, Endpoint{0, End::back});
  REQUIRE(r);
  CHECK(r->weight == 3);
  CHECK(recompute_weight(g.graph, *r) == 3);
}

TEST_CASE("attach rejects non-adjacent terminal") {
  auto g = make({"a", "b", "c"}, {{"a", "b"}}, {});
  auto c = with_solo(g, SegmentConfiguration::empty(3), 0);
  CHECK_THROWS_AS(attach(g, c, 2, Endpoint{0, End::back}), NotAdjacent);
}

TEST_CASE("merge examples") {
  auto g = make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {});
  auto c = with_solo(g, with_solo(g, SegmentConfiguration::empty(3), 0), 2);
  auto r = merge(g, c, 1, Endpoint{0, End::back}, Endpoint{1, End::front});
  REQUIRE(r);
  REQUIRE(r->fragments.size() == 1);
  CHECK(r->fragments[0].seq == std::vector<int>{0, 1, 2});

  auto h = make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {{"c", "a"}});
  c = with_solo(h, with_solo(h, SegmentConfiguration::empty(3), 0), 2);
  CHECK_FALSE(merge(h, c, 1, Endpoint{0, End::back}, Endpoint{1, End::front}));

  // a before a close fragment whose tail is (t); a's successor x stays outside
  auto k = make({"a", "x", "t", "w", "h"}, {{"a", "w"}, {"w", "t"}, {"t", "h"}, {"a", "x"}}, {{"a", "x"}});
  c = SegmentConfiguration::empty(5);
  c = with_solo(k, c, 2);
  c = *attach(k, c, 4, Endpoint{0, End::back});
  c = *designate_wrap(k, c, 0, 1);
  c = with_solo(k, c, 0);
  auto m = merge(k, c, 3, Endpoint{1, End::back}, Endpoint{0, End::front});
  CHECK_FALSE(m);
  auto raw = segment_walk::raw_apply(c, {segment_walk::MoveKind::merge, 3, 1, 0, End::back, End::front}, 5);
  REQUIRE(raw);
  CHECK_FALSE(order_feasible(k.order, *raw));
}

TEST_CASE("merge kind algebra") {
  auto g = complete(6, {});
  auto c = SegmentConfiguration::empty(6);
  c = with_solo(g, c, 0);
  c = *attach(g, c, 1, Endpoint{0, End::back});
  c = *designate_wrap(g, c, 0, 1);
  c = with_solo(g, c, 2);
  auto r = merge(g, c, 3, Endpoint{1, End::back}, Endpoint{0, End::front});
  REQUIRE(r);
  CHECK(r->fragments.back().kind == Kind::close);
  CHECK(r->fragments.back().seq == std::vector<int>{2, 3, 0, 1});
  CHECK(r->fragments.back().split == 3);

  auto two = with_solo(g, *r, 4);
  two = *attach(g, two, 5, Endpoint{1, End::back});
  CHECK_THROWS_AS(designate_wrap(g, two, 1, 1), CloseAlreadyExists);
}

TEST_CASE("designate_wrap examples") {
  auto g = make({"a", "b"}, {{"a", "b"}}, {});
  auto c = with_solo(g, SegmentConfiguration::empty(2), 0);
  c = *attach(g, c, 1, Endpoint{0, End::back});
  auto r = designate_wrap(g, c, 0, 1);
  REQUIRE(r);
  CHECK(r->fragments[0].kind == Kind::close);
  CHECK(r->fragments[0].tail.test(0));
  CHECK(r->fragments[0].head.test(1));

  auto h = make({"a", "b", "x"}, {{"a", "b"}, {"a", "x"}}, {{"a", "x"}});
  c = with_solo(h, SegmentConfiguration::empty(3), 0);
  c = *attach(h, c, 1, Endpoint{0, End::back});
  CHECK_FALSE(designate_wrap(h, c, 0, 1));

  auto k = make({"a", "b", "c"}, {{"a", "b"}}, {{"b", "c"}});
  c = with_solo(k, SegmentConfiguration::empty(3), 2);
  c = with_solo(k, c, 0);
  c = *attach(k, c, 1, Endpoint{1, End::back});
  // tail (a), head (b): b, c, a is a completion
  auto lam = designate_wrap(k, c, 1, 1);
  REQUIRE(lam);
  SegmentConfiguration full = *lam;
  CHECK(order_feasible(k.order, full));
  // tail (a,b) would need c after the last vertex
  CHECK_FALSE(designate_wrap(k, c, 1, 2));
}

TEST_CASE("order_feasible examples") {
  auto g = make({"a", "b"}, {{"a", "b"}}, {{"a", "b"}});
  CHECK(order_feasible(g.order, SegmentConfiguration::empty(2)));
  auto c = SegmentConfiguration::empty(2);
  Fragment f;
  f.seq = {1, 0};
  segment_walk::rebuild(f, 2);
  c.fragments.push_back(f);
  c.placed = f.vertices;
  CHECK_FALSE(order_feasible(g.order, c));
  CHECK_THROWS_AS(order_feasible(close_order(13, {}), SegmentConfiguration::empty(13)), TooLarge);
}

TEST_CASE("local attach rules need the block check") {
  // P=(a), Q=(c,d), π={a<d, c<w}: appending w to P contradicts π only through Q
  auto g = complete(4, {{0, 2}, {1, 3}});  // a=0, c=1, d=2, w=3
  auto c = SegmentConfiguration::empty(4);
  c = with_solo(g, c, 0);
  c = with_solo(g, c, 1);
  c = *attach(g, c, 2, Endpoint{1, End::back});
  CHECK_FALSE(attach(g, c, 3, Endpoint{0, End::back}));
}

TEST_CASE("calculus matches the reference predicate on random walks") {
  std::mt19937 rng(2024);
  segment_walk::WalkStats st;
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    std::vector<std::pair<int, int>> prec;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 100 < 25) prec.emplace_back(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    auto inst = complete(n, prec);
    segment_walk::walk(inst, rng, st);
  }
  CHECK(st.discrepancies == 0);
  CHECK(st.checked > 1000);
}
