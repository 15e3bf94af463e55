#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "wenforge/gauss_code.hpp"
#include "wenforge/search.hpp"

using namespace wenforge;

static GaussDiagram D(const std::string& code) { return parse_gauss_code(code); }

TEST_CASE("bfs trivial and one-step cases") {
  auto a = D("O1+ U1+");
  auto same = bfs_equivalence(a, a, gen::kReid);
  REQUIRE(same.found());
  REQUIRE(same.trace->steps.empty());

  auto b = apply(a, {MoveKind::R1Add, {{0, 1}}, Sign::Neg, "ht", -1});
  auto res = bfs_equivalence(b, a, {MoveKind::R1Del});
  REQUIRE(res.found());
  REQUIRE(res.trace->steps.size() == 1);
  REQUIRE(verify_trace(*res.trace).ok);
}

TEST_CASE("mismatched link type prunes immediately") {
  auto a = D("O1+ U1+");
  auto b = D("w O1+ U1+");
  auto res = bfs_equivalence(a, b, gen::kWenFull);
  REQUIRE_FALSE(res.found());
  REQUIRE(res.stats.nodes_expanded == 0);
}

TEST_CASE("mirror pair: unreachable without sign-changing moves, reachable with wen moves") {
  auto a = D("O1+ U1+");
  auto b = D("O1- U1-");
  SearchBounds small;
  small.max_depth = 4;
  small.max_nodes = 20000;
  // R3 and R8 preserve the signed chord multiset, so the mirror is out of reach
  auto without = bfs_equivalence(a, b, {MoveKind::R3, MoveKind::R8}, small);
  REQUIRE_FALSE(without.found());
  SearchBounds more;
  more.max_depth = 6;
  auto with = bfs_equivalence(a, b, gen::kWenFull, more);
  REQUIRE(with.found());
  REQUIRE(verify_trace(*with.trace).ok);
  REQUIRE(canonical_equal(replay_final(*with.trace), b));
}

TEST_CASE("found traces match targets produced by known sequences") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d0 = random_diagram(2, 1, 1, seed);
    SizeCaps caps{4, 3};
    auto [t, complete] = random_trace(d0, 3, gen::kWenFull, seed + 1000, caps);
    (void)complete;
    auto target = replay_final(t);
    SearchBounds bounds;
    bounds.max_depth = 3;
    bounds.max_chords = 4;
    bounds.max_wens = 3;
    auto res = bfs_equivalence(d0, target, gen::kWenFull, bounds);
    REQUIRE(res.found());
    REQUIRE(canonical_equal(replay_final(*res.trace), target));
  }
}

TEST_CASE("random_diagram: determinism and counts") {
  auto a = random_diagram(3, 2, 1, 12345);
  auto b = random_diagram(3, 2, 1, 12345);
  REQUIRE(serialize_gauss_code(a) == serialize_gauss_code(b));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto d = random_diagram(3, 2, 1, seed);
    REQUIRE(is_valid(d));
    REQUIRE(d.total_chords() == 3);
    REQUIRE(d.total_wens() == 2);
  }
  GaussDiagram empty = random_diagram(0, 0, 1, 0);
  REQUIRE(empty.comp(0).empty());
}

TEST_CASE("random_trace: verified walks, parity under W4-only moveset") {
  auto d0 = D("O1+ U1+");
  auto [t, complete] = random_trace(d0, 6, {MoveKind::W4Add, MoveKind::W4Del}, 7);
  (void)complete;
  REQUIRE(verify_trace(t).ok);
  GaussDiagram cur = d0;
  for (const auto& s : t.steps) {
    cur = apply(cur, s.move);
    REQUIRE(cur.total_wens() % 2 == 0);
  }
  // zero-length request
  auto [z, zc] = random_trace(d0, 0, gen::kReid, 1);
  REQUIRE(z.steps.empty());
  REQUIRE(zc);
}
