#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "wenforge/gauss_code.hpp"
#include "wenforge/reduction.hpp"
#include "wenforge/search.hpp"
#include "wenforge/transpile.hpp"

using namespace wenforge;

static GaussDiagram D(const std::string& code) { return parse_gauss_code(code); }

static bool only_kinds(const Trace& t, const std::set<MoveKind>& allowed) {
  for (const auto& s : t.steps)
    if (!allowed.count(s.move.kind)) return false;
  return true;
}

TEST_CASE("slide_wen fixtures") {
  auto d = D("w O1+ U1+");
  Trace z = slide_wen(d, 1, 0, SlideDirection::Forward);
  REQUIRE(z.steps.empty());
  Trace t = slide_wen(d, 1, 2, SlideDirection::Forward);
  REQUIRE(t.steps.size() == 2);
  REQUIRE(t.steps[0].move.kind == MoveKind::W2);
  REQUIRE(t.steps[1].move.kind == MoveKind::W1);
  REQUIRE(serialize_gauss_code(replay_final(t)) == "O1- U1- w");
}

TEST_CASE("slide_wen property: endpoint predicted by tail passage") {
  int done = 0;
  for (std::uint64_t seed = 0; done < 300; ++seed) {
    REQUIRE(seed < 3000);
    auto d = random_diagram(3 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 3), 1, seed);
    std::mt19937_64 rng(seed ^ 0xabcddcba);
    // pick a wen and a target
    std::vector<std::pair<int, int>> wens;  // (pos, id)
    const auto& seq = d.comp(0);
    for (int p = 0; p < static_cast<int>(seq.size()); ++p)
      if (seq[static_cast<std::size_t>(p)].wen) wens.push_back({p, seq[static_cast<std::size_t>(p)].id});
    auto [p0, wid] = wens[rng() % wens.size()];
    int n = static_cast<int>(seq.size());
    int to = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    SlideDirection dir = (rng() % 2) ? SlideDirection::Forward : SlideDirection::Backward;
    Trace t = slide_wen(d, wid, to, dir);
    auto vr = verify_trace(t);
    REQUIRE(vr.ok);
    REQUIRE(only_kinds(t, {MoveKind::W1, MoveKind::W2}));
    // independent prediction: flip each chord once per Tail passed
    GaussDiagram pred = d;
    int len = (dir == SlideDirection::Forward) ? (to - p0 + n) % n : (p0 - to + n) % n;
    int p = p0;
    for (int k = 0; k < len; ++k) {
      int q = (dir == SlideDirection::Forward) ? (p + 1) % n : (p - 1 + n) % n;
      const Event& e = pred.comp(0)[static_cast<std::size_t>(q)];
      if (e.is_tail()) pred.signs[e.id] = -pred.signs[e.id];
      std::swap(pred.comp(0)[static_cast<std::size_t>(p)], pred.comp(0)[static_cast<std::size_t>(q)]);
      p = q;
    }
    REQUIRE(canonical_equal(vr.final_diagram, pred));
    ++done;
  }
}

TEST_CASE("anchored reductions are slide-related (all wen pairs)") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto d = random_diagram(3, 3, 1, seed);
    std::vector<int> ws;
    for (const auto& e : d.comp(0))
      if (e.wen) ws.push_back(e.id);
    for (int w : ws)
      for (int w2 : ws) {
        auto a = reduce_to_single_wen(d, w);
        auto b = reduce_to_single_wen(d, w2);
        // search the slide orbit of a for b
        const int n = static_cast<int>(a.comp(0).size());
        int pa = -1;
        for (int p = 0; p < n; ++p)
          if (a.comp(0)[static_cast<std::size_t>(p)].wen) pa = p;
        bool found = false;
        for (int len = 0; len < n && !found; ++len)
          for (SlideDirection dir : {SlideDirection::Forward, SlideDirection::Backward}) {
            int to = (dir == SlideDirection::Forward) ? (pa + len) % n : (pa - len % n + n) % n;
            Trace t = slide_wen(a, w, to, dir);
            if (canonical_equal(replay_final(t), b)) {
              REQUIRE(only_kinds(t, {MoveKind::W1, MoveKind::W2}));
              found = true;
              break;
            }
          }
        REQUIRE(found);
      }
  }
}

TEST_CASE("realize_mirror_by_wens fixtures") {
  Trace t = realize_mirror_by_wens(D("O1+ U1+"));
  REQUIRE(t.steps.size() == 4);
  REQUIRE(t.steps.front().move.kind == MoveKind::W4Add);
  REQUIRE(t.steps.back().move.kind == MoveKind::W4Del);
  REQUIRE(canonical_equal(replay_final(t), D("O1- U1-")));

  Trace u = realize_mirror_by_wens(D("w O1+ U1+"));
  REQUIRE(only_kinds(u, {MoveKind::W1, MoveKind::W2}));
  REQUIRE(canonical_equal(replay_final(u), D("w O1- U1-")));
}

TEST_CASE("realize_mirror_by_wens property") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto d = random_diagram(1 + static_cast<int>(seed % 4), static_cast<int>(seed % 4), 1, seed);
    Trace t = realize_mirror_by_wens(d);
    auto vr = verify_trace(t);
    REQUIRE(vr.ok);
    REQUIRE(canonical_equal(vr.final_diagram, mirror(d)));
    if (d.total_wens() >= 1)
      REQUIRE(only_kinds(t, {MoveKind::W1, MoveKind::W2}));
    else
      REQUIRE(only_kinds(t, {MoveKind::W1, MoveKind::W2, MoveKind::W4Add, MoveKind::W4Del}));
  }
}

namespace {

// pick a common wen of d and d_next for a transport test
int pick_common_wen(const GaussDiagram& d, const GaussDiagram& d_next) {
  std::set<int> next_ids;
  for (const auto& e : d_next.comp(0))
    if (e.wen) next_ids.insert(e.id);
  for (const auto& e : d.comp(0))
    if (e.wen && next_ids.count(e.id)) return e.id;
  return -1;
}

}  // namespace

TEST_CASE("transport_move_odd: spectator wen cases") {
  auto d = D("w O1+ O2+ U1+ U2+");
  MoveInstance r8{MoveKind::R8, {{0, 1}, {0, 2}}, {}, "", -1};
  auto d2 = apply(d, r8);
  Trace t = transport_move_odd(d, r8, d2, 1);
  REQUIRE(t.steps.size() == 1);
  REQUIRE(t.steps[0].move.kind == MoveKind::R8);

  // W4Add: reductions coincide exactly
  MoveInstance w4{MoveKind::W4Add, {{0, 2}}, {}, "", -1};
  auto d3 = apply(d, w4);
  Trace e = transport_move_odd(d, w4, d3, 1);
  REQUIRE(e.steps.empty());
  REQUIRE(canonical_equal(reduce_to_single_wen(d, 1), reduce_to_single_wen(d3, 1)));
}

TEST_CASE("transport_move_odd: random contexts for every kind") {
  SizeCaps caps{8, 6};
  std::map<MoveKind, int> done;
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    int wens = 1 + 2 * static_cast<int>(seed % 2);  // 1 or 3
    auto d = random_diagram(2 + static_cast<int>(seed % 3), wens, 1, seed);
    std::mt19937_64 rng(seed * 31 + 7);
    for (MoveKind k : gen::kWenFull) {
      if (done[k] >= 15) continue;
      auto ms = enumerate_moves(d, {k}, caps);
      if (ms.empty()) continue;
      const auto& m = ms[rng() % ms.size()];
      auto d2 = apply(d, m);
      int w = pick_common_wen(d, d2);
      if (w < 0) continue;
      Trace t = transport_move_odd(d, m, d2, w);
      auto vr = verify_trace(t);
      REQUIRE(vr.ok);
      REQUIRE_FALSE(t.uses(MoveKind::W4Add));
      REQUIRE_FALSE(t.uses(MoveKind::W4Del));
      REQUIRE(canonical_equal(t.initial, reduce_to_single_wen(d, w)));
      REQUIRE(canonical_equal(vr.final_diagram, reduce_to_single_wen(d2, w)));
      ++done[k];
    }
  }
  for (MoveKind k : gen::kWenFull) {
    INFO("kind " << kind_name(k));
    REQUIRE(done[k] >= 10);
  }
}

TEST_CASE("transport_move_odd: R3 sign-flip case emits the R8-R3-R8 macro") {
  int macro_seen = 0, single_seen = 0;
  for (std::uint64_t seed = 0; seed < 400 && (macro_seen < 10 || single_seen < 10); ++seed) {
    auto ctx = gen::random_r3_context(seed, 3);
    if (ctx.d.total_wens() % 2 == 0) continue;
    auto d2 = apply(ctx.d, ctx.m);
    int w = pick_common_wen(ctx.d, d2);
    Trace t = transport_move_odd(ctx.d, ctx.m, d2, w);
    REQUIRE(verify_trace(t).ok);
    if (t.steps.size() == 3) {
      REQUIRE(t.steps[0].move.kind == MoveKind::R8);
      REQUIRE(t.steps[1].move.kind == MoveKind::R3);
      REQUIRE(t.steps[2].move.kind == MoveKind::R8);
      // cross-check with a bounded BFS over {R3, R8}
      auto a = reduce_to_single_wen(ctx.d, w);
      auto b = reduce_to_single_wen(d2, w);
      SearchBounds bounds;
      bounds.max_depth = 6;
      auto res = bfs_equivalence(a, b, {MoveKind::R3, MoveKind::R8}, bounds);
      REQUIRE(res.found());
      ++macro_seen;
    } else {
      REQUIRE(t.steps.size() == 1);
      ++single_seen;
    }
  }
  REQUIRE(macro_seen >= 10);
  REQUIRE(single_seen >= 10);
}

TEST_CASE("transport_move_even: wen moves vanish, arc set tracks W4") {
  auto d = D("O1+ U1+");
  auto A = compute_arc_sets(d, 0).first;  // empty set
  MoveInstance w4{MoveKind::W4Add, {{0, 1}}, {}, "", -1};
  auto d2 = apply(d, w4);
  auto [t, A2] = transport_move_even(d, w4, d2, A);
  REQUIRE(t.steps.empty());
  // new tiny arc opposite to the ambient (outside) arc
  REQUIRE(A2.arc_after.at(1) == true);
  REQUIRE(A2.arc_after.at(2) == false);

  // a W2 somewhere: empty trace and identical reductions
  auto dw = D("w O1+ U1+ w");
  auto Aw = compute_arc_sets(dw, 0).first;
  MoveInstance w2{MoveKind::W2, {{0, 0}, {0, 1}}, {}, "", -1};
  auto dw2 = apply(dw, w2);
  auto [tw, Aw2] = transport_move_even(dw, w2, dw2, Aw);
  REQUIRE(tw.steps.empty());
}

TEST_CASE("transport_move_even: random single steps") {
  SizeCaps caps{8, 6};
  std::mt19937_64 rng(99);
  int done = 0;
  for (std::uint64_t seed = 0; done < 120; ++seed) {
    REQUIRE(seed < 4000);
    auto d = random_diagram(2 + static_cast<int>(seed % 3), 2 * static_cast<int>(seed % 3), 1, seed);
    auto ms = enumerate_moves(d, gen::kWenFull, caps);
    if (ms.empty()) continue;
    const auto& m = ms[rng() % ms.size()];
    auto d2 = apply(d, m);
    auto A = (seed % 2) ? compute_arc_sets(d, 0).first : compute_arc_sets(d, 0).second;
    auto [t, A2] = transport_move_even(d, m, d2, A);
    auto vr = verify_trace(t);
    REQUIRE(vr.ok);
    REQUIRE(only_kinds(t, gen::kReid));
    ++done;
  }
}

TEST_CASE("eliminate_w4_single_wen fixtures") {
  Trace cancel = parse_trace(
      "INIT w O1+ U1+\n"
      "MOVE W4ADD c1 p1\n"
      "MOVE W4DEL c1 p1,p2\n");
  Trace out = eliminate_w4_single_wen(cancel);
  REQUIRE(out.steps.empty());

  Trace cross = parse_trace(
      "INIT w O1+ U1+\n"
      "MOVE W4ADD c1 p1\n"
      "MOVE W2 c1 p2,p3\n"
      "MOVE W4DEL c1 p0,p1\n");
  Trace out2 = eliminate_w4_single_wen(cross);
  auto vr = verify_trace(out2);
  REQUIRE(vr.ok);
  REQUIRE_FALSE(out2.uses(MoveKind::W4Add));
  REQUIRE_FALSE(out2.uses(MoveKind::W4Del));
  REQUIRE(canonical_equal(out2.initial, cross.initial));
  REQUIRE(canonical_equal(vr.final_diagram, replay_final(cross)));
}

TEST_CASE("eliminate_w4_single_wen property") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Trace in = gen::random_endpoint_trace(3, 1, 1, 8, seed);
    Trace out = eliminate_w4_single_wen(in);
    auto vr = verify_trace(out);
    REQUIRE(vr.ok);
    REQUIRE_FALSE(out.uses(MoveKind::W4Add));
    REQUIRE_FALSE(out.uses(MoveKind::W4Del));
    REQUIRE(canonical_equal(out.initial, in.initial));
    REQUIRE(canonical_equal(vr.final_diagram, replay_final(in)));
  }
}

TEST_CASE("eliminate_wens_even fixtures") {
  auto d = D("O1+ U1+");
  Trace m = realize_mirror_by_wens(d);
  auto [t1, flag1] = eliminate_wens_even(m);
  REQUIRE(t1.steps.empty());
  REQUIRE(flag1 == true);

  // mirror twice: net arc set returns to empty
  Trace twice = m;
  Trace m2 = realize_mirror_by_wens(replay_final(m));
  for (const auto& s : m2.steps) twice.steps.push_back(s);
  auto [t2, flag2] = eliminate_wens_even(twice);
  REQUIRE(t2.steps.empty());
  REQUIRE(flag2 == false);
}

TEST_CASE("eliminate_wens_even property") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Trace in = gen::random_endpoint_trace(3, 0, 1, 8, seed * 7 + 1);
    auto [out, needs_mirror] = eliminate_wens_even(in);
    auto vr = verify_trace(out);
    REQUIRE(vr.ok);
    REQUIRE(only_kinds(out, gen::kReid));
    REQUIRE(canonical_equal(out.initial, in.initial));
    GaussDiagram fin = replay_final(in);
    if (needs_mirror) fin = mirror(fin);
    REQUIRE(canonical_equal(vr.final_diagram, fin));
  }
}

TEST_CASE("eliminate_wens_link: full-circuit wen on one component") {
  // component 2 wen-free; a trace that mirrors component 1 of a 2-component link
  auto d = D("w O1+ U1+ / O2+ U2+");
  Trace t;
  t.initial = d;
  // slide the wen of component 1 full circle (mirrors its chords)
  Trace s = slide_wen(d, 1, 2, SlideDirection::Forward);
  for (const auto& st : s.steps) t.steps.push_back(st);
  auto res = eliminate_wens_link(t);
  auto vr = verify_trace(res.trace);
  REQUIRE(vr.ok);
  REQUIRE(res.mirror_flags == std::vector<bool>{false, false});
  GaussDiagram expect = replay_final(t);
  REQUIRE(canonical_equal(vr.final_diagram, expect));
}

TEST_CASE("eliminate_wens_link: wen circuit of an even component raises its flag") {
  auto d = D("O1+ U1+ / O2+ U2+");
  Trace t;
  t.initial = d;
  GaussDiagram cur = d;
  MoveInstance add{MoveKind::W4Add, {{1, 0}}, {}, "", -1};
  cur = apply(cur, add);
  t.steps.push_back({add, cur});
  Trace s = slide_wen(cur, 2, 3, SlideDirection::Forward);
  for (const auto& st : s.steps) t.steps.push_back(st);
  cur = replay_final(s);
  MoveInstance del{MoveKind::W4Del, {{1, 3}, {1, 0}}, {}, "", -1};
  cur = apply(cur, del);
  t.steps.push_back({del, cur});
  REQUIRE(canonical_equal(cur, mirror_component(d, 1)));

  auto res = eliminate_wens_link(t);
  REQUIRE(res.trace.steps.empty());
  REQUIRE(res.mirror_flags == std::vector<bool>{false, true});
}

TEST_CASE("eliminate_wens_link property on 2-component traces") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Trace in = gen::random_endpoint_trace(3, 1 + static_cast<int>(seed % 2), 2, 8, seed * 13 + 5);
    auto res = eliminate_wens_link(in);
    auto vr = verify_trace(res.trace);
    REQUIRE(vr.ok);
    REQUIRE(only_kinds(res.trace,
                       {MoveKind::R1Add, MoveKind::R1Del, MoveKind::R2Add, MoveKind::R2Del,
                        MoveKind::R3, MoveKind::R8, MoveKind::W1, MoveKind::W2}));
    GaussDiagram expect = replay_final(in);
    LinkType lt = link_type(in.initial);
    for (std::size_t c = 0; c < res.mirror_flags.size(); ++c) {
      if (res.mirror_flags[c]) {
        REQUIRE(lt.deltas[c] == 0);  // flags only on even components
        expect = mirror_component(expect, static_cast<int>(c));
      }
    }
    REQUIRE(canonical_equal(res.trace.initial, in.initial));
    REQUIRE(canonical_equal(vr.final_diagram, expect));
  }
}
