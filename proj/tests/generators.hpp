// Shared deterministic generators for the property suites.
#pragma once

#include <random>
#include <set>
#include <vector>

#include "wenforge/search.hpp"
#include "wenforge/transpile.hpp"

namespace gen {

using namespace wenforge;

inline const std::set<MoveKind> kReid = {MoveKind::R1Add, MoveKind::R1Del, MoveKind::R2Add,
                                         MoveKind::R2Del, MoveKind::R3, MoveKind::R8};
inline const std::set<MoveKind> kWenOnly = {MoveKind::W1, MoveKind::W2, MoveKind::W4Add,
                                            MoveKind::W4Del};
inline const std::set<MoveKind> kWenFull = {
    MoveKind::R1Add, MoveKind::R1Del, MoveKind::R2Add, MoveKind::R2Del, MoveKind::R3,
    MoveKind::R8,    MoveKind::W1,    MoveKind::W2,    MoveKind::W4Add, MoveKind::W4Del};

// Append W1/W2/W4Del steps bringing every component down to (wen count mod 2)
// wens: repeatedly slide the second wen of a component next to the first and
// cancel the pair.
inline void append_wen_cleanup(Trace& t) {
  GaussDiagram cur = replay_final(t);
  for (int c = 0; c < static_cast<int>(cur.components.size()); ++c) {
    while (wen_count(cur, c) >= 2) {
      int pa = -1, pb = -1;
      const auto& seq = cur.comp(c);
      for (int p = 0; p < static_cast<int>(seq.size()); ++p)
        if (seq[static_cast<std::size_t>(p)].wen) {
          if (pa < 0)
            pa = p;
          else {
            pb = p;
            break;
          }
        }
      int wb = cur.comp(c)[static_cast<std::size_t>(pb)].id;
      Trace s = slide_wen(cur, wb, pa + 1, SlideDirection::Backward);
      for (const auto& st : s.steps) t.steps.push_back(st);
      cur = replay_final(s);
      MoveInstance del{MoveKind::W4Del, {{c, pa}, {c, pa + 1}}, {}, "", -1};
      cur = apply(cur, del);
      t.steps.push_back({del, cur});
    }
  }
}

// Random trace whose endpoints both carry exactly delta_i wens on component i
// (0 or 1): start from a diagram with at most one wen per component, random
// walk over the full wen moveset, then cleanup back to the parities.
inline Trace random_endpoint_trace(int chords, int wens, int mu, int length, std::uint64_t seed) {
  GaussDiagram d0 = random_diagram(chords, 0, mu, seed);
  // distribute `wens` single wens over distinct components
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  for (int w = 1; w <= wens && w <= mu; ++w) {
    int c = (static_cast<int>(rng() % static_cast<std::uint64_t>(mu)) + w) % mu;
    while (wen_count(d0, c) > 0) c = (c + 1) % mu;
    auto& seq = d0.components[static_cast<std::size_t>(c)];
    seq.insert(seq.begin() + static_cast<long>(rng() % (seq.size() + 1)), Event::make_wen(w));
  }
  SizeCaps caps{chords + 2, wens + 4};
  auto [t, complete] = random_trace(d0, length, kWenFull, seed ^ 0x9e3779b97f4a7c15ull, caps);
  (void)complete;
  append_wen_cleanup(t);
  return t;
}

// A guaranteed-applicable R3 site: three chords laid out as the adjacent-pair
// pattern with randomly chosen pair orders and chirality, optionally separated
// by wens so that arc memberships can differ across the site.
struct R3Context {
  GaussDiagram d;
  MoveInstance m;
};

inline R3Context random_r3_context(std::uint64_t seed, int extra_wens) {
  std::mt19937_64 rng(seed);
  auto flip = [&] { return static_cast<int>(rng() % 2) * 2 - 1; };
  int dA = flip(), dB = flip(), dC = flip(), mch = flip();
  Sign s1 = (mch * dA * dB > 0) ? Sign::Pos : Sign::Neg;
  Sign s2 = (mch * dA * dC > 0) ? Sign::Pos : Sign::Neg;
  Sign s3 = (mch * dB * dC > 0) ? Sign::Pos : Sign::Neg;

  std::vector<Event> tt = {Event::chord_end(1, Role::Tail), Event::chord_end(2, Role::Tail)};
  if (dA < 0) std::swap(tt[0], tt[1]);
  std::vector<Event> ht = {Event::chord_end(1, Role::Head), Event::chord_end(3, Role::Tail)};
  if (dB < 0) std::swap(ht[0], ht[1]);
  std::vector<Event> hh = {Event::chord_end(2, Role::Head), Event::chord_end(3, Role::Head)};
  if (dC < 0) std::swap(hh[0], hh[1]);

  R3Context ctx;
  ctx.d.components.emplace_back();
  ctx.d.signs = {{1, s1}, {2, s2}, {3, s3}};
  auto& seq = ctx.d.components[0];
  int wid = 1;
  auto maybe_wens = [&] {
    // at most extra_wens wens spread over the gaps between pair blocks
    if (wid <= extra_wens && rng() % 2) seq.push_back(Event::make_wen(wid++));
  };
  std::vector<std::pair<int, int>> site;
  auto block = [&](const std::vector<Event>& pair) {
    int p = static_cast<int>(seq.size());
    seq.push_back(pair[0]);
    seq.push_back(pair[1]);
    site.push_back({0, p});
    site.push_back({0, p + 1});
  };
  maybe_wens();
  block(tt);
  maybe_wens();
  block(ht);
  maybe_wens();
  block(hh);
  maybe_wens();
  // pad to the requested wen count
  while (wid <= extra_wens) seq.push_back(Event::make_wen(wid++));
  ctx.m = MoveInstance{MoveKind::R3, site, {}, "", -1};
  return ctx;
}

}  // namespace gen
