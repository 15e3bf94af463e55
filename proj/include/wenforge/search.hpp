// Bounded brute-force equivalence search over the move graph, plus seeded
// random diagram / trace generation.
#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wenforge/moves.hpp"
#include "wenforge/trace.hpp"

namespace wenforge {

struct SearchBounds {
  int max_depth = 8;
  long max_nodes = 1000000;
  int max_chords = -1;  // -1: input size + 2
  int max_wens = -1;
};

struct FrontierStats {
  long nodes_seen = 0;
  long nodes_expanded = 0;
  int depth_reached = 0;
};

// Found holds a verified trace; Exhausted is never a claim of inequivalence.
struct SearchResult {
  std::optional<Trace> trace;
  FrontierStats stats;
  bool found() const { return trace.has_value(); }
};

// Deterministic BFS from a to b over canonical forms. Nodes whose link type
// differs from b's are pruned (sound: every move preserves the type).
inline SearchResult bfs_equivalence(const GaussDiagram& a, const GaussDiagram& b,
                                    const std::set<MoveKind>& allowed, SearchBounds bounds = {},
                                    const MoveOptions& opts = {}) {
  require_valid(a);
  require_valid(b);
  SizeCaps caps{bounds.max_chords >= 0 ? bounds.max_chords
                                       : std::max(a.total_chords(), b.total_chords()) + 2,
                bounds.max_wens >= 0 ? bounds.max_wens
                                     : std::max(a.total_wens(), b.total_wens()) + 2};
  if (a.total_chords() > caps.max_chords || b.total_chords() > caps.max_chords ||
      a.total_wens() > caps.max_wens || b.total_wens() > caps.max_wens)
    throw std::invalid_argument("bfs_equivalence: size caps below input sizes");

  SearchResult res;
  const std::string goal = canonical_form(b);
  const LinkType goal_type = link_type(b);

  struct Node {
    std::string parent;
    MoveInstance via;       // applied to the parent's stored diagram
    GaussDiagram diagram;   // linear representative reached by the BFS
    int depth = 0;
  };
  std::map<std::string, Node> nodes;

  const std::string start = canonical_form(a);
  if (!(link_type(a) == goal_type)) return res;  // pruned immediately
  nodes[start] = {"", {}, a, 0};
  res.stats.nodes_seen = 1;

  auto reconstruct = [&](const std::string& key) {
    std::vector<std::pair<std::string, MoveInstance>> rev;
    std::string cur = key;
    while (cur != start) {
      rev.push_back({nodes[cur].parent, nodes[cur].via});
      cur = nodes[cur].parent;
    }
    Trace t;
    t.initial = a;
    GaussDiagram d = a;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
      d = apply(d, it->second, opts);
      t.steps.push_back({it->second, d});
    }
    // re-verify before returning
    auto vr = verify_trace(t, opts);
    if (!vr.ok || !canonical_equal(vr.final_diagram, b))
      throw MoveError("bfs_equivalence: reconstructed trace failed verification");
    return t;
  };

  if (start == goal) {
    Trace t;
    t.initial = a;
    res.trace = t;
    return res;
  }

  std::deque<std::string> queue = {start};
  while (!queue.empty()) {
    std::string key = queue.front();
    queue.pop_front();
    const Node cur = nodes[key];
    if (cur.depth >= bounds.max_depth) continue;
    ++res.stats.nodes_expanded;
    auto moves = enumerate_moves(cur.diagram, allowed, caps, opts);
    std::vector<std::pair<std::string, MoveInstance>> children;
    for (const auto& m : moves) {
      GaussDiagram next = apply(cur.diagram, m, opts);
      children.push_back({canonical_form(next), m});
    }
    std::sort(children.begin(), children.end(),
              [](const auto& x, const auto& y) {
                return x.first < y.first || (x.first == y.first && x.second < y.second);
              });
    for (auto& [ck, cm] : children) {
      if (nodes.count(ck)) continue;
      GaussDiagram nd = apply(cur.diagram, cm, opts);
      nodes[ck] = {key, cm, nd, cur.depth + 1};
      ++res.stats.nodes_seen;
      res.stats.depth_reached = std::max(res.stats.depth_reached, cur.depth + 1);
      if (ck == goal) {
        res.trace = reconstruct(ck);
        return res;
      }
      if (res.stats.nodes_seen >= bounds.max_nodes) return res;
      queue.push_back(ck);
    }
  }
  return res;
}

namespace detail {

inline std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

}  // namespace detail

// Uniform random diagram with k chords, m wens, mu components. Deterministic
// per seed; always valid.
inline GaussDiagram random_diagram(int k, int m, int mu, std::uint64_t seed) {
  if (k < 0 || m < 0 || mu < 1) throw std::invalid_argument("random_diagram: bad parameters");
  std::mt19937_64 rng(seed);
  GaussDiagram d;
  d.components.resize(static_cast<std::size_t>(mu));
  std::vector<Event> events;
  for (int c = 1; c <= k; ++c) {
    events.push_back(Event::chord_end(c, Role::Tail));
    events.push_back(Event::chord_end(c, Role::Head));
    d.signs[c] = detail::rnd_below(rng, 2) ? Sign::Pos : Sign::Neg;
  }
  for (int w = 1; w <= m; ++w) events.push_back(Event::make_wen(w));
  for (const auto& e : events) {
    auto c = detail::rnd_below(rng, static_cast<std::uint64_t>(mu));
    auto& seq = d.components[static_cast<std::size_t>(c)];
    auto pos = detail::rnd_below(rng, seq.size() + 1);
    seq.insert(seq.begin() + static_cast<long>(pos), e);
  }
  return d;
}

// Random walk of up to `length` steps over enumerate_moves. Returns the trace
// and whether the full length was reached.
inline std::pair<Trace, bool> random_trace(const GaussDiagram& d0, int length,
                                           const std::set<MoveKind>& allowed, std::uint64_t seed,
                                           std::optional<SizeCaps> caps_in = std::nullopt,
                                           const MoveOptions& opts = {}) {
  require_valid(d0);
  SizeCaps caps = caps_in ? *caps_in : SizeCaps::around(d0);
  std::mt19937_64 rng(seed);
  Trace t;
  t.initial = d0;
  GaussDiagram cur = d0;
  for (int i = 0; i < length; ++i) {
    auto moves = enumerate_moves(cur, allowed, caps, opts);
    if (moves.empty()) return {t, false};
    const auto& m = moves[detail::rnd_below(rng, moves.size())];
    cur = apply(cur, m, opts);
    t.steps.push_back({m, cur});
  }
  return {t, true};
}

}  // namespace wenforge
