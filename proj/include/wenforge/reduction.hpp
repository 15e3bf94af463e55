// Wen-reduction constructions: arc sets, single-wen and no-wen reductions,
// mirrors, and the odd/even normal-form classification.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wenforge/diagram.hpp"

namespace wenforge {

// Per-component marking of wen-delimited arcs. Arcs are keyed by the wen they
// start after; a wen-free component carries a single whole-circle flag.
// Membership alternates at every wen on components that have wens.
struct ArcSet {
  std::map<int, bool> arc_after;  // wen-id -> membership of the arc following it
  std::vector<bool> whole;        // per component; used when the component is wen-free

  static ArcSet empty_for(const GaussDiagram& d) {
    ArcSet a;
    a.whole.assign(d.components.size(), false);
    return a;
  }

  // membership of the arc holding the event slot (c, pos)
  bool at_event(const GaussDiagram& d, int c, int pos) const {
    const auto& seq = d.comp(c);
    const int n = static_cast<int>(seq.size());
    for (int off = 1; off < n; ++off) {
      const Event& e = seq[static_cast<std::size_t>(((pos - off) % n + n) % n)];
      if (e.wen) return arc_after.at(e.id);
    }
    return whole.at(static_cast<std::size_t>(c));
  }

  // membership of the arc holding the insertion gap before slot g
  bool at_gap(const GaussDiagram& d, int c, int g) const {
    const auto& seq = d.comp(c);
    const int n = static_cast<int>(seq.size());
    if (n == 0) return whole.at(static_cast<std::size_t>(c));
    for (int off = 1; off <= n; ++off) {
      const Event& e = seq[static_cast<std::size_t>(((g - off) % n + n) % n)];
      if (e.wen) return arc_after.at(e.id);
    }
    return whole.at(static_cast<std::size_t>(c));
  }
};

namespace detail {

inline std::vector<int> wen_positions(const GaussDiagram& d, int c) {
  std::vector<int> out;
  const auto& seq = d.comp(c);
  for (int p = 0; p < static_cast<int>(seq.size()); ++p)
    if (seq[static_cast<std::size_t>(p)].wen) out.push_back(p);
  return out;
}

}  // namespace detail

// A' / A'' of a component with an even wen count: wens w_1..w_2n listed in
// orientation order from the stored anchor; A' is the union of arcs from
// w_{2i-1} to w_{2i}, A'' its complement. A wen-free component gives
// (empty, whole circle).
inline std::pair<ArcSet, ArcSet> compute_arc_sets(const GaussDiagram& d, int c) {
  auto wp = detail::wen_positions(d, c);
  if (wp.size() % 2 != 0)
    throw std::invalid_argument("compute_arc_sets: component has an odd wen count");
  ArcSet ap = ArcSet::empty_for(d);
  ArcSet app = ArcSet::empty_for(d);
  if (wp.empty()) {
    ap.whole[static_cast<std::size_t>(c)] = false;
    app.whole[static_cast<std::size_t>(c)] = true;
    return {ap, app};
  }
  const auto& seq = d.comp(c);
  for (std::size_t j = 0; j < wp.size(); ++j) {
    int id = seq[static_cast<std::size_t>(wp[j])].id;
    ap.arc_after[id] = (j % 2 == 0);   // arcs after w_1, w_3, ... (1-based odd)
    app.arc_after[id] = (j % 2 == 1);
  }
  return {ap, app};
}

// Flip signs of chords whose Tail lies in A, drop every wen not in `keep`.
inline GaussDiagram apply_reduction(const GaussDiagram& d, const ArcSet& A,
                                    const std::set<int>& keep_wens) {
  GaussDiagram out;
  out.signs = d.signs;
  out.components.resize(d.components.size());
  for (int c = 0; c < static_cast<int>(d.components.size()); ++c) {
    const auto& seq = d.comp(c);
    for (int p = 0; p < static_cast<int>(seq.size()); ++p) {
      const Event& e = seq[static_cast<std::size_t>(p)];
      if (e.wen) {
        if (keep_wens.count(e.id)) out.components[static_cast<std::size_t>(c)].push_back(e);
        continue;
      }
      out.components[static_cast<std::size_t>(c)].push_back(e);
      if (e.is_tail() && A.at_event(d, c, p)) out.signs[e.id] = -out.signs[e.id];
    }
  }
  return out;
}

// The arc set A of the single-wen reduction anchored at wen w: wens listed as
// w = w_0, w_1, ..., w_2n following the orientation; A is the union of arcs
// from w_{2i-1} to w_{2i}.
inline ArcSet anchored_arc_set(const GaussDiagram& d, int c, int wen_id) {
  auto wp = detail::wen_positions(d, c);
  if (wp.size() % 2 != 1)
    throw std::invalid_argument("anchored_arc_set: component has an even wen count");
  const auto& seq = d.comp(c);
  int start = -1;
  for (std::size_t j = 0; j < wp.size(); ++j)
    if (seq[static_cast<std::size_t>(wp[j])].id == wen_id) start = static_cast<int>(j);
  if (start < 0)
    throw std::invalid_argument("anchored_arc_set: wen " + std::to_string(wen_id) +
                                " not on component");
  ArcSet a = ArcSet::empty_for(d);
  const int m = static_cast<int>(wp.size());
  for (int k = 0; k < m; ++k) {
    int j = (start + k) % m;  // k-th wen following the anchor
    a.arc_after[seq[static_cast<std::size_t>(wp[static_cast<std::size_t>(j)])].id] = (k % 2 == 1);
  }
  return a;
}

inline int wen_component(const GaussDiagram& d, int wen_id) {
  for (int c = 0; c < static_cast<int>(d.components.size()); ++c)
    for (const auto& e : d.comp(c))
      if (e.wen && e.id == wen_id) return c;
  throw std::invalid_argument("wen " + std::to_string(wen_id) + " not in diagram");
}

// G(w): collapse an odd-wen knot diagram to a single wen anchored at w.
inline GaussDiagram reduce_to_single_wen(const GaussDiagram& d, int wen_id) {
  require_valid(d);
  if (d.components.size() != 1)
    throw std::invalid_argument("reduce_to_single_wen: expects a single component");
  ArcSet a = anchored_arc_set(d, 0, wen_id);
  return apply_reduction(d, a, {wen_id});
}

enum class ArcChoice { Aprime, Adoubleprime };

// G(A): collapse an even-wen knot diagram to a wen-free one.
inline GaussDiagram reduce_to_no_wen(const GaussDiagram& d, ArcChoice which) {
  require_valid(d);
  if (d.components.size() != 1)
    throw std::invalid_argument("reduce_to_no_wen: expects a single component");
  auto [ap, app] = compute_arc_sets(d, 0);
  return apply_reduction(d, which == ArcChoice::Aprime ? ap : app, {});
}

inline GaussDiagram mirror(const GaussDiagram& d) {
  GaussDiagram out = d;
  for (auto& [id, s] : out.signs) s = -s;
  return out;
}

inline GaussDiagram mirror_component(const GaussDiagram& d, int c) {
  GaussDiagram out = d;
  for (const auto& e : d.comp(c))
    if (e.is_tail()) out.signs[e.id] = -out.signs[e.id];
  return out;
}

namespace detail {

// one forward slide step of the unique wen of a single-wen knot diagram
inline GaussDiagram slide_once_forward(const GaussDiagram& d) {
  GaussDiagram out = d;
  auto& seq = out.comp(0);
  const int n = static_cast<int>(seq.size());
  for (int p = 0; p < n; ++p) {
    if (!seq[static_cast<std::size_t>(p)].wen) continue;
    int q = (p + 1) % n;
    if (seq[static_cast<std::size_t>(q)].is_tail())
      out.signs[seq[static_cast<std::size_t>(q)].id] = -out.signs[seq[static_cast<std::size_t>(q)].id];
    std::swap(seq[static_cast<std::size_t>(p)], seq[static_cast<std::size_t>(q)]);
    return out;
  }
  return out;
}

}  // namespace detail

// Corollary-style normal form for knots: odd type reduces to the lexicographic
// minimum over the wen-slide orbit of the single-wen representative (the
// anchor choice and any wen move only slide the wen, so this is stable), even
// type to the minimum over the mirror orbit of the wen-free representative.
inline std::pair<LinkType, std::string> classify(const GaussDiagram& d) {
  require_valid(d);
  if (d.components.size() != 1)
    throw std::invalid_argument("classify: expects a single component (knot case)");
  LinkType t = link_type(d);
  if (t.deltas[0] == 1) {
    auto wp = detail::wen_positions(d, 0);
    int first_wen = d.comp(0)[static_cast<std::size_t>(wp.front())].id;
    GaussDiagram r = reduce_to_single_wen(d, first_wen);
    std::string start = canonical_form(r);
    std::string best = start;
    const int limit = 4 * static_cast<int>(r.comp(0).size()) + 4;
    GaussDiagram cur = r;
    for (int i = 0; i < limit; ++i) {
      cur = detail::slide_once_forward(cur);
      std::string s = canonical_form(cur);
      if (s == start) break;  // forward slides cycle through the whole orbit
      best = std::min(best, s);
    }
    return {t, best};
  }
  GaussDiagram r = reduce_to_no_wen(d, ArcChoice::Aprime);
  std::string a = canonical_form(r);
  std::string b = canonical_form(mirror(r));
  return {t, std::min(a, b)};
}

}  // namespace wenforge
