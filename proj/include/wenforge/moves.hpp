// Gauss-level move catalog: application, enumeration, inversion, step checking.
//
// Conventions:
//  - sites are lists of (component, position) pairs into the stored linear order;
//  - adjacency is cyclic: a pair (p, q) requires q == (p+1) mod n;
//  - insertion positions mean "insert before position p"; p == length appends.
#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "wenforge/diagram.hpp"

namespace wenforge {

enum class MoveKind : int {
  R1Add = 0,
  R1Del,
  R2Add,
  R2Del,
  R3,
  R8,
  W1,
  W2,
  W4Add,
  W4Del,
  Mirror,
  MirrorComponent,
};

inline const char* kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::R1Add: return "R1ADD";
    case MoveKind::R1Del: return "R1DEL";
    case MoveKind::R2Add: return "R2ADD";
    case MoveKind::R2Del: return "R2DEL";
    case MoveKind::R3: return "R3";
    case MoveKind::R8: return "R8";
    case MoveKind::W1: return "W1";
    case MoveKind::W2: return "W2";
    case MoveKind::W4Add: return "W4ADD";
    case MoveKind::W4Del: return "W4DEL";
    case MoveKind::Mirror: return "M";
    case MoveKind::MirrorComponent: return "MC";
  }
  return "?";
}

inline std::optional<MoveKind> kind_from_name(const std::string& s) {
  static const std::pair<const char*, MoveKind> table[] = {
      {"R1ADD", MoveKind::R1Add}, {"R1DEL", MoveKind::R1Del}, {"R2ADD", MoveKind::R2Add},
      {"R2DEL", MoveKind::R2Del}, {"R3", MoveKind::R3},       {"R8", MoveKind::R8},
      {"W1", MoveKind::W1},       {"W2", MoveKind::W2},       {"W4ADD", MoveKind::W4Add},
      {"W4DEL", MoveKind::W4Del}, {"M", MoveKind::Mirror},    {"MC", MoveKind::MirrorComponent},
  };
  for (auto& [n, k] : table)
    if (s == n) return k;
  return std::nullopt;
}

struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MoveInstance {
  MoveKind kind = MoveKind::R1Add;
  std::vector<std::pair<int, int>> site;  // (component, position), 0-based
  std::optional<Sign> sign;
  std::string variant;       // R1ADD: "th"/"ht"; R2ADD: "12"/"21" (+'h' = heads block first)
  int mirror_component = -1; // MC only

  auto key() const {
    int sk = sign ? (*sign == Sign::Pos ? 1 : 2) : 0;
    return std::make_tuple(static_cast<int>(kind), site, sk, variant, mirror_component);
  }
  friend bool operator<(const MoveInstance& a, const MoveInstance& b) { return a.key() < b.key(); }
  friend bool operator==(const MoveInstance& a, const MoveInstance& b) { return a.key() == b.key(); }
};

struct SizeCaps {
  int max_chords;
  int max_wens;
  static SizeCaps around(const GaussDiagram& d, int slack = 2) {
    return {d.total_chords() + slack, d.total_wens() + slack};
  }
};

struct MoveOptions {
  // Restrict R3 to the two-orientation table of the basic picture (all three
  // strands parallel) and its mirror. The full table is the default.
  bool r3_base_only = false;
};

namespace detail {

inline void check_pos(const GaussDiagram& d, int c, int p, const char* what) {
  const auto& seq = d.comp(c);
  if (p < 0 || p >= static_cast<int>(seq.size()))
    throw MoveError(std::string(what) + ": position " + std::to_string(p) +
                    " out of range on component " + std::to_string(c + 1));
}

inline void check_adjacent(const GaussDiagram& d, std::pair<int, int> a, std::pair<int, int> b,
                           const char* what) {
  if (a.first != b.first)
    throw MoveError(std::string(what) + ": pair spans two components");
  check_pos(d, a.first, a.second, what);
  check_pos(d, b.first, b.second, what);
  const int n = static_cast<int>(d.comp(a.first).size());
  if (a.second == b.second || (a.second + 1) % n != b.second)
    throw MoveError(std::string(what) + ": positions " + std::to_string(a.second) + "," +
                    std::to_string(b.second) + " are not cyclically adjacent");
}

inline const Event& at(const GaussDiagram& d, std::pair<int, int> s) {
  return d.comp(s.first)[static_cast<std::size_t>(s.second)];
}

inline void erase_positions(std::vector<Event>& seq, std::vector<int> positions) {
  std::sort(positions.begin(), positions.end(), std::greater<int>());
  for (int p : positions) seq.erase(seq.begin() + p);
}

inline void check_gap(const GaussDiagram& d, int c, int g, const char* what) {
  const auto& seq = d.comp(c);
  if (g < 0 || g > static_cast<int>(seq.size()))
    throw MoveError(std::string(what) + ": insertion position " + std::to_string(g) +
                    " out of range on component " + std::to_string(c + 1));
}

// R3 pattern data recovered from a three-pair site.
struct R3Match {
  int chord1, chord2, chord3;
  int tail_pair;         // index (0..2) of the adjacent Tail-Tail pair in the site
  int dA, dB, dC;        // pair orders: +1 = (t1,t2) / (h1,t3) / (h2,h3)
  int chirality;         // +1 or -1
};

inline R3Match match_r3(const GaussDiagram& d, const std::vector<std::pair<int, int>>& site,
                        const MoveOptions& opts) {
  if (site.size() != 6) throw MoveError("R3: site must list three adjacent pairs (6 positions)");
  for (int i = 0; i < 3; ++i) check_adjacent(d, site[2 * i], site[2 * i + 1], "R3");
  std::set<std::pair<int, int>> slots(site.begin(), site.end());
  if (slots.size() != 6) throw MoveError("R3: site positions overlap");

  int tt = -1, ht = -1, hh = -1;
  for (int i = 0; i < 3; ++i) {
    const Event& a = at(d, site[2 * i]);
    const Event& b = at(d, site[2 * i + 1]);
    if (a.wen || b.wen) throw MoveError("R3: wen at site");
    int tails = (a.is_tail() ? 1 : 0) + (b.is_tail() ? 1 : 0);
    int& slot = (tails == 2) ? tt : (tails == 1 ? ht : hh);
    if (slot != -1) throw MoveError("R3: pairs do not form the R3 role pattern");
    slot = i;
  }
  if (tt < 0 || ht < 0 || hh < 0) throw MoveError("R3: pairs do not form the R3 role pattern");

  const Event& t_first = at(d, site[2 * tt]);
  const Event& t_second = at(d, site[2 * tt + 1]);
  int u = t_first.id, v = t_second.id;
  if (u == v) throw MoveError("R3: tail pair uses one chord twice");

  const Event& ht_a = at(d, site[2 * ht]);
  const Event& ht_b = at(d, site[2 * ht + 1]);
  const Event& head_ev = ht_a.is_head() ? ht_a : ht_b;
  const Event& tail_ev = ht_a.is_head() ? ht_b : ht_a;
  if (head_ev.id != u && head_ev.id != v)
    throw MoveError("R3: mixed pair head does not belong to the tail-pair chords");
  int c3 = tail_ev.id;
  if (c3 == u || c3 == v) throw MoveError("R3: third chord coincides with a tail-pair chord");

  int c1 = head_ev.id;
  int c2 = (c1 == u) ? v : u;

  const Event& hh_a = at(d, site[2 * hh]);
  const Event& hh_b = at(d, site[2 * hh + 1]);
  if (!((hh_a.id == c2 && hh_b.id == c3) || (hh_a.id == c3 && hh_b.id == c2)))
    throw MoveError("R3: head pair does not close the three-chord triangle");

  R3Match r;
  r.chord1 = c1;
  r.chord2 = c2;
  r.chord3 = c3;
  r.tail_pair = tt;
  r.dA = (t_first.id == c1) ? 1 : -1;
  r.dB = ht_a.is_head() ? 1 : -1;
  r.dC = (hh_a.id == c2) ? 1 : -1;

  int s1 = static_cast<int>(d.sign_of(c1));
  int s2 = static_cast<int>(d.sign_of(c2));
  int s3 = static_cast<int>(d.sign_of(c3));
  int e1 = r.dA * r.dB, e2 = r.dA * r.dC, e3 = r.dB * r.dC;
  if (s1 == e1 && s2 == e2 && s3 == e3)
    r.chirality = 1;
  else if (s1 == -e1 && s2 == -e2 && s3 == -e3)
    r.chirality = -1;
  else
    throw MoveError("R3: chord signs incompatible with strand orientations");
  if (opts.r3_base_only && !(r.dA == r.dB && r.dB == r.dC))
    throw MoveError("R3: variant outside the base table");
  return r;
}

}  // namespace detail

inline GaussDiagram apply(const GaussDiagram& d, const MoveInstance& m,
                          const MoveOptions& opts = {}) {
  using namespace detail;
  GaussDiagram out = d;
  switch (m.kind) {
    case MoveKind::R1Add: {
      if (m.site.size() != 1 || !m.sign || (m.variant != "th" && m.variant != "ht"))
        throw MoveError("R1ADD: needs one insertion position, sign and variant th|ht");
      auto [c, g] = m.site[0];
      check_gap(out, c, g, "R1ADD");
      int id = out.fresh_chord_id();
      Role first = (m.variant == "th") ? Role::Tail : Role::Head;
      Role second = (first == Role::Tail) ? Role::Head : Role::Tail;
      auto& seq = out.comp(c);
      seq.insert(seq.begin() + g, {Event::chord_end(id, first), Event::chord_end(id, second)});
      out.signs[id] = *m.sign;
      break;
    }
    case MoveKind::R1Del: {
      if (m.site.size() != 2) throw MoveError("R1DEL: needs two positions");
      check_adjacent(out, m.site[0], m.site[1], "R1DEL");
      const Event& a = at(out, m.site[0]);
      const Event& b = at(out, m.site[1]);
      if (a.wen || b.wen || a.id != b.id || a.role == b.role)
        throw MoveError("R1DEL: events are not the two ends of one chord");
      const int id = a.id;  // copy before erasing invalidates the references
      erase_positions(out.comp(m.site[0].first), {m.site[0].second, m.site[1].second});
      out.signs.erase(id);
      break;
    }
    case MoveKind::R2Add: {
      if (m.site.size() != 2 || !m.sign)
        throw MoveError("R2ADD: needs tail and head insertion positions and a sign");
      bool heads_first = !m.variant.empty() && m.variant.back() == 'h';
      std::string pat = heads_first ? m.variant.substr(0, m.variant.size() - 1) : m.variant;
      if (pat != "12" && pat != "21") throw MoveError("R2ADD: variant must be 12|21 (+'h')");
      auto [c1, g1] = m.site[0];
      auto [c2, g2] = m.site[1];
      check_gap(out, c1, g1, "R2ADD");
      check_gap(out, c2, g2, "R2ADD");
      if (heads_first && !(c1 == c2 && g1 == g2))
        throw MoveError("R2ADD: 'h' variant only at a shared insertion position");
      int a = out.fresh_chord_id();
      int b = a + 1;
      std::vector<Event> tails = {Event::chord_end(a, Role::Tail), Event::chord_end(b, Role::Tail)};
      std::vector<Event> heads = (pat == "12")
                                     ? std::vector<Event>{Event::chord_end(a, Role::Head),
                                                          Event::chord_end(b, Role::Head)}
                                     : std::vector<Event>{Event::chord_end(b, Role::Head),
                                                          Event::chord_end(a, Role::Head)};
      if (heads_first) {
        // one contiguous block [h h t t] at g1
        std::vector<Event> block = heads;
        block.insert(block.end(), tails.begin(), tails.end());
        auto& seq = out.comp(c1);
        seq.insert(seq.begin() + g1, block.begin(), block.end());
      } else {
        auto& seq1 = out.comp(c1);
        seq1.insert(seq1.begin() + g1, tails.begin(), tails.end());
        int gg = g2 + ((c1 == c2 && g2 >= g1) ? 2 : 0);
        auto& seq2 = out.comp(c2);
        seq2.insert(seq2.begin() + gg, heads.begin(), heads.end());
      }
      out.signs[a] = *m.sign;
      out.signs[b] = -*m.sign;
      break;
    }
    case MoveKind::R2Del: {
      if (m.site.size() != 4) throw MoveError("R2DEL: needs four positions");
      check_adjacent(out, m.site[0], m.site[1], "R2DEL");
      check_adjacent(out, m.site[2], m.site[3], "R2DEL");
      const Event& t1 = at(out, m.site[0]);
      const Event& t2 = at(out, m.site[1]);
      const Event& h1 = at(out, m.site[2]);
      const Event& h2 = at(out, m.site[3]);
      if (t1.wen || t2.wen || h1.wen || h2.wen || !t1.is_tail() || !t2.is_tail() ||
          !h1.is_head() || !h2.is_head())
        throw MoveError("R2DEL: pairs must be (Tail,Tail) and (Head,Head)");
      int a = t1.id, b = t2.id;
      if (a == b) throw MoveError("R2DEL: tail pair uses one chord twice");
      if (!((h1.id == a && h2.id == b) || (h1.id == b && h2.id == a)))
        throw MoveError("R2DEL: head pair does not match the tail pair chords");
      if (out.sign_of(a) != -out.sign_of(b))
        throw MoveError("R2DEL: chords must carry opposite signs");
      std::set<std::pair<int, int>> slots(m.site.begin(), m.site.end());
      if (slots.size() != 4) throw MoveError("R2DEL: site positions overlap");
      // group removals per component
      std::vector<int> perc1, perc2;
      for (const auto& s : m.site)
        (s.first == m.site[0].first ? perc1 : perc2).push_back(s.second);
      if (m.site[0].first == m.site[2].first) {
        erase_positions(out.comp(m.site[0].first), perc1);
      } else {
        erase_positions(out.comp(m.site[0].first), perc1);
        erase_positions(out.comp(m.site[2].first), perc2);
      }
      out.signs.erase(a);
      out.signs.erase(b);
      break;
    }
    case MoveKind::R3: {
      detail::match_r3(out, m.site, opts);
      for (int i = 0; i < 3; ++i) {
        auto s1 = m.site[2 * i], s2 = m.site[2 * i + 1];
        std::swap(out.comp(s1.first)[static_cast<std::size_t>(s1.second)],
                  out.comp(s2.first)[static_cast<std::size_t>(s2.second)]);
      }
      break;
    }
    case MoveKind::R8: {
      if (m.site.size() != 2) throw MoveError("R8: needs two positions");
      check_adjacent(out, m.site[0], m.site[1], "R8");
      const Event& a = at(out, m.site[0]);
      const Event& b = at(out, m.site[1]);
      if (!a.is_tail() || !b.is_tail())
        throw MoveError("R8: both events must be Tail (over) endpoints");
      std::swap(out.comp(m.site[0].first)[static_cast<std::size_t>(m.site[0].second)],
                out.comp(m.site[1].first)[static_cast<std::size_t>(m.site[1].second)]);
      break;
    }
    case MoveKind::W1:
    case MoveKind::W2: {
      const char* name = (m.kind == MoveKind::W1) ? "W1" : "W2";
      if (m.site.size() != 2) throw MoveError(std::string(name) + ": needs two positions");
      check_adjacent(out, m.site[0], m.site[1], name);
      const Event& a = at(out, m.site[0]);
      const Event& b = at(out, m.site[1]);
      const Event& wen_ev = a.wen ? a : b;
      const Event& end_ev = a.wen ? b : a;
      if (!wen_ev.wen || end_ev.wen)
        throw MoveError(std::string(name) + ": site must hold one wen and one chord end");
      if (m.kind == MoveKind::W1 && !end_ev.is_head())
        throw MoveError("W1: the chord end must be a Head (under) endpoint");
      if (m.kind == MoveKind::W2 && !end_ev.is_tail())
        throw MoveError("W2: the chord end must be a Tail (over) endpoint");
      int chord = end_ev.id;
      std::swap(out.comp(m.site[0].first)[static_cast<std::size_t>(m.site[0].second)],
                out.comp(m.site[1].first)[static_cast<std::size_t>(m.site[1].second)]);
      if (m.kind == MoveKind::W2) out.signs[chord] = -out.signs[chord];
      break;
    }
    case MoveKind::W4Add: {
      if (m.site.size() != 1) throw MoveError("W4ADD: needs one insertion position");
      auto [c, g] = m.site[0];
      check_gap(out, c, g, "W4ADD");
      int id = out.fresh_wen_id();
      auto& seq = out.comp(c);
      seq.insert(seq.begin() + g, {Event::make_wen(id), Event::make_wen(id + 1)});
      break;
    }
    case MoveKind::W4Del: {
      if (m.site.size() != 2) throw MoveError("W4DEL: needs two positions");
      check_adjacent(out, m.site[0], m.site[1], "W4DEL");
      const Event& a = at(out, m.site[0]);
      const Event& b = at(out, m.site[1]);
      if (!a.wen || !b.wen) throw MoveError("W4DEL: both events must be wens");
      erase_positions(out.comp(m.site[0].first), {m.site[0].second, m.site[1].second});
      break;
    }
    case MoveKind::Mirror: {
      for (int c = 0; c < static_cast<int>(out.components.size()); ++c)
        if (wen_count(out, c) % 2 != 0)
          throw MoveError("M: component " + std::to_string(c + 1) + " has an odd wen count");
      for (auto& [id, s] : out.signs) s = -s;
      break;
    }
    case MoveKind::MirrorComponent: {
      int c = m.mirror_component;
      if (c < 0 || c >= static_cast<int>(out.components.size()))
        throw MoveError("MC: component index out of range");
      if (wen_count(out, c) % 2 != 0)
        throw MoveError("MC: component " + std::to_string(c + 1) + " has an odd wen count");
      for (const auto& e : d.comp(c))
        if (e.is_tail()) out.signs[e.id] = -out.signs[e.id];
      break;
    }
  }
  return out;
}

inline bool applicable(const GaussDiagram& d, const MoveInstance& m, const MoveOptions& opts = {}) {
  try {
    (void)apply(d, m, opts);
    return true;
  } catch (const MoveError&) {
    return false;
  }
}

namespace detail {

// Cyclic adjacency pairs of a component; for n == 2 only (0,1) to avoid
// counting the same unordered adjacency twice.
inline std::vector<std::pair<int, int>> adjacency_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  if (n == 2) out.push_back({0, 1});
  else if (n >= 3)
    for (int p = 0; p < n; ++p) out.push_back({p, (p + 1) % n});
  return out;
}

inline std::vector<int> insertion_gaps(int n) {
  std::vector<int> out;
  if (n == 0) out.push_back(0);
  else
    for (int g = 0; g < n; ++g) out.push_back(g);
  return out;
}

}  // namespace detail

// Every applicable instance of every allowed kind, Add kinds capped by size_caps.
// Deterministic order: (kind, site, params).
inline std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d,
                                                 const std::set<MoveKind>& allowed,
                                                 const SizeCaps& caps,
                                                 const MoveOptions& opts = {}) {
  using namespace detail;
  std::vector<MoveInstance> out;
  const int mu = static_cast<int>(d.components.size());
  auto allow = [&](MoveKind k) { return allowed.count(k) != 0; };
  auto push_if = [&](MoveInstance m) {
    if (applicable(d, m, opts)) out.push_back(std::move(m));
  };

  // deletion-style and exchange-style sites
  for (int c = 0; c < mu; ++c) {
    const int n = static_cast<int>(d.comp(c).size());
    for (auto [p, q] : adjacency_pairs(n)) {
      std::vector<std::pair<int, int>> pr = {{c, p}, {c, q}};
      if (allow(MoveKind::R1Del)) push_if({MoveKind::R1Del, pr, {}, "", -1});
      if (allow(MoveKind::R8)) push_if({MoveKind::R8, pr, {}, "", -1});
      if (allow(MoveKind::W1)) push_if({MoveKind::W1, pr, {}, "", -1});
      if (allow(MoveKind::W2)) push_if({MoveKind::W2, pr, {}, "", -1});
      if (allow(MoveKind::W4Del)) push_if({MoveKind::W4Del, pr, {}, "", -1});
    }
  }

  if (allow(MoveKind::R2Del)) {
    // tail pair x head pair over all components
    std::vector<std::vector<std::pair<int, int>>> pairs;
    for (int c = 0; c < mu; ++c)
      for (auto [p, q] : adjacency_pairs(static_cast<int>(d.comp(c).size())))
        pairs.push_back({{c, p}, {c, q}});
    for (const auto& tp : pairs)
      for (const auto& hp : pairs) {
        if (tp == hp) continue;
        push_if({MoveKind::R2Del, {tp[0], tp[1], hp[0], hp[1]}, {}, "", -1});
      }
  }

  if (allow(MoveKind::R3)) {
    std::vector<std::vector<std::pair<int, int>>> pairs;
    for (int c = 0; c < mu; ++c)
      for (auto [p, q] : adjacency_pairs(static_cast<int>(d.comp(c).size())))
        pairs.push_back({{c, p}, {c, q}});
    const int np = static_cast<int>(pairs.size());
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j)
        for (int k = j + 1; k < np; ++k)
          push_if({MoveKind::R3,
                   {pairs[i][0], pairs[i][1], pairs[j][0], pairs[j][1], pairs[k][0], pairs[k][1]},
                   {},
                   "",
                   -1});
  }

  const bool chords_ok1 = d.total_chords() + 1 <= caps.max_chords;
  const bool chords_ok2 = d.total_chords() + 2 <= caps.max_chords;
  const bool wens_ok = d.total_wens() + 2 <= caps.max_wens;

  if (allow(MoveKind::R1Add) && chords_ok1) {
    for (int c = 0; c < mu; ++c)
      for (int g : insertion_gaps(static_cast<int>(d.comp(c).size())))
        for (Sign s : {Sign::Pos, Sign::Neg})
          for (const char* v : {"th", "ht"})
            push_if({MoveKind::R1Add, {{c, g}}, s, v, -1});
  }
  if (allow(MoveKind::R2Add) && chords_ok2) {
    for (int c1 = 0; c1 < mu; ++c1)
      for (int g1 : insertion_gaps(static_cast<int>(d.comp(c1).size())))
        for (int c2 = 0; c2 < mu; ++c2)
          for (int g2 : insertion_gaps(static_cast<int>(d.comp(c2).size())))
            for (Sign s : {Sign::Pos, Sign::Neg})
              for (const char* v : {"12", "21"}) {
                push_if({MoveKind::R2Add, {{c1, g1}, {c2, g2}}, s, v, -1});
                if (c1 == c2 && g1 == g2)
                  push_if({MoveKind::R2Add, {{c1, g1}, {c2, g2}}, s, std::string(v) + "h", -1});
              }
  }
  if (allow(MoveKind::W4Add) && wens_ok) {
    for (int c = 0; c < mu; ++c)
      for (int g : insertion_gaps(static_cast<int>(d.comp(c).size())))
        push_if({MoveKind::W4Add, {{c, g}}, {}, "", -1});
  }
  if (allow(MoveKind::Mirror)) push_if({MoveKind::Mirror, {}, {}, "", -1});
  if (allow(MoveKind::MirrorComponent))
    for (int c = 0; c < mu; ++c) push_if({MoveKind::MirrorComponent, {}, {}, "", c});

  std::sort(out.begin(), out.end());
  return out;
}

// Inverse instance: apply(d_after, invert(m, d_before, d_after)) recovers d_before
// up to canonical equality.
inline MoveInstance invert(const MoveInstance& m, const GaussDiagram& d_before,
                           const GaussDiagram& d_after) {
  auto check = [&](const MoveInstance& inv) -> MoveInstance {
    if (!canonical_equal(apply(d_before, m), d_after))
      throw MoveError("invert: inconsistent (d_before, m, d_after) triple");
    if (!canonical_equal(apply(d_after, inv), d_before))
      throw MoveError("invert: constructed inverse does not recover d_before");
    return inv;
  };
  // remaining linear position of a block removed at cyclically adjacent slots
  auto del_gap = [&](const GaussDiagram& d, int c, const std::vector<int>& removed,
                     int first_pos) -> int {
    const int n = static_cast<int>(d.comp(c).size());
    bool wraps = false;
    for (std::size_t i = 0; i + 1 < removed.size(); ++i)
      if (removed[i] == n - 1 && removed[i + 1] == 0) wraps = true;
    if (removed.size() == 2 && removed[0] == n - 1 && removed[1] == 0) wraps = true;
    if (wraps) return n - static_cast<int>(removed.size());  // append at the end
    int before = 0;
    for (int r : removed)
      if (r < first_pos) ++before;
    return first_pos - before;
  };
  switch (m.kind) {
    case MoveKind::R1Add: {
      auto [c, g] = m.site[0];
      return check({MoveKind::R1Del, {{c, g}, {c, g + 1}}, {}, "", -1});
    }
    case MoveKind::R1Del: {
      auto [c, p] = m.site[0];
      auto q = m.site[1].second;
      const Event& first = d_before.comp(c)[static_cast<std::size_t>(p)];
      Sign s = d_before.sign_of(first.id);
      std::string v = first.is_tail() ? "th" : "ht";
      int g = del_gap(d_before, c, {p, q}, p);
      return check({MoveKind::R1Add, {{c, g}}, s, v, -1});
    }
    case MoveKind::R2Add: {
      auto [c1, g1] = m.site[0];
      auto [c2, g2] = m.site[1];
      bool heads_first = !m.variant.empty() && m.variant.back() == 'h';
      if (heads_first) {
        // block [h h t t] at g1
        return check({MoveKind::R2Del,
                      {{c1, g1 + 2}, {c1, g1 + 3}, {c1, g1}, {c1, g1 + 1}},
                      {},
                      "",
                      -1});
      }
      // inserting the head block below the tail block shifts the tails by two
      int gt = g1 + ((c1 == c2 && g2 < g1) ? 2 : 0);
      int gg = g2 + ((c1 == c2 && g2 >= g1) ? 2 : 0);
      return check({MoveKind::R2Del, {{c1, gt}, {c1, gt + 1}, {c2, gg}, {c2, gg + 1}}, {}, "", -1});
    }
    case MoveKind::R2Del: {
      int c1 = m.site[0].first, c2 = m.site[2].first;
      const Event& t1 = d_before.comp(c1)[static_cast<std::size_t>(m.site[0].second)];
      const Event& h1 = d_before.comp(c2)[static_cast<std::size_t>(m.site[2].second)];
      Sign s = d_before.sign_of(t1.id);
      std::string v = (h1.id == t1.id) ? "12" : "21";
      std::vector<int> rm1, rm2;
      for (const auto& sl : m.site)
        (sl.first == c1 ? rm1 : rm2).push_back(sl.second);
      if (c1 == c2) {
        // gaps against the full removal set
        auto full_gap = [&](int first_pos, int second_pos) {
          const int n = static_cast<int>(d_before.comp(c1).size());
          if (first_pos == n - 1 && second_pos == 0) return n - 4;  // wrapped pair: append
          int before = 0;
          for (const auto& sl : m.site)
            if (sl.second < first_pos) ++before;
          return first_pos - before;
        };
        int gt = full_gap(m.site[0].second, m.site[1].second);
        int gh = full_gap(m.site[2].second, m.site[3].second);
        if (gt == gh) {
          // contiguous block: decide whether heads physically precede tails by trial
          for (bool hf : {false, true}) {
            MoveInstance cand{MoveKind::R2Add, {{c1, gt}, {c1, gh}}, s, v + (hf ? "h" : ""), -1};
            try {
              if (canonical_equal(apply(d_after, cand), d_before)) return check(cand);
            } catch (const MoveError&) {
            }
          }
          throw MoveError("invert: could not reconstruct R2ADD for contiguous block");
        }
        return check({MoveKind::R2Add, {{c1, gt}, {c1, gh}}, s, v, -1});
      }
      int gt = del_gap(d_before, c1, rm1, m.site[0].second);
      int gh = del_gap(d_before, c2, rm2, m.site[2].second);
      return check({MoveKind::R2Add, {{c1, gt}, {c2, gh}}, s, v, -1});
    }
    case MoveKind::R3:
    case MoveKind::R8:
    case MoveKind::W1:
    case MoveKind::W2:
    case MoveKind::Mirror:
    case MoveKind::MirrorComponent:
      return check(m);  // self-inverse at the same site
    case MoveKind::W4Add: {
      auto [c, g] = m.site[0];
      return check({MoveKind::W4Del, {{c, g}, {c, g + 1}}, {}, "", -1});
    }
    case MoveKind::W4Del: {
      auto [c, p] = m.site[0];
      int g = del_gap(d_before, c, {p, m.site[1].second}, p);
      return check({MoveKind::W4Add, {{c, g}}, {}, "", -1});
    }
  }
  throw MoveError("invert: unknown kind");
}

struct StepCheck {
  enum class Status { Ok, Inapplicable, Mismatch };
  Status status = Status::Ok;
  std::string message;
  bool ok() const { return status == Status::Ok; }
};

inline StepCheck check_step(const GaussDiagram& d, const MoveInstance& m,
                            const GaussDiagram& d_next, const MoveOptions& opts = {}) {
  GaussDiagram applied;
  try {
    applied = apply(d, m, opts);
  } catch (const MoveError& e) {
    return {StepCheck::Status::Inapplicable, std::string("inapplicable: ") + e.what()};
  }
  if (!canonical_equal(applied, d_next))
    return {StepCheck::Status::Mismatch, "result mismatch"};
  return {};
}

// ---- move-spec text: KIND c<i> p<j>[,p<k>...] [sign:+|-] [variant:<tag>] ----

inline std::string move_to_string(const MoveInstance& m) {
  std::ostringstream os;
  os << kind_name(m.kind);
  if (m.kind == MoveKind::MirrorComponent) {
    os << " c" << (m.mirror_component + 1);
  } else {
    int cur = -1;
    bool first_pos = true;
    for (const auto& [c, p] : m.site) {
      if (c != cur) {
        os << " c" << (c + 1) << ' ';
        cur = c;
        first_pos = true;
      }
      if (!first_pos) os << ',';
      os << 'p' << p;
      first_pos = false;
    }
  }
  if (m.sign) os << " sign:" << sign_char(*m.sign);
  if (!m.variant.empty()) os << " variant:" << m.variant;
  return os.str();
}

inline MoveInstance move_from_string(const std::string& line) {
  std::istringstream is(line);
  std::string tok;
  if (!(is >> tok)) throw MoveError("empty move spec");
  MoveInstance m;
  auto k = kind_from_name(tok);
  if (!k) throw MoveError("unknown move kind '" + tok + "'");
  m.kind = *k;
  int cur_comp = -1;
  while (is >> tok) {
    if (tok.rfind("sign:", 0) == 0) {
      if (tok == "sign:+") m.sign = Sign::Pos;
      else if (tok == "sign:-") m.sign = Sign::Neg;
      else throw MoveError("bad sign token '" + tok + "'");
    } else if (tok.rfind("variant:", 0) == 0) {
      m.variant = tok.substr(8);
    } else if (tok[0] == 'c') {
      cur_comp = std::stoi(tok.substr(1)) - 1;
      if (m.kind == MoveKind::MirrorComponent) m.mirror_component = cur_comp;
    } else if (tok[0] == 'p') {
      if (cur_comp < 0) throw MoveError("position before component in move spec");
      std::stringstream ps(tok);
      std::string piece;
      while (std::getline(ps, piece, ',')) {
        if (piece.empty() || piece[0] != 'p') throw MoveError("bad position token '" + tok + "'");
        m.site.push_back({cur_comp, std::stoi(piece.substr(1))});
      }
    } else {
      throw MoveError("unexpected token '" + tok + "' in move spec");
    }
  }
  return m;
}

}  // namespace wenforge
