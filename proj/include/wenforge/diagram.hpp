// Core Gauss-diagram data model: events, diagrams, validation, canonical form.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wenforge {

enum class Sign : int { Pos = 1, Neg = -1 };

inline Sign operator-(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }
inline Sign operator*(Sign a, Sign b) { return a == b ? Sign::Pos : Sign::Neg; }
inline char sign_char(Sign s) { return s == Sign::Pos ? '+' : '-'; }

// Tail = initial endpoint (over-crossing), Head = terminal endpoint (under-crossing).
enum class Role : int { Tail = 0, Head = 1 };

struct Event {
  bool wen = false;
  int id = 0;               // wen-id or chord-id, opaque
  Role role = Role::Tail;   // meaningful for chord ends only

  static Event make_wen(int id) {
    Event e;
    e.wen = true;
    e.id = id;
    return e;
  }
  static Event chord_end(int id, Role r) {
    Event e;
    e.id = id;
    e.role = r;
    return e;
  }
  bool is_tail() const { return !wen && role == Role::Tail; }
  bool is_head() const { return !wen && role == Role::Head; }
  friend bool operator==(const Event& a, const Event& b) {
    return a.wen == b.wen && a.id == b.id && (a.wen || a.role == b.role);
  }
};

// Ordered components, each a cyclic sequence of events stored with an arbitrary
// linear anchor. All position indices are 0-based into the stored linear order.
struct GaussDiagram {
  std::vector<std::vector<Event>> components;
  std::map<int, Sign> signs;  // chord-id -> sign

  std::size_t component_count() const { return components.size(); }

  const std::vector<Event>& comp(int c) const {
    if (c < 0 || static_cast<std::size_t>(c) >= components.size())
      throw std::out_of_range("component index " + std::to_string(c));
    return components[static_cast<std::size_t>(c)];
  }
  std::vector<Event>& comp(int c) {
    if (c < 0 || static_cast<std::size_t>(c) >= components.size())
      throw std::out_of_range("component index " + std::to_string(c));
    return components[static_cast<std::size_t>(c)];
  }

  Sign sign_of(int chord) const {
    auto it = signs.find(chord);
    if (it == signs.end())
      throw std::invalid_argument("unknown chord " + std::to_string(chord));
    return it->second;
  }

  int fresh_chord_id() const {
    int m = 0;
    for (const auto& [id, s] : signs) m = std::max(m, id);
    return m + 1;
  }
  int fresh_wen_id() const {
    int m = 0;
    for (const auto& cmp : components)
      for (const auto& e : cmp)
        if (e.wen) m = std::max(m, e.id);
    return m + 1;
  }

  int total_chords() const { return static_cast<int>(signs.size()); }
  int total_wens() const {
    int n = 0;
    for (const auto& cmp : components)
      for (const auto& e : cmp)
        if (e.wen) ++n;
    return n;
  }
};

struct Violation {
  std::string message;
  int component = -1;  // -1 when not tied to a position
  int position = -1;
};

inline std::vector<Violation> validate(const GaussDiagram& d) {
  std::vector<Violation> out;
  if (d.components.empty())
    out.push_back({"diagram must have at least one component", -1, -1});

  struct Seen {
    int tails = 0, heads = 0;
    int comp = -1, pos = -1;
  };
  std::map<int, Seen> chords;
  std::map<int, int> wens;  // wen-id -> count
  for (int c = 0; c < static_cast<int>(d.components.size()); ++c) {
    const auto& seq = d.components[static_cast<std::size_t>(c)];
    for (int p = 0; p < static_cast<int>(seq.size()); ++p) {
      const Event& e = seq[static_cast<std::size_t>(p)];
      if (e.wen) {
        if (++wens[e.id] > 1)
          out.push_back({"wen " + std::to_string(e.id) + " occurs more than once", c, p});
      } else {
        auto& s = chords[e.id];
        int& n = (e.role == Role::Tail) ? s.tails : s.heads;
        if (++n > 1)
          out.push_back({"chord " + std::to_string(e.id) + ": duplicate " +
                             (e.role == Role::Tail ? std::string("Tail") : std::string("Head")) +
                             " role",
                         c, p});
        s.comp = c;
        s.pos = p;
      }
    }
  }
  for (const auto& [id, s] : chords) {
    if (s.tails == 0)
      out.push_back({"chord " + std::to_string(id) + ": missing Tail endpoint", s.comp, s.pos});
    if (s.heads == 0)
      out.push_back({"chord " + std::to_string(id) + ": missing Head endpoint", s.comp, s.pos});
    if (!d.signs.count(id))
      out.push_back({"chord " + std::to_string(id) + ": no sign recorded", s.comp, s.pos});
  }
  for (const auto& [id, s] : d.signs)
    if (!chords.count(id))
      out.push_back({"orphan chord " + std::to_string(id) + " in sign table", -1, -1});
  return out;
}

inline bool is_valid(const GaussDiagram& d) { return validate(d).empty(); }

inline void require_valid(const GaussDiagram& d) {
  auto v = validate(d);
  if (!v.empty()) throw std::invalid_argument("invalid diagram: " + v.front().message);
}

inline int wen_count(const GaussDiagram& d, int c) {
  int n = 0;
  for (const auto& e : d.comp(c))
    if (e.wen) ++n;
  return n;
}

// Parity vector (delta_1,...,delta_mu): 1 = odd wen count on that component.
struct LinkType {
  std::vector<int> deltas;
  friend bool operator==(const LinkType& a, const LinkType& b) { return a.deltas == b.deltas; }
};

inline LinkType link_type(const GaussDiagram& d) {
  LinkType t;
  for (int c = 0; c < static_cast<int>(d.components.size()); ++c)
    t.deltas.push_back(wen_count(d, c) % 2);
  return t;
}

namespace detail {

// Serialize under the given per-component rotations, relabeling chords by
// first-encounter order and erasing wen identity.
inline std::string serialize_rotated(const GaussDiagram& d, const std::vector<int>& rot) {
  std::string out;
  std::map<int, int> relabel;
  int next = 1;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    if (c) out += " / ";
    const auto& seq = d.components[c];
    const int n = static_cast<int>(seq.size());
    if (n == 0) {
      out += "-";
      continue;
    }
    for (int i = 0; i < n; ++i) {
      const Event& e = seq[static_cast<std::size_t>((i + rot[c]) % n)];
      if (i) out += ' ';
      if (e.wen) {
        out += 'w';
      } else {
        auto it = relabel.find(e.id);
        int lbl = (it != relabel.end()) ? it->second : (relabel[e.id] = next++);
        out += (e.role == Role::Tail) ? 'O' : 'U';
        out += std::to_string(lbl);
        out += sign_char(d.sign_of(e.id));
      }
    }
  }
  return out;
}

}  // namespace detail

// Lexicographically minimal serialization over all per-component rotations and
// chord/wen relabelings. Components keep their order. Two diagrams are equal
// iff their canonical forms are equal.
inline std::string canonical_form(const GaussDiagram& d) {
  require_valid(d);
  const std::size_t mu = d.components.size();
  std::vector<int> rot(mu, 0);
  std::optional<std::string> best;
  for (;;) {
    std::string s = detail::serialize_rotated(d, rot);
    if (!best || s < *best) best = std::move(s);
    // advance the rotation tuple
    std::size_t c = 0;
    for (; c < mu; ++c) {
      const int n = std::max<int>(1, static_cast<int>(d.components[c].size()));
      if (++rot[c] < n) break;
      rot[c] = 0;
    }
    if (c == mu) break;
  }
  return *best;
}

inline bool canonical_equal(const GaussDiagram& a, const GaussDiagram& b) {
  return canonical_form(a) == canonical_form(b);
}

}  // namespace wenforge
