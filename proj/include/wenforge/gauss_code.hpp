// Text form of Gauss diagrams:
//   diagram   := component ("/" component)*
//   component := "-" | token (" " token)*
//   token     := "w" | ("O"|"U") integer ("+"|"-")
// "O" marks the Tail (over) end of a chord, "U" the Head (under) end.
#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wenforge/diagram.hpp"

namespace wenforge {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline GaussDiagram parse_gauss_code(const std::string& text) {
  GaussDiagram d;
  d.components.emplace_back();
  int wen_id = 1;
  std::map<int, int> role_seen;  // chord -> bitmask of roles seen
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto err = [&](const std::string& msg) -> ParseError {
    return ParseError(msg + " (at offset " + std::to_string(i) + ")");
  };
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/') {
      d.components.emplace_back();
      ++i;
      continue;
    }
    if (c == 'w') {
      d.components.back().push_back(Event::make_wen(wen_id++));
      ++i;
      continue;
    }
    if (c == '-') {
      // explicit empty component marker
      ++i;
      if (!d.components.back().empty()) throw err("'-' allowed only in an empty component");
      continue;
    }
    if (c == 'O' || c == 'U') {
      Role role = (c == 'O') ? Role::Tail : Role::Head;
      ++i;
      std::size_t start = i;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw err("expected chord number after 'O'/'U'");
      int id = std::stoi(text.substr(start, i - start));
      if (i >= n || (text[i] != '+' && text[i] != '-'))
        throw err("expected sign '+' or '-' after chord " + std::to_string(id));
      Sign s = (text[i] == '+') ? Sign::Pos : Sign::Neg;
      ++i;
      int bit = 1 << static_cast<int>(role);
      if (role_seen[id] & bit)
        throw err("role violation: chord " + std::to_string(id) + " has two " +
                  (role == Role::Tail ? std::string("O") : std::string("U")) + " ends");
      role_seen[id] |= bit;
      auto it = d.signs.find(id);
      if (it != d.signs.end() && it->second != s)
        throw err("sign mismatch for chord " + std::to_string(id));
      d.signs[id] = s;
      d.components.back().push_back(Event::chord_end(id, role));
      continue;
    }
    throw err(std::string("unexpected character '") + c + "'");
  }
  for (const auto& [id, mask] : role_seen)
    if (mask != 3)
      throw ParseError("chord " + std::to_string(id) + " is missing its " +
                       ((mask & 1) ? "U" : "O") + " end");
  return d;
}

// Stored linear order, chords renumbered by first encounter.
inline std::string serialize_gauss_code(const GaussDiagram& d) {
  require_valid(d);
  std::string out;
  std::map<int, int> relabel;
  int next = 1;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    if (c) out += " / ";
    const auto& seq = d.components[c];
    if (seq.empty()) {
      out += "-";
      continue;
    }
    for (std::size_t p = 0; p < seq.size(); ++p) {
      if (p) out += ' ';
      const Event& e = seq[p];
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

}  // namespace wenforge
