// Certified move sequences: replay, verification, and the line-oriented file
// format (INIT / MOVE / DIAG, '#' comments).
#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wenforge/gauss_code.hpp"
#include "wenforge/moves.hpp"

namespace wenforge {

struct TraceStep {
  MoveInstance move;
  std::optional<GaussDiagram> checkpoint;
};

struct Trace {
  GaussDiagram initial;
  std::vector<TraceStep> steps;

  std::set<MoveKind> moveset() const {
    std::set<MoveKind> out;
    for (const auto& s : steps) out.insert(s.move.kind);
    return out;
  }
  bool uses(MoveKind k) const {
    for (const auto& s : steps)
      if (s.move.kind == k) return true;
    return false;
  }
};

struct VerifyResult {
  bool ok = true;
  int failed_step = -1;
  std::string reason;
  GaussDiagram final_diagram;
};

inline VerifyResult verify_trace(const Trace& t, const MoveOptions& opts = {}) {
  VerifyResult r;
  GaussDiagram cur = t.initial;
  if (!is_valid(cur)) return {false, -1, "initial diagram invalid", cur};
  for (int i = 0; i < static_cast<int>(t.steps.size()); ++i) {
    const auto& step = t.steps[static_cast<std::size_t>(i)];
    try {
      cur = apply(cur, step.move, opts);
    } catch (const MoveError& e) {
      return {false, i, std::string("step inapplicable: ") + e.what(), cur};
    }
    if (!is_valid(cur)) return {false, i, "step produced an invalid diagram", cur};
    if (step.checkpoint && !canonical_equal(cur, *step.checkpoint))
      return {false, i, "checkpoint mismatch", cur};
  }
  r.final_diagram = cur;
  return r;
}

inline GaussDiagram replay_final(const Trace& t, const MoveOptions& opts = {}) {
  auto r = verify_trace(t, opts);
  if (!r.ok)
    throw MoveError("trace does not replay (step " + std::to_string(r.failed_step) +
                    "): " + r.reason);
  return r.final_diagram;
}

inline std::string serialize_trace(const Trace& t, bool with_checkpoints = true) {
  std::ostringstream os;
  os << "INIT " << serialize_gauss_code(t.initial) << '\n';
  for (const auto& s : t.steps) {
    os << "MOVE " << move_to_string(s.move) << '\n';
    if (with_checkpoints && s.checkpoint)
      os << "DIAG " << serialize_gauss_code(*s.checkpoint) << '\n';
  }
  return os.str();
}

inline Trace parse_trace(std::istream& in) {
  Trace t;
  bool have_init = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // trim
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    std::size_t s = line.find_first_not_of(" \t");
    if (s == std::string::npos) continue;
    if (line[s] == '#') continue;
    std::istringstream is(line.substr(s));
    std::string tag;
    is >> tag;
    std::string rest;
    std::getline(is, rest);
    if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
    if (tag == "INIT") {
      if (have_init) throw ParseError("line " + std::to_string(lineno) + ": duplicate INIT");
      t.initial = parse_gauss_code(rest);
      have_init = true;
    } else if (tag == "MOVE") {
      if (!have_init) throw ParseError("line " + std::to_string(lineno) + ": MOVE before INIT");
      t.steps.push_back({move_from_string(rest), std::nullopt});
    } else if (tag == "DIAG") {
      if (t.steps.empty() || t.steps.back().checkpoint)
        throw ParseError("line " + std::to_string(lineno) + ": DIAG without a preceding MOVE");
      t.steps.back().checkpoint = parse_gauss_code(rest);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
  }
  if (!have_init) throw ParseError("trace file has no INIT line");
  return t;
}

inline Trace parse_trace(const std::string& text) {
  std::istringstream is(text);
  return parse_trace(is);
}

// Attach a checkpoint after every step (replayed diagrams).
inline Trace with_checkpoints(const Trace& t, const MoveOptions& opts = {}) {
  Trace out;
  out.initial = t.initial;
  GaussDiagram cur = t.initial;
  for (const auto& s : t.steps) {
    cur = apply(cur, s.move, opts);
    out.steps.push_back({s.move, cur});
  }
  return out;
}

}  // namespace wenforge
