// Command-line surface over the wenforge headers. Exit codes: 0 success /
// found / ok, 1 verification failure or exhausted search, 2 usage and parse
// errors. All randomness is seed-controlled (WENFORGE_SEED as default).
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wenforge/diagram.hpp"
#include "wenforge/gauss_code.hpp"
#include "wenforge/moves.hpp"
#include "wenforge/reduction.hpp"
#include "wenforge/search.hpp"
#include "wenforge/trace.hpp"
#include "wenforge/transpile.hpp"

using nlohmann::json;
using namespace wenforge;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("WENFORGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ParseError("WENFORGE_SEED is not an unsigned integer");
    }
  }
  return 0;
}

std::set<MoveKind> parse_moveset(const std::string& spec) {
  // comma-separated kind names; R1/R2/W4 expand to their add+del pairs,
  // ALL to every kind
  std::set<MoveKind> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string up;
    for (char c : tok) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up.empty()) continue;
    if (up == "ALL") {
      for (int k = 0; k <= static_cast<int>(MoveKind::MirrorComponent); ++k)
        out.insert(static_cast<MoveKind>(k));
    } else if (up == "R1") {
      out.insert(MoveKind::R1Add);
      out.insert(MoveKind::R1Del);
    } else if (up == "R2") {
      out.insert(MoveKind::R2Add);
      out.insert(MoveKind::R2Del);
    } else if (up == "W4") {
      out.insert(MoveKind::W4Add);
      out.insert(MoveKind::W4Del);
    } else if (auto k = kind_from_name(up)) {
      out.insert(*k);
    } else {
      throw ParseError("unknown move kind '" + tok + "' in moveset");
    }
  }
  if (out.empty()) throw ParseError("empty moveset");
  return out;
}

Trace read_trace_file(const std::string& path) {
  if (path == "-") return parse_trace(std::cin);
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open trace file '" + path + "'");
  return parse_trace(f);
}

std::string type_word(const LinkType& t) {
  bool any_odd = false, any_even = false;
  for (int d : t.deltas) (d ? any_odd : any_even) = true;
  if (any_odd && any_even) return "mixed";
  return any_odd ? "odd" : "even";
}

std::string type_string(const LinkType& t) {
  std::string s = type_word(t) + " (";
  for (std::size_t i = 0; i < t.deltas.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t.deltas[i]);
  }
  return s + ")";
}

void emit(bool json_mode, const json& j, const std::string& text) {
  if (json_mode)
    std::cout << j.dump() << '\n';
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss-diagram rewriting toolkit for diagrams with wens"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable JSON output");

  std::string code, code_b, movespec, tracefile, moveset_spec = "ALL";
  std::string arcs_choice, direction = "forward";
  int comp_opt = 0, wen_opt = -1, to_pos = 0;
  int max_depth = 8, max_chords = -1, max_wens = -1;
  long max_nodes = 1000000;
  int rk = 0, rm = 0, rmu = 1;
  std::uint64_t seed = default_seed();
  bool no_checkpoints = false;

  auto* c_validate = app.add_subcommand("validate", "check a Gauss code");
  c_validate->add_option("code", code)->required();

  auto* c_canon = app.add_subcommand("canon", "canonical form of a diagram");
  c_canon->add_option("code", code)->required();

  auto* c_type = app.add_subcommand("type", "wen-parity type per component");
  c_type->add_option("code", code)->required();

  auto* c_mirror = app.add_subcommand("mirror", "negate chord signs");
  c_mirror->add_option("code", code)->required();
  auto* mirror_comp = c_mirror->add_option("--component", comp_opt, "1-based component (M_i)");

  auto* c_reduce = app.add_subcommand("reduce", "wen-reduction of a knot diagram");
  c_reduce->add_option("code", code)->required();
  c_reduce->add_option("--wen", wen_opt, "anchor wen id (odd type)");
  c_reduce->add_option("--arcs", arcs_choice, "Aprime|Adoubleprime (even type)")
      ->check(CLI::IsMember({"Aprime", "Adoubleprime"}));

  auto* c_classify = app.add_subcommand("classify", "normal form of a knot diagram");
  c_classify->add_option("code", code)->required();

  auto* c_moves = app.add_subcommand("moves", "enumerate applicable moves");
  c_moves->add_option("code", code)->required();
  c_moves->add_option("--moveset", moveset_spec, "comma-separated kinds (default ALL)");
  c_moves->add_option("--max-chords", max_chords);
  c_moves->add_option("--max-wens", max_wens);

  auto* c_apply = app.add_subcommand("apply", "apply one move to a diagram");
  c_apply->add_option("code", code)->required();
  c_apply->add_option("move", movespec)->required();

  auto* c_slide = app.add_subcommand("slide", "slide a wen to a target position");
  c_slide->add_option("code", code)->required();
  c_slide->add_option("--wen", wen_opt, "wen id")->required();
  c_slide->add_option("--to", to_pos, "target position")->required();
  c_slide->add_option("--direction", direction)->check(CLI::IsMember({"forward", "backward"}));

  auto* c_transpile = app.add_subcommand(
      "transpile", "rewrite a trace without W4 (plus trailing mirror moves when needed)");
  c_transpile->add_option("tracefile", tracefile, "path or - for stdin")->required();
  c_transpile->add_flag("--no-checkpoints", no_checkpoints, "omit DIAG lines");

  auto* c_verify = app.add_subcommand("verify", "replay and check a trace file");
  c_verify->add_option("tracefile", tracefile, "path or - for stdin")->required();

  auto* c_search = app.add_subcommand("search", "bounded BFS equivalence search");
  c_search->add_option("a", code)->required();
  c_search->add_option("b", code_b)->required();
  c_search->add_option("--moveset", moveset_spec, "comma-separated kinds (default ALL)");
  c_search->add_option("--max-depth", max_depth);
  c_search->add_option("--max-nodes", max_nodes);
  c_search->add_option("--max-chords", max_chords);
  c_search->add_option("--max-wens", max_wens);

  auto* c_rand = app.add_subcommand("rand", "seeded random diagram");
  c_rand->add_option("--chords", rk)->required();
  c_rand->add_option("--wens", rm)->required();
  c_rand->add_option("--components", rmu);
  c_rand->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_validate) {
      auto d = parse_gauss_code(code);
      auto v = validate(d);
      json j = {{"ok", v.empty()}};
      json viol = json::array();
      std::string text;
      for (const auto& x : v) {
        viol.push_back({{"message", x.message}, {"component", x.component}, {"position", x.position}});
        text += x.message + "\n";
      }
      j["violations"] = viol;
      emit(json_mode, j, v.empty() ? "ok\n" : text);
      return v.empty() ? 0 : 1;
    }
    if (*c_canon) {
      auto d = parse_gauss_code(code);
      std::string s = canonical_form(d);
      emit(json_mode, {{"canonical", s}}, s + "\n");
      return 0;
    }
    if (*c_type) {
      auto d = parse_gauss_code(code);
      require_valid(d);
      LinkType t = link_type(d);
      emit(json_mode, {{"word", type_word(t)}, {"deltas", t.deltas}}, type_string(t) + "\n");
      return 0;
    }
    if (*c_mirror) {
      auto d = parse_gauss_code(code);
      require_valid(d);
      GaussDiagram r = *mirror_comp ? mirror_component(d, comp_opt - 1) : mirror(d);
      std::string s = serialize_gauss_code(r);
      emit(json_mode, {{"diagram", s}}, s + "\n");
      return 0;
    }
    if (*c_reduce) {
      auto d = parse_gauss_code(code);
      require_valid(d);
      if (d.components.size() != 1) throw std::invalid_argument("reduce: expects a knot diagram");
      GaussDiagram r;
      if (link_type(d).deltas[0] == 1) {
        int w = wen_opt;
        if (w < 0)
          for (const auto& e : d.comp(0))
            if (e.wen) {
              w = e.id;
              break;
            }
        r = reduce_to_single_wen(d, w);
      } else {
        if (wen_opt >= 0) throw std::invalid_argument("reduce: --wen needs an odd-type diagram");
        ArcChoice which =
            (arcs_choice == "Adoubleprime") ? ArcChoice::Adoubleprime : ArcChoice::Aprime;
        r = reduce_to_no_wen(d, which);
      }
      std::string s = serialize_gauss_code(r);
      emit(json_mode, {{"diagram", s}}, s + "\n");
      return 0;
    }
    if (*c_classify) {
      auto d = parse_gauss_code(code);
      auto [t, nf] = classify(d);
      emit(json_mode, {{"word", type_word(t)}, {"deltas", t.deltas}, {"normal_form", nf}},
           type_word(t) + " " + nf + "\n");
      return 0;
    }
    if (*c_moves) {
      auto d = parse_gauss_code(code);
      require_valid(d);
      SizeCaps caps = SizeCaps::around(d);
      if (max_chords >= 0) caps.max_chords = max_chords;
      if (max_wens >= 0) caps.max_wens = max_wens;
      auto ms = enumerate_moves(d, parse_moveset(moveset_spec), caps);
      json arr = json::array();
      std::string text;
      for (const auto& m : ms) {
        arr.push_back(move_to_string(m));
        text += move_to_string(m) + "\n";
      }
      emit(json_mode, {{"moves", arr}}, text);
      return 0;
    }
    if (*c_apply) {
      auto d = parse_gauss_code(code);
      require_valid(d);
      auto m = move_from_string(movespec);
      GaussDiagram r = apply(d, m);
      std::string s = serialize_gauss_code(r);
      emit(json_mode, {{"diagram", s}}, s + "\n");
      return 0;
    }
    if (*c_slide) {
      auto d = parse_gauss_code(code);
      require_valid(d);
      SlideDirection dir =
          (direction == "backward") ? SlideDirection::Backward : SlideDirection::Forward;
      Trace t = slide_wen(d, wen_opt, to_pos, dir);
      std::string s = serialize_trace(t, !no_checkpoints);
      emit(json_mode, {{"trace", s}, {"steps", t.steps.size()}}, s);
      return 0;
    }
    if (*c_transpile) {
      Trace in = read_trace_file(tracefile);
      GaussDiagram final_d = replay_final(in);
      Trace out;
      std::vector<bool> flags;
      if (in.initial.components.size() == 1 && in.initial.total_wens() == 1) {
        out = eliminate_w4_single_wen(in);
        flags = {false};
      } else if (in.initial.components.size() == 1 && in.initial.total_wens() == 0) {
        auto [tr, needs_mirror] = eliminate_wens_even(in);
        out = std::move(tr);
        flags = {needs_mirror};
        if (needs_mirror) {
          MoveInstance m{MoveKind::Mirror, {}, {}, "", -1};
          out.steps.push_back({m, apply(replay_final(out), m)});
        }
      } else {
        auto res = eliminate_wens_link(in);
        out = std::move(res.trace);
        flags = res.mirror_flags;
        for (int c = 0; c < static_cast<int>(flags.size()); ++c)
          if (flags[static_cast<std::size_t>(c)]) {
            MoveInstance m{MoveKind::MirrorComponent, {}, {}, "", c};
            out.steps.push_back({m, apply(replay_final(out), m)});
          }
      }
      auto vr = verify_trace(out);
      if (!vr.ok || !canonical_equal(vr.final_diagram, final_d)) {
        std::cerr << "transpile: output trace failed verification\n";
        return 1;
      }
      std::string s = serialize_trace(out, !no_checkpoints);
      json jflags = json::array();
      for (bool f : flags) jflags.push_back(f);
      emit(json_mode, {{"trace", s}, {"steps", out.steps.size()}, {"mirror_flags", jflags}}, s);
      return 0;
    }
    if (*c_verify) {
      Trace t = read_trace_file(tracefile);
      auto vr = verify_trace(t);
      if (vr.ok) {
        std::string s = serialize_gauss_code(vr.final_diagram);
        emit(json_mode, {{"ok", true}, {"final", s}}, "ok " + s + "\n");
        return 0;
      }
      emit(json_mode, {{"ok", false}, {"failed_step", vr.failed_step}, {"reason", vr.reason}},
           "failed at step " + std::to_string(vr.failed_step) + ": " + vr.reason + "\n");
      return 1;
    }
    if (*c_search) {
      auto a = parse_gauss_code(code);
      auto b = parse_gauss_code(code_b);
      SearchBounds bounds{max_depth, max_nodes, max_chords, max_wens};
      auto res = bfs_equivalence(a, b, parse_moveset(moveset_spec), bounds);
      json stats = {{"nodes_seen", res.stats.nodes_seen},
                    {"nodes_expanded", res.stats.nodes_expanded},
                    {"depth_reached", res.stats.depth_reached}};
      if (res.found()) {
        std::string s = serialize_trace(*res.trace, !no_checkpoints);
        emit(json_mode, {{"found", true}, {"trace", s}, {"stats", stats}}, s);
        return 0;
      }
      emit(json_mode, {{"found", false}, {"stats", stats}},
           "exhausted (nodes_seen=" + std::to_string(res.stats.nodes_seen) +
               " depth=" + std::to_string(res.stats.depth_reached) + ")\n");
      return 1;
    }
    if (*c_rand) {
      GaussDiagram d = random_diagram(rk, rm, rmu, seed);
      std::string s = serialize_gauss_code(d);
      emit(json_mode, {{"diagram", s}, {"seed", seed}}, s + "\n");
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const MoveError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const TranspileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
