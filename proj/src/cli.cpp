// Copyright 2026 the qleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qleak/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "qleak/capacity.hpp"
#include "qleak/io.hpp"
#include "qleak/npa.hpp"
#include "qleak/report.hpp"

namespace qleak {

namespace {

constexpr const char* kNpaChannelCaution =
    "moment-hierarchy bounds converge to the commuting-operator capacity, "
    "which can exceed the tensor-product entangled capacity";

std::vector<double> parse_prior(const std::string& text) {
  std::vector<double> prior;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) prior.push_back(parse_probability(tok));
  double total = 0.0;
  for (double p : prior) total += p;
  if (prior.empty() || std::abs(total - 1.0) > kDistTol)
    throw_input("prior must be a comma-separated distribution summing to 1");
  return prior;
}

VulnerabilityMeasure parse_measure(const std::string& name) {
  if (name == "minentropy") return VulnerabilityMeasure::min_entropy();
  if (name == "shannon") return VulnerabilityMeasure::shannon();
  throw_input("unknown measure: " + name + " (want minentropy|shannon)");
}

struct GuessSetup {
  std::vector<GuessFunction> guesses;
  bool exhaustive = false;
  std::string label;
};

GuessSetup resolve_guesses(const std::string& spec, const InteractiveChannel& c,
                           int num_secrets, const Budget& budget) {
  GuessSetup out;
  out.label = spec;
  if (spec == "exhaustive") {
    out.guesses = exhaustive_guesses(c, num_secrets, budget.guess_functions);
    out.exhaustive = true;
  } else if (spec == "final-bit") {
    out.guesses = {final_bit_guess(c, num_secrets)};
    out.exhaustive = false;
  } else {
    Json j = parse_json_text(slurp(spec), spec);
    if (!j.is_array()) throw_input("guess file must be an array of guess maps");
    std::vector<int> leaves = bob_view_trace_leaves(c);
    const ViewTree& bv = c.bob_views();
    for (const auto& gj : j) {
      GuessFunction g(leaves.size(), -1);
      for (const auto& entry : gj) {
        int node = 0;
        for (const auto& stepj : entry.at("trace")) {
          int m = c.B.index_of(stepj[0].get<std::string>());
          int o = c.Y.index_of(stepj[1].get<std::string>());
          if (m < 0 || o < 0) throw_input("guess map: unknown symbol in trace");
          node = bv.find_child(node, m, o);
          if (node < 0) throw_input("guess map: unreachable Bob-view trace");
        }
        auto it = std::lower_bound(leaves.begin(), leaves.end(), node);
        if (it == leaves.end() || *it != node)
          throw_input("guess map: trace is not full length");
        g[std::size_t(it - leaves.begin())] = entry.at("k").get<int>();
      }
      for (int v : g)
        if (v < 0) throw_input("guess map does not cover all Bob-view traces");
      out.guesses.push_back(std::move(g));
    }
    out.exhaustive = false;
  }
  return out;
}

void emit(const AnalysisReport& rep, bool json, std::ostream& out) {
  if (json)
    out << rep.to_json_string() << "\n";
  else
    rep.print_table(out);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"information-leakage analysis for finite interactive channels"};
  app.require_subcommand(1);
  Budget budget = Budget::from_env();

  // validate
  auto* validate = app.add_subcommand("validate", "check a channel file");
  std::string v_file;
  bool v_json = false;
  validate->add_option("channel", v_file)->required();
  validate->add_flag("--json", v_json);

  // classical-capacity
  auto* cap = app.add_subcommand("classical-capacity",
                                 "exact classical capacity by enumeration");
  std::string cap_file, cap_measure = "minentropy", cap_secrets = "two";
  bool cap_json = false, cap_serial = false;
  double cap_tol = 1e-9;
  cap->add_option("channel", cap_file)->required();
  cap->add_option("--measure", cap_measure, "minentropy|shannon");
  cap->add_option("--secrets", cap_secrets,
                  "two|unbounded (min-entropy secret-space convention)");
  cap->add_option("--tolerance", cap_tol);
  cap->add_flag("--serial", cap_serial, "use the serial reference kernel");
  cap->add_flag("--json", cap_json);

  // leakage
  auto* leak = app.add_subcommand("leakage", "leakage of explicit strategies");
  std::string leak_file, leak_model, leak_entangled, leak_prior = "",
                          leak_measure = "minentropy";
  bool leak_json = false;
  leak->add_option("channel", leak_file)->required();
  leak->add_option("--model", leak_model, "classical secret model JSON");
  leak->add_option("--entangled", leak_entangled, "quantum joint strategy JSON");
  leak->add_option("--prior", leak_prior, "comma-separated prior (entangled mode)");
  leak->add_option("--measure", leak_measure);
  leak->add_flag("--json", leak_json);

  // game-value
  auto* gv = app.add_subcommand("game-value", "classical or strategy value of a game");
  std::string gv_file, gv_strategy;
  bool gv_classical = false, gv_json = false;
  gv->add_option("game", gv_file)->required();
  gv->add_flag("--classical", gv_classical);
  gv->add_option("--quantum", gv_strategy, "quantum strategy JSON");
  gv->add_flag("--json", gv_json);

  // compile-game
  auto* cg = app.add_subcommand("compile-game", "compile a game into a channel");
  std::string cg_file;
  cg->add_option("game", cg_file)->required();

  // ns-capacity
  auto* ns = app.add_subcommand("ns-capacity",
                                "non-signalling min-entropy capacity by LP");
  std::string ns_file, ns_guess = "exhaustive";
  int ns_secrets = 0;
  bool ns_json = false;
  ns->add_option("channel", ns_file)->required();
  ns->add_option("--guess", ns_guess, "exhaustive|final-bit|<file>");
  ns->add_option("--secrets", ns_secrets, "secret count (default: trace count)");
  ns->add_flag("--json", ns_json);

  // npa-bound
  auto* npa = app.add_subcommand("npa-bound", "moment-hierarchy upper bound");
  std::string npa_file, npa_target = "channel", npa_guess = "final-bit";
  int npa_level = 0, npa_secrets = 0;
  double npa_tol = 1e-7;
  bool npa_json = false;
  npa->add_option("input", npa_file)->required();
  npa->add_option("--target", npa_target, "channel|game");
  npa->add_option("--level", npa_level)->required();
  npa->add_option("--guess", npa_guess, "exhaustive|final-bit|<file> (channel)");
  npa->add_option("--secrets", npa_secrets);
  npa->add_option("--tol", npa_tol, "solver tolerance");
  npa->add_flag("--json", npa_json);

  // export-sdp
  auto* ex = app.add_subcommand("export-sdp", "emit the moment problem as sparse text");
  std::string ex_file, ex_target = "channel", ex_guess = "final-bit";
  int ex_level = 0, ex_secrets = 0;
  ex->add_option("input", ex_file)->required();
  ex->add_option("--target", ex_target, "channel|game");
  ex->add_option("--level", ex_level)->required();
  ex->add_option("--guess", ex_guess);
  ex->add_option("--secrets", ex_secrets);

  // builtin
  auto* bi = app.add_subcommand("builtin", "emit a built-in object as JSON");
  std::string bi_name, bi_emit = "";
  int bi_rounds = 1;
  bi->add_option("name", bi_name, "chsh|scheduler")->required();
  bi->add_option("--emit", bi_emit,
                 "chsh: game|game-strategy|channel|joint-strategy; scheduler: channel");
  bi->add_option("--rounds", bi_rounds, "scheduler rounds");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (validate->parsed()) {
    std::string text = slurp(v_file);
    InteractiveChannel c = channel_from_json(parse_json_text(text, v_file));
    auto report = validate_channel(c);
    AnalysisReport rep;
    rep.command = "validate";
    rep.add_input(v_file, text);
    rep.quantities.push_back({"violations", double(report.size()), BoundDirection::Exact, 0});
    for (const auto& v : report) rep.warnings.push_back(v.kind + ": " + v.detail);
    emit(rep, v_json, out);
    return report.empty() ? 0 : 2;
  }

  if (cap->parsed()) {
    std::string text = slurp(cap_file);
    InteractiveChannel c = channel_from_json(parse_json_text(text, cap_file));
    AnalysisReport rep;
    rep.command = "classical-capacity";
    rep.add_input(cap_file, text);
    if (cap_measure == "minentropy") {
      CapacityOptions opts;
      opts.budget = budget;
      opts.secrets = cap_secrets == "unbounded" ? SecretSpace::Unbounded
                                                : SecretSpace::TwoSecrets;
      double v = cap_serial ? minentropy_capacity_classical_serial(c, opts)
                            : minentropy_capacity_classical(c, opts);
      rep.quantities.push_back({"minentropy-capacity-bits (" + cap_secrets + "-secret)",
                                v, BoundDirection::Exact, 1e-12});
    } else if (cap_measure == "shannon") {
      ShannonOptions opts;
      opts.budget = budget;
      opts.tolerance = cap_tol;
      double v = shannon_capacity_classical(c, opts);
      rep.quantities.push_back(
          {"shannon-capacity-bits", v, BoundDirection::Exact, cap_tol});
    } else {
      throw_input("unknown measure: " + cap_measure);
    }
    emit(rep, cap_json, out);
    return 0;
  }

  if (leak->parsed()) {
    std::string text = slurp(leak_file);
    InteractiveChannel c = channel_from_json(parse_json_text(text, leak_file));
    AnalysisReport rep;
    rep.command = "leakage";
    rep.add_input(leak_file, text);
    VulnerabilityMeasure v = parse_measure(leak_measure);
    if (!leak_model.empty()) {
      std::string mtext = slurp(leak_model);
      Json mj = parse_json_text(mtext, leak_model);
      rep.add_input(leak_model, mtext);
      SecretModel model;
      for (const auto& s : mj.at("secrets")) model.secrets.push_back(s.get<std::string>());
      for (const auto& p : mj.at("prior")) model.prior.push_back(p.is_string() ? parse_probability(p.get<std::string>()) : p.get<double>());
      for (const auto& sj : mj.at("alice"))
        model.alice.push_back(strategy_from_json(sj, c));
      DeterministicStrategy bob = strategy_from_json(mj.at("bob"), c);
      rep.quantities.push_back(
          {"leakage-bits", leakage(v, model, c, bob), BoundDirection::Exact, 1e-12});
    } else if (!leak_entangled.empty()) {
      std::string stext = slurp(leak_entangled);
      rep.add_input(leak_entangled, stext);
      QuantumJointStrategy s =
          joint_strategy_from_json(parse_json_text(stext, leak_entangled), c);
      std::vector<double> prior =
          leak_prior.empty() ? std::vector<double>{0.5, 0.5} : parse_prior(leak_prior);
      rep.quantities.push_back({"entangled-leakage-bits",
                                entangled_leakage(v, prior, c, s),
                                BoundDirection::Exact, 1e-12});
    } else {
      throw_input("leakage needs --model or --entangled");
    }
    emit(rep, leak_json, out);
    return 0;
  }

  if (gv->parsed()) {
    std::string text = slurp(gv_file);
    NonLocalGame g = game_from_json(parse_json_text(text, gv_file));
    AnalysisReport rep;
    rep.command = "game-value";
    rep.add_input(gv_file, text);
    if (gv_classical)
      rep.quantities.push_back({"classical-value", classical_game_value(g, budget),
                                BoundDirection::Exact, 0});
    if (!gv_strategy.empty()) {
      std::string stext = slurp(gv_strategy);
      rep.add_input(gv_strategy, stext);
      GameQuantumStrategy s =
          game_strategy_from_json(parse_json_text(stext, gv_strategy), g);
      rep.quantities.push_back(
          {"strategy-value", quantum_game_value(g, s), BoundDirection::Exact, 1e-12});
    }
    if (rep.quantities.empty())
      throw_input("game-value needs --classical and/or --quantum <file>");
    emit(rep, gv_json, out);
    return 0;
  }

  if (cg->parsed()) {
    std::string text = slurp(cg_file);
    NonLocalGame g = game_from_json(parse_json_text(text, cg_file));
    out << channel_to_json(compile_game_to_channel(g)).dump(2) << "\n";
    return 0;
  }

  if (ns->parsed()) {
    std::string text = slurp(ns_file);
    InteractiveChannel c = channel_from_json(parse_json_text(text, ns_file));
    int nk = ns_secrets > 0 ? ns_secrets
                            : (ns_guess == "final-bit"
                                   ? 2
                                   : int(bob_view_trace_leaves(c).size()));
    GuessSetup gs = resolve_guesses(ns_guess, c, nk, budget);
    NsReport r = ns_minentropy_capacity(c, nk, gs.guesses, gs.exhaustive, budget);
    AnalysisReport rep;
    rep.command = "ns-capacity";
    rep.add_input(ns_file, text);
    rep.quantities.push_back({"ns-minentropy-capacity-bits", r.value_log2,
                              r.exhaustive ? BoundDirection::Exact : BoundDirection::Lower,
                              1e-9});
    if (!r.exhaustive)
      rep.warnings.push_back("partial guess list (" + gs.label +
                             "): value is a lower bound on the exhaustive optimum");
    emit(rep, ns_json, out);
    return 0;
  }

  if (npa->parsed()) {
    std::string text = slurp(npa_file);
    AnalysisReport rep;
    rep.command = "npa-bound";
    rep.add_input(npa_file, text);
    if (npa_target == "game") {
      NonLocalGame g = game_from_json(parse_json_text(text, npa_file));
      NpaGameReport r = npa_game_bound(g, npa_level, npa_tol);
      rep.quantities.push_back({"game-value-bound (level " + std::to_string(npa_level) + ")",
                                r.value, BoundDirection::Upper, npa_tol});
    } else if (npa_target == "channel") {
      InteractiveChannel c = channel_from_json(parse_json_text(text, npa_file));
      int nk = npa_secrets > 0 ? npa_secrets
                               : (npa_guess == "final-bit"
                                      ? 2
                                      : int(bob_view_trace_leaves(c).size()));
      GuessSetup gs = resolve_guesses(npa_guess, c, nk, budget);
      NpaChannelReport r =
          npa_channel_bound(c, nk, gs.guesses, gs.exhaustive, npa_level, npa_tol);
      rep.quantities.push_back(
          {"minentropy-capacity-bound-bits (level " + std::to_string(npa_level) + ")",
           r.value_log2,
           r.exhaustive ? BoundDirection::Upper : BoundDirection::Lower, npa_tol});
      rep.warnings.push_back(kNpaChannelCaution);
      if (!r.exhaustive)
        rep.warnings.push_back("partial (lower bound on opt_" +
                               std::to_string(npa_level) + "): guess list " + gs.label);
    } else {
      throw_input("npa-bound target must be channel or game");
    }
    emit(rep, npa_json, out);
    return 0;
  }

  if (ex->parsed()) {
    std::string text = slurp(ex_file);
    if (ex_target == "game") {
      NonLocalGame g = game_from_json(parse_json_text(text, ex_file));
      MomentProblem mp = build_game_moment_problem(g, ex_level);
      write_sdp_sparse(out, mp.sdp);
    } else {
      InteractiveChannel c = channel_from_json(parse_json_text(text, ex_file));
      int nk = ex_secrets > 0 ? ex_secrets : 2;
      GuessSetup gs = resolve_guesses(ex_guess, c, nk, budget);
      MomentProblem mp = build_moment_problem(c, nk, ex_level);
      mp.set_guess_objective(gs.guesses.front());
      write_sdp_sparse(out, mp.sdp);
    }
    return 0;
  }

  if (bi->parsed()) {
    if (bi_name == "chsh") {
      BuiltinGame b = builtin_game("chsh");
      std::string what = bi_emit.empty() ? "game" : bi_emit;
      if (what == "game") {
        out << game_to_json(b.game).dump(2) << "\n";
      } else if (what == "game-strategy") {
        out << game_strategy_to_json(b.strategy, b.game).dump(2) << "\n";
      } else if (what == "channel") {
        out << channel_to_json(compile_game_to_channel(b.game)).dump(2) << "\n";
      } else if (what == "joint-strategy") {
        InteractiveChannel c = compile_game_to_channel(b.game);
        out << joint_strategy_to_json(chsh_channel_strategy(c), c, 2).dump(2) << "\n";
      } else {
        throw_input("builtin chsh --emit wants game|game-strategy|channel|joint-strategy");
      }
    } else if (bi_name == "scheduler") {
      out << channel_to_json(scheduler_channel(bi_rounds)).dump(2) << "\n";
    } else {
      throw_input("unknown builtin: " + bi_name);
    }
    return 0;
  }

  err << "no subcommand\n";
  return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Input ? 2 : 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qleak
