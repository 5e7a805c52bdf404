#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "coverfollow/drl/train.hpp"
#include "coverfollow/errors.hpp"
#include "coverfollow/harness/io.hpp"
#include "coverfollow/harness/metrics.hpp"
#include "coverfollow/harness/plot.hpp"

namespace fs = std::filesystem;
using namespace coverfollow;
using namespace coverfollow::harness;

namespace {

// A scenario argument is a JSON file, "kind[:seed]" or "corridor[:seed]".
Scenario resolve_scenario(const std::string& arg) {
  if (fs::exists(arg)) return scenario_from_json(read_json_file(arg));
  const auto colon = arg.find(':');
  const std::string head = arg.substr(0, colon);
  if (head == "corridor" || head == "CoverCorridor")
    return make_cover_corridor(colon == std::string::npos ? 0 : std::stoull(arg.substr(colon + 1)));
  const auto kind = parse_scenario_kind(arg.substr(0, colon));
  if (!kind) throw InvalidSpec("'" + arg + "' is neither a scenario file nor a scenario kind");
  ScenarioSpec spec;
  spec.kind = *kind;
  if (colon != std::string::npos) spec.seed = std::stoull(arg.substr(colon + 1));
  return generate_scenario(spec);
}

// "dwa", "random", or "agent=<checkpoint.json>" (name taken from the file stem).
std::shared_ptr<Policy> resolve_policy(const std::string& arg) {
  if (arg == "dwa") return std::make_shared<DwaPolicy>();
  if (arg == "random") return std::make_shared<RandomPolicy>();
  const auto eq = arg.find('=');
  if (eq != std::string::npos && arg.substr(0, eq) == "agent") {
    const fs::path path = arg.substr(eq + 1);
    return std::make_shared<AgentPolicy>(agent_from_checkpoint(read_json_file(path)),
                                         path.stem().string());
  }
  throw InvalidSpec("unknown policy '" + arg + "' (expected dwa, random or agent=<file>)");
}

void emit_report(const Report& report, const std::string& out, bool deterministic) {
  std::cout << format_table(report, !deterministic);
  if (!out.empty()) write_json_file(out, report_to_json(report, !deterministic));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terrain navigation simulator: scenario generation, training and evaluation"};
  app.require_subcommand(1);

  // gen-scenario
  auto* gen = app.add_subcommand("gen-scenario", "Generate a scenario and write it as JSON");
  std::string kind_name = "normal";
  ScenarioSpec spec;
  std::string gen_out;
  gen->add_option("--kind", kind_name, "normal | low | low-high | forest")->capture_default_str();
  gen->add_option("--seed", spec.seed)->capture_default_str();
  gen->add_option("--extent", spec.extent, "side length in meters")->capture_default_str();
  gen->add_option("--density", spec.object_density, "objects per 100 m^2")->capture_default_str();
  gen->add_option("--cell-size", spec.cell_size)->capture_default_str();
  gen->add_option("--out", gen_out)->required();

  // train
  auto* tr = app.add_subcommand("train", "Train an agent with DDPG");
  drl::TrainConfig tc;
  std::string train_scenario = "normal";
  std::string out_checkpoint;
  std::string out_curve;
  std::string out_curve_plot;
  bool quiet = false;
  tr->add_option("--scenario", train_scenario, "scenario file or kind[:seed]")->capture_default_str();
  tr->add_option("--seed", tc.seed)->capture_default_str();
  tr->add_option("--episodes", tc.episodes)->capture_default_str();
  tr->add_option("--steps", tc.steps_per_episode)->capture_default_str();
  tr->add_option("--batch", tc.batch_size)->capture_default_str();
  tr->add_option("--gamma", tc.gamma)->capture_default_str();
  tr->add_option("--sigma", tc.noise_sigma)->capture_default_str();
  tr->add_option("--tau", tc.tau)->capture_default_str();
  tr->add_option("--warmup", tc.warmup_steps)->capture_default_str();
  tr->add_option("--actor-lr", tc.network.actor_opt.learning_rate)->capture_default_str();
  tr->add_option("--critic-lr", tc.network.critic_opt.learning_rate)->capture_default_str();
  tr->add_option("--out-checkpoint", out_checkpoint)->required();
  tr->add_option("--out-curve", out_curve);
  tr->add_option("--out-curve-plot", out_curve_plot, "learning curve as SVG");
  tr->add_flag("--quiet", quiet);

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate a checkpoint on one scenario");
  std::string eval_checkpoint;
  std::string eval_scenario = "normal";
  int eval_episodes = 50;
  std::uint64_t eval_seed = 0;
  std::string eval_report;
  std::string eval_logs;
  bool eval_deterministic = false;
  ev->add_option("--checkpoint", eval_checkpoint)->required();
  ev->add_option("--scenario", eval_scenario)->capture_default_str();
  ev->add_option("--episodes", eval_episodes)->capture_default_str();
  ev->add_option("--seed", eval_seed)->capture_default_str();
  ev->add_option("--out-report", eval_report);
  ev->add_option("--out-logs", eval_logs, "directory for per-episode JSON logs and CSV trajectories");
  ev->add_flag("--deterministic", eval_deterministic, "omit wall-clock timing from the output");

  // compare
  auto* cmp = app.add_subcommand("compare", "Run several policies on several scenarios");
  std::vector<std::string> policies = {"dwa", "random"};
  std::vector<std::string> scenarios = {"normal"};
  int cmp_episodes = 50;
  std::uint64_t cmp_seed = 0;
  std::string cmp_out;
  bool cmp_deterministic = false;
  cmp->add_option("--policies", policies, "dwa | random | agent=<checkpoint>")->delimiter(',')
      ->capture_default_str();
  cmp->add_option("--scenarios", scenarios, "scenario files or kind[:seed]")->delimiter(',')
      ->capture_default_str();
  cmp->add_option("--episodes", cmp_episodes)->capture_default_str();
  cmp->add_option("--seed", cmp_seed)->capture_default_str();
  cmp->add_option("--out", cmp_out, "report JSON");
  cmp->add_flag("--deterministic", cmp_deterministic, "omit wall-clock timing from the output");

  // replay
  auto* rp = app.add_subcommand("replay", "Render a logged episode");
  std::string replay_log;
  std::string replay_scenario;
  std::string replay_plot;
  std::string replay_csv;
  rp->add_option("--log", replay_log)->required();
  rp->add_option("--scenario", replay_scenario, "defaults to the log's scenario id");
  rp->add_option("--out-plot", replay_plot)->required();
  rp->add_option("--out-csv", replay_csv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto kind = parse_scenario_kind(kind_name);
      if (!kind) throw InvalidSpec("unknown scenario kind '" + kind_name + "'");
      spec.kind = *kind;
      const auto scenario = generate_scenario(spec);
      write_json_file(gen_out, scenario_to_json(scenario));
      std::printf("%s: %zu objects, relief %.3f m\n", scenario.id.c_str(),
                  scenario.objects.size(), scenario.grid->relief());
    } else if (*tr) {
      const Scenario scenario = resolve_scenario(train_scenario);
      const EnvConfig env_cfg;
      auto result = drl::train([&] { return NavigationEnv(scenario, env_cfg); }, tc);
      write_json_file(out_checkpoint, checkpoint_to_json(result.agent, tc));
      if (!out_curve.empty()) write_text_file(out_curve, curve_text(result.curve));
      if (!out_curve_plot.empty()) write_text_file(out_curve_plot, learning_curve_svg(result.curve));
      if (!quiet) {
        for (std::size_t i = 0; i < result.episodes.size(); ++i) {
          const auto& e = result.episodes[i];
          std::printf("episode %3zu  return %10.3f  steps %3d  %s\n", i, e.episode_return, e.steps,
                      std::string(to_string(e.terminal)).c_str());
        }
      }
    } else if (*ev) {
      const Scenario scenario = resolve_scenario(eval_scenario);
      const std::vector<std::shared_ptr<Policy>> pols = {resolve_policy("agent=" + eval_checkpoint)};
      std::vector<EpisodeLog> logs;
      const Report report = compare(pols, std::span(&scenario, 1), eval_episodes, eval_seed,
                                    EnvConfig{}, &logs);
      emit_report(report, eval_report, eval_deterministic);
      if (!eval_logs.empty()) {
        fs::create_directories(eval_logs);
        for (std::size_t i = 0; i < logs.size(); ++i) {
          const fs::path base = fs::path(eval_logs) / ("episode_" + std::to_string(i));
          write_json_file(base.string() + ".json", episode_log_to_json(logs[i], !eval_deterministic));
          write_text_file(base.string() + ".csv", trajectory_csv(logs[i]));
        }
        write_text_file(fs::path(eval_logs) / "trajectories.svg", trajectory_svg(scenario, logs));
      }
    } else if (*cmp) {
      std::vector<std::shared_ptr<Policy>> pols;
      for (const auto& p : policies) pols.push_back(resolve_policy(p));
      std::vector<Scenario> scens;
      for (const auto& s : scenarios) scens.push_back(resolve_scenario(s));
      emit_report(compare(pols, scens, cmp_episodes, cmp_seed, EnvConfig{}), cmp_out,
                  cmp_deterministic);
    } else if (*rp) {
      const EpisodeLog log = episode_log_from_json(read_json_file(replay_log));
      Scenario scenario;
      if (!replay_scenario.empty()) {
        scenario = resolve_scenario(replay_scenario);
      } else {
        // Generated ids look like "<Kind>-<seed>".
        const auto dash = log.scenario_id.rfind('-');
        if (dash == std::string::npos)
          throw InvalidSpec("cannot infer the scenario from id '" + log.scenario_id + "'; pass --scenario");
        scenario = resolve_scenario(log.scenario_id.substr(0, dash) + ":" +
                                    log.scenario_id.substr(dash + 1));
      }
      write_text_file(replay_plot, trajectory_svg(scenario, std::span(&log, 1)));
      if (!replay_csv.empty()) write_text_file(replay_csv, trajectory_csv(log));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
