#include "coverfollow/harness/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "coverfollow/errors.hpp"

namespace coverfollow::harness {

namespace {

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

json vec2_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec2_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json state_json(const RobotState& s) {
  return {{"x", s.x},         {"y", s.y},         {"z", s.z},
          {"heading", s.heading}, {"v", s.v},     {"omega", s.omega},
          {"roll", s.roll},   {"pitch", s.pitch}};
}

RobotState state_from(const json& j) {
  RobotState s;
  s.x = get<double>(j, "x");
  s.y = get<double>(j, "y");
  s.z = get<double>(j, "z");
  s.heading = get<double>(j, "heading");
  s.v = get<double>(j, "v");
  s.omega = get<double>(j, "omega");
  s.roll = get<double>(j, "roll");
  s.pitch = get<double>(j, "pitch");
  return s;
}

StepEvent event_from(const std::string& name) {
  auto e = parse_step_event(name);
  if (!e) throw ParseError("unknown step event '" + name + "'");
  return *e;
}

}  // namespace

json finite_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

double double_or_inf(const json& value) {
  if (value.is_null()) return std::numeric_limits<double>::infinity();
  if (!value.is_number()) throw ParseError("expected a number or null");
  return value.get<double>();
}

json scenario_to_json(const Scenario& scenario) {
  const auto& g = *scenario.grid;
  json objects = json::array();
  for (const auto& o : scenario.objects) {
    objects.push_back({{"object_id", o.object_id},
                       {"class", std::string(to_string(o.cls))},
                       {"x", o.position.x},
                       {"y", o.position.y},
                       {"z", o.position.z},
                       {"footprint_radius", o.footprint_radius},
                       {"height", o.obj_height}});
  }
  json j = {{"id", scenario.id},
            {"kind", std::string(to_string(scenario.spec.kind))},
            {"seed", scenario.spec.seed},
            {"extent_m", scenario.spec.extent},
            {"object_density", scenario.spec.object_density},
            {"cell_size_m", g.cell_size()},
            {"origin", vec2_json(g.origin())},
            {"width_cells", g.width_cells()},
            {"height_cells", g.height_cells()},
            {"heights", std::vector<double>(g.heights().begin(), g.heights().end())},
            {"objects", objects},
            {"start_zone", {vec2_json(scenario.start_zone.min), vec2_json(scenario.start_zone.max)}}};
  if (scenario.fixed_goal) j["goal"] = vec2_json(*scenario.fixed_goal);
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.id = get<std::string>(j, "id");
  const auto kind = parse_scenario_kind(get<std::string>(j, "kind"));
  if (!kind) throw ParseError("unknown scenario kind");
  s.spec.kind = *kind;
  s.spec.seed = get<std::uint64_t>(j, "seed");
  s.spec.extent = get<double>(j, "extent_m");
  s.spec.object_density = get<double>(j, "object_density");
  s.spec.cell_size = get<double>(j, "cell_size_m");
  try {
    s.grid = std::make_shared<const ElevationGrid>(
        get<std::size_t>(j, "width_cells"), get<std::size_t>(j, "height_cells"),
        s.spec.cell_size, vec2_from(j.at("origin")), get<std::vector<double>>(j, "heights"));
  } catch (const InvalidSpec& e) {
    throw ParseError(std::string("elevation grid: ") + e.what());
  }
  for (const auto& o : j.at("objects")) {
    CoverObject obj;
    obj.object_id = get<int>(o, "object_id");
    const auto cls = parse_cover_class(get<std::string>(o, "class"));
    if (!cls) throw ParseError("unknown object class");
    obj.cls = *cls;
    obj.position = {get<double>(o, "x"), get<double>(o, "y"), get<double>(o, "z")};
    obj.footprint_radius = get<double>(o, "footprint_radius");
    obj.obj_height = get<double>(o, "height");
    s.objects.push_back(obj);
  }
  const auto& zone = j.at("start_zone");
  if (!zone.is_array() || zone.size() != 2) throw ParseError("start_zone must be [min, max]");
  s.start_zone = {vec2_from(zone[0]), vec2_from(zone[1])};
  if (j.contains("goal")) s.fixed_goal = vec2_from(j.at("goal"));
  return s;
}

json detections_to_json(std::span<const Detection> detections) {
  json arr = json::array();
  for (const auto& d : detections) {
    arr.push_back({{"frame_id", d.frame_id},   {"class_id", d.class_id},
                   {"class_name", d.class_name}, {"confidence", d.confidence},
                   {"x_min", d.x_min},         {"y_min", d.y_min},
                   {"x_max", d.x_max},         {"y_max", d.y_max},
                   {"object_id", d.object_id}, {"kpts", json::array()},
                   {"x_pos", d.x_pos},         {"y_pos", d.y_pos},
                   {"z_pos", d.z_pos}});
  }
  return arr;
}

std::vector<Detection> detections_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("detections must be an array");
  std::vector<Detection> out;
  for (const auto& e : j) {
    Detection d;
    d.frame_id = get<long>(e, "frame_id");
    d.class_id = get<int>(e, "class_id");
    d.class_name = get<std::string>(e, "class_name");
    d.confidence = get<double>(e, "confidence");
    d.x_min = get<double>(e, "x_min");
    d.y_min = get<double>(e, "y_min");
    d.x_max = get<double>(e, "x_max");
    d.y_max = get<double>(e, "y_max");
    d.object_id = get<int>(e, "object_id");
    d.x_pos = get<double>(e, "x_pos");
    d.y_pos = get<double>(e, "y_pos");
    d.z_pos = get<double>(e, "z_pos");
    out.push_back(std::move(d));
  }
  return out;
}

json episode_log_to_json(const EpisodeLog& log, bool include_timing) {
  json records = json::array();
  for (const auto& r : log.records) {
    json verdict = {{"is_cover", r.verdict.is_cover},
                    {"cover_distance", finite_or_null(r.verdict.cover_distance)},
                    {"cover_bearing", r.verdict.cover_bearing}};
    verdict["nearest_object_id"] =
        r.verdict.nearest_object_id ? json(*r.verdict.nearest_object_id) : json(nullptr);
    records.push_back({{"tick", r.tick},
                       {"state", state_json(r.state)},
                       {"command", {{"v", r.command.v}, {"omega", r.command.omega}}},
                       {"reward",
                        {{"r_goal", r.reward.r_goal},
                         {"r_dir", r.reward.r_dir},
                         {"r_stab", r.reward.r_stab},
                         {"r_elev", r.reward.r_elev},
                         {"r_cover", r.reward.r_cover},
                         {"total", r.reward.total}}},
                       {"verdict", verdict},
                       {"event", std::string(to_string(r.event))}});
  }
  json j = {{"scenario_id", log.scenario_id},
            {"seed", log.seed},
            {"goal", vec2_json(log.goal)},
            {"dt", log.dt},
            {"terminal", std::string(to_string(log.terminal))},
            {"sim_time_s", log.sim_time_s()},
            {"records", records}};
  if (include_timing) j["wall_clock_s"] = log.wall_clock_s;
  return j;
}

EpisodeLog episode_log_from_json(const json& j) {
  EpisodeLog log;
  log.scenario_id = get<std::string>(j, "scenario_id");
  log.seed = get<std::uint64_t>(j, "seed");
  log.goal = vec2_from(j.at("goal"));
  log.dt = get<double>(j, "dt");
  log.terminal = event_from(get<std::string>(j, "terminal"));
  log.wall_clock_s = j.contains("wall_clock_s") ? get<double>(j, "wall_clock_s") : 0.0;
  for (const auto& e : j.at("records")) {
    StepRecord r;
    r.tick = get<long>(e, "tick");
    r.state = state_from(e.at("state"));
    r.command = {get<double>(e.at("command"), "v"), get<double>(e.at("command"), "omega")};
    const auto& rw = e.at("reward");
    r.reward = {get<double>(rw, "r_goal"), get<double>(rw, "r_dir"),  get<double>(rw, "r_stab"),
                get<double>(rw, "r_elev"), get<double>(rw, "r_cover"), get<double>(rw, "total")};
    const auto& v = e.at("verdict");
    r.verdict.is_cover = get<bool>(v, "is_cover");
    r.verdict.cover_distance = double_or_inf(v.at("cover_distance"));
    r.verdict.cover_bearing = get<double>(v, "cover_bearing");
    if (!v.at("nearest_object_id").is_null())
      r.verdict.nearest_object_id = get<int>(v, "nearest_object_id");
    r.event = event_from(get<std::string>(e, "event"));
    log.records.push_back(r);
  }
  return log;
}

std::string trajectory_csv(const EpisodeLog& log) {
  std::string out =
      "tick,x,y,z,heading,v,omega,roll,pitch,r_goal,r_dir,r_stab,r_elev,r_cover,total,is_cover,"
      "event\n";
  char line[1024];
  for (const auto& r : log.records) {
    const auto& s = r.state;
    const auto& w = r.reward;
    std::snprintf(line, sizeof line,
                  "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%d,%s\n",
                  r.tick, s.x, s.y, s.z, s.heading, s.v, s.omega, s.roll, s.pitch, w.r_goal,
                  w.r_dir, w.r_stab, w.r_elev, w.r_cover, w.total, r.verdict.is_cover ? 1 : 0,
                  std::string(to_string(r.event)).c_str());
    out += line;
  }
  return out;
}

std::vector<StepRecord> parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("tick,", 0) != 0)
    throw ParseError("trajectory csv: missing header");
  std::vector<StepRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 17) throw ParseError("trajectory csv: expected 17 columns");
    try {
      StepRecord r;
      r.tick = std::stol(cells[0]);
      double* fields[] = {&r.state.x,      &r.state.y,      &r.state.z,       &r.state.heading,
                          &r.state.v,      &r.state.omega,  &r.state.roll,    &r.state.pitch,
                          &r.reward.r_goal, &r.reward.r_dir, &r.reward.r_stab, &r.reward.r_elev,
                          &r.reward.r_cover, &r.reward.total};
      for (int k = 0; k < 14; ++k) *fields[k] = std::stod(cells[1 + k]);
      r.verdict.is_cover = cells[15] == "1";
      r.event = event_from(cells[16]);
      out.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError("trajectory csv: bad number in '" + line + "'");
    }
  }
  return out;
}

json metrics_to_json(const Metrics& m, bool include_timing) {
  json j = {{"episodes", m.episodes},
            {"success_rate", m.success_rate},
            {"mean_trajectory_length", m.mean_trajectory_length},
            {"mean_sim_time", m.mean_sim_time},
            {"in_cover_ratio", m.in_cover_ratio},
            {"mean_cumulative_abs_dh", m.mean_cumulative_abs_dh}};
  if (include_timing) j["mean_execution_time"] = m.mean_execution_time;
  return j;
}

json report_to_json(const Report& report, bool include_timing) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"policy", r.policy},
                    {"scenario_id", r.scenario_id},
                    {"metrics", metrics_to_json(r.metrics, include_timing)}});
  return {{"seed", report.seed}, {"episodes_per_cell", report.episodes_per_cell}, {"rows", rows}};
}

json train_config_to_json(const drl::TrainConfig& c) {
  return {{"episodes", c.episodes},
          {"steps_per_episode", c.steps_per_episode},
          {"batch_size", c.batch_size},
          {"gamma", c.gamma},
          {"noise_sigma", c.noise_sigma},
          {"tau", c.tau},
          {"seed", c.seed},
          {"warmup_steps", c.warmup_steps},
          {"updates_per_step", c.updates_per_step},
          {"replay_capacity", c.replay_capacity},
          {"actor_hidden", c.network.actor_hidden},
          {"critic_hidden", c.network.critic_hidden},
          {"actor_lr", c.network.actor_opt.learning_rate},
          {"critic_lr", c.network.critic_opt.learning_rate}};
}

drl::TrainConfig train_config_from_json(const json& j) {
  drl::TrainConfig c;
  c.episodes = get<int>(j, "episodes");
  c.steps_per_episode = get<int>(j, "steps_per_episode");
  c.batch_size = get<int>(j, "batch_size");
  c.gamma = get<double>(j, "gamma");
  c.noise_sigma = get<double>(j, "noise_sigma");
  c.tau = get<double>(j, "tau");
  c.seed = get<std::uint64_t>(j, "seed");
  c.warmup_steps = get<int>(j, "warmup_steps");
  c.updates_per_step = get<int>(j, "updates_per_step");
  c.replay_capacity = get<std::size_t>(j, "replay_capacity");
  c.network.actor_hidden = get<std::vector<int>>(j, "actor_hidden");
  c.network.critic_hidden = get<std::vector<int>>(j, "critic_hidden");
  c.network.actor_opt.learning_rate = get<double>(j, "actor_lr");
  c.network.critic_opt.learning_rate = get<double>(j, "critic_lr");
  return c;
}

json mlp_to_json(const drl::Mlp& net) {
  return {{"sizes", net.sizes()},
          {"output", net.output_activation() == drl::OutputActivation::Tanh ? "tanh" : "identity"},
          {"params", net.flatten()}};
}

drl::Mlp mlp_from_json(const json& j) {
  const auto sizes = get<std::vector<int>>(j, "sizes");
  const auto out = get<std::string>(j, "output");
  if (out != "tanh" && out != "identity") throw ParseError("unknown output activation");
  if (sizes.size() < 2) throw ParseError("network needs at least two layer sizes");
  auto net = drl::Mlp::zeros(sizes, out == "tanh" ? drl::OutputActivation::Tanh
                                                  : drl::OutputActivation::Identity);
  const auto params = get<std::vector<double>>(j, "params");
  if (params.size() != net.parameter_count()) throw ParseError("parameter count mismatch");
  net.unflatten(params);
  return net;
}

json checkpoint_to_json(const drl::Agent& agent, const drl::TrainConfig& config) {
  return {{"obs_dim", agent.obs_dim},
          {"actor", mlp_to_json(agent.actor)},
          {"critic", mlp_to_json(agent.critic)},
          {"actor_target", mlp_to_json(agent.actor_target)},
          {"critic_target", mlp_to_json(agent.critic_target)},
          {"train_config", train_config_to_json(config)}};
}

drl::Agent agent_from_checkpoint(const json& j, drl::TrainConfig* config) {
  drl::Agent a;
  a.obs_dim = get<int>(j, "obs_dim");
  a.actor = mlp_from_json(j.at("actor"));
  a.critic = mlp_from_json(j.at("critic"));
  a.actor_target = mlp_from_json(j.at("actor_target"));
  a.critic_target = mlp_from_json(j.at("critic_target"));
  if (a.actor.input_size() != a.obs_dim || a.critic.input_size() != a.obs_dim + drl::kActionDim)
    throw ParseError("checkpoint network sizes do not match obs_dim");
  const auto cfg = train_config_from_json(j.at("train_config"));
  a.actor_opt = drl::OptState::for_network(a.actor, cfg.network.actor_opt);
  a.critic_opt = drl::OptState::for_network(a.critic, cfg.network.critic_opt);
  if (config) *config = cfg;
  return a;
}

std::string curve_text(std::span<const double> curve) {
  std::string out;
  char line[64];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu %.17g\n", i, curve[i]);
    out += line;
  }
  return out;
}

std::vector<double> parse_curve(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> out;
  std::size_t index = 0;
  double value = 0.0;
  while (in >> index >> value) {
    if (index != out.size()) throw ParseError("learning curve: episodes out of order");
    out.push_back(value);
  }
  if (!in.eof()) throw ParseError("learning curve: malformed line");
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(1) + "\n");
}

}  // namespace coverfollow::harness
