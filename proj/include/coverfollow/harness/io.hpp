#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverfollow/drl/train.hpp"
#include "coverfollow/harness/metrics.hpp"

namespace coverfollow::harness {

using json = nlohmann::json;

/// Non-finite doubles become null, and null reads back as +infinity.
json finite_or_null(double value);
double double_or_inf(const json& value);

json scenario_to_json(const Scenario& scenario);
/// Throws ParseError on malformed input.
Scenario scenario_from_json(const json& j);

/// Detector-style records; kpts is always an empty list.
json detections_to_json(std::span<const Detection> detections);
std::vector<Detection> detections_from_json(const json& j);

/// include_timing = false drops wall_clock_s so the output is reproducible.
json episode_log_to_json(const EpisodeLog& log, bool include_timing = true);
EpisodeLog episode_log_from_json(const json& j);

/// Header tick,x,y,z,heading,v,omega,roll,pitch,r_goal,r_dir,r_stab,r_elev,r_cover,total,is_cover,event
/// with one row per record, numbers printed with 17 significant digits.
std::string trajectory_csv(const EpisodeLog& log);
/// Parses trajectory_csv output; verdict distance and object id are not stored.
std::vector<StepRecord> parse_trajectory_csv(const std::string& text);

json metrics_to_json(const Metrics& metrics, bool include_timing = true);
json report_to_json(const Report& report, bool include_timing = true);

json train_config_to_json(const drl::TrainConfig& config);
drl::TrainConfig train_config_from_json(const json& j);

json mlp_to_json(const drl::Mlp& net);
drl::Mlp mlp_from_json(const json& j);

/// All four networks plus the training configuration. Optimizer moments are
/// not stored; a loaded agent starts with fresh optimizer state.
json checkpoint_to_json(const drl::Agent& agent, const drl::TrainConfig& config);
drl::Agent agent_from_checkpoint(const json& j, drl::TrainConfig* config = nullptr);

/// "episode return" per line.
std::string curve_text(std::span<const double> curve);
std::vector<double> parse_curve(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace coverfollow::harness
