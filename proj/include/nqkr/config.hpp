#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nqkr/model.hpp"

namespace nqkr {

// Flat key = value run configuration shared by every subcommand.
// Defaults reproduce the K = 1, phi = -pi/6, lambda = 0.3 reference run.
struct RunConfig {
  ModelParams model;
  int max_modes = 1 << 16;

  long t_max = 100;
  long record_every = 0;  // 0: 1 up to t_max = 1000, 10 beyond
  std::string out_dir = "out";
  bool write_snapshots = false;
  std::vector<long> snapshots = {2, 10, 1000, 3000};

  // theory: t grid from theory_t_min to t_max; theory_points = 0 gives one
  // row per integer t.
  double theory_t_min = 0.0;
  int theory_points = 0;
  std::string theory_spacing = "linear";  // linear | log

  long sweep_t_min = 1;
  long sweep_t_max = 100;
  long sweep_t_step = 1;
  double sweep_lambda_min = 0.1;
  double sweep_lambda_max = 1.0;
  int sweep_lambda_count = 10;
  std::string sweep_source = "theory";  // theory | simulation | both

  std::string fit_kind = "auto";  // auto | exponential | gaussian | both

  long table1_t_max = 3000;
  long table1_window = 500;

  bool operator==(const RunConfig&) const = default;

  // Sets one key from its textual value. Unknown keys and malformed values
  // throw ConfigError.
  void set(std::string_view key, std::string_view value);

  // Checks cross-field constraints (ModelParams::validate plus ranges).
  void validate() const;

  static const std::vector<std::string>& keys();
};

RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
std::string serialize_config(const RunConfig& config);

// Accepts plain numbers and multiples of pi: "pi", "-pi/6", "2*pi/3",
// "0.5pi".
double parse_angle(std::string_view text);

}  // namespace nqkr
