#include "nqkr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "nqkr/csv.hpp"
#include "nqkr/errors.hpp"

namespace nqkr {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("config: bad value '" + std::string(text) +
                      "' for key '" + std::string(key) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("config: bad boolean '" + std::string(text) +
                    "' for key '" + std::string(key) + "'");
}

std::vector<long> parse_list(std::string_view key, std::string_view text) {
  std::vector<long> out;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<long>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field number_field(std::string key, T RunConfig::*member) {
  return {key,
          [key, member](RunConfig& c, std::string_view v) {
            c.*member = parse_number<T>(key, v);
          },
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return format_number(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          }};
}

template <typename T>
Field model_field(std::string key, T ModelParams::*member) {
  return {key,
          [key, member](RunConfig& c, std::string_view v) {
            c.model.*member = parse_number<T>(key, v);
          },
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return format_number(c.model.*member);
            } else {
              return std::to_string(c.model.*member);
            }
          }};
}

Field choice_field(std::string key, std::string RunConfig::*member,
                   std::initializer_list<std::string_view> allowed) {
  std::vector<std::string> options(allowed.begin(), allowed.end());
  return {key,
          [key, member, options](RunConfig& c, std::string_view v) {
            v = trim(v);
            if (std::find(options.begin(), options.end(), v) == options.end()) {
              throw ConfigError("config: '" + std::string(v) +
                                "' is not a valid value for '" + key + "'");
            }
            c.*member = std::string(v);
          },
          [member](const RunConfig& c) { return c.*member; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(model_field("kick_k", &ModelParams::kick_k));
    f.push_back(model_field("lambda", &ModelParams::lambda));
    f.push_back({"phi",
                 [](RunConfig& c, std::string_view v) {
                   c.model.phi = parse_angle(v);
                 },
                 [](const RunConfig& c) { return format_number(c.model.phi); }});
    f.push_back(model_field("hbar_eff", &ModelParams::hbar_eff));
    f.push_back(model_field("epsilon", &ModelParams::epsilon));
    f.push_back(model_field("n_modes", &ModelParams::n_modes));
    f.push_back(number_field("max_modes", &RunConfig::max_modes));
    f.push_back(number_field("t_max", &RunConfig::t_max));
    f.push_back(number_field("record_every", &RunConfig::record_every));
    f.push_back({"out_dir",
                 [](RunConfig& c, std::string_view v) {
                   c.out_dir = std::string(trim(v));
                 },
                 [](const RunConfig& c) { return c.out_dir; }});
    f.push_back({"write_snapshots",
                 [](RunConfig& c, std::string_view v) {
                   c.write_snapshots = parse_bool("write_snapshots", v);
                 },
                 [](const RunConfig& c) {
                   return std::string(c.write_snapshots ? "true" : "false");
                 }});
    f.push_back({"snapshots",
                 [](RunConfig& c, std::string_view v) {
                   c.snapshots = parse_list("snapshots", v);
                 },
                 [](const RunConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.snapshots.size(); ++i) {
                     if (i) s += ',';
                     s += std::to_string(c.snapshots[i]);
                   }
                   return s;
                 }});
    f.push_back(number_field("theory_t_min", &RunConfig::theory_t_min));
    f.push_back(number_field("theory_points", &RunConfig::theory_points));
    f.push_back(choice_field("theory_spacing", &RunConfig::theory_spacing,
                             {"linear", "log"}));
    f.push_back(number_field("sweep_t_min", &RunConfig::sweep_t_min));
    f.push_back(number_field("sweep_t_max", &RunConfig::sweep_t_max));
    f.push_back(number_field("sweep_t_step", &RunConfig::sweep_t_step));
    f.push_back(number_field("sweep_lambda_min", &RunConfig::sweep_lambda_min));
    f.push_back(number_field("sweep_lambda_max", &RunConfig::sweep_lambda_max));
    f.push_back(
        number_field("sweep_lambda_count", &RunConfig::sweep_lambda_count));
    f.push_back(choice_field("sweep_source", &RunConfig::sweep_source,
                             {"theory", "simulation", "both"}));
    f.push_back(choice_field("fit_kind", &RunConfig::fit_kind,
                             {"auto", "exponential", "gaussian", "both"}));
    f.push_back(number_field("table1_t_max", &RunConfig::table1_t_max));
    f.push_back(number_field("table1_window", &RunConfig::table1_window));
    return f;
  }();
  return table;
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string_view original = trim(text);
  std::string_view s = original;
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return parse_number<double>("phi", s);

  double factor = 1.0;
  std::string_view head = trim(s.substr(0, pi_pos));
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  if (head == "-") {
    factor = -1.0;
  } else if (head == "+") {
    factor = 1.0;
  } else if (!head.empty()) {
    factor = parse_number<double>("phi", head);
  }
  std::string_view tail = trim(s.substr(pi_pos + 2));
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') {
      throw ConfigError("config: cannot parse angle '" + std::string(original) + "'");
    }
    divisor = parse_number<double>("phi", tail.substr(1));
    if (divisor == 0.0) throw ConfigError("config: angle divides by zero");
  }
  return factor * std::numbers::pi / divisor;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  for (const auto& f : fields()) {
    if (f.key == key) {
      f.set(*this, value);
      return;
    }
  }
  throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
  try {
    model.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (max_modes < model.n_modes) {
    throw ConfigError("config: max_modes must be >= n_modes");
  }
  if (t_max < 0) throw ConfigError("config: t_max must be >= 0");
  if (record_every < 0) throw ConfigError("config: record_every must be >= 0");
  if (theory_points < 0) throw ConfigError("config: theory_points must be >= 0");
  if (theory_t_min < 0.0 || theory_t_min > static_cast<double>(t_max)) {
    throw ConfigError("config: theory_t_min must lie in [0, t_max]");
  }
  if (theory_spacing == "log" && theory_t_min <= 0.0) {
    throw ConfigError("config: log spacing needs theory_t_min > 0");
  }
  if (sweep_t_min < 0 || sweep_t_max < sweep_t_min || sweep_t_step < 1) {
    throw ConfigError("config: invalid sweep t axis");
  }
  if (!(sweep_lambda_min > 0.0) || sweep_lambda_max < sweep_lambda_min ||
      sweep_lambda_count < 1) {
    throw ConfigError("config: invalid sweep lambda axis");
  }
  for (long s : snapshots) {
    if (s < 0) throw ConfigError("config: snapshot times must be >= 0");
  }
  if (table1_t_max < 2 || table1_window < 2 || table1_window > table1_t_max) {
    throw ConfigError("config: invalid table1 window");
  }
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.key);
    return out;
  }();
  return k;
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) +
                        " is not 'key = value'");
    }
    base.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace nqkr
