#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nqkr/commands.hpp"
#include "nqkr/config.hpp"
#include "nqkr/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Resonant non-Hermitian kicked rotor: simulation and exact theory"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::string> out_dir, phi, snapshots;
  std::optional<int> n_modes;
  std::optional<long> t_max, record_every;
  std::optional<double> lambda, kick_k, epsilon;
  std::vector<std::string> sets;
  bool seedless = false;
  bool write_snapshots = false;

  app.add_option("--config", config_path, "key = value run configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--seedless", seedless,
               "accepted for scripts; every run is deterministic");
  app.add_option("--n-modes", n_modes, "momentum lattice size (power of two)");
  app.add_option("--t-max", t_max, "number of kicks");
  app.add_option("--lambda", lambda, "imaginary kick strength");
  app.add_option("--phi", phi, "relative phase, e.g. -pi/6 or 0.5");
  app.add_option("--kick-k", kick_k, "real kick strength K");
  app.add_option("--epsilon", epsilon, "OTOC translation parameter");
  app.add_option("--record-every", record_every, "record every n-th kick");
  app.add_option("--snapshots", snapshots, "comma-separated snapshot times");
  app.add_flag("--write-snapshots", write_snapshots,
               "write momentum distributions at the snapshot times");
  app.add_option("--set", sets, "override any config key: key=value");

  const std::pair<const char*, const char*> commands[] = {
      {"evolve", "propagate and write observables next to the theory curves"},
      {"theory", "tabulate the closed-form observables"},
      {"sweep", "phase diagrams of S_p/lambda, S_E and S_C/eps^2 over (t, lambda)"},
      {"fit", "exponential/Gaussian fits of momentum distributions"},
      {"table1", "late-time growth laws at phi = pi/2 and phi = pi"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? nqkr::cli::kExitOk : nqkr::cli::kExitConfig;
  }

  nqkr::RunConfig config;
  try {
    if (!config_path.empty()) config = nqkr::load_config(config_path);
    auto apply = [&config](const char* key, const auto& value) {
      if (!value) return;
      if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>) {
        config.set(key, *value);
      } else {
        config.set(key, std::to_string(*value));
      }
    };
    apply("out_dir", out_dir);
    apply("n_modes", n_modes);
    apply("t_max", t_max);
    apply("record_every", record_every);
    apply("phi", phi);
    apply("snapshots", snapshots);
    if (lambda) config.model.lambda = *lambda;
    if (kick_k) config.model.kick_k = *kick_k;
    if (epsilon) config.model.epsilon = *epsilon;
    if (write_snapshots) config.write_snapshots = true;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw nqkr::ConfigError("--set expects key=value, got '" + s + "'");
      }
      config.set(s.substr(0, eq), s.substr(eq + 1));
    }
  } catch (const nqkr::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nqkr::cli::kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  return nqkr::cli::run_command(name, config, std::cout, std::cerr);
}
