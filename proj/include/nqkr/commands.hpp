#pragma once

#include <filesystem>
#include <ostream>
#include <string_view>
#include <vector>

#include "nqkr/config.hpp"

namespace nqkr::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

using Paths = std::vector<std::filesystem::path>;

// Each command writes into config.out_dir (created if missing), reports
// progress to `log`, and returns the files it wrote. Errors propagate as
// exceptions; run_command maps them to exit codes.

// evolve.csv: t,log_norm,mean_p,mean_p2,otoc,mean_p_theory,mean_p2_theory,
// otoc_theory. With write_snapshots, snapshot_t<T>.csv holds n,weight.
Paths cmd_evolve(const RunConfig& config, std::ostream& log);

// theory.csv: t,mean_p,mean_p2,otoc,s_p,s_e,s_c,dp_dt,regime.
Paths cmd_theory(const RunConfig& config, std::ostream& log);

// sweep_<quantity>.csv (t,lambda,value,source,flag) and sweep_<quantity>.gp
// for S_p/lambda, S_E and S_C/eps^2.
Paths cmd_sweep(const RunConfig& config, std::ostream& log);

// fit_report.json with per-snapshot fits and the drift line of the
// Gaussian centres.
Paths cmd_fit(const RunConfig& config, std::ostream& log);

// table1.json and table1.txt: late-time growth laws at phi = pi/2 and pi.
Paths cmd_table1(const RunConfig& config, std::ostream& log);

// Dispatches by subcommand name and converts exceptions to exit codes:
// kExitConfig for configuration/domain errors, kExitNumerical for
// resolution, overflow and fit failures.
int run_command(std::string_view name, const RunConfig& config,
                std::ostream& log, std::ostream& err);

}  // namespace nqkr::cli
