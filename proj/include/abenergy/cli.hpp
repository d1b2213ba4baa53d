#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "abenergy/report.hpp"
#include "abenergy/scenario.hpp"

namespace abenergy::cli {

/// Exit codes: 0 success, 1 verification failure (or a computation that did
/// not converge), 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

Table phase_table(const Scenario& s);
Table squid_table(const Scenario& s);
Table shielding_table(const Scenario& s);
Table verify_table(const Scenario& s, bool& all_passed);
Table constants_table();

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abenergy::cli
