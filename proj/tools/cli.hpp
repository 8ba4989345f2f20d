#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sortreduce::cli {

enum ExitCode : int {
  ok = 0,
  non_member = 1,
  usage = 2,
  format = 3,
  solver_failed = 4,
  not_codim1 = 5,
  regime = 6,
  iteration_cap = 7,
  internal = 10,
};

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sortreduce::cli
