#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jordan::cli {

struct Verdict {
  std::string check;
  bool pass = true;
  std::string witness;
};

/// exit_code: 0 when every verdict passes, 1 when one fails, 2 on usage or input errors.
struct RunReport {
  std::string command;
  std::vector<Verdict> verdicts;
  int exit_code = 0;
};

/// Runs one subcommand. args excludes the program name. The report goes to
/// out; usage and input errors go to err.
RunReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jordan::cli
