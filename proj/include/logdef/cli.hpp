#pragma once

#include <map>
#include <string>
#include <vector>

#include "logdef/io.hpp"

namespace logdef {

struct CommandResult {
  int exit_code = 0;
  json report;
  std::map<std::string, std::string> curves;  // file stem -> CSV text
};

// Exit codes: 0 holds / succeeded, 1 refuted, 2 undecided, 3 input error.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace logdef
