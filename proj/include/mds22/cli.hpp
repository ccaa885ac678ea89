#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mds22/code.hpp"
#include "mds22/error.hpp"

namespace mds22 {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitMissingHelpers = 4,
  kExitMdsFailure = 5,
  kExitOracleGuard = 6,
};

int exit_code_for(Errc code) noexcept;

/// Custom code description:
///   {"field": "gf:p=7", "h": [[[a,b],[c,d],[e,f],[g,h]], ...],
///    "repair": [[[..4..],[..4..]], ...]}   ("repair" optional)
CodeSpec code_from_json(const nlohmann::json& doc);
CodeSpec load_custom_code(const std::filesystem::path& file);

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mds22
