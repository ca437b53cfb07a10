#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starcodim {

// Batch front-end; args excludes the program name. Exit codes: 0 success or
// all checks pass, 1 a verification failed, 2 input/configuration error,
// 3 a search ended without reaching its target (partial ledger printed).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace starcodim
