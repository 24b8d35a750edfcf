#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lgram {

inline constexpr int kSchemaVersion = 1;

// args excludes the program name. Exit codes: 0 success, 1 negative result
// (not derivable, failed check), 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string default_lexicon_path();

}  // namespace lgram
