#pragma once

#include <string>
#include <vector>

namespace tailcert {

// Runs one CLI invocation; args excludes the program name. Returns the
// process exit code: 0 success with every pass field true, 1 when a
// verification or calibration comes back failing, 2 on configuration
// errors (bad flags, malformed config files, domain violations).
int run_cli(const std::vector<std::string>& args);

}  // namespace tailcert
