//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SFILES_TOOLS_CLI_H_
#define SFILES_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace sfiles::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kSchemaError = 2;
inline constexpr int kInvariantError = 3;
inline constexpr int kParseError = 4;

// Runs the `sfiles` command line. `args` excludes the program name. Payload
// goes to `out`, diagnostics to `err`; stdin is read from `in`.
int run(const std::vector<std::string> &args, std::istream &in,
        std::ostream &out, std::ostream &err);

}  // namespace sfiles::cli

#endif  // SFILES_TOOLS_CLI_H_
