#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rcdim {

/// Full command-line entry point; returns the process exit status and
/// writes machine-readable output/errors to the given streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rcdim
