#pragma once

#include <string>
#include <vector>

#include "segal/verdict.hpp"

namespace segal {

// Command-line entry point.  Exit status: 0 on pass, 1 on a failed check,
// 2 on usage or input errors.
int run_cli(int argc, const char* const* argv);

}  // namespace segal
