#pragma once

#include <iosfwd>

namespace remsim::cli {

/// Exit codes: 0 ok, 1 runtime failure, 2 bad usage or config.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace remsim::cli
