#pragma once

#include <ostream>

namespace satrev::cli {

// Exit codes: 0 success, 1 usage, 2 parse error, 3 semantic error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace satrev::cli
