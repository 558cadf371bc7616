#pragma once

#include <ostream>

namespace nsbayes {

// Exit codes: 0 ok, 2 bad input, 3 certificate failure, 4 division by zero.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsbayes
