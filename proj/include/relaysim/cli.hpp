#pragma once

#include <iosfwd>

namespace relaysim {

/// Entry point of the `relaysim` tool. Returns 0 on success, 2 on argument
/// errors and 1 on runtime or I/O failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relaysim
