#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "patterns/ordinal.hpp"

namespace patterns {

// Exit codes: 0 success, 1 a law or condition fails (a COUNTEREXAMPLE block is
// printed), 2 usage or input error, 3 an internal self-check failed.
// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "0..12", "0,1,w,w + 1" or a mix; returned ascending without duplicates.
std::vector<Ordinal> parse_universe(const std::string& text);

}  // namespace patterns
