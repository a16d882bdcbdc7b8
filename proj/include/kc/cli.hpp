#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kc {

// Command-line driver. Exit codes: 0 success, 1 validation or equivalence
// failure (including unreadable/invalid inputs), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kc
