#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hnpoly {

// Runs one command: argv without the program name, e.g. {"bgmu", "--case",
// "PEL_C", "--d", "1", "--n", "4", "--mu", "2,2"}. JSON goes to `out` (or
// the --out file); diagnostics for usage errors go to `err`. Returns 0 on
// success, 1 on a domain error (reported as {"error", "detail"} JSON), 2 on
// a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hnpoly
