#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mzsv::cli {

/// The command grammar, printed on usage errors.
std::string grammar();

/// Runs one command (arguments without the program name). Exit codes:
/// 0 success, 1 a check failed or a computation did not converge,
/// 2 usage or domain error.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int parse_and_dispatch(const std::vector<std::string>& args);

}  // namespace mzsv::cli
