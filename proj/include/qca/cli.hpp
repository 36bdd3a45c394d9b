#pragma once

#include <string>
#include <vector>

namespace qca::cli {

/// Entry point behind the qca binary. Exit codes: 0 well-formed / success,
/// 1 not well-formed, 2 usage, parse or resource error.
int run(const std::vector<std::string>& args);

}  // namespace qca::cli
