#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liedim::cli {

// Exit codes: 0 success / claim holds, 1 claim violated, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace liedim::cli
