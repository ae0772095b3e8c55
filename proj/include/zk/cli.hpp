#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // configuration error or failed gate
inline constexpr int kExitBlowUp = 2;

// Entry point of the zkstrip tool. args[0] is the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace zk::cli
