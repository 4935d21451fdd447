#pragma once

#include <string>
#include <vector>

namespace knot::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kVerification = 4 };

struct Outcome {
    int exit_code = kOk;
    std::string output;  ///< document for stdout; empty when written to --out
    std::string error;   ///< diagnostics for stderr
};

/// Runs one invocation. `args` excludes the program name.
Outcome execute(const std::vector<std::string>& args);

/// Process entry point: forwards argv to execute and writes the streams.
int main(int argc, char** argv);

}  // namespace knot::cli
