// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// With --cli PATH the criterion 9 line also covers the built executable:
// `verify` must exit 0 and repeated runs must print identical bytes.

#include "knot/acceptance.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

namespace {

struct Run {
    int status = -1;
    std::string output;
};

Run capture(const std::string& command) {
    Run r;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    const int status = pclose(pipe);
    r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string check_binary(const std::string& exe) {
    const std::string q = "'" + exe + "'";
    const Run verify = capture(q + " verify");
    if (verify.status != 0) return "verify exited with " + std::to_string(verify.status);
    for (const char* args : {" table --N 1 --m-max 7 --dim 5 --partial 1", " shoot --N 2 --nu 0.75 --energy 2",
                             " scan --N 1 --energy 1 --nu 0.05:1.95:400 --format csv"}) {
        const Run a = capture(q + args);
        const Run b = capture(q + args);
        if (a.status != 0 || b.status != 0) return std::string("non-zero exit for") + args;
        if (a.output != b.output || a.output.empty()) return std::string("output differs for") + args;
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    std::string exe;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") exe = argv[i + 1];

    bool all = true;
    for (knot::acceptance::CriterionResult r : knot::acceptance::run_all()) {
        if (r.id == 9 && !exe.empty()) {
            const std::string problem = check_binary(exe);
            if (!problem.empty()) {
                r.passed = false;
                r.detail += "; executable: " + problem;
            } else {
                r.detail += "; executable verify exit 0, repeated runs identical";
            }
        }
        all = all && r.passed;
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
    }
    std::fflush(stdout);
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
