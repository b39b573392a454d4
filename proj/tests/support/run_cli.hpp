#pragma once

// Helper to drive the built CLI binary and capture its stdout and exit
// code. SYNCWALK_CLI_PATH is injected by the build.

#include <array>
#include <cstdio>
#include <string>

#include <sys/wait.h>

namespace cli {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

inline std::string binary_path() { return SYNCWALK_CLI_PATH; }

/// Runs `<env> <binary> <args>` through the shell, merging stderr into the
/// captured output.
inline RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string command = env_prefix + (env_prefix.empty() ? "" : " ") + "\"" +
                                binary_path() + "\" " + args + " 2>&1";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

}  // namespace cli
