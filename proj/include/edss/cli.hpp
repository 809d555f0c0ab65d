#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace edss {

enum class Verb { Verify, Protocol, Sweep, Noise, Optimize, Decompose };

struct Command {
    Verb verb = Verb::Verify;
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> strings;
    std::string output_path;  // empty = stdout
    std::string format = "json";
};

/// Exit codes: 0 = success, 1 = verified failure with witness, 2 = usage error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HelpRequested {
    std::string text;
};

/// Deterministic parse of argv (without the program name). Throws UsageError on unknown
/// flags, missing required flags, malformed or out-of-range numbers.
Command parse(const std::vector<std::string>& argv);

int execute(const Command& cmd);

/// Full entry point: parse + execute with the exit-code contract.
int run_cli(int argc, char** argv);

}  // namespace edss
