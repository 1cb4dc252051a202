#pragma once

#include <string>
#include <vector>

namespace tcm::cli {

enum class VerifyLevel { fast, full };

VerifyLevel parse_verify_level(const std::string& name);

struct CriterionResult {
    std::string id;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the acceptance-criteria property suites. The full level runs every
/// criterion at its stated size and tolerance; fast runs reduced sizes for
/// smoke checking. The tamper flag is a fault-injection hook that corrupts
/// one tolerance and must produce a named failure.
std::vector<CriterionResult> run_verification(VerifyLevel level,
                                              bool tamper = false);

/// Prints one pass/fail line per criterion; returns 0 iff all passed,
/// kExitVerifyFailure otherwise.
int cmd_verify(VerifyLevel level, bool tamper = false);

} // namespace tcm::cli
