#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvcreeper/app_spec.hpp"
#include "tvcreeper/session.hpp"
#include "tvcreeper/testgen.hpp"

namespace tvc {

enum class Outcome { Pass, FailMismatch, FailFault };

std::string_view outcomeName(Outcome outcome);

struct TraceStep {
    std::string expected;
    std::string observed;
    std::vector<LogEvent> events;

    bool operator==(const TraceStep&) const = default;
};

/// failedStep indexes the test's node sequence: 0 means the start state did
/// not match, i >= 1 means execution stopped at press i. Unset when the test
/// ran to the end (pass, or fail-fault from a non-fatal mutant on a matching
/// trace).
struct Verdict {
    Outcome outcome = Outcome::Pass;
    std::optional<std::size_t> failedStep;
    std::set<std::string> faultIds;
    std::vector<TraceStep> trace; // one entry per executed press

    bool operator==(const Verdict&) const = default;
};

/// Presses the test's keys from a fresh session, comparing the observed node
/// (focused widget, or fired action) with the expected one after each press.
/// A press that logs a fault and diverges is fail-fault; a divergence with
/// no fault on that press is fail-mismatch; fatal faults stop immediately.
Verdict executeTest(const AppSpec& spec, const TestCase& test,
                    const std::optional<std::string>& focus = std::nullopt);

/// Runs each test independently from a fresh session; verdict order matches
/// suite order.
std::vector<Verdict> executeSuite(const AppSpec& spec, const TestSuite& suite,
                                  const std::optional<std::string>& focus = std::nullopt);

nlohmann::json saveVerdicts(const std::vector<Verdict>& verdicts);

} // namespace tvc
