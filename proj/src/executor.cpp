#include "tvcreeper/executor.hpp"

#include "tvcreeper/model.hpp"

namespace tvc {

using nlohmann::json;

std::string_view outcomeName(Outcome outcome) {
    switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::FailMismatch: return "fail-mismatch";
    case Outcome::FailFault: return "fail-fault";
    }
    return "?";
}

namespace {

std::string observedNode(const SessionState& before, const SessionState& after,
                         const std::vector<LogEvent>& events) {
    for (const auto& ev : events)
        if (ev.kind == LogEventKind::ActionFired)
            return actionNodeId(before.topScreen(), *before.focus, ev.detail);
    return widgetNodeId(after.topScreen(), *after.focus);
}

} // namespace

Verdict executeTest(const AppSpec& spec, const TestCase& test,
                    const std::optional<std::string>& focus) {
    Verdict verdict;
    SessionState state = initSession(spec, focus);

    std::string startNode = widgetNodeId(state.topScreen(), *state.focus);
    if (test.nodes.empty() || startNode != test.nodes.front()) {
        verdict.outcome = Outcome::FailMismatch;
        verdict.failedStep = 0;
        verdict.trace.push_back(
            {test.nodes.empty() ? "" : test.nodes.front(), startNode, {}});
        return verdict;
    }

    for (std::size_t i = 0; i < test.keys.size(); ++i) {
        SessionState before = state;
        std::vector<LogEvent> events = pressKey(spec, state, test.keys[i]);

        bool faultThisPress = false;
        bool fatal = false;
        for (const auto& ev : events) {
            if (ev.kind == LogEventKind::Fault) {
                verdict.faultIds.insert(ev.detail);
                faultThisPress = true;
                fatal = fatal || state.terminated;
            }
        }

        const std::string& expected = test.nodes[i + 1];
        std::string observed = observedNode(before, state, events);
        verdict.trace.push_back({expected, observed, events});

        if (fatal) {
            verdict.outcome = Outcome::FailFault;
            verdict.failedStep = i + 1;
            return verdict;
        }
        if (observed != expected) {
            // A fault on this press explains the divergence; report the fault.
            verdict.outcome = faultThisPress ? Outcome::FailFault : Outcome::FailMismatch;
            verdict.failedStep = i + 1;
            return verdict;
        }
    }

    verdict.outcome = verdict.faultIds.empty() ? Outcome::Pass : Outcome::FailFault;
    return verdict;
}

std::vector<Verdict> executeSuite(const AppSpec& spec, const TestSuite& suite,
                                  const std::optional<std::string>& focus) {
    std::vector<Verdict> verdicts;
    verdicts.reserve(suite.tests.size());
    for (const auto& test : suite.tests)
        verdicts.push_back(executeTest(spec, test, focus));
    return verdicts;
}

json saveVerdicts(const std::vector<Verdict>& verdicts) {
    json out = json::array();
    for (const auto& v : verdicts) {
        json trace = json::array();
        for (const auto& step : v.trace) {
            json events = json::array();
            for (const auto& ev : step.events)
                events.push_back({{"kind", std::string(logEventKindName(ev.kind))},
                                  {"detail", ev.detail}});
            trace.push_back({{"expected", step.expected},
                             {"observed", step.observed},
                             {"events", std::move(events)}});
        }
        json entry{{"outcome", std::string(outcomeName(v.outcome))},
                   {"faultIds", v.faultIds},
                   {"trace", std::move(trace)}};
        entry["failedStep"] =
            v.failedStep ? json(*v.failedStep) : json(nullptr);
        out.push_back(std::move(entry));
    }
    return json{{"schemaVersion", 1}, {"verdicts", std::move(out)}};
}

} // namespace tvc
