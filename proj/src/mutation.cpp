#include "tvcreeper/mutation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace tvc {

using nlohmann::json;

std::string_view operatorName(MutationOperator op) {
    switch (op) {
    case MutationOperator::RAR: return "RAR";
    case MutationOperator::NEE: return "NEE";
    case MutationOperator::NEA: return "NEA";
    case MutationOperator::NEF: return "NEF";
    case MutationOperator::NVR: return "NVR";
    case MutationOperator::WRC: return "WRC";
    case MutationOperator::BAV: return "BAV";
    case MutationOperator::IFC: return "IFC";
    case MutationOperator::NXE: return "NXE";
    }
    return "?";
}

std::optional<MutationOperator> operatorFromName(std::string_view name) {
    for (MutationOperator op : kAllOperators)
        if (operatorName(op) == name) return op;
    return std::nullopt;
}

std::vector<MutationOperator> compatibleOperators(EffectKind kind) {
    switch (kind) {
    case EffectKind::FetchResource: return {MutationOperator::RAR};
    case EffectKind::LookupElement: return {MutationOperator::NEE};
    case EffectKind::SetAttribute: return {MutationOperator::NEA};
    case EffectKind::InvokeFeature: return {MutationOperator::NEF};
    case EffectKind::AssignVariable:
        return {MutationOperator::NVR, MutationOperator::BAV};
    case EffectKind::ComputeIndex:
        return {MutationOperator::WRC, MutationOperator::BAV};
    case EffectKind::CallFunction: return {MutationOperator::IFC};
    case EffectKind::BindEvent: return {MutationOperator::NXE};
    case EffectKind::OpenScreen:
    case EffectKind::TerminalAction: return {};
    }
    return {};
}

namespace {

std::string dropSuffix(const std::string& s, std::size_t n) {
    return s.size() > n ? s.substr(0, s.size() - n) : s.substr(0, 1);
}

// Corrupts an argument the way a typo or a careless edit would.
std::string corruptArgument(MutationOperator op, const std::string& arg) {
    switch (op) {
    case MutationOperator::RAR: return arg + "3/";
    case MutationOperator::NEE: return dropSuffix(arg, 3);
    case MutationOperator::NEA: return dropSuffix(arg, 1);
    case MutationOperator::NEF: return dropSuffix(arg, 2);
    case MutationOperator::NVR: return "null";
    case MutationOperator::WRC: return arg + "*6";
    case MutationOperator::BAV: {
        // Swap the leading identifier for an unrelated one.
        std::size_t i = 0;
        while (i < arg.size() &&
               (std::isalnum(static_cast<unsigned char>(arg[i])) || arg[i] == '_'))
            ++i;
        return "MAX" + arg.substr(i);
    }
    case MutationOperator::IFC: return dropSuffix(arg, 1);
    case MutationOperator::NXE: return "";
    }
    return arg;
}

std::string mutantId(MutationOperator op, const std::string& screen,
                     const std::string& widget, std::size_t step) {
    std::ostringstream id;
    id << operatorName(op) << ":" << screen << "/" << widget << "#" << step;
    return id.str();
}

} // namespace

std::vector<Mutant> enumerateMutants(const AppSpec& spec,
                                     const std::set<MutationOperator>& operators,
                                     const SubModel* scope, bool fatal) {
    std::unordered_set<std::string> scopedWidgets; // "screen/widget"
    if (scope) {
        for (const auto& n : scope->nodes) {
            NodeSite site = splitNodeId(n.id);
            scopedWidgets.insert(widgetNodeId(site.screen, site.widget));
        }
    }

    std::vector<Mutant> mutants;
    for (const auto& screen : spec.screens) {
        for (const auto& widget : screen.widgets) {
            if (scope && !scopedWidgets.count(widgetNodeId(screen.id, widget.id)))
                continue;
            for (std::size_t step = 0; step < widget.effects.size(); ++step) {
                for (MutationOperator op : compatibleOperators(widget.effects[step].kind)) {
                    if (!operators.count(op)) continue;
                    const std::string& arg = widget.effects[step].argument;
                    Mutant m;
                    m.id = mutantId(op, screen.id, widget.id, step);
                    m.op = op;
                    m.screen = screen.id;
                    m.widget = widget.id;
                    m.step = step;
                    m.fatal = fatal;
                    m.original = arg;
                    m.mutated = corruptArgument(op, arg);
                    mutants.push_back(std::move(m));
                }
            }
        }
    }
    return mutants;
}

AppSpec applyMutant(const AppSpec& spec, const Mutant& m) {
    AppSpec out = spec;
    for (auto& screen : out.screens) {
        if (screen.id != m.screen) continue;
        for (auto& widget : screen.widgets) {
            if (widget.id != m.widget) continue;
            if (m.step >= widget.effects.size())
                throw Error(ErrorCode::StaleMutant,
                            "mutant '" + m.id + "': step index out of range");
            EffectStep& step = widget.effects[m.step];
            auto compatible = compatibleOperators(step.kind);
            if (std::find(compatible.begin(), compatible.end(), m.op) ==
                compatible.end())
                throw Error(ErrorCode::StaleMutant,
                            "mutant '" + m.id + "': step kind '" +
                                std::string(effectKindName(step.kind)) +
                                "' is incompatible with " +
                                std::string(operatorName(m.op)));
            step.mutation = MutantMark{m.id, m.fatal};
            return out;
        }
        throw Error(ErrorCode::StaleMutant,
                    "mutant '" + m.id + "': widget '" + m.widget + "' not found");
    }
    throw Error(ErrorCode::StaleMutant,
                "mutant '" + m.id + "': screen '" + m.screen + "' not found");
}

namespace {

struct MutantOutcome {
    std::vector<std::size_t> killingTests;
    bool killedByFault = false;
    bool killedByDivergence = false;
    std::optional<std::string> failure;
};

MutantOutcome evaluateMutant(const AppSpec& spec, const TestSuite& suite,
                             const Mutant& m, const std::vector<bool>& baselinePass,
                             const std::optional<std::string>& focus) {
    MutantOutcome outcome;
    try {
        AppSpec mutated = applyMutant(spec, m);
        std::vector<Verdict> verdicts = executeSuite(mutated, suite, focus);
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            bool fault = verdicts[i].faultIds.count(m.id) > 0;
            bool divergence = baselinePass[i] &&
                              verdicts[i].outcome == Outcome::FailMismatch;
            if (fault) outcome.killedByFault = true;
            if (divergence) outcome.killedByDivergence = true;
            if (fault || divergence) outcome.killingTests.push_back(i);
        }
    } catch (const Error& e) {
        outcome.failure = e.what();
    }
    return outcome;
}

} // namespace

std::string_view killChannelName(KillChannel channel) {
    switch (channel) {
    case KillChannel::Fault: return "fault";
    case KillChannel::Divergence: return "divergence";
    case KillChannel::FaultAndDivergence: return "fault+divergence";
    }
    return "?";
}

MutationReport runCampaign(const AppSpec& spec, const TestSuite& suite,
                           const std::vector<Mutant>& mutants,
                           const std::optional<std::string>& focus, unsigned jobs) {
    std::vector<bool> baselinePass(suite.tests.size(), false);
    {
        std::vector<Verdict> baseline = executeSuite(spec, suite, focus);
        for (std::size_t i = 0; i < baseline.size(); ++i)
            baselinePass[i] = baseline[i].outcome == Outcome::Pass;
    }

    std::vector<MutantOutcome> outcomes(mutants.size());
    if (jobs <= 1 || mutants.size() < 2) {
        for (std::size_t i = 0; i < mutants.size(); ++i)
            outcomes[i] = evaluateMutant(spec, suite, mutants[i], baselinePass, focus);
    } else {
        unsigned workers = std::min<unsigned>(jobs, mutants.size());
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < mutants.size(); i += workers)
                    outcomes[i] =
                        evaluateMutant(spec, suite, mutants[i], baselinePass, focus);
            });
        }
        for (auto& t : pool) t.join();
    }

    MutationReport report;
    report.perTest.resize(suite.tests.size());
    for (std::size_t i = 0; i < mutants.size(); ++i) {
        const Mutant& m = mutants[i];
        const MutantOutcome& o = outcomes[i];
        if (o.failure) {
            report.alive.insert(m.id);
            report.failures[m.id] = *o.failure;
            continue;
        }
        if (o.killingTests.empty()) {
            report.alive.insert(m.id);
            continue;
        }
        report.killed.insert(m.id);
        for (std::size_t t : o.killingTests) report.perTest[t].insert(m.id);
        report.channel[m.id] =
            o.killedByFault
                ? (o.killedByDivergence ? KillChannel::FaultAndDivergence
                                        : KillChannel::Fault)
                : KillChannel::Divergence;
    }
    if (!mutants.empty())
        report.scoreTenths =
            mutationScoreTenths(report.killed.size(), report.alive.size());
    return report;
}

int mutationScoreTenths(std::size_t killed, std::size_t alive) {
    std::size_t total = killed + alive;
    if (total == 0)
        throw Error(ErrorCode::NoMutants, "no mutants: the score is undefined");
    // floor((2*1000*killed + total) / (2*total)) rounds half-up in tenths.
    unsigned long long numerator = 2000ULL * killed + total;
    return static_cast<int>(numerator / (2ULL * total));
}

std::string formatScoreTenths(int tenths) {
    std::ostringstream out;
    out << tenths / 10 << "." << tenths % 10;
    return out.str();
}

constexpr int kMutantsSchemaVersion = 1;
constexpr int kReportSchemaVersion = 1;

json saveMutants(const std::vector<Mutant>& mutants) {
    json out = json::array();
    for (const auto& m : mutants)
        out.push_back({{"id", m.id},
                       {"operator", std::string(operatorName(m.op))},
                       {"screen", m.screen},
                       {"widget", m.widget},
                       {"step", m.step},
                       {"fatal", m.fatal},
                       {"original", m.original},
                       {"mutated", m.mutated}});
    return json{{"schemaVersion", kMutantsSchemaVersion}, {"mutants", std::move(out)}};
}

std::vector<Mutant> loadMutants(const json& doc) {
    auto bad = [](const std::string& what) -> void {
        throw Error(ErrorCode::Validation, "mutants document: " + what);
    };
    if (!doc.is_object() || !doc.contains("mutants") || !doc.at("mutants").is_array())
        bad("missing array 'mutants'");
    std::vector<Mutant> mutants;
    for (const auto& entry : doc.at("mutants")) {
        Mutant m;
        m.id = entry.at("id").get<std::string>();
        auto op = operatorFromName(entry.at("operator").get<std::string>());
        if (!op) bad("unknown operator in '" + m.id + "'");
        m.op = *op;
        m.screen = entry.at("screen").get<std::string>();
        m.widget = entry.at("widget").get<std::string>();
        m.step = entry.at("step").get<std::size_t>();
        m.fatal = entry.at("fatal").get<bool>();
        m.original = entry.at("original").get<std::string>();
        m.mutated = entry.at("mutated").get<std::string>();
        mutants.push_back(std::move(m));
    }
    return mutants;
}

json saveReport(const MutationReport& report) {
    json perTest = json::array();
    for (const auto& kills : report.perTest) perTest.push_back(kills);
    json channels = json::object();
    for (const auto& [id, channel] : report.channel)
        channels[id] = std::string(killChannelName(channel));
    json failures = json::object();
    for (const auto& [id, what] : report.failures) failures[id] = what;

    json doc{{"schemaVersion", kReportSchemaVersion},
             {"mutantCount", report.killed.size() + report.alive.size()},
             {"killed", report.killed},
             {"alive", report.alive},
             {"perTest", std::move(perTest)},
             {"channels", std::move(channels)},
             {"failures", std::move(failures)},
             {"noMutants", !report.scoreTenths.has_value()}};
    doc["score"] = report.scoreTenths ? json(*report.scoreTenths / 10.0) : json(nullptr);
    return doc;
}

std::string reportTable(const MutationReport& report) {
    std::ostringstream out;
    out << "Test  Mutants killed\n";
    for (std::size_t i = 0; i < report.perTest.size(); ++i)
        out << "#" << i + 1 << "    " << report.perTest[i].size() << "\n";
    out << "Total killed: " << report.killed.size() << "\n";
    out << "Alive:        " << report.alive.size() << "\n";
    if (report.scoreTenths)
        out << "Score:        " << formatScoreTenths(*report.scoreTenths) << "%\n";
    else
        out << "Score:        no mutants\n";
    return out.str();
}

} // namespace tvc
