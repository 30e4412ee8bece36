#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvcreeper/app_spec.hpp"
#include "tvcreeper/executor.hpp"
#include "tvcreeper/model.hpp"
#include "tvcreeper/testgen.hpp"

namespace tvc {

enum class MutationOperator { RAR, NEE, NEA, NEF, NVR, WRC, BAV, IFC, NXE };

inline constexpr std::array<MutationOperator, 9> kAllOperators{
    MutationOperator::RAR, MutationOperator::NEE, MutationOperator::NEA,
    MutationOperator::NEF, MutationOperator::NVR, MutationOperator::WRC,
    MutationOperator::BAV, MutationOperator::IFC, MutationOperator::NXE};

std::string_view operatorName(MutationOperator op);
std::optional<MutationOperator> operatorFromName(std::string_view name);

/// Fixed operator/site compatibility: which operators may corrupt a step of
/// the given kind. open-screen and terminal-action map to the empty set.
std::vector<MutationOperator> compatibleOperators(EffectKind kind);

/// One seeded fault: a corrupted effect-step argument at a fixed site.
struct Mutant {
    std::string id; // "OP:screen/widget#step"
    MutationOperator op = MutationOperator::RAR;
    std::string screen;
    std::string widget;
    std::size_t step = 0;
    bool fatal = false;
    std::string original; // argument before corruption
    std::string mutated;  // corrupted argument (descriptive only)

    bool operator==(const Mutant&) const = default;
};

/// One mutant per compatible (operator, site) pair, ordered by (screen,
/// widget, step, operator). With a scope, only sites on widgets whose nodes
/// appear in the sub-model are enumerated.
std::vector<Mutant> enumerateMutants(const AppSpec& spec,
                                     const std::set<MutationOperator>& operators,
                                     const SubModel* scope = nullptr,
                                     bool fatal = false);

/// Returns a copy of the spec with the targeted step marked; executing the
/// marked step raises a fault carrying the mutant id instead of running.
/// Throws Error{StaleMutant} when the site no longer exists or its kind is
/// incompatible with the operator.
AppSpec applyMutant(const AppSpec& spec, const Mutant& m);

/// How a kill was observed: the mutant's fault event, a divergence of a
/// baseline-passing test, or both.
enum class KillChannel { Fault, Divergence, FaultAndDivergence };

std::string_view killChannelName(KillChannel channel);

struct MutationReport {
    std::vector<std::set<std::string>> perTest; // test index -> killed mutant ids
    std::set<std::string> killed;
    std::set<std::string> alive;
    std::map<std::string, KillChannel> channel;  // killed mutant -> how
    std::map<std::string, std::string> failures; // mutant -> execution error, counted alive
    std::optional<int> scoreTenths;              // unset when no mutants ran

    bool operator==(const MutationReport&) const = default;
};

/// Applies each mutant on its own, executes the full suite against it, and
/// marks it killed iff some verdict records its fault id or some test that
/// passes on the unmutated spec turns fail-mismatch. jobs > 1 evaluates
/// mutants in parallel; the report is identical either way.
MutationReport runCampaign(const AppSpec& spec, const TestSuite& suite,
                           const std::vector<Mutant>& mutants,
                           const std::optional<std::string>& focus = std::nullopt,
                           unsigned jobs = 1);

/// 100 * killed / (killed + alive) in tenths of a percent, rounded half-up.
/// Throws Error{NoMutants} when killed + alive = 0.
int mutationScoreTenths(std::size_t killed, std::size_t alive);

/// "82.3"-style rendering of a tenths value.
std::string formatScoreTenths(int tenths);

nlohmann::json saveMutants(const std::vector<Mutant>& mutants);
std::vector<Mutant> loadMutants(const nlohmann::json& doc);
nlohmann::json saveReport(const MutationReport& report);

/// Plain-text table: per-test kill counts, totals, and the score line.
std::string reportTable(const MutationReport& report);

} // namespace tvc
