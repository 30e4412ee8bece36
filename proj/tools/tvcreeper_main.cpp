// tvcreeper: crawl a simulated remote-control app, cut destination sub-models,
// generate all-edge-coverage suites, execute them, and run mutation campaigns.
//
// Exit codes: 0 success, 1 usage, 2 validation/stale artifact, 3 uncoverable
// edges, 4 non-pass verdicts, 5 no mutants.

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvcreeper/artifact.hpp"
#include "tvcreeper/crawler.hpp"
#include "tvcreeper/executor.hpp"
#include "tvcreeper/model.hpp"
#include "tvcreeper/mutation.hpp"
#include "tvcreeper/session.hpp"
#include "tvcreeper/testgen.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitUncoverable = 3;
constexpr int kExitFailedTests = 4;
constexpr int kExitNoMutants = 5;

int exitCodeFor(tvc::ErrorCode code) {
    switch (code) {
    case tvc::ErrorCode::NoMutants: return kExitNoMutants;
    case tvc::ErrorCode::Uncoverable: return kExitUncoverable;
    default: return kExitValidation;
    }
}

struct LoadedSpec {
    tvc::AppSpec spec;
    std::string hash;
};

LoadedSpec loadSpecFile(const std::string& path) {
    std::string bytes = tvc::readFile(path);
    tvc::AppSpec spec = tvc::deriveNavFromGrid(tvc::loadAppSpec(bytes));
    return {std::move(spec), tvc::contentHash(bytes)};
}

std::string provenanceField(const json& doc, const char* key, const std::string& path) {
    if (!doc.contains("provenance") || !doc.at("provenance").is_object() ||
        !doc.at("provenance").contains(key) ||
        !doc.at("provenance").at(key).is_string())
        throw tvc::Error(tvc::ErrorCode::StaleArtifact,
                         path + ": missing provenance field '" + std::string(key) + "'");
    return doc.at("provenance").at(key).get<std::string>();
}

void requireSpecMatch(const json& doc, const std::string& docPath,
                      const std::string& specHash, const std::string& specPath) {
    if (provenanceField(doc, "specHash", docPath) != specHash)
        throw tvc::Error(tvc::ErrorCode::StaleArtifact,
                         docPath + " was produced from a different app spec than " +
                             specPath);
}

std::optional<std::string> asOptional(const std::string& value) {
    return value.empty() ? std::nullopt : std::optional<std::string>(value);
}

int commandCrawl(const std::string& specPath, const std::string& focus,
                 const std::optional<std::size_t>& maxActions,
                 const std::string& outPath, const std::string& dotPath) {
    LoadedSpec loaded = loadSpecFile(specPath);

    tvc::CrawlConfig config;
    config.focus = asOptional(focus);
    config.maxActions = maxActions;
    tvc::CrawlResult result = tvc::crawl(loaded.spec, config);

    json doc = tvc::saveModel(result.model);
    doc["provenance"] = {{"specHash", loaded.hash}};
    tvc::writeFile(outPath, tvc::dumpArtifact(doc));
    if (!dotPath.empty()) tvc::writeFile(dotPath, tvc::exportDot(result.model));

    std::cout << "crawled " << result.model.nodes.size() << " nodes, "
              << result.model.edges.size() << " edges in " << result.actionsUsed
              << " key presses" << (result.truncated ? " (truncated)" : "") << "\n"
              << "model written to " << outPath << "\n";
    return 0;
}

int commandSubmodel(const std::string& modelPath,
                    const std::vector<std::string>& destinations,
                    const std::string& outPath, const std::string& dotPath) {
    std::string modelBytes = tvc::readFile(modelPath);
    json modelDoc = tvc::parseArtifactFile(modelPath);
    tvc::MegaModel model = tvc::loadMegaModel(modelDoc);
    std::string specHash = provenanceField(modelDoc, "specHash", modelPath);

    tvc::SubModel sub = tvc::extractSubModel(model, destinations);
    for (const auto& d : destinations)
        if (!sub.findNode(d))
            std::cerr << "note: destination '" << d
                      << "' is unreachable from the start and was dropped\n";

    json doc = tvc::saveModel(sub);
    doc["provenance"] = {{"specHash", specHash},
                         {"modelHash", tvc::contentHash(modelBytes)}};
    tvc::writeFile(outPath, tvc::dumpArtifact(doc));
    if (!dotPath.empty()) tvc::writeFile(dotPath, tvc::exportDot(sub));

    std::cout << "sub-model keeps " << sub.nodes.size() << " of "
              << model.nodes.size() << " nodes and " << sub.edges.size() << " of "
              << model.edges.size() << " edges\n"
              << "sub-model written to " << outPath << "\n";
    return 0;
}

int commandGen(const std::string& subPath, const std::string& outPath,
               const std::string& keysPath) {
    std::string subBytes = tvc::readFile(subPath);
    json subDoc = tvc::parseArtifactFile(subPath);
    tvc::SubModel sub = tvc::loadSubModel(subDoc);
    std::string specHash = provenanceField(subDoc, "specHash", subPath);

    tvc::TestSuite suite = tvc::generateTests(sub);

    json doc = tvc::saveSuite(suite);
    doc["provenance"] = {{"specHash", specHash},
                         {"submodelHash", tvc::contentHash(subBytes)}};
    tvc::writeFile(outPath, tvc::dumpArtifact(doc));
    if (!keysPath.empty()) tvc::writeFile(keysPath, tvc::suiteToKeysText(suite));

    std::cout << "generated " << suite.tests.size() << " tests covering "
              << suite.coveredEdges.size() << " edges\n"
              << "suite written to " << outPath << "\n";
    if (!suite.uncoverable.empty()) {
        std::cerr << "error: " << suite.uncoverable.size()
                  << " edge(s) lie on no walk from the start to an end node:\n";
        for (const auto& id : suite.uncoverable) std::cerr << "  " << id << "\n";
        return kExitUncoverable;
    }
    return 0;
}

int commandRun(const std::string& specPath, const std::string& suitePath,
               const std::string& focus, const std::string& outPath) {
    LoadedSpec loaded = loadSpecFile(specPath);
    std::string suiteBytes = tvc::readFile(suitePath);
    json suiteDoc = tvc::parseArtifactFile(suitePath);
    requireSpecMatch(suiteDoc, suitePath, loaded.hash, specPath);
    tvc::TestSuite suite = tvc::loadSuite(suiteDoc);

    std::vector<tvc::Verdict> verdicts =
        tvc::executeSuite(loaded.spec, suite, asOptional(focus));

    std::size_t passed = 0;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const tvc::Verdict& v = verdicts[i];
        std::cout << "test " << i + 1 << ": " << tvc::outcomeName(v.outcome);
        if (v.failedStep) std::cout << " at step " << *v.failedStep;
        for (const auto& id : v.faultIds) std::cout << " [fault " << id << "]";
        std::cout << "\n";
        if (v.outcome == tvc::Outcome::Pass) ++passed;
    }
    std::cout << passed << "/" << verdicts.size() << " tests passed\n";

    json doc = tvc::saveVerdicts(verdicts);
    doc["provenance"] = {{"specHash", loaded.hash},
                         {"suiteHash", tvc::contentHash(suiteBytes)}};
    tvc::writeFile(outPath, tvc::dumpArtifact(doc));

    return passed == verdicts.size() ? 0 : kExitFailedTests;
}

int commandMutate(const std::string& specPath, const std::string& suitePath,
                  const std::string& focus, const std::vector<std::string>& opNames,
                  const std::string& scopePath, const std::string& mutantsPath,
                  const std::string& outPath, unsigned jobs, bool fatal) {
    LoadedSpec loaded = loadSpecFile(specPath);
    std::string suiteBytes = tvc::readFile(suitePath);
    json suiteDoc = tvc::parseArtifactFile(suitePath);
    requireSpecMatch(suiteDoc, suitePath, loaded.hash, specPath);
    tvc::TestSuite suite = tvc::loadSuite(suiteDoc);

    std::set<tvc::MutationOperator> ops;
    if (opNames.empty()) {
        ops.insert(tvc::kAllOperators.begin(), tvc::kAllOperators.end());
    } else {
        for (const auto& name : opNames) {
            auto op = tvc::operatorFromName(name);
            if (!op)
                throw tvc::Error(tvc::ErrorCode::Validation,
                                 "unknown mutation operator '" + name + "'");
            ops.insert(*op);
        }
    }

    tvc::SubModel scope;
    bool haveScope = !scopePath.empty();
    if (haveScope) {
        std::string scopeBytes = tvc::readFile(scopePath);
        json scopeDoc = tvc::parseArtifactFile(scopePath);
        requireSpecMatch(scopeDoc, scopePath, loaded.hash, specPath);
        if (provenanceField(suiteDoc, "submodelHash", suitePath) !=
            tvc::contentHash(scopeBytes))
            throw tvc::Error(tvc::ErrorCode::StaleArtifact,
                             suitePath + " was not generated from " + scopePath);
        scope = tvc::loadSubModel(scopeDoc);
    }

    std::vector<tvc::Mutant> mutants = tvc::enumerateMutants(
        loaded.spec, ops, haveScope ? &scope : nullptr, fatal);
    if (!mutantsPath.empty()) {
        json doc = tvc::saveMutants(mutants);
        doc["provenance"] = {{"specHash", loaded.hash}};
        tvc::writeFile(mutantsPath, tvc::dumpArtifact(doc));
    }

    tvc::MutationReport report =
        tvc::runCampaign(loaded.spec, suite, mutants, asOptional(focus), jobs);

    json doc = tvc::saveReport(report);
    doc["provenance"] = {{"specHash", loaded.hash},
                         {"suiteHash", tvc::contentHash(suiteBytes)}};
    tvc::writeFile(outPath, tvc::dumpArtifact(doc));

    std::cout << mutants.size() << " mutants enumerated\n"
              << tvc::reportTable(report) << "report written to " << outPath << "\n";

    return mutants.empty() ? kExitNoMutants : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model-based testing for remote-control-driven app UIs"};
    app.require_subcommand(1);

    std::string specPath, modelPath, subPath, suitePath;
    std::string outPath, dotPath, keysPath, focus, scopePath, mutantsPath;
    std::size_t maxActions = 0;
    unsigned jobs = 1;
    bool fatal = false;
    std::vector<std::string> destinations, opNames;

    CLI::App* crawlCmd = app.add_subcommand("crawl", "Explore a spec into a model");
    crawlCmd->add_option("spec", specPath, "app-spec JSON file")->required();
    crawlCmd->add_option("--focus", focus, "start widget when the spec sets none");
    auto* maxOpt = crawlCmd->add_option("--max-actions", maxActions,
                                        "cap on probe key presses");
    crawlCmd->add_option("--out", outPath, "model output path")
        ->default_val("model.json");
    crawlCmd->add_option("--dot", dotPath, "also write a GraphViz file");

    CLI::App* subCmd =
        app.add_subcommand("submodel", "Cut a destination sub-model from a model");
    subCmd->add_option("model", modelPath, "model.json from crawl")->required();
    subCmd->add_option("--dest", destinations, "destination node id")
        ->required()
        ->delimiter(',');
    subCmd->add_option("--out", outPath, "sub-model output path")
        ->default_val("submodel.json");
    subCmd->add_option("--dot", dotPath, "also write a GraphViz file");

    CLI::App* genCmd =
        app.add_subcommand("gen", "Generate an all-edge-coverage test suite");
    genCmd->add_option("submodel", subPath, "submodel.json from submodel")->required();
    genCmd->add_option("--out", outPath, "suite output path")
        ->default_val("suite.json");
    genCmd->add_option("--keys", keysPath, "also write a flat key listing");

    CLI::App* runCmd = app.add_subcommand("run", "Execute a suite against a spec");
    runCmd->add_option("spec", specPath, "app-spec JSON file")->required();
    runCmd->add_option("suite", suitePath, "suite.json from gen")->required();
    runCmd->add_option("--focus", focus, "start widget when the spec sets none");
    runCmd->add_option("--out", outPath, "verdicts output path")
        ->default_val("verdicts.json");

    CLI::App* mutateCmd =
        app.add_subcommand("mutate", "Run a mutation campaign against a suite");
    mutateCmd->add_option("spec", specPath, "app-spec JSON file")->required();
    mutateCmd->add_option("suite", suitePath, "suite.json from gen")->required();
    mutateCmd->add_option("--focus", focus, "start widget when the spec sets none");
    mutateCmd->add_option("--ops", opNames, "operator acronyms (default: all)")
        ->delimiter(',');
    mutateCmd->add_option("--scope", scopePath,
                          "restrict sites to widgets of this sub-model");
    mutateCmd->add_option("--mutants", mutantsPath, "also write the mutant list");
    mutateCmd->add_option("--out", outPath, "report output path")
        ->default_val("report.json");
    mutateCmd->add_option("--jobs", jobs, "parallel mutant evaluations")
        ->default_val(1u);
    mutateCmd->add_flag("--fatal", fatal, "faults kill the session");

    try {
        app.parse(argc, argv);
        if (crawlCmd->parsed())
            return commandCrawl(specPath, focus,
                                maxOpt->count() ? std::optional<std::size_t>(maxActions)
                                                : std::nullopt,
                                outPath, dotPath);
        if (subCmd->parsed())
            return commandSubmodel(modelPath, destinations, outPath, dotPath);
        if (genCmd->parsed()) return commandGen(subPath, outPath, keysPath);
        if (runCmd->parsed())
            return commandRun(specPath, suitePath, focus, outPath);
        if (mutateCmd->parsed())
            return commandMutate(specPath, suitePath, focus, opNames, scopePath,
                                 mutantsPath, outPath, jobs, fatal);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const tvc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exitCodeFor(e.code());
    }
    return 0;
}
