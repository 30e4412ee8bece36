#include "tvcreeper/testgen.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tvcreeper/error.hpp"

namespace tvc {

using nlohmann::json;

std::vector<CoverElement> buildCover(const SubModel& g) {
    std::vector<CoverElement> cover;
    cover.reserve(g.edges.size());
    for (const auto& e : g.edges) cover.push_back({e.source, e.id, e.target});
    return cover;
}

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

struct GraphView {
    std::unordered_map<std::string, const Edge*> edgeById;
    // Out-edges sorted by (target, edge id) so greedy walk construction is
    // deterministic and picks the lexicographically smallest next node.
    std::unordered_map<std::string, std::vector<const Edge*>> out;
    std::unordered_map<std::string, std::vector<const Edge*>> in;

    explicit GraphView(const SubModel& g) {
        for (const auto& e : g.edges) {
            edgeById[e.id] = &e;
            out[e.source].push_back(&e);
            in[e.target].push_back(&e);
        }
        for (auto& [_, edges] : out)
            std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
                return std::tie(a->target, a->id) < std::tie(b->target, b->id);
            });
    }

    // Unit-weight distance from every node to the nearest of `targets`.
    std::unordered_map<std::string, std::size_t>
    distanceTo(const std::vector<std::string>& targets) const {
        std::unordered_map<std::string, std::size_t> dist;
        std::deque<std::string> queue;
        for (const auto& t : targets) {
            if (dist.emplace(t, 0).second) queue.push_back(t);
        }
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            auto it = in.find(cur);
            if (it == in.end()) continue;
            for (const Edge* e : it->second) {
                if (dist.emplace(e->source, dist.at(cur) + 1).second)
                    queue.push_back(e->source);
            }
        }
        return dist;
    }
};

std::size_t distanceOf(const std::unordered_map<std::string, std::size_t>& dist,
                       const std::string& node) {
    auto it = dist.find(node);
    return it == dist.end() ? kUnreachable : it->second;
}

// Walks from `from` down the distance gradient; out-edge order makes the
// node-id sequence the lexicographically smallest among shortest walks.
void appendDescent(const GraphView& view,
                   const std::unordered_map<std::string, std::size_t>& dist,
                   const std::string& from, TestCase& walk) {
    std::string cur = from;
    std::size_t remaining = distanceOf(dist, cur);
    while (remaining > 0) {
        const auto& candidates = view.out.at(cur);
        const Edge* chosen = nullptr;
        for (const Edge* e : candidates) {
            if (distanceOf(dist, e->target) == remaining - 1) {
                chosen = e;
                break;
            }
        }
        walk.edges.push_back(chosen->id);
        walk.keys.push_back(chosen->key);
        walk.nodes.push_back(chosen->target);
        cur = chosen->target;
        remaining -= 1;
    }
}

TestCase buildCandidate(const SubModel& g, const GraphView& view,
                        const std::unordered_map<std::string, std::size_t>& distToDest,
                        const CoverElement& c) {
    auto distToHead = view.distanceTo({c.head});
    if (distanceOf(distToHead, g.start) == kUnreachable)
        throw Error(ErrorCode::Uncoverable,
                    "'" + c.edge + "' lies on no walk from '" + g.start + "'");
    if (distanceOf(distToDest, c.tail) == kUnreachable)
        throw Error(ErrorCode::Uncoverable,
                    "no destination is reachable after '" + c.edge + "'");

    TestCase walk;
    walk.nodes.push_back(g.start);
    appendDescent(view, distToHead, g.start, walk);

    const Edge* edge = view.edgeById.at(c.edge);
    walk.edges.push_back(edge->id);
    walk.keys.push_back(edge->key);
    walk.nodes.push_back(edge->target);

    appendDescent(view, distToDest, c.tail, walk);
    return walk;
}

} // namespace

TestCase candidateWalk(const SubModel& g, const CoverElement& c) {
    GraphView view(g);
    if (!view.edgeById.count(c.edge))
        throw Error(ErrorCode::Validation,
                    "cover element edge '" + c.edge + "' is not in the sub-model");
    return buildCandidate(g, view, view.distanceTo(g.endNodes), c);
}

TestSuite generateTests(const SubModel& g) {
    validateModel(g);
    if (g.edges.empty() && !g.isEndNode(g.start))
        throw Error(ErrorCode::EmptyModel,
                    "sub-model has no edges and its start is not an end node");

    GraphView view(g);
    auto distToDest = view.distanceTo(g.endNodes);

    TestSuite suite;
    std::vector<TestCase> candidates;
    std::set<std::string> uncoverable;
    for (const auto& c : buildCover(g)) {
        try {
            TestCase walk = buildCandidate(g, view, distToDest, c);
            if (std::find(candidates.begin(), candidates.end(), walk) ==
                candidates.end())
                candidates.push_back(std::move(walk));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Uncoverable) throw;
            uncoverable.insert(c.edge);
        }
    }

    std::set<std::string> remaining;
    for (const auto& e : g.edges)
        if (!uncoverable.count(e.id)) remaining.insert(e.id);

    std::vector<std::set<std::string>> edgeSets;
    edgeSets.reserve(candidates.size());
    for (const auto& walk : candidates)
        edgeSets.emplace_back(walk.edges.begin(), walk.edges.end());

    while (!remaining.empty()) {
        std::size_t bestIndex = candidates.size();
        std::size_t bestGain = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::size_t gain = 0;
            for (const auto& id : edgeSets[i])
                if (remaining.count(id)) ++gain;
            if (gain == 0) continue;
            if (bestIndex == candidates.size()) {
                bestIndex = i;
                bestGain = gain;
                continue;
            }
            const TestCase& cur = candidates[i];
            const TestCase& best = candidates[bestIndex];
            bool better;
            if (gain != bestGain) better = gain > bestGain;
            else if (cur.edges.size() != best.edges.size())
                better = cur.edges.size() < best.edges.size();
            else if (cur.nodes != best.nodes) better = cur.nodes < best.nodes;
            else better = cur.edges < best.edges;
            if (better) {
                bestIndex = i;
                bestGain = gain;
            }
        }
        if (bestIndex == candidates.size())
            throw Error(ErrorCode::Uncoverable,
                        "internal: no candidate covers a remaining edge");
        const TestCase& best = candidates[bestIndex];
        suite.tests.push_back(best);
        for (const auto& id : edgeSets[bestIndex]) remaining.erase(id);
    }

    for (const auto& e : g.edges)
        if (!uncoverable.count(e.id)) suite.coveredEdges.push_back(e.id);
    std::sort(suite.coveredEdges.begin(), suite.coveredEdges.end());
    suite.uncoverable.assign(uncoverable.begin(), uncoverable.end());
    return suite;
}

constexpr int kSuiteSchemaVersion = 1;

json saveSuite(const TestSuite& suite) {
    json tests = json::array();
    for (const auto& t : suite.tests) {
        json keys = json::array();
        for (Key k : t.keys) keys.push_back(std::string(keyName(k)));
        tests.push_back({{"nodes", t.nodes}, {"keys", std::move(keys)}});
    }
    return json{{"schemaVersion", kSuiteSchemaVersion},
                {"tests", std::move(tests)},
                {"coveredEdges", suite.coveredEdges},
                {"uncoverable", suite.uncoverable}};
}

TestSuite loadSuite(const json& doc) {
    auto bad = [](const std::string& what) -> void {
        throw Error(ErrorCode::Validation, "suite document: " + what);
    };
    if (!doc.is_object() || !doc.contains("schemaVersion") ||
        !doc.at("schemaVersion").is_number_integer())
        bad("missing integer 'schemaVersion'");
    if (doc.at("schemaVersion").get<int>() != kSuiteSchemaVersion)
        bad("unsupported schemaVersion " + doc.at("schemaVersion").dump());
    if (!doc.contains("tests") || !doc.at("tests").is_array())
        bad("missing array 'tests'");

    TestSuite suite;
    for (const auto& t : doc.at("tests")) {
        TestCase test;
        if (!t.is_object() || !t.contains("nodes") || !t.at("nodes").is_array() ||
            !t.contains("keys") || !t.at("keys").is_array())
            bad("each test needs 'nodes' and 'keys' arrays");
        for (const auto& n : t.at("nodes")) {
            if (!n.is_string()) bad("test nodes must be strings");
            test.nodes.push_back(n.get<std::string>());
        }
        for (const auto& k : t.at("keys")) {
            if (!k.is_string()) bad("test keys must be strings");
            auto key = keyFromName(k.get<std::string>());
            if (!key) bad("unknown key '" + k.get<std::string>() + "'");
            test.keys.push_back(*key);
        }
        if (test.nodes.empty() || test.nodes.size() != test.keys.size() + 1)
            bad("a test needs n nodes and n-1 keys");
        for (std::size_t i = 0; i < test.keys.size(); ++i)
            test.edges.push_back(edgeId(test.nodes[i], test.keys[i]));
        suite.tests.push_back(std::move(test));
    }
    if (doc.contains("coveredEdges"))
        for (const auto& v : doc.at("coveredEdges"))
            suite.coveredEdges.push_back(v.get<std::string>());
    if (doc.contains("uncoverable"))
        for (const auto& v : doc.at("uncoverable"))
            suite.uncoverable.push_back(v.get<std::string>());
    return suite;
}

std::string suiteToKeysText(const TestSuite& suite) {
    std::ostringstream out;
    for (std::size_t i = 0; i < suite.tests.size(); ++i) {
        if (i > 0) out << "\n";
        for (Key k : suite.tests[i].keys) out << keyName(k) << "\n";
    }
    return out.str();
}

} // namespace tvc
