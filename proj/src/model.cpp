#include "tvcreeper/model.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tvcreeper/error.hpp"

namespace tvc {

using nlohmann::json;

std::string_view nodeKindName(NodeKind kind) {
    switch (kind) {
    case NodeKind::Navigable: return "navigable";
    case NodeKind::End: return "end";
    case NodeKind::Sink: return "sink";
    }
    return "?";
}

std::optional<NodeKind> nodeKindFromName(std::string_view name) {
    if (name == "navigable") return NodeKind::Navigable;
    if (name == "end") return NodeKind::End;
    if (name == "sink") return NodeKind::Sink;
    return std::nullopt;
}

std::string widgetNodeId(const std::string& screen, const std::string& widget) {
    return screen + "/" + widget;
}

std::string actionNodeId(const std::string& screen, const std::string& widget,
                         const std::string& action) {
    return screen + "/" + widget + "!" + action;
}

NodeSite splitNodeId(const std::string& nodeId) {
    NodeSite site;
    auto slash = nodeId.find('/');
    if (slash == std::string::npos)
        throw Error(ErrorCode::Validation, "malformed node id '" + nodeId + "'");
    site.screen = nodeId.substr(0, slash);
    std::string rest = nodeId.substr(slash + 1);
    auto bang = rest.find('!');
    if (bang == std::string::npos) {
        site.widget = rest;
    } else {
        site.widget = rest.substr(0, bang);
        site.action = rest.substr(bang + 1);
    }
    return site;
}

std::string edgeId(const std::string& source, Key key) {
    return source + "|" + std::string(keyName(key));
}

const Node* MegaModel::findNode(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

bool MegaModel::isEndNode(const std::string& id) const {
    return std::find(endNodes.begin(), endNodes.end(), id) != endNodes.end();
}

void validateModel(const MegaModel& model) {
    if (model.nodes.empty())
        throw Error(ErrorCode::Validation, "model: node set is empty");

    std::unordered_set<std::string> nodeIds;
    for (const auto& n : model.nodes)
        if (!nodeIds.insert(n.id).second)
            throw Error(ErrorCode::Validation, "model: duplicate node id '" + n.id + "'");

    std::set<std::pair<std::string, Key>> outcomes;
    std::unordered_set<std::string> edgeIds;
    for (const auto& e : model.edges) {
        if (!edgeIds.insert(e.id).second)
            throw Error(ErrorCode::Validation, "model: duplicate edge id '" + e.id + "'");
        if (!nodeIds.count(e.source))
            throw Error(ErrorCode::Validation,
                        "model: edge '" + e.id + "' has unknown source '" + e.source + "'");
        if (!nodeIds.count(e.target))
            throw Error(ErrorCode::Validation,
                        "model: edge '" + e.id + "' has unknown target '" + e.target + "'");
        if (!outcomes.insert({e.source, e.key}).second)
            throw Error(ErrorCode::Validation,
                        "model: two outcomes for (" + e.source + ", " +
                            std::string(keyName(e.key)) + ")");
    }

    if (!nodeIds.count(model.start))
        throw Error(ErrorCode::Validation, "model: start node '" + model.start +
                                               "' is not in the node set");
    std::unordered_set<std::string> seenEnds;
    for (const auto& id : model.endNodes) {
        if (!nodeIds.count(id))
            throw Error(ErrorCode::Validation,
                        "model: end node '" + id + "' is not in the node set");
        if (!seenEnds.insert(id).second)
            throw Error(ErrorCode::Validation, "model: duplicate end node '" + id + "'");
    }
}

namespace {

using AdjacencyMap = std::unordered_map<std::string, std::vector<const Edge*>>;

std::unordered_set<std::string> reach(const std::vector<std::string>& seeds,
                                      const AdjacencyMap& adjacency,
                                      bool follow_source) {
    std::unordered_set<std::string> seen(seeds.begin(), seeds.end());
    std::deque<std::string> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        auto it = adjacency.find(cur);
        if (it == adjacency.end()) continue;
        for (const Edge* e : it->second) {
            const std::string& next = follow_source ? e->source : e->target;
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return seen;
}

} // namespace

SubModel extractSubModel(const MegaModel& model,
                         const std::vector<std::string>& destinations) {
    validateModel(model);
    if (destinations.empty())
        throw Error(ErrorCode::UnknownDestination, "no destination given");

    std::vector<std::string> dests; // deduped, input order
    for (const auto& d : destinations) {
        if (!model.findNode(d))
            throw Error(ErrorCode::UnknownDestination, "unknown destination '" + d + "'");
        if (std::find(dests.begin(), dests.end(), d) == dests.end())
            dests.push_back(d);
    }

    AdjacencyMap out, in;
    for (const auto& e : model.edges) {
        out[e.source].push_back(&e);
        in[e.target].push_back(&e);
    }

    auto forward = reach({model.start}, out, /*follow_source=*/false);
    auto coreach = reach(dests, in, /*follow_source=*/true);

    bool anyReachable = std::any_of(dests.begin(), dests.end(),
                                    [&](const std::string& d) { return forward.count(d); });
    if (!anyReachable)
        throw Error(ErrorCode::DestinationsUnreachable,
                    "no destination is reachable from '" + model.start + "'");

    SubModel sub;
    sub.start = model.start;
    for (const auto& n : model.nodes)
        if (forward.count(n.id) && coreach.count(n.id)) sub.nodes.push_back(n);
    for (const auto& e : model.edges)
        if (forward.count(e.source) && coreach.count(e.target)) sub.edges.push_back(e);
    for (const auto& d : dests)
        if (forward.count(d) && coreach.count(d)) {
            sub.endNodes.push_back(d);
            sub.destinations.push_back(d);
        }
    return sub;
}

namespace {

std::string dotQuote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string exportDot(const MegaModel& model) {
    std::ostringstream dot;
    dot << "digraph app {\n";
    dot << "  rankdir=LR;\n";
    for (const auto& n : model.nodes) {
        dot << "  " << dotQuote(n.id) << " [label="
            << dotQuote(n.label + "@" + n.screen);
        if (model.isEndNode(n.id)) dot << ", peripheries=2";
        dot << "];\n";
    }
    for (const auto& e : model.edges) {
        dot << "  " << dotQuote(e.source) << " -> " << dotQuote(e.target)
            << " [label=" << dotQuote(std::string(keyName(e.key))) << "];\n";
    }
    dot << "}\n";
    return dot.str();
}

namespace {

constexpr int kModelSchemaVersion = 1;

json modelBody(const MegaModel& model, const char* kind) {
    json nodes = json::array();
    for (const auto& n : model.nodes)
        nodes.push_back({{"id", n.id},
                         {"label", n.label},
                         {"screen", n.screen},
                         {"kind", std::string(nodeKindName(n.kind))}});
    json edges = json::array();
    for (const auto& e : model.edges)
        edges.push_back({{"id", e.id},
                         {"source", e.source},
                         {"target", e.target},
                         {"key", std::string(keyName(e.key))}});
    return json{{"schemaVersion", kModelSchemaVersion},
                {"kind", kind},
                {"start", model.start},
                {"endNodes", model.endNodes},
                {"nodes", std::move(nodes)},
                {"edges", std::move(edges)}};
}

[[noreturn]] void badModel(const std::string& what) {
    throw Error(ErrorCode::Validation, "model document: " + what);
}

std::string docString(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_string())
        badModel(std::string("missing string '") + key + "'");
    return doc.at(key).get<std::string>();
}

void loadModelInto(const json& doc, MegaModel& model, const char* expectedKind) {
    if (!doc.is_object()) badModel("expected an object");
    if (!doc.contains("schemaVersion") || !doc.at("schemaVersion").is_number_integer())
        badModel("missing integer 'schemaVersion'");
    if (doc.at("schemaVersion").get<int>() != kModelSchemaVersion)
        badModel("unsupported schemaVersion " + doc.at("schemaVersion").dump());
    if (docString(doc, "kind") != expectedKind)
        badModel("expected kind '" + std::string(expectedKind) + "', found '" +
                 docString(doc, "kind") + "'");

    model.start = docString(doc, "start");
    if (!doc.contains("endNodes") || !doc.at("endNodes").is_array())
        badModel("missing array 'endNodes'");
    for (const auto& v : doc.at("endNodes")) {
        if (!v.is_string()) badModel("endNodes entries must be strings");
        model.endNodes.push_back(v.get<std::string>());
    }

    if (!doc.contains("nodes") || !doc.at("nodes").is_array())
        badModel("missing array 'nodes'");
    for (const auto& n : doc.at("nodes")) {
        Node node;
        node.id = docString(n, "id");
        node.label = docString(n, "label");
        node.screen = docString(n, "screen");
        auto kind = nodeKindFromName(docString(n, "kind"));
        if (!kind) badModel("unknown node kind in '" + node.id + "'");
        node.kind = *kind;
        model.nodes.push_back(std::move(node));
    }

    if (!doc.contains("edges") || !doc.at("edges").is_array())
        badModel("missing array 'edges'");
    for (const auto& e : doc.at("edges")) {
        Edge edge;
        edge.id = docString(e, "id");
        edge.source = docString(e, "source");
        edge.target = docString(e, "target");
        auto key = keyFromName(docString(e, "key"));
        if (!key) badModel("unknown key in edge '" + edge.id + "'");
        edge.key = *key;
        model.edges.push_back(std::move(edge));
    }

    validateModel(model);
}

} // namespace

json saveModel(const MegaModel& model) { return modelBody(model, "mega"); }

json saveModel(const SubModel& model) {
    json doc = modelBody(model, "sub");
    doc["destinations"] = model.destinations;
    return doc;
}

MegaModel loadMegaModel(const json& doc) {
    MegaModel model;
    loadModelInto(doc, model, "mega");
    return model;
}

SubModel loadSubModel(const json& doc) {
    SubModel model;
    loadModelInto(doc, model, "sub");
    if (!doc.contains("destinations") || !doc.at("destinations").is_array())
        badModel("missing array 'destinations'");
    for (const auto& v : doc.at("destinations")) {
        if (!v.is_string()) badModel("destinations entries must be strings");
        model.destinations.push_back(v.get<std::string>());
    }
    if (model.destinations != model.endNodes)
        badModel("destinations and endNodes disagree");
    if (model.destinations.empty())
        badModel("a sub-model needs at least one destination");
    return model;
}

} // namespace tvc
