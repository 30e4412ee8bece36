#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tvcreeper/keys.hpp"

namespace tvc {

enum class NodeKind { Navigable, End, Sink };

std::string_view nodeKindName(NodeKind kind);
std::optional<NodeKind> nodeKindFromName(std::string_view name);

/// Node ids are composed as "screen/widget" for focusable widgets and
/// "screen/widget!action" for terminal actions.
std::string widgetNodeId(const std::string& screen, const std::string& widget);
std::string actionNodeId(const std::string& screen, const std::string& widget,
                         const std::string& action);

struct NodeSite {
    std::string screen;
    std::string widget;
    std::optional<std::string> action;
};
NodeSite splitNodeId(const std::string& nodeId);

struct Node {
    std::string id;
    std::string label;
    std::string screen;
    NodeKind kind = NodeKind::Navigable;

    bool operator==(const Node&) const = default;
};

/// Edge ids are "source|Key"; (source, key) is unique per model because the
/// app reacts deterministically.
std::string edgeId(const std::string& source, Key key);

struct Edge {
    std::string id;
    std::string source;
    std::string target;
    Key key = Key::OK;

    bool operator==(const Edge&) const = default;
};

/// Directed multigraph over the app's focusable widgets and terminal
/// actions. endNodes may be empty for a crawled model of an app with no
/// terminal actions or dead-end widgets.
struct MegaModel {
    std::vector<Node> nodes; // discovery order
    std::vector<Edge> edges;
    std::string start;
    std::vector<std::string> endNodes; // unique, construction order

    const Node* findNode(const std::string& id) const;
    bool isEndNode(const std::string& id) const;

    bool operator==(const MegaModel&) const = default;
};

/// Destination-restricted model: exactly the nodes and edges lying on some
/// walk start -> destination. destinations doubles as its endNodes.
struct SubModel : MegaModel {
    std::vector<std::string> destinations;

    bool operator==(const SubModel&) const = default;
};

/// Checks structural invariants (unique ids, endpoint existence, unique
/// (source, key)); throws Error{Validation}.
void validateModel(const MegaModel& model);

/// Keeps node n iff n is reachable from start and some destination is
/// reachable from n; keeps edge e iff its source is reachable and some
/// destination is reachable from its target. Throws UnknownDestination for
/// ids outside the model and DestinationsUnreachable when no destination can
/// be reached from start.
SubModel extractSubModel(const MegaModel& model,
                         const std::vector<std::string>& destinations);

/// GraphViz text; byte-stable for equal models. Nodes are labeled
/// "label@screen" and end nodes are drawn with a double outline.
std::string exportDot(const MegaModel& model);

nlohmann::json saveModel(const MegaModel& model);
nlohmann::json saveModel(const SubModel& model);
MegaModel loadMegaModel(const nlohmann::json& doc);
SubModel loadSubModel(const nlohmann::json& doc);

} // namespace tvc
