#include "tvcreeper/crawler.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "tvcreeper/session.hpp"

namespace tvc {

namespace {

std::string focusSignature(const SessionState& state) {
    return state.focus ? widgetNodeId(state.topScreen(), *state.focus) : std::string();
}

struct Reaction {
    Node target;     // node the press leads to (may already be known)
    bool moved;      // session left the pre-press (screen, focus) state
};

/// Interprets the log of one press. A press reacts when it fires an action,
/// opens a screen, or moves the focus; everything else is silence.
std::optional<Reaction> classifyReaction(const AppSpec& spec,
                                         const SessionState& before,
                                         const SessionState& after,
                                         const std::vector<LogEvent>& events) {
    for (const auto& ev : events) {
        if (ev.kind == LogEventKind::ActionFired) {
            Node node;
            node.id = actionNodeId(before.topScreen(), *before.focus, ev.detail);
            node.label = ev.detail;
            node.screen = before.topScreen();
            node.kind = NodeKind::End;
            return Reaction{std::move(node),
                            focusSignature(after) != focusSignature(before)};
        }
    }
    bool stateChanged = focusSignature(after) != focusSignature(before);
    for (const auto& ev : events) {
        if (ev.kind == LogEventKind::Moved || ev.kind == LogEventKind::OpenedScreen) {
            const Screen& screen = spec.screenAt(after.topScreen());
            const Widget* widget = screen.findWidget(*after.focus);
            Node node;
            node.id = widgetNodeId(after.topScreen(), *after.focus);
            node.label = widget ? widget->label : *after.focus;
            node.screen = after.topScreen();
            node.kind = NodeKind::Navigable;
            return Reaction{std::move(node), stateChanged};
        }
    }
    return std::nullopt;
}

struct CrawlDriver {
    const AppSpec& spec;
    const CrawlConfig& config;
    CrawlResult result;
    std::unordered_set<std::string> known;
    std::unordered_map<std::string, int> outDegree;
    std::unordered_map<std::string, int> probesCompleted;

    bool capReached() const {
        return config.maxActions && result.actionsUsed >= *config.maxActions;
    }

    void addNode(const Node& node) {
        result.model.nodes.push_back(node);
        result.visited.push_back(node.id);
        known.insert(node.id);
        if (node.kind == NodeKind::End) result.model.endNodes.push_back(node.id);
    }

    // Probes every key from the state reached by `path`; `at` is a live
    // session parked on `nodeId`.
    void probeFrom(const std::string& nodeId, SessionState at, std::vector<Key>& path) {
        for (Key key : config.probeOrder) {
            if (result.truncated) return;
            if (capReached()) {
                result.truncated = true;
                return;
            }

            SessionState after = at;
            std::vector<LogEvent> events = pressKey(spec, after, key);
            result.actionsUsed += 1;

            auto reaction = classifyReaction(spec, at, after, events);
            if (!reaction) {
                probesCompleted[nodeId] += 1;
                continue;
            }

            result.model.edges.push_back(
                Edge{edgeId(nodeId, key), nodeId, reaction->target.id, key});
            outDegree[nodeId] += 1;

            bool isNew = !known.count(reaction->target.id);
            if (isNew) addNode(reaction->target);
            probesCompleted[nodeId] += 1;

            if (isNew && reaction->target.kind == NodeKind::Navigable && reaction->moved) {
                path.push_back(key);
                probeFrom(reaction->target.id, std::move(after), path);
                path.pop_back();
                if (result.truncated) return;
            }
            if (reaction->moved) {
                // Back to the parental state by replaying the discovery path.
                at = resetAndReplay(spec, path, config.focus);
            }
        }
    }

    void finalize() {
        for (auto& node : result.model.nodes) {
            if (node.kind == NodeKind::Navigable && probesCompleted[node.id] == 5 &&
                outDegree[node.id] == 0) {
                node.kind = NodeKind::Sink;
                result.model.endNodes.push_back(node.id);
            }
        }
    }
};

} // namespace

CrawlResult crawl(const AppSpec& spec, const CrawlConfig& config) {
    if (!std::equal(config.probeOrder.begin(), config.probeOrder.end(),
                    kProbeKeys.begin(), kProbeKeys.end()))
        throw Error(ErrorCode::Validation,
                    "probe order must be Up, Down, Left, Right, OK");

    SessionState session = initSession(spec, config.focus);

    CrawlDriver driver{spec, config, {}, {}, {}, {}};

    const Screen& root = spec.screenAt(session.topScreen());
    const Widget* startWidget = root.findWidget(*session.focus);
    Node start;
    start.id = widgetNodeId(root.id, *session.focus);
    start.label = startWidget->label;
    start.screen = root.id;
    start.kind = NodeKind::Navigable;
    driver.addNode(start);
    driver.result.model.start = start.id;

    if (config.maxActions && *config.maxActions == 0) {
        driver.result.truncated = true;
        return driver.result;
    }

    std::vector<Key> path;
    driver.probeFrom(start.id, std::move(session), path);
    driver.finalize();
    return driver.result;
}

MegaModel bruteForceModel(const AppSpec& spec, const std::optional<std::string>& focus) {
    SessionState session = initSession(spec, focus);

    MegaModel model;
    std::unordered_set<std::string> known;
    // Back never probes, so behaviour depends only on (top screen, focus);
    // keying the search on that projection keeps it finite even when
    // open-screen chains loop.
    std::deque<std::pair<std::string, SessionState>> queue;

    const Screen& root = spec.screenAt(session.topScreen());
    Node start;
    start.id = widgetNodeId(root.id, *session.focus);
    start.label = root.findWidget(*session.focus)->label;
    start.screen = root.id;
    start.kind = NodeKind::Navigable;
    model.nodes.push_back(start);
    model.start = start.id;
    known.insert(start.id);
    queue.emplace_back(start.id, std::move(session));

    std::unordered_map<std::string, int> outDegree;

    while (!queue.empty()) {
        auto [nodeId, state] = std::move(queue.front());
        queue.pop_front();

        for (Key key : kProbeKeys) {
            SessionState after = state;
            std::vector<LogEvent> events = pressKey(spec, after, key);
            auto reaction = classifyReaction(spec, state, after, events);
            if (!reaction) continue;

            model.edges.push_back(
                Edge{edgeId(nodeId, key), nodeId, reaction->target.id, key});
            outDegree[nodeId] += 1;

            if (!known.count(reaction->target.id)) {
                known.insert(reaction->target.id);
                model.nodes.push_back(reaction->target);
                if (reaction->target.kind == NodeKind::End)
                    model.endNodes.push_back(reaction->target.id);
                else if (reaction->moved)
                    queue.emplace_back(reaction->target.id, std::move(after));
            }
        }
    }

    for (auto& node : model.nodes) {
        if (node.kind == NodeKind::Navigable && outDegree[node.id] == 0) {
            node.kind = NodeKind::Sink;
            model.endNodes.push_back(node.id);
        }
    }
    return model;
}

} // namespace tvc
