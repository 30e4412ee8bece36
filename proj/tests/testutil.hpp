#pragma once

#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tvcreeper/app_spec.hpp"
#include "tvcreeper/model.hpp"

namespace tvctest {

inline std::string fixturePath(const std::string& name) {
    return std::string(TVC_FIXTURES_DIR) + "/" + name;
}

inline std::string readFixture(const std::string& name) {
    std::ifstream in(fixturePath(name), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Parses and grid-derives one of the bundled fixture specs.
inline tvc::AppSpec loadFixture(const std::string& name) {
    return tvc::deriveNavFromGrid(tvc::loadAppSpec(readFixture(name)));
}

/// Builds the large benchmark app: eleven widgets in a row whose effect
/// lists hold exactly 89 fetch-resource, 49 lookup-element, 1365
/// invoke-feature and 89 assign-variable sites, dealt round-robin; the last
/// widget additionally fires a terminal action.
inline tvc::AppSpec buildScaleSpec() {
    using namespace tvc;

    std::vector<EffectStep> sites;
    for (int i = 0; i < 89; ++i)
        sites.push_back({EffectKind::FetchResource,
                         "https://api.example.org/item/" + std::to_string(i), {}});
    for (int i = 0; i < 49; ++i)
        sites.push_back({EffectKind::LookupElement, "element-" + std::to_string(i), {}});
    for (int i = 0; i < 1365; ++i)
        sites.push_back({EffectKind::InvokeFeature, "feature-" + std::to_string(i), {}});
    for (int i = 0; i < 89; ++i)
        sites.push_back({EffectKind::AssignVariable, "var" + std::to_string(i), {}});

    constexpr int kWidgets = 11;
    Screen screen;
    screen.id = "main";
    screen.initialFocus = "w01";
    for (int w = 0; w < kWidgets; ++w) {
        Widget widget;
        std::ostringstream id;
        id << "w" << (w + 1 < 10 ? "0" : "") << w + 1;
        widget.id = id.str();
        widget.label = widget.id;
        widget.kind = WidgetKind::Action;
        screen.widgets.push_back(widget);
        screen.gridHints[widget.id] = GridCell{0, w};
    }
    for (std::size_t i = 0; i < sites.size(); ++i)
        screen.widgets[i % kWidgets].effects.push_back(sites[i]);
    screen.widgets.back().effects.push_back(
        {EffectKind::TerminalAction, "done", {}});

    AppSpec spec;
    spec.name = "scale";
    spec.rootScreen = "main";
    spec.screens.push_back(std::move(screen));
    return deriveNavFromGrid(spec);
}

// ---- independent graph oracles (brute force; no shared code with src/) ----

struct OracleGraph {
    std::map<std::string, std::vector<const tvc::Edge*>> out;
    std::map<std::string, std::vector<const tvc::Edge*>> in;

    explicit OracleGraph(const tvc::MegaModel& m) {
        for (const auto& e : m.edges) {
            out[e.source].push_back(&e);
            in[e.target].push_back(&e);
        }
    }
};

inline std::set<std::string> oracleReachableFrom(const OracleGraph& g,
                                                 const std::string& seed) {
    std::set<std::string> seen{seed};
    std::deque<std::string> queue{seed};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        auto it = g.out.find(cur);
        if (it == g.out.end()) continue;
        for (const auto* e : it->second)
            if (seen.insert(e->target).second) queue.push_back(e->target);
    }
    return seen;
}

inline std::set<std::string> oracleCanReach(const OracleGraph& g,
                                            const std::vector<std::string>& targets) {
    std::set<std::string> seen(targets.begin(), targets.end());
    std::deque<std::string> queue(targets.begin(), targets.end());
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        auto it = g.in.find(cur);
        if (it == g.in.end()) continue;
        for (const auto* e : it->second)
            if (seen.insert(e->source).second) queue.push_back(e->source);
    }
    return seen;
}

/// Whether some walk start -> ... -> e -> ... -> d exists for a destination d.
inline bool oracleWalkThroughEdge(const tvc::MegaModel& m, const tvc::Edge& e,
                                  const std::vector<std::string>& dests) {
    OracleGraph g(m);
    auto forward = oracleReachableFrom(g, m.start);
    auto backward = oracleCanReach(g, dests);
    return forward.count(e.source) > 0 && backward.count(e.target) > 0;
}

inline bool oracleWalkThroughNode(const tvc::MegaModel& m, const std::string& node,
                                  const std::vector<std::string>& dests) {
    OracleGraph g(m);
    return oracleReachableFrom(g, m.start).count(node) > 0 &&
           oracleCanReach(g, dests).count(node) > 0;
}

/// Minimal number of edges in a walk between two nodes; -1 when none exists.
inline int oracleShortestDistance(const tvc::MegaModel& m, const std::string& from,
                                  const std::string& to) {
    OracleGraph g(m);
    std::map<std::string, int> dist{{from, 0}};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        if (cur == to) return dist[cur];
        auto it = g.out.find(cur);
        if (it == g.out.end()) continue;
        for (const auto* e : it->second)
            if (dist.emplace(e->target, dist[cur] + 1).second)
                queue.push_back(e->target);
    }
    return -1;
}

inline std::multiset<std::string> nodeMultiset(const tvc::MegaModel& m) {
    std::multiset<std::string> ids;
    for (const auto& n : m.nodes) ids.insert(n.id);
    return ids;
}

inline std::multiset<std::string> edgeMultiset(const tvc::MegaModel& m) {
    std::multiset<std::string> ids;
    for (const auto& e : m.edges)
        ids.insert(e.source + "|" + std::string(tvc::keyName(e.key)) + ">" + e.target);
    return ids;
}

} // namespace tvctest
