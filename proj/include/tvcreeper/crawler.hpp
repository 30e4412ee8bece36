#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvcreeper/app_spec.hpp"
#include "tvcreeper/model.hpp"

namespace tvc {

struct CrawlConfig {
    std::optional<std::size_t> maxActions; // cap on probe presses
    std::optional<std::string> focus;      // start widget when the spec sets none
    // Pinned probe sequence; crawl() rejects anything else.
    std::vector<Key> probeOrder{kProbeKeys.begin(), kProbeKeys.end()};
};

struct CrawlResult {
    MegaModel model;
    std::vector<std::string> visited; // node ids in discovery order
    std::size_t actionsUsed = 0;
    bool truncated = false;

    bool operator==(const CrawlResult&) const = default;
};

/// Depth-first exploration by key presses only: probes every key from every
/// discovered state, records each reaction as an edge, recurses into new
/// states, and restores the pre-probe state by replaying the discovery key
/// path. Replay presses do not count toward the action cap.
CrawlResult crawl(const AppSpec& spec, const CrawlConfig& config = {});

/// Independent completeness oracle: plain BFS over the simulator's reachable
/// (screen, focus) states, probing all five keys from each. Test use only.
MegaModel bruteForceModel(const AppSpec& spec,
                          const std::optional<std::string>& focus = std::nullopt);

} // namespace tvc
