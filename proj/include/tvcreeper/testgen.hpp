#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tvcreeper/model.hpp"

namespace tvc {

/// An edge expanded with its endpoints; the unit of the coverage obligation.
struct CoverElement {
    std::string head;
    std::string edge;
    std::string tail;

    bool operator==(const CoverElement&) const = default;
};

/// A walk from the model start to an end node. Nodes may repeat; keys are
/// the remote presses deriving one from the next.
struct TestCase {
    std::vector<std::string> nodes;
    std::vector<std::string> edges;
    std::vector<Key> keys;

    bool operator==(const TestCase&) const = default;
};

struct TestSuite {
    std::vector<TestCase> tests;
    std::vector<std::string> coveredEdges; // sorted
    std::vector<std::string> uncoverable;  // sorted; empty for extracted sub-models

    bool operator==(const TestSuite&) const = default;
};

/// One CoverElement per edge, in model edge order.
std::vector<CoverElement> buildCover(const SubModel& g);

/// Shortest walk start -> c.head, then c.edge, then shortest walk from
/// c.tail to the nearest destination. Each segment breaks distance ties by
/// the lexicographically smallest node-id sequence (then smallest edge id).
/// Throws Error{Uncoverable} when no such walk exists.
TestCase candidateWalk(const SubModel& g, const CoverElement& c);

/// Greedy all-edge-coverage selection: repeatedly takes the candidate walk
/// covering the most not-yet-covered elements (ties: shorter walk, then
/// lexicographic node then edge sequence) until every coverable element is
/// covered. Throws Error{EmptyModel} when the model has no edges and the
/// start is not an end node.
TestSuite generateTests(const SubModel& g);

nlohmann::json saveSuite(const TestSuite& suite);
TestSuite loadSuite(const nlohmann::json& doc);

/// Flat key-name listing, one key per line, blank line between tests.
std::string suiteToKeysText(const TestSuite& suite);

} // namespace tvc
