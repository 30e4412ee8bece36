#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace tvc {

/// FNV-1a 64-bit over raw bytes, rendered as 16 hex digits. Used to chain
/// pipeline artifacts to their inputs; not cryptographic.
std::string contentHash(std::string_view bytes);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& bytes);

/// Renders an artifact deterministically: 2-space indent plus trailing newline.
std::string dumpArtifact(const nlohmann::json& doc);

/// Parses a file as JSON; throws Error{Validation} with the path on failure.
nlohmann::json parseArtifactFile(const std::string& path);

} // namespace tvc
