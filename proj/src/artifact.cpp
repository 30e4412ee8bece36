#include "tvcreeper/artifact.hpp"

#include <fstream>
#include <sstream>

#include "tvcreeper/error.hpp"

namespace tvc {

std::string contentHash(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Validation, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void writeFile(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Validation, "cannot write '" + path + "'");
    out << bytes;
    if (!out)
        throw Error(ErrorCode::Validation, "failed writing '" + path + "'");
}

std::string dumpArtifact(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

nlohmann::json parseArtifactFile(const std::string& path) {
    try {
        return nlohmann::json::parse(readFile(path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Validation, path + ": " + e.what());
    }
}

} // namespace tvc
