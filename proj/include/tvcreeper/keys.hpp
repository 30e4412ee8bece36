#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace tvc {

// Remote-control keys. Up/Down/Left/Right/OK are the probe keys; Back only
// restores the previous screen and is never used for discovery.
enum class Key { Up, Down, Left, Right, OK, Back };

inline constexpr std::array<Key, 5> kProbeKeys{Key::Up, Key::Down, Key::Left,
                                               Key::Right, Key::OK};

constexpr bool isNavKey(Key k) {
    return k == Key::Up || k == Key::Down || k == Key::Left || k == Key::Right;
}

constexpr std::string_view keyName(Key k) {
    switch (k) {
    case Key::Up: return "Up";
    case Key::Down: return "Down";
    case Key::Left: return "Left";
    case Key::Right: return "Right";
    case Key::OK: return "OK";
    case Key::Back: return "Back";
    }
    return "?";
}

constexpr std::optional<Key> keyFromName(std::string_view name) {
    if (name == "Up") return Key::Up;
    if (name == "Down") return Key::Down;
    if (name == "Left") return Key::Left;
    if (name == "Right") return Key::Right;
    if (name == "OK") return Key::OK;
    if (name == "Back") return Key::Back;
    return std::nullopt;
}

} // namespace tvc
