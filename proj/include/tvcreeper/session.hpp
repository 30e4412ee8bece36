#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvcreeper/app_spec.hpp"
#include "tvcreeper/keys.hpp"

namespace tvc {

enum class LogEventKind {
    Moved,
    NoReaction,
    OpenedScreen,
    ClosedScreen,
    ActionFired,
    Fault,
    FocusRequired,
};

std::string_view logEventKindName(LogEventKind kind);

/// One observable reaction on the black-box log channel. detail names the
/// widget moved to, the screen opened/closed, the action fired, or the
/// mutant id that raised a fault.
struct LogEvent {
    LogEventKind kind = LogEventKind::NoReaction;
    std::string detail;

    bool operator==(const LogEvent&) const = default;
};

struct StackFrame {
    std::string screen;
    // Widget focused on the screen below when this screen was pushed;
    // Back restores it. Unset only for the root frame.
    std::optional<std::string> opener;

    bool operator==(const StackFrame&) const = default;
};

struct SessionState {
    std::vector<StackFrame> screenStack; // bottom = root, top = visible
    std::optional<std::string> focus;    // widget on the top screen
    std::size_t keyCount = 0;
    std::vector<LogEvent> log;
    bool terminated = false; // set when a fatal mutant fired

    const std::string& topScreen() const { return screenStack.back().screen; }

    bool operator==(const SessionState&) const = default;
};

/// Starts a session on the root screen. The root screen's initialFocus wins
/// over the supplied focus; with neither, throws Error{FocusRequired}.
SessionState initSession(const AppSpec& spec,
                         const std::optional<std::string>& focus = std::nullopt);

/// Applies one key press. Total: never throws, always appends at least one
/// log event, and increments keyCount. Returns the events of this press
/// (also appended to state.log).
std::vector<LogEvent> pressKey(const AppSpec& spec, SessionState& state, Key key);

/// initSession followed by pressKey for each key; the log is replayed too.
SessionState resetAndReplay(const AppSpec& spec, const std::vector<Key>& keys,
                            const std::optional<std::string>& focus = std::nullopt);

} // namespace tvc
