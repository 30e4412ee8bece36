#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvcreeper/error.hpp"
#include "tvcreeper/keys.hpp"

namespace tvc {

// The ten effect kinds a widget's OK press can run. open-screen and
// terminal-action drive navigation; the rest model internal app behaviour
// and exist as fault-injection sites.
enum class EffectKind {
    FetchResource,
    LookupElement,
    SetAttribute,
    InvokeFeature,
    AssignVariable,
    ComputeIndex,
    CallFunction,
    BindEvent,
    OpenScreen,
    TerminalAction,
};

std::string_view effectKindName(EffectKind kind);
std::optional<EffectKind> effectKindFromName(std::string_view name);

/// Attached by applyMutant. A marked step raises a fault instead of running
/// and aborts the remaining steps of the press; fatal marks kill the session.
struct MutantMark {
    std::string mutantId;
    bool fatal = false;

    bool operator==(const MutantMark&) const = default;
};

struct EffectStep {
    EffectKind kind = EffectKind::FetchResource;
    std::string argument;
    std::optional<MutantMark> mutation;

    bool operator==(const EffectStep&) const = default;
};

enum class WidgetKind { Navigable, Action };

struct Widget {
    std::string id;
    std::string label;
    WidgetKind kind = WidgetKind::Navigable;
    std::vector<EffectStep> effects;

    bool operator==(const Widget&) const = default;
};

struct GridCell {
    int row = 0;
    int col = 0;

    bool operator==(const GridCell&) const = default;
};

struct Screen {
    std::string id;
    std::optional<std::string> initialFocus;
    std::vector<Widget> widgets;
    // Partial per-key navigation table; absent entries mean "no reaction".
    std::map<std::string, std::map<Key, std::string>> nav;
    std::map<std::string, GridCell> gridHints;

    const Widget* findWidget(const std::string& widgetId) const;
    std::optional<std::string> navTarget(const std::string& widgetId, Key k) const;

    bool operator==(const Screen&) const = default;
};

struct AppSpec {
    std::string name;
    std::string rootScreen;
    std::vector<Screen> screens;

    const Screen* findScreen(const std::string& screenId) const;
    const Screen& screenAt(const std::string& screenId) const;

    bool operator==(const AppSpec&) const = default;
};

/// Parses and validates an app-spec document. Errors carry the offending
/// location, e.g. "screens[movies].nav[M1].Right".
AppSpec loadAppSpec(const std::string& text);

/// Re-checks every AppSpec invariant; throws Error{Validation} on the first hit.
void validateAppSpec(const AppSpec& spec);

/// Fills absent nav entries from gridHints: Right/Left move to the nearest
/// widget in the same row, Up/Down to the nearest in the same column.
/// Explicit nav entries are never overwritten.
AppSpec deriveNavFromGrid(const AppSpec& spec);

} // namespace tvc
