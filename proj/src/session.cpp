#include "tvcreeper/session.hpp"

namespace tvc {

std::string_view logEventKindName(LogEventKind kind) {
    switch (kind) {
    case LogEventKind::Moved: return "moved";
    case LogEventKind::NoReaction: return "no-reaction";
    case LogEventKind::OpenedScreen: return "opened-screen";
    case LogEventKind::ClosedScreen: return "closed-screen";
    case LogEventKind::ActionFired: return "action-fired";
    case LogEventKind::Fault: return "fault";
    case LogEventKind::FocusRequired: return "focus-required";
    }
    return "?";
}

SessionState initSession(const AppSpec& spec, const std::optional<std::string>& focus) {
    const Screen& root = spec.screenAt(spec.rootScreen);

    SessionState state;
    state.screenStack.push_back(StackFrame{root.id, std::nullopt});

    if (root.initialFocus) {
        state.focus = *root.initialFocus;
    } else if (focus) {
        if (!root.findWidget(*focus))
            throw Error(ErrorCode::Validation,
                        "focus widget '" + *focus + "' does not exist on screen '" +
                            root.id + "'");
        state.focus = *focus;
    } else {
        throw Error(ErrorCode::FocusRequired, "Please Select the Focus Point");
    }
    return state;
}

namespace {

std::optional<std::string> focusForScreen(const Screen& screen) {
    if (screen.initialFocus) return screen.initialFocus;
    if (!screen.widgets.empty()) return screen.widgets.front().id;
    return std::nullopt;
}

void runEffects(const AppSpec& spec, SessionState& state, const Widget& widget,
                std::vector<LogEvent>& events) {
    for (const auto& step : widget.effects) {
        if (step.mutation) {
            events.push_back({LogEventKind::Fault, step.mutation->mutantId});
            if (step.mutation->fatal) state.terminated = true;
            break; // the corrupted step raises; the rest of this press is lost
        }
        switch (step.kind) {
        case EffectKind::OpenScreen: {
            const Screen& target = spec.screenAt(step.argument);
            state.screenStack.push_back(StackFrame{target.id, state.focus});
            state.focus = focusForScreen(target);
            events.push_back({LogEventKind::OpenedScreen, target.id});
            break;
        }
        case EffectKind::TerminalAction:
            events.push_back({LogEventKind::ActionFired, step.argument});
            break;
        default:
            break; // internal effect, nothing observable
        }
    }
}

} // namespace

std::vector<LogEvent> pressKey(const AppSpec& spec, SessionState& state, Key key) {
    std::vector<LogEvent> events;

    if (state.terminated) {
        events.push_back({LogEventKind::NoReaction, std::string(keyName(key))});
    } else if (isNavKey(key)) {
        const Screen& screen = spec.screenAt(state.topScreen());
        auto target = state.focus ? screen.navTarget(*state.focus, key) : std::nullopt;
        if (target) {
            state.focus = *target;
            events.push_back({LogEventKind::Moved, *target});
        } else {
            events.push_back({LogEventKind::NoReaction, std::string(keyName(key))});
        }
    } else if (key == Key::OK) {
        const Screen& screen = spec.screenAt(state.topScreen());
        const Widget* widget = state.focus ? screen.findWidget(*state.focus) : nullptr;
        if (widget) runEffects(spec, state, *widget, events);
        if (events.empty())
            events.push_back({LogEventKind::NoReaction, std::string(keyName(key))});
    } else { // Back
        if (state.screenStack.size() > 1) {
            StackFrame popped = state.screenStack.back();
            state.screenStack.pop_back();
            state.focus = popped.opener;
            events.push_back({LogEventKind::ClosedScreen, popped.screen});
        } else {
            events.push_back({LogEventKind::NoReaction, std::string(keyName(key))});
        }
    }

    state.keyCount += 1;
    state.log.insert(state.log.end(), events.begin(), events.end());
    return events;
}

SessionState resetAndReplay(const AppSpec& spec, const std::vector<Key>& keys,
                            const std::optional<std::string>& focus) {
    SessionState state = initSession(spec, focus);
    for (Key key : keys) pressKey(spec, state, key);
    return state;
}

} // namespace tvc
