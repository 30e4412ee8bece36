#include "tvcreeper/app_spec.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <json.hpp>

namespace tvc {

using nlohmann::json;

std::string_view effectKindName(EffectKind kind) {
    switch (kind) {
    case EffectKind::FetchResource: return "fetch-resource";
    case EffectKind::LookupElement: return "lookup-element";
    case EffectKind::SetAttribute: return "set-attribute";
    case EffectKind::InvokeFeature: return "invoke-feature";
    case EffectKind::AssignVariable: return "assign-variable";
    case EffectKind::ComputeIndex: return "compute-index";
    case EffectKind::CallFunction: return "call-function";
    case EffectKind::BindEvent: return "bind-event";
    case EffectKind::OpenScreen: return "open-screen";
    case EffectKind::TerminalAction: return "terminal-action";
    }
    return "?";
}

std::optional<EffectKind> effectKindFromName(std::string_view name) {
    static const std::pair<std::string_view, EffectKind> table[] = {
        {"fetch-resource", EffectKind::FetchResource},
        {"lookup-element", EffectKind::LookupElement},
        {"set-attribute", EffectKind::SetAttribute},
        {"invoke-feature", EffectKind::InvokeFeature},
        {"assign-variable", EffectKind::AssignVariable},
        {"compute-index", EffectKind::ComputeIndex},
        {"call-function", EffectKind::CallFunction},
        {"bind-event", EffectKind::BindEvent},
        {"open-screen", EffectKind::OpenScreen},
        {"terminal-action", EffectKind::TerminalAction},
    };
    for (const auto& [n, k] : table)
        if (n == name) return k;
    return std::nullopt;
}

const Widget* Screen::findWidget(const std::string& widgetId) const {
    for (const auto& w : widgets)
        if (w.id == widgetId) return &w;
    return nullptr;
}

std::optional<std::string> Screen::navTarget(const std::string& widgetId, Key k) const {
    auto row = nav.find(widgetId);
    if (row == nav.end()) return std::nullopt;
    auto cell = row->second.find(k);
    if (cell == row->second.end()) return std::nullopt;
    return cell->second;
}

const Screen* AppSpec::findScreen(const std::string& screenId) const {
    for (const auto& s : screens)
        if (s.id == screenId) return &s;
    return nullptr;
}

const Screen& AppSpec::screenAt(const std::string& screenId) const {
    const Screen* s = findScreen(screenId);
    if (!s) throw Error(ErrorCode::Validation, "unknown screen '" + screenId + "'");
    return *s;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::Validation, where + ": " + what);
}

bool isIdentifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '.' || c == '-';
    });
}

void requireIdentifier(const std::string& s, const std::string& where) {
    if (!isIdentifier(s))
        fail(where, "'" + s + "' is not a valid identifier "
                    "(expected [A-Za-z][A-Za-z0-9_.-]*)");
}

const json& member(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing required key '") + key + "'");
    return *it;
}

std::string stringMember(const json& obj, const char* key, const std::string& where) {
    const json& v = member(obj, key, where);
    if (!v.is_string()) fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

EffectStep parseEffect(const json& doc, const std::string& where) {
    EffectStep step;
    std::string kind = stringMember(doc, "kind", where);
    auto parsed = effectKindFromName(kind);
    if (!parsed) fail(where + ".kind", "unknown effect kind '" + kind + "'");
    step.kind = *parsed;
    step.argument = stringMember(doc, "argument", where);
    return step;
}

Widget parseWidget(const json& doc, const std::string& where) {
    Widget w;
    w.id = stringMember(doc, "id", where);
    w.label = doc.contains("label") ? stringMember(doc, "label", where) : w.id;
    if (doc.contains("kind")) {
        std::string kind = stringMember(doc, "kind", where);
        if (kind == "navigable") w.kind = WidgetKind::Navigable;
        else if (kind == "action") w.kind = WidgetKind::Action;
        else fail(where + ".kind", "unknown widget kind '" + kind + "'");
    }
    if (doc.contains("effects")) {
        const json& effects = doc.at("effects");
        if (!effects.is_array()) fail(where + ".effects", "expected an array");
        for (std::size_t i = 0; i < effects.size(); ++i)
            w.effects.push_back(parseEffect(effects[i],
                where + ".effects[" + std::to_string(i) + "]"));
    }
    return w;
}

Screen parseScreen(const json& doc, const std::string& where) {
    Screen s;
    s.id = stringMember(doc, "id", where);
    if (doc.contains("initialFocus"))
        s.initialFocus = stringMember(doc, "initialFocus", where);
    const json& widgets = member(doc, "widgets", where);
    if (!widgets.is_array()) fail(where + ".widgets", "expected an array");
    for (std::size_t i = 0; i < widgets.size(); ++i)
        s.widgets.push_back(parseWidget(widgets[i],
            where + ".widgets[" + std::to_string(i) + "]"));
    if (doc.contains("nav")) {
        const json& nav = doc.at("nav");
        if (!nav.is_object()) fail(where + ".nav", "expected an object");
        for (auto it = nav.begin(); it != nav.end(); ++it) {
            const std::string navWhere = where + ".nav[" + it.key() + "]";
            if (!it.value().is_object()) fail(navWhere, "expected an object");
            for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
                auto key = keyFromName(kv.key());
                if (!key || !isNavKey(*key))
                    fail(navWhere, "'" + kv.key() + "' is not a navigation key");
                if (!kv.value().is_string())
                    fail(navWhere + "." + kv.key(), "expected a widget id string");
                s.nav[it.key()][*key] = kv.value().get<std::string>();
            }
        }
    }
    if (doc.contains("gridHints")) {
        const json& hints = doc.at("gridHints");
        if (!hints.is_object()) fail(where + ".gridHints", "expected an object");
        for (auto it = hints.begin(); it != hints.end(); ++it) {
            const std::string hintWhere = where + ".gridHints[" + it.key() + "]";
            const json& cell = it.value();
            if (!cell.is_array() || cell.size() != 2 ||
                !cell[0].is_number_integer() || !cell[1].is_number_integer())
                fail(hintWhere, "expected [row, col] integers");
            s.gridHints[it.key()] = GridCell{cell[0].get<int>(), cell[1].get<int>()};
        }
    }
    return s;
}

} // namespace

void validateAppSpec(const AppSpec& spec) {
    if (spec.screens.empty())
        fail("screens", "an app spec needs at least one screen");

    std::set<std::string> screenIds;
    for (const auto& screen : spec.screens) {
        const std::string where = "screens[" + screen.id + "]";
        requireIdentifier(screen.id, where + ".id");
        if (!screenIds.insert(screen.id).second)
            fail(where, "duplicate screen id '" + screen.id + "'");
    }
    if (!spec.findScreen(spec.rootScreen))
        fail("rootScreen", "unknown screen '" + spec.rootScreen + "'");

    for (const auto& screen : spec.screens) {
        const std::string where = "screens[" + screen.id + "]";
        if (screen.widgets.empty())
            fail(where, "a screen needs at least one widget");

        std::set<std::string> widgetIds;
        for (const auto& w : screen.widgets) {
            const std::string wWhere = where + ".widgets[" + w.id + "]";
            requireIdentifier(w.id, wWhere + ".id");
            if (!widgetIds.insert(w.id).second)
                fail(wWhere, "duplicate widget id '" + w.id + "'");
            if (w.kind == WidgetKind::Action && w.effects.empty())
                fail(wWhere, "action widget has no effects");
            for (std::size_t i = 0; i < w.effects.size(); ++i) {
                const auto& step = w.effects[i];
                const std::string sWhere =
                    wWhere + ".effects[" + std::to_string(i) + "]";
                if (step.kind == EffectKind::OpenScreen &&
                    !spec.findScreen(step.argument))
                    fail(sWhere, "open-screen target '" + step.argument +
                                 "' is not a screen");
                if (step.kind == EffectKind::TerminalAction)
                    requireIdentifier(step.argument, sWhere + ".argument");
            }
        }

        if (screen.initialFocus && !widgetIds.count(*screen.initialFocus))
            fail(where + ".initialFocus",
                 "unknown widget '" + *screen.initialFocus + "'");

        for (const auto& [source, row] : screen.nav) {
            const std::string nWhere = where + ".nav[" + source + "]";
            if (!widgetIds.count(source))
                fail(nWhere, "unknown source widget '" + source + "'");
            for (const auto& [key, target] : row) {
                if (!widgetIds.count(target))
                    fail(nWhere + "." + std::string(keyName(key)),
                         "unknown target widget '" + target + "'");
            }
        }

        std::set<std::pair<int, int>> cells;
        for (const auto& [widgetId, cell] : screen.gridHints) {
            const std::string hWhere = where + ".gridHints[" + widgetId + "]";
            if (!widgetIds.count(widgetId))
                fail(hWhere, "unknown widget '" + widgetId + "'");
            if (!cells.insert({cell.row, cell.col}).second)
                fail(hWhere, "grid cell (" + std::to_string(cell.row) + ", " +
                             std::to_string(cell.col) + ") used twice");
        }
    }
}

AppSpec loadAppSpec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Validation, std::string("app spec: ") + e.what());
    }

    AppSpec spec;
    spec.name = stringMember(doc, "name", "app spec");
    spec.rootScreen = stringMember(doc, "rootScreen", "app spec");
    const json& screens = member(doc, "screens", "app spec");
    if (!screens.is_array()) fail("screens", "expected an array");
    for (std::size_t i = 0; i < screens.size(); ++i)
        spec.screens.push_back(parseScreen(screens[i],
            "screens[" + std::to_string(i) + "]"));

    validateAppSpec(spec);
    return spec;
}

AppSpec deriveNavFromGrid(const AppSpec& spec) {
    AppSpec out = spec;
    for (auto& screen : out.screens) {
        if (screen.gridHints.empty()) continue;

        for (const auto& [widgetId, cell] : screen.gridHints) {
            // Nearest hinted widget per direction; explicit entries win.
            struct Best { const std::string* id = nullptr; int distance = 0; };
            Best best[4]; // Up, Down, Left, Right
            for (const auto& [otherId, other] : screen.gridHints) {
                if (otherId == widgetId) continue;
                if (other.col == cell.col && other.row < cell.row) {
                    int d = cell.row - other.row;
                    if (!best[0].id || d < best[0].distance) best[0] = {&otherId, d};
                } else if (other.col == cell.col && other.row > cell.row) {
                    int d = other.row - cell.row;
                    if (!best[1].id || d < best[1].distance) best[1] = {&otherId, d};
                } else if (other.row == cell.row && other.col < cell.col) {
                    int d = cell.col - other.col;
                    if (!best[2].id || d < best[2].distance) best[2] = {&otherId, d};
                } else if (other.row == cell.row && other.col > cell.col) {
                    int d = other.col - cell.col;
                    if (!best[3].id || d < best[3].distance) best[3] = {&otherId, d};
                }
            }
            const Key keys[4] = {Key::Up, Key::Down, Key::Left, Key::Right};
            for (int i = 0; i < 4; ++i) {
                if (!best[i].id) continue;
                auto& row = screen.nav[widgetId];
                if (!row.count(keys[i])) row[keys[i]] = *best[i].id;
            }
        }
    }
    validateAppSpec(out);
    return out;
}

} // namespace tvc
