#include "origin/value.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "origin/error.h"

namespace origin {

namespace {

constexpr std::array<std::string_view, 2> kComponentNames{"led", "speaker"};
constexpr std::array<std::string_view, 10> kSensorNames{
    "accelerometerX", "accelerometerY", "accelerometerZ", "gyroscopeX", "gyroscopeY",
    "gyroscopeZ",     "proximity",      "pressure",       "humidity",   "light",
};

} // namespace

std::string_view component_name(ComponentId id) {
    return kComponentNames[static_cast<std::size_t>(id)];
}

std::string_view sensor_name(SensorId id) {
    return kSensorNames[static_cast<std::size_t>(id)];
}

std::optional<ComponentId> component_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kComponentNames.size(); ++i) {
        if (kComponentNames[i] == name) {
            return static_cast<ComponentId>(i);
        }
    }
    return std::nullopt;
}

std::optional<SensorId> sensor_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kSensorNames.size(); ++i) {
        if (kSensorNames[i] == name) {
            return static_cast<SensorId>(i);
        }
    }
    return std::nullopt;
}

Value Value::array(Array items) {
    return Value(std::make_shared<Array>(std::move(items)));
}

Value Value::json() {
    return Value(std::make_shared<JsonObject>());
}

std::string_view Value::type_name() const {
    switch (storage_.index()) {
        case 0: return "null";
        case 1: return "number";
        case 2: return "text";
        case 3: return "array";
        case 4: return "json";
        case 5: return "request";
        case 6: return "component";
        case 7: return "sensor";
    }
    return "?";
}

void JsonObject::set(const std::string& key, Value value) {
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries.emplace_back(key, std::move(value));
}

const Value* JsonObject::find(std::string_view key) const {
    for (const auto& [k, v] : entries) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

std::string format_number(double n) {
    if (std::isnan(n)) {
        return "nan";
    }
    if (std::isinf(n)) {
        return n > 0 ? "inf" : "-inf";
    }
    if (n == 0.0) {
        return "0";  // also folds -0
    }
    if (n == std::floor(n) && std::fabs(n) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", n);
        return buf;
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, n);
    return std::string(buf, res.ptr);
}

namespace {

using Seen = std::unordered_set<const void*>;

void display_into(std::string& out, const Value& value, Seen& seen);

void display_into(std::string& out, const Value& value, Seen& seen) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Null>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_number(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                out += v;
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                if (!seen.insert(v.get()).second) {
                    out += "[...]";
                    return;
                }
                out += "[";
                for (std::size_t i = 0; i < v->size(); ++i) {
                    if (i > 0) {
                        out += ", ";
                    }
                    display_into(out, (*v)[i], seen);
                }
                out += "]";
                seen.erase(v.get());
            } else if constexpr (std::is_same_v<T, JsonRef>) {
                // Objects hold deep copies, so they cannot be cyclic.
                out += to_json_text(value);
            } else if constexpr (std::is_same_v<T, RequestRef>) {
                out += "<request " + v->url + ">";
            } else if constexpr (std::is_same_v<T, ComponentId>) {
                out += component_name(v);
            } else if constexpr (std::is_same_v<T, SensorId>) {
                out += sensor_name(v);
            }
        },
        value.storage());
}

bool json_compatible(const Value& value, Seen& seen) {
    if (value.is_number() || value.is_text()) {
        return true;
    }
    if (value.is_array()) {
        const auto& arr = value.as_array();
        if (!seen.insert(arr.get()).second) {
            return false;
        }
        bool ok = std::all_of(arr->begin(), arr->end(), [&](const Value& v) { return json_compatible(v, seen); });
        seen.erase(arr.get());
        return ok;
    }
    if (value.is_json()) {
        const auto& obj = value.as_json();
        if (!seen.insert(obj.get()).second) {
            return false;
        }
        bool ok = std::all_of(obj->entries.begin(), obj->entries.end(),
                              [&](const auto& kv) { return json_compatible(kv.second, seen); });
        seen.erase(obj.get());
        return ok;
    }
    return false;
}

void escape_json_string(std::string& out, std::string_view s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void json_into(std::string& out, const Value& value) {
    if (value.is_number()) {
        double n = value.as_number();
        out += std::isfinite(n) ? format_number(n) : "null";
    } else if (value.is_text()) {
        escape_json_string(out, value.as_text());
    } else if (value.is_array()) {
        out += '[';
        bool first = true;
        for (const Value& v : *value.as_array()) {
            if (!first) {
                out += ',';
            }
            first = false;
            json_into(out, v);
        }
        out += ']';
    } else if (value.is_json()) {
        out += '{';
        bool first = true;
        for (const auto& [k, v] : value.as_json()->entries) {
            if (!first) {
                out += ',';
            }
            first = false;
            escape_json_string(out, k);
            out += ':';
            json_into(out, v);
        }
        out += '}';
    } else {
        out += "null";
    }
}

} // namespace

std::string display(const Value& value) {
    std::string out;
    Seen seen;
    display_into(out, value, seen);
    return out;
}

bool is_json_compatible(const Value& value) {
    Seen seen;
    return json_compatible(value, seen);
}

Value deep_copy(const Value& value) {
    if (value.is_array()) {
        Array copy;
        copy.reserve(value.as_array()->size());
        for (const Value& v : *value.as_array()) {
            copy.push_back(deep_copy(v));
        }
        return Value::array(std::move(copy));
    }
    if (value.is_json()) {
        auto obj = std::make_shared<JsonObject>();
        for (const auto& [k, v] : value.as_json()->entries) {
            obj->entries.emplace_back(k, deep_copy(v));
        }
        return Value(std::move(obj));
    }
    return value;
}

std::string to_json_text(const Value& value) {
    std::string out;
    json_into(out, value);
    return out;
}

} // namespace origin
