#include "origin/device.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "origin/error.h"

namespace origin {

using nlohmann::json;
using nlohmann::ordered_json;

void SensorTrace::add(SensorId sensor, SensorSample sample) {
    auto& samples = channels_[sensor];
    if (!samples.empty() && samples.back().t_ms >= sample.t_ms) {
        throw std::invalid_argument("trace samples for " + std::string(sensor_name(sensor)) +
                                    " must be strictly increasing in time");
    }
    samples.push_back(sample);
}

const std::vector<SensorSample>& SensorTrace::channel(SensorId sensor) const {
    static const std::vector<SensorSample> kEmpty;
    auto it = channels_.find(sensor);
    return it == channels_.end() ? kEmpty : it->second;
}

std::size_t SensorTrace::size() const {
    std::size_t n = 0;
    for (const auto& [_, samples] : channels_) {
        n += samples.size();
    }
    return n;
}

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line = trim(text.substr(start, end - start));
        if (!line.empty()) {
            fn(line_no, line);
        }
        start = end + 1;
    }
}

int line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

json parse_json_line(int line_no, std::string_view line) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw FormatError(line_no, std::string("invalid JSON: ") + e.what());
    }
}

std::int64_t integer_field(int line_no, const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(line_no, std::string("missing field \"") + key + "\"");
    }
    if (!it->is_number_integer()) {
        throw FormatError(line_no, std::string("field \"") + key + "\" must be an integer");
    }
    return it->get<std::int64_t>();
}

std::string string_field(int line_no, const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(line_no, std::string("missing field \"") + key + "\"");
    }
    if (!it->is_string()) {
        throw FormatError(line_no, std::string("field \"") + key + "\" must be a string");
    }
    return it->get<std::string>();
}

} // namespace

SensorTrace load_trace(std::string_view text) {
    struct Row {
        SensorId sensor;
        SensorSample sample;
        int line;
    };
    std::vector<Row> rows;

    for_each_line(text, [&](int line_no, std::string_view line) {
        json obj = parse_json_line(line_no, line);
        if (!obj.is_object()) {
            throw FormatError(line_no, "trace line must be a JSON object");
        }
        for (const auto& [key, _] : obj.items()) {
            if (key != "t" && key != "sensor" && key != "value") {
                throw FormatError(line_no, "unexpected field \"" + key + "\"");
            }
        }
        std::int64_t t = integer_field(line_no, obj, "t");
        if (t < 0) {
            throw FormatError(line_no, "field \"t\" must be >= 0");
        }
        std::string name = string_field(line_no, obj, "sensor");
        auto sensor = sensor_from_name(name);
        if (!sensor) {
            throw FormatError(line_no, "unknown sensor \"" + name + "\"");
        }
        auto value = obj.find("value");
        if (value == obj.end() || !value->is_number() || !std::isfinite(value->get<double>())) {
            throw FormatError(line_no, "field \"value\" must be a finite number");
        }
        rows.push_back(Row{*sensor, SensorSample{t, value->get<double>()}, line_no});
    });

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.sensor != b.sensor) {
            return a.sensor < b.sensor;
        }
        return a.sample.t_ms < b.sample.t_ms;
    });

    SensorTrace trace;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i - 1].sensor == rows[i].sensor && rows[i - 1].sample.t_ms == rows[i].sample.t_ms) {
            throw FormatError(std::max(rows[i - 1].line, rows[i].line),
                              "duplicate sample time " + std::to_string(rows[i].sample.t_ms) + " for sensor " +
                                  std::string(sensor_name(rows[i].sensor)));
        }
        trace.add(rows[i].sensor, rows[i].sample);
    }
    return trace;
}

std::vector<WifiNetwork> load_wifi_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("networks") || !doc["networks"].is_array()) {
        throw FormatError(1, "WiFi config must be an object with a \"networks\" array");
    }
    std::vector<WifiNetwork> networks;
    for (const json& entry : doc["networks"]) {
        if (!entry.is_object()) {
            throw FormatError(1, "each network must be an object");
        }
        networks.push_back(WifiNetwork{string_field(1, entry, "ssid"), string_field(1, entry, "password")});
    }
    return networks;
}

std::string_view event_type_name(EventType type) {
    switch (type) {
        case EventType::Actuator: return "actuator";
        case EventType::Console: return "console";
        case EventType::Call: return "call";
        case EventType::Sms: return "sms";
        case EventType::Wifi: return "wifi";
        case EventType::Http: return "http";
    }
    return "?";
}

namespace {

constexpr std::array<EventType, 6> kEventTypes{EventType::Actuator, EventType::Console, EventType::Call,
                                               EventType::Sms,      EventType::Wifi,    EventType::Http};

std::optional<EventType> event_type_from_name(std::string_view name) {
    for (EventType t : kEventTypes) {
        if (event_type_name(t) == name) {
            return t;
        }
    }
    return std::nullopt;
}

std::set<std::string> expected_fields(EventType type) {
    switch (type) {
        case EventType::Actuator: return {"component", "state"};
        case EventType::Console: return {"text"};
        case EventType::Call: return {"number"};
        case EventType::Sms: return {"body", "number"};
        case EventType::Wifi: return {"result", "ssid"};
        case EventType::Http: return {"body", "method", "result", "skipped", "status", "url"};
    }
    return {};
}

} // namespace

EventRecord EventRecord::actuator(std::int64_t t, ComponentId component, int state) {
    return {t, EventType::Actuator, {{"component", std::string(component_name(component))}, {"state", state}}};
}

EventRecord EventRecord::console(std::int64_t t, std::string text) {
    return {t, EventType::Console, {{"text", std::move(text)}}};
}

EventRecord EventRecord::call(std::int64_t t, std::string number) {
    return {t, EventType::Call, {{"number", std::move(number)}}};
}

EventRecord EventRecord::sms(std::int64_t t, std::string number, std::string body) {
    return {t, EventType::Sms, {{"body", std::move(body)}, {"number", std::move(number)}}};
}

EventRecord EventRecord::wifi(std::int64_t t, std::string ssid, int result) {
    return {t, EventType::Wifi, {{"result", result}, {"ssid", std::move(ssid)}}};
}

EventRecord EventRecord::http(std::int64_t t,
                              std::string method,
                              std::string url,
                              std::optional<std::string> body,
                              std::optional<int> status,
                              int result,
                              bool skipped) {
    EventRecord ev{t, EventType::Http, {}};
    ev.fields["body"] = body ? json(*body) : json(nullptr);
    ev.fields["method"] = std::move(method);
    ev.fields["result"] = result;
    ev.fields["skipped"] = skipped;
    ev.fields["status"] = status ? json(*status) : json(nullptr);
    ev.fields["url"] = std::move(url);
    return ev;
}

std::string serialize_event(const EventRecord& event) {
    ordered_json line;
    line["t"] = event.t_ms;
    line["type"] = event_type_name(event.type);
    for (const auto& [key, value] : event.fields) {
        line[key] = value;
    }
    return line.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

std::string serialize_events(const std::vector<EventRecord>& events) {
    std::string out;
    for (const auto& ev : events) {
        out += serialize_event(ev);
        out += '\n';
    }
    return out;
}

std::vector<EventRecord> parse_events(std::string_view jsonl) {
    std::vector<EventRecord> events;
    for_each_line(jsonl, [&](int line_no, std::string_view line) {
        json obj = parse_json_line(line_no, line);
        if (!obj.is_object()) {
            throw FormatError(line_no, "event must be a JSON object");
        }
        EventRecord ev;
        ev.t_ms = integer_field(line_no, obj, "t");
        std::string type_name = string_field(line_no, obj, "type");
        auto type = event_type_from_name(type_name);
        if (!type) {
            throw FormatError(line_no, "unknown event type \"" + type_name + "\"");
        }
        ev.type = *type;
        std::set<std::string> seen;
        for (const auto& [key, value] : obj.items()) {
            if (key == "t" || key == "type") {
                continue;
            }
            seen.insert(key);
            ev.fields[key] = value;
        }
        if (seen != expected_fields(ev.type)) {
            throw FormatError(line_no, "wrong field set for " + type_name + " event");
        }
        events.push_back(std::move(ev));
    });
    return events;
}

DeviceState::DeviceState(SensorTrace trace, std::vector<WifiNetwork> known_networks)
    : trace_(std::move(trace)), known_networks_(std::move(known_networks)) {}

void DeviceState::advance_clock(std::int64_t ms) {
    if (ms < 0) {
        throw std::invalid_argument("clock cannot move backwards");
    }
    if (time_limit_ms_ && now_ms_ + ms > *time_limit_ms_) {
        throw RuntimeError(ErrorKind::BudgetExceeded, 0,
                           "virtual time budget of " + std::to_string(*time_limit_ms_) + " ms exceeded");
    }
    now_ms_ += ms;
}

double DeviceState::read_sensor(SensorId sensor) const {
    const auto& samples = trace_.channel(sensor);
    auto it = std::upper_bound(samples.begin(), samples.end(), now_ms_,
                               [](std::int64_t t, const SensorSample& s) { return t < s.t_ms; });
    if (it == samples.begin()) {
        return 0.0;
    }
    return std::prev(it)->value;
}

int DeviceState::actuator_state(ComponentId component) const {
    auto it = actuators_.find(component);
    return it == actuators_.end() ? 0 : it->second;
}

void DeviceState::set_actuator(ComponentId component, int state) {
    actuators_[component] = state;
}

bool DeviceState::connect_wifi(const std::string& ssid, const std::string& password) {
    bool known = std::any_of(known_networks_.begin(), known_networks_.end(), [&](const WifiNetwork& n) {
        return n.ssid == ssid && n.password == password;
    });
    if (known) {
        connected_ssid_ = ssid;
    }
    return known;
}

void DeviceState::emit(EventRecord record) {
    if (record.t_ms != now_ms_) {
        throw std::logic_error("event timestamp " + std::to_string(record.t_ms) +
                               " does not match virtual time " + std::to_string(now_ms_));
    }
    events_.push_back(std::move(record));
}

} // namespace origin
