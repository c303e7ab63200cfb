#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "origin/value.h"

namespace origin {

struct SensorSample {
    std::int64_t t_ms = 0;
    double value = 0.0;

    bool operator==(const SensorSample&) const = default;
};

/// Per-sensor sample lists, each strictly increasing in time.
class SensorTrace {
public:
    /// Appends a sample; throws std::invalid_argument unless t_ms is
    /// strictly greater than the channel's last sample.
    void add(SensorId sensor, SensorSample sample);

    const std::vector<SensorSample>& channel(SensorId sensor) const;
    std::size_t size() const;

    bool operator==(const SensorTrace&) const = default;

private:
    std::map<SensorId, std::vector<SensorSample>> channels_;
};

struct WifiNetwork {
    std::string ssid;
    std::string password;

    bool operator==(const WifiNetwork&) const = default;
};

/// JSONL, one `{"t": <int ms>, "sensor": "<name>", "value": <number>}` per
/// line. Blank lines are skipped. Throws FormatError.
SensorTrace load_trace(std::string_view text);

/// `{"networks": [{"ssid": "...", "password": "..."}]}`. Throws FormatError.
std::vector<WifiNetwork> load_wifi_config(std::string_view text);

enum class EventType { Actuator, Console, Call, Sms, Wifi, Http };

std::string_view event_type_name(EventType type);

/// One externally visible effect. Payload field names are fixed per type:
///   actuator: component, state
///   console:  text
///   call:     number
///   sms:      body, number
///   wifi:     result, ssid
///   http:     body, method, result, skipped, status, url
struct EventRecord {
    std::int64_t t_ms = 0;
    EventType type = EventType::Console;
    std::map<std::string, nlohmann::json> fields;  // ordered alphabetically

    static EventRecord actuator(std::int64_t t, ComponentId component, int state);
    static EventRecord console(std::int64_t t, std::string text);
    static EventRecord call(std::int64_t t, std::string number);
    static EventRecord sms(std::int64_t t, std::string number, std::string body);
    static EventRecord wifi(std::int64_t t, std::string ssid, int result);
    static EventRecord http(std::int64_t t,
                            std::string method,
                            std::string url,
                            std::optional<std::string> body,
                            std::optional<int> status,
                            int result,
                            bool skipped);

    bool operator==(const EventRecord&) const = default;
};

/// `{"t":..,"type":..,<payload fields alphabetically>}` with no newline.
std::string serialize_event(const EventRecord& event);

/// JSONL: one line per event, each terminated by '\n'.
std::string serialize_events(const std::vector<EventRecord>& events);

/// Inverse of serialize_events. Throws FormatError.
std::vector<EventRecord> parse_events(std::string_view jsonl);

/// The simulated handset: clock, sensors, actuators, WiFi and event log.
class DeviceState {
public:
    DeviceState() = default;
    explicit DeviceState(SensorTrace trace, std::vector<WifiNetwork> known_networks = {});

    std::int64_t now() const { return now_ms_; }

    /// Throws RuntimeError(BudgetExceeded) without moving the clock when the
    /// time limit would be passed.
    void advance_clock(std::int64_t ms);
    void set_time_limit(std::optional<std::int64_t> max_ms) { time_limit_ms_ = max_ms; }
    std::optional<std::int64_t> time_limit() const { return time_limit_ms_; }

    /// Sample-and-hold: latest sample with t <= now, else 0.0.
    double read_sensor(SensorId sensor) const;

    int actuator_state(ComponentId component) const;
    void set_actuator(ComponentId component, int state);

    const std::vector<WifiNetwork>& known_networks() const { return known_networks_; }
    const std::optional<std::string>& connected_ssid() const { return connected_ssid_; }
    /// Connects iff (ssid, password) is a known network; otherwise the
    /// current connection is left as it was.
    bool connect_wifi(const std::string& ssid, const std::string& password);

    /// Appends to the log. The record must carry the current virtual time;
    /// anything else throws std::logic_error.
    void emit(EventRecord record);
    const std::vector<EventRecord>& events() const { return events_; }

    const SensorTrace& trace() const { return trace_; }

private:
    std::int64_t now_ms_ = 0;
    std::optional<std::int64_t> time_limit_ms_;
    SensorTrace trace_;
    std::map<ComponentId, int> actuators_;
    std::vector<WifiNetwork> known_networks_;
    std::optional<std::string> connected_ssid_;
    std::vector<EventRecord> events_;
};

} // namespace origin
