#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace origin {

enum class ComponentId { Led, Speaker };

enum class SensorId {
    AccelerometerX,
    AccelerometerY,
    AccelerometerZ,
    GyroscopeX,
    GyroscopeY,
    GyroscopeZ,
    Proximity,
    Pressure,
    Humidity,
    Light,
};

inline constexpr ComponentId kAllComponents[] = {ComponentId::Led, ComponentId::Speaker};
inline constexpr SensorId kAllSensors[] = {
    SensorId::AccelerometerX, SensorId::AccelerometerY, SensorId::AccelerometerZ,
    SensorId::GyroscopeX,     SensorId::GyroscopeY,     SensorId::GyroscopeZ,
    SensorId::Proximity,      SensorId::Pressure,       SensorId::Humidity,
    SensorId::Light,
};

std::string_view component_name(ComponentId id);
std::string_view sensor_name(SensorId id);
std::optional<ComponentId> component_from_name(std::string_view name);
std::optional<SensorId> sensor_from_name(std::string_view name);

class Value;
struct JsonObject;
struct Request;

using Array = std::vector<Value>;
using ArrayRef = std::shared_ptr<Array>;
using JsonRef = std::shared_ptr<JsonObject>;
using RequestRef = std::shared_ptr<Request>;

struct Null {
    bool operator==(const Null&) const = default;
};

/// Dynamic Origin value. Arrays, JSON objects and requests are reference
/// types: copies of a Value alias the same underlying object.
class Value {
public:
    using Storage = std::variant<Null, double, std::string, ArrayRef, JsonRef, RequestRef, ComponentId, SensorId>;

    Value() = default;
    Value(Null) {}
    Value(double n) : storage_(n) {}
    Value(int n) : storage_(static_cast<double>(n)) {}
    Value(std::string s) : storage_(std::move(s)) {}
    Value(const char* s) : storage_(std::string(s)) {}
    Value(ArrayRef a) : storage_(std::move(a)) {}
    Value(JsonRef j) : storage_(std::move(j)) {}
    Value(RequestRef r) : storage_(std::move(r)) {}
    Value(ComponentId c) : storage_(c) {}
    Value(SensorId s) : storage_(s) {}

    static Value array(Array items = {});
    static Value json();

    const Storage& storage() const { return storage_; }

    bool is_null() const { return std::holds_alternative<Null>(storage_); }
    bool is_number() const { return std::holds_alternative<double>(storage_); }
    bool is_text() const { return std::holds_alternative<std::string>(storage_); }
    bool is_array() const { return std::holds_alternative<ArrayRef>(storage_); }
    bool is_json() const { return std::holds_alternative<JsonRef>(storage_); }
    bool is_request() const { return std::holds_alternative<RequestRef>(storage_); }
    bool is_component() const { return std::holds_alternative<ComponentId>(storage_); }
    bool is_sensor() const { return std::holds_alternative<SensorId>(storage_); }

    double as_number() const { return std::get<double>(storage_); }
    const std::string& as_text() const { return std::get<std::string>(storage_); }
    const ArrayRef& as_array() const { return std::get<ArrayRef>(storage_); }
    const JsonRef& as_json() const { return std::get<JsonRef>(storage_); }
    const RequestRef& as_request() const { return std::get<RequestRef>(storage_); }
    ComponentId as_component() const { return std::get<ComponentId>(storage_); }
    SensorId as_sensor() const { return std::get<SensorId>(storage_); }

    std::string_view type_name() const;

private:
    Storage storage_;
};

/// Insertion-ordered object. Setting an existing key replaces the value in
/// place, so the key keeps its first position.
struct JsonObject {
    std::vector<std::pair<std::string, Value>> entries;

    void set(const std::string& key, Value value);
    const Value* find(std::string_view key) const;
};

struct Request {
    std::string url;
    JsonRef body;  // null until addJson
};

/// Number display: integral values print without a fractional part
/// (2.0 -> "2"), others in shortest round-trip form.
std::string format_number(double n);

/// Human-readable form used by output() and Text concatenation.
std::string display(const Value& value);

/// True when the value may be stored inside a JSON object (Text, Number,
/// Json, or Array thereof, acyclic).
bool is_json_compatible(const Value& value);

/// Deep copy of a JSON-compatible value; arrays and objects are cloned.
Value deep_copy(const Value& value);

/// Compact JSON text: no insignificant whitespace, keys in insertion order,
/// integral numbers without ".0". Non-finite numbers serialize as null.
std::string to_json_text(const Value& value);

} // namespace origin
