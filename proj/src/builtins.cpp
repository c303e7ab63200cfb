#include "origin/builtins.h"

#include <cctype>
#include <cmath>
#include <utility>

#include "origin/error.h"

namespace origin {

std::string Arity::describe() const {
    if (even_only) {
        return "an even number of";
    }
    if (min == max) {
        return std::to_string(min);
    }
    return std::to_string(min) + " or " + std::to_string(max);
}

namespace {

[[noreturn]] void type_error(std::string message) {
    throw RuntimeError(ErrorKind::TypeError, 0, std::move(message));
}

std::string what_is(const Value& v) {
    if (v.is_component()) {
        return std::string(component_name(v.as_component())) + " is an actuator";
    }
    if (v.is_sensor()) {
        return std::string(sensor_name(v.as_sensor())) + " is a sensor";
    }
    return "got " + std::string(v.type_name());
}

const std::string& text_arg(std::string_view fn, std::string_view role, const Value& v) {
    if (!v.is_text()) {
        type_error(std::string(fn) + ": " + std::string(role) + " must be text (" + what_is(v) + ")");
    }
    return v.as_text();
}

Value builtin_input(BuiltinContext& ctx, std::span<const Value> args) {
    const Value& sensor = args[0];
    if (!sensor.is_sensor()) {
        type_error("input: expected a sensor keyword (" + what_is(sensor) + ")");
    }
    return Value(ctx.device.read_sensor(sensor.as_sensor()));
}

Value builtin_output(BuiltinContext& ctx, std::span<const Value> args) {
    if (args.size() == 2) {
        if (!args[0].is_component()) {
            type_error("output: first argument must be an output component such as led or speaker (" +
                       what_is(args[0]) + ")");
        }
        if (!args[1].is_number()) {
            type_error("output: state must be a number such as HIGH or LOW (" + what_is(args[1]) + ")");
        }
        const ComponentId component = args[0].as_component();
        const int state = args[1].as_number() != 0.0 ? 1 : 0;
        ctx.device.set_actuator(component, state);
        ctx.device.emit(EventRecord::actuator(ctx.device.now(), component, state));
        return Value();
    }
    const Value& message = args[0];
    if (!message.is_text() && !message.is_number()) {
        type_error("output: expected text or a number (" + what_is(message) + ")");
    }
    std::string text = display(message);
    ctx.device.emit(EventRecord::console(ctx.device.now(), text));
    if (ctx.console) {
        ctx.console(text);
    }
    return Value();
}

Value builtin_wait(BuiltinContext& ctx, std::span<const Value> args) {
    const Value& ms = args[0];
    if (!ms.is_number()) {
        type_error("wait: expected a number of milliseconds (" + what_is(ms) + ")");
    }
    double n = ms.as_number();
    if (!(n >= 0.0)) {
        type_error("wait: duration must not be negative");
    }
    if (n >= 9.0e18) {
        type_error("wait: duration is too large");
    }
    const auto whole = static_cast<std::int64_t>(std::floor(n));
    ctx.device.advance_clock(whole);
    if (ctx.sleep && whole > 0) {
        ctx.sleep(whole);
    }
    return Value();
}

Value builtin_call(BuiltinContext& ctx, std::span<const Value> args) {
    const std::string& number = text_arg("call", "phone number", args[0]);
    ctx.device.emit(EventRecord::call(ctx.device.now(), number));
    return Value(1);
}

Value builtin_message(BuiltinContext& ctx, std::span<const Value> args) {
    const std::string& number = text_arg("message", "phone number", args[0]);
    const std::string& body = text_arg("message", "message body", args[1]);
    ctx.device.emit(EventRecord::sms(ctx.device.now(), number, body));
    return Value(1);
}

Value builtin_wifi_connect(BuiltinContext& ctx, std::span<const Value> args) {
    const std::string& ssid = text_arg("wifiConnect", "ssid", args[0]);
    const std::string& password = text_arg("wifiConnect", "password", args[1]);
    const int result = ctx.device.connect_wifi(ssid, password) ? 1 : 0;
    ctx.device.emit(EventRecord::wifi(ctx.device.now(), ssid, result));
    return Value(result);
}

void require_json_value(std::string_view fn, const Value& v) {
    if (!is_json_compatible(v)) {
        type_error(std::string(fn) + ": JSON values must be text, numbers, arrays or JSON objects (" +
                   what_is(v) + ")");
    }
}

Value builtin_json(BuiltinContext&, std::span<const Value> args) {
    auto obj = std::make_shared<JsonObject>();
    for (std::size_t i = 0; i < args.size(); i += 2) {
        const std::string& key = text_arg("json", "key", args[i]);
        require_json_value("json", args[i + 1]);
        obj->set(key, deep_copy(args[i + 1]));
    }
    return Value(std::move(obj));
}

Value builtin_add_json_element(BuiltinContext&, std::span<const Value> args) {
    if (!args[0].is_json()) {
        type_error("addJsonElement: first argument must be a JSON object (" + what_is(args[0]) + ")");
    }
    const std::string& key = text_arg("addJsonElement", "key", args[1]);
    require_json_value("addJsonElement", args[2]);
    args[0].as_json()->set(key, deep_copy(args[2]));
    return Value();
}

Value builtin_request(BuiltinContext&, std::span<const Value> args) {
    const std::string& url = text_arg("request", "url", args[0]);
    if (url.rfind("http://", 0) != 0 && url.rfind("https://", 0) != 0) {
        type_error("request: url must start with http:// or https://");
    }
    auto req = std::make_shared<Request>();
    req->url = url;
    return Value(std::move(req));
}

Value builtin_add_json(BuiltinContext&, std::span<const Value> args) {
    if (!args[0].is_request()) {
        type_error("addJson: first argument must be a request (" + what_is(args[0]) + ")");
    }
    if (!args[1].is_json()) {
        type_error("addJson: second argument must be a JSON object (" + what_is(args[1]) + ")");
    }
    args[0].as_request()->body = deep_copy(args[1]).as_json();
    return Value();
}

BuiltinHandler http_builtin(HttpMethod method) {
    return [method](BuiltinContext& ctx, std::span<const Value> args) -> Value {
        std::string fn(http_method_name(method));
        for (char& c : fn) {
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        if (!args[0].is_request()) {
            type_error(fn + ": expected a request (" + what_is(args[0]) + ")");
        }
        const Request& req = *args[0].as_request();
        std::optional<std::string> body;
        if (req.body) {
            body = to_json_text(Value(req.body));
        }
        const std::string method_name(http_method_name(method));

        if (!ctx.device.connected_ssid()) {
            ctx.device.emit(EventRecord::http(ctx.device.now(), method_name, req.url, body, std::nullopt, 0, true));
            return Value(0);
        }
        TransportResponse resp = ctx.transport.execute(TransportRequest{method, req.url, body});
        const int result = resp.status >= 200 && resp.status <= 299 ? 1 : 0;
        ctx.device.emit(EventRecord::http(ctx.device.now(), method_name, req.url, body, resp.status, result, false));
        return Value(result);
    };
}

} // namespace

void BuiltinRegistry::add(std::string name, Arity arity, BuiltinHandler handler) {
    Builtin b{name, arity, std::move(handler)};
    builtins_.insert_or_assign(std::move(name), std::move(b));
}

const Builtin* BuiltinRegistry::find(std::string_view name) const {
    auto it = builtins_.find(name);
    return it == builtins_.end() ? nullptr : &it->second;
}

std::vector<std::string> BuiltinRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : builtins_) {
        out.push_back(name);
    }
    return out;
}

Value BuiltinRegistry::invoke(std::string_view name, BuiltinContext& ctx, std::span<const Value> args) const {
    const Builtin* b = find(name);
    if (b == nullptr) {
        throw RuntimeError(ErrorKind::NameError, 0, "unknown function '" + std::string(name) + "'");
    }
    if (!b->arity.accepts(args.size())) {
        throw RuntimeError(ErrorKind::ArityError, 0,
                           b->name + " takes " + b->arity.describe() + " argument(s), got " +
                               std::to_string(args.size()));
    }
    return b->handler(ctx, args);
}

BuiltinRegistry BuiltinRegistry::standard() {
    BuiltinRegistry r;
    r.add("input", Arity::exactly(1), builtin_input);
    r.add("output", Arity::between(1, 2), builtin_output);
    r.add("wait", Arity::exactly(1), builtin_wait);
    r.add("call", Arity::exactly(1), builtin_call);
    r.add("message", Arity::exactly(2), builtin_message);
    r.add("wifiConnect", Arity::exactly(2), builtin_wifi_connect);
    r.add("json", Arity::even(), builtin_json);
    r.add("addJsonElement", Arity::exactly(3), builtin_add_json_element);
    r.add("request", Arity::exactly(1), builtin_request);
    r.add("addJson", Arity::exactly(2), builtin_add_json);
    r.add("get", Arity::exactly(1), http_builtin(HttpMethod::Get));
    r.add("post", Arity::exactly(1), http_builtin(HttpMethod::Post));
    r.add("put", Arity::exactly(1), http_builtin(HttpMethod::Put));
    r.add("delete", Arity::exactly(1), http_builtin(HttpMethod::Delete));
    return r;
}

} // namespace origin
