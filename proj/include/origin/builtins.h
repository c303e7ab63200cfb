#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "origin/device.h"
#include "origin/net.h"
#include "origin/value.h"

namespace origin {

/// What a builtin may touch while it runs.
struct BuiltinContext {
    DeviceState& device;
    Transport& transport;
    std::function<void(const std::string&)> console;  // echo for output(text)
    std::function<void(std::int64_t)> sleep;          // realtime wait(), optional
};

/// Accepted argument counts: [min, max], optionally restricted to even counts.
struct Arity {
    std::size_t min = 0;
    std::size_t max = 0;
    bool even_only = false;

    static Arity exactly(std::size_t n) { return {n, n, false}; }
    static Arity between(std::size_t lo, std::size_t hi) { return {lo, hi, false}; }
    static Arity even() { return {0, SIZE_MAX, true}; }

    bool accepts(std::size_t n) const { return n >= min && n <= max && (!even_only || n % 2 == 0); }
    std::string describe() const;
};

using BuiltinHandler = std::function<Value(BuiltinContext&, std::span<const Value>)>;

struct Builtin {
    std::string name;
    Arity arity;
    BuiltinHandler handler;
};

class BuiltinRegistry {
public:
    /// input, output, wait, call, message, wifiConnect, json, addJsonElement,
    /// request, addJson, get, post, put, delete.
    static BuiltinRegistry standard();

    void add(std::string name, Arity arity, BuiltinHandler handler);
    const Builtin* find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name) != nullptr; }
    std::vector<std::string> names() const;

    /// Checks arity (ArityError naming the builtin) then runs the handler.
    /// Errors are raised with line 0; the caller attributes the line.
    Value invoke(std::string_view name, BuiltinContext& ctx, std::span<const Value> args) const;

private:
    std::map<std::string, Builtin, std::less<>> builtins_;
};

} // namespace origin
