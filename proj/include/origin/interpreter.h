#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "origin/ast.h"
#include "origin/builtins.h"
#include "origin/device.h"
#include "origin/error.h"
#include "origin/net.h"
#include "origin/value.h"

namespace origin {

struct ExecutionBudget {
    std::uint64_t max_statements = 1'000'000;
    std::optional<std::int64_t> max_virtual_ms;
};

/// Scope chain. The outermost scope holds the read-only keywords (led,
/// speaker, the sensors, HIGH, LOW) alongside user globals.
class Environment {
public:
    Environment();

    void push_scope();
    void pop_scope();
    std::size_t depth() const { return scopes_.size(); }

    /// NameError when `name` already exists in the innermost scope.
    void declare(const std::string& name, Value value);
    /// NameError when undeclared or a keyword.
    void assign(const std::string& name, Value value);
    /// NameError when undeclared.
    const Value& lookup(const std::string& name) const;

    Value* find(std::string_view name);
    const Value* find(std::string_view name) const;
    static bool is_keyword(std::string_view name);

    /// User-declared globals in declaration order (keywords excluded).
    std::vector<std::pair<std::string, Value>> user_globals() const;

private:
    using Scope = std::vector<std::pair<std::string, Value>>;
    std::vector<Scope> scopes_;
};

/// RAII push/pop of one block scope.
class ScopeGuard {
public:
    explicit ScopeGuard(Environment& env) : env_(env) { env_.push_scope(); }
    ~ScopeGuard() { env_.pop_scope(); }
    ScopeGuard(const ScopeGuard&) = delete;
    ScopeGuard& operator=(const ScopeGuard&) = delete;

private:
    Environment& env_;
};

/// Number n -> n != 0. Anything else is a TypeError (line 0).
bool truthiness(const Value& value);

/// Number/Text by content, keywords by identity, Null only equals Null,
/// mismatched kinds are unequal. Arrays, objects and requests throw
/// TypeError (line 0).
bool values_equal(const Value& a, const Value& b);

struct RunHooks {
    std::function<void(const std::string&)> console;
    std::function<void(std::int64_t)> sleep;
};

class Interpreter {
public:
    Interpreter(DeviceState& device,
                Transport& transport,
                const BuiltinRegistry& registry,
                ExecutionBudget budget = {},
                RunHooks hooks = {});

    /// Runs every statement in the global scope. Throws RuntimeError.
    void execute(const Program& program);

    /// Runs one top-level statement; for an expression statement returns the
    /// value it produced.
    std::optional<Value> execute_statement(const Stmt& stmt);

    Value evaluate(const Expr& expr);

    /// Restarts the statement count (the REPL charges each input separately).
    void reset_budget(ExecutionBudget budget);

    const Environment& environment() const { return env_; }
    std::uint64_t statements_executed() const { return executed_; }

private:
    std::optional<Value> exec(const Stmt& stmt);
    void exec_block(const Block& block);
    void exec_var(const VarDecl& decl, int line);
    void exec_assign(const Assign& assign, int line);
    void exec_if(const If& node);
    void exec_loop(const Loop& node);
    void charge(int line);

    Value eval_binary(const Binary& bin, int line);
    Value eval_unary(const Unary& un, int line);
    Value eval_call(const Call& call, int line);
    Value eval_index(const Index& idx, int line);
    bool condition(const Expr& expr);
    double number_operand(const Expr& expr, const Value& v, std::string_view what);

    DeviceState& device_;
    const BuiltinRegistry& registry_;
    BuiltinContext ctx_;
    ExecutionBudget budget_;
    Environment env_;
    std::uint64_t executed_ = 0;
};

struct RunOutcome {
    std::vector<EventRecord> events;
    std::vector<std::pair<std::string, Value>> final_env;
    std::int64_t final_time_ms = 0;
    std::uint64_t statements_executed = 0;
    std::optional<RuntimeError> error;

    bool ok() const { return !error.has_value(); }
    const Value* binding(std::string_view name) const;
};

/// Executes a parsed program against the device. Events emitted before a
/// runtime error are kept in the outcome.
RunOutcome run(const Program& program,
               DeviceState& device,
               const BuiltinRegistry& registry,
               Transport& transport,
               ExecutionBudget budget = {},
               RunHooks hooks = {});

} // namespace origin
