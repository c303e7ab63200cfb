#include "origin/interpreter.h"

#include <algorithm>
#include <cmath>

namespace origin {

namespace {

[[noreturn]] void fail(ErrorKind kind, int line, std::string message) {
    throw RuntimeError(kind, line, std::move(message));
}

std::vector<std::pair<std::string, Value>> keyword_bindings() {
    std::vector<std::pair<std::string, Value>> out;
    for (ComponentId c : kAllComponents) {
        out.emplace_back(std::string(component_name(c)), Value(c));
    }
    for (SensorId s : kAllSensors) {
        out.emplace_back(std::string(sensor_name(s)), Value(s));
    }
    out.emplace_back("HIGH", Value(1));
    out.emplace_back("LOW", Value(0));
    return out;
}

} // namespace

Environment::Environment() {
    scopes_.push_back(keyword_bindings());
}

bool Environment::is_keyword(std::string_view name) {
    return name == "HIGH" || name == "LOW" || component_from_name(name).has_value() ||
           sensor_from_name(name).has_value();
}

void Environment::push_scope() {
    scopes_.emplace_back();
}

void Environment::pop_scope() {
    if (scopes_.size() > 1) {
        scopes_.pop_back();
    }
}

void Environment::declare(const std::string& name, Value value) {
    Scope& scope = scopes_.back();
    auto it = std::find_if(scope.begin(), scope.end(), [&](const auto& kv) { return kv.first == name; });
    if (it != scope.end()) {
        if (scopes_.size() == 1 && is_keyword(name)) {
            fail(ErrorKind::NameError, 0, "'" + name + "' is a keyword and cannot be redeclared");
        }
        fail(ErrorKind::NameError, 0, "variable '" + name + "' is already declared in this scope");
    }
    scope.emplace_back(name, std::move(value));
}

Value* Environment::find(std::string_view name) {
    for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope) {
        for (auto& [k, v] : *scope) {
            if (k == name) {
                return &v;
            }
        }
    }
    return nullptr;
}

const Value* Environment::find(std::string_view name) const {
    return const_cast<Environment*>(this)->find(name);
}

void Environment::assign(const std::string& name, Value value) {
    Value* slot = find(name);
    if (slot == nullptr) {
        fail(ErrorKind::NameError, 0, "assignment to undeclared variable '" + name + "' (declare it with var)");
    }
    // A keyword can be shadowed by an inner var; only the global binding is fixed.
    const Scope& globals = scopes_.front();
    for (const auto& kv : globals) {
        if (&kv.second == slot && is_keyword(name)) {
            fail(ErrorKind::NameError, 0, "cannot assign to keyword '" + name + "'");
        }
    }
    *slot = std::move(value);
}

const Value& Environment::lookup(const std::string& name) const {
    const Value* v = find(name);
    if (v == nullptr) {
        fail(ErrorKind::NameError, 0, "undefined variable '" + name + "'");
    }
    return *v;
}

std::vector<std::pair<std::string, Value>> Environment::user_globals() const {
    std::vector<std::pair<std::string, Value>> out;
    for (const auto& kv : scopes_.front()) {
        if (!is_keyword(kv.first)) {
            out.push_back(kv);
        }
    }
    return out;
}

bool truthiness(const Value& value) {
    if (!value.is_number()) {
        fail(ErrorKind::TypeError, 0,
             "condition must be a number, got " + std::string(value.type_name()) + " (compare it explicitly)");
    }
    return value.as_number() != 0.0;
}

bool values_equal(const Value& a, const Value& b) {
    auto by_reference = [](const Value& v) { return v.is_array() || v.is_json() || v.is_request(); };
    if (by_reference(a) || by_reference(b)) {
        const Value& bad = by_reference(a) ? a : b;
        fail(ErrorKind::TypeError, 0, "cannot compare " + std::string(bad.type_name()) + " values");
    }
    if (a.storage().index() != b.storage().index()) {
        return false;
    }
    return a.storage() == b.storage();
}

Interpreter::Interpreter(DeviceState& device,
                         Transport& transport,
                         const BuiltinRegistry& registry,
                         ExecutionBudget budget,
                         RunHooks hooks)
    : device_(device),
      registry_(registry),
      ctx_{device, transport, std::move(hooks.console), std::move(hooks.sleep)},
      budget_(budget) {
    device_.set_time_limit(budget_.max_virtual_ms);
}

void Interpreter::reset_budget(ExecutionBudget budget) {
    budget_ = budget;
    executed_ = 0;
    device_.set_time_limit(budget_.max_virtual_ms);
}

void Interpreter::execute(const Program& program) {
    for (const auto& stmt : program.statements) {
        exec(*stmt);
    }
}

std::optional<Value> Interpreter::execute_statement(const Stmt& stmt) {
    return exec(stmt);
}

void Interpreter::charge(int line) {
    if (executed_ >= budget_.max_statements) {
        fail(ErrorKind::BudgetExceeded, line,
             "statement budget of " + std::to_string(budget_.max_statements) + " exhausted");
    }
    ++executed_;
}

std::optional<Value> Interpreter::exec(const Stmt& stmt) {
    charge(stmt.line);
    try {
        return std::visit(
            [&](const auto& node) -> std::optional<Value> {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, VarDecl>) {
                    exec_var(node, stmt.line);
                } else if constexpr (std::is_same_v<T, Assign>) {
                    exec_assign(node, stmt.line);
                } else if constexpr (std::is_same_v<T, If>) {
                    exec_if(node);
                } else if constexpr (std::is_same_v<T, Loop>) {
                    exec_loop(node);
                } else if constexpr (std::is_same_v<T, ExprStmt>) {
                    return evaluate(*node.expr);
                }
                return std::nullopt;
            },
            stmt.node);
    } catch (const RuntimeError& e) {
        if (e.line() == 0) {
            throw e.with_line(stmt.line);
        }
        throw;
    }
}

void Interpreter::exec_block(const Block& block) {
    ScopeGuard scope(env_);
    for (const auto& stmt : block.statements) {
        exec(*stmt);
    }
}

void Interpreter::exec_var(const VarDecl& decl, int line) {
    if (registry_.contains(decl.name)) {
        fail(ErrorKind::NameError, line, "'" + decl.name + "' is a builtin function and cannot be redeclared");
    }
    Value value = decl.initializer ? evaluate(*decl.initializer) : Value();
    env_.declare(decl.name, std::move(value));
}

namespace {

std::size_t checked_index(const Value& container, const Value& index) {
    if (!container.is_array()) {
        fail(ErrorKind::TypeError, 0, "cannot index a " + std::string(container.type_name()) + " value");
    }
    if (!index.is_number()) {
        fail(ErrorKind::TypeError, 0, "array index must be a number, got " + std::string(index.type_name()));
    }
    const double i = index.as_number();
    const std::size_t size = container.as_array()->size();
    if (i != std::floor(i)) {
        fail(ErrorKind::IndexError, 0, "array index " + format_number(i) + " is not an integer");
    }
    if (i < 0 || i >= static_cast<double>(size)) {
        fail(ErrorKind::IndexError, 0,
             "array index " + format_number(i) + " out of range for array of length " + std::to_string(size));
    }
    return static_cast<std::size_t>(i);
}

} // namespace

void Interpreter::exec_assign(const Assign& assign, int line) {
    if (const auto* ident = std::get_if<Ident>(&assign.target->node)) {
        Value value = evaluate(*assign.value);
        env_.assign(ident->name, std::move(value));
        return;
    }
    const auto& idx = std::get<Index>(assign.target->node);
    Value container = evaluate(*idx.array);
    Value index = evaluate(*idx.index);
    Value value = evaluate(*assign.value);
    try {
        std::size_t i = checked_index(container, index);
        (*container.as_array())[i] = std::move(value);
    } catch (const RuntimeError& e) {
        throw e.with_line(assign.target->line ? assign.target->line : line);
    }
}

void Interpreter::exec_if(const If& node) {
    if (condition(*node.condition)) {
        exec_block(node.then_block);
        return;
    }
    if (const auto* blk = std::get_if<Block>(&node.else_branch)) {
        exec_block(*blk);
    } else if (const auto* nested = std::get_if<StmtPtr>(&node.else_branch)) {
        // An else-if link is part of the same statement; it is not charged again.
        exec_if(std::get<If>((*nested)->node));
    }
}

void Interpreter::exec_loop(const Loop& node) {
    std::visit(
        [&](const auto& header) {
            using T = std::decay_t<decltype(header)>;
            if constexpr (std::is_same_v<T, InfiniteHeader>) {
                while (true) {
                    exec_block(node.body);
                }
            } else if constexpr (std::is_same_v<T, ConditionalHeader>) {
                while (condition(*header.condition)) {
                    exec_block(node.body);
                }
            } else if constexpr (std::is_same_v<T, CountHeader>) {
                // Evaluated once: the body cannot change the iteration count.
                Value count = evaluate(*header.count);
                const double n = std::floor(number_operand(*header.count, count, "loop count"));
                for (double k = 0; k < n; k += 1.0) {
                    exec_block(node.body);
                }
            } else if constexpr (std::is_same_v<T, ForEachHeader>) {
                Value iterable = evaluate(*header.iterable);
                if (!iterable.is_array()) {
                    fail(ErrorKind::TypeError, header.iterable->line,
                         "loop(" + header.variable + " in ...) needs an array, got " +
                             std::string(iterable.type_name()));
                }
                ArrayRef items = iterable.as_array();
                const std::string& var = header.variable;
                const bool write_through = env_.find(var) != nullptr;
                if (!write_through && registry_.contains(var)) {
                    fail(ErrorKind::NameError, header.iterable->line,
                         "'" + var + "' is a builtin function and cannot be a loop variable");
                }
                ScopeGuard loop_scope(env_);
                if (!write_through) {
                    env_.declare(var, Value());
                }
                for (std::size_t i = 0; i < items->size(); ++i) {
                    env_.assign(var, (*items)[i]);
                    exec_block(node.body);
                }
            }
        },
        node.header);
}

bool Interpreter::condition(const Expr& expr) {
    Value v = evaluate(expr);
    if (v.is_null()) {
        if (const auto* id = std::get_if<Ident>(&expr.node)) {
            fail(ErrorKind::TypeError, expr.line,
                 "variable '" + id->name + "' has no value (declared without an initializer)");
        }
    }
    try {
        return truthiness(v);
    } catch (const RuntimeError& e) {
        throw e.with_line(expr.line);
    }
}

double Interpreter::number_operand(const Expr& expr, const Value& v, std::string_view what) {
    if (v.is_number()) {
        return v.as_number();
    }
    if (v.is_null()) {
        if (const auto* id = std::get_if<Ident>(&expr.node)) {
            fail(ErrorKind::TypeError, expr.line,
                 "variable '" + id->name + "' has no value (declared without an initializer)");
        }
    }
    fail(ErrorKind::TypeError, expr.line,
         std::string(what) + " expects a number, got " + std::string(v.type_name()));
}

Value Interpreter::evaluate(const Expr& expr) {
    try {
        return std::visit(
            [&](const auto& node) -> Value {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, NumberLit>) {
                    return Value(node.value);
                } else if constexpr (std::is_same_v<T, StringLit>) {
                    return Value(node.value);
                } else if constexpr (std::is_same_v<T, ArrayLit>) {
                    Array items;
                    items.reserve(node.elements.size());
                    for (const auto& e : node.elements) {
                        items.push_back(evaluate(*e));
                    }
                    return Value::array(std::move(items));
                } else if constexpr (std::is_same_v<T, Ident>) {
                    return env_.lookup(node.name);
                } else if constexpr (std::is_same_v<T, Binary>) {
                    return eval_binary(node, expr.line);
                } else if constexpr (std::is_same_v<T, Unary>) {
                    return eval_unary(node, expr.line);
                } else if constexpr (std::is_same_v<T, Call>) {
                    return eval_call(node, expr.line);
                } else if constexpr (std::is_same_v<T, Index>) {
                    return eval_index(node, expr.line);
                }
            },
            expr.node);
    } catch (const RuntimeError& e) {
        if (e.line() == 0) {
            throw e.with_line(expr.line);
        }
        throw;
    }
}

Value Interpreter::eval_binary(const Binary& bin, int line) {
    if (bin.op == BinaryOp::And) {
        if (!condition(*bin.lhs)) {
            return Value(0);
        }
        return Value(condition(*bin.rhs) ? 1 : 0);
    }
    if (bin.op == BinaryOp::Or) {
        if (condition(*bin.lhs)) {
            return Value(1);
        }
        return Value(condition(*bin.rhs) ? 1 : 0);
    }

    Value lhs = evaluate(*bin.lhs);
    Value rhs = evaluate(*bin.rhs);

    switch (bin.op) {
        case BinaryOp::Eq:
            return Value(values_equal(lhs, rhs) ? 1 : 0);
        case BinaryOp::Neq:
            return Value(values_equal(lhs, rhs) ? 0 : 1);
        case BinaryOp::Add:
            if (lhs.is_text() || rhs.is_text()) {
                return Value(display(lhs) + display(rhs));
            }
            break;
        default:
            break;
    }

    const std::string op_desc = "'" + std::string(binary_op_name(bin.op)) + "'";
    const double a = number_operand(*bin.lhs, lhs, op_desc);
    const double b = number_operand(*bin.rhs, rhs, op_desc);
    switch (bin.op) {
        case BinaryOp::Add: return Value(a + b);
        case BinaryOp::Sub: return Value(a - b);
        case BinaryOp::Mul: return Value(a * b);
        case BinaryOp::Div:
            if (b == 0.0) {
                fail(ErrorKind::TypeError, line, "division by zero");
            }
            return Value(a / b);
        case BinaryOp::Mod:
            if (b == 0.0) {
                fail(ErrorKind::TypeError, line, "modulo by zero");
            }
            return Value(std::fmod(a, b));
        case BinaryOp::Lt: return Value(a < b ? 1 : 0);
        case BinaryOp::Lte: return Value(a <= b ? 1 : 0);
        case BinaryOp::Gt: return Value(a > b ? 1 : 0);
        case BinaryOp::Gte: return Value(a >= b ? 1 : 0);
        default: break;
    }
    fail(ErrorKind::TypeError, line, "unsupported operator");
}

Value Interpreter::eval_unary(const Unary& un, int) {
    if (un.op == UnaryOp::Not) {
        return Value(condition(*un.operand) ? 0 : 1);
    }
    Value v = evaluate(*un.operand);
    return Value(-number_operand(*un.operand, v, "unary '-'"));
}

Value Interpreter::eval_call(const Call& call, int line) {
    const Builtin* builtin = registry_.find(call.callee);
    if (builtin == nullptr) {
        if (env_.find(call.callee) != nullptr) {
            fail(ErrorKind::NameError, line, "'" + call.callee + "' is a variable, not a function");
        }
        fail(ErrorKind::NameError, line, "unknown function '" + call.callee + "'");
    }
    if (!builtin->arity.accepts(call.args.size())) {
        fail(ErrorKind::ArityError, line,
             builtin->name + " takes " + builtin->arity.describe() + " argument(s), got " +
                 std::to_string(call.args.size()));
    }
    std::vector<Value> args;
    args.reserve(call.args.size());
    for (const auto& a : call.args) {
        args.push_back(evaluate(*a));
    }
    try {
        return registry_.invoke(call.callee, ctx_, args);
    } catch (const RuntimeError& e) {
        if (e.line() == 0) {
            throw e.with_line(line);
        }
        throw;
    }
}

Value Interpreter::eval_index(const Index& idx, int line) {
    Value container = evaluate(*idx.array);
    Value index = evaluate(*idx.index);
    try {
        const std::size_t i = checked_index(container, index);
        return (*container.as_array())[i];
    } catch (const RuntimeError& e) {
        throw e.with_line(line);
    }
}

const Value* RunOutcome::binding(std::string_view name) const {
    for (const auto& [k, v] : final_env) {
        if (k == name) {
            return &v;
        }
    }
    return nullptr;
}

RunOutcome run(const Program& program,
               DeviceState& device,
               const BuiltinRegistry& registry,
               Transport& transport,
               ExecutionBudget budget,
               RunHooks hooks) {
    Interpreter interp(device, transport, registry, budget, std::move(hooks));
    RunOutcome outcome;
    try {
        interp.execute(program);
    } catch (const RuntimeError& e) {
        outcome.error = e;
    }
    outcome.events = device.events();
    outcome.final_env = interp.environment().user_globals();
    outcome.final_time_ms = device.now();
    outcome.statements_executed = interp.statements_executed();
    return outcome;
}

} // namespace origin
