#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "origin/builtins.h"
#include "origin/device.h"
#include "origin/interpreter.h"
#include "origin/net.h"

namespace origin {

/// Interactive session over one persistent Environment and DeviceState.
/// Input accumulates until brackets balance, then runs. Bare expressions
/// echo their value; `:events` dumps the log; `:quit` ends the session.
class ReplSession {
public:
    ReplSession(DeviceState& device,
                Transport& transport,
                const BuiltinRegistry& registry,
                std::ostream& out,
                std::ostream& err,
                ExecutionBudget budget = {});

    /// Returns false once the session has been asked to quit.
    bool feed(std::string_view line);

    /// True while a multi-line statement is still open.
    bool pending() const { return !buffer_.empty(); }

private:
    void submit();

    DeviceState& device_;
    std::ostream& out_;
    std::ostream& err_;
    ExecutionBudget budget_;
    Interpreter interp_;
    std::string buffer_;
};

/// Reads lines from `in` until EOF or `:quit`. Prompts are written to `out`
/// only when `prompts` is set.
void run_repl(ReplSession& session, std::istream& in, std::ostream& out, bool prompts);

} // namespace origin
