#include "origin/repl.h"

#include <istream>
#include <ostream>

#include "origin/error.h"
#include "origin/lexer.h"
#include "origin/parser.h"

namespace origin {

ReplSession::ReplSession(DeviceState& device,
                         Transport& transport,
                         const BuiltinRegistry& registry,
                         std::ostream& out,
                         std::ostream& err,
                         ExecutionBudget budget)
    : device_(device),
      out_(out),
      err_(err),
      budget_(budget),
      interp_(device, transport, registry, budget, RunHooks{[this](const std::string& text) { out_ << text << '\n'; }, {}}) {}

bool ReplSession::feed(std::string_view line) {
    if (buffer_.empty()) {
        std::string_view cmd = line;
        while (!cmd.empty() && (cmd.back() == ' ' || cmd.back() == '\r' || cmd.back() == '\t')) {
            cmd.remove_suffix(1);
        }
        if (cmd == ":quit") {
            return false;
        }
        if (cmd == ":events") {
            out_ << serialize_events(device_.events());
            return true;
        }
    }
    buffer_.append(line);
    buffer_.push_back('\n');

    std::vector<Token> tokens;
    try {
        tokens = tokenize(buffer_);
    } catch (const LexError& e) {
        err_ << "origin: " << e.describe() << '\n';
        buffer_.clear();
        return true;
    }
    int depth = 0;
    for (const Token& tok : tokens) {
        switch (tok.kind) {
            case TokenKind::LBRACE:
            case TokenKind::LPAREN:
            case TokenKind::LBRACKET:
                ++depth;
                break;
            case TokenKind::RBRACE:
            case TokenKind::RPAREN:
            case TokenKind::RBRACKET:
                --depth;
                break;
            default:
                break;
        }
    }
    if (depth <= 0) {
        submit();
    }
    return true;
}

void ReplSession::submit() {
    std::string source = std::move(buffer_);
    buffer_.clear();
    Program program;
    try {
        program = parse_source(source);
    } catch (const OriginError& e) {
        err_ << "origin: " << e.describe() << '\n';
        return;
    }
    interp_.reset_budget(budget_);
    try {
        for (const auto& stmt : program.statements) {
            std::optional<Value> result = interp_.execute_statement(*stmt);
            if (result && !result->is_null()) {
                out_ << display(*result) << '\n';
            }
        }
    } catch (const RuntimeError& e) {
        err_ << "origin: " << e.describe() << '\n';
    }
}

void run_repl(ReplSession& session, std::istream& in, std::ostream& out, bool prompts) {
    std::string line;
    while (true) {
        if (prompts) {
            out << (session.pending() ? "... " : "> ") << std::flush;
        }
        if (!std::getline(in, line)) {
            break;
        }
        if (!session.feed(line)) {
            break;
        }
    }
}

} // namespace origin
