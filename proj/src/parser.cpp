#include "origin/parser.h"

#include <cmath>
#include <utility>

#include <json.hpp>

#include "origin/error.h"

namespace origin {

std::string_view binary_op_name(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "PLUS";
        case BinaryOp::Sub: return "MINUS";
        case BinaryOp::Mul: return "STAR";
        case BinaryOp::Div: return "SLASH";
        case BinaryOp::Mod: return "PERCENT";
        case BinaryOp::Eq: return "EQ";
        case BinaryOp::Neq: return "NEQ";
        case BinaryOp::Lt: return "LT";
        case BinaryOp::Lte: return "LTE";
        case BinaryOp::Gt: return "GT";
        case BinaryOp::Gte: return "GTE";
        case BinaryOp::And: return "AND";
        case BinaryOp::Or: return "OR";
    }
    return "?";
}

std::string_view unary_op_name(UnaryOp op) {
    return op == UnaryOp::Neg ? "MINUS" : "NOT";
}

bool is_comparison(BinaryOp op) {
    switch (op) {
        case BinaryOp::Eq:
        case BinaryOp::Neq:
        case BinaryOp::Lt:
        case BinaryOp::Lte:
        case BinaryOp::Gt:
        case BinaryOp::Gte:
            return true;
        default:
            return false;
    }
}

bool is_logical(BinaryOp op) {
    return op == BinaryOp::And || op == BinaryOp::Or;
}

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
        if (tokens_.empty() || tokens_.back().kind != TokenKind::END_OF_FILE) {
            throw ParseError(1, "token stream must end with EOF", "EOF", "end of input");
        }
    }

    Program program() {
        Program prog;
        skip_newlines();
        while (!check(TokenKind::END_OF_FILE)) {
            prog.statements.push_back(statement());
            if (!check(TokenKind::END_OF_FILE)) {
                expect(TokenKind::NEWLINE, "end of statement");
            }
            skip_newlines();
        }
        return prog;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    bool check(TokenKind kind) const { return peek().kind == kind; }

    const Token& advance() {
        const Token& tok = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) {
            ++pos_;
        }
        return tok;
    }

    bool match(TokenKind kind) {
        if (check(kind)) {
            advance();
            return true;
        }
        return false;
    }

    void skip_newlines() {
        while (match(TokenKind::NEWLINE)) {
        }
    }

    // EOF sits past the last line when the source ends in a newline; report
    // the preceding token's line so diagnostics stay inside the source.
    int error_line(const Token& found) const {
        if (found.kind == TokenKind::END_OF_FILE && pos_ > 0) {
            return tokens_[pos_ - 1].line;
        }
        return found.line;
    }

    static std::string describe(const Token& tok) {
        switch (tok.kind) {
            case TokenKind::NEWLINE: return "end of line";
            case TokenKind::END_OF_FILE: return "end of input";
            default: return std::string(token_kind_name(tok.kind)) + " '" + tok.lexeme + "'";
        }
    }

    [[noreturn]] void fail(std::string_view expected) const {
        const Token& found = peek();
        throw ParseError(error_line(found),
                         "expected " + std::string(expected) + ", found " + describe(found),
                         std::string(expected),
                         describe(found));
    }

    const Token& expect(TokenKind kind, std::string_view what) {
        if (!check(kind)) {
            fail(std::string(token_kind_name(kind)) + " (" + std::string(what) + ")");
        }
        return advance();
    }

    StmtPtr statement() {
        const int line = peek().line;
        auto stmt = std::make_unique<Stmt>();
        stmt->line = line;
        switch (peek().kind) {
            case TokenKind::VAR: stmt->node = var_decl(); break;
            case TokenKind::IF: stmt->node = if_stmt(); break;
            case TokenKind::LOOP: stmt->node = loop_stmt(); break;
            default: {
                ExprPtr expr = expression();
                if (check(TokenKind::ASSIGN)) {
                    bool assignable = std::holds_alternative<Ident>(expr->node) ||
                                      std::holds_alternative<Index>(expr->node);
                    if (!assignable) {
                        throw ParseError(peek().line, "invalid assignment target",
                                         "identifier or index expression", "expression");
                    }
                    advance();
                    stmt->node = Assign{std::move(expr), expression()};
                } else {
                    stmt->node = ExprStmt{std::move(expr)};
                }
                break;
            }
        }
        return stmt;
    }

    VarDecl var_decl() {
        expect(TokenKind::VAR, "'var'");
        VarDecl decl;
        decl.name = expect(TokenKind::IDENT, "variable name").lexeme;
        if (match(TokenKind::ASSIGN)) {
            decl.initializer = expression();
        }
        return decl;
    }

    Block block() {
        expect(TokenKind::LBRACE, "block");
        Block blk;
        skip_newlines();
        while (!check(TokenKind::RBRACE)) {
            if (check(TokenKind::END_OF_FILE)) {
                fail("RBRACE (closing '}')");
            }
            blk.statements.push_back(statement());
            if (!check(TokenKind::RBRACE)) {
                expect(TokenKind::NEWLINE, "end of statement");
            }
            skip_newlines();
        }
        advance();
        return blk;
    }

    If if_stmt() {
        expect(TokenKind::IF, "'if'");
        expect(TokenKind::LPAREN, "condition");
        If node;
        node.condition = expression();
        expect(TokenKind::RPAREN, "end of condition");
        node.then_block = block();

        // `else` may sit on the line after the closing brace.
        std::size_t save = pos_;
        skip_newlines();
        if (!check(TokenKind::ELSE)) {
            pos_ = save;
            return node;
        }
        advance();
        if (check(TokenKind::IF)) {
            auto nested = std::make_unique<Stmt>();
            nested->line = peek().line;
            nested->node = if_stmt();
            node.else_branch = std::move(nested);
        } else {
            node.else_branch = block();
        }
        return node;
    }

    Loop loop_stmt() {
        expect(TokenKind::LOOP, "'loop'");
        expect(TokenKind::LPAREN, "loop header");
        Loop node;
        if (check(TokenKind::RPAREN)) {
            node.header = InfiniteHeader{};
        } else if (peek().kind == TokenKind::IDENT && peek(1).kind == TokenKind::IN) {
            std::string variable = advance().lexeme;
            advance();
            node.header = ForEachHeader{std::move(variable), expression()};
        } else {
            ExprPtr expr = expression();
            if (is_condition_shaped(*expr)) {
                node.header = ConditionalHeader{std::move(expr)};
            } else {
                node.header = CountHeader{std::move(expr)};
            }
        }
        expect(TokenKind::RPAREN, "end of loop header");
        node.body = block();
        return node;
    }

    static bool is_condition_shaped(const Expr& expr) {
        if (const auto* bin = std::get_if<Binary>(&expr.node)) {
            return is_comparison(bin->op) || is_logical(bin->op);
        }
        if (const auto* un = std::get_if<Unary>(&expr.node)) {
            return un->op == UnaryOp::Not;
        }
        return false;
    }

    ExprPtr make(int line, auto node) {
        auto expr = std::make_unique<Expr>();
        expr->node = std::move(node);
        expr->line = line;
        return expr;
    }

    ExprPtr expression() { return logical_or(); }

    ExprPtr logical_or() {
        ExprPtr lhs = logical_and();
        while (check(TokenKind::OR)) {
            int line = advance().line;
            lhs = make(line, Binary{BinaryOp::Or, std::move(lhs), logical_and()});
        }
        return lhs;
    }

    ExprPtr logical_and() {
        ExprPtr lhs = comparison();
        while (check(TokenKind::AND)) {
            int line = advance().line;
            lhs = make(line, Binary{BinaryOp::And, std::move(lhs), comparison()});
        }
        return lhs;
    }

    ExprPtr comparison() {
        ExprPtr lhs = additive();
        while (true) {
            BinaryOp op;
            switch (peek().kind) {
                case TokenKind::EQ: op = BinaryOp::Eq; break;
                case TokenKind::NEQ: op = BinaryOp::Neq; break;
                case TokenKind::LT: op = BinaryOp::Lt; break;
                case TokenKind::LTE: op = BinaryOp::Lte; break;
                case TokenKind::GT: op = BinaryOp::Gt; break;
                case TokenKind::GTE: op = BinaryOp::Gte; break;
                default: return lhs;
            }
            int line = advance().line;
            lhs = make(line, Binary{op, std::move(lhs), additive()});
        }
    }

    ExprPtr additive() {
        ExprPtr lhs = multiplicative();
        while (check(TokenKind::PLUS) || check(TokenKind::MINUS)) {
            const Token& tok = advance();
            BinaryOp op = tok.kind == TokenKind::PLUS ? BinaryOp::Add : BinaryOp::Sub;
            lhs = make(tok.line, Binary{op, std::move(lhs), multiplicative()});
        }
        return lhs;
    }

    ExprPtr multiplicative() {
        ExprPtr lhs = unary();
        while (true) {
            BinaryOp op;
            switch (peek().kind) {
                case TokenKind::STAR: op = BinaryOp::Mul; break;
                case TokenKind::SLASH: op = BinaryOp::Div; break;
                case TokenKind::PERCENT: op = BinaryOp::Mod; break;
                default: return lhs;
            }
            int line = advance().line;
            lhs = make(line, Binary{op, std::move(lhs), unary()});
        }
    }

    ExprPtr unary() {
        if (check(TokenKind::MINUS) || check(TokenKind::NOT)) {
            const Token& tok = advance();
            UnaryOp op = tok.kind == TokenKind::MINUS ? UnaryOp::Neg : UnaryOp::Not;
            return make(tok.line, Unary{op, unary()});
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr expr = primary();
        while (check(TokenKind::LBRACKET)) {
            int line = advance().line;
            ExprPtr index = expression();
            expect(TokenKind::RBRACKET, "closing ']'");
            expr = make(line, Index{std::move(expr), std::move(index)});
        }
        return expr;
    }

    std::vector<ExprPtr> comma_list(TokenKind close, std::string_view what) {
        std::vector<ExprPtr> items;
        if (!check(close)) {
            do {
                items.push_back(expression());
            } while (match(TokenKind::COMMA));
        }
        expect(close, what);
        return items;
    }

    ExprPtr primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::NUMBER:
                advance();
                return make(tok.line, NumberLit{tok.number()});
            case TokenKind::STRING:
                advance();
                return make(tok.line, StringLit{tok.text()});
            case TokenKind::IDENT: {
                advance();
                if (match(TokenKind::LPAREN)) {
                    return make(tok.line, Call{tok.lexeme, comma_list(TokenKind::RPAREN, "closing ')'")});
                }
                return make(tok.line, Ident{tok.lexeme});
            }
            case TokenKind::LPAREN: {
                advance();
                ExprPtr inner = expression();
                expect(TokenKind::RPAREN, "closing ')'");
                return inner;
            }
            case TokenKind::LBRACKET:
                advance();
                return make(tok.line, ArrayLit{comma_list(TokenKind::RBRACKET, "closing ']'")});
            default:
                fail("expression");
        }
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
};

using nlohmann::ordered_json;

ordered_json number_json(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15) {
        return static_cast<std::int64_t>(v);
    }
    return v;
}

ordered_json dump_expr(const Expr& expr);
ordered_json dump_stmt(const Stmt& stmt);

ordered_json dump_block(const Block& block) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : block.statements) {
        arr.push_back(dump_stmt(*s));
    }
    return arr;
}

ordered_json dump_expr(const Expr& expr) {
    ordered_json j;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                j["kind"] = "Number";
                j["line"] = expr.line;
                j["value"] = number_json(n.value);
            } else if constexpr (std::is_same_v<T, StringLit>) {
                j["kind"] = "String";
                j["line"] = expr.line;
                j["value"] = n.value;
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                j["kind"] = "Array";
                j["line"] = expr.line;
                j["elements"] = ordered_json::array();
                for (const auto& e : n.elements) {
                    j["elements"].push_back(dump_expr(*e));
                }
            } else if constexpr (std::is_same_v<T, Ident>) {
                j["kind"] = "Ident";
                j["line"] = expr.line;
                j["name"] = n.name;
            } else if constexpr (std::is_same_v<T, Binary>) {
                j["kind"] = "Binary";
                j["line"] = expr.line;
                j["op"] = binary_op_name(n.op);
                j["lhs"] = dump_expr(*n.lhs);
                j["rhs"] = dump_expr(*n.rhs);
            } else if constexpr (std::is_same_v<T, Unary>) {
                j["kind"] = "Unary";
                j["line"] = expr.line;
                j["op"] = unary_op_name(n.op);
                j["operand"] = dump_expr(*n.operand);
            } else if constexpr (std::is_same_v<T, Call>) {
                j["kind"] = "Call";
                j["line"] = expr.line;
                j["callee"] = n.callee;
                j["args"] = ordered_json::array();
                for (const auto& a : n.args) {
                    j["args"].push_back(dump_expr(*a));
                }
            } else if constexpr (std::is_same_v<T, Index>) {
                j["kind"] = "Index";
                j["line"] = expr.line;
                j["array"] = dump_expr(*n.array);
                j["index"] = dump_expr(*n.index);
            }
        },
        expr.node);
    return j;
}

ordered_json dump_header(const LoopHeader& header) {
    ordered_json j;
    std::visit(
        [&](const auto& h) {
            using T = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<T, InfiniteHeader>) {
                j["kind"] = "Infinite";
            } else if constexpr (std::is_same_v<T, ForEachHeader>) {
                j["kind"] = "ForEach";
                j["variable"] = h.variable;
                j["iterable"] = dump_expr(*h.iterable);
            } else if constexpr (std::is_same_v<T, ConditionalHeader>) {
                j["kind"] = "Conditional";
                j["condition"] = dump_expr(*h.condition);
            } else if constexpr (std::is_same_v<T, CountHeader>) {
                j["kind"] = "Count";
                j["count"] = dump_expr(*h.count);
            }
        },
        header);
    return j;
}

ordered_json dump_stmt(const Stmt& stmt) {
    ordered_json j;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarDecl>) {
                j["kind"] = "VarDecl";
                j["line"] = stmt.line;
                j["name"] = n.name;
                j["initializer"] = n.initializer ? dump_expr(*n.initializer) : ordered_json(nullptr);
            } else if constexpr (std::is_same_v<T, Assign>) {
                j["kind"] = "Assign";
                j["line"] = stmt.line;
                j["target"] = dump_expr(*n.target);
                j["value"] = dump_expr(*n.value);
            } else if constexpr (std::is_same_v<T, If>) {
                j["kind"] = "If";
                j["line"] = stmt.line;
                j["condition"] = dump_expr(*n.condition);
                j["then"] = dump_block(n.then_block);
                if (const auto* blk = std::get_if<Block>(&n.else_branch)) {
                    j["else"] = dump_block(*blk);
                } else if (const auto* nested = std::get_if<StmtPtr>(&n.else_branch)) {
                    j["else"] = dump_stmt(**nested);
                } else {
                    j["else"] = nullptr;
                }
            } else if constexpr (std::is_same_v<T, Loop>) {
                j["kind"] = "Loop";
                j["line"] = stmt.line;
                j["header"] = dump_header(n.header);
                j["body"] = dump_block(n.body);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                j["kind"] = "ExprStmt";
                j["line"] = stmt.line;
                j["expr"] = dump_expr(*n.expr);
            }
        },
        stmt.node);
    return j;
}

} // namespace

Program parse(const std::vector<Token>& tokens) {
    return Parser(tokens).program();
}

Program parse_source(std::string_view source) {
    return parse(tokenize(source));
}

std::string dump_ast(const Program& program) {
    ordered_json root;
    root["statements"] = ordered_json::array();
    for (const auto& s : program.statements) {
        root["statements"].push_back(dump_stmt(*s));
    }
    return root.dump();
}

} // namespace origin
