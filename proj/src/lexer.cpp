#include "origin/lexer.h"

#include <charconv>
#include <unordered_map>

#include "origin/error.h"

namespace origin {

std::string_view token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::VAR: return "VAR";
        case TokenKind::IF: return "IF";
        case TokenKind::ELSE: return "ELSE";
        case TokenKind::LOOP: return "LOOP";
        case TokenKind::IN: return "IN";
        case TokenKind::IDENT: return "IDENT";
        case TokenKind::NUMBER: return "NUMBER";
        case TokenKind::STRING: return "STRING";
        case TokenKind::LPAREN: return "LPAREN";
        case TokenKind::RPAREN: return "RPAREN";
        case TokenKind::LBRACE: return "LBRACE";
        case TokenKind::RBRACE: return "RBRACE";
        case TokenKind::LBRACKET: return "LBRACKET";
        case TokenKind::RBRACKET: return "RBRACKET";
        case TokenKind::COMMA: return "COMMA";
        case TokenKind::ASSIGN: return "ASSIGN";
        case TokenKind::PLUS: return "PLUS";
        case TokenKind::MINUS: return "MINUS";
        case TokenKind::STAR: return "STAR";
        case TokenKind::SLASH: return "SLASH";
        case TokenKind::PERCENT: return "PERCENT";
        case TokenKind::EQ: return "EQ";
        case TokenKind::NEQ: return "NEQ";
        case TokenKind::LT: return "LT";
        case TokenKind::LTE: return "LTE";
        case TokenKind::GT: return "GT";
        case TokenKind::GTE: return "GTE";
        case TokenKind::AND: return "AND";
        case TokenKind::OR: return "OR";
        case TokenKind::NOT: return "NOT";
        case TokenKind::NEWLINE: return "NEWLINE";
        case TokenKind::END_OF_FILE: return "EOF";
    }
    return "?";
}

namespace {

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

const std::unordered_map<std::string_view, TokenKind>& keywords() {
    static const std::unordered_map<std::string_view, TokenKind> table{
        {"var", TokenKind::VAR},
        {"if", TokenKind::IF},
        {"else", TokenKind::ELSE},
        {"loop", TokenKind::LOOP},
        {"in", TokenKind::IN},
    };
    return table;
}

class Lexer {
public:
    explicit Lexer(std::string_view source) : src_(source) {}

    std::vector<Token> run() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '\n') {
                newline();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else {
                lex_token();
            }
        }
        tokens_.push_back(Token{TokenKind::END_OF_FILE, "", {}, line_, column_});
        return std::move(tokens_);
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            // Count code points, not UTF-8 continuation bytes.
            ++column_;
        }
    }

    void newline() {
        bool emit = nesting_ == 0 && (tokens_.empty() || tokens_.back().kind != TokenKind::NEWLINE);
        if (emit) {
            tokens_.push_back(Token{TokenKind::NEWLINE, "\n", {}, line_, column_});
        }
        advance();
    }

    void push(TokenKind kind, std::size_t start, int line, int column) {
        tokens_.push_back(Token{kind, std::string(src_.substr(start, pos_ - start)), {}, line, column});
    }

    void lex_token() {
        const std::size_t start = pos_;
        const int line = line_;
        const int column = column_;
        char c = peek();

        if (is_ident_start(c)) {
            while (is_ident_char(peek())) {
                advance();
            }
            std::string_view word = src_.substr(start, pos_ - start);
            auto it = keywords().find(word);
            push(it == keywords().end() ? TokenKind::IDENT : it->second, start, line, column);
            return;
        }
        if (is_digit(c)) {
            lex_number(start, line, column);
            return;
        }
        if (c == '"') {
            lex_string(start, line, column);
            return;
        }

        auto single = [&](TokenKind kind) {
            advance();
            push(kind, start, line, column);
        };
        auto maybe_pair = [&](char next, TokenKind paired, TokenKind alone) {
            advance();
            if (peek() == next) {
                advance();
                push(paired, start, line, column);
            } else {
                push(alone, start, line, column);
            }
        };

        switch (c) {
            case '(': ++nesting_; single(TokenKind::LPAREN); return;
            case '[': ++nesting_; single(TokenKind::LBRACKET); return;
            case ')': close_nesting(); single(TokenKind::RPAREN); return;
            case ']': close_nesting(); single(TokenKind::RBRACKET); return;
            case '{': single(TokenKind::LBRACE); return;
            case '}': single(TokenKind::RBRACE); return;
            case ',': single(TokenKind::COMMA); return;
            case '+': single(TokenKind::PLUS); return;
            case '-': single(TokenKind::MINUS); return;
            case '*': single(TokenKind::STAR); return;
            case '/': single(TokenKind::SLASH); return;
            case '%': single(TokenKind::PERCENT); return;
            case '=': maybe_pair('=', TokenKind::EQ, TokenKind::ASSIGN); return;
            case '!': maybe_pair('=', TokenKind::NEQ, TokenKind::NOT); return;
            case '<': maybe_pair('=', TokenKind::LTE, TokenKind::LT); return;
            case '>': maybe_pair('=', TokenKind::GTE, TokenKind::GT); return;
            case '&':
                if (peek(1) == '&') {
                    advance();
                    advance();
                    push(TokenKind::AND, start, line, column);
                    return;
                }
                throw LexError(line, column, "expected '&&'");
            case '|':
                if (peek(1) == '|') {
                    advance();
                    advance();
                    push(TokenKind::OR, start, line, column);
                    return;
                }
                throw LexError(line, column, "expected '||'");
            default:
                break;
        }
        throw LexError(line, column, "unexpected character " + describe_char(c));
    }

    void close_nesting() {
        if (nesting_ > 0) {
            --nesting_;
        }
    }

    void lex_number(std::size_t start, int line, int column) {
        while (is_digit(peek())) {
            advance();
        }
        if (peek() == '.' && is_digit(peek(1))) {
            advance();
            while (is_digit(peek())) {
                advance();
            }
        }
        std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), value);
        push(TokenKind::NUMBER, start, line, column);
        tokens_.back().literal = value;
    }

    void lex_string(std::size_t start, int line, int column) {
        advance();  // opening quote
        std::string value;
        while (true) {
            if (at_end() || peek() == '\n') {
                throw LexError(line, column, "unterminated string literal");
            }
            char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                const int esc_line = line_;
                const int esc_column = column_;
                advance();
                if (at_end()) {
                    throw LexError(line, column, "unterminated string literal");
                }
                switch (peek()) {
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    default:
                        throw LexError(esc_line, esc_column, "invalid escape sequence \\" + std::string(1, peek()));
                }
                advance();
                continue;
            }
            value += c;
            advance();
        }
        push(TokenKind::STRING, start, line, column);
        tokens_.back().literal = std::move(value);
    }

    static std::string describe_char(char c) {
        auto byte = static_cast<unsigned char>(c);
        if (byte >= 0x20 && byte < 0x7F) {
            return std::string("'") + c + "'";
        }
        static const char* hex = "0123456789ABCDEF";
        return std::string("byte 0x") + hex[byte >> 4] + hex[byte & 0xF];
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    int nesting_ = 0;
    std::vector<Token> tokens_;
};

} // namespace

std::vector<Token> tokenize(std::string_view source) {
    return Lexer(source).run();
}

std::string dump_tokens(const std::vector<Token>& tokens) {
    std::string out;
    for (const Token& tok : tokens) {
        out += std::to_string(tok.line) + ":" + std::to_string(tok.column) + " ";
        out += token_kind_name(tok.kind);
        if (tok.kind == TokenKind::NEWLINE) {
            out += " \\n";
        } else if (!tok.lexeme.empty()) {
            out += " " + tok.lexeme;
        }
        out += "\n";
    }
    return out;
}

} // namespace origin
