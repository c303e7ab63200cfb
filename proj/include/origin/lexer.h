#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace origin {

enum class TokenKind {
    VAR, IF, ELSE, LOOP, IN,
    IDENT, NUMBER, STRING,
    LPAREN, RPAREN, LBRACE, RBRACE, LBRACKET, RBRACKET, COMMA,
    ASSIGN, PLUS, MINUS, STAR, SLASH, PERCENT,
    EQ, NEQ, LT, LTE, GT, GTE, AND, OR, NOT,
    NEWLINE, END_OF_FILE,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string lexeme;
    // Decoded payload: double for NUMBER, unescaped text for STRING.
    std::variant<std::monostate, double, std::string> literal;
    int line = 1;
    int column = 1;

    double number() const { return std::get<double>(literal); }
    const std::string& text() const { return std::get<std::string>(literal); }
};

/// Lexes Origin source. Newlines inside open `(` / `[` are dropped so a call
/// may span lines; runs of newlines collapse to one NEWLINE. Throws LexError.
std::vector<Token> tokenize(std::string_view source);

/// One token per line: `LINE:COL KIND LEXEME`.
std::string dump_tokens(const std::vector<Token>& tokens);

} // namespace origin
