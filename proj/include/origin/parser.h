#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "origin/ast.h"
#include "origin/lexer.h"

namespace origin {

/// Recursive-descent parse of a token stream ending in EOF. The first
/// malformed construct throws ParseError; there is no recovery.
Program parse(const std::vector<Token>& tokens);

/// tokenize + parse.
Program parse_source(std::string_view source);

/// Deterministic JSON serialization of the tree (node kinds, operators,
/// literals, line numbers). An empty program dumps as {"statements":[]}.
std::string dump_ast(const Program& program);

} // namespace origin
