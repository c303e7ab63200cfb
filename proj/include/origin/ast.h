#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "origin/lexer.h"

namespace origin {

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Neq, Lt, Lte, Gt, Gte, And, Or };
enum class UnaryOp { Neg, Not };

std::string_view binary_op_name(BinaryOp op);
std::string_view unary_op_name(UnaryOp op);
bool is_comparison(BinaryOp op);
bool is_logical(BinaryOp op);

struct NumberLit { double value; };
struct StringLit { std::string value; };
struct ArrayLit { std::vector<ExprPtr> elements; };
struct Ident { std::string name; };
struct Binary { BinaryOp op; ExprPtr lhs; ExprPtr rhs; };
struct Unary { UnaryOp op; ExprPtr operand; };
struct Call { std::string callee; std::vector<ExprPtr> args; };
struct Index { ExprPtr array; ExprPtr index; };

struct Expr {
    std::variant<NumberLit, StringLit, ArrayLit, Ident, Binary, Unary, Call, Index> node;
    int line = 0;
};

struct Block {
    std::vector<StmtPtr> statements;
};

struct VarDecl { std::string name; ExprPtr initializer; };
struct Assign { ExprPtr target; ExprPtr value; };  // target is Ident or Index
struct If;
struct Loop;
struct ExprStmt { ExprPtr expr; };

struct If {
    ExprPtr condition;
    Block then_block;
    // Either empty, a Block, or a nested If statement (else-if chain).
    std::variant<std::monostate, Block, StmtPtr> else_branch;
};

struct InfiniteHeader {};
struct ForEachHeader { std::string variable; ExprPtr iterable; };
struct ConditionalHeader { ExprPtr condition; };
struct CountHeader { ExprPtr count; };
using LoopHeader = std::variant<InfiniteHeader, ForEachHeader, ConditionalHeader, CountHeader>;

struct Loop {
    LoopHeader header;
    Block body;
};

struct Stmt {
    std::variant<VarDecl, Assign, If, Loop, ExprStmt> node;
    int line = 0;
};

struct Program {
    std::vector<StmtPtr> statements;
};

} // namespace origin
