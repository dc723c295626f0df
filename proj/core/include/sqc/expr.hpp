#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sqc/geometry.hpp"

namespace sqc::expr {

enum class NodeKind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

enum class Builtin { Abs, Sqrt, Exp, Log, Sin, Cos, Max, Min };

const char* builtin_name(Builtin b);

struct Node {
  NodeKind kind;
  double value = 0.0;     // Number
  int var_index = 0;      // Variable, 1-based
  Builtin builtin = Builtin::Abs;
  std::vector<std::unique_ptr<Node>> children;
  std::size_t offset = 0;  // byte offset in the source, for diagnostics
};

/// Immutable after parsing; safe to share between threads.
struct ExprAst {
  std::unique_ptr<Node> root;
  int dimension = 0;
  std::string source;
};

/// Parses the expression language:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' factor)?
///   atom   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
/// '^' is right-associative and binds tighter than unary minus, so
/// "-x1^2" reads as -(x1^2). Variables are x1..xn; the exponent of '^'
/// must be a constant subexpression. Whitespace is insignificant.
ExprAst parse(const std::string& src, int dimension);

/// Evaluates in double precision, round-to-nearest. Throws DomainError
/// for sqrt of a negative, log of a nonpositive or division by zero,
/// naming the offending subexpression.
double eval_ast(const ExprAst& ast, const Vec& p);
double eval_node(const Node& node, const Vec& p);

/// Renders an AST back to source. Reparsing the output yields a
/// structurally identical tree.
std::string to_string(const ExprAst& ast);
std::string node_to_string(const Node& node);

bool structurally_equal(const Node& a, const Node& b);

}  // namespace sqc::expr
