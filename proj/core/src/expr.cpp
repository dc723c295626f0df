#include "sqc/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "sqc/errors.hpp"

namespace sqc::expr {

const char* builtin_name(Builtin b) {
  switch (b) {
    case Builtin::Abs: return "abs";
    case Builtin::Sqrt: return "sqrt";
    case Builtin::Exp: return "exp";
    case Builtin::Log: return "log";
    case Builtin::Sin: return "sin";
    case Builtin::Cos: return "cos";
    case Builtin::Max: return "max";
    case Builtin::Min: return "min";
  }
  return "?";
}

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;
  int dimension;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw SyntaxError(std::string("expected ") + what, pos);
  }

  std::unique_ptr<Node> make(NodeKind kind, std::size_t off) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->offset = off;
    return n;
  }

  std::unique_ptr<Node> parse_expr() {
    auto lhs = parse_term();
    while (true) {
      skip_ws();
      std::size_t off = pos;
      if (accept('+')) {
        auto n = make(NodeKind::Add, off);
        n->children.push_back(std::move(lhs));
        n->children.push_back(parse_term());
        lhs = std::move(n);
      } else if (accept('-')) {
        auto n = make(NodeKind::Sub, off);
        n->children.push_back(std::move(lhs));
        n->children.push_back(parse_term());
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_term() {
    auto lhs = parse_factor();
    while (true) {
      skip_ws();
      std::size_t off = pos;
      if (accept('*')) {
        auto n = make(NodeKind::Mul, off);
        n->children.push_back(std::move(lhs));
        n->children.push_back(parse_factor());
        lhs = std::move(n);
      } else if (accept('/')) {
        auto n = make(NodeKind::Div, off);
        n->children.push_back(std::move(lhs));
        n->children.push_back(parse_factor());
        lhs = std::move(n);
      } else {
        return lhs;
      }
    }
  }

  // '-' factor | atom ('^' factor)?   -- puts '^' under unary minus.
  std::unique_ptr<Node> parse_factor() {
    skip_ws();
    std::size_t off = pos;
    if (accept('-')) {
      auto n = make(NodeKind::Negate, off);
      n->children.push_back(parse_factor());
      return n;
    }
    auto base = parse_atom();
    skip_ws();
    std::size_t pow_off = pos;
    if (accept('^')) {
      auto exponent = parse_factor();
      if (contains_variable(*exponent))
        throw SyntaxError("exponent of '^' must be constant", pow_off);
      auto n = make(NodeKind::Pow, pow_off);
      n->children.push_back(std::move(base));
      n->children.push_back(std::move(exponent));
      return n;
    }
    return base;
  }

  static bool contains_variable(const Node& n) {
    if (n.kind == NodeKind::Variable) return true;
    for (const auto& c : n.children)
      if (contains_variable(*c)) return true;
    return false;
  }

  std::unique_ptr<Node> parse_atom() {
    skip_ws();
    std::size_t off = pos;
    if (pos >= src.size()) throw SyntaxError("unexpected end of input", pos);
    char c = src[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    if (accept('(')) {
      auto inner = parse_expr();
      expect(')', "')'");
      return inner;
    }
    throw SyntaxError("expected number, identifier or '('", off);
  }

  std::unique_ptr<Node> parse_number() {
    std::size_t off = pos;
    const char* first = src.data() + pos;
    const char* last = src.data() + src.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) throw SyntaxError("malformed number", off);
    pos += static_cast<std::size_t>(ptr - first);
    auto n = make(NodeKind::Number, off);
    n->value = value;
    return n;
  }

  std::unique_ptr<Node> parse_ident() {
    std::size_t off = pos;
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    std::string name = src.substr(start, pos - start);

    if (name.size() >= 2 && name[0] == 'x' &&
        std::isdigit(static_cast<unsigned char>(name[1]))) {
      int index = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (ec == std::errc{} && ptr == name.data() + name.size()) {
        if (index < 1 || index > dimension)
          throw VariableOutOfRange("variable " + name + " out of range for dimension " +
                                       std::to_string(dimension),
                                   off);
        auto n = make(NodeKind::Variable, off);
        n->var_index = index;
        return n;
      }
    }

    static const std::pair<const char*, Builtin> table[] = {
        {"abs", Builtin::Abs}, {"sqrt", Builtin::Sqrt}, {"exp", Builtin::Exp},
        {"log", Builtin::Log}, {"sin", Builtin::Sin},   {"cos", Builtin::Cos},
        {"max", Builtin::Max}, {"min", Builtin::Min},
    };
    for (const auto& [fname, b] : table) {
      if (name == fname) {
        expect('(', "'(' after function name");
        auto n = make(NodeKind::Call, off);
        n->builtin = b;
        n->children.push_back(parse_expr());
        while (accept(',')) n->children.push_back(parse_expr());
        expect(')', "')'");
        std::size_t want = (b == Builtin::Max || b == Builtin::Min) ? 2 : 1;
        if (n->children.size() != want)
          throw ArityMismatch(std::string(fname) + " takes " + std::to_string(want) +
                                  " argument(s), got " + std::to_string(n->children.size()),
                              off);
        return n;
      }
    }
    throw UnknownIdentifier("unknown identifier '" + name + "'", off);
  }
};

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

void render(const Node& n, std::string& out) {
  auto child = [&](const Node& c, bool needs_paren) {
    if (needs_paren) out += '(';
    render(c, out);
    if (needs_paren) out += ')';
  };
  switch (n.kind) {
    case NodeKind::Number: {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, ptr);
      break;
    }
    case NodeKind::Variable:
      out += 'x';
      out += std::to_string(n.var_index);
      break;
    case NodeKind::Negate:
      out += '-';
      // A '^' right under unary minus would re-associate as -(b^e); keep
      // anything of lower-or-equal precedence parenthesized.
      child(*n.children[0], precedence(n.children[0]->kind) <= precedence(NodeKind::Negate));
      break;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      char op = n.kind == NodeKind::Add   ? '+'
                : n.kind == NodeKind::Sub ? '-'
                : n.kind == NodeKind::Mul ? '*'
                                          : '/';
      int p = precedence(n.kind);
      child(*n.children[0], precedence(n.children[0]->kind) < p);
      out += ' ';
      out += op;
      out += ' ';
      // Left-associative: the right child needs parens at equal precedence.
      child(*n.children[1], precedence(n.children[1]->kind) <= p);
      break;
    }
    case NodeKind::Pow:
      child(*n.children[0], precedence(n.children[0]->kind) <= precedence(NodeKind::Pow));
      out += '^';
      // Right-associative: a nested Pow on the right needs no parens.
      child(*n.children[1], precedence(n.children[1]->kind) < precedence(NodeKind::Pow));
      break;
    case NodeKind::Call:
      out += builtin_name(n.builtin);
      out += '(';
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ", ";
        render(*n.children[i], out);
      }
      out += ')';
      break;
  }
}

}  // namespace

ExprAst parse(const std::string& src, int dimension) {
  if (dimension < 1) throw UsageError("dimension must be positive");
  Parser p{src, 0, dimension};
  auto root = p.parse_expr();
  if (!p.at_end()) throw SyntaxError("trailing input", p.pos);
  return ExprAst{std::move(root), dimension, src};
}

double eval_node(const Node& n, const Vec& p) {
  switch (n.kind) {
    case NodeKind::Number: return n.value;
    case NodeKind::Variable: {
      if (static_cast<std::size_t>(n.var_index) > p.size())
        throw DimensionMismatch("point has fewer coordinates than variable x" +
                                std::to_string(n.var_index));
      return p[static_cast<std::size_t>(n.var_index - 1)];
    }
    case NodeKind::Negate: return -eval_node(*n.children[0], p);
    case NodeKind::Add: return eval_node(*n.children[0], p) + eval_node(*n.children[1], p);
    case NodeKind::Sub: return eval_node(*n.children[0], p) - eval_node(*n.children[1], p);
    case NodeKind::Mul: return eval_node(*n.children[0], p) * eval_node(*n.children[1], p);
    case NodeKind::Div: {
      double denom = eval_node(*n.children[1], p);
      if (denom == 0.0) throw DomainError("division by zero", node_to_string(n));
      return eval_node(*n.children[0], p) / denom;
    }
    case NodeKind::Pow: {
      double base = eval_node(*n.children[0], p);
      double exponent = eval_node(*n.children[1], p);
      double r = std::pow(base, exponent);
      if (std::isnan(r)) throw DomainError("invalid power", node_to_string(n));
      return r;
    }
    case NodeKind::Call: {
      double a = eval_node(*n.children[0], p);
      switch (n.builtin) {
        case Builtin::Abs: return std::fabs(a);
        case Builtin::Sqrt:
          if (a < 0.0) throw DomainError("sqrt of negative", node_to_string(n));
          return std::sqrt(a);
        case Builtin::Exp: return std::exp(a);
        case Builtin::Log:
          if (a <= 0.0) throw DomainError("log of nonpositive", node_to_string(n));
          return std::log(a);
        case Builtin::Sin: return std::sin(a);
        case Builtin::Cos: return std::cos(a);
        case Builtin::Max: return std::fmax(a, eval_node(*n.children[1], p));
        case Builtin::Min: return std::fmin(a, eval_node(*n.children[1], p));
      }
      break;
    }
  }
  throw Error("corrupt AST node");
}

double eval_ast(const ExprAst& ast, const Vec& p) { return eval_node(*ast.root, p); }

std::string node_to_string(const Node& n) {
  std::string out;
  render(n, out);
  return out;
}

std::string to_string(const ExprAst& ast) { return node_to_string(*ast.root); }

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Number:
      if (!(a.value == b.value)) return false;
      break;
    case NodeKind::Variable:
      if (a.var_index != b.var_index) return false;
      break;
    case NodeKind::Call:
      if (a.builtin != b.builtin) return false;
      break;
    default: break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

}  // namespace sqc::expr
