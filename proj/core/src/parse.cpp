#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "dunkl/error.hpp"
#include "dunkl/expr.hpp"

namespace dunkl::detail {
namespace {

using ast::Kind;
using ast::Node;
using ast::NodePtr;

enum class Tok { number, ident, op, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  double number = 0.0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    cur_ = Token{};
    cur_.pos = i_;
    if (i_ >= s_.size()) return;
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '.')) ++j;
      if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
        if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
          j = k;
          while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        }
      }
      cur_.type = Tok::number;
      cur_.text = std::string(s_.substr(i_, j - i_));
      const auto res = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), cur_.number);
      if (res.ec != std::errc() || res.ptr != cur_.text.data() + cur_.text.size())
        fail(ErrorCode::parse, "malformed number '" + cur_.text + "' at offset " + std::to_string(i_));
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      cur_.type = Tok::ident;
      cur_.text = std::string(s_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    if (std::string_view("+-*/^(),=").find(c) != std::string_view::npos) {
      cur_.type = Tok::op;
      cur_.text = std::string(1, c);
      ++i_;
      return;
    }
    fail(ErrorCode::parse, std::string("unexpected character '") + c + "' at offset " + std::to_string(i_));
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token cur_;
};

std::shared_ptr<Node> make(Kind k, std::vector<NodePtr> kids = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = std::move(kids);
  return n;
}

NodePtr make_const(cplx v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = v;
  return n;
}

bool has_variables(const Node& n) {
  switch (n.kind) {
    case Kind::variable:
    case Kind::radius2:
    case Kind::gaussian:
    case Kind::indicator_box:
    case Kind::indicator_ball:
    case Kind::indicator_annulus:
      return true;
    default:
      break;
  }
  for (const auto& k : n.kids)
    if (has_variables(*k)) return true;
  return false;
}

struct Arg {
  std::string name;
  NodePtr value;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t dim) : lex_(text), dim_(dim) {}

  NodePtr parse() {
    NodePtr n = expr();
    if (lex_.peek().type != Tok::end) error("trailing input '" + lex_.peek().text + "'");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::parse, msg + " at offset " + std::to_string(lex_.peek().pos));
  }

  bool accept(const char* op) {
    if (lex_.peek().type == Tok::op && lex_.peek().text == op) {
      lex_.take();
      return true;
    }
    return false;
  }

  void expect(const char* op) {
    if (!accept(op)) error(std::string("expected '") + op + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept("+"))
        lhs = make(Kind::add, {lhs, term()});
      else if (accept("-"))
        lhs = make(Kind::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept("*"))
        lhs = make(Kind::mul, {lhs, unary()});
      else if (accept("/"))
        lhs = make(Kind::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept("-")) return make(Kind::neg, {unary()});
    if (accept("+")) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept("^")) return make(Kind::pow, {base, unary()});
    return base;
  }

  double constant_of(const NodePtr& n, const std::string& what) {
    if (has_variables(*n)) error(what + " must be a constant");
    const std::vector<double> origin(dim_, 0.0);
    const cplx v = eval_node(*n, origin);
    if (v.imag() != 0.0) error(what + " must be real");
    return v.real();
  }

  std::vector<Arg> args() {
    std::vector<Arg> out;
    expect("(");
    if (accept(")")) return out;
    do {
      Arg a;
      if (lex_.peek().type == Tok::ident) {
        // Lookahead for `name =`: re-lexing is cheap, so copy the lexer.
        Lexer probe = lex_;
        Token id = probe.take();
        if (probe.peek().type == Tok::op && probe.peek().text == "=") {
          lex_ = probe;
          lex_.take();
          a.name = id.text;
        }
      }
      a.value = expr();
      out.push_back(std::move(a));
    } while (accept(","));
    expect(")");
    return out;
  }

  // Resolve named/positional args against an ordered list of parameter names.
  std::vector<NodePtr> bind(const std::string& fn, std::vector<Arg> given,
                            const std::vector<std::string>& names, std::size_t required) {
    std::vector<NodePtr> out(names.size());
    std::size_t next = 0;
    for (auto& a : given) {
      std::size_t slot = next;
      if (!a.name.empty()) {
        slot = names.size();
        for (std::size_t i = 0; i < names.size(); ++i)
          if (names[i] == a.name) slot = i;
        if (slot == names.size()) error(fn + ": unknown argument '" + a.name + "'");
      }
      if (slot >= names.size()) error(fn + ": too many arguments");
      if (out[slot]) error(fn + ": argument '" + names[slot] + "' given twice");
      out[slot] = std::move(a.value);
      next = slot + 1;
    }
    for (std::size_t i = 0; i < required; ++i)
      if (!out[i]) error(fn + ": missing argument '" + names[i] + "'");
    return out;
  }

  NodePtr call(const std::string& fn) {
    auto given = args();
    auto unary_fn = [&](Kind k) { return make(k, {bind(fn, std::move(given), {"u"}, 1)[0]}); };
    if (fn == "exp") return unary_fn(Kind::exp);
    if (fn == "sin") return unary_fn(Kind::sin);
    if (fn == "cos") return unary_fn(Kind::cos);
    if (fn == "sqrt") return unary_fn(Kind::sqrt);
    if (fn == "pow") {
      auto b = bind(fn, std::move(given), {"base", "exponent"}, 2);
      return make(Kind::pow, {b[0], b[1]});
    }
    if (fn == "gaussian") {
      auto b = bind(fn, std::move(given), {"t"}, 1);
      auto n = make(Kind::gaussian);
      n->params = {constant_of(b[0], "gaussian t")};
      return n;
    }
    if (fn == "bessel") {
      auto b = bind(fn, std::move(given), {"alpha", "z"}, 2);
      auto n = make(Kind::bessel, {b[1]});
      n->params = {constant_of(b[0], "bessel order")};
      if (n->params[0] < -0.5) error("bessel order must be >= -1/2");
      return n;
    }
    if (fn == "indicator_ball") {
      auto b = bind(fn, std::move(given), {"r"}, 1);
      auto n = make(Kind::indicator_ball);
      n->params = {constant_of(b[0], "ball radius")};
      return n;
    }
    if (fn == "indicator_annulus") {
      auto b = bind(fn, std::move(given), {"r1", "r2"}, 2);
      auto n = make(Kind::indicator_annulus);
      n->params = {constant_of(b[0], "inner radius"), constant_of(b[1], "outer radius")};
      if (!(n->params[0] >= 0.0 && n->params[0] < n->params[1])) error("annulus needs 0 <= r1 < r2");
      return n;
    }
    if (fn == "indicator_box") {
      if (given.empty()) error("indicator_box needs a half-width");
      auto n = make(Kind::indicator_box);
      if (given.size() == 1) {
        n->params.assign(dim_, constant_of(given[0].value, "box half-width"));
      } else if (given.size() == dim_) {
        for (auto& a : given) n->params.push_back(constant_of(a.value, "box half-width"));
      } else {
        error("indicator_box takes 1 or d half-widths");
      }
      return n;
    }
    error("unknown function '" + fn + "'");
  }

  NodePtr primary() {
    const Token t = lex_.peek();
    if (t.type == Tok::number) {
      lex_.take();
      return make_const(t.number);
    }
    if (t.type == Tok::op && t.text == "(") {
      lex_.take();
      NodePtr n = expr();
      expect(")");
      return n;
    }
    if (t.type != Tok::ident) error("expected a value");
    lex_.take();
    if (lex_.peek().type == Tok::op && lex_.peek().text == "(") return call(t.text);
    if (t.text == "i") return make_const(cplx(0.0, 1.0));
    if (t.text == "pi") return make_const(std::numbers::pi);
    if (t.text == "r2") return make(Kind::radius2);
    if (t.text == "x" || (t.text.size() > 1 && t.text[0] == 'x' &&
                          std::all_of(t.text.begin() + 1, t.text.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))) {
      const int axis = t.text == "x" ? 0 : std::stoi(t.text.substr(1)) - 1;
      if (axis < 0 || static_cast<std::size_t>(axis) >= dim_)
        error("variable '" + t.text + "' out of range for d = " + std::to_string(dim_));
      auto n = std::make_shared<Node>();
      n->kind = Kind::variable;
      n->axis = axis;
      return n;
    }
    error("unknown identifier '" + t.text + "'");
  }

  Lexer lex_;
  std::size_t dim_;
};

}  // namespace

ast::NodePtr parse_expression(std::string_view text, std::size_t dim) {
  if (dim < 1 || dim > 16) fail(ErrorCode::invalid_argument, "dimension must be in [1, 16]");
  return Parser(text, dim).parse();
}

}  // namespace dunkl::detail

namespace dunkl {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

FunctionSpec parse_function_spec(std::string_view text) {
  FunctionSpec spec;
  bool have_body = false;
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  bool comment = false;
  for (char c : text) {
    if (comment) {
      if (c == '\n') comment = false;
      else continue;
    }
    if (c == '#') {
      comment = true;
      continue;
    }
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ';' || c == '\n') && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  items.push_back(cur);

  for (const auto& raw : items) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::parse, "function spec item '" + item + "' is not key=value");
    const std::string key = trim(std::string_view(item).substr(0, eq));
    const std::string value = trim(std::string_view(item).substr(eq + 1));
    if (key == "side") {
      spec.side = side_from_string(value);
    } else if (key == "body") {
      spec.body = value;
      have_body = true;
    } else if (key == "dim") {
      int d = 0;
      const auto res = std::from_chars(value.data(), value.data() + value.size(), d);
      if (res.ec != std::errc() || d < 1) fail(ErrorCode::parse, "dim must be a positive integer");
      spec.dim = static_cast<std::size_t>(d);
    } else if (key == "name") {
      spec.name = value;
    } else {
      fail(ErrorCode::parse, "unknown function spec key '" + key + "'");
    }
  }
  if (!have_body) fail(ErrorCode::parse, "function spec has no body");
  return spec;
}

FunctionExpr FunctionSpec::build(std::size_t default_dim) const {
  const std::size_t d = dim.value_or(default_dim);
  if (dim && *dim != default_dim)
    fail(ErrorCode::parse, "function spec dim " + std::to_string(*dim) + " does not match run dimension " +
                               std::to_string(default_dim));
  return FunctionExpr::parse(body, d, side);
}

}  // namespace dunkl
