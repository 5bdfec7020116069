#include "weil/smooth_map.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace weil {

namespace dag {

namespace {
ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }
bool is_const(const ExprPtr& e, const Rational* q = nullptr) {
  return e->kind == Expr::Kind::Constant && (!q || e->value == *q);
}
}  // namespace

ExprPtr constant(const Rational& q) {
  Expr e;
  e.kind = Expr::Kind::Constant;
  e.value = q;
  return node(std::move(e));
}

ExprPtr var(int i) {
  if (i < 0) throw MalformedMap("negative variable index");
  Expr e;
  e.kind = Expr::Kind::Var;
  e.var = i;
  return node(std::move(e));
}

ExprPtr add(ExprPtr a, ExprPtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value + b->value);
  Rational zero = 0;
  if (is_const(a, &zero)) return b;
  if (is_const(b, &zero)) return a;
  Expr e;
  e.kind = Expr::Kind::Add;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}

ExprPtr neg(ExprPtr a) {
  if (is_const(a)) return constant(-a->value);
  Expr e;
  e.kind = Expr::Kind::Neg;
  e.a = std::move(a);
  return node(std::move(e));
}

ExprPtr sub(ExprPtr a, ExprPtr b) { return add(std::move(a), neg(std::move(b))); }

ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value * b->value);
  Rational zero = 0, one = 1;
  if (is_const(a, &zero) || is_const(b, &zero)) return constant(zero);
  if (is_const(a, &one)) return b;
  if (is_const(b, &one)) return a;
  Expr e;
  e.kind = Expr::Kind::Mul;
  e.a = std::move(a);
  e.b = std::move(b);
  return node(std::move(e));
}

ExprPtr scale(const Rational& q, ExprPtr a) {
  if (is_const(a)) return constant(q * a->value);
  if (q == 0) return constant(0);
  if (q == 1) return a;
  Expr e;
  e.kind = Expr::Kind::Scale;
  e.value = q;
  e.a = std::move(a);
  return node(std::move(e));
}

namespace {
ExprPtr primitive(Prim p, ExprPtr a, int exponent = 0) {
  Expr e;
  e.kind = Expr::Kind::Primitive;
  e.prim = p;
  e.exponent = exponent;
  e.a = std::move(a);
  return node(std::move(e));
}
}  // namespace

ExprPtr exp(ExprPtr a) { return primitive(Prim::Exp, std::move(a)); }
ExprPtr sin(ExprPtr a) { return primitive(Prim::Sin, std::move(a)); }
ExprPtr cos(ExprPtr a) { return primitive(Prim::Cos, std::move(a)); }
ExprPtr powi(ExprPtr a, int n) {
  if (n < 0) throw MalformedMap("negative integer power");
  return primitive(Prim::PowInt, std::move(a), n);
}

}  // namespace dag

namespace {

int max_var(const Expr* e) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return -1;
    case Expr::Kind::Var:
      return e->var;
    default: {
      int m = e->a ? max_var(e->a.get()) : -1;
      if (e->b) m = std::max(m, max_var(e->b.get()));
      return m;
    }
  }
}

ExprPtr substitute(const Expr* e, const std::vector<ExprPtr>& args,
                   std::unordered_map<const Expr*, ExprPtr>& memo) {
  auto it = memo.find(e);
  if (it != memo.end()) return it->second;
  ExprPtr r;
  switch (e->kind) {
    case Expr::Kind::Constant:
      r = dag::constant(e->value);
      break;
    case Expr::Kind::Var:
      r = args[e->var];
      break;
    case Expr::Kind::Add:
      r = dag::add(substitute(e->a.get(), args, memo), substitute(e->b.get(), args, memo));
      break;
    case Expr::Kind::Neg:
      r = dag::neg(substitute(e->a.get(), args, memo));
      break;
    case Expr::Kind::Mul:
      r = dag::mul(substitute(e->a.get(), args, memo), substitute(e->b.get(), args, memo));
      break;
    case Expr::Kind::Scale:
      r = dag::scale(e->value, substitute(e->a.get(), args, memo));
      break;
    case Expr::Kind::Primitive: {
      ExprPtr inner = substitute(e->a.get(), args, memo);
      Expr n;
      n.kind = Expr::Kind::Primitive;
      n.prim = e->prim;
      n.exponent = e->exponent;
      n.a = std::move(inner);
      r = std::make_shared<Expr>(std::move(n));
      break;
    }
  }
  memo.emplace(e, r);
  return r;
}

}  // namespace

SmoothMap::SmoothMap(int input_dim, std::vector<ExprPtr> outputs)
    : m_(input_dim), out_(std::move(outputs)) {
  if (m_ < 0) throw MalformedMap("negative input dimension");
  if (out_.empty()) throw MalformedMap("map needs at least one output");
  for (const ExprPtr& o : out_) {
    if (!o) throw MalformedMap("null output expression");
    if (max_var(o.get()) >= m_) throw MalformedMap("free variable beyond the input dimension");
  }
}

SmoothMap SmoothMap::identity(int m) {
  std::vector<ExprPtr> outs;
  for (int i = 0; i < m; ++i) outs.push_back(dag::var(i));
  return SmoothMap(m, std::move(outs));
}

SmoothMap SmoothMap::constant_map(int m, const std::vector<Rational>& values) {
  std::vector<ExprPtr> outs;
  for (const Rational& v : values) outs.push_back(dag::constant(v));
  return SmoothMap(m, std::move(outs));
}

SmoothMap SmoothMap::compose_after(const SmoothMap& inner) const {
  if (inner.output_dim() != m_)
    throw DimensionMismatch("composition arity mismatch");
  std::unordered_map<const Expr*, ExprPtr> memo;
  std::vector<ExprPtr> outs;
  for (const ExprPtr& o : out_) outs.push_back(substitute(o.get(), inner.out_, memo));
  return SmoothMap(inner.m_, std::move(outs));
}

// ---- text form --------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  int line = 1, col = 1;

  void advance() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) advance();
  }
  [[noreturn]] void fail(const std::string& why) const { throw ParseError(why, line, col); }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input");
    return s[i];
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  std::string token() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
           s[i] != ')')
      advance();
    if (start == i) fail("expected a token");
    return s.substr(start, i - start);
  }
};

Rational parse_rational_token(Cursor& c) {
  std::string t = c.token();
  try {
    auto slash = t.find('/');
    if (slash != std::string::npos)
      return Rational(t);  // "a/b" handled by gmp directly
    auto dot = t.find('.');
    if (dot != std::string::npos) {
      // decimal literal -> exact rational
      std::string digits = t.substr(0, dot) + t.substr(dot + 1);
      Rational num(digits);
      Rational den = 1;
      for (std::size_t k = dot + 1; k < t.size(); ++k) den *= 10;
      return num / den;
    }
    return Rational(t);
  } catch (const std::exception&) {
    c.fail("malformed number '" + t + "'");
  }
}

int parse_int_token(Cursor& c) {
  std::string t = c.token();
  try {
    return std::stoi(t);
  } catch (const std::exception&) {
    c.fail("malformed integer '" + t + "'");
  }
}

ExprPtr parse_expr(Cursor& c) {
  if (c.peek() != '(') {
    // bare number shorthand
    return dag::constant(parse_rational_token(c));
  }
  c.expect('(');
  std::string head = c.token();
  ExprPtr r;
  if (head == "const") {
    r = dag::constant(parse_rational_token(c));
  } else if (head == "var") {
    r = dag::var(parse_int_token(c));
  } else if (head == "neg") {
    r = dag::neg(parse_expr(c));
  } else if (head == "scale") {
    Rational q = parse_rational_token(c);
    r = dag::scale(q, parse_expr(c));
  } else if (head == "add" || head == "mul" || head == "sub") {
    std::vector<ExprPtr> args;
    while (c.peek() != ')') args.push_back(parse_expr(c));
    if (args.size() < 2) c.fail(head + " needs at least two arguments");
    r = args[0];
    for (std::size_t k = 1; k < args.size(); ++k)
      r = head == "add"   ? dag::add(r, args[k])
          : head == "mul" ? dag::mul(r, args[k])
                          : dag::sub(r, args[k]);
  } else if (head == "exp") {
    r = dag::exp(parse_expr(c));
  } else if (head == "sin") {
    r = dag::sin(parse_expr(c));
  } else if (head == "cos") {
    r = dag::cos(parse_expr(c));
  } else if (head == "pow") {
    ExprPtr base = parse_expr(c);
    r = dag::powi(base, parse_int_token(c));
  } else {
    c.fail("unknown form '" + head + "'");
  }
  c.expect(')');
  return r;
}

void print_expr(std::ostream& os, const Expr* e) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      os << "(const " << e->value << ")";
      break;
    case Expr::Kind::Var:
      os << "(var " << e->var << ")";
      break;
    case Expr::Kind::Add:
      os << "(add ";
      print_expr(os, e->a.get());
      os << " ";
      print_expr(os, e->b.get());
      os << ")";
      break;
    case Expr::Kind::Neg:
      os << "(neg ";
      print_expr(os, e->a.get());
      os << ")";
      break;
    case Expr::Kind::Mul:
      os << "(mul ";
      print_expr(os, e->a.get());
      os << " ";
      print_expr(os, e->b.get());
      os << ")";
      break;
    case Expr::Kind::Scale:
      os << "(scale " << e->value << " ";
      print_expr(os, e->a.get());
      os << ")";
      break;
    case Expr::Kind::Primitive:
      switch (e->prim) {
        case Prim::Exp:
          os << "(exp ";
          break;
        case Prim::Sin:
          os << "(sin ";
          break;
        case Prim::Cos:
          os << "(cos ";
          break;
        case Prim::PowInt:
          os << "(pow ";
          break;
      }
      print_expr(os, e->a.get());
      if (e->prim == Prim::PowInt) os << " " << e->exponent;
      os << ")";
      break;
  }
}

}  // namespace

SmoothMap parse_smooth_map(const std::string& text, int input_dim) {
  Cursor c{text};
  c.expect('(');
  std::string head = c.token();
  if (head != "vec") c.fail("map must start with (vec ...)");
  std::vector<ExprPtr> outs;
  while (c.peek() != ')') outs.push_back(parse_expr(c));
  c.expect(')');
  if (!c.eof()) c.fail("trailing input after the map");
  return SmoothMap(input_dim, std::move(outs));
}

std::string to_text(const SmoothMap& map) {
  std::ostringstream os;
  os << "(vec";
  for (const ExprPtr& o : map.outputs()) {
    os << " ";
    print_expr(os, o.get());
  }
  os << ")";
  return os.str();
}

}  // namespace weil
