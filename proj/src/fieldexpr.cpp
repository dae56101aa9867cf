#include "layerforge/fieldexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace layerforge {

namespace {
void check_finite(double x) {
  if (!std::isfinite(x)) throw EvalError("non-finite intermediate value");
}
}  // namespace

Jet2 Jet2::operator+(const Jet2& o) const {
  Jet2 r;
  r.v = v + o.v;
  for (int i = 0; i < 2; ++i) r.g[i] = g[i] + o.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = h[i] + o.h[i];
  return r;
}

Jet2 Jet2::operator-(const Jet2& o) const {
  Jet2 r;
  r.v = v - o.v;
  for (int i = 0; i < 2; ++i) r.g[i] = g[i] - o.g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = h[i] - o.h[i];
  return r;
}

Jet2 Jet2::operator*(const Jet2& o) const {
  Jet2 r;
  r.v = v * o.v;
  for (int i = 0; i < 2; ++i) r.g[i] = g[i] * o.v + v * o.g[i];
  r.h[0] = h[0] * o.v + 2.0 * g[0] * o.g[0] + v * o.h[0];
  r.h[1] = h[1] * o.v + g[0] * o.g[1] + g[1] * o.g[0] + v * o.h[1];
  r.h[2] = h[2] * o.v + 2.0 * g[1] * o.g[1] + v * o.h[2];
  return r;
}

Jet2 Jet2::operator/(const Jet2& o) const {
  if (o.v == 0.0) throw EvalError("division by zero");
  Jet2 r;
  r.v = v / o.v;
  for (int i = 0; i < 2; ++i) r.g[i] = (g[i] - r.v * o.g[i]) / o.v;
  r.h[0] = (h[0] - r.v * o.h[0] - 2.0 * r.g[0] * o.g[0]) / o.v;
  r.h[1] = (h[1] - r.v * o.h[1] - r.g[0] * o.g[1] - r.g[1] * o.g[0]) / o.v;
  r.h[2] = (h[2] - r.v * o.h[2] - 2.0 * r.g[1] * o.g[1]) / o.v;
  return r;
}

Jet2 Jet2::operator-() const {
  Jet2 r;
  r.v = -v;
  for (int i = 0; i < 2; ++i) r.g[i] = -g[i];
  for (int i = 0; i < 3; ++i) r.h[i] = -h[i];
  return r;
}

namespace detail {

enum class Kind { Const, Var, Neg, Fun, Add, Sub, Mul, Div, Pow };
enum class Fun { Sin, Cos, Exp, Log, Sqrt, Tanh };

struct Node {
  Kind kind;
  double value = 0.0;  // Const
  int var = 0;         // Var: 0 -> y1, 1 -> y2
  Fun fun = Fun::Sin;  // Fun
  std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = c;
  return n;
}

double eval_value(const Node& n, double y1, double y2);

Jet2 chain(const Jet2& a, double f, double fp, double fpp) {
  Jet2 r;
  r.v = f;
  for (int i = 0; i < 2; ++i) r.g[i] = fp * a.g[i];
  r.h[0] = fp * a.h[0] + fpp * a.g[0] * a.g[0];
  r.h[1] = fp * a.h[1] + fpp * a.g[0] * a.g[1];
  r.h[2] = fp * a.h[2] + fpp * a.g[1] * a.g[1];
  return r;
}

Jet2 eval_fun(Fun f, const Jet2& a) {
  switch (f) {
    case Fun::Sin: return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
    case Fun::Cos: return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
    case Fun::Exp: {
      const double e = std::exp(a.v);
      check_finite(e);
      return chain(a, e, e, e);
    }
    case Fun::Log:
      if (a.v <= 0.0) throw EvalError("log of non-positive argument");
      return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
    case Fun::Sqrt: {
      if (a.v < 0.0) throw EvalError("sqrt of negative argument");
      if (a.v == 0.0) throw EvalError("sqrt derivative singular at zero");
      const double s = std::sqrt(a.v);
      return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
    }
    case Fun::Tanh: {
      const double t = std::tanh(a.v);
      const double sech2 = 1.0 - t * t;
      return chain(a, t, sech2, -2.0 * t * sech2);
    }
  }
  throw EvalError("unreachable");
}

// Integer powers keep the power rule so that negative bases are allowed.
Jet2 int_pow(const Jet2& a, long n) {
  if (n == 0) return Jet2{1.0, {0.0, 0.0}, {0.0, 0.0, 0.0}};
  if (n < 0) {
    Jet2 one{1.0, {0.0, 0.0}, {0.0, 0.0, 0.0}};
    return one / int_pow(a, -n);
  }
  const double f = std::pow(a.v, double(n));
  const double fp = double(n) * std::pow(a.v, double(n - 1));
  const double fpp = double(n) * double(n - 1) * (n >= 2 ? std::pow(a.v, double(n - 2)) : 0.0);
  return chain(a, f, fp, fpp);
}

Jet2 eval_jet_node(const Node& n, double y1, double y2) {
  switch (n.kind) {
    case Kind::Const: return Jet2{n.value, {0.0, 0.0}, {0.0, 0.0, 0.0}};
    case Kind::Var: {
      Jet2 r;
      r.v = n.var == 0 ? y1 : y2;
      r.g[n.var] = 1.0;
      return r;
    }
    case Kind::Neg: return -eval_jet_node(*n.a, y1, y2);
    case Kind::Fun: return eval_fun(n.fun, eval_jet_node(*n.a, y1, y2));
    case Kind::Add: return eval_jet_node(*n.a, y1, y2) + eval_jet_node(*n.b, y1, y2);
    case Kind::Sub: return eval_jet_node(*n.a, y1, y2) - eval_jet_node(*n.b, y1, y2);
    case Kind::Mul: return eval_jet_node(*n.a, y1, y2) * eval_jet_node(*n.b, y1, y2);
    case Kind::Div: return eval_jet_node(*n.a, y1, y2) / eval_jet_node(*n.b, y1, y2);
    case Kind::Pow: {
      Jet2 a = eval_jet_node(*n.a, y1, y2);
      if (n.b->kind == Kind::Const) {
        const double e = n.b->value;
        if (e == std::floor(e) && std::abs(e) < 1e9) return int_pow(a, (long)e);
        if (a.v < 0.0) throw EvalError("non-integer power of a negative base");
        if (a.v == 0.0) throw EvalError("non-integer power at zero base");
        const double f = std::pow(a.v, e);
        return chain(a, f, e * f / a.v, e * (e - 1.0) * f / (a.v * a.v));
      }
      if (a.v <= 0.0) throw EvalError("power of a non-positive base");
      Jet2 b = eval_jet_node(*n.b, y1, y2);
      return eval_fun(Fun::Exp, b * eval_fun(Fun::Log, a));
    }
  }
  throw EvalError("unreachable");
}

double eval_value(const Node& n, double y1, double y2) {
  // value-only path shares the jet rules' domain checks
  return eval_jet_node(n, y1, y2).v;
}

const char* fun_name(Fun f) {
  switch (f) {
    case Fun::Sin: return "sin";
    case Fun::Cos: return "cos";
    case Fun::Exp: return "exp";
    case Fun::Log: return "log";
    case Fun::Sqrt: return "sqrt";
    case Fun::Tanh: return "tanh";
  }
  return "?";
}

void print(const Node& n, std::ostream& os) {
  switch (n.kind) {
    case Kind::Const: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n.value;
      os << tmp.str();
      return;
    }
    case Kind::Var: os << (n.var == 0 ? "y1" : "y2"); return;
    case Kind::Neg: os << "(-"; print(*n.a, os); os << ")"; return;
    case Kind::Fun: os << fun_name(n.fun) << "("; print(*n.a, os); os << ")"; return;
    case Kind::Add: os << "("; print(*n.a, os); os << " + "; print(*n.b, os); os << ")"; return;
    case Kind::Sub: os << "("; print(*n.a, os); os << " - "; print(*n.b, os); os << ")"; return;
    case Kind::Mul: os << "("; print(*n.a, os); os << " * "; print(*n.b, os); os << ")"; return;
    case Kind::Div: os << "("; print(*n.a, os); os << " / "; print(*n.b, os); os << ")"; return;
    case Kind::Pow: os << "("; print(*n.a, os); os << "^"; print(*n.b, os); os << ")"; return;
  }
}

bool same(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Const: return a.value == b.value;
    case Kind::Var: return a.var == b.var;
    case Kind::Neg: return same(*a.a, *b.a);
    case Kind::Fun: return a.fun == b.fun && same(*a.a, *b.a);
    default: return same(*a.a, *b.a) && same(*a.b, *b.b);
  }
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        lhs = binary(Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = binary(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        lhs = binary(Kind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = binary(Kind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_ws();
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::Neg;
      n->a = factor();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    skip_ws();
    if (accept('^')) return binary(Kind::Pow, base, factor());  // right assoc
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      skip_ws();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit((unsigned char)c) || c == '.') return number();
    if (std::isalpha((unsigned char)c)) return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* start = src_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) throw ParseError("malformed number", pos_);
    pos_ += std::size_t(end - start);
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
      ++pos_;
    const std::string name = src_.substr(start, pos_ - start);
    if (name == "y1" || name == "y2") {
      auto n = std::make_shared<Node>();
      n->kind = Kind::Var;
      n->var = name == "y1" ? 0 : 1;
      return n;
    }
    static const std::pair<const char*, Fun> funs[] = {
        {"sin", Fun::Sin}, {"cos", Fun::Cos},   {"exp", Fun::Exp},
        {"log", Fun::Log}, {"sqrt", Fun::Sqrt}, {"tanh", Fun::Tanh}};
    for (const auto& [fname, f] : funs) {
      if (name == fname) {
        skip_ws();
        if (!accept('(')) throw ParseError("expected '(' after function name", pos_);
        auto n = std::make_shared<Node>();
        n->kind = Kind::Fun;
        n->fun = f;
        n->a = expr();
        skip_ws();
        if (!accept(')')) throw ParseError("unbalanced parenthesis", pos_);
        return n;
      }
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  NodePtr binary(Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
  }
  bool accept(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

double Expression::eval(double y1, double y2) const {
  if (!root_) throw EvalError("empty expression");
  return detail::eval_value(*root_, y1, y2);
}

Jet2 Expression::eval_jet(double y1, double y2) const {
  if (!root_) throw EvalError("empty expression");
  Jet2 j = detail::eval_jet_node(*root_, y1, y2);
  check_finite(j.v);
  for (double x : j.g) check_finite(x);
  for (double x : j.h) check_finite(x);
  return j;
}

std::string Expression::pretty() const {
  if (!root_) return "";
  std::ostringstream os;
  detail::print(*root_, os);
  return os.str();
}

bool Expression::same_tree(const Expression& o) const {
  if (!root_ || !o.root_) return root_ == o.root_;
  return detail::same(*root_, *o.root_);
}

Expression Expression::constant(double c) {
  Expression e;
  e.root_ = detail::make_const(c);
  return e;
}

Expression parse(const std::string& source) {
  Expression e;
  e.root_ = detail::Parser(source).run();
  return e;
}

DirectionalJet directional_jet(const Expression& e, double y1, double y2,
                               double d1, double d2) {
  const Jet2 j = e.eval_jet(y1, y2);
  DirectionalJet r;
  r.v = j.v;
  r.d1 = j.g[0] * d1 + j.g[1] * d2;
  r.d2 = j.h[0] * d1 * d1 + 2.0 * j.h[1] * d1 * d2 + j.h[2] * d2 * d2;
  return r;
}

}  // namespace layerforge
