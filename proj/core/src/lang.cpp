#include "canonq/lang.hpp"

#include <cctype>
#include <optional>
#include <ostream>
#include <sstream>

#include "canonq/errors.hpp"

namespace canonq {

// ================================================================ lexer

namespace {

enum class Tok { Number, Word, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Rational number{0};
  bool integral = true;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) advance_into(t);
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance_into(t);
        t.kind = Tok::Word;
      } else if (src_.substr(pos_, 3) == "\xE2\x88\x92") {  // U+2212 MINUS SIGN
        t.kind = Tok::Minus;
        t.text = "-";
        pos_ += 3;
        ++column_;
      } else {
        switch (c) {
          case '+': t.kind = Tok::Plus; break;
          case '-': t.kind = Tok::Minus; break;
          case '*': t.kind = Tok::Star; break;
          case '^': t.kind = Tok::Caret; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
        }
        advance_into(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void advance_into(Token& t) {
    t.text.push_back(src_[pos_]);
    ++pos_;
    ++column_;
  }

  void lex_number(Token& t) {
    t.kind = Tok::Number;
    std::string num;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      num.push_back(src_[pos_]);
      advance_into(t);
    }
    std::string den;
    if (pos_ + 1 < src_.size() && src_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      advance_into(t);
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        den.push_back(src_[pos_]);
        advance_into(t);
      }
    } else if (pos_ < src_.size() && src_[pos_] == '/') {
      throw ParseError("expected denominator after '/'", line_, column_);
    }
    if (den.empty()) {
      t.number = Rational(mpz_class(num));
    } else {
      mpz_class d(den);
      if (d == 0) throw ParseError("zero denominator", t.line, t.column);
      t.number = Rational(mpz_class(num), d);
      t.number.canonicalize();
      t.integral = false;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct Ident {
  Expr::Var var;
  std::optional<int> index;  // one-based as written
};

std::optional<Ident> split_ident(const std::string& word) {
  std::size_t split = 0;
  while (split < word.size() && std::isalpha(static_cast<unsigned char>(word[split]))) ++split;
  const std::string name = word.substr(0, split);
  const std::string digits = word.substr(split);
  Ident id{Expr::Var::Q, std::nullopt};
  if (name == "q") id.var = Expr::Var::Q;
  else if (name == "p") id.var = Expr::Var::P;
  else if (name == "Dq") id.var = Expr::Var::DQ;
  else if (name == "Dp") id.var = Expr::Var::DP;
  else return std::nullopt;
  if (!digits.empty()) {
    if (digits.size() > 6) return std::nullopt;
    id.index = std::stoi(digits);
  }
  return id;
}

// ================================================================ parser

class Parser {
 public:
  Parser(std::vector<Token> tokens, Context context, int n)
      : tokens_(std::move(tokens)), context_(context), n_(n) {}

  Expr run() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.kind == Tok::End ? msg + " (end of input)" : msg, t.line, t.column);
  }

  static Expr node(Expr::Kind kind, const Token& at) {
    Expr e;
    e.kind = kind;
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = next();
      Expr e = node(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(term());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (peek().kind == Tok::Star) {
      const Token& op = next();
      Expr e = node(Expr::Kind::Mul, op);
      e.children.push_back(std::move(lhs));
      e.children.push_back(factor());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr factor() {
    if (peek().kind == Tok::Minus) {
      const Token& op = next();
      Expr e = node(Expr::Kind::Neg, op);
      e.children.push_back(factor());
      return e;
    }
    Expr base = atom();
    if (peek().kind == Tok::Caret) {
      const Token& op = next();
      const Token& ex = peek();
      if (ex.kind != Tok::Number || !ex.integral || ex.number > 1000)
        fail("exponent must be a nonnegative integer literal");
      next();
      Expr e = node(Expr::Kind::Pow, op);
      e.exponent = static_cast<unsigned>(ex.number.get_num().get_ui());
      e.children.push_back(std::move(base));
      return e;
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        Expr e = node(Expr::Kind::Number, t);
        e.value = t.number;
        return e;
      }
      case Tok::LParen: {
        next();
        Expr inner = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return inner;
      }
      case Tok::Word: return word();
      default: fail(t.kind == Tok::End ? "expected an operand" : "unexpected '" + t.text + "'");
    }
  }

  Expr word() {
    const Token& t = next();
    if (t.text == "i") return node(Expr::Kind::ImaginaryUnit, t);
    if (t.text == "hbar") return node(Expr::Kind::Hbar, t);
    auto id = split_ident(t.text);
    if (!id) throw ParseError("unknown variable '" + t.text + "'", t.line, t.column);
    if (context_ == Context::Commutative && (id->var == Expr::Var::DQ || id->var == Expr::Var::DP))
      throw ParseError("derivative symbol '" + t.text + "' outside operator context", t.line, t.column);
    int index = 0;
    if (id->index) {
      if (*id->index < 1 || *id->index > n_)
        throw ParseError("unknown variable '" + t.text + "' (n = " + std::to_string(n_) + ")", t.line,
                         t.column);
      index = *id->index - 1;
    } else if (n_ != 1) {
      throw ParseError("bare '" + t.text + "' needs an index when n > 1", t.line, t.column);
    }
    Expr e = node(Expr::Kind::Variable, t);
    e.var = id->var;
    e.index = index;
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Context context_;
  int n_;
};

}  // namespace

Expr parse(std::string_view src, Context context, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return Parser(Lexer(src).run(), context, n).run();
}

int infer_dof(std::string_view src) {
  int n = 1;
  std::size_t pos = 0;
  while (pos < src.size()) {
    if (!std::isalpha(static_cast<unsigned char>(src[pos]))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < src.size() && std::isalpha(static_cast<unsigned char>(src[end]))) ++end;
    while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
    if (auto id = split_ident(std::string(src.substr(pos, end - pos))); id && id->index)
      n = std::max(n, *id->index);
    pos = end;
  }
  return n;
}

// ================================================================ elaboration

namespace {

template <class Value, class Leaf>
Value elaborate(const Expr& e, const Value& unit, const Leaf& leaf) {
  switch (e.kind) {
    case Expr::Kind::Add: return elaborate(e.children[0], unit, leaf) + elaborate(e.children[1], unit, leaf);
    case Expr::Kind::Sub: return elaborate(e.children[0], unit, leaf) - elaborate(e.children[1], unit, leaf);
    case Expr::Kind::Mul: return elaborate(e.children[0], unit, leaf) * elaborate(e.children[1], unit, leaf);
    case Expr::Kind::Neg: return -elaborate(e.children[0], unit, leaf);
    case Expr::Kind::Pow: {
      const Value base = elaborate(e.children[0], unit, leaf);
      Value out = unit;
      for (unsigned k = 0; k < e.exponent; ++k) out = out * base;
      return out;
    }
    case Expr::Kind::Number: return unit * HbarPoly(GaussRational(e.value));
    case Expr::Kind::ImaginaryUnit: return unit * HbarPoly(GaussRational::i());
    case Expr::Kind::Hbar: return unit * HbarPoly::term(1);
    case Expr::Kind::Variable: return leaf(e);
  }
  return unit;
}

}  // namespace

PhasePoly elaborate_poly(const Expr& e, int n) {
  return elaborate(e, PhasePoly::constant(n, 1), [n](const Expr& v) {
    switch (v.var) {
      case Expr::Var::Q: return PhasePoly::q(n, v.index);
      case Expr::Var::P: return PhasePoly::p(n, v.index);
      default: throw ParseError("derivative symbol outside operator context", v.line, v.column);
    }
  });
}

WeylOp elaborate_operator(const Expr& e, int n, OperatorSpace space) {
  const int m = space == OperatorSpace::Schrodinger ? n : 2 * n;
  return elaborate(e, WeylOp::identity(m, space), [n, m, space](const Expr& v) {
    if (space == OperatorSpace::Schrodinger) {
      switch (v.var) {
        case Expr::Var::Q: return WeylOp::q_hat(n, v.index);
        case Expr::Var::P: return WeylOp::p_hat(n, v.index);
        case Expr::Var::DQ: return WeylOp::derivative(n, v.index);
        case Expr::Var::DP:
          throw ParseError("unknown variable 'Dp' for Schrodinger operators", v.line, v.column);
      }
    }
    switch (v.var) {
      case Expr::Var::Q: return WeylOp::position(m, v.index, space);
      case Expr::Var::P: return WeylOp::position(m, n + v.index, space);
      case Expr::Var::DQ: return WeylOp::derivative(m, v.index, space);
      case Expr::Var::DP: return WeylOp::derivative(m, n + v.index, space);
    }
    return WeylOp::identity(m, space);
  });
}

PhasePoly parse_poly(std::string_view src, int n) {
  return elaborate_poly(parse(src, Context::Commutative, n), n);
}

WeylOp parse_operator(std::string_view src, int n, OperatorSpace space) {
  return elaborate_operator(parse(src, Context::Operator, n), n, space);
}

// ================================================================ printing

namespace {

std::string var_name(const char* base, int index, int n) {
  return n == 1 ? std::string(base) : std::string(base) + std::to_string(index + 1);
}

std::string power_factor(const std::string& name, unsigned k) {
  return k == 1 ? name : name + "^" + std::to_string(k);
}

std::string magnitude_text(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : "(" + r.get_str() + ")";
}

/// Collects signed scalar pieces into "a + b - c" form.
class SumWriter {
 public:
  void piece(const Rational& value, bool imaginary, unsigned hbar_power,
             const std::vector<std::string>& vars) {
    if (sgn(value) == 0) return;
    const bool negative = sgn(value) < 0;
    const Rational magnitude = abs(value);
    std::vector<std::string> factors;
    if (magnitude != 1 || (!imaginary && hbar_power == 0 && vars.empty()))
      factors.push_back(magnitude_text(magnitude));
    if (imaginary) factors.emplace_back("i");
    if (hbar_power > 0) factors.push_back(power_factor("hbar", hbar_power));
    factors.insert(factors.end(), vars.begin(), vars.end());

    if (empty_) out_ << (negative ? "-" : "");
    else out_ << (negative ? " - " : " + ");
    for (std::size_t k = 0; k < factors.size(); ++k) out_ << (k ? "*" : "") << factors[k];
    empty_ = false;
  }

  void coefficient(const HbarPoly& c, const std::vector<std::string>& vars) {
    for (const auto& [k, g] : c.coefficients()) {
      piece(g.re(), false, k, vars);
      piece(g.im(), true, k, vars);
    }
  }

  std::string str() const { return empty_ ? "0" : out_.str(); }

 private:
  std::ostringstream out_;
  bool empty_ = true;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    case Expr::Kind::Number: return sgn(e.value) < 0 ? 0 : 5;
    default: return 5;
  }
}

std::string print_expr(const Expr& e, int n);

std::string wrap_if(const Expr& e, int n, bool wrap) {
  std::string s = print_expr(e, n);
  return wrap ? "(" + s + ")" : s;
}

std::string print_expr(const Expr& e, int n) {
  switch (e.kind) {
    case Expr::Kind::Number: return sgn(e.value) < 0 ? "(-" + Rational(-e.value).get_str() + ")" : e.value.get_str();
    case Expr::Kind::ImaginaryUnit: return "i";
    case Expr::Kind::Hbar: return "hbar";
    case Expr::Kind::Variable: {
      static const char* names[] = {"q", "p", "Dq", "Dp"};
      return var_name(names[static_cast<int>(e.var)], e.index, n);
    }
    case Expr::Kind::Add:
      return print_expr(e.children[0], n) + " + " + wrap_if(e.children[1], n, precedence(e.children[1]) < 1);
    case Expr::Kind::Sub:
      return print_expr(e.children[0], n) + " - " + wrap_if(e.children[1], n, precedence(e.children[1]) <= 1);
    case Expr::Kind::Mul:
      return wrap_if(e.children[0], n, precedence(e.children[0]) < 2) + "*" +
             wrap_if(e.children[1], n, precedence(e.children[1]) < 2);
    case Expr::Kind::Neg: return "-" + wrap_if(e.children[0], n, precedence(e.children[0]) < 3);
    case Expr::Kind::Pow:
      return wrap_if(e.children[0], n, precedence(e.children[0]) < 5) + "^" + std::to_string(e.exponent);
  }
  return "";
}

std::vector<std::string> monomial_factors(const Exponents& e, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i)
    if (e[i]) out.push_back(power_factor(var_name("q", i, n), e[i]));
  for (int i = 0; i < n; ++i)
    if (e[n + i]) out.push_back(power_factor(var_name("p", i, n), e[n + i]));
  return out;
}

}  // namespace

std::string to_string(const Expr& e, int n) { return print_expr(e, n); }

std::string to_string(const GaussRational& c) {
  SumWriter w;
  w.piece(c.re(), false, 0, {});
  w.piece(c.im(), true, 0, {});
  return w.str();
}

std::string to_string(const HbarPoly& c) {
  SumWriter w;
  w.coefficient(c, {});
  return w.str();
}

std::string to_string(const PhasePoly& f) {
  SumWriter w;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
    w.coefficient(it->second, monomial_factors(it->first, f.n()));
  return w.str();
}

std::string to_string(const WeylOp& a, OperatorStyle style) {
  const int m = a.positions();
  const bool schrodinger = a.space() == OperatorSpace::Schrodinger;
  const int n = schrodinger ? m : m / 2;
  const bool momentum = schrodinger && style == OperatorStyle::Momentum;

  SumWriter w;
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& word = it->first;
    HbarPoly coeff = it->second;
    unsigned order = 0;
    for (int i = 0; i < m; ++i) order += word[m + i];
    const bool as_momentum = momentum && coeff.min_power() >= static_cast<int>(order);
    if (as_momentum) {
      // c d^b = c / (-i hbar)^|b| * p^b
      coeff = coeff.divide_by_hbar(order);
      for (unsigned k = 0; k < order; ++k) coeff *= GaussRational::i();
    }

    std::vector<std::string> factors;
    if (schrodinger) {
      for (int i = 0; i < m; ++i)
        if (word[i]) factors.push_back(power_factor(var_name("q", i, n), word[i]));
      for (int i = 0; i < m; ++i)
        if (word[m + i])
          factors.push_back(power_factor(var_name(as_momentum ? "p" : "Dq", i, n), word[m + i]));
    } else {
      for (int i = 0; i < m; ++i)
        if (word[i]) factors.push_back(power_factor(var_name(i < n ? "q" : "p", i % n, n), word[i]));
      for (int i = 0; i < m; ++i)
        if (word[m + i]) factors.push_back(power_factor(var_name(i < n ? "Dq" : "Dp", i % n, n), word[m + i]));
    }
    w.coefficient(coeff, factors);
  }
  return w.str();
}

std::ostream& operator<<(std::ostream& os, const GaussRational& c) { return os << to_string(c); }
std::ostream& operator<<(std::ostream& os, const HbarPoly& c) { return os << to_string(c); }
std::ostream& operator<<(std::ostream& os, const PhasePoly& f) { return os << to_string(f); }
std::ostream& operator<<(std::ostream& os, const WeylOp& a) { return os << to_string(a); }

}  // namespace canonq
