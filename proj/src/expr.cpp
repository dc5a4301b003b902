#include "gwlab/expr.hpp"

#include <cctype>
#include <optional>

namespace gwlab {

namespace {

struct Token {
  enum Kind { Int, Ident, Punct, End } kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  bool accept(const std::string& text) {
    if (tok_.kind != Token::End && tok_.text == text) {
      advance();
      return true;
    }
    return false;
  }
  void expect(const std::string& text) {
    if (!accept(text))
      fail(Errc::SyntaxError,
           "expected '" + text + "' at position " + std::to_string(tok_.pos) + " in '" + s_ + "'");
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(Errc::SyntaxError, what + " at position " + std::to_string(tok_.pos) + " in '" + s_ + "'");
  }
  bool at_end() const { return tok_.kind == Token::End; }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::End, "", i_};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {Token::Int, s_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])))) ++j;
      tok_ = {Token::Ident, s_.substr(i_, j - i_), i_};
      i_ = j;
      return;
    }
    tok_ = {Token::Punct, std::string(1, c), i_};
    ++i_;
  }
  std::string s_;
  size_t i_ = 0;
  Token tok_{Token::End, "", 0};
};

// ---- field / element parsing ----

FieldElem parse_elem_expr(Lexer& lx, const TowerPtr& t);

FieldElem parse_elem_atom(Lexer& lx, const TowerPtr& t) {
  const Token& tok = lx.peek();
  if (tok.kind == Token::Int) {
    mpq_class num(lx.take().text);
    if (lx.accept("/")) {
      const Token& d = lx.peek();
      if (d.kind != Token::Int) lx.error("expected denominator");
      mpq_class den(lx.take().text);
      if (den == 0) lx.error("zero denominator");
      num /= den;
    }
    return FieldElem::from_rational(t, num);
  }
  if (tok.kind == Token::Ident && tok.text.rfind("sqrt", 0) == 0) {
    std::string name = lx.take().text;
    int step = t->height();
    if (name.size() > 4) step = std::stoi(name.substr(4));
    if (step < 1 || step > t->height()) lx.error("no adjoined step '" + name + "'");
    TowerPtr at = t;
    while (at->height() > step) at = at->lower();
    return FieldElem::sqrt_gen(at).lift_to(t);
  }
  if (tok.text == "(") {
    lx.take();
    FieldElem e = parse_elem_expr(lx, t);
    lx.expect(")");
    return e;
  }
  if (tok.text == "-") {
    lx.take();
    return -parse_elem_atom(lx, t);
  }
  lx.error("expected element");
}

FieldElem parse_elem_factor(Lexer& lx, const TowerPtr& t) {
  FieldElem e = parse_elem_atom(lx, t);
  for (;;) {
    if (lx.accept("*"))
      e = e * parse_elem_atom(lx, t);
    else if (lx.accept("/"))
      e = e / parse_elem_atom(lx, t);
    else
      return e;
  }
}

FieldElem parse_elem_expr(Lexer& lx, const TowerPtr& t) {
  bool neg = false;
  while (lx.peek().text == "-" || lx.peek().text == "+") neg ^= (lx.take().text == "-");
  FieldElem e = parse_elem_factor(lx, t);
  if (neg) e = -e;
  for (;;) {
    if (lx.accept("+"))
      e = e + parse_elem_factor(lx, t);
    else if (lx.accept("-"))
      e = e - parse_elem_factor(lx, t);
    else
      return e;
  }
}

TowerPtr parse_field_tokens(Lexer& lx) {
  const Token& tok = lx.peek();
  if (tok.kind != Token::Ident) lx.error("expected field name");
  std::string name = lx.take().text;
  TowerPtr t;
  if (name == "Q") {
    t = FieldTower::make_base(BaseField::rationals());
  } else if (name.size() > 1 && name[0] == 'F') {
    long p;
    try {
      p = std::stol(name.substr(1));
    } catch (...) {
      fail(Errc::UnknownField, "unknown field '" + name + "'");
    }
    t = FieldTower::make_base(BaseField::prime_field(p));
  } else {
    fail(Errc::UnknownField, "unknown field '" + name + "'");
  }
  while (lx.peek().text == "[") {
    lx.take();
    if (!lx.accept("sqrt")) lx.error("expected 'sqrt'");
    FieldElem d = parse_elem_expr(lx, t);
    lx.expect("]");
    t = FieldTower::extend(t, d);
  }
  return t;
}

// ---- GW / group-ring expression parsing ----

struct GrCtx {
  TowerPtr tower;
  int vars;
};

GRElem parse_gr_expr(Lexer& lx, const GrCtx& ctx);

GRElem parse_gr_atom(Lexer& lx, const GrCtx& ctx) {
  const Token& tok = lx.peek();
  const TowerPtr& t = ctx.tower;
  if (tok.text == "(") {
    lx.take();
    GRElem e = parse_gr_expr(lx, ctx);
    lx.expect(")");
    return e;
  }
  if (tok.kind == Token::Int) {
    long n = std::stol(lx.take().text);
    return GRElem::embed(GWElem::integer(t, n), ctx.vars);
  }
  if (tok.text == "H") {
    lx.take();
    return GRElem::embed(GWElem::hyperbolic(t), ctx.vars);
  }
  if (tok.text == "P") {
    lx.take();
    lx.expect("(");
    if (lx.peek().kind != Token::Int) lx.error("expected variable count");
    int m = std::stoi(lx.take().text);
    lx.expect(")");
    if (m > ctx.vars) lx.error("P(m) exceeds --vars");
    GRElem p = P(t, m);
    // pad up to the ambient variable count
    GRElem out = GRElem::zero(t, ctx.vars);
    for (const auto& [mask, c] : p.coeffs()) out.set_coeff(mask, c);
    return out;
  }
  if (tok.text == "tr") {
    lx.take();
    lx.expect("(");
    std::string inner;
    int depth = 1;
    while (!lx.at_end()) {
      const Token& in = lx.peek();
      if (in.text == "(")
        ++depth;
      else if (in.text == ")" && --depth == 0)
        break;
      inner += lx.take().text + " ";
    }
    lx.expect(")");
    return GRElem::embed(trace_form(parse_algebra(inner, t)), ctx.vars);
  }
  if (tok.text == "exp") {
    lx.take();
    lx.expect("(");
    GRElem base = parse_gr_expr(lx, ctx);
    lx.expect(";");
    GRElem expo = parse_gr_expr(lx, ctx);
    lx.expect(")");
    if (!base.is_constant()) lx.error("exp base must be constant");
    if (expo.is_constant())
      return GRElem::embed(exp(base.coeff(0), expo.coeff(0)), ctx.vars);
    return gr_exp(base.coeff(0), expo);
  }
  if (tok.text == "<") {
    lx.take();
    // monomial <tN> or a diagonal form
    if (lx.peek().kind == Token::Ident && lx.peek().text[0] == 't' && lx.peek().text.size() > 1 &&
        std::isdigit(static_cast<unsigned char>(lx.peek().text[1]))) {
      int i = std::stoi(lx.take().text.substr(1));
      lx.expect(">");
      if (i < 1 || i > ctx.vars) fail(Errc::IndexOutOfRange, "variable t" + std::to_string(i));
      return GRElem::monomial(t, ctx.vars, uint32_t(1) << (i - 1));
    }
    std::vector<FieldElem> entries;
    if (!lx.accept(">")) {
      entries.push_back(parse_elem_expr(lx, t));
      while (lx.accept(",")) entries.push_back(parse_elem_expr(lx, t));
      lx.expect(">");
    }
    return GRElem::embed(GWElem::from_form(DiagForm::make(t, std::move(entries))), ctx.vars);
  }
  lx.error("expected expression");
}

GRElem parse_gr_factor(Lexer& lx, const GrCtx& ctx) {
  GRElem e = parse_gr_atom(lx, ctx);
  while (lx.accept("*")) e = e * parse_gr_atom(lx, ctx);
  return e;
}

GRElem parse_gr_expr(Lexer& lx, const GrCtx& ctx) {
  bool neg = false;
  while (lx.peek().text == "-" || lx.peek().text == "+") neg ^= (lx.take().text == "-");
  GRElem e = parse_gr_factor(lx, ctx);
  if (neg) e = -e;
  for (;;) {
    if (lx.accept("+")) {
      e = e + parse_gr_factor(lx, ctx);
    } else if (lx.accept("-")) {
      e = e - parse_gr_factor(lx, ctx);
    } else {
      return e;
    }
  }
}

}  // namespace

TowerPtr parse_field(const std::string& s) {
  Lexer lx(s);
  TowerPtr t = parse_field_tokens(lx);
  if (!lx.at_end()) lx.error("trailing input after field");
  return t;
}

EtaleAlgebra parse_algebra(const std::string& s, const TowerPtr& base) {
  Lexer lx(s);
  std::vector<TowerPtr> comps;
  for (;;) {
    comps.push_back(parse_field_tokens(lx));
    if (lx.peek().text == "x")
      lx.take();
    else
      break;
  }
  if (!lx.at_end()) lx.error("trailing input after algebra");
  return EtaleAlgebra::make(base, std::move(comps));
}

FieldElem parse_elem(const std::string& s, const TowerPtr& t) {
  Lexer lx(s);
  FieldElem e = parse_elem_expr(lx, t);
  if (!lx.at_end()) lx.error("trailing input after element");
  return e;
}

GRElem parse_gr(const std::string& s, const TowerPtr& t, int vars) {
  Lexer lx(s);
  GRElem e = parse_gr_expr(lx, {t, vars});
  if (!lx.at_end()) lx.error("trailing input after expression");
  return e;
}

GWElem parse_gw(const std::string& s, const TowerPtr& t) {
  GRElem e = parse_gr(s, t, 0);
  return e.coeff(0);
}

std::string print_gw(const GWElem& x) { return x.str(); }

std::string GRElem::str() const {
  if (c_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [mask, c] : c_) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.str() + ")";
    for (int i = 0; i < vars_; ++i)
      if (mask & (uint32_t(1) << i)) s += "*<t" + std::to_string(i + 1) + ">";
  }
  return s;
}

std::string print_gr(const GRElem& x) { return x.str(); }

}  // namespace gwlab
