#include "monge8/parser.hpp"

#include <cctype>

namespace monge8 {

namespace {

struct Parser {
  Context& ctx;
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "'", i);
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }

  std::string ident() {
    skip();
    size_t start = i;
    if (i >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      throw SyntaxError("expected identifier", i);
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    return s.substr(start, i - start);
  }

  Expr number() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw SyntaxError("expected number", i);
    return ctx.rational(Rational(s.substr(start, i - start)));
  }

  Expr primary() {
    skip();
    if (i >= s.size()) throw SyntaxError("unexpected end of input", i);
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == '(') {
      ++i;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t at = i;
      std::string name = ident();
      if (name == "D" && peek() == '[') {
        expect('[');
        size_t fat = i;
        std::string fname = ident();
        auto f = ctx.find_function(fname);
        if (!f) throw UnknownIdentifier("unknown function '" + fname + "'", fat);
        std::vector<std::string> ix;
        while (eat(',')) ix.push_back(ident());
        expect(']');
        try {
          return ctx.deriv(fname, ix);
        } catch (const UnknownSymbol& e) {
          throw UnknownIdentifier(e.what(), fat);
        }
      }
      if (name == "sqrt" && peek() == '(') {
        expect('(');
        Expr inner = expr();
        expect(')');
        return ctx.sqrt(inner);
      }
      if (peek() == '(') {
        auto f = ctx.find_function(name);
        if (!f) throw UnknownIdentifier("unknown function '" + name + "'", at);
        expect('(');
        std::vector<std::string> args;
        if (peek() != ')') {
          args.push_back(ident());
          while (eat(',')) args.push_back(ident());
        }
        expect(')');
        const FunctionDecl& d = ctx.function(*f);
        if (args.size() != d.args.size())
          throw SyntaxError("function '" + name + "' expects " + std::to_string(d.args.size()) +
                                " arguments",
                            at);
        for (size_t k = 0; k < args.size(); ++k) {
          auto sid = ctx.find_symbol(args[k]);
          if (!sid || *sid != d.args[k])
            throw SyntaxError("function '" + name + "' must be applied to its declared arguments",
                              at);
        }
        return ctx.deriv(*f, {});
      }
      auto sid = ctx.find_symbol(name);
      if (!sid) throw UnknownIdentifier("unknown identifier '" + name + "'", at);
      return ctx.sym(*sid);
    }
    throw SyntaxError("unexpected character", i);
  }

  LinExp to_linexp(const Expr& e, size_t at) {
    LinExp le;
    if (!e.den().is_constant())
      throw SyntaxError("exponent must be rational or linear in parameters", at);
    Rational den = e.den().is_zero() ? Rational(1) : e.den().constant_value();
    for (auto& [m, c] : e.num().t) {
      if (m.f.empty()) {
        le.c += c / den;
      } else if (m.f.size() == 1 && m.f[0].second == 1) {
        AtomId a = m.f[0].first;
        const AtomInfo& ai = e.context()->info(a);
        if (ai.kind != AtomKind::Symbol || ai.skind == SymbolKind::Coordinate)
          throw SyntaxError("exponent must be rational or linear in parameters", at);
        LinExp t;
        t.terms.emplace_back(a, c / den);
        le = le + t;
      } else {
        throw SyntaxError("exponent must be rational or linear in parameters", at);
      }
    }
    return le;
  }

  Expr power() {
    Expr base = primary();
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      size_t at = i;
      Expr e = unary();
      LinExp le = to_linexp(e, at);
      return ctx.pow(base, le);
    }
    return base;
  }

  Expr unary() {
    skip();
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        e = e * unary();
      } else if (i < s.size() && s[i] == '/') {
        ++i;
        e = e / unary();
      } else {
        break;
      }
    }
    return e;
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      skip();
      if (i < s.size() && s[i] == '+') {
        ++i;
        e = e + term();
      } else if (i < s.size() && s[i] == '-') {
        ++i;
        e = e - term();
      } else {
        break;
      }
    }
    return e;
  }
};

}  // namespace

Expr parse_expr(Context& ctx, const std::string& src) {
  Parser p{ctx, src};
  Expr e = p.expr();
  p.skip();
  if (p.i != src.size()) throw SyntaxError("trailing input", p.i);
  return e;
}

}  // namespace monge8
