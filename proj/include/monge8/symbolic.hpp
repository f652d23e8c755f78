#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monge8 {

using Rational = mpq_class;

inline Rational rat(long n, long d = 1) { return Rational(n, d); }
bool is_integer(const Rational& q);
mpz_class floor_q(const Rational& q);
long to_long(const Rational& q);
std::string rat_str(const Rational& q);

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZeroExpr : Error { using Error::Error; };
struct UnknownSymbol : Error { using Error::Error; };
struct PositivityRequired : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Symbols and atoms

enum class SymbolKind : uint8_t { Coordinate, Parameter, SignParameter };
enum class AtomKind : uint8_t { Symbol, Derivative, Power };

using AtomId = uint32_t;

// Exponent of a power atom: rational constant plus a rational-linear
// combination of parameter symbols (covers both radicals and powers like y2^s).
struct LinExp {
  Rational c;
  std::vector<std::pair<AtomId, Rational>> terms;  // sorted by symbol id

  LinExp() : c(0) {}
  explicit LinExp(Rational q) : c(std::move(q)) {}
  bool is_rational() const { return terms.empty(); }
  bool is_zero() const { return terms.empty() && c == 0; }
  bool is_integer() const { return terms.empty() && monge8::is_integer(c); }
  LinExp operator+(const LinExp& o) const;
  LinExp operator*(const Rational& q) const;
  LinExp operator-() const { return *this * Rational(-1); }
  bool operator==(const LinExp& o) const { return c == o.c && terms == o.terms; }
  std::string str() const;
};

class Context;
class Expr;

struct Monomial {
  // sorted by atom id, exponents > 0
  std::vector<std::pair<AtomId, int>> f;
  int degree() const;
  bool empty() const { return f.empty(); }
  bool operator==(const Monomial& o) const { return f == o.f; }
  bool operator<(const Monomial& o) const;  // graded lex, id-ascending significance
};

struct Poly {
  std::map<Monomial, Rational> t;

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
  Rational constant_value() const;
  int degree_in(AtomId a) const;
  int total_degree() const;
  void add_term(const Monomial& m, const Rational& c);
  bool operator==(const Poly& o) const { return t == o.t; }
};

struct AtomInfo {
  AtomKind kind = AtomKind::Symbol;
  // Symbol
  std::string name;
  SymbolKind skind = SymbolKind::Parameter;
  bool positive = false;
  // Derivative atom: function id + sorted multi-index of argument symbol ids
  uint32_t func = 0;
  std::vector<AtomId> index;
  // Power atom
  std::shared_ptr<const Expr> base;
  LinExp exp;
};

struct FunctionDecl {
  std::string name;
  std::vector<AtomId> args;  // coordinate symbol ids
  bool positive = false;
};

// ---------------------------------------------------------------------------
// Expr: canonical fraction of multivariate polynomials over Q in atoms.

class Expr {
 public:
  Expr() : ctx_(nullptr) {}
  Expr(Context* ctx, Poly num, Poly den);

  static Expr from_int(Context& ctx, long n);
  static Expr from_rational(Context& ctx, const Rational& q);
  static Expr atom(Context& ctx, AtomId a);

  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  Rational rational_value() const;
  bool is_one() const;

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  Context* context() const { return ctx_; }

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator-() const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;
  Expr& operator+=(const Expr& o) { *this = *this + o; return *this; }
  Expr& operator-=(const Expr& o) { *this = *this - o; return *this; }
  Expr& operator*=(const Expr& o) { *this = *this * o; return *this; }
  Expr& operator/=(const Expr& o) { *this = *this / o; return *this; }
  bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Expr& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Context* ctx_;
  Poly num_, den_;
  friend class Context;
};

// Verdicts of the zero test.
enum class ZeroVerdict { Zero, NonZero, ProbablyZero, ProbablyNonZero };
std::string to_string(ZeroVerdict v);

// ---------------------------------------------------------------------------
// Context: symbol table, atom interning, positivity registry, arithmetic core.

class Context {
 public:
  Context();

  // symbol declaration
  AtomId coordinate(const std::string& name);
  AtomId parameter(const std::string& name);
  AtomId sign_parameter(const std::string& name);  // eps with eps^2 = 1
  void flag_positive(AtomId symbol);
  std::optional<AtomId> find_symbol(const std::string& name) const;
  AtomId require_symbol(const std::string& name) const;

  uint32_t declare_function(const std::string& name, const std::vector<AtomId>& args,
                            bool positive = false);
  std::optional<uint32_t> find_function(const std::string& name) const;
  const FunctionDecl& function(uint32_t id) const { return funcs_[id]; }

  // Declares a (canonical core of a) whole expression positive, licensing
  // rational powers of it and extraction from radical bases.
  void assume_positive(const Expr& e);

  const AtomInfo& info(AtomId a) const { return atoms_[a]; }
  size_t atom_count() const { return atoms_.size(); }

  // expression constructors
  Expr zero() { return Expr::from_int(*this, 0); }
  Expr one() { return Expr::from_int(*this, 1); }
  Expr integer(long n) { return Expr::from_int(*this, n); }
  Expr rational(const Rational& q) { return Expr::from_rational(*this, q); }
  Expr sym(const std::string& name) { return Expr::atom(*this, require_symbol(name)); }
  Expr sym(AtomId a) { return Expr::atom(*this, a); }
  // derivative atom D(f; index); empty index = the function value itself
  Expr deriv(uint32_t func, std::vector<AtomId> index);
  Expr deriv(const std::string& fname, const std::vector<std::string>& index);

  Expr pow(const Expr& base, const Rational& e);
  Expr pow(const Expr& base, const LinExp& e);
  Expr pow_int(const Expr& base, long e);
  Expr sqrt(const Expr& base) { return pow(base, Rational(1, 2)); }

  // operations
  Expr canonicalize(const Expr& e) const { return e; }  // Exprs are kept canonical
  Expr diff(const Expr& e, AtomId sym);
  Expr diff(const Expr& e, const std::string& sym) { return diff(e, require_symbol(sym)); }
  // substitute a symbol by an expression
  Expr substitute(const Expr& e, AtomId sym, const Expr& value);
  // substitute a concrete function body for a declared function: every
  // derivative atom D(f;m) becomes the corresponding partial of `body`
  Expr substitute_function(const Expr& e, uint32_t func, const Expr& body);

  ZeroVerdict is_zero(const Expr& e, uint64_t seed = 0xC0FFEE);

  // numeric evaluation with values for symbols/derivative atoms (floating, for
  // probabilistic verdicts)
  double eval_double(const Expr& e, const std::map<AtomId, Rational>& vals) const;
  // exact evaluation; requires a radical-free expression and a nonvanishing
  // denominator at the point
  Rational eval_rational(const Expr& e, const std::map<AtomId, Rational>& vals) const;

  std::string atom_str(AtomId a) const;
  std::string poly_str(const Poly& p) const;

  // internal arithmetic helpers (used by Expr)
  Expr mul_polys(const Poly& a, const Poly& b);
  Expr poly_to_expr(Poly p);
  Expr normalize_poly(const Poly& raw);
  Expr combine_div(const Expr& n, const Expr& d, int depth = 0);
  Poly poly_gcd(const Poly& a, const Poly& b) const;
  bool poly_divide_exact(const Poly& a, const Poly& b, Poly* q) const;
  int count_radicals(const Expr& e) const;

 private:
  friend class Expr;

  std::deque<AtomInfo> atoms_;
  std::map<std::string, AtomId> symbol_by_name_;
  std::vector<FunctionDecl> funcs_;
  std::map<std::string, uint32_t> func_by_name_;
  std::map<std::string, AtomId> deriv_intern_;
  std::map<std::string, AtomId> pow_intern_;
  std::vector<std::pair<std::string, std::shared_ptr<const Expr>>> positive_cores_;

  AtomId intern_symbol(const std::string& name, SymbolKind k);
  AtomId intern_pow_atom(const std::shared_ptr<const Expr>& base, const LinExp& e);

  struct TermProd {
    bool pure = true;
    Rational c;
    Monomial m;
    Expr e;  // used when !pure
  };
  TermProd term_mul(const Rational& ca, const Monomial& a, const Rational& cb,
                    const Monomial& b);
  void reduce(Poly& num, Poly& den);
  void rationalize_denominator(Poly& num, Poly& den);
  // content/primitive normalization of a fraction (den integer-primitive with
  // positive leading coefficient)
  void normalize_fraction(Poly& num, Poly& den);
  Expr pow_of_core(const std::shared_ptr<const Expr>& core, const LinExp& e);
  std::shared_ptr<const Expr> positive_core_match(const Expr& primitive) const;
};

// convenience free functions (the usual calling style)
Expr operator*(long n, const Expr& e);
Expr operator+(long n, const Expr& e);
Expr operator-(long n, const Expr& e);
inline Expr diff(const Expr& e, AtomId sym) { return e.context()->diff(e, sym); }
inline Expr canonicalize(const Expr& e) { return e; }

}  // namespace monge8
