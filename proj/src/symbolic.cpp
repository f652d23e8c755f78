#include "monge8/symbolic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <sstream>

namespace monge8 {

// ---------------------------------------------------------------------------
// Rational helpers

bool is_integer(const Rational& q) { return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0; }

mpz_class floor_q(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

long to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) throw Error("not an integer: " + rat_str(q));
  return q.get_num().get_si();
}

std::string rat_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// ---------------------------------------------------------------------------
// LinExp

LinExp LinExp::operator+(const LinExp& o) const {
  LinExp r;
  r.c = c + o.c;
  size_t i = 0, j = 0;
  while (i < terms.size() || j < o.terms.size()) {
    if (j == o.terms.size() || (i < terms.size() && terms[i].first < o.terms[j].first)) {
      r.terms.push_back(terms[i++]);
    } else if (i == terms.size() || o.terms[j].first < terms[i].first) {
      r.terms.push_back(o.terms[j++]);
    } else {
      Rational s = terms[i].second + o.terms[j].second;
      if (s != 0) r.terms.emplace_back(terms[i].first, s);
      ++i, ++j;
    }
  }
  return r;
}

LinExp LinExp::operator*(const Rational& q) const {
  LinExp r;
  if (q == 0) return r;
  r.c = c * q;
  for (auto& t : terms) r.terms.emplace_back(t.first, t.second * q);
  return r;
}

std::string LinExp::str() const {
  std::ostringstream os;
  bool wrote = false;
  for (auto& t : terms) {
    if (wrote) os << "+";
    if (t.second != 1) os << rat_str(t.second) << "*";
    os << "#" << t.first;
    wrote = true;
  }
  if (!wrote || c != 0) {
    if (wrote && c > 0) os << "+";
    os << rat_str(c);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Monomial / Poly

int Monomial::degree() const {
  int d = 0;
  for (auto& p : f) d += p.second;
  return d;
}

bool Monomial::operator<(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db;
  size_t i = 0, j = 0;
  while (i < f.size() && j < o.f.size()) {
    if (f[i].first != o.f[j].first) return f[i].first > o.f[j].first;
    if (f[i].second != o.f[j].second) return f[i].second < o.f[j].second;
    ++i, ++j;
  }
  return f.size() < o.f.size();
}

Rational Poly::constant_value() const {
  if (t.empty()) return Rational(0);
  if (t.size() == 1 && t.begin()->first.empty()) return t.begin()->second;
  throw Error("polynomial is not constant");
}

int Poly::degree_in(AtomId a) const {
  int d = 0;
  for (auto& [m, c] : t)
    for (auto& p : m.f)
      if (p.first == a) d = std::max(d, p.second);
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (auto& [m, c] : t) d = std::max(d, m.degree());
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = t.find(m);
  if (it == t.end()) {
    t.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

namespace {

Poly poly_const(const Rational& q) {
  Poly p;
  if (q != 0) p.t.emplace(Monomial{}, q);
  return p;
}

Poly poly_one() { return poly_const(Rational(1)); }

bool is_one_poly(const Poly& p) {
  return p.t.size() == 1 && p.t.begin()->first.empty() && p.t.begin()->second == 1;
}

Poly poly_neg(const Poly& a) {
  Poly r;
  for (auto& [m, c] : a.t) r.t.emplace(m, -c);
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (auto& [m, c] : b.t) r.add_term(m, c);
  return r;
}

Monomial mono_mul_raw(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < a.f.size() || j < b.f.size()) {
    if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) {
      r.f.push_back(a.f[i++]);
    } else if (i == a.f.size() || b.f[j].first < a.f[i].first) {
      r.f.push_back(b.f[j++]);
    } else {
      int e = a.f[i].second + b.f[j].second;
      if (e != 0) r.f.emplace_back(a.f[i].first, e);
      ++i, ++j;
    }
  }
  return r;
}

Poly poly_mul_raw(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ma, ca] : a.t)
    for (auto& [mb, cb] : b.t) r.add_term(mono_mul_raw(ma, mb), ca * cb);
  return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  size_t j = 0;
  for (auto& p : a.f) {
    while (j < b.f.size() && b.f[j].first < p.first) ++j;
    if (j == b.f.size() || b.f[j].first != p.first || b.f[j].second < p.second) return false;
  }
  return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r;
  size_t i = 0;
  for (auto& p : b.f) {
    int e = p.second;
    while (i < a.f.size() && a.f[i].first < p.first) ++i;
    if (i < a.f.size() && a.f[i].first == p.first) e -= a.f[i].second;
    if (e != 0) r.f.emplace_back(p.first, e);
  }
  return r;
}

Rational poly_content(const Poly& p) {
  if (p.is_zero()) return Rational(0);
  mpz_class g = 0, l = 1;
  for (auto& [m, c] : p.t) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational cont(g, l);
  cont.canonicalize();
  if (p.t.rbegin()->second < 0) cont = -cont;
  return cont;
}

Poly poly_scale(const Poly& p, const Rational& q) {
  Poly r;
  if (q == 0) return r;
  for (auto& [m, c] : p.t) r.t.emplace(m, c * q);
  return r;
}

void split_by_var(const Poly& p, AtomId v, std::map<int, Poly>& out) {
  for (auto& [m, c] : p.t) {
    int e = 0;
    Monomial rest;
    for (auto& q : m.f) {
      if (q.first == v)
        e = q.second;
      else
        rest.f.push_back(q);
    }
    out[e].add_term(rest, c);
  }
}

Poly join_by_var(const std::map<int, Poly>& parts, AtomId v) {
  Poly r;
  for (auto& [e, coeff] : parts) {
    for (auto& [m, c] : coeff.t) {
      Monomial mm = m;
      if (e != 0) {
        mm.f.emplace_back(v, e);
        std::sort(mm.f.begin(), mm.f.end());
      }
      r.add_term(mm, c);
    }
  }
  return r;
}

bool den_is_one(const Expr& e) { return is_one_poly(e.den()); }

}  // namespace

// ---------------------------------------------------------------------------
// Context basics

Context::Context() = default;

AtomId Context::intern_symbol(const std::string& name, SymbolKind k) {
  auto it = symbol_by_name_.find(name);
  if (it != symbol_by_name_.end()) {
    if (atoms_[it->second].skind != k)
      throw Error("symbol '" + name + "' redeclared with a different kind");
    return it->second;
  }
  AtomInfo a;
  a.kind = AtomKind::Symbol;
  a.name = name;
  a.skind = k;
  atoms_.push_back(std::move(a));
  AtomId id = static_cast<AtomId>(atoms_.size() - 1);
  symbol_by_name_.emplace(name, id);
  return id;
}

AtomId Context::coordinate(const std::string& name) { return intern_symbol(name, SymbolKind::Coordinate); }
AtomId Context::parameter(const std::string& name) { return intern_symbol(name, SymbolKind::Parameter); }
AtomId Context::sign_parameter(const std::string& name) { return intern_symbol(name, SymbolKind::SignParameter); }

void Context::flag_positive(AtomId symbol) { atoms_[symbol].positive = true; }

std::optional<AtomId> Context::find_symbol(const std::string& name) const {
  auto it = symbol_by_name_.find(name);
  if (it == symbol_by_name_.end()) return std::nullopt;
  return it->second;
}

AtomId Context::require_symbol(const std::string& name) const {
  auto s = find_symbol(name);
  if (!s) throw UnknownSymbol("unknown symbol '" + name + "'");
  return *s;
}

uint32_t Context::declare_function(const std::string& name, const std::vector<AtomId>& args,
                                   bool positive) {
  if (args.empty()) throw Error("function '" + name + "' needs a non-empty argument list");
  if (func_by_name_.count(name)) throw Error("function '" + name + "' already declared");
  if (symbol_by_name_.count(name)) throw Error("'" + name + "' already names a symbol");
  FunctionDecl d{name, args, positive};
  funcs_.push_back(std::move(d));
  uint32_t id = static_cast<uint32_t>(funcs_.size() - 1);
  func_by_name_.emplace(name, id);
  return id;
}

std::optional<uint32_t> Context::find_function(const std::string& name) const {
  auto it = func_by_name_.find(name);
  if (it == func_by_name_.end()) return std::nullopt;
  return it->second;
}

Expr Context::deriv(uint32_t func, std::vector<AtomId> index) {
  const FunctionDecl& d = funcs_[func];
  for (AtomId i : index)
    if (std::find(d.args.begin(), d.args.end(), i) == d.args.end())
      throw UnknownSymbol("'" + atoms_[i].name + "' is not an argument of " + d.name);
  std::sort(index.begin(), index.end());
  std::string key = d.name + ";";
  for (AtomId i : index) key += atoms_[i].name + ",";
  auto it = deriv_intern_.find(key);
  AtomId id;
  if (it != deriv_intern_.end()) {
    id = it->second;
  } else {
    AtomInfo a;
    a.kind = AtomKind::Derivative;
    a.func = func;
    a.index = index;
    atoms_.push_back(std::move(a));
    id = static_cast<AtomId>(atoms_.size() - 1);
    deriv_intern_.emplace(key, id);
  }
  return Expr::atom(*this, id);
}

Expr Context::deriv(const std::string& fname, const std::vector<std::string>& index) {
  auto f = find_function(fname);
  if (!f) throw UnknownSymbol("unknown function '" + fname + "'");
  std::vector<AtomId> ix;
  for (auto& s : index) ix.push_back(require_symbol(s));
  return deriv(*f, std::move(ix));
}

// ---------------------------------------------------------------------------
// Expr construction

Expr::Expr(Context* ctx, Poly num, Poly den) : ctx_(ctx), num_(std::move(num)), den_(std::move(den)) {
  ctx_->reduce(num_, den_);
}

Expr Expr::from_int(Context& ctx, long n) {
  Expr e;
  e.ctx_ = &ctx;
  e.num_ = poly_const(Rational(n));
  e.den_ = poly_one();
  return e;
}

Expr Expr::from_rational(Context& ctx, const Rational& q) {
  Expr e;
  e.ctx_ = &ctx;
  e.num_ = poly_const(q);
  e.den_ = poly_one();
  return e;
}

Expr Expr::atom(Context& ctx, AtomId a) {
  Expr e;
  e.ctx_ = &ctx;
  Monomial m;
  m.f.emplace_back(a, 1);
  e.num_.t.emplace(m, Rational(1));
  e.den_ = poly_one();
  return e;
}

Rational Expr::rational_value() const { return num_.constant_value() / den_.constant_value(); }

bool Expr::is_one() const { return num_ == den_; }

// ---------------------------------------------------------------------------
// term normalization + multiplication

Context::TermProd Context::term_mul(const Rational& ca, const Monomial& a, const Rational& cb,
                                    const Monomial& b) {
  TermProd r;
  r.c = ca * cb;
  Monomial raw = mono_mul_raw(a, b);
  bool special = false;
  for (auto& p : raw.f) {
    const AtomInfo& ai = atoms_[p.first];
    if (ai.kind == AtomKind::Power && p.second != 1) { special = true; break; }
    if (ai.kind == AtomKind::Symbol && ai.skind == SymbolKind::SignParameter && p.second >= 2) {
      special = true;
      break;
    }
  }
  if (!special) {
    std::map<std::string, int> base_seen;
    for (auto& p : raw.f) {
      const AtomInfo& ai = atoms_[p.first];
      if (ai.kind == AtomKind::Power) {
        std::string bk = ai.base->str();
        if (++base_seen[bk] > 1) { special = true; break; }
      }
    }
  }
  if (!special) {
    r.pure = true;
    r.m = std::move(raw);
    return r;
  }

  Expr acc = one();
  Monomial plain;
  std::map<std::string, std::pair<std::shared_ptr<const Expr>, LinExp>> pow_groups;
  for (auto& p : raw.f) {
    const AtomInfo& ai = atoms_[p.first];
    if (ai.kind == AtomKind::Symbol && ai.skind == SymbolKind::SignParameter) {
      int e = ((p.second % 2) + 2) % 2;
      if (e != 0) plain.f.emplace_back(p.first, e);
    } else if (ai.kind == AtomKind::Power) {
      auto& g = pow_groups[ai.base->str()];
      g.first = ai.base;
      g.second = g.second + ai.exp * Rational(p.second);
    } else {
      plain.f.emplace_back(p.first, p.second);
    }
  }
  for (auto& [key, g] : pow_groups) acc = acc * pow_of_core(g.first, g.second);
  Poly pp;
  pp.t.emplace(plain, r.c);
  r.pure = false;
  r.e = poly_to_expr(std::move(pp)) * acc;
  r.c = 0;
  return r;
}

Expr Context::poly_to_expr(Poly p) {
  Expr e;
  e.ctx_ = this;
  e.num_ = std::move(p);
  e.den_ = poly_one();
  reduce(e.num_, e.den_);
  return e;
}

Expr Context::normalize_poly(const Poly& raw) {
  Expr acc = zero();
  Poly fast;
  for (auto& [m, c] : raw.t) {
    TermProd tp = term_mul(c, m, Rational(1), Monomial{});
    if (tp.pure)
      fast.add_term(tp.m, tp.c);
    else
      acc = acc + tp.e;
  }
  return poly_to_expr(std::move(fast)) + acc;
}

Expr Context::mul_polys(const Poly& a, const Poly& b) {
  Poly fast;
  std::vector<Expr> slow;
  for (auto& [ma, ca] : a.t)
    for (auto& [mb, cb] : b.t) {
      TermProd tp = term_mul(ca, ma, cb, mb);
      if (tp.pure)
        fast.add_term(tp.m, tp.c);
      else
        slow.push_back(std::move(tp.e));
    }
  Expr r = poly_to_expr(std::move(fast));
  for (auto& s : slow) r = r + s;
  return r;
}

Expr Context::combine_div(const Expr& n, const Expr& d, int depth) {
  if (d.is_zero()) throw DivisionByZeroExpr("division by zero expression");
  if (n.is_zero()) return zero();
  if (den_is_one(n) && den_is_one(d)) {
    Expr r;
    r.ctx_ = this;
    r.num_ = n.num();
    r.den_ = d.num();
    reduce(r.num_, r.den_);
    return r;
  }
  if (depth > 8) throw Error("fraction combination failed to stabilize");
  Expr a = mul_polys(n.num(), d.den());
  Expr b = mul_polys(n.den(), d.num());
  return combine_div(a, b, depth + 1);
}

// ---------------------------------------------------------------------------
// arithmetic

Expr Expr::operator+(const Expr& o) const {
  Context& c = *ctx_;
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    Expr r;
    r.ctx_ = ctx_;
    r.num_ = poly_add(num_, o.num_);
    r.den_ = den_;
    c.reduce(r.num_, r.den_);
    return r;
  }
  Expr n1 = c.mul_polys(num_, o.den_);
  Expr n2 = c.mul_polys(o.num_, den_);
  Expr d = c.mul_polys(den_, o.den_);
  Expr sum;
  if (n1.den_ == n2.den_) {
    sum.ctx_ = ctx_;
    sum.num_ = poly_add(n1.num_, n2.num_);
    sum.den_ = n1.den_;
    c.reduce(sum.num_, sum.den_);
  } else {
    sum = c.combine_div(n1, c.one()) + c.combine_div(n2, c.one());
  }
  return c.combine_div(sum, d);
}

Expr Expr::operator-() const {
  Expr r = *this;
  r.num_ = poly_neg(r.num_);
  return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const {
  Context& c = *ctx_;
  if (is_zero() || o.is_zero()) return c.zero();
  Expr n = c.mul_polys(num_, o.num_);
  Expr d = c.mul_polys(den_, o.den_);
  return c.combine_div(n, d);
}

Expr Expr::operator/(const Expr& o) const {
  Context& c = *ctx_;
  if (o.is_zero()) throw DivisionByZeroExpr("division by zero expression");
  if (is_zero()) return c.zero();
  Expr n = c.mul_polys(num_, o.den_);
  Expr d = c.mul_polys(den_, o.num_);
  return c.combine_div(n, d);
}

Expr operator*(long n, const Expr& e) { return Expr::from_int(*e.context(), n) * e; }
Expr operator+(long n, const Expr& e) { return Expr::from_int(*e.context(), n) + e; }
Expr operator-(long n, const Expr& e) { return Expr::from_int(*e.context(), n) - e; }

// ---------------------------------------------------------------------------
// gcd machinery (atoms treated as free variables)

bool Context::poly_divide_exact(const Poly& a, const Poly& b, Poly* q) const {
  if (b.is_zero()) return false;
  if (a.is_zero()) {
    if (q) *q = Poly{};
    return true;
  }
  Poly rem = a, quo;
  const Monomial lbm = b.t.rbegin()->first;
  const Rational lbc = b.t.rbegin()->second;
  while (!rem.is_zero()) {
    const Monomial lm = rem.t.rbegin()->first;
    const Rational lc = rem.t.rbegin()->second;
    if (!mono_divides(lbm, lm)) return false;
    Monomial qm = mono_div(lm, lbm);
    Rational qc = lc / lbc;
    quo.add_term(qm, qc);
    for (auto& [m, c] : b.t) rem.add_term(mono_mul_raw(qm, m), -qc * c);
  }
  if (q) *q = std::move(quo);
  return true;
}

Poly Context::poly_gcd(const Poly& a, const Poly& b) const {
  std::function<Poly(const Poly&, const Poly&)> g = [&](const Poly& x, const Poly& y) -> Poly {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.is_constant() || y.is_constant()) return poly_one();
    std::map<AtomId, std::pair<int, int>> deg;
    for (auto& [m, c] : x.t)
      for (auto& p : m.f) deg[p.first].first = std::max(deg[p.first].first, p.second);
    for (auto& [m, c] : y.t)
      for (auto& p : m.f) deg[p.first].second = std::max(deg[p.first].second, p.second);
    AtomId v = 0;
    int best = -1;
    for (auto& [at, d] : deg) {
      if (d.first == 0 || d.second == 0) continue;
      int score = std::max(d.first, d.second);
      if (best < 0 || score < best) {
        best = score;
        v = at;
      }
    }
    if (best < 0) return poly_one();

    auto content_pp = [&](const Poly& p, Poly* pp) -> Poly {
      std::map<int, Poly> parts;
      split_by_var(p, v, parts);
      Poly cont;
      for (auto& [e, coeff] : parts) cont = g(cont, coeff);
      if (pp) {
        std::map<int, Poly> q;
        for (auto& [e, coeff] : parts) {
          Poly qq;
          if (!poly_divide_exact(coeff, cont, &qq)) throw Error("content division failed");
          q[e] = std::move(qq);
        }
        *pp = join_by_var(q, v);
      }
      return cont;
    };

    Poly ppx, ppy;
    Poly cx = content_pp(x, &ppx);
    Poly cy = content_pp(y, &ppy);
    Poly cont_g = g(cx, cy);

    Poly P = ppx, Q = ppy;
    if (P.degree_in(v) < Q.degree_in(v)) std::swap(P, Q);
    while (true) {
      if (Q.is_zero()) break;
      int dq = Q.degree_in(v);
      if (dq == 0) {
        P = poly_one();
        break;
      }
      std::map<int, Poly> qparts;
      split_by_var(Q, v, qparts);
      Poly lq = qparts.rbegin()->second;
      Poly R = P;
      while (!R.is_zero() && R.degree_in(v) >= dq) {
        std::map<int, Poly> rparts;
        split_by_var(R, v, rparts);
        int dr = rparts.rbegin()->first;
        Poly lr = rparts.rbegin()->second;
        Poly t1 = poly_mul_raw(lq, R);
        Monomial shift;
        if (dr - dq != 0) shift.f.emplace_back(v, dr - dq);
        Poly t2;
        for (auto& [m, c] : Q.t) t2.add_term(mono_mul_raw(m, shift), c);
        t2 = poly_mul_raw(lr, t2);
        R = poly_add(t1, poly_neg(t2));
      }
      P = Q;
      if (R.is_zero()) {
        break;
      }
      Poly rpp;
      content_pp(R, &rpp);
      Q = rpp;
    }
    Poly result = poly_mul_raw(cont_g, P);
    Rational cont = poly_content(result);
    if (cont != 0 && cont != 1) result = poly_scale(result, Rational(1) / cont);
    return result;
  };
  Poly r = g(a, b);
  if (r.is_zero()) return poly_one();
  return r;
}

// ---------------------------------------------------------------------------
// fraction reduction

void Context::rationalize_denominator(Poly& num, Poly& den) {
  for (int rounds = 0; rounds < 8; ++rounds) {
    // uniform power atoms across all den terms
    std::map<AtomId, int> minexp;
    bool first = true;
    for (auto& [m, c] : den.t) {
      std::map<AtomId, int> cur;
      for (auto& p : m.f)
        if (atoms_[p.first].kind == AtomKind::Power) cur[p.first] = p.second;
      if (first) {
        minexp = cur;
        first = false;
      } else {
        for (auto it = minexp.begin(); it != minexp.end();) {
          auto f = cur.find(it->first);
          if (f == cur.end())
            it = minexp.erase(it);
          else {
            it->second = std::min(it->second, f->second);
            ++it;
          }
        }
      }
      if (minexp.empty()) break;
    }
    if (minexp.empty()) return;
    auto [at, m] = *minexp.begin();
    const AtomInfo& ai = atoms_[at];
    LinExp total = ai.exp * Rational(m);
    LinExp comp;
    if (total.is_rational()) {
      Rational frac = total.c - Rational(floor_q(total.c));
      if (frac == 0) return;
      comp = LinExp(Rational(1) - frac);
    } else {
      comp = -total;
    }
    Expr mult = pow_of_core(ai.base, comp);
    Expr n = poly_to_expr(std::move(num)) * mult;
    Expr d = poly_to_expr(std::move(den)) * mult;
    Expr q = combine_div(n, d);
    num = q.num_;
    den = q.den_;
    return;  // combine_div re-ran reduce, which re-enters here if needed
  }
}

void Context::normalize_fraction(Poly& num, Poly& den) {
  Rational cont = poly_content(den);
  if (cont == 0) throw DivisionByZeroExpr("division by zero expression");
  if (cont != 1) {
    den = poly_scale(den, Rational(1) / cont);
    num = poly_scale(num, Rational(1) / cont);
  }
}

void Context::reduce(Poly& num, Poly& den) {
  if (den.is_zero()) throw DivisionByZeroExpr("division by zero expression");
  if (num.is_zero()) {
    den = poly_one();
    return;
  }
  // sign parameters occurring in every den term: multiply through (eps^2 = 1)
  {
    std::map<AtomId, int> minexp;
    bool first = true;
    for (auto& [m, c] : den.t) {
      std::map<AtomId, int> cur;
      for (auto& p : m.f) {
        const AtomInfo& ai = atoms_[p.first];
        if (ai.kind == AtomKind::Symbol && ai.skind == SymbolKind::SignParameter)
          cur[p.first] = p.second;
      }
      if (first) {
        minexp = cur;
        first = false;
      } else {
        for (auto it = minexp.begin(); it != minexp.end();) {
          auto f = cur.find(it->first);
          if (f == cur.end())
            it = minexp.erase(it);
          else {
            it->second = std::min(it->second, f->second);
            ++it;
          }
        }
      }
      if (minexp.empty()) break;
    }
    for (auto& [at, e] : minexp) {
      if (e == 0) continue;
      auto strip = [&](Poly& p, bool mul) {
        Poly r;
        for (auto& [m, c] : p.t) {
          Monomial mm;
          bool had = false;
          for (auto& q : m.f) {
            if (q.first == at) {
              int ne = mul ? (q.second + e) : (q.second - e);
              ne = ((ne % 2) + 2) % 2;
              had = true;
              if (ne != 0) mm.f.emplace_back(q.first, ne);
            } else {
              mm.f.push_back(q.first == at ? q : q);
            }
          }
          if (!had && mul && (e % 2) != 0) {
            mm.f.emplace_back(at, 1);
            std::sort(mm.f.begin(), mm.f.end());
          }
          r.add_term(mm, c);
        }
        p = std::move(r);
      };
      strip(den, false);
      strip(num, true);
    }
  }
  // fractional power atoms in den
  {
    bool has_pow = false;
    for (auto& [m, c] : den.t) {
      for (auto& p : m.f)
        if (atoms_[p.first].kind == AtomKind::Power) {
          has_pow = true;
          break;
        }
      if (has_pow) break;
    }
    if (has_pow) {
      rationalize_denominator(num, den);
      if (num.is_zero()) {
        den = poly_one();
        return;
      }
      if (den.is_zero()) throw DivisionByZeroExpr("division by zero expression");
    }
  }
  if (den.is_constant()) {
    Rational d = den.constant_value();
    num = poly_scale(num, Rational(1) / d);
    den = poly_one();
    return;
  }
  // common monomial content
  {
    std::map<AtomId, int> mn;
    bool first = true;
    auto scan = [&](const Poly& p) {
      for (auto& [m, c] : p.t) {
        if (mn.empty() && !first) return;
        std::map<AtomId, int> cur;
        for (auto& q : m.f) cur[q.first] = q.second;
        if (first) {
          mn = cur;
          first = false;
        } else {
          for (auto it = mn.begin(); it != mn.end();) {
            auto f = cur.find(it->first);
            if (f == cur.end())
              it = mn.erase(it);
            else {
              it->second = std::min(it->second, f->second);
              ++it;
            }
          }
        }
      }
    };
    scan(num);
    scan(den);
    if (!mn.empty()) {
      Monomial g;
      for (auto& [a, e] : mn) g.f.emplace_back(a, e);
      auto shift = [&](Poly& p) {
        Poly r;
        for (auto& [m, c] : p.t) r.add_term(mono_div(m, g), c);
        p = std::move(r);
      };
      shift(num);
      shift(den);
    }
  }
  if (den.is_constant()) {
    Rational d = den.constant_value();
    num = poly_scale(num, Rational(1) / d);
    den = poly_one();
    return;
  }
  if (!num.is_constant()) {
    Poly g = poly_gcd(num, den);
    if (!g.is_constant()) {
      Poly qn, qd;
      if (poly_divide_exact(num, g, &qn) && poly_divide_exact(den, g, &qd)) {
        num = std::move(qn);
        den = std::move(qd);
      }
    }
  }
  normalize_fraction(num, den);
}

// ---------------------------------------------------------------------------
// powers

Expr Context::pow_int(const Expr& base, long e) {
  if (e == 0) return one();
  if (base.is_zero()) {
    if (e < 0) throw DivisionByZeroExpr("0 to a negative power");
    return zero();
  }
  bool inv = e < 0;
  unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Expr acc = one(), b = base;
  while (n) {
    if (n & 1) acc = acc * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return inv ? one() / acc : acc;
}

std::shared_ptr<const Expr> Context::positive_core_match(const Expr& primitive) const {
  std::string key = primitive.str();
  for (auto& [k, e] : positive_cores_)
    if (k == key) return e;
  return nullptr;
}

void Context::assume_positive(const Expr& e) {
  if (e.is_zero()) throw Error("cannot assume 0 positive");
  // store the content-stripped fraction (positive rational factors are immaterial)
  Rational cn = poly_content(e.num()), cd = poly_content(e.den());
  Rational cont = abs(cn / cd);
  Expr core = e * rational(Rational(1) / cont);
  if (core.is_one()) return;
  std::string key = core.str();
  for (auto& [k, ex] : positive_cores_)
    if (k == key) return;
  positive_cores_.emplace_back(key, std::make_shared<const Expr>(core));
}

AtomId Context::intern_pow_atom(const std::shared_ptr<const Expr>& base, const LinExp& e) {
  std::string key = base->str() + "|^|" + e.str();
  auto it = pow_intern_.find(key);
  if (it != pow_intern_.end()) return it->second;
  AtomInfo a;
  a.kind = AtomKind::Power;
  a.base = base;
  a.exp = e;
  atoms_.push_back(std::move(a));
  AtomId id = static_cast<AtomId>(atoms_.size() - 1);
  pow_intern_.emplace(key, id);
  return id;
}

Expr Context::pow_of_core(const std::shared_ptr<const Expr>& core, const LinExp& e) {
  if (e.is_zero()) return one();
  if (e.is_integer()) return pow_int(*core, to_long(e.c));
  LinExp frac = e;
  mpz_class n = floor_q(frac.c);
  frac.c -= Rational(n);
  Expr spill = one();
  if (n != 0) {
    if (!mpz_fits_slong_p(n.get_mpz_t())) throw Error("exponent too large");
    spill = pow_int(*core, n.get_si());
  }
  if (frac.is_zero()) return spill;
  AtomId a = intern_pow_atom(core, frac);
  return spill * Expr::atom(*this, a);
}

namespace {
void perfect_power_split(const mpz_class& a_in, unsigned long d, mpz_class* root, mpz_class* rest) {
  mpz_class a = abs(a_in);
  *root = 1;
  *rest = 1;
  if (a == 0) {
    *rest = 0;
    return;
  }
  for (unsigned long p = 2; p < 10000 && a > 1; p += (p == 2 ? 1 : 2)) {
    unsigned long k = 0;
    while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
      mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
      ++k;
    }
    if (k == 0) continue;
    unsigned long q = k / d, r = k % d;
    mpz_class pp(p);
    for (unsigned long i = 0; i < q; ++i) *root *= pp;
    for (unsigned long i = 0; i < r; ++i) *rest *= pp;
  }
  if (a > 1) {
    mpz_class rt;
    if (mpz_root(rt.get_mpz_t(), a.get_mpz_t(), d) != 0) {
      *root *= rt;
    } else {
      *rest *= a;
    }
  }
}
}  // namespace

Expr Context::pow(const Expr& base, const Rational& e) {
  LinExp le;
  le.c = e;
  return pow(base, le);
}

Expr Context::pow(const Expr& base_in, const LinExp& e) {
  if (e.is_zero()) return one();
  if (e.is_integer()) return pow_int(base_in, to_long(e.c));
  if (base_in.is_zero()) return zero();

  Poly num = base_in.num(), den = base_in.den();
  Rational cn = poly_content(num), cd = poly_content(den);
  num = poly_scale(num, Rational(1) / cn);
  den = poly_scale(den, Rational(1) / cd);
  Rational content = cn / cd;

  auto mono_content = [&](Poly& p, std::map<AtomId, int>& out) {
    bool first = true;
    for (auto& [m, c] : p.t) {
      std::map<AtomId, int> cur;
      for (auto& q : m.f) cur[q.first] = q.second;
      if (first) {
        out = cur;
        first = false;
      } else {
        for (auto it = out.begin(); it != out.end();) {
          auto f = cur.find(it->first);
          if (f == cur.end())
            it = out.erase(it);
          else {
            it->second = std::min(it->second, f->second);
            ++it;
          }
        }
      }
      if (out.empty()) return;
    }
    if (!out.empty()) {
      Monomial g;
      for (auto& [a, ex] : out) g.f.emplace_back(a, ex);
      Poly r;
      for (auto& [m, c] : p.t) r.add_term(mono_div(m, g), c);
      p = std::move(r);
    }
  };
  std::map<AtomId, int> mono_n, mono_d;
  mono_content(num, mono_n);
  mono_content(den, mono_d);
  std::map<AtomId, int> mono = mono_n;
  for (auto& [a, ex] : mono_d) mono[a] -= ex;

  Expr result = one();

  // a negative leading content is a representation artifact; fold the sign
  // into the leftover polynomial, which carries the positivity requirement
  bool negate_leftover = false;
  if (content < 0) {
    content = -content;
    negate_leftover = true;
  }

  // rational content^e
  if (content != 1) {
    if (content < 0) throw PositivityRequired("rational power of a negative constant");
    if (!e.is_rational()) {
      auto corePtr = std::make_shared<const Expr>(rational(content));
      result = result * pow_of_core(corePtr, e);
    } else {
      mpz_class n = floor_q(e.c);
      Rational fr = e.c - Rational(n);
      if (!mpz_fits_slong_p(n.get_mpz_t())) throw Error("exponent too large");
      Expr part = pow_int(rational(content), n.get_si());
      if (fr != 0) {
        unsigned long q = mpz_get_ui(fr.get_den().get_mpz_t());
        unsigned long p = mpz_get_ui(fr.get_num().get_mpz_t());
        mpz_class rn, rr, dn, dr;
        perfect_power_split(content.get_num(), q, &rn, &rr);
        perfect_power_split(content.get_den(), q, &dn, &dr);
        Rational rootpart(rn, dn);
        rootpart.canonicalize();
        part = part * pow_int(rational(rootpart), (long)p);
        Rational restpart(rr, dr);
        restpart.canonicalize();
        if (restpart != 1) {
          auto corePtr = std::make_shared<const Expr>(rational(restpart));
          LinExp fe;
          fe.c = fr;
          part = part * pow_of_core(corePtr, fe);
        }
      }
      result = result * part;
    }
  }

  // monomial factors
  std::vector<std::pair<AtomId, int>> deferred;
  for (auto& [a, k] : mono) {
    if (k == 0) continue;
    const AtomInfo& ai = atoms_[a];
    LinExp te = e * Rational(k);
    bool positive_atom =
        (ai.kind == AtomKind::Symbol && ai.positive && ai.skind != SymbolKind::SignParameter) ||
        (ai.kind == AtomKind::Derivative && funcs_[ai.func].positive);
    if (positive_atom) {
      auto corePtr = std::make_shared<const Expr>(Expr::atom(*this, a));
      result = result * pow_of_core(corePtr, te);
    } else if (ai.kind == AtomKind::Power) {
      if (ai.exp.is_rational()) {
        result = result * pow_of_core(ai.base, e * (ai.exp.c * Rational(k)));
      } else if (e.is_rational()) {
        result = result * pow_of_core(ai.base, ai.exp * (e.c * Rational(k)));
      } else {
        throw PositivityRequired("nested symbolic exponents are not supported");
      }
    } else if (te.is_integer() && mpz_even_p(te.c.get_num().get_mpz_t())) {
      result = result * pow_int(sym(a), to_long(te.c));
    } else {
      deferred.emplace_back(a, k);
    }
  }

  Expr leftover = combine_div(poly_to_expr(std::move(num)), poly_to_expr(std::move(den)));
  for (auto& [a, k] : deferred) leftover = leftover * pow_int(sym(a), k);
  if (negate_leftover) leftover = -leftover;
  if (leftover.is_one()) return result;

  // registry extraction: pull declared-positive cores out of the base; any
  // successful split leftover = core^m * rest keeps rest positive, so the
  // recursion stays licensed
  auto complexity = [](const Expr& x) {
    return x.num().t.size() + x.den().t.size() + x.num().total_degree() +
           x.den().total_degree();
  };
  for (auto& [key, core] : positive_cores_) {
    long m = 0;
    Expr rest = leftover;
    while (true) {
      Expr q = rest / *core;
      if (!(q.is_one() || complexity(q) < complexity(rest))) break;
      rest = q;
      ++m;
      if (rest.is_one() || m > 64) break;
    }
    if (m == 0) {
      while (true) {
        Expr q = rest * *core;
        if (!(q.is_one() || complexity(q) < complexity(rest))) break;
        rest = q;
        --m;
        if (rest.is_one() || m < -64) break;
      }
    }
    if (m != 0) {
      result = result * pow_of_core(core, e * Rational(m));
      if (rest.is_one()) return result;
      return result * pow(rest, e);
    }
  }

  if (leftover.is_rational()) {
    Rational lv = leftover.rational_value();
    if (lv == 1) return result;
    return result * pow(rational(lv), e);
  }

  throw PositivityRequired("rational power of expression not flagged positive: " + leftover.str());
}

// ---------------------------------------------------------------------------
// differentiation

Expr Context::diff(const Expr& e, AtomId s) {
  if (s >= atoms_.size() || atoms_[s].kind != AtomKind::Symbol)
    throw UnknownSymbol("can only differentiate by a declared symbol");

  std::function<Expr(const Poly&)> dpoly = [&](const Poly& p) -> Expr {
    Expr acc = zero();
    Poly fast;
    for (auto& [m, c] : p.t) {
      for (size_t i = 0; i < m.f.size(); ++i) {
        auto [a, eexp] = m.f[i];
        const AtomInfo& ai = atoms_[a];
        if (ai.kind == AtomKind::Symbol) {
          if (a != s) continue;
          Monomial mm = m;
          if (eexp == 1)
            mm.f.erase(mm.f.begin() + i);
          else
            mm.f[i].second -= 1;
          fast.add_term(mm, c * eexp);
        } else if (ai.kind == AtomKind::Derivative) {
          const FunctionDecl& fd = funcs_[ai.func];
          if (std::find(fd.args.begin(), fd.args.end(), s) == fd.args.end()) continue;
          std::vector<AtomId> ix = ai.index;
          ix.push_back(s);
          Expr datom = deriv(ai.func, std::move(ix));
          Monomial mm = m;
          if (eexp == 1)
            mm.f.erase(mm.f.begin() + i);
          else
            mm.f[i].second -= 1;
          Poly rest;
          rest.t.emplace(mm, c * Rational(eexp));
          acc = acc + poly_to_expr(std::move(rest)) * datom;
        } else {  // Power atom: d(B^e) = e*B^e*dB/B
          Expr dbase = diff(*ai.base, s);
          if (dbase.is_zero()) continue;
          Expr efac = rational(ai.exp.c);
          for (auto& t : ai.exp.terms) efac = efac + rational(t.second) * Expr::atom(*this, t.first);
          Poly self;
          self.t.emplace(m, c * Rational(eexp));
          acc = acc + poly_to_expr(std::move(self)) * efac * dbase / *ai.base;
        }
      }
    }
    return acc + poly_to_expr(std::move(fast));
  };

  Expr DN = dpoly(e.num());
  Expr DD = dpoly(e.den());
  Expr n = poly_to_expr(Poly(e.num()));
  Expr d = poly_to_expr(Poly(e.den()));
  if (DD.is_zero()) return combine_div(DN, d);
  return combine_div(DN * d - n * DD, d * d);
}

// ---------------------------------------------------------------------------
// substitution

Expr Context::substitute(const Expr& e, AtomId s, const Expr& value) {
  auto subst_poly = [&](const Poly& p) -> Expr {
    Expr acc = zero();
    for (auto& [m, c] : p.t) {
      Expr term = rational(c);
      for (auto& [a, ex] : m.f) {
        const AtomInfo& ai = atoms_[a];
        Expr factor;
        if (a == s) {
          factor = value;
        } else if (ai.kind == AtomKind::Power) {
          Expr nb = substitute(*ai.base, s, value);
          LinExp ne = ai.exp;
          if (!ne.terms.empty()) {
            std::vector<std::pair<AtomId, Rational>> keep;
            Rational addc = ne.c;
            for (auto& t : ne.terms) {
              if (t.first == s) {
                if (!value.is_rational())
                  throw Error("exponent substitution requires a rational value");
                addc += t.second * value.rational_value();
              } else {
                keep.push_back(t);
              }
            }
            ne.c = addc;
            ne.terms = keep;
          }
          factor = pow(nb, ne);
        } else {
          factor = Expr::atom(*this, a);
        }
        term = term * pow_int(factor, ex);
      }
      acc = acc + term;
    }
    return acc;
  };
  Expr n = subst_poly(e.num());
  Expr d = subst_poly(e.den());
  return n / d;
}

Expr Context::substitute_function(const Expr& e, uint32_t func, const Expr& body) {
  auto subst_poly = [&](const Poly& p) -> Expr {
    Expr acc = zero();
    for (auto& [m, c] : p.t) {
      Expr term = rational(c);
      for (auto& [a, ex] : m.f) {
        const AtomInfo& ai = atoms_[a];
        Expr factor;
        if (ai.kind == AtomKind::Derivative && ai.func == func) {
          Expr v = body;
          for (AtomId ix : ai.index) v = diff(v, ix);
          factor = v;
        } else if (ai.kind == AtomKind::Power) {
          factor = pow(substitute_function(*ai.base, func, body), ai.exp);
        } else {
          factor = Expr::atom(*this, a);
        }
        term = term * pow_int(factor, ex);
      }
      acc = acc + term;
    }
    return acc;
  };
  Expr n = subst_poly(e.num());
  Expr d = subst_poly(e.den());
  return n / d;
}

// ---------------------------------------------------------------------------
// zero testing

namespace {

mpf_class mpf_nth_root(const mpf_class& x, unsigned long n, unsigned prec) {
  if (n == 1) return x;
  if (n == 2) {
    mpf_class r(0, prec);
    mpf_sqrt(r.get_mpf_t(), x.get_mpf_t());
    return r;
  }
  mpf_class r(x, prec);
  if (r == 0) return r;
  mpf_class prev(0, prec);
  for (int it = 0; it < 256 && r != prev; ++it) {
    prev = r;
    mpf_class rp(1, prec);
    for (unsigned long i = 0; i + 1 < n; ++i) rp *= r;
    r = (mpf_class(n - 1) * r + x / rp) / n;
  }
  return r;
}

}  // namespace

double Context::eval_double(const Expr& e, const std::map<AtomId, Rational>& vals) const {
  const unsigned prec = 256;
  std::function<mpf_class(const Poly&)> evalp = [&](const Poly& p) -> mpf_class {
    mpf_class acc(0, prec);
    for (auto& [m, c] : p.t) {
      mpf_class term(c, prec);
      for (auto& [a, ex] : m.f) {
        const AtomInfo& ai = atoms_[a];
        mpf_class v(0, prec);
        if (ai.kind == AtomKind::Power) {
          mpf_class b = evalp(ai.base->num()) / evalp(ai.base->den());
          Rational ee = ai.exp.c;
          for (auto& t : ai.exp.terms) {
            auto f = vals.find(t.first);
            if (f == vals.end()) throw Error("missing value for exponent parameter");
            ee += t.second * f->second;
          }
          mpz_class num = ee.get_num(), den = ee.get_den();
          bool neg = num < 0;
          mpz_class an = abs(num);
          mpf_class root = mpf_nth_root(b, den.get_ui(), prec);
          mpf_class r(1, prec);
          for (mpz_class i = 0; i < an; ++i) r *= root;
          v = neg ? mpf_class(mpf_class(1, prec) / r) : r;
        } else {
          auto f = vals.find(a);
          if (f == vals.end()) throw Error("missing value for atom " + atom_str(a));
          v = mpf_class(f->second, prec);
        }
        for (int i = 0; i < ex; ++i) term *= v;
      }
      acc += term;
    }
    return acc;
  };
  mpf_class n = evalp(e.num());
  mpf_class d = evalp(e.den());
  if (d == 0) throw Error("pole in evaluation");
  return mpf_class(n / d).get_d();
}

Rational Context::eval_rational(const Expr& e, const std::map<AtomId, Rational>& vals) const {
  auto evalp = [&](const Poly& p) -> Rational {
    Rational acc = 0;
    for (auto& [m, c] : p.t) {
      Rational term = c;
      for (auto& [a, ex] : m.f) {
        const AtomInfo& ai = atoms_[a];
        if (ai.kind == AtomKind::Power) throw Error("exact evaluation of a radical");
        auto f = vals.find(a);
        if (f == vals.end()) throw Error("missing value for atom " + atom_str(a));
        for (int i = 0; i < ex; ++i) term *= f->second;
      }
      acc += term;
    }
    return acc;
  };
  Rational n = evalp(e.num());
  Rational d = evalp(e.den());
  if (d == 0) throw Error("pole in evaluation");
  return n / d;
}

int Context::count_radicals(const Expr& e) const {
  int n = 0;
  auto scan = [&](const Poly& p) {
    for (auto& [m, c] : p.t)
      for (auto& q : m.f)
        if (atoms_[q.first].kind == AtomKind::Power) ++n;
  };
  scan(e.num());
  scan(e.den());
  return n;
}

ZeroVerdict Context::is_zero(const Expr& e, uint64_t seed) {
  if (e.num().is_zero()) return ZeroVerdict::Zero;
  if (count_radicals(e) == 0) return ZeroVerdict::NonZero;

  // isolate-and-square square roots in the numerator
  {
    Expr cur = poly_to_expr(Poly(e.num()));
    for (int round = 0; round < 4; ++round) {
      AtomId a = 0;
      bool found = false;
      for (auto& [m, c] : cur.num().t)
        for (auto& q : m.f) {
          const AtomInfo& ai = atoms_[q.first];
          if (ai.kind == AtomKind::Power && ai.exp.is_rational() && ai.exp.c == Rational(1, 2)) {
            a = q.first;
            found = true;
          }
        }
      if (!found) break;
      Poly c0, c1;
      for (auto& [m, c] : cur.num().t) {
        bool has = false;
        Monomial mm;
        for (auto& q : m.f) {
          if (q.first == a)
            has = true;
          else
            mm.f.push_back(q);
        }
        if (has)
          c1.add_term(mm, c);
        else
          c0.add_term(m, c);
      }
      const AtomInfo& ai = atoms_[a];
      Expr C0 = poly_to_expr(std::move(c0)), C1 = poly_to_expr(std::move(c1));
      cur = C0 * C0 - C1 * C1 * *ai.base;
      if (cur.is_zero()) break;
      if (count_radicals(cur) == 0) return ZeroVerdict::NonZero;
    }
  }

  // probabilistic evaluation at random rational points
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> numd(-10000, 10000), dend(1, 10000);
  int zeros = 0, nonzeros = 0;
  for (int s = 0; s < 20; ++s) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::map<AtomId, Rational> vals;
      for (AtomId a = 0; a < static_cast<AtomId>(atoms_.size()); ++a) {
        const AtomInfo& ai = atoms_[a];
        if (ai.kind == AtomKind::Power) continue;
        Rational v(numd(rng), dend(rng));
        v.canonicalize();
        if (ai.kind == AtomKind::Symbol && ai.skind == SymbolKind::SignParameter)
          v = (numd(rng) % 2 == 0) ? 1 : -1;
        else if (ai.kind == AtomKind::Symbol && ai.positive && v <= 0)
          v = (v == 0) ? Rational(1, 2) : Rational(-v);
        vals[a] = v;
      }
      try {
        bool bases_ok = true;
        for (AtomId a = 0; a < static_cast<AtomId>(atoms_.size()); ++a) {
          const AtomInfo& ai = atoms_[a];
          if (ai.kind != AtomKind::Power) continue;
          double b = eval_double(*ai.base, vals);
          if (!(b > 0)) {
            bases_ok = false;
            break;
          }
        }
        if (!bases_ok) continue;
        double v = eval_double(e, vals);
        if (std::abs(v) < 1e-40)
          ++zeros;
        else
          ++nonzeros;
        break;
      } catch (const Error&) {
        // pole; redraw
      }
    }
  }
  if (nonzeros == 0 && zeros > 0) return ZeroVerdict::ProbablyZero;
  return ZeroVerdict::ProbablyNonZero;
}

// ---------------------------------------------------------------------------
// printing

std::string Context::atom_str(AtomId a) const {
  const AtomInfo& ai = atoms_[a];
  switch (ai.kind) {
    case AtomKind::Symbol:
      return ai.name;
    case AtomKind::Derivative: {
      const FunctionDecl& f = funcs_[ai.func];
      if (ai.index.empty()) {
        std::string s = f.name + "(";
        for (size_t i = 0; i < f.args.size(); ++i) s += (i ? "," : "") + atoms_[f.args[i]].name;
        return s + ")";
      }
      std::string s = "D[" + f.name;
      for (AtomId i : ai.index) s += "," + atoms_[i].name;
      return s + "]";
    }
    case AtomKind::Power: {
      std::string es;
      const LinExp& e = ai.exp;
      if (e.is_rational()) {
        es = rat_str(e.c);
      } else {
        std::ostringstream os;
        bool wrote = false;
        for (auto& t : e.terms) {
          if (wrote && t.second > 0) os << "+";
          if (t.second == -1)
            os << "-";
          else if (t.second != 1)
            os << rat_str(t.second) << "*";
          os << atoms_[t.first].name;
          wrote = true;
        }
        if (e.c != 0) {
          if (e.c > 0) os << "+";
          os << rat_str(e.c);
        }
        es = os.str();
      }
      return "(" + ai.base->str() + ")^(" + es + ")";
    }
  }
  return "?";
}

std::string Context::poly_str(const Poly& p) const {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.t.rbegin(); it != p.t.rend(); ++it) {
    Rational c = it->second;
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    Rational ac = abs(c);
    bool unit = (ac == 1) && !it->first.empty();
    if (!unit) os << rat_str(ac);
    bool wrote_factor = !unit;
    for (auto& [a, e] : it->first.f) {
      if (wrote_factor) os << "*";
      os << atom_str(a);
      if (e != 1) os << "^" << e;
      wrote_factor = true;
    }
    first = false;
  }
  return os.str();
}

std::string Expr::str() const {
  if (!ctx_) return "<null>";
  if (den_.is_constant() && !den_.is_zero() && den_.constant_value() == 1)
    return ctx_->poly_str(num_);
  return "(" + ctx_->poly_str(num_) + ")/(" + ctx_->poly_str(den_) + ")";
}

std::string to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero:
      return "Zero";
    case ZeroVerdict::NonZero:
      return "NonZero";
    case ZeroVerdict::ProbablyZero:
      return "ProbablyZero";
    case ZeroVerdict::ProbablyNonZero:
      return "ProbablyNonZero";
  }
  return "?";
}

}  // namespace monge8
