#include "monge8/monge.hpp"

#include <algorithm>
#include <sstream>

#include "monge8/parser.hpp"

namespace monge8 {

namespace {
const std::vector<std::string> kJetChart = {"t",   "x1",  "x2",  "xd1",
                                            "xd2", "z11", "z12", "z22"};
const std::vector<std::string> kYChart = {"y1", "y2", "y3", "y4", "y5", "y6", "y7", "y8"};

void require_velocity_only(Context& ctx, const Chart& chart, const Expr& f,
                           const std::string& which) {
  AtomId xd1 = ctx.require_symbol("xd1"), xd2 = ctx.require_symbol("xd2");
  auto scan = [&](const Poly& p) {
    for (auto& [m, c] : p.t)
      for (auto& q : m.f) {
        const AtomInfo& ai = ctx.info(q.first);
        if (ai.kind == AtomKind::Symbol && ai.skind == SymbolKind::Coordinate &&
            q.first != xd1 && q.first != xd2 && chart.index_of(q.first) >= 0)
          throw Error(which + " must depend on the velocities xd1, xd2 only");
      }
  };
  scan(f.num());
  scan(f.den());
}
}  // namespace

MongeSystem explicit_system(Context& ctx, const Expr& f11, const Expr& f12, const Expr& f22) {
  MongeSystem m;
  m.kind = MongeSystem::Kind::Explicit;
  m.ctx = &ctx;
  m.chart = Chart::make(ctx, kJetChart);
  m.f11 = f11;
  m.f12 = f12;
  m.f22 = f22;
  require_velocity_only(ctx, m.chart, f11, "f11");
  require_velocity_only(ctx, m.chart, f12, "f12");
  require_velocity_only(ctx, m.chart, f22, "f22");
  return m;
}

MongeSystem flat_system(Context& ctx) {
  Chart chart = Chart::make(ctx, kJetChart);
  Expr xd1 = ctx.sym("xd1"), xd2 = ctx.sym("xd2");
  MongeSystem m = explicit_system(ctx, xd1 * xd1, xd1 * xd2, xd2 * xd2);
  return m;
}

MongeSystem canonical_h(Context& ctx, const std::optional<std::string>& hbody) {
  MongeSystem m;
  m.kind = MongeSystem::Kind::CanonicalH;
  m.ctx = &ctx;
  m.chart = Chart::make(ctx, kYChart);
  m.hfunc = ctx.find_function("h")
                ? *ctx.find_function("h")
                : ctx.declare_function("h", {ctx.require_symbol("y2"), ctx.require_symbol("y7")});
  if (hbody) m.hbody = parse_expr(ctx, *hbody);
  return m;
}

MongeSystem power_law(Context& ctx, const Rational& s) {
  Chart chart = Chart::make(ctx, kJetChart);
  // the family xd1^s lives on the half-space xd1 > 0
  AtomId xd1s = ctx.require_symbol("xd1");
  ctx.flag_positive(xd1s);
  Expr xd1 = ctx.sym("xd1"), xd2 = ctx.sym("xd2");
  Expr h = ctx.pow(xd1, s);
  MongeSystem m;
  m.kind = MongeSystem::Kind::PowerLaw;
  m.ctx = &ctx;
  m.chart = chart;
  m.f11 = xd1 * xd1;
  m.f12 = xd1 * xd2;
  m.f22 = xd2 * xd2 + h;
  m.s = s;
  return m;
}

Distribution distribution_of(const MongeSystem& m) {
  if (m.kind == MongeSystem::Kind::CanonicalH)
    throw Error("the canonical-h variant is given by its coframe, not by generators");
  Context& ctx = *m.ctx;
  const Chart& chart = m.chart;
  auto ix = [&](const char* n) { return chart.index_of(ctx.require_symbol(n)); };
  VectorField X = VectorField::zero(chart);
  X.comp[ix("t")] = ctx.one();
  X.comp[ix("z11")] = m.f11;
  X.comp[ix("z12")] = m.f12;
  X.comp[ix("z22")] = m.f22;
  X.comp[ix("x1")] = ctx.sym("xd1");
  X.comp[ix("x2")] = ctx.sym("xd2");
  Distribution D;
  D.chart = chart;
  D.generators = {X, VectorField::basis(chart, ix("xd1")), VectorField::basis(chart, ix("xd2"))};
  return D;
}

AdaptedFrame build_frame(const MongeSystem& m) {
  Context& ctx = *m.ctx;
  AdaptedFrame out;
  if (m.kind == MongeSystem::Kind::CanonicalH) {
    const Chart& chart = m.chart;
    BasisPtr b = coordinate_basis(chart);
    auto dy = [&](int k) { return DifferentialForm::basis_one_form(b, k - 1, ctx); };
    auto y = [&](int k) { return ctx.sym("y" + std::to_string(k)); };
    Expr h22 = ctx.deriv("h", {"y2", "y2"});
    Expr half = ctx.rational(Rational(1, 2));
    std::vector<DifferentialForm> w;
    w.push_back(dy(8) - dy(2) * y(5) + dy(4) * y(3));
    w.push_back(dy(7) - dy(2) * (2 * y(4)));
    w.push_back(dy(6) + dy(5) * (2 * y(3)) - dy(7) * (half * h22));
    w.push_back(dy(5) - dy(3) * y(1));
    w.push_back(dy(4) - dy(2) * y(1));
    w.push_back(dy(3));
    w.push_back(dy(2));
    w.push_back(dy(1));
    // dual frame from the coefficient matrix
    int n = 8;
    ExprMatrix C(n, n, ctx);
    for (int nu = 0; nu < n; ++nu)
      for (int j = 0; j < n; ++j) C.at(nu, j) = w[nu].coeff({j});
    ExprMatrix Ci = invert(C, ctx);
    for (int mu = 0; mu < n; ++mu) {
      VectorField E = VectorField::zero(chart);
      for (int j = 0; j < n; ++j) E.comp[j] = Ci.at(j, mu);
      out.frame.push_back(std::move(E));
    }
    out.coframe = std::move(w);
    return out;
  }

  Distribution D = distribution_of(m);
  check_monge_symbol(D);  // throws NotMongeShape otherwise
  const VectorField& X = D.generators[0];
  const VectorField& X1 = D.generators[1];
  const VectorField& X2 = D.generators[2];
  VectorField Y1 = bracket(X1, X);
  VectorField Y2 = bracket(X2, X);
  VectorField Z11 = bracket(Y1, X1);
  VectorField Z12 = bracket(Y1, X2);
  VectorField Z21 = bracket(Y2, X1);
  VectorField Z22 = bracket(Y2, X2);
  Expr half = ctx.rational(Rational(1, 2));
  std::vector<VectorField> E(8, VectorField::zero(m.chart));
  E[7] = X * ctx.integer(-1);        // E8
  E[6] = X1;                         // E7
  E[5] = X2;                         // E6
  E[4] = Y1;                         // E5
  E[3] = Y2;                         // E4
  E[2] = Z22 * half;                 // E3
  E[1] = Z11 * half;                 // E2
  E[0] = (Z12 + Z21) * half;         // E1 (the two mixed brackets coincide)

  // commutation skeleton
  auto expect = [&](const VectorField& got, const VectorField& want, const char* which) {
    if (!(got - want).is_zero())
      throw NotMongeShape(std::string("commutation skeleton fails at ") + which);
  };
  expect(bracket(E[7], E[6]), E[4], "[E8,E7] = E5");
  expect(bracket(E[7], E[5]), E[3], "[E8,E6] = E4");
  expect(bracket(E[4], E[6]), E[1] + E[1], "[E5,E7] = 2E2");
  expect(bracket(E[3], E[5]), E[2] + E[2], "[E4,E6] = 2E3");
  expect(bracket(E[4], E[5]), E[0], "[E5,E6] = E1");
  expect(bracket(E[3], E[6]), E[0], "[E4,E7] = E1");

  out.coframe = dual_coframe(E);
  out.frame = std::move(E);
  return out;
}

std::array<DifferentialForm, 8> sysc3_rhs(const std::vector<DifferentialForm>& w,
                                          const std::array<Expr, 12>& u, Context& ctx) {
  auto W = [&](int i, int j) { return wedge(w[i - 1], w[j - 1]); };
  auto U = [&](int i) { return u[i - 1]; };
  std::array<DifferentialForm, 8> rhs;
  rhs[0] = W(1, 6) * (2 * U(1)) + W(1, 7) * (2 * U(2)) + W(2, 6) * U(2) + W(2, 7) * U(3) +
           W(3, 6) * U(4) + W(3, 7) * U(1) - W(4, 7) - W(5, 6);
  rhs[1] = W(1, 6) * (2 * U(5)) + W(1, 7) * (2 * U(6)) + W(2, 6) * U(6) + W(2, 7) * U(7) +
           W(3, 6) * U(8) + W(3, 7) * U(5) - W(5, 7) * ctx.integer(2);
  rhs[2] = W(1, 6) * (2 * U(9)) + W(1, 7) * (2 * U(10)) + W(2, 6) * U(10) + W(2, 7) * U(11) +
           W(3, 6) * U(12) + W(3, 7) * U(9) - W(4, 6) * ctx.integer(2);
  rhs[3] = W(6, 8);
  rhs[4] = W(7, 8);
  rhs[5] = DifferentialForm(w[0].basis(), 2);
  rhs[6] = DifferentialForm(w[0].basis(), 2);
  rhs[7] = DifferentialForm(w[0].basis(), 2);
  return rhs;
}

StructuralFunctions structural_functions(const MongeSystem& m, const AdaptedFrame& f) {
  Context& ctx = *m.ctx;
  StructuralFunctions out;
  for (auto& e : out.u) e = ctx.zero();

  if (m.kind == MongeSystem::Kind::CanonicalH) {
    out.u[10] = ctx.rational(Rational(1, 2)) * ctx.deriv("h", {"y2", "y2", "y2"});
  } else {
    auto coeff = [&](const VectorField& v, int i) { return pairing(f.coframe[i], v); };
    auto expand3 = [&](const VectorField& v, const char* which) -> std::array<Expr, 3> {
      for (int i = 3; i < 8; ++i)
        if (!coeff(v, i).is_zero())
          throw ExtractionInconsistent(std::string("bracket ") + which +
                                       " has a component outside Span(E1,E2,E3)");
      return {coeff(v, 0), coeff(v, 1), coeff(v, 2)};
    };
    const auto& E = f.frame;
    VectorField b27 = bracket(E[1], E[6]);  // [E2,E7] = -(u3 E1 + u7 E2 + u11 E3)
    VectorField b37 = bracket(E[2], E[6]);  // [E3,E7] = -(u1 E1 + u5 E2 + u9 E3)
    VectorField b26 = bracket(E[1], E[5]);  // [E2,E6] = -(u2 E1 + u6 E2 + u10 E3)
    VectorField b36 = bracket(E[2], E[5]);  // [E3,E6] = -(u4 E1 + u8 E2 + u12 E3)
    if (!(bracket(E[0], E[5]) - (b37 + b37)).is_zero())
      throw ExtractionInconsistent("[E1,E6] != 2[E3,E7]");
    if (!(bracket(E[0], E[6]) - (b26 + b26)).is_zero())
      throw ExtractionInconsistent("[E1,E7] != 2[E2,E6]");
    auto a27 = expand3(b27, "[E2,E7]");
    auto a37 = expand3(b37, "[E3,E7]");
    auto a26 = expand3(b26, "[E2,E6]");
    auto a36 = expand3(b36, "[E3,E6]");
    out.u[2] = -a27[0];   // u~3
    out.u[6] = -a27[1];   // u~7
    out.u[10] = -a27[2];  // u~11
    out.u[0] = -a37[0];   // u~1
    out.u[4] = -a37[1];   // u~5
    out.u[8] = -a37[2];   // u~9
    out.u[1] = -a26[0];   // u~2
    out.u[5] = -a26[1];   // u~6
    out.u[9] = -a26[2];   // u~10
    out.u[3] = -a36[0];   // u~4
    out.u[7] = -a36[1];   // u~8
    out.u[11] = -a36[2];  // u~12
  }

  // round trip: the coordinate exterior derivative of the coframe must equal
  // the structure equations with these coefficients
  auto rhs = sysc3_rhs(f.coframe, out.u, ctx);
  for (int i = 0; i < 8; ++i)
    if (!(d(f.coframe[i]) - rhs[i]).is_zero())
      throw ExtractionInconsistent("structure-equation round trip fails for w" +
                                   std::to_string(i + 1));
  return out;
}

bool QuinticInvariant::identically_zero() const {
  for (auto& a : alpha)
    if (!a.is_zero()) return false;
  return true;
}

QuinticInvariant main_invariant(const StructuralFunctions& uu, Context& ctx) {
  auto U = [&](int i) { return uu.u[i - 1]; };
  QuinticInvariant q;
  q.alpha[0] = -U(8);
  q.alpha[1] = 3 * U(5) - 2 * U(4);
  q.alpha[2] = 6 * U(1) - 3 * U(6) - U(12);
  q.alpha[3] = U(7) - 6 * U(2) + 3 * U(9);
  q.alpha[4] = 2 * U(3) - 3 * U(10);
  q.alpha[5] = U(11);
  (void)ctx;
  return q;
}

bool flat_relations_hold(const StructuralFunctions& uu, Context& ctx) {
  auto U = [&](int i) { return uu.u[i - 1]; };
  Expr c32 = ctx.rational(Rational(3, 2));
  return (U(3) - c32 * U(10)).is_zero() && (U(4) - c32 * U(5)).is_zero() &&
         (U(7) - 3 * (2 * U(2) - U(9))).is_zero() && U(8).is_zero() && U(11).is_zero() &&
         (U(12) - 3 * (2 * U(1) - U(6))).is_zero();
}

// ---------------------------------------------------------------------------
// squarefree factorization and root profiles

namespace {

using UPoly = std::vector<Rational>;  // dense, index = degree

void utrim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly uderive(const UPoly& p) {
  UPoly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rational((long)i));
  return r;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// division; returns quotient, remainder left in a
UPoly udivmod(UPoly& a, const UPoly& b) {
  UPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (udeg(a) >= udeg(b) && !a.empty()) {
    int shift = udeg(a) - udeg(b);
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    utrim(a);
  }
  utrim(q);
  return q;
}

UPoly ugcd(UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    udivmod(a, b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

UPoly udiv_exact(UPoly a, const UPoly& b) {
  UPoly q = udivmod(a, b);
  if (!a.empty()) throw Error("inexact polynomial division");
  return q;
}

}  // namespace

std::vector<std::pair<int, std::vector<Rational>>> squarefree_factor(std::vector<Rational> f) {
  utrim(f);
  std::vector<std::pair<int, UPoly>> out;
  if (udeg(f) < 1) return out;
  // Yun's algorithm over Q
  UPoly fp = uderive(f);
  UPoly a0 = ugcd(f, fp);
  UPoly b = udiv_exact(f, a0);
  UPoly c = udiv_exact(fp, a0);
  UPoly d = c;
  {
    UPoly bp = uderive(b);
    for (size_t i = 0; i < d.size() || i < bp.size(); ++i) {
      Rational x = (i < d.size() ? d[i] : Rational(0)) - (i < bp.size() ? bp[i] : Rational(0));
      if (i < d.size())
        d[i] = x;
      else
        d.push_back(x);
    }
    utrim(d);
  }
  int i = 1;
  while (udeg(b) >= 1) {
    UPoly ai = ugcd(b, d);
    if (udeg(ai) >= 1) out.emplace_back(i, ai);
    b = udiv_exact(b, ai.empty() ? UPoly{Rational(1)} : ai);
    UPoly bp = uderive(b);
    UPoly dnew = udiv_exact(d, ai.empty() ? UPoly{Rational(1)} : ai);
    for (size_t k = 0; k < dnew.size() || k < bp.size(); ++k) {
      Rational x =
          (k < dnew.size() ? dnew[k] : Rational(0)) - (k < bp.size() ? bp[k] : Rational(0));
      if (k < dnew.size())
        dnew[k] = x;
      else
        dnew.push_back(x);
    }
    utrim(dnew);
    d = std::move(dnew);
    ++i;
  }
  return out;
}

std::string RootProfile::str() const {
  if (flat) return "identically zero";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [mult, deg] : factors) {
    if (!first) os << ", ";
    os << mult;
    if (deg > 1) os << " (x" << deg << ")";
    first = false;
  }
  os << "}";
  if (fivefold) os << " fivefold";
  return os.str();
}

RootProfile quintic_multiplicity(const QuinticInvariant& q, Context& ctx,
                                 const std::optional<std::map<AtomId, Rational>>& point) {
  RootProfile r;
  if (q.identically_zero()) {
    r.flat = true;
    return r;
  }
  std::vector<Rational> coef(6, Rational(0));
  bool constant = true;
  for (auto& a : q.alpha)
    if (!a.is_rational()) constant = false;
  if (constant) {
    for (int k = 0; k < 6; ++k) coef[k] = q.alpha[k].rational_value();
  } else {
    if (!point)
      throw Error("non-constant quintic coefficients need a point assignment");
    for (int k = 0; k < 6; ++k) coef[k] = ctx.eval_rational(q.alpha[k], *point);
  }
  bool any = false;
  for (auto& c : coef) any = any || c != 0;
  if (!any) throw AllCoefficientsZero("quintic vanishes at the requested point");

  auto factors = squarefree_factor(coef);
  int root_degrees = 0;
  for (auto& [mult, f] : factors) {
    r.factors.emplace_back(mult, static_cast<int>(f.size()) - 1);
    root_degrees += mult * (static_cast<int>(f.size()) - 1);
  }
  // fivefold: exactly one linear squarefree factor of multiplicity five
  r.fivefold = factors.size() == 1 && factors[0].first == 5 && factors[0].second.size() == 2;
  (void)root_degrees;
  return r;
}

// ---------------------------------------------------------------------------
// reduced structure group

const std::vector<std::string>& G0Element::parameter_names() {
  static const std::vector<std::string> names = {
      "a16", "a17", "a18", "a21", "a22", "a23", "a26", "a27", "a28", "a29", "a34", "a35",
      "a36", "a38", "a42", "a43", "a44", "a45", "a46", "a49", "b5",  "b6",  "b7"};
  return names;
}

G0Element G0Element::symbolic(Context& ctx) {
  G0Element g;
  for (auto& n : parameter_names()) g.par[n] = ctx.sym(ctx.parameter(n));
  return g;
}

G0Element G0Element::random(Context& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> v(-6, 6);
  G0Element g;
  for (auto& n : parameter_names()) g.par[n] = ctx.integer(v(rng));
  auto nonzero = [&](const char* n) {
    while (g.par[n].is_zero()) g.par[n] = ctx.integer(v(rng));
  };
  nonzero("a29");
  nonzero("a38");
  nonzero("a49");
  nonzero("b7");
  // keep 1 - b5 b6 away from zero
  while ((ctx.one() - g.par["b5"] * g.par["b6"]).is_zero()) g.par["b6"] = ctx.integer(v(rng));
  return g;
}

ExprMatrix G0Element::matrix(Context& ctx) const {
  auto P = [&](const char* n) { return par.at(n); };
  Expr z = ctx.zero();
  Expr b5 = P("b5"), b6 = P("b6"), b7 = P("b7");
  Expr a29 = P("a29"), a38 = P("a38"), a49 = P("a49");
  Expr b72 = b7 * b7;
  std::vector<std::vector<Expr>> rows = {
      {a29 * a38 * a49 * (ctx.one() + b5 * b6) * b72, a29 * a38 * a49 * b5 * b72,
       a29 * a38 * a49 * b6 * b72, z, z, z, z, z},
      {2 * (a38 * a38 * a49 * b6 * b72), a38 * a38 * a49 * b72, a38 * a38 * a49 * b6 * b6 * b72,
       z, z, z, z, z},
      {2 * (a29 * a29 * a49 * b5 * b72), a29 * a29 * a49 * b5 * b5 * b72, a29 * a29 * a49 * b72,
       z, z, z, z, z},
      {P("a16"), P("a17"), P("a18"), a29 * a49 * b7, a29 * a49 * b5 * b7, z, z, z},
      {P("a21"), P("a22"), P("a23"), a38 * a49 * b6 * b7, a38 * a49 * b7, z, z, z},
      {P("a26"), P("a27"), P("a28"), a29, a29 * b5, a29 * b7, a29 * b5 * b7, z},
      {P("a34"), P("a35"), P("a36"), a38 * b6, a38, a38 * b6 * b7, a38 * b7, z},
      {P("a42"), P("a43"), P("a44"), P("a45"), P("a46"), z, z, a49}};
  ExprMatrix m(8, 8, ctx);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m.at(i, j) = rows[i][j];
  return m;
}

Expr G0Element::stated_determinant(Context& ctx) const {
  Expr d = ctx.one();
  d = d * ctx.pow_int(par.at("a29"), 5) * ctx.pow_int(par.at("a38"), 5) *
      ctx.pow_int(par.at("a49"), 6);
  d = d * ctx.pow_int(ctx.one() - par.at("b5") * par.at("b6"), 5);
  d = d * ctx.pow_int(par.at("b7"), 10);
  return d;
}

Expr determinant(const ExprMatrix& m, Context& ctx) {
  if (m.rows != m.cols) throw Error("determinant of a non-square matrix");
  ExprMatrix a = m;
  int n = m.rows;
  Expr det = ctx.one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return ctx.zero();
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a.v[piv * n + c], a.v[col * n + c]);
      det = -det;
    }
    Expr p = a.at(col, col);
    det = det * p;
    for (int r = col + 1; r < n; ++r) {
      Expr f = a.at(r, col);
      if (f.is_zero()) continue;
      for (int c = col; c < n; ++c) a.at(r, c) = a.at(r, c) - f * a.at(col, c) / p;
    }
  }
  return det;
}

bool verify_t236_identity(Context& ctx, const G0Element& g, const std::array<Expr, 12>& uu) {
  BasisPtr basis = abstract_basis({"w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8"});
  std::vector<DifferentialForm> w;
  for (int i = 0; i < 8; ++i) w.push_back(DifferentialForm::basis_one_form(basis, i, ctx));
  auto rhs = sysc3_rhs(w, uu, ctx);

  ExprMatrix A = g.matrix(ctx);
  auto theta = [&](int i) {  // theta^i, 1-based
    DifferentialForm f(basis, 1);
    for (int j = 0; j < 8; ++j) f.add({j}, A.at(i - 1, j));
    return f;
  };
  // d(theta^2) with the group entries constant
  DifferentialForm dth2(basis, 2);
  for (int j = 0; j < 8; ++j) {
    if (A.at(1, j).is_zero()) continue;
    dth2 = dth2 + rhs[j] * A.at(1, j);
  }
  // t236 = a38^2 T / (a29^3 b7 (b5 b6 - 1)^3)
  auto U = [&](int i) { return uu[i - 1]; };
  Expr b6 = g.par.at("b6");
  Expr T = -U(8) + (3 * U(5) - 2 * U(4)) * b6 +
           (6 * U(1) - 3 * U(6) - U(12)) * b6 * b6 +
           (U(7) - 6 * U(2) + 3 * U(9)) * ctx.pow_int(b6, 3) +
           (2 * U(3) - 3 * U(10)) * ctx.pow_int(b6, 4) + U(11) * ctx.pow_int(b6, 5);
  Expr denom = ctx.pow_int(g.par.at("a29"), 3) * g.par.at("b7") *
               ctx.pow_int(g.par.at("b5") * b6 - ctx.one(), 3);
  Expr t236 = g.par.at("a38") * g.par.at("a38") * T / denom;

  DifferentialForm lhs = dth2 - wedge(theta(3), theta(6)) * t236;
  DifferentialForm all =
      wedge(wedge(wedge(theta(1), theta(2)), wedge(theta(4), theta(5))),
            wedge(theta(7), theta(8)));
  return wedge(lhs, all).is_zero();
}

}  // namespace monge8
