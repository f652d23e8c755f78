#include <random>

#include "doctest.h"
#include "monge8/monge.hpp"
#include "monge8/parser.hpp"

using namespace monge8;

TEST_CASE("flat pipeline: frame, vanishing structure functions, flat quintic") {
  Context ctx;
  MongeSystem m = flat_system(ctx);
  AdaptedFrame f = build_frame(m);
  StructuralFunctions u = structural_functions(m, f);
  for (auto& e : u.u) CHECK(e.is_zero());
  QuinticInvariant q = main_invariant(u, ctx);
  CHECK(q.identically_zero());
  CHECK(flat_relations_hold(u, ctx));
  RootProfile p = quintic_multiplicity(q, ctx);
  CHECK(p.flat);
}

TEST_CASE("cubic deformation: u~11 = 3, fivefold root") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"t", "x1", "x2", "xd1", "xd2", "z11", "z12", "z22"});
  (void)chart;
  Expr xd1 = ctx.sym("xd1"), xd2 = ctx.sym("xd2");
  MongeSystem m = explicit_system(ctx, xd1 * xd1, xd1 * xd2, xd2 * xd2 + xd1 * xd1 * xd1);
  AdaptedFrame f = build_frame(m);
  StructuralFunctions u = structural_functions(m, f);
  for (int i = 0; i < 12; ++i) {
    if (i == 10)
      CHECK(u.u[i] == ctx.integer(3));
    else
      CHECK(u.u[i].is_zero());
  }
  QuinticInvariant q = main_invariant(u, ctx);
  CHECK(!q.identically_zero());
  CHECK(!flat_relations_hold(u, ctx));
  RootProfile p = quintic_multiplicity(q, ctx);
  CHECK(p.fivefold);
  CHECK(p.factors == std::vector<std::pair<int, int>>{{5, 1}});
}

TEST_CASE("opaque deformation h(xd1): u~11 = h'''/2, all others zero") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"t", "x1", "x2", "xd1", "xd2", "z11", "z12", "z22"});
  (void)chart;
  ctx.declare_function("h", {ctx.require_symbol("xd1")});
  Expr xd1 = ctx.sym("xd1"), xd2 = ctx.sym("xd2");
  Expr h = ctx.deriv("h", {});
  MongeSystem m = explicit_system(ctx, xd1 * xd1, xd1 * xd2, xd2 * xd2 + h);
  AdaptedFrame f = build_frame(m);
  StructuralFunctions u = structural_functions(m, f);
  Expr h3 = ctx.deriv("h", {"xd1", "xd1", "xd1"});
  CHECK(u.u[10] == ctx.rational(Rational(1, 2)) * h3);
  for (int i = 0; i < 12; ++i)
    if (i != 10) CHECK(u.u[i].is_zero());
}

TEST_CASE("canonical-h variant round-trips the integrated coframe") {
  Context ctx;
  MongeSystem m = canonical_h(ctx);
  AdaptedFrame f = build_frame(m);
  StructuralFunctions u = structural_functions(m, f);  // includes the round trip
  CHECK(u.u[10] == ctx.rational(Rational(1, 2)) * ctx.deriv("h", {"y2", "y2", "y2"}));
  // duality of the reconstructed frame
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(pairing(f.coframe[j], f.frame[i]) == (i == j ? ctx.one() : ctx.zero()));
}

TEST_CASE("quintic with constant term only has no roots") {
  Context ctx;
  StructuralFunctions u;
  for (auto& e : u.u) e = ctx.zero();
  u.u[7] = ctx.one();  // u~8 = 1 => T = -1
  QuinticInvariant q = main_invariant(u, ctx);
  CHECK(q.alpha[0] == -ctx.one());
  RootProfile p = quintic_multiplicity(q, ctx);
  CHECK(!p.flat);
  CHECK(p.factors.empty());
}

TEST_CASE("root profile of b^2 (b-1)^3") {
  // coefficients of b^5 - 3b^4 + 3b^3 - b^2
  std::vector<Rational> coef = {0, 0, -1, 3, -3, 1};
  auto f = squarefree_factor(coef);
  std::vector<std::pair<int, int>> profile;
  for (auto& [m, p] : f) profile.emplace_back(m, (int)p.size() - 1);
  CHECK(profile == std::vector<std::pair<int, int>>{{2, 1}, {3, 1}});
}

TEST_CASE("power-law system has a fivefold root after evaluation") {
  Context ctx;
  MongeSystem m = power_law(ctx, Rational(4));
  AdaptedFrame f = build_frame(m);
  StructuralFunctions u = structural_functions(m, f);
  CHECK(u.u[10] == 12 * ctx.sym("xd1"));
  QuinticInvariant q = main_invariant(u, ctx);
  std::map<AtomId, Rational> pt;
  for (AtomId a : m.chart.coords) pt[a] = Rational(1);
  RootProfile p = quintic_multiplicity(q, ctx, pt);
  CHECK(p.fivefold);
}

TEST_CASE("flatness relations agree with vanishing of the quintic") {
  Context ctx;
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<long> v(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    StructuralFunctions u;
    if (trial % 2 == 0) {
      // generic values
      for (auto& e : u.u) e = ctx.rational(Rational(v(rng), 1 + std::abs(v(rng))));
    } else {
      // impose the flat relations on six free values
      Rational u1(v(rng)), u2(v(rng)), u5(v(rng)), u6(v(rng)), u9(v(rng)), u10(v(rng));
      for (auto& e : u.u) e = ctx.zero();
      u.u[0] = ctx.rational(u1);
      u.u[1] = ctx.rational(u2);
      u.u[4] = ctx.rational(u5);
      u.u[5] = ctx.rational(u6);
      u.u[8] = ctx.rational(u9);
      u.u[9] = ctx.rational(u10);
      u.u[2] = ctx.rational(u10 * Rational(3, 2));            // u~3
      u.u[3] = ctx.rational(u5 * Rational(3, 2));             // u~4
      u.u[6] = ctx.rational(Rational(3) * (2 * u2 - u9));     // u~7
      u.u[11] = ctx.rational(Rational(3) * (2 * u1 - u6));    // u~12
    }
    CHECK(flat_relations_hold(u, ctx) == main_invariant(u, ctx).identically_zero());
  }
}

TEST_CASE("G0 determinant formula") {
  Context ctx;
  G0Element g = G0Element::symbolic(ctx);
  Expr det = determinant(g.matrix(ctx), ctx);
  CHECK((det - g.stated_determinant(ctx)).is_zero());
}

TEST_CASE("main-invariant coefficient identity at random group elements") {
  Context ctx;
  std::array<Expr, 12> u;
  for (int i = 0; i < 12; ++i) u[i] = ctx.sym(ctx.parameter("u" + std::to_string(i + 1)));
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 12; ++trial) {
    G0Element g = G0Element::random(ctx, rng);
    CHECK(verify_t236_identity(ctx, g, u));
  }
}

TEST_CASE("affine additions to the f's keep the growth vector") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"t", "x1", "x2", "xd1", "xd2", "z11", "z12", "z22"});
  (void)chart;
  Expr xd1 = ctx.sym("xd1"), xd2 = ctx.sym("xd2");
  for (long a : {0L, 1L, -2L}) {
    Expr f11 = xd1 * xd1 + ctx.integer(a) * xd1 + ctx.integer(1);
    Expr f12 = xd1 * xd2 + ctx.integer(a) * xd2;
    Expr f22 = xd2 * xd2 + ctx.integer(a);
    MongeSystem m = explicit_system(ctx, f11, f12, f22);
    CHECK(derived_flag(distribution_of(m)).ranks == std::vector<int>{3, 5, 8});
  }
}

TEST_CASE("integrated coframe matches the jet coframe after the coordinate change") {
  // concrete one-variable h: pull the integrated forms back along the listed
  // change of coordinates and apply the listed linear combination
  Context ctx;
  MongeSystem m = canonical_h(ctx);
  AdaptedFrame f = build_frame(m);
  Chart jet = Chart::make(ctx, {"t", "x1", "x2", "xd1", "xd2", "z11", "z12", "z22"});
  auto S = [&](const char* n) { return ctx.sym(n); };
  Expr t = S("t"), x1 = S("x1"), x2 = S("x2"), xd1 = S("xd1"), xd2 = S("xd2");
  Expr z11 = S("z11"), z12 = S("z12"), z22 = S("z22");

  for (const char* hsrc : {"y2^3/3", "y2^5"}) {
    Expr hy = parse_expr(ctx, hsrc);
    uint32_t hf = *ctx.find_function("h");
    // h and its first two derivatives as functions of xd1
    Expr hx = ctx.substitute(hy, ctx.require_symbol("y2"), xd1);
    Expr hpx = ctx.substitute(ctx.diff(hy, "y2"), ctx.require_symbol("y2"), xd1);
    Expr hppx = ctx.substitute(ctx.diff(ctx.diff(hy, "y2"), "y2"), ctx.require_symbol("y2"), xd1);

    std::map<AtomId, Expr> phi = {
        {ctx.require_symbol("y1"), t},
        {ctx.require_symbol("y2"), xd1},
        {ctx.require_symbol("y3"), xd2},
        {ctx.require_symbol("y4"), -x1 + t * xd1},
        {ctx.require_symbol("y5"), -x2 + t * xd2},
        {ctx.require_symbol("y6"), z22 + t * xd1 * hpx - t * xd2 * xd2 - t * hx - x1 * hpx},
        {ctx.require_symbol("y7"), z11 - 2 * x1 * xd1 + t * xd1 * xd1},
        {ctx.require_symbol("y8"), z12 - x2 * xd1}};

    std::vector<DifferentialForm> w;
    for (int i = 0; i < 8; ++i) {
      DifferentialForm concrete(f.coframe[i].basis(), 1);
      for (auto& [idx, c] : f.coframe[i].terms())
        concrete.add(idx, ctx.substitute_function(c, hf, hy));
      w.push_back(pullback(concrete, jet, phi));
    }

    BasisPtr jb = coordinate_basis(jet);
    auto dj = [&](const char* n) {
      return DifferentialForm::basis_one_form(jb, jet.index_of(ctx.require_symbol(n)), ctx);
    };
    Expr half = ctx.rational(Rational(1, 2));
    // listed linear combination into the canonical jet coframe
    CHECK((w[0] - w[3] * xd1 - w[4] * xd2 - (dj("z12") - dj("t") * (xd1 * xd2))).is_zero());
    CHECK((w[1] - w[4] * (2 * xd1) - (dj("z11") - dj("t") * (xd1 * xd1))).is_zero());
    CHECK((w[2] + w[1] * (half * hppx) - w[3] * (2 * xd2) - w[4] * hpx -
           (dj("z22") - dj("t") * (xd2 * xd2 + hx)))
              .is_zero());
    CHECK(((-w[3]) - (dj("x2") - dj("t") * xd2)).is_zero());
    CHECK(((-w[4]) - (dj("x1") - dj("t") * xd1)).is_zero());
    CHECK((w[5] - dj("xd2")).is_zero());
    CHECK((w[6] - dj("xd1")).is_zero());
    CHECK((w[7] - dj("t")).is_zero());
  }
}
