#include <random>

#include "doctest.h"
#include "monge8/forms.hpp"

using namespace monge8;

namespace {

DifferentialForm random_form(Context& ctx, const Chart& chart, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), pickc(0, (int)chart.dim() - 1),
      nterms(1, 4), expd(0, 2);
  BasisPtr basis = coordinate_basis(chart);
  DifferentialForm f(basis, degree);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Expr c = ctx.integer(coef(rng));
    for (int k = 0; k < 2; ++k)
      c = c * ctx.pow_int(ctx.sym(chart.coords[pickc(rng)]), expd(rng));
    std::vector<int> idx;
    for (int k = 0; k < degree; ++k) idx.push_back(pickc(rng));
    f.add(idx, c);
  }
  return f;
}

VectorField random_field(Context& ctx, const Chart& chart, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), pickc(0, (int)chart.dim() - 1), expd(0, 2);
  VectorField v = VectorField::zero(chart);
  for (size_t i = 0; i < chart.dim(); ++i) {
    Expr c = ctx.integer(coef(rng));
    c = c * ctx.pow_int(ctx.sym(chart.coords[pickc(rng)]), expd(rng));
    v.comp[i] = c;
  }
  return v;
}

}  // namespace

TEST_CASE("wedge basics") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"x", "y", "z"});
  BasisPtr b = coordinate_basis(chart);
  auto dx = DifferentialForm::basis_one_form(b, 0, ctx);
  auto dy = DifferentialForm::basis_one_form(b, 1, ctx);
  auto dz = DifferentialForm::basis_one_form(b, 2, ctx);
  auto x = ctx.sym("x");
  auto y = ctx.sym("y");

  CHECK(wedge(dx, dx).is_zero());
  CHECK((wedge(dx, dy) + wedge(dy, dx)).is_zero());
  DifferentialForm lhs = wedge(dx * x, dz * y);  // (x dx)^(y dz)
  CHECK(lhs.coeff({0, 2}) == x * y);
  // graded anticommutativity for a 1-form and a 2-form
  auto a = wedge(dx, dy);
  CHECK((wedge(a, dz) - wedge(dz, a)).is_zero());
}

TEST_CASE("exterior derivative basics") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"x", "y"});
  BasisPtr b = coordinate_basis(chart);
  auto dy = DifferentialForm::basis_one_form(b, 1, ctx);
  auto x = ctx.sym("x");

  DifferentialForm xdy = dy * x;
  DifferentialForm dxdy = d(xdy);
  CHECK(dxdy.coeff({0, 1}) == ctx.one());
  CHECK(dxdy.term_count() == 1);
}

TEST_CASE("canonical branch structure equation for omega^3") {
  // w3 = dy6 + 2 y3 dy5 - 1/2 h_22 dy7 has dw3 = u w2^w7 - 2 w4^w6, u = h_222/2
  Context ctx;
  Chart chart = Chart::make(ctx, {"y1", "y2", "y3", "y4", "y5", "y6", "y7", "y8"});
  BasisPtr b = coordinate_basis(chart);
  ctx.declare_function("h", {ctx.require_symbol("y2"), ctx.require_symbol("y7")});
  auto dyk = [&](int k) { return DifferentialForm::basis_one_form(b, k - 1, ctx); };
  auto y = [&](int k) { return ctx.sym("y" + std::to_string(k)); };
  Expr h22 = ctx.deriv("h", {"y2", "y2"});
  Expr h222 = ctx.deriv("h", {"y2", "y2", "y2"});
  Expr half = ctx.rational(Rational(1, 2));

  DifferentialForm w3 = dyk(6) + dyk(5) * (2 * y(3)) - dyk(7) * (half * h22);
  DifferentialForm w2 = dyk(7) - dyk(2) * (2 * y(4));
  DifferentialForm w7 = dyk(2);
  DifferentialForm w4 = dyk(5) - dyk(3) * y(1);
  DifferentialForm w6 = dyk(3);

  Expr u = half * h222;
  DifferentialForm expected = wedge(w2, w7) * u - wedge(w4, w6) * ctx.integer(2);
  CHECK((d(w3) - expected).is_zero());
}

TEST_CASE("bracket basics and the flat Monge fields") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"t", "x1", "x2", "xd1", "xd2", "z11", "z12", "z22"});
  auto S = [&](const char* n) { return ctx.sym(n); };
  auto coord = [&](const char* n) { return chart.index_of(ctx.require_symbol(n)); };

  // [d/dx, d/dy] = 0
  CHECK(bracket(VectorField::basis(chart, 1), VectorField::basis(chart, 2)).is_zero());

  // flat system fields
  VectorField X = VectorField::zero(chart);
  X.comp[coord("t")] = ctx.one();
  X.comp[coord("z11")] = S("xd1") * S("xd1");
  X.comp[coord("z12")] = S("xd1") * S("xd2");
  X.comp[coord("z22")] = S("xd2") * S("xd2");
  X.comp[coord("x1")] = S("xd1");
  X.comp[coord("x2")] = S("xd2");
  VectorField X1 = VectorField::basis(chart, coord("xd1"));

  // systematic expansion of [X1, X]: x1-direction 1, z11-direction 2*xd1,
  // z12-direction xd2 (the doubled z12 coefficient in some displays is a typo)
  VectorField Y1 = bracket(X1, X);
  CHECK(Y1.comp[coord("x1")] == ctx.one());
  CHECK(Y1.comp[coord("z11")] == 2 * S("xd1"));
  CHECK(Y1.comp[coord("z12")] == S("xd2"));
  CHECK(Y1.comp[coord("t")].is_zero());

  // Jacobi on random polynomial fields
  std::mt19937_64 rng(4242);
  Context c2;
  Chart small = Chart::make(c2, {"x", "y", "z"});
  for (int trial = 0; trial < 100; ++trial) {
    VectorField a = random_field(c2, small, rng);
    VectorField b = random_field(c2, small, rng);
    VectorField c = random_field(c2, small, rng);
    VectorField jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) +
                      bracket(c, bracket(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("bracket [Z11, X1] for f22 = xd2^2 + h(xd1)") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"t", "x1", "x2", "xd1", "xd2", "z11", "z12", "z22"});
  auto S = [&](const char* n) { return ctx.sym(n); };
  auto coord = [&](const char* n) { return chart.index_of(ctx.require_symbol(n)); };
  ctx.declare_function("h", {ctx.require_symbol("xd1")});
  Expr h = ctx.deriv("h", {});

  VectorField X = VectorField::zero(chart);
  X.comp[coord("t")] = ctx.one();
  X.comp[coord("z11")] = S("xd1") * S("xd1");
  X.comp[coord("z12")] = S("xd1") * S("xd2");
  X.comp[coord("z22")] = S("xd2") * S("xd2") + h;
  X.comp[coord("x1")] = S("xd1");
  X.comp[coord("x2")] = S("xd2");
  VectorField X1 = VectorField::basis(chart, coord("xd1"));
  VectorField Y1 = bracket(X1, X);
  VectorField Z11 = bracket(Y1, X1);
  VectorField B = bracket(Z11, X1);
  CHECK(B.comp[coord("z22")] == ctx.deriv("h", {"xd1", "xd1", "xd1"}));
  CHECK(B.comp[coord("z11")].is_zero());
  CHECK(B.comp[coord("z12")].is_zero());
}

TEST_CASE("dual coframe") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"x", "y", "z"});
  // coordinate frame gives coordinate differentials
  std::vector<VectorField> frame;
  for (int i = 0; i < 3; ++i) frame.push_back(VectorField::basis(chart, i));
  auto coframe = dual_coframe(frame);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(pairing(coframe[j], frame[i]) == (i == j ? ctx.one() : ctx.zero()));

  // a generic invertible frame still pairs to the identity exactly
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<VectorField> fr;
    for (int i = 0; i < 3; ++i) {
      VectorField v = VectorField::basis(chart, i);
      v = v + random_field(ctx, chart, rng) * ctx.sym("x");
      fr.push_back(v);
    }
    try {
      auto co = dual_coframe(fr);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(pairing(co[j], fr[i]) == (i == j ? ctx.one() : ctx.zero()));
    } catch (const SingularFrame&) {
      // the random bump can be degenerate; that is a legitimate outcome
    }
  }

  // singular frame detected
  std::vector<VectorField> bad = {VectorField::basis(chart, 0), VectorField::basis(chart, 0),
                                  VectorField::basis(chart, 2)};
  CHECK_THROWS_AS(dual_coframe(bad), SingularFrame);
}

TEST_CASE("d^2 = 0, Leibniz, associativity on random forms") {
  Context ctx;
  Chart chart = Chart::make(ctx, {"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"});
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 40; ++trial) {
    int da = 1 + (trial % 2), db = 1 + ((trial / 2) % 2);
    DifferentialForm a = random_form(ctx, chart, da, rng);
    DifferentialForm b = random_form(ctx, chart, db, rng);
    DifferentialForm c = random_form(ctx, chart, 1, rng);
    CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).is_zero());
    // d(a^b) = da^b + (-1)^deg(a) a^db
    DifferentialForm lhs = d(wedge(a, b));
    DifferentialForm rhs = wedge(d(a), b) +
                           (da % 2 == 0 ? wedge(a, d(b)) : -wedge(a, d(b)));
    CHECK((lhs - rhs).is_zero());
    CHECK(d(d(a)).is_zero());
    CHECK(d(d(c)).is_zero());
  }
}

TEST_CASE("basis mismatch raises") {
  Context ctx;
  Chart c1 = Chart::make(ctx, {"x", "y"});
  Chart c2 = Chart::make(ctx, {"u", "v"});
  auto f1 = DifferentialForm::basis_one_form(coordinate_basis(c1), 0, ctx);
  auto f2 = DifferentialForm::basis_one_form(coordinate_basis(c2), 0, ctx);
  CHECK_THROWS_AS(wedge(f1, f2), BasisMismatch);
}

TEST_CASE("pullback along a polynomial map") {
  Context ctx;
  Chart target = Chart::make(ctx, {"u", "v"});
  Chart source = Chart::make(ctx, {"x", "y"});
  auto x = ctx.sym("x");
  auto y = ctx.sym("y");
  // u = x^2, v = x*y ; pullback(du ^ dv) = (2x dx)^(y dx + x dy) = 2x^2 dx^dy
  BasisPtr tb = coordinate_basis(target);
  DifferentialForm dudv = wedge(DifferentialForm::basis_one_form(tb, 0, ctx),
                                DifferentialForm::basis_one_form(tb, 1, ctx));
  std::map<AtomId, Expr> phi = {{ctx.require_symbol("u"), x * x},
                                {ctx.require_symbol("v"), x * y}};
  DifferentialForm pb = pullback(dudv, source, phi);
  CHECK(pb.coeff({0, 1}) == 2 * x * x);
  CHECK(pb.term_count() == 1);
}
