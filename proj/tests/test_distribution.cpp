#include <random>

#include "doctest.h"
#include "monge8/distribution.hpp"
#include "monge8/monge.hpp"

using namespace monge8;

TEST_CASE("growth vectors of small examples") {
  Context ctx;
  Chart c3 = Chart::make(ctx, {"x", "y", "z"});

  // Span(dx, dy): stabilizes below the dimension
  Distribution D1{c3, {VectorField::basis(c3, 0), VectorField::basis(c3, 1)}};
  CHECK(derived_flag(D1).ranks == std::vector<int>{2, 2});

  // contact case Span(dx, dy + x dz)
  VectorField v = VectorField::basis(c3, 1);
  v.comp[2] = ctx.sym("x");
  Distribution D2{c3, {VectorField::basis(c3, 0), v}};
  CHECK(derived_flag(D2).ranks == std::vector<int>{2, 3});
}

TEST_CASE("flat Monge distribution has growth (3,5,8)") {
  Context ctx;
  MongeSystem m = flat_system(ctx);
  Distribution D = distribution_of(m);
  GrowthVector g = derived_flag(D);
  CHECK(g.ranks == std::vector<int>{3, 5, 8});

  // the same ranks at 50 random rational points
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<AtomId, Rational> pt;
    for (AtomId a : m.chart.coords) {
      Rational v(num(rng), den(rng));
      v.canonicalize();
      pt[a] = v;
    }
    GrowthVector gp = derived_flag_at_point(D, pt);
    CHECK(gp.ranks == g.ranks);
  }
}

TEST_CASE("monge symbol shape checks") {
  Context ctx;
  MongeSystem m = flat_system(ctx);
  Distribution D = distribution_of(m);
  SymbolReport rep = check_monge_symbol(D);
  CHECK(rep.h_abelian);
  CHECK(rep.h_generates);

  // a 3-plane of commuting fields in R^8 is not Monge
  Context ctx2;
  Chart c8 = Chart::make(ctx2, {"c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"});
  Distribution bad{c8,
                   {VectorField::basis(c8, 0), VectorField::basis(c8, 1),
                    VectorField::basis(c8, 2)}};
  CHECK_THROWS_AS(check_monge_symbol(bad), NotMongeShape);
}

TEST_CASE("rank drop at a point is reported with a locus certificate") {
  Context ctx;
  Chart c2 = Chart::make(ctx, {"x", "y"});
  VectorField w = VectorField::zero(c2);
  w.comp[1] = ctx.sym("x");  // x d/dy
  Distribution D{c2, {VectorField::basis(c2, 0), w}};
  CHECK(derived_flag(D).ranks.front() == 2);
  std::map<AtomId, Rational> origin = {{ctx.require_symbol("x"), Rational(0)},
                                       {ctx.require_symbol("y"), Rational(0)}};
  bool threw = false;
  try {
    derived_flag_at_point(D, origin);
  } catch (const RankDropOnLocus& e) {
    threw = true;
    // the pivot certificate vanishes on the locus x = 0
    CHECK(ctx.eval_rational(e.locus, origin) == 0);
  }
  CHECK(threw);
}

TEST_CASE("growth vector is invariant under invertible changes of generators") {
  Context ctx;
  MongeSystem m = flat_system(ctx);
  Distribution D = distribution_of(m);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> c(-2, 2);
  auto x1 = ctx.sym("x1");
  for (int trial = 0; trial < 5; ++trial) {
    // unimodular 3x3 with polynomial entries: lower-triangular times
    // upper-triangular with unit diagonals
    Expr l10 = ctx.integer(c(rng)) + x1 * ctx.integer(c(rng));
    Expr l20 = ctx.integer(c(rng));
    Expr l21 = ctx.integer(c(rng)) * ctx.sym("xd2");
    Expr u01 = ctx.integer(c(rng)) * ctx.sym("xd1");
    Expr u02 = ctx.integer(c(rng));
    Expr u12 = ctx.integer(c(rng)) + ctx.sym("t") * ctx.integer(c(rng));
    auto& g = D.generators;
    std::vector<VectorField> lower = {g[0], g[1] + g[0] * l10,
                                      g[2] + g[0] * l20 + g[1] * l21};
    std::vector<VectorField> gen = {lower[0] + lower[1] * u01 + lower[2] * u02,
                                    lower[1] + lower[2] * u12, lower[2]};
    Distribution Dt{D.chart, gen};
    CHECK(derived_flag(Dt).ranks == std::vector<int>{3, 5, 8});
  }
}
