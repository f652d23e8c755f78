#include <sstream>

#include "doctest.h"
#include "monge8/eds.hpp"
#include "monge8/parser.hpp"

using namespace monge8;

namespace {

// the canonical fivefold-root system: coframe w1..w8 with the single scalar u
// and its derived tower of fourteen scalars
AbstractEDS canonical_u_system(Context& ctx, bool with_scalar_rules = true) {
  AbstractEDS s(ctx, {"w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8"});
  auto P = [&](const char* src) { return parse_expr(ctx, src); };
  auto W = [&](int i, int j) { return s.wedge_basis(i - 1, j - 1); };
  for (auto& n : {"u", "v1", "v2", "w1s", "w2s", "w3s", "z1", "z2", "z3", "z4"})
    s.declare_scalar(n, DifferentialForm());
  for (auto& n : {"z5", "z6", "z7", "z8", "z9"}) s.declare_free_scalar(n);

  s.set_structure(0, -W(4, 7) - W(5, 6));
  s.set_structure(1, W(5, 7) * ctx.integer(-2));
  s.set_structure(2, W(2, 7) * P("u") - W(4, 6) * ctx.integer(2));
  s.set_structure(3, W(6, 8));
  s.set_structure(4, W(7, 8));
  s.set_structure(5, s.zero_form(2));
  s.set_structure(6, s.zero_form(2));
  s.set_structure(7, s.zero_form(2));

  if (with_scalar_rules) {
    auto O = [&](int i) { return s.one_form(i - 1); };
    s.set_scalar_rule("u", O(2) * P("v1") + O(7) * P("v2"));
    s.set_scalar_rule("v1", O(2) * P("w1s") + O(7) * P("w2s"));
    s.set_scalar_rule("v2", O(2) * P("w2s") + O(5) * P("2*v1") + O(7) * P("w3s"));
    s.set_scalar_rule("w1s", O(2) * P("z1") + O(7) * P("z2"));
    s.set_scalar_rule("w2s", O(2) * P("z2") + O(5) * P("2*w1s") + O(7) * P("z3"));
    s.set_scalar_rule("w3s",
                      O(2) * P("z3") + O(5) * P("4*w2s") + O(7) * P("z4") + O(8) * P("2*v1"));
    s.set_scalar_rule("z1", O(2) * P("z5") + O(7) * P("z6"));
    s.set_scalar_rule("z2", O(2) * P("z6") + O(5) * P("2*z1") + O(7) * P("z7"));
    s.set_scalar_rule("z3", O(2) * P("z7") + O(5) * P("4*z2") + O(7) * P("z8") + O(8) * P("2*w1s"));
    s.set_scalar_rule("z4", O(2) * P("z8") + O(5) * P("6*z3") + O(7) * P("z9") + O(8) * P("6*w2s"));
  }
  return s;
}

}  // namespace

TEST_CASE("Maurer-Cartan table closes exactly") {
  Context ctx;
  AbstractEDS mc = load_golden_eds(ctx, "mc21");
  REQUIRE(mc.dim() == 21);
  ClosureReport rep = check_closure(mc);
  CHECK(rep.closed);
  for (auto& r : rep.residuals) CHECK(r.exact);
}

TEST_CASE("21-dim table: Lie algebra, Jacobi, Killing rank") {
  Context ctx;
  AbstractEDS mc = load_golden_eds(ctx, "mc21");
  LieAlgebraTable t = extract_lie_algebra(mc);
  CHECK(t.n == 21);
  CHECK(t.jacobi_holds());
  CHECK(t.killing_rank() == 21);
}

TEST_CASE("mutated Maurer-Cartan table fails closure on the touched equation") {
  Context ctx;
  AbstractEDS mc = load_golden_eds(ctx, "mc21");
  // flip the sign of the -2 th5^th7 term in d th2
  int i2 = mc.coframe_index("th2");
  DifferentialForm dw = mc.structure(i2);
  DifferentialForm bump(mc.basis(), 2);
  bump.add({mc.coframe_index("th5"), mc.coframe_index("th7")}, ctx.integer(4));
  mc.set_structure(i2, dw + bump);
  ClosureReport rep = check_closure(mc);
  CHECK(!rep.closed);
  bool touched = false;
  for (auto& r : rep.residuals)
    if (!r.exact && !r.absorbed) touched = true;
  CHECK(touched);
}

TEST_CASE("canonical fivefold system closes (free tower absorbed)") {
  Context ctx;
  AbstractEDS s = canonical_u_system(ctx);
  ClosureReport rep = check_closure(s);
  CHECK(rep.closed);
  // the first layers close exactly; the z-layer absorbs into dz5..dz9
  std::map<std::string, const EquationResidual*> by_name;
  for (auto& r : rep.residuals) by_name[r.equation] = &r;
  for (auto& n : {"w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "u", "v1", "v2"})
    CHECK(by_name.at(n)->exact);
  for (auto& n : {"z1", "z2", "z3", "z4"}) {
    CHECK((by_name.at(n)->exact || by_name.at(n)->absorbed));
  }
}

TEST_CASE("deleting the du rule is rejected") {
  Context ctx;
  AbstractEDS s(ctx, {"w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8"});
  ctx.parameter("u");
  auto W = [&](int i, int j) { return s.wedge_basis(i - 1, j - 1); };
  s.set_structure(2, W(2, 7) * parse_expr(ctx, "u") - W(4, 6) * ctx.integer(2));
  s.set_structure(0, -W(4, 7) - W(5, 6));
  CHECK_THROWS_AS(check_closure(s), UndeclaredScalar);
}

TEST_CASE("model algebra tables: dims, Jacobi, mutation rigidity") {
  Context ctx;

  AbstractEDS g11 = load_golden_eds(ctx, "sys11");
  LieAlgebraTable t11 = extract_lie_algebra(g11);
  CHECK(t11.n == 11);
  CHECK(t11.jacobi_holds());

  AbstractEDS sca = load_golden_eds(ctx, "sca");
  for (auto [epsv, s4v] : {std::pair<long, long>{-1, 0}, std::pair<long, long>{1, 2}}) {
    AbstractEDS bound = sca;
    std::map<AtomId, Expr> subs = {{ctx.require_symbol("eps"), ctx.integer(epsv)},
                                   {ctx.require_symbol("S4"), ctx.integer(s4v)}};
    for (int i = 0; i < bound.dim(); ++i) {
      DifferentialForm f(bound.basis(), 2);
      for (auto& [idx, c] : bound.structure(i).terms()) {
        Expr cc = c;
        for (auto& [sym, v] : subs) cc = ctx.substitute(cc, sym, v);
        f.add(idx, cc);
      }
      bound.set_structure(i, f);
    }
    LieAlgebraTable t10 = extract_lie_algebra(bound);
    CHECK(t10.n == 10);
    CHECK(t10.jacobi_holds());
  }

  AbstractEDS ss180 = load_golden_eds(ctx, "ss180");
  LieAlgebraTable t9p, t9m;
  for (long epsv : {1L, -1L}) {
    AbstractEDS bound = ss180;
    for (int i = 0; i < bound.dim(); ++i) {
      DifferentialForm f(bound.basis(), 2);
      for (auto& [idx, c] : bound.structure(i).terms())
        f.add(idx, ctx.substitute(c, ctx.require_symbol("eps"), ctx.integer(epsv)));
      bound.set_structure(i, f);
    }
    LieAlgebraTable t9 = extract_lie_algebra(bound);
    CHECK(t9.n == 9);
    CHECK(t9.jacobi_holds());
    (epsv == 1 ? t9p : t9m) = t9;
  }
  CHECK(t9p.c != t9m.c);  // the two sign classes are different tables

  // single-constant mutations break Jacobi
  int broken = 0, total = 0;
  for (int i = 0; i < t11.n && total < 200; ++i)
    for (int j = 0; j < t11.n; ++j)
      for (int k = j + 1; k < t11.n; ++k) {
        if (t11.at(i, j, k) == 0) continue;
        LieAlgebraTable m = t11;
        m.set(i, j, k, m.at(i, j, k) + 1);
        ++total;
        if (!m.jacobi_holds()) ++broken;
      }
  CHECK(total > 0);
  CHECK(broken == total);
}

TEST_CASE("specializing the free curvature scalar reproduces the model family") {
  Context ctx;
  AbstractEDS ssc = load_golden_eds(ctx, "ssc");
  ClosureReport rep = check_closure(ssc);
  CHECK(rep.closed);

  AbstractEDS spec = ssc.specialize({{"S5", parse_expr(ctx, "-(eps+3*S4^2)")}});
  // after binding, dS4 must collapse to zero
  for (auto& sc : spec.scalars())
    if (sc.name == "S4") {
      CHECK(sc.known);
      CHECK(sc.differential.is_zero());
    }
  AbstractEDS sca = load_golden_eds(ctx, "sca");
  for (int i = 0; i < sca.dim(); ++i) {
    DifferentialForm a = spec.structure(i);
    DifferentialForm b = sca.structure(i);
    REQUIRE(a.term_count() == b.term_count());
    for (auto& [idx, c] : a.terms()) CHECK(c == b.coeff(idx));
  }
}

TEST_CASE("inconsistent bindings are rejected") {
  Context ctx;
  AbstractEDS s = canonical_u_system(ctx);
  // du = v1 w2 + v2 w7; binding u := 1 contradicts unless v1 = v2 = 0
  CHECK_THROWS_AS(s.specialize({{"u", ctx.one()}}), InconsistentBinding);
  AbstractEDS s2 = s.specialize({{"v1", ctx.zero()},
                                 {"v2", ctx.zero()},
                                 {"w1s", ctx.zero()},
                                 {"w2s", ctx.zero()},
                                 {"w3s", ctx.zero()},
                                 {"z1", ctx.zero()},
                                 {"z2", ctx.zero()},
                                 {"z3", ctx.zero()},
                                 {"z4", ctx.zero()},
                                 {"z5", ctx.zero()},
                                 {"z6", ctx.zero()},
                                 {"z7", ctx.zero()},
                                 {"z8", ctx.zero()},
                                 {"z9", ctx.zero()}});
  AbstractEDS s3 = s2.specialize({{"u", ctx.one()}});
  CHECK(check_closure(s3).closed);
}

TEST_CASE("reduced bundle system specializes to the 11-dim model") {
  Context ctx;
  // the 11-dim reduced system with torsion coefficients left free
  std::string syuu = R"({
    "name": "syuu",
    "coframe": ["th1","th2","th3","th4","th5","th6","th7","th8","Om1","Om2","Om4"],
    "scalars": [{"name":"t412","free":true},{"name":"t415","free":true},
                {"name":"t417","free":true},{"name":"r212","free":true}],
    "structure": {
      "th1": [["1","Om1","th1"],["1","Om2","th2"],["1","Om4","th1"],
              ["-1","th4","th7"],["-1","th5","th6"]],
      "th2": [["2","Om1","th2"],["-2","th5","th7"]],
      "th3": [["2","Om2","th1"],["2","Om4","th3"],["-2","th4","th6"],
              ["1","th2","th5"],["1","th2","th7"]],
      "th4": [["3","Om1","th4"],["1","Om2","th5"],["-1","Om4","th4"],
              ["t412","th1","th2"],["t415","th1","th5"],["t417","th1","th7"],
              ["1","th4","th8"],["1","th6","th8"]],
      "th5": [["4","Om1","th5"],["-2","Om4","th5"],["t415","th2","th5"],
              ["t417","th2","th7"],["1","th5","th8"],["1","th7","th8"]],
      "th6": [["-6","Om1","th4"],["-3","Om1","th6"],["1","Om2","th7"],["4","Om4","th4"],
              ["3","Om4","th6"],["-t412","th1","th2"],["2*t417-3*t415","th1","th5"],
              ["t417-2*t415","th1","th7"],["-1","th4","th8"],["-1","th6","th8"]],
      "th7": [["-6","Om1","th5"],["-2","Om1","th7"],["4","Om4","th5"],["2","Om4","th7"],
              ["2*t417-3*t415","th2","th5"],["t417-2*t415","th2","th7"],
              ["-1","th5","th8"],["-1","th7","th8"]],
      "th8": [["6","Om1","th8"],["-4","Om4","th8"],["-2*t412","th2","th5"],
              ["2*t417","th5","th7"]],
      "Om1": [["-1/3*t412","th2","th5"],["-1/3*t412","th2","th7"],
              ["t417-t415","th5","th7"]],
      "Om2": [["-1","Om1","Om2"],["-1","Om2","Om4"],["r212","th1","th2"],
              ["-4/3*t412","th1","th5"],["-4/3*t412","th1","th7"],["t412","th2","th4"],
              ["t412","th2","th6"],["2*t417-3*t415","th4","th5"],
              ["t417-2*t415","th4","th7"],["t415","th5","th6"],["-t417","th6","th7"]],
      "Om4": []
    }
  })";
  AbstractEDS sys = eds_from_json(ctx, syuu);
  AbstractEDS spec = sys.specialize({{"t412", ctx.zero()},
                                     {"t415", ctx.zero()},
                                     {"t417", ctx.zero()},
                                     {"r212", ctx.zero()}});
  AbstractEDS g11 = load_golden_eds(ctx, "sys11");
  REQUIRE(spec.dim() == g11.dim());
  for (int i = 0; i < g11.dim(); ++i) {
    DifferentialForm a = spec.structure(i);
    DifferentialForm b = g11.structure(i);
    REQUIRE(a.term_count() == b.term_count());
    for (auto& [idx, c] : a.terms()) CHECK(c == b.coeff(idx));
  }
}

TEST_CASE("serialization round trip") {
  Context ctx;
  AbstractEDS s = load_golden_eds(ctx, "ssc");
  std::string text = eds_to_json(s);
  Context ctx2;
  AbstractEDS back = eds_from_json(ctx2, text);
  CHECK(back.dim() == s.dim());
  CHECK(back.coframe_names() == s.coframe_names());
  CHECK(back.scalars().size() == s.scalars().size());
  for (int i = 0; i < s.dim(); ++i) {
    CHECK(back.structure(i).term_count() == s.structure(i).term_count());
    for (auto& [idx, c] : s.structure(i).terms())
      CHECK(back.structure(i).coeff(idx).str() == c.str());
  }
}

TEST_CASE("checksum guard") {
  Context ctx;
  CHECK_THROWS_AS(load_golden_eds(ctx, "no_such_table"), MissingTable);
}
