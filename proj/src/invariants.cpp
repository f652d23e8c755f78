#include "monge8/invariants.hpp"

#include <sstream>

namespace monge8 {

namespace {

// sign of an expression decidable from its structure: a single-term fraction
// whose atoms are positive-flagged or enter with even powers
std::optional<int> definite_sign(Context& ctx, const Expr& e) {
  auto mono_sign = [&](const Poly& p) -> std::optional<int> {
    if (p.is_zero()) return 0;
    if (p.t.size() != 1) return std::nullopt;
    const auto& [m, c] = *p.t.begin();
    for (auto& [a, ex] : m.f) {
      const AtomInfo& ai = ctx.info(a);
      bool positive = (ai.kind == AtomKind::Power) ||
                      (ai.kind == AtomKind::Symbol && ai.positive &&
                       ai.skind != SymbolKind::SignParameter) ||
                      (ex % 2 == 0);
      if (!positive) return std::nullopt;
    }
    return c > 0 ? 1 : -1;
  };
  auto sn = mono_sign(e.num());
  auto sd = mono_sign(e.den());
  if (!sn || !sd) return std::nullopt;
  if (*sn == 0) return 0;
  return (*sn) * (*sd);
}

// derivative atom of h by pattern, e.g. hd(ctx, "2227") = D[h,y2,y2,y2,y7]
Expr hd(Context& ctx, const std::string& pattern) {
  std::vector<std::string> ix;
  for (char c : pattern) ix.push_back(std::string("y") + c);
  return ctx.deriv("h", ix);
}

Expr maybe_concrete(const MongeSystem& m, Expr e) {
  if (m.hbody) e = m.ctx->substitute_function(e, m.hfunc, *m.hbody);
  return e;
}

}  // namespace

DerivedScalars derived_scalars(const MongeSystem& m) {
  if (m.kind != MongeSystem::Kind::CanonicalH)
    throw Error("closed-form scalars require the canonical-h variant");
  Context& ctx = *m.ctx;
  Expr half = ctx.rational(Rational(1, 2));
  auto y = [&](int k) { return ctx.sym("y" + std::to_string(k)); };
  Expr y1 = y(1), y4 = y(4);

  DerivedScalars d;
  d.u = half * hd(ctx, "222");
  d.v1 = half * hd(ctx, "2227");
  d.v2 = half * (hd(ctx, "2222") + 2 * y4 * hd(ctx, "2227"));
  d.w1 = half * hd(ctx, "22277");
  d.w2 = half * (hd(ctx, "22227") + 2 * y4 * hd(ctx, "22277"));
  d.w3 = half * (hd(ctx, "22222") + 4 * y4 * hd(ctx, "22227") +
                 4 * y4 * y4 * hd(ctx, "22277") + 2 * y1 * hd(ctx, "2227"));
  d.z[0] = half * hd(ctx, "222777");
  d.z[1] = half * (hd(ctx, "222277") + 2 * y4 * hd(ctx, "222777"));
  d.z[2] = half * (hd(ctx, "222227") + 4 * y4 * hd(ctx, "222277") +
                   4 * y4 * y4 * hd(ctx, "222777") + 2 * y1 * hd(ctx, "22277"));
  d.z[3] = half * (hd(ctx, "222222") + 6 * y4 * hd(ctx, "222227") +
                   12 * y4 * y4 * hd(ctx, "222277") + 6 * y1 * hd(ctx, "22227") +
                   8 * y4 * y4 * y4 * hd(ctx, "222777") + 12 * y1 * y4 * hd(ctx, "22277"));
  d.z[4] = half * hd(ctx, "2227777");
  d.z[5] = half * (hd(ctx, "2222777") + 2 * y4 * hd(ctx, "2227777"));
  d.z[6] = half * (hd(ctx, "2222277") + 4 * y4 * hd(ctx, "2222777") +
                   4 * y4 * y4 * hd(ctx, "2227777") + 2 * y1 * hd(ctx, "222777"));
  d.z[7] = half * (hd(ctx, "2222227") + 6 * y4 * hd(ctx, "2222277") +
                   12 * y4 * y4 * hd(ctx, "2222777") + 6 * y1 * hd(ctx, "222277") +
                   8 * y4 * y4 * y4 * hd(ctx, "2227777") + 12 * y1 * y4 * hd(ctx, "222777"));
  d.z[8] = half * (hd(ctx, "2222222") + 8 * y4 * hd(ctx, "2222227") +
                   24 * y4 * y4 * hd(ctx, "2222277") + 12 * y1 * hd(ctx, "222227") +
                   32 * y4 * y4 * y4 * hd(ctx, "2222777") + 48 * y1 * y4 * hd(ctx, "222277") +
                   16 * ctx.pow_int(y4, 4) * hd(ctx, "2227777") +
                   48 * y1 * y4 * y4 * hd(ctx, "222777") + 12 * y1 * y1 * hd(ctx, "22277"));

  if (m.hbody) {
    auto sub = [&](Expr& e) { e = maybe_concrete(m, e); };
    sub(d.u);
    sub(d.v1);
    sub(d.v2);
    sub(d.w1);
    sub(d.w2);
    sub(d.w3);
    for (auto& z : d.z) sub(z);
    if (d.u.is_zero()) throw UZeroEverywhere("h_222 vanishes identically for this h");
  }
  return d;
}

DerivedScalars derived_scalars_from_frame(const MongeSystem& m, const AdaptedFrame& f,
                                          const Expr& u) {
  Context& ctx = *m.ctx;
  const Chart& chart = m.chart;
  auto along = [&](const VectorField& E, const Expr& g) {
    Expr acc = ctx.zero();
    for (size_t j = 0; j < chart.dim(); ++j)
      if (!E.comp[j].is_zero()) acc = acc + E.comp[j] * ctx.diff(g, chart.coords[j]);
    return acc;
  };
  auto expect_zero = [&](const Expr& g, int slot, const char* name) {
    Expr v = along(f.frame[slot], g);
    if (!v.is_zero())
      throw ExtractionInconsistent(std::string("differential of ") + name +
                                   " has an unexpected slot");
  };
  const auto& E = f.frame;
  DerivedScalars d;
  d.u = u;
  // du = v1 w2 + v2 w7
  for (int k : {0, 2, 3, 4, 5, 7}) expect_zero(u, k, "u");
  d.v1 = along(E[1], u);
  d.v2 = along(E[6], u);
  // dv1 = w1 w2 + w2 w7
  d.w1 = along(E[1], d.v1);
  d.w2 = along(E[6], d.v1);
  // dv2 = w2 w2 + 2 v1 w5 + w3 w7
  d.w3 = along(E[6], d.v2);
  // dw1 = z1 w2 + z2 w7 ; dw2 = z2 w2 + 2 w1 w5 + z3 w7
  d.z[0] = along(E[1], d.w1);
  d.z[1] = along(E[6], d.w1);
  d.z[2] = along(E[6], d.w2);
  // dw3 = z3 w2 + 4 w2 w5 + z4 w7 + 2 v1 w8
  d.z[3] = along(E[6], d.w3);
  // z-layer
  d.z[4] = along(E[1], d.z[0]);
  d.z[5] = along(E[6], d.z[0]);
  d.z[6] = along(E[6], d.z[1]);
  d.z[7] = along(E[6], d.z[2]);
  d.z[8] = along(E[6], d.z[3]);

  // cross-slot consistency of the declared differentials
  auto expect_eq = [&](const Expr& a, const Expr& bb, const char* which) {
    if (!(a - bb).is_zero())
      throw ExtractionInconsistent(std::string("scalar tower inconsistent at ") + which);
  };
  expect_eq(along(E[1], d.v2), d.w2, "dv2|w2-slot");
  expect_eq(along(E[4], d.v2), 2 * d.v1, "dv2|w5-slot");
  expect_eq(along(E[1], d.w2), d.z[1], "dw2|w2-slot");
  expect_eq(along(E[4], d.w2), 2 * d.w1, "dw2|w5-slot");
  expect_eq(along(E[1], d.w3), d.z[2], "dw3|w2-slot");
  expect_eq(along(E[4], d.w3), 4 * d.w2, "dw3|w5-slot");
  expect_eq(along(E[7], d.w3), 2 * d.v1, "dw3|w8-slot");
  expect_eq(along(E[1], d.z[3]), d.z[7], "dz4|w2-slot");
  expect_eq(along(E[4], d.z[3]), 6 * d.z[2], "dz4|w5-slot");
  expect_eq(along(E[7], d.z[3]), 6 * d.w2, "dz4|w8-slot");
  return d;
}

void verify_scalar_relations(const MongeSystem& m, const AdaptedFrame& f,
                             const DerivedScalars& d) {
  Context& ctx = *m.ctx;
  BasisPtr basis = coordinate_basis(m.chart);
  auto df = [&](Expr g) {
    g = maybe_concrete(m, g);
    DifferentialForm r(basis, 1);
    for (size_t j = 0; j < m.chart.dim(); ++j) {
      Expr dc = ctx.diff(g, m.chart.coords[j]);
      if (!dc.is_zero()) r.add({static_cast<int>(j)}, dc);
    }
    return r;
  };
  std::vector<DifferentialForm> w = f.coframe;
  if (m.hbody)
    for (auto& form : w) {
      DifferentialForm nf(basis, 1);
      for (auto& [idx, c] : form.terms()) nf.add(idx, maybe_concrete(m, c));
      form = nf;
    }
  auto C = [&](Expr e) { return maybe_concrete(m, std::move(e)); };
  auto check = [&](const DifferentialForm& lhs, const DifferentialForm& rhs, const char* name) {
    if (!(lhs - rhs).is_zero())
      throw ExtractionInconsistent(std::string("scalar relation fails for ") + name);
  };
  auto W = [&](int i) { return w[i - 1]; };
  check(df(d.u), W(2) * C(d.v1) + W(7) * C(d.v2), "u");
  check(df(d.v1), W(2) * C(d.w1) + W(7) * C(d.w2), "v1");
  check(df(d.v2), W(2) * C(d.w2) + W(5) * C(2 * d.v1) + W(7) * C(d.w3), "v2");
  check(df(d.w1), W(2) * C(d.z[0]) + W(7) * C(d.z[1]), "w1");
  check(df(d.w2), W(2) * C(d.z[1]) + W(5) * C(2 * d.w1) + W(7) * C(d.z[2]), "w2");
  check(df(d.w3), W(2) * C(d.z[2]) + W(5) * C(4 * d.w2) + W(7) * C(d.z[3]) + W(8) * C(2 * d.v1),
        "w3");
  check(df(d.z[0]), W(2) * C(d.z[4]) + W(7) * C(d.z[5]), "z1");
  check(df(d.z[1]), W(2) * C(d.z[5]) + W(5) * C(2 * d.z[0]) + W(7) * C(d.z[6]), "z2");
  check(df(d.z[2]),
        W(2) * C(d.z[6]) + W(5) * C(4 * d.z[1]) + W(7) * C(d.z[7]) + W(8) * C(2 * d.w1), "z3");
  check(df(d.z[3]),
        W(2) * C(d.z[7]) + W(5) * C(6 * d.z[2]) + W(7) * C(d.z[8]) + W(8) * C(6 * d.w2), "z4");
}

BasicInvariants basic_invariants(const DerivedScalars& d, Context& ctx) {
  BasicInvariants b;
  b.I1 = 5 * d.v2 * d.v2 - 4 * d.u * d.w3;
  b.I2 = d.v1;
  b.I3 = 3 * d.v1 * d.v2 - 2 * d.u * d.w2;
  b.R = 4 * d.v1 * d.v1 - 3 * d.u * d.w1;
  (void)ctx;
  return b;
}

ReducedTorsion reduced_torsion(const BasicInvariants& b, const Expr& u, Context& ctx,
                               const Expr& a29, const Expr& a38) {
  Expr u4 = ctx.pow_int(u, 4);
  Expr a294 = ctx.pow_int(a29, 4);
  ReducedTorsion t;
  t.t412 = -ctx.pow_int(a38, 3) * b.I3 / (8 * (u4 * a294));
  t.t417 = ctx.pow_int(a38, 4) * b.I1 / (16 * (u4 * a294));
  t.t415 = a38 * b.I2 / (6 * (ctx.pow_int(u, 2) * ctx.pow_int(a29, 2))) + t.t417;
  t.r212 = -ctx.pow_int(a38, 2) * b.R / (9 * (u4 * a294));
  return t;
}

SScalars s_scalars(const BasicInvariants& b, const DerivedScalars& d, Context& ctx,
                   const Expr& eps, std::optional<Expr> bparam) {
  ZeroVerdict i1 = ctx.is_zero(b.I1);
  if (i1 == ZeroVerdict::Zero || i1 == ZeroVerdict::ProbablyZero)
    throw I1Zero("S-scalars need I1 != 0");
  Expr P = eps * b.I1;
  ctx.assume_positive(P);
  Expr sqrtP3 = ctx.pow(P, Rational(3, 2));

  SScalars s;
  s.eps = eps;
  Expr u2 = d.u * d.u;
  s.S4 = (9 * (b.I1 * d.v2) - 15 * ctx.pow_int(d.v2, 3) + 8 * (u2 * d.z[3])) / (2 * sqrtP3);
  Expr I13 = ctx.pow_int(b.I1, 3);
  s.S5 = (64 * (b.I1 * ctx.pow_int(d.u, 3) * d.z[8]) - 22 * I13 -
          9 * (b.I1 * b.I1 * d.v2 * d.v2) - 180 * (b.I1 * ctx.pow_int(d.v2, 4)) +
          675 * ctx.pow_int(d.v2, 6) - 16 * (b.I1 * u2 * d.v2 * d.z[3]) -
          720 * (u2 * ctx.pow_int(d.v2, 3) * d.z[3]) + 192 * (ctx.pow_int(d.u, 4) * d.z[3] * d.z[3])) /
         (4 * (eps * I13));

  // the b-dependent scalars
  Expr bval;
  if (bparam) {
    bval = *bparam;
  } else {
    ZeroVerdict i2 = ctx.is_zero(b.I2);
    if (i2 == ZeroVerdict::Zero || i2 == ZeroVerdict::ProbablyZero) {
      s.b = ctx.zero();
      return s;  // S1,S2,S3,S6 need I2 != 0 for the normalized parameter
    }
    bval = -(2 * (b.I2 * u2)) / b.I1;
  }
  s.b = bval;
  s.S1 = 2 * (b.I2 * u2) / (bval * b.I1);
  s.S2 = 8 * (b.I3 * u2) / (bval * sqrtP3);
  s.S3 = 4 * u2 *
         (10 * (b.I1 * b.I2) + 42 * (b.I3 * d.v2) - 63 * (b.I2 * d.v2 * d.v2) +
          24 * (u2 * d.z[2])) /
         (3 * (bval * eps * b.I1 * b.I1));
  s.S6 = (8 * b.R + 8 * (b.I2 * b.I2) - 3 * (eps * *s.S3 * b.I2 * b.I2)) /
         (3 * (eps * b.I2 * b.I2));
  return s;
}

Expr s4_single_variable(Context& ctx, const Expr& h3, const Expr& h4, const Expr& h5,
                        const Expr& h6, const Expr& eps) {
  Expr base = eps * (5 * (h4 * h4) - 4 * (h3 * h5));
  ctx.assume_positive(base);
  Expr num = 15 * ctx.pow_int(h4, 3) - 18 * (h3 * h4 * h5) + 4 * (h3 * h3 * h6);
  return num / ctx.pow(base, Rational(3, 2));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Flat21: return "Flat21";
    case Verdict::Model11: return "Model11";
    case Verdict::Branch10: return "Branch10";
    case Verdict::Branch9: return "Branch9";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string Classification::str() const {
  std::ostringstream os;
  os << to_string(verdict);
  if (verdict == Verdict::Branch10) os << (homogeneous ? " (homogeneous)" : " (non-homogeneous)");
  if (verdict == Verdict::Branch9) os << (flat9 ? " (flat connection)" : " (curved)");
  if (!eps_note.empty()) os << ", eps: " << eps_note;
  if (probabilistic) os << " [probabilistic]";
  if (profile) os << ", root profile " << profile->str();
  return os.str();
}

Classification classify(const MongeSystem& m,
                        const std::optional<std::map<AtomId, Rational>>& point) {
  Context& ctx = *m.ctx;
  Classification c;
  AdaptedFrame f = build_frame(m);
  StructuralFunctions uu = structural_functions(m, f);
  QuinticInvariant q = main_invariant(uu, ctx);

  if (q.identically_zero()) {
    c.verdict = Verdict::Flat21;
    return c;
  }

  // fivefold branch detection: canonical shape, or a rational fivefold root at
  // the supplied point
  bool canonical_shape = true;
  for (int i = 0; i < 12; ++i)
    if (i != 10 && !uu.u[i].is_zero()) canonical_shape = false;
  if (!canonical_shape) {
    bool fivefold = false;
    try {
      RootProfile p = quintic_multiplicity(q, ctx, point);
      c.profile = p;
      fivefold = p.fivefold;
    } catch (const Error&) {
      c.profile = std::nullopt;
    }
    if (!fivefold) {
      c.verdict = Verdict::Undetermined;
      return c;
    }
    // a general transformation into the canonical shape is out of scope
    c.verdict = Verdict::Undetermined;
    return c;
  }

  Expr u = uu.u[10];
  DerivedScalars d;
  if (m.kind == MongeSystem::Kind::CanonicalH) {
    d = derived_scalars(m);
    if (m.hbody) u = d.u;
  } else {
    d = derived_scalars_from_frame(m, f, u);
  }
  BasicInvariants b = basic_invariants(d, ctx);

  auto vanish = [&](const Expr& e, bool* prob) {
    ZeroVerdict v = ctx.is_zero(e);
    if (v == ZeroVerdict::ProbablyZero || v == ZeroVerdict::ProbablyNonZero) *prob = true;
    return v == ZeroVerdict::Zero || v == ZeroVerdict::ProbablyZero;
  };

  bool prob = false;
  if (vanish(b.I1, &prob)) {
    // the implication I1 == 0 => I2 == I3 == R == 0 must hold on the instance
    if (!vanish(b.I2, &prob) || !vanish(b.I3, &prob) || !vanish(b.R, &prob))
      throw ExtractionInconsistent("I1 vanishes but I2, I3, R do not");
    c.verdict = Verdict::Model11;
    c.probabilistic = prob;
    return c;
  }

  // eps: concrete when the sign of I1 is structurally determined; symbolic
  // otherwise, carried with a region note
  Expr eps;
  if (auto sgn = definite_sign(ctx, b.I1); sgn && *sgn != 0) {
    eps = ctx.integer(*sgn);
    c.eps_note = *sgn > 0 ? "+1" : "-1";
  } else {
    eps = ctx.sym(ctx.sign_parameter("eps"));
    c.eps_note = "sign of I1 = " + b.I1.str();
  }

  if (vanish(b.I2, &prob)) {
    if (!vanish(b.I3, &prob) || !vanish(b.R, &prob))
      throw ExtractionInconsistent("I2 vanishes with I1 != 0 but I3, R do not");
    SScalars s = s_scalars(b, d, ctx, eps);
    c.verdict = Verdict::Branch10;
    c.S4 = s.S4;
    c.probabilistic = prob;
    // homogeneous iff S4 is constant on the chart
    bool constant = true;
    for (AtomId a : m.chart.coords)
      if (!ctx.diff(s.S4, a).is_zero()) constant = false;
    c.homogeneous = constant;
    return c;
  }

  SScalars s = s_scalars(b, d, ctx, eps);
  c.verdict = Verdict::Branch9;
  c.S4 = s.S4;
  c.probabilistic = prob;
  bool s2zero = s.S2 && vanish(*s.S2, &prob);
  bool s4zero = vanish(s.S4, &prob);
  c.flat9 = s2zero && s4zero;
  c.probabilistic = prob;
  return c;
}

}  // namespace monge8
