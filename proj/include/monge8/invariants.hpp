#pragma once

#include "monge8/monge.hpp"

namespace monge8 {

struct UZeroEverywhere : Error { using Error::Error; };
struct I1Zero : Error { using Error::Error; };
struct I2ZeroForNormalizedB : Error { using Error::Error; };

// the scalar tower attached to a fivefold-root structure
struct DerivedScalars {
  Expr u, v1, v2, w1, w2, w3;
  std::array<Expr, 9> z;  // z1..z9
};

// closed forms on the (y1..y8) chart for the canonical-h variant; a concrete
// h body is substituted when the system carries one
DerivedScalars derived_scalars(const MongeSystem& m);

// the same scalars for any fivefold-root system, obtained by differentiating
// u along the adapted frame (consistency-checked against the declared slots)
DerivedScalars derived_scalars_from_frame(const MongeSystem& m, const AdaptedFrame& f,
                                          const Expr& u);

// cross-check of the ten differential relations of the scalar tower against
// the coordinate exterior derivative; throws ExtractionInconsistent
void verify_scalar_relations(const MongeSystem& m, const AdaptedFrame& f,
                             const DerivedScalars& d);

struct BasicInvariants {
  Expr I1, I2, I3, R;
};

BasicInvariants basic_invariants(const DerivedScalars& d, Context& ctx);

// reduced torsion coefficients, with a29/a38 group parameters
struct ReducedTorsion {
  Expr t412, t415, t417, r212;
};
ReducedTorsion reduced_torsion(const BasicInvariants& b, const Expr& u, Context& ctx,
                               const Expr& a29, const Expr& a38);

struct SScalars {
  Expr S4, S5;
  std::optional<Expr> S1, S2, S3, S6;
  Expr b;           // group parameter; the normalized value -2 I2 u^2 / I1 when derived
  Expr eps;         // +1, -1, or a sign symbol
};

// eps: a rational +-1 expression or a sign-parameter symbol; the product
// eps*I1 is registered positive (it licenses the radical)
SScalars s_scalars(const BasicInvariants& b, const DerivedScalars& d, Context& ctx,
                   const Expr& eps, std::optional<Expr> bparam = std::nullopt);

// the one-variable route for f22 = xd2^2 + h(xd1)
Expr s4_single_variable(Context& ctx, const Expr& h3, const Expr& h4, const Expr& h5,
                        const Expr& h6, const Expr& eps);

enum class Verdict { Flat21, Model11, Branch10, Branch9, Undetermined };
std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  bool probabilistic = false;      // a vanishing decision rested on sampling
  std::optional<Expr> S4;          // Branch10
  bool homogeneous = false;        // Branch10: dS4 == 0
  bool flat9 = false;              // Branch9: S2 == S4 == 0
  std::string eps_note;            // sign of I1 or its region description
  std::optional<RootProfile> profile;
  std::string str() const;
};

Classification classify(const MongeSystem& m,
                        const std::optional<std::map<AtomId, Rational>>& point = std::nullopt);

}  // namespace monge8
