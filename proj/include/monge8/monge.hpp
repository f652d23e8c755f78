#pragma once

#include <array>
#include <random>

#include "monge8/distribution.hpp"
#include "monge8/eds.hpp"

namespace monge8 {

struct ExtractionInconsistent : Error { using Error::Error; };
struct AllCoefficientsZero : Error { using Error::Error; };

// A rank-3 Monge system in one of three input shapes.
struct MongeSystem {
  enum class Kind { Explicit, CanonicalH, PowerLaw };
  Kind kind = Kind::Explicit;
  Context* ctx = nullptr;
  Chart chart;   // jet chart (t,x1,x2,xd1,xd2,z11,z12,z22) or (y1..y8)
  Expr f11, f12, f22;           // Explicit / PowerLaw
  uint32_t hfunc = 0;           // CanonicalH: declared h(y2,y7)
  std::optional<Expr> hbody;    // concrete h, when given
  Rational s;                   // PowerLaw exponent
};

MongeSystem explicit_system(Context& ctx, const Expr& f11, const Expr& f12, const Expr& f22);
MongeSystem flat_system(Context& ctx);
// symbolic h(y2,y7); pass a body expression in y2,y7 to pin it down
MongeSystem canonical_h(Context& ctx, const std::optional<std::string>& hbody = std::nullopt);
MongeSystem power_law(Context& ctx, const Rational& s);

// the span (X, X1, X2) on the jet chart
Distribution distribution_of(const MongeSystem& m);

struct AdaptedFrame {
  std::vector<VectorField> frame;         // E1..E8
  std::vector<DifferentialForm> coframe;  // w1..w8, coordinate-basis forms
};

// adapted frame and its exact dual; for CanonicalH the coframe is the
// integrated normal form and the frame is its dual
AdaptedFrame build_frame(const MongeSystem& m);

struct StructuralFunctions {
  std::array<Expr, 12> u;  // u[i] is the coefficient u~_{i+1}
};

StructuralFunctions structural_functions(const MongeSystem& m, const AdaptedFrame& f);

struct QuinticInvariant {
  std::array<Expr, 6> alpha;  // T(b6) = sum_k alpha[k] * b6^k
  bool identically_zero() const;
};

QuinticInvariant main_invariant(const StructuralFunctions& u, Context& ctx);
// the five flatness relations on the u~; equivalent to T == 0
bool flat_relations_hold(const StructuralFunctions& u, Context& ctx);

struct RootProfile {
  bool flat = false;
  std::vector<std::pair<int, int>> factors;  // (multiplicity, squarefree-factor degree)
  bool fivefold = false;                     // one rational root of multiplicity five
  std::string str() const;
};

RootProfile quintic_multiplicity(const QuinticInvariant& q, Context& ctx,
                                 const std::optional<std::map<AtomId, Rational>>& point =
                                     std::nullopt);

// squarefree factorization of a dense univariate rational polynomial;
// returns (multiplicity, factor) pairs with factors of positive degree
std::vector<std::pair<int, std::vector<Rational>>> squarefree_factor(
    std::vector<Rational> poly);

// ---------------------------------------------------------------------------
// reduced structure group

struct G0Element {
  std::map<std::string, Expr> par;  // a16..a49 (the 20 printed a's), b5, b6, b7

  static const std::vector<std::string>& parameter_names();
  static G0Element symbolic(Context& ctx);
  static G0Element random(Context& ctx, std::mt19937_64& rng);
  ExprMatrix matrix(Context& ctx) const;
  Expr stated_determinant(Context& ctx) const;  // a29^5 a38^5 a49^6 (1-b5 b6)^5 b7^10
};

Expr determinant(const ExprMatrix& m, Context& ctx);

// structure-equation right-hand sides for a coframe w1..w8 with coefficients
// u~_1..u~_12 (forms built by wedging the given coframe)
std::array<DifferentialForm, 8> sysc3_rhs(const std::vector<DifferentialForm>& w,
                                          const std::array<Expr, 12>& u, Context& ctx);

// coefficient identity behind the main invariant: with theta^i = A^i_j w^j and
// generic u~, (dtheta^2 - t236 theta^3^theta^6) ^ theta^{124578} = 0 where
// t236 = a38^2 T / (a29^3 b7 (b5 b6 - 1)^3) and the group entries are constant
bool verify_t236_identity(Context& ctx, const G0Element& g, const std::array<Expr, 12>& u);

}  // namespace monge8
