#pragma once

#include <optional>

#include "monge8/forms.hpp"

namespace monge8 {

struct NotMongeShape : Error { using Error::Error; };

// rank at a requested point differs from the generic rank; carries the pivot
// polynomial whose vanishing locus explains the drop
struct RankDropOnLocus : Error {
  Expr locus;
  RankDropOnLocus(const std::string& msg, Expr l) : Error(msg), locus(std::move(l)) {}
};

struct Distribution {
  Chart chart;
  std::vector<VectorField> generators;
};

struct GrowthVector {
  std::vector<int> ranks;  // nondecreasing; last entry repeated when stabilized below dim
  bool operator==(const GrowthVector& o) const { return ranks == o.ranks; }
  std::string str() const;
};

// iterated bracket closure D, D+[D,D], ... with generic ranks over the
// rational-function field
GrowthVector derived_flag(const Distribution& D);

// the same flag with ranks evaluated at a rational point; throws
// RankDropOnLocus when a rank differs from the generic one
GrowthVector derived_flag_at_point(const Distribution& D,
                                   const std::map<AtomId, Rational>& point);

struct SymbolReport {
  GrowthVector growth;
  bool h_abelian = false;        // [X1, X2] lies in D
  bool h_generates = false;      // [g_{-1}, h] spans grade -2
  std::optional<Expr> hessian_determinant;  // det of the second-derivative matrix
};

// verifies the rank-3 Monge bracket shape: growth (3,5,8), the codimension-1
// abelian subalgebra spanned by the last two generators, [g_{-1}, h] = g_{-2};
// throws NotMongeShape with the failing identity
SymbolReport check_monge_symbol(const Distribution& D,
                                std::optional<Expr> hessian_det = std::nullopt);

}  // namespace monge8
