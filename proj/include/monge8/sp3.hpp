#pragma once

#include "monge8/eds.hpp"
#include "monge8/invariants.hpp"

namespace monge8 {

struct NotInAlgebra : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// the 6x6 symplectic representation

struct Sp3Element {
  ExprMatrix m;  // 6x6
};

// membership in the block pattern (throws NotInAlgebra when asked to)
bool sp3_member(const Sp3Element& x, Context& ctx);

// graded pieces g_{-3}..g_{3}; index i + 3
struct GradedDecomposition {
  std::vector<ExprMatrix> comp;
};
GradedDecomposition grade(const Sp3Element& x, Context& ctx);

// rational basis of each graded piece in the 6x6 representation
std::vector<std::vector<Sp3Element>> graded_basis(Context& ctx);
// [g_i, g_j] subset g_{i+j} on basis pairs
bool verify_grading_law(Context& ctx);

// ---------------------------------------------------------------------------
// verification reports

struct VerificationItem {
  std::string id;
  bool pass = false;
  size_t residual_terms = 0;
};

struct Report {
  std::string name;
  bool pass = true;
  std::vector<VerificationItem> items;
  void add(const std::string& id, bool ok, size_t terms = 0);
  std::string str() const;
};

// ---------------------------------------------------------------------------
// golden verifications

// dM + M ^ M = 0 for the matrix assembled from the 21-form coframe, plus the
// agreement of the table's structure constants with matrix commutators, plus
// the fibration identity d theta^i ^ theta^1..8 = 0
Report verify_flat_mc(Context& ctx);

// the flat-branch system (sysc3fl) with its scalar rules (closure), and the
// embedding forms thetabar = Abar w, Omegabar = B w pushed through all 21
// flat structure equations at fully symbolic u1..u6, v1..v3
struct FlatEmbeddingData {
  AbstractEDS system;       // coframe w1..w8 with u/v scalar rules
  ExprMatrix Abar;          // 8x8
  ExprMatrix B;             // 13x8
};
FlatEmbeddingData flat_embedding_data(Context& ctx);
Report verify_flat_embedding(Context& ctx);

// reduced-connection identities for symbolic h(y2,y7): section coframe, the
// connection matrix, the torsion table with its twelve printed coefficients,
// and the curvature blocks
Report verify_reduced_connection(Context& ctx);

// the three model algebras
struct ModelAlgebras {
  LieAlgebraTable g11;
  LieAlgebraTable g10;
  LieAlgebraTable g9;
};
ModelAlgebras model_algebras(Context& ctx, const Rational& s4, long eps10, long eps9);

// bind the table's parameters to rationals, substituting into all coefficients
AbstractEDS bind_parameters(const AbstractEDS& s,
                            const std::map<std::string, Rational>& values);

// ---------------------------------------------------------------------------
// nine-dimensional Cartan connection

// the t_eps subspace: basis in the 6x6 representation; closed under commutator
std::vector<Sp3Element> t_eps_basis(Context& ctx, long eps);
bool t_eps_closed(Context& ctx, long eps);

// assembles the connection matrix over the given 9-form system, computes
// Omega = d varpi + varpi ^ varpi and compares it blockwise with the stated
// curvature; with flat_bindings the expected curvature is zero (ss180 table)
Report verify_nine_dim_connection(Context& ctx, long eps, bool flat_bindings);

// covariantly constant torsion on the 10-dim reduction: every covariant
// derivative entry is a multiple of eps + 3 S4^2 + S5, and some entry is a
// nonzero multiple
Report verify_covariant_torsion(Context& ctx);

}  // namespace monge8
