#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monge8/forms.hpp"

namespace monge8 {

struct UndeclaredScalar : Error { using Error::Error; };
struct NonConstantCoefficients : Error { using Error::Error; };
struct InconsistentBinding : Error { using Error::Error; };
struct MissingTable : Error { using Error::Error; };

// A scalar field on the EDS: either with a declared differential (a 1-form in
// the coframe) or explicitly free (differential unknown; it then only enters
// closure checks through absorbable terms).
struct ScalarField {
  std::string name;
  AtomId symbol = 0;
  bool known = false;
  DifferentialForm differential;  // valid when known
};

class AbstractEDS {
 public:
  AbstractEDS() = default;
  AbstractEDS(Context& ctx, const std::vector<std::string>& coframe_names);

  Context& ctx() const { return *ctx_; }
  int dim() const { return static_cast<int>(coframe_names_.size()); }
  const std::vector<std::string>& coframe_names() const { return coframe_names_; }
  // basis of coframe symbols plus one slot per free scalar differential
  const BasisPtr& basis() const { return basis_; }
  int coframe_index(const std::string& name) const;

  void set_structure(int i, const DifferentialForm& dw);
  const DifferentialForm& structure(int i) const { return structure_[i]; }

  void declare_parameter(const std::string& name);
  void declare_sign_parameter(const std::string& name);
  void declare_scalar(const std::string& name, const DifferentialForm& differential);
  void declare_free_scalar(const std::string& name);
  void set_scalar_rule(const std::string& name, const DifferentialForm& differential);
  const std::vector<ScalarField>& scalars() const { return scalars_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const ScalarField* find_scalar(AtomId symbol) const;

  // 2-form generators for convenience
  DifferentialForm one_form(int i) const;
  DifferentialForm wedge_basis(int i, int j) const;  // w^i ^ w^j
  DifferentialForm zero_form(int degree) const { return DifferentialForm(basis_, degree); }

  // exterior derivative via the declared structure equations and scalar rules;
  // free scalar differentials appear in the extended basis slots
  DifferentialForm d(const DifferentialForm& a) const;
  // differential of a coefficient function
  DifferentialForm d_scalar(const Expr& f) const;

  // rebuild after substituting bound scalars
  AbstractEDS specialize(const std::map<std::string, Expr>& bindings) const;

  std::string name;

 private:
  Context* ctx_ = nullptr;
  std::vector<std::string> coframe_names_;
  BasisPtr basis_;
  std::vector<DifferentialForm> structure_;
  std::vector<ScalarField> scalars_;
  std::vector<std::string> parameters_;
  std::vector<std::string> sign_parameters_;
  std::map<AtomId, int> free_slot_;  // free scalar symbol -> extended basis index

  void rebuild_basis();
  friend AbstractEDS eds_from_json_impl(Context&, const std::string&);
};

struct EquationResidual {
  std::string equation;   // coframe symbol or scalar name
  bool exact = false;     // residual is identically zero
  bool absorbed = false;  // zero modulo free scalar differentials
  DifferentialForm residual;
  std::string str() const;
};

struct ClosureReport {
  bool closed = false;
  std::vector<EquationResidual> residuals;
};

ClosureReport check_closure(const AbstractEDS& s);

struct LieAlgebraTable {
  int n = 0;
  // c^i_{jk} for j < k; antisymmetry fills the rest
  std::vector<Rational> c;  // indexed i*n*n + j*n + k, j<k
  Rational at(int i, int j, int k) const;
  void set(int i, int j, int k, const Rational& v);
  // max |residual| over all Jacobi triples; exact zero means the identity holds
  bool jacobi_holds(Rational* worst = nullptr) const;
  std::vector<std::vector<Rational>> killing_form() const;
  int killing_rank() const;
};

LieAlgebraTable extract_lie_algebra(const AbstractEDS& s);

// JSON schema: {"name": ..., "coframe": [...], "parameters": [...],
//   "sign_parameters": [...], "scalars": [{"name":..., "free":true} |
//   {"name":..., "differential":[[coeff, sym], ...]}],
//   "structure": {"w1": [[coeff, "wi", "wj"], ...], ...}}
AbstractEDS eds_from_json(Context& ctx, const std::string& json_text);
std::string eds_to_json(const AbstractEDS& s);

// loads a golden table, verifying its SHA-256 against the manifest in the same
// directory (checksums.sha256); throws MissingTable when absent or corrupted
AbstractEDS load_golden_eds(Context& ctx, const std::string& table_name,
                            const std::string& data_dir = MONGE8_DATA_DIR);

}  // namespace monge8
