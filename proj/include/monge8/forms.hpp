#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "monge8/symbolic.hpp"

namespace monge8 {

struct BasisMismatch : Error { using Error::Error; };
struct SingularFrame : Error { using Error::Error; };

struct Chart {
  Context* ctx = nullptr;
  std::vector<AtomId> coords;

  static Chart make(Context& ctx, const std::vector<std::string>& names);
  size_t dim() const { return coords.size(); }
  int index_of(AtomId a) const;
  bool operator==(const Chart& o) const { return ctx == o.ctx && coords == o.coords; }
};

// Basis of 1-forms: coordinate differentials of a chart, or an abstract
// coframe of named symbols (structure equations live in the eds module).
struct CoframeBasis {
  bool coordinate = true;
  Chart chart;                      // when coordinate
  std::vector<std::string> names;   // labels, e.g. "dx" names or "w1".."w8"
  size_t dim() const { return coordinate ? chart.dim() : names.size(); }
  bool same(const CoframeBasis& o) const {
    return coordinate == o.coordinate && names == o.names &&
           (!coordinate || chart == o.chart);
  }
};
using BasisPtr = std::shared_ptr<const CoframeBasis>;

BasisPtr coordinate_basis(const Chart& chart);
BasisPtr abstract_basis(const std::vector<std::string>& names);

class DifferentialForm {
 public:
  DifferentialForm() = default;
  DifferentialForm(BasisPtr basis, int degree) : basis_(std::move(basis)), degree_(degree) {}

  static DifferentialForm scalar(BasisPtr basis, Expr value);
  static DifferentialForm basis_one_form(BasisPtr basis, int index, Context& ctx);

  int degree() const { return degree_; }
  const BasisPtr& basis() const { return basis_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Expr>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  void add(const std::vector<int>& idx, const Expr& coeff);  // sorts, signs, prunes
  Expr coeff(const std::vector<int>& idx) const;

  DifferentialForm operator+(const DifferentialForm& o) const;
  DifferentialForm operator-(const DifferentialForm& o) const;
  DifferentialForm operator-() const;
  DifferentialForm operator*(const Expr& s) const;

  std::string str() const;

 private:
  BasisPtr basis_;
  int degree_ = 0;
  std::map<std::vector<int>, Expr> terms_;
};

DifferentialForm operator*(const Expr& s, const DifferentialForm& f);

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

// exterior derivative in a coordinate basis
DifferentialForm d(const DifferentialForm& a);

struct VectorField {
  Chart chart;
  std::vector<Expr> comp;

  static VectorField zero(const Chart& chart);
  static VectorField basis(const Chart& chart, int index);
  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator*(const Expr& s) const;
  bool is_zero() const;
  std::string str() const;
};

VectorField bracket(const VectorField& v, const VectorField& w);

// interior product v ⌟ a (degree drops by one; degree-1 case yields the pairing)
DifferentialForm interior(const VectorField& v, const DifferentialForm& a);
Expr pairing(const DifferentialForm& one_form, const VectorField& v);

// coframe dual to a frame: E_mu ⌟ w^nu = delta
std::vector<DifferentialForm> dual_coframe(const std::vector<VectorField>& frame);

// pullback of a coordinate-basis form along the map sending each target
// coordinate to an expression in the source chart
DifferentialForm pullback(const DifferentialForm& form, const Chart& source,
                          const std::map<AtomId, Expr>& target_to_source);

// --- small dense matrices of expressions / forms ----------------------------

struct ExprMatrix {
  int rows = 0, cols = 0;
  std::vector<Expr> v;
  ExprMatrix() = default;
  ExprMatrix(int r, int c, Context& ctx) : rows(r), cols(c), v(r * c, ctx.zero()) {}
  Expr& at(int r, int c) { return v[r * cols + c]; }
  const Expr& at(int r, int c) const { return v[r * cols + c]; }
};

// exact inverse over the rational-function field; throws SingularFrame
ExprMatrix invert(const ExprMatrix& m, Context& ctx);
// generic rank by Gaussian elimination over the rational-function field
int generic_rank(ExprMatrix m, Context& ctx, Expr* pivot_product = nullptr);

struct FormMatrix {
  int rows = 0, cols = 0;
  std::vector<DifferentialForm> v;
  FormMatrix() = default;
  FormMatrix(int r, int c, BasisPtr basis, int degree)
      : rows(r), cols(c), v(r * c, DifferentialForm(basis, degree)) {}
  DifferentialForm& at(int r, int c) { return v[r * cols + c]; }
  const DifferentialForm& at(int r, int c) const { return v[r * cols + c]; }
  FormMatrix operator+(const FormMatrix& o) const;
  FormMatrix operator-(const FormMatrix& o) const;
};

// entrywise wedge-product of matrices of forms: (a ^ b)_ij = sum_k a_ik ^ b_kj
FormMatrix wedge_mul(const FormMatrix& a, const FormMatrix& b);

}  // namespace monge8
