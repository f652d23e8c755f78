#include "monge8/forms.hpp"

#include <algorithm>
#include <sstream>

namespace monge8 {

// ---------------------------------------------------------------------------
// Chart / bases

Chart Chart::make(Context& ctx, const std::vector<std::string>& names) {
  if (names.empty()) throw Error("chart needs at least one coordinate");
  Chart c;
  c.ctx = &ctx;
  std::vector<std::string> seen;
  for (auto& n : names) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end())
      throw Error("duplicate coordinate name '" + n + "'");
    seen.push_back(n);
    c.coords.push_back(ctx.coordinate(n));
  }
  return c;
}

int Chart::index_of(AtomId a) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == a) return static_cast<int>(i);
  return -1;
}

BasisPtr coordinate_basis(const Chart& chart) {
  auto b = std::make_shared<CoframeBasis>();
  b->coordinate = true;
  b->chart = chart;
  for (AtomId a : chart.coords) b->names.push_back("d" + chart.ctx->info(a).name);
  return b;
}

BasisPtr abstract_basis(const std::vector<std::string>& names) {
  auto b = std::make_shared<CoframeBasis>();
  b->coordinate = false;
  b->names = names;
  return b;
}

namespace {
void check_same_basis(const BasisPtr& a, const BasisPtr& b) {
  if (!a || !b || !a->same(*b)) throw BasisMismatch("forms live over different bases");
}

// sort indices in place, return the permutation sign (0 if an index repeats)
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}
}  // namespace

// ---------------------------------------------------------------------------
// DifferentialForm

DifferentialForm DifferentialForm::scalar(BasisPtr basis, Expr value) {
  DifferentialForm f(std::move(basis), 0);
  if (!value.is_zero()) f.terms_.emplace(std::vector<int>{}, std::move(value));
  return f;
}

DifferentialForm DifferentialForm::basis_one_form(BasisPtr basis, int index, Context& ctx) {
  DifferentialForm f(std::move(basis), 1);
  f.terms_.emplace(std::vector<int>{index}, ctx.one());
  return f;
}

void DifferentialForm::add(const std::vector<int>& idx_in, const Expr& coeff) {
  if (coeff.is_zero()) return;
  std::vector<int> idx = idx_in;
  int sign = sort_sign(idx);
  if (sign == 0) return;
  if (static_cast<int>(idx.size()) != degree_) throw Error("form degree mismatch in add");
  for (int k : idx)
    if (k < 0 || k >= static_cast<int>(basis_->dim())) throw Error("basis index out of range");
  Expr c = sign == 1 ? coeff : -coeff;
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    terms_.emplace(std::move(idx), c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Expr DifferentialForm::coeff(const std::vector<int>& idx_in) const {
  Context* ctx = basis_ && basis_->coordinate ? basis_->chart.ctx : nullptr;
  if (!ctx && !terms_.empty()) ctx = terms_.begin()->second.context();
  std::vector<int> idx = idx_in;
  int sign = sort_sign(idx);
  if (sign == 0) return ctx ? ctx->zero() : Expr();
  auto it = terms_.find(idx);
  if (it == terms_.end()) return ctx ? ctx->zero() : Expr();
  return sign == 1 ? it->second : -it->second;
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  check_same_basis(basis_, o.basis_);
  if (degree_ != o.degree_) throw Error("cannot add forms of different degree");
  DifferentialForm r = *this;
  for (auto& [idx, c] : o.terms_) r.add(idx, c);
  return r;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm r(basis_, degree_);
  for (auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
  return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const {
  return *this + (-o);
}

DifferentialForm DifferentialForm::operator*(const Expr& s) const {
  DifferentialForm r(basis_, degree_);
  if (s.is_zero()) return r;
  for (auto& [idx, c] : terms_) {
    Expr v = c * s;
    if (!v.is_zero()) r.terms_.emplace(idx, v);
  }
  return r;
}

DifferentialForm operator*(const Expr& s, const DifferentialForm& f) { return f * s; }

std::string DifferentialForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [idx, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")";
    for (int k : idx) os << "*" << basis_->names[k];
    first = false;
  }
  return os.str();
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  check_same_basis(a.basis(), b.basis());
  DifferentialForm r(a.basis(), a.degree() + b.degree());
  for (auto& [ia, ca] : a.terms())
    for (auto& [ib, cb] : b.terms()) {
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add(idx, ca * cb);
    }
  return r;
}

DifferentialForm d(const DifferentialForm& a) {
  if (a.is_zero()) return DifferentialForm(a.basis(), a.degree() + 1);
  const BasisPtr& basis = a.basis();
  if (!basis->coordinate)
    throw Error("exterior derivative over an abstract coframe needs structure equations");
  const Chart& chart = basis->chart;
  Context& ctx = *chart.ctx;
  DifferentialForm r(basis, a.degree() + 1);
  for (auto& [idx, c] : a.terms()) {
    for (size_t j = 0; j < chart.coords.size(); ++j) {
      Expr dc = ctx.diff(c, chart.coords[j]);
      if (dc.is_zero()) continue;
      std::vector<int> nidx;
      nidx.push_back(static_cast<int>(j));
      nidx.insert(nidx.end(), idx.begin(), idx.end());
      r.add(nidx, dc);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField VectorField::zero(const Chart& chart) {
  VectorField v;
  v.chart = chart;
  v.comp.assign(chart.dim(), chart.ctx->zero());
  return v;
}

VectorField VectorField::basis(const Chart& chart, int index) {
  VectorField v = zero(chart);
  v.comp[index] = chart.ctx->one();
  return v;
}

VectorField VectorField::operator+(const VectorField& o) const {
  if (!(chart == o.chart)) throw BasisMismatch("vector fields on different charts");
  VectorField r = *this;
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = r.comp[i] + o.comp[i];
  return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
  if (!(chart == o.chart)) throw BasisMismatch("vector fields on different charts");
  VectorField r = *this;
  for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = r.comp[i] - o.comp[i];
  return r;
}

VectorField VectorField::operator*(const Expr& s) const {
  VectorField r = *this;
  for (auto& c : r.comp) c = c * s;
  return r;
}

bool VectorField::is_zero() const {
  for (auto& c : comp)
    if (!c.is_zero()) return false;
  return true;
}

std::string VectorField::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < comp.size(); ++i) {
    if (comp[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << comp[i].str() << ")*d_" << chart.ctx->info(chart.coords[i]).name;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

VectorField bracket(const VectorField& v, const VectorField& w) {
  if (!(v.chart == w.chart)) throw BasisMismatch("vector fields on different charts");
  const Chart& chart = v.chart;
  Context& ctx = *chart.ctx;
  VectorField r = VectorField::zero(chart);
  for (size_t k = 0; k < chart.dim(); ++k) {
    Expr acc = ctx.zero();
    for (size_t i = 0; i < chart.dim(); ++i) {
      if (!v.comp[i].is_zero()) acc = acc + v.comp[i] * ctx.diff(w.comp[k], chart.coords[i]);
      if (!w.comp[i].is_zero()) acc = acc - w.comp[i] * ctx.diff(v.comp[k], chart.coords[i]);
    }
    r.comp[k] = acc;
  }
  return r;
}

DifferentialForm interior(const VectorField& v, const DifferentialForm& a) {
  const BasisPtr& basis = a.basis();
  if (!basis->coordinate || !(basis->chart == v.chart))
    throw BasisMismatch("interior product needs a coordinate form on the field's chart");
  if (a.degree() == 0) return DifferentialForm(basis, 0);
  DifferentialForm r(basis, a.degree() - 1);
  for (auto& [idx, c] : a.terms()) {
    for (size_t pos = 0; pos < idx.size(); ++pos) {
      const Expr& vc = v.comp[idx[pos]];
      if (vc.is_zero()) continue;
      std::vector<int> rest;
      for (size_t k = 0; k < idx.size(); ++k)
        if (k != pos) rest.push_back(idx[k]);
      Expr sgn = (pos % 2 == 0) ? vc : -vc;
      r.add(rest, c * sgn);
    }
  }
  return r;
}

Expr pairing(const DifferentialForm& one_form, const VectorField& v) {
  if (one_form.degree() != 1) throw Error("pairing expects a 1-form");
  DifferentialForm s = interior(v, one_form);
  Expr acc = v.chart.ctx->zero();
  for (auto& [idx, c] : s.terms()) acc = acc + c;
  return acc;
}

// ---------------------------------------------------------------------------
// linear algebra over the rational-function field

ExprMatrix invert(const ExprMatrix& m, Context& ctx) {
  if (m.rows != m.cols) throw Error("only square matrices invert");
  int n = m.rows;
  ExprMatrix a = m;
  ExprMatrix inv(n, n, ctx);
  for (int i = 0; i < n; ++i) inv.at(i, i) = ctx.one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw SingularFrame("frame matrix is singular over the rational-function field");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a.v[piv * n + c], a.v[col * n + c]);
        std::swap(inv.v[piv * n + c], inv.v[col * n + c]);
      }
    }
    Expr p = a.at(col, col);
    for (int c = 0; c < n; ++c) {
      a.at(col, c) = a.at(col, c) / p;
      inv.at(col, c) = inv.at(col, c) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Expr f = a.at(r, col);
      if (f.is_zero()) continue;
      for (int c = 0; c < n; ++c) {
        a.at(r, c) = a.at(r, c) - f * a.at(col, c);
        inv.at(r, c) = inv.at(r, c) - f * inv.at(col, c);
      }
    }
  }
  return inv;
}

int generic_rank(ExprMatrix m, Context& ctx, Expr* pivot_product) {
  // fraction-free Bareiss elimination on a denominator-cleared copy
  std::vector<std::vector<Poly>> a(m.rows, std::vector<Poly>(m.cols));
  for (int i = 0; i < m.rows; ++i) {
    Expr common = ctx.one();
    for (int j = 0; j < m.cols; ++j)
      common = ctx.mul_polys(common.num(), m.at(i, j).den());
    for (int j = 0; j < m.cols; ++j) {
      Expr cleared = m.at(i, j) * common;
      if (!cleared.den().is_constant()) throw Error("denominator clearing failed");
      a[i][j] = cleared.num();
    }
  }
  int rank = 0, r0 = 0;
  Poly prev;
  prev.t.emplace(Monomial{}, Rational(1));
  if (pivot_product) *pivot_product = ctx.one();
  for (int col = 0; col < m.cols && r0 < m.rows; ++col) {
    int piv = -1;
    for (int r = r0; r < m.rows; ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != r0) std::swap(a[piv], a[r0]);
    const Poly p = a[r0][col];
    if (pivot_product) *pivot_product = *pivot_product * ctx.poly_to_expr(Poly(p));
    for (int r = r0 + 1; r < m.rows; ++r) {
      for (int c = 0; c < m.cols; ++c) {
        if (c == col) continue;
        // a[r][c] = (p*a[r][c] - a[r][col]*a[r0][c]) / prev   (exact)
        Expr t1 = ctx.mul_polys(p, a[r][c]);
        Expr t2 = ctx.mul_polys(a[r][col], a[r0][c]);
        Expr diffv = t1 - t2;
        if (!diffv.den().is_constant()) throw Error("fraction-free step left a denominator");
        Poly q;
        if (diffv.num().is_zero()) {
          a[r][c] = Poly{};
        } else if (ctx.poly_divide_exact(diffv.num(), prev, &q)) {
          a[r][c] = std::move(q);
        } else {
          // fall back to exact field division (possible after content scaling)
          Expr e = diffv / ctx.poly_to_expr(Poly(prev));
          if (!e.den().is_constant()) throw Error("Bareiss division was not exact");
          a[r][c] = e.num();
        }
      }
      a[r][col] = Poly{};
    }
    prev = p;
    ++rank;
    ++r0;
  }
  if (pivot_product) {
    Poly n = pivot_product->num();
    *pivot_product = ctx.poly_to_expr(std::move(n));
  }
  return rank;
}

std::vector<DifferentialForm> dual_coframe(const std::vector<VectorField>& frame) {
  if (frame.empty()) throw Error("empty frame");
  const Chart& chart = frame[0].chart;
  Context& ctx = *chart.ctx;
  size_t n = chart.dim();
  if (frame.size() != n) throw Error("frame size must match the chart dimension");
  ExprMatrix F(static_cast<int>(n), static_cast<int>(n), ctx);
  for (size_t i = 0; i < n; ++i) {
    if (!(frame[i].chart == chart)) throw BasisMismatch("frame fields on different charts");
    for (size_t j = 0; j < n; ++j)
      F.at(static_cast<int>(i), static_cast<int>(j)) = frame[i].comp[j];
  }
  ExprMatrix Finv = invert(F, ctx);
  BasisPtr basis = coordinate_basis(chart);
  std::vector<DifferentialForm> coframe;
  for (size_t nu = 0; nu < n; ++nu) {
    DifferentialForm w(basis, 1);
    for (size_t j = 0; j < n; ++j)
      w.add({static_cast<int>(j)}, Finv.at(static_cast<int>(j), static_cast<int>(nu)));
    coframe.push_back(std::move(w));
  }
  return coframe;
}

DifferentialForm pullback(const DifferentialForm& form, const Chart& source,
                          const std::map<AtomId, Expr>& target_to_source) {
  const BasisPtr& basis = form.basis();
  if (!basis->coordinate) throw Error("pullback needs a coordinate-basis form");
  const Chart& target = basis->chart;
  Context& ctx = *source.ctx;
  BasisPtr sbasis = coordinate_basis(source);

  auto subst_all = [&](Expr e) {
    for (auto& [a, v] : target_to_source) e = ctx.substitute(e, a, v);
    return e;
  };

  std::vector<DifferentialForm> dphi;
  for (AtomId a : target.coords) {
    auto it = target_to_source.find(a);
    if (it == target_to_source.end()) throw Error("pullback map misses a target coordinate");
    DifferentialForm df(sbasis, 1);
    for (size_t j = 0; j < source.coords.size(); ++j) {
      Expr dc = ctx.diff(it->second, source.coords[j]);
      if (!dc.is_zero()) df.add({static_cast<int>(j)}, dc);
    }
    dphi.push_back(std::move(df));
  }

  DifferentialForm r(sbasis, form.degree());
  for (auto& [idx, c] : form.terms()) {
    DifferentialForm piece = DifferentialForm::scalar(sbasis, subst_all(c));
    for (int k : idx) piece = wedge(piece, dphi[k]);
    r = r + piece;
  }
  return r;
}

// ---------------------------------------------------------------------------
// FormMatrix

FormMatrix FormMatrix::operator+(const FormMatrix& o) const {
  FormMatrix r = *this;
  for (size_t i = 0; i < v.size(); ++i) r.v[i] = r.v[i] + o.v[i];
  return r;
}

FormMatrix FormMatrix::operator-(const FormMatrix& o) const {
  FormMatrix r = *this;
  for (size_t i = 0; i < v.size(); ++i) r.v[i] = r.v[i] - o.v[i];
  return r;
}

FormMatrix wedge_mul(const FormMatrix& a, const FormMatrix& b) {
  if (a.cols != b.rows) throw Error("form matrix dimensions do not match");
  int deg = 0;
  if (!a.v.empty() && !b.v.empty()) deg = a.v[0].degree() + b.v[0].degree();
  FormMatrix r(a.rows, b.cols, a.v.empty() ? b.v[0].basis() : a.v[0].basis(), deg);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      DifferentialForm acc = r.at(i, j);
      for (int k = 0; k < a.cols; ++k) acc = acc + wedge(a.at(i, k), b.at(k, j));
      r.at(i, j) = acc;
    }
  return r;
}

}  // namespace monge8
