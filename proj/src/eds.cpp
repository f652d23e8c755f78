#include "monge8/eds.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "monge8/parser.hpp"
#include "monge8/sha256.hpp"

namespace monge8 {

namespace {

// reindexes a form onto a basis whose name list extends the form's own
DifferentialForm lift(const DifferentialForm& f, const BasisPtr& target) {
  if (f.basis() && f.basis()->same(*target)) return f;
  if (f.basis()) {
    const auto& a = f.basis()->names;
    const auto& b = target->names;
    if (a.size() > b.size() || !std::equal(a.begin(), a.end(), b.begin()))
      throw BasisMismatch("form does not live over a prefix of the target coframe");
  }
  DifferentialForm r(target, f.degree());
  for (auto& [idx, c] : f.terms()) r.add(idx, c);
  return r;
}

}  // namespace

AbstractEDS::AbstractEDS(Context& ctx, const std::vector<std::string>& coframe_names)
    : ctx_(&ctx), coframe_names_(coframe_names) {
  structure_.assign(coframe_names_.size(), DifferentialForm());
  rebuild_basis();
  for (auto& s : structure_) s = DifferentialForm(basis_, 2);
}

void AbstractEDS::rebuild_basis() {
  std::vector<std::string> names = coframe_names_;
  free_slot_.clear();
  for (auto& s : scalars_) {
    if (!s.known) {
      free_slot_[s.symbol] = static_cast<int>(names.size());
      names.push_back("d(" + s.name + ")");
    }
  }
  basis_ = abstract_basis(names);
  for (auto& s : structure_)
    if (s.basis()) s = lift(s, basis_);
  for (auto& sc : scalars_)
    if (sc.known && sc.differential.basis()) sc.differential = lift(sc.differential, basis_);
}

int AbstractEDS::coframe_index(const std::string& name) const {
  for (size_t i = 0; i < coframe_names_.size(); ++i)
    if (coframe_names_[i] == name) return static_cast<int>(i);
  throw Error("unknown coframe symbol '" + name + "'");
}

void AbstractEDS::set_structure(int i, const DifferentialForm& dw) {
  if (i < 0 || i >= dim()) throw Error("structure index out of range");
  if (dw.degree() != 2 && !dw.is_zero()) throw Error("structure equations are 2-forms");
  structure_[i] = lift(dw, basis_);
}

void AbstractEDS::declare_parameter(const std::string& name) {
  ctx_->parameter(name);
  parameters_.push_back(name);
}

void AbstractEDS::declare_sign_parameter(const std::string& name) {
  ctx_->sign_parameter(name);
  sign_parameters_.push_back(name);
  parameters_.push_back(name);
}

void AbstractEDS::declare_scalar(const std::string& name, const DifferentialForm& differential) {
  ScalarField s;
  s.name = name;
  s.symbol = ctx_->parameter(name);
  s.known = true;
  s.differential = differential;
  scalars_.push_back(std::move(s));
  rebuild_basis();
}

void AbstractEDS::declare_free_scalar(const std::string& name) {
  ScalarField s;
  s.name = name;
  s.symbol = ctx_->parameter(name);
  s.known = false;
  scalars_.push_back(std::move(s));
  rebuild_basis();
}

void AbstractEDS::set_scalar_rule(const std::string& name, const DifferentialForm& differential) {
  for (auto& s : scalars_)
    if (s.name == name) {
      if (!s.known) throw Error("scalar '" + name + "' was declared free");
      s.differential = lift(differential, basis_);
      return;
    }
  throw Error("no scalar named '" + name + "'");
}

const ScalarField* AbstractEDS::find_scalar(AtomId symbol) const {
  for (auto& s : scalars_)
    if (s.symbol == symbol) return &s;
  return nullptr;
}

DifferentialForm AbstractEDS::one_form(int i) const {
  return DifferentialForm::basis_one_form(basis_, i, *ctx_);
}

DifferentialForm AbstractEDS::wedge_basis(int i, int j) const {
  return wedge(one_form(i), one_form(j));
}

DifferentialForm AbstractEDS::d_scalar(const Expr& f) const {
  DifferentialForm r(basis_, 1);
  // every symbol atom in f must be a declared scalar or parameter
  auto scan = [&](const Poly& p) {
    for (auto& [m, c] : p.t)
      for (auto& q : m.f) {
        const AtomInfo& ai = ctx_->info(q.first);
        if (ai.kind == AtomKind::Symbol) {
          if (ai.skind == SymbolKind::Coordinate)
            throw Error("coordinate '" + ai.name + "' in abstract EDS coefficient");
          if (find_scalar(q.first)) continue;
          if (std::find(parameters_.begin(), parameters_.end(), ai.name) != parameters_.end())
            continue;
          throw UndeclaredScalar("scalar '" + ai.name + "' has no declared differential");
        } else if (ai.kind == AtomKind::Derivative) {
          throw Error("derivative atom in abstract EDS coefficient");
        }
      }
  };
  scan(f.num());
  scan(f.den());

  for (auto& s : scalars_) {
    Expr df = ctx_->diff(f, s.symbol);
    if (df.is_zero()) continue;
    if (s.known) {
      r = r + s.differential * df;
    } else {
      int slot = free_slot_.at(s.symbol);
      DifferentialForm ds = DifferentialForm::basis_one_form(basis_, slot, *ctx_);
      r = r + ds * df;
    }
  }
  return r;
}

DifferentialForm AbstractEDS::d(const DifferentialForm& a_in) const {
  DifferentialForm a = lift(a_in, basis_);
  DifferentialForm r(basis_, a.degree() + 1);
  for (auto& [idx, c] : a.terms()) {
    // d(coefficient) ^ w^I
    DifferentialForm dc = d_scalar(c);
    for (auto& [di, dcoef] : dc.terms()) {
      std::vector<int> nidx = di;
      nidx.insert(nidx.end(), idx.begin(), idx.end());
      r.add(nidx, dcoef);
    }
    // coefficient * sum_j +- w^{i1} ^ ... d(w^{ij}) ... ^ w^{ik}
    for (size_t pos = 0; pos < idx.size(); ++pos) {
      int k = idx[pos];
      if (k >= dim())
        throw Error("cannot differentiate a form containing free scalar differentials");
      const DifferentialForm& dw = structure_[k];
      for (auto& [wi, wc] : dw.terms()) {
        std::vector<int> nidx;
        for (size_t q = 0; q < pos; ++q) nidx.push_back(idx[q]);
        nidx.insert(nidx.end(), wi.begin(), wi.end());
        for (size_t q = pos + 1; q < idx.size(); ++q) nidx.push_back(idx[q]);
        Expr sgn = (pos % 2 == 0) ? c * wc : -(c * wc);
        r.add(nidx, sgn);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// closure

namespace {

// decides whether residual = sum_s d(s)^eta_s + K can be cancelled by some
// choice of the free differentials d(s) = sum_k c_sk w^k
bool absorbable(const AbstractEDS& s, const DifferentialForm& residual) {
  Context& ctx = s.ctx();
  int n = s.dim();
  int total = static_cast<int>(s.basis()->dim());
  if (residual.is_zero()) return true;

  // split into plain part K and slot parts eta_s
  std::map<int, DifferentialForm> eta;  // slot -> (p-1)-form over the full basis
  DifferentialForm K(s.basis(), residual.degree());
  for (auto& [idx, c] : residual.terms()) {
    std::vector<int> slots, plain;
    for (int k : idx) (k >= n ? slots : plain).push_back(k);
    if (slots.empty()) {
      K.add(idx, c);
    } else if (slots.size() == 1) {
      // sign of moving the slot index to the front
      int slot = slots[0];
      int pos = 0;
      while (idx[pos] != slot) ++pos;
      Expr cc = (pos % 2 == 0) ? c : -c;
      auto it = eta.find(slot);
      if (it == eta.end()) {
        DifferentialForm f(s.basis(), residual.degree() - 1);
        f.add(plain, cc);
        eta.emplace(slot, std::move(f));
      } else {
        it->second.add(plain, cc);
      }
    } else {
      return false;  // quadratic in unknown differentials
    }
  }
  if (K.is_zero()) return true;  // the unknowns can simply vanish
  if (eta.empty()) return false;

  // linear system over the rational-function field:
  //   sum_s (sum_k c_sk w^k) ^ eta_s = -K
  std::vector<std::pair<int, int>> unknowns;  // (slot, k)
  for (auto& [slot, f] : eta)
    for (int k = 0; k < n; ++k) unknowns.emplace_back(slot, k);

  // collect the p-form component index tuples that appear
  std::map<std::vector<int>, int> rows;
  auto note_row = [&](const std::vector<int>& idx) {
    if (!rows.count(idx)) {
      int id = static_cast<int>(rows.size());
      rows.emplace(idx, id);
    }
  };
  std::vector<DifferentialForm> cols;
  for (auto& [slot, k] : unknowns) {
    DifferentialForm wk = DifferentialForm::basis_one_form(s.basis(), k, ctx);
    cols.push_back(wedge(wk, eta.at(slot)));
  }
  for (auto& col : cols)
    for (auto& [idx, c] : col.terms()) note_row(idx);
  for (auto& [idx, c] : K.terms()) note_row(idx);

  (void)total;
  int R = static_cast<int>(rows.size());
  int C = static_cast<int>(unknowns.size());
  ExprMatrix M(R, C, ctx), Mb(R, C + 1, ctx);
  for (int j = 0; j < C; ++j)
    for (auto& [idx, c] : cols[j].terms()) {
      int i = rows.at(idx);
      M.at(i, j) = c;
      Mb.at(i, j) = c;
    }
  for (auto& [idx, c] : K.terms()) Mb.at(rows.at(idx), C) = -c;
  return generic_rank(M, ctx) == generic_rank(Mb, ctx);
}

}  // namespace

std::string EquationResidual::str() const {
  std::string s = equation + ": ";
  if (exact)
    s += "0";
  else if (absorbed)
    s += "0 (mod free differentials)";
  else
    s += residual.str();
  return s;
}

ClosureReport check_closure(const AbstractEDS& s) {
  ClosureReport rep;
  rep.closed = true;
  for (int i = 0; i < s.dim(); ++i) {
    EquationResidual r;
    r.equation = s.coframe_names()[i];
    r.residual = s.d(s.structure(i));
    r.exact = r.residual.is_zero();
    r.absorbed = r.exact ? false : absorbable(s, r.residual);
    if (!r.exact && !r.absorbed) rep.closed = false;
    rep.residuals.push_back(std::move(r));
  }
  for (auto& sc : s.scalars()) {
    if (!sc.known) continue;
    EquationResidual r;
    r.equation = sc.name;
    r.residual = s.d(sc.differential);
    r.exact = r.residual.is_zero();
    r.absorbed = r.exact ? false : absorbable(s, r.residual);
    if (!r.exact && !r.absorbed) rep.closed = false;
    rep.residuals.push_back(std::move(r));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// specialization

AbstractEDS AbstractEDS::specialize(const std::map<std::string, Expr>& bindings) const {
  Context& ctx = *ctx_;
  // resolve names
  std::map<AtomId, Expr> subs;
  for (auto& [name, value] : bindings) {
    AtomId sym = ctx.require_symbol(name);
    if (!find_scalar(sym)) throw Error("'" + name + "' is not a scalar of this system");
    subs.emplace(sym, value);
  }
  auto apply = [&](Expr e) {
    for (auto& [sym, v] : subs) e = ctx.substitute(e, sym, v);
    return e;
  };
  auto apply_form_plain = [&](const DifferentialForm& f, const BasisPtr& b) {
    DifferentialForm r(b, f.degree());
    for (auto& [idx, c] : f.terms()) {
      for (int k : idx)
        if (k >= dim()) throw Error("free differential slot in specialized form");
      r.add(idx, apply(c));
    }
    return r;
  };

  AbstractEDS out(ctx, coframe_names_);
  out.name = name;
  out.parameters_ = parameters_;
  out.sign_parameters_ = sign_parameters_;

  // consistency: for a bound scalar with a known rule, d(binding) computed via
  // the ORIGINAL rules must equal the rule after substitution
  for (auto& sc : scalars_) {
    auto it = subs.find(sc.symbol);
    if (it == subs.end()) continue;
    if (!sc.known) continue;
    DifferentialForm want = apply_form_plain(sc.differential, basis_);
    DifferentialForm got = d_scalar(it->second);
    // substitute into the computed differential as well
    DifferentialForm gots(basis_, 1);
    for (auto& [idx, c] : got.terms()) gots.add(idx, apply(c));
    if (!(gots - want).is_zero())
      throw InconsistentBinding("binding for '" + sc.name +
                                "' contradicts its declared differential");
  }

  // keep unbound scalars, with substituted rules
  for (auto& sc : scalars_) {
    if (subs.count(sc.symbol)) continue;
    if (sc.known)
      out.declare_scalar(sc.name, DifferentialForm());
    else
      out.declare_free_scalar(sc.name);
  }
  // rules and structure over the new basis
  for (auto& sc : scalars_) {
    if (subs.count(sc.symbol) || !sc.known) continue;
    for (auto& osc : out.scalars_)
      if (osc.name == sc.name) {
        DifferentialForm r(out.basis_, 1);
        for (auto& [idx, c] : sc.differential.terms()) {
          for (int k : idx)
            if (k >= dim())
              throw Error("free differential slot in a known rule");
          r.add(idx, apply(c));
        }
        osc.differential = r;
      }
  }
  for (int i = 0; i < dim(); ++i) out.set_structure(i, apply_form_plain(structure_[i], out.basis_));
  return out;
}

// ---------------------------------------------------------------------------
// Lie algebra extraction

Rational LieAlgebraTable::at(int i, int j, int k) const {
  if (j == k) return Rational(0);
  if (j < k) return c[(static_cast<size_t>(i) * n + j) * n + k];
  return -c[(static_cast<size_t>(i) * n + k) * n + j];
}

void LieAlgebraTable::set(int i, int j, int k, const Rational& v) {
  if (j == k) throw Error("structure constants are antisymmetric");
  if (j < k)
    c[(static_cast<size_t>(i) * n + j) * n + k] = v;
  else
    c[(static_cast<size_t>(i) * n + k) * n + j] = -v;
}

bool LieAlgebraTable::jacobi_holds(Rational* worst) const {
  bool ok = true;
  if (worst) *worst = 0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int m = k + 1; m < n; ++m)
        for (int i = 0; i < n; ++i) {
          Rational acc = 0;
          for (int l = 0; l < n; ++l) {
            acc += at(l, j, k) * at(i, l, m);
            acc += at(l, k, m) * at(i, l, j);
            acc += at(l, m, j) * at(i, l, k);
          }
          if (acc != 0) {
            ok = false;
            if (worst && abs(acc) > *worst) *worst = abs(acc);
          }
        }
  return ok;
}

std::vector<std::vector<Rational>> LieAlgebraTable::killing_form() const {
  std::vector<std::vector<Rational>> B(n, std::vector<Rational>(n, Rational(0)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Rational acc = 0;
      for (int cidx = 0; cidx < n; ++cidx)
        for (int didx = 0; didx < n; ++didx) acc += at(cidx, a, didx) * at(didx, b, cidx);
      B[a][b] = acc;
    }
  return B;
}

int LieAlgebraTable::killing_rank() const {
  auto B = killing_form();
  int rank = 0, r0 = 0;
  for (int col = 0; col < n && r0 < n; ++col) {
    int piv = -1;
    for (int r = r0; r < n; ++r)
      if (B[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(B[piv], B[r0]);
    for (int r = r0 + 1; r < n; ++r) {
      if (B[r][col] == 0) continue;
      Rational f = B[r][col] / B[r0][col];
      for (int cc = col; cc < n; ++cc) B[r][cc] -= f * B[r0][cc];
    }
    ++rank;
    ++r0;
  }
  return rank;
}

LieAlgebraTable extract_lie_algebra(const AbstractEDS& s) {
  for (auto& sc : s.scalars())
    if (!sc.known || !sc.differential.is_zero())
      throw NonConstantCoefficients("system has non-constant scalar fields");
  int n = s.dim();
  LieAlgebraTable t;
  t.n = n;
  t.c.assign(static_cast<size_t>(n) * n * n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (auto& [idx, coef] : s.structure(i).terms()) {
      if (!coef.is_rational())
        throw NonConstantCoefficients("structure coefficient is not a rational constant: " +
                                      coef.str());
      if (idx[0] >= n || idx[1] >= n)
        throw NonConstantCoefficients("structure equation touches a free differential");
      // dw^i = -1/2 c^i_{jk} w^j w^k  =>  c^i_{jk} = -coeff_{jk}
      t.set(i, idx[0], idx[1], -coef.rational_value());
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// JSON serialization

AbstractEDS eds_from_json(Context& ctx, const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  AbstractEDS s(ctx, j.at("coframe").get<std::vector<std::string>>());
  s.name = j.value("name", "");
  if (j.contains("sign_parameters"))
    for (auto& p : j["sign_parameters"]) s.declare_sign_parameter(p.get<std::string>());
  if (j.contains("parameters"))
    for (auto& p : j["parameters"]) s.declare_parameter(p.get<std::string>());
  // declare scalar symbols first so rules can reference one another
  std::vector<std::pair<std::string, nlohmann::json>> pending;
  if (j.contains("scalars")) {
    for (auto& sc : j["scalars"]) {
      std::string name = sc.at("name").get<std::string>();
      if (sc.value("free", false)) {
        s.declare_free_scalar(name);
      } else {
        s.declare_scalar(name, DifferentialForm());
        pending.emplace_back(name, sc.at("differential"));
      }
    }
  }
  for (auto& [name, rule] : pending) {
    DifferentialForm f(s.basis(), 1);
    for (auto& term : rule) {
      Expr c = parse_expr(ctx, term.at(0).get<std::string>());
      int k = s.coframe_index(term.at(1).get<std::string>());
      f.add({k}, c);
    }
    s.set_scalar_rule(name, f);
  }
  for (auto& [key, terms] : j.at("structure").items()) {
    int i = s.coframe_index(key);
    DifferentialForm f(s.basis(), 2);
    for (auto& term : terms) {
      Expr c = parse_expr(ctx, term.at(0).get<std::string>());
      int a = s.coframe_index(term.at(1).get<std::string>());
      int b = s.coframe_index(term.at(2).get<std::string>());
      f.add({a, b}, c);
    }
    s.set_structure(i, f);
  }
  return s;
}

std::string eds_to_json(const AbstractEDS& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["coframe"] = s.coframe_names();
  if (!s.parameters().empty()) j["parameters"] = s.parameters();
  nlohmann::json scalars = nlohmann::json::array();
  for (auto& sc : s.scalars()) {
    nlohmann::json e;
    e["name"] = sc.name;
    if (!sc.known) {
      e["free"] = true;
    } else {
      nlohmann::json rule = nlohmann::json::array();
      for (auto& [idx, c] : sc.differential.terms())
        rule.push_back({c.str(), s.coframe_names()[idx[0]]});
      e["differential"] = rule;
    }
    scalars.push_back(e);
  }
  if (!scalars.empty()) j["scalars"] = scalars;
  nlohmann::json st;
  for (int i = 0; i < s.dim(); ++i) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [idx, c] : s.structure(i).terms())
      terms.push_back({c.str(), s.coframe_names()[idx[0]], s.coframe_names()[idx[1]]});
    st[s.coframe_names()[i]] = terms;
  }
  j["structure"] = st;
  return j.dump(1);
}

AbstractEDS load_golden_eds(Context& ctx, const std::string& table_name,
                            const std::string& data_dir) {
  std::string path = data_dir + "/" + table_name + ".json";
  std::ifstream in(path);
  if (!in) throw MissingTable("golden table not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();

  std::ifstream manifest(data_dir + "/checksums.sha256");
  if (!manifest) throw MissingTable("checksum manifest not found in " + data_dir);
  std::string line, expected;
  std::string fname = table_name + ".json";
  while (std::getline(manifest, line)) {
    std::istringstream ls(line);
    std::string hash, file;
    ls >> hash >> file;
    if (file == fname) expected = hash;
  }
  if (expected.empty()) throw MissingTable("no checksum recorded for " + fname);
  if (sha256_hex(text) != expected)
    throw MissingTable("checksum mismatch for " + fname + " (table was modified)");

  return eds_from_json(ctx, text);
}

}  // namespace monge8
