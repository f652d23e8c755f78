#include "monge8/distribution.hpp"

#include <sstream>

namespace monge8 {

std::string GrowthVector::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < ranks.size(); ++i) os << (i ? "," : "") << ranks[i];
  os << ")";
  return os.str();
}

namespace {

ExprMatrix span_matrix(const std::vector<VectorField>& fields, Context& ctx, size_t dim) {
  ExprMatrix m(static_cast<int>(fields.size()), static_cast<int>(dim), ctx);
  for (size_t i = 0; i < fields.size(); ++i)
    for (size_t j = 0; j < dim; ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = fields[i].comp[j];
  return m;
}

int rank_at_point(const ExprMatrix& m, Context& ctx, const std::map<AtomId, Rational>& point) {
  std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols, Rational(0)));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) a[i][j] = ctx.eval_rational(m.at(i, j), point);
  int rank = 0, r0 = 0;
  for (int col = 0; col < m.cols && r0 < m.rows; ++col) {
    int piv = -1;
    for (int r = r0; r < m.rows; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[r0]);
    for (int r = r0 + 1; r < m.rows; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[r0][col];
      for (int c = col; c < m.cols; ++c) a[r][c] -= f * a[r0][c];
    }
    ++rank;
    ++r0;
  }
  return rank;
}

GrowthVector flag_impl(const Distribution& D, const std::map<AtomId, Rational>* point) {
  Context& ctx = *D.chart.ctx;
  size_t n = D.chart.dim();
  std::vector<VectorField> span = D.generators;
  Expr pivots = ctx.one();
  auto rank_of = [&](const std::vector<VectorField>& fields) {
    ExprMatrix m = span_matrix(fields, ctx, n);
    Expr pp = ctx.one();
    int generic = generic_rank(m, ctx, &pp);
    if (!point) return generic;
    int at = rank_at_point(m, ctx, *point);
    if (at != generic)
      throw RankDropOnLocus("rank drops at the requested point (generic " +
                                std::to_string(generic) + ", here " + std::to_string(at) + ")",
                            pp);
    return generic;
  };

  GrowthVector g;
  int rank = rank_of(span);
  g.ranks.push_back(rank);
  while (true) {
    if (rank == static_cast<int>(n)) break;
    std::vector<VectorField> next = span;
    for (auto& gen : D.generators)
      for (auto& v : span) {
        VectorField b = bracket(gen, v);
        if (!b.is_zero()) next.push_back(b);
      }
    int nrank = rank_of(next);
    g.ranks.push_back(nrank);
    if (nrank == rank) break;  // stabilized below the chart dimension
    span = std::move(next);
    rank = nrank;
  }
  return g;
}

}  // namespace

GrowthVector derived_flag(const Distribution& D) { return flag_impl(D, nullptr); }

GrowthVector derived_flag_at_point(const Distribution& D,
                                   const std::map<AtomId, Rational>& point) {
  return flag_impl(D, &point);
}

SymbolReport check_monge_symbol(const Distribution& D, std::optional<Expr> hessian_det) {
  Context& ctx = *D.chart.ctx;
  size_t n = D.chart.dim();
  SymbolReport rep;
  rep.hessian_determinant = std::move(hessian_det);
  rep.growth = derived_flag(D);
  if (!(rep.growth.ranks.size() == 3 && rep.growth.ranks[0] == 3 && rep.growth.ranks[1] == 5 &&
        rep.growth.ranks[2] == 8))
    throw NotMongeShape("growth vector is " + rep.growth.str() + ", expected (3,5,8)");
  if (D.generators.size() != 3) throw NotMongeShape("expected three generators");

  // h = Span(last two generators) abelian mod D
  const VectorField& X1 = D.generators[1];
  const VectorField& X2 = D.generators[2];
  {
    std::vector<VectorField> with = D.generators;
    with.push_back(bracket(X1, X2));
    ExprMatrix m = span_matrix(with, ctx, n);
    rep.h_abelian = generic_rank(m, ctx) == 3;
    if (!rep.h_abelian) throw NotMongeShape("[X1,X2] does not lie in the distribution");
  }

  // [g_{-1}, h] spans grade -2: D plus these brackets has rank 5
  {
    std::vector<VectorField> with = D.generators;
    for (auto& g : D.generators)
      for (auto* h : {&X1, &X2}) {
        VectorField b = bracket(g, *h);
        if (!b.is_zero()) with.push_back(b);
      }
    ExprMatrix m = span_matrix(with, ctx, n);
    rep.h_generates = generic_rank(m, ctx) == 5;
    if (!rep.h_generates) throw NotMongeShape("[g_{-1}, h] does not span grade -2");
  }
  return rep;
}

}  // namespace monge8
