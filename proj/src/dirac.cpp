#include "bracketlab/dirac.hpp"

#include <functional>

namespace bracketlab {

GElement dirac_graph(const Bivector& A, TablePtr table) { return multivector(A, std::move(table)); }

GElement dirac_mc_defect(const BialgebroidPair& d, const GElement& A) {
  GElement dA = sym_bracket(d.f, A);
  // [A, A] = (-1)^{|A|-1} {{Pi, A}, A} with |A| = 2
  GElement half = sym_bracket(sym_bracket(d.Pi, A), A) * Rational(1, 2);
  return dA - half;
}

namespace {

// Words in the first r xi generators of a given degree, lexicographic by index set.
std::vector<std::vector<int>> subsets(int r, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if ((int)cur.size() == m) {
      out.push_back(cur);
      return;
    }
    for (int a = start; a < r; ++a) {
      cur.push_back(a);
      rec(a + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

DiracComplex dirac_complex(const BialgebroidPair& d, const RVec& p) {
  const TablePtr& t = d.table;
  int n = t->base_dim();
  if ((int)p.size() != n) throw std::invalid_argument("point dimension does not match the base");
  require_mc(d);
  if (!dual_has_fixed_point(d, p, 1)) throw OrderError("point is not a fixed point of d_L");
  auto xis = t->gens_of_class(kXiClass);
  int r = (int)xis.size();

  // anchor of L^vee at p, row a = rho(e_a)
  LieAlgebroidData a = recover_from_lift(d.Pi);
  QMatrix rho(n, r);
  for (int q = 0; q < r; ++q)
    for (int i = 0; i < n; ++i) rho(i, q) = a.anchor[q][i].evaluate(p);
  auto kr = kernel_and_rank(rho);

  // complement: greedily add standard vectors independent of the kernel
  QMatrix B(r, r);
  std::vector<std::string> names;
  int nk = (int)kr.kernel.size();
  auto independent = [&](const std::vector<RVec>& vs) {
    QMatrix m(r, (int)vs.size());
    for (int j = 0; j < (int)vs.size(); ++j)
      for (int i = 0; i < r; ++i) m(i, j) = vs[j][i];
    return rank(m) == (int)vs.size();
  };
  std::vector<RVec> all = kr.kernel;
  std::vector<int> comp_index;
  for (int q = 0; q < r && (int)comp_index.size() < r - nk; ++q) {
    RVec e(r, 0);
    e[q] = 1;
    auto trial = all;
    trial.push_back(e);
    if (independent(trial)) {
      all = trial;
      comp_index.push_back(q);
    }
  }
  int c = (int)comp_index.size();
  for (int j = 0; j < c; ++j) {
    B(comp_index[j], j) = 1;
    names.push_back(t->gen(xis[comp_index[j]]).name);
  }
  for (int j = 0; j < nk; ++j) {
    for (int i = 0; i < r; ++i) B(i, c + j) = kr.kernel[j][i];
    bool standard = true;
    int at = -1;
    for (int i = 0; i < r; ++i) {
      if (kr.kernel[j][i] == 0) continue;
      if (kr.kernel[j][i] != 1 || at >= 0) standard = false;
      at = i;
    }
    names.push_back(standard ? t->gen(xis[at]).name : "k" + std::to_string(j));
  }
  // Binv expresses xi^a in the adapted basis
  QMatrix Binv(r, r);
  for (int col = 0; col < r; ++col) {
    RVec e(r, 0);
    e[col] = 1;
    auto s = solve(B, e);
    if (!s) throw std::logic_error("adapted basis is singular");
    for (int i = 0; i < r; ++i) Binv(i, col) = (*s)[i];
  }

  auto adapted_element = [&](const std::vector<int>& idx) {
    GElement e = GElement::scalar(t, Rational(1));
    for (int j : idx) {
      GElement u(t);
      for (int q = 0; q < r; ++q)
        if (B(q, j) != 0) u += GElement::generator(t, xis[q]) * B(q, j);
      e = gmul(e, u);
    }
    return e;
  };
  // constant xi-polynomial -> coefficients on adapted monomials
  auto to_adapted = [&](const GElement& e) {
    GElement out(t);
    for (const auto& [w, coeff] : e.terms()) {
      Rational v = coeff.evaluate(p);
      if (v == 0) continue;
      GElement prod = GElement::scalar(t, v);
      for (int q = 0; q < r; ++q) {
        if (!w[xis[q]]) continue;
        GElement u(t);
        for (int j = 0; j < r; ++j)
          if (Binv(j, q) != 0) u += GElement::generator(t, xis[j]) * Binv(j, q);
        prod = gmul(prod, u);
      }
      out += prod;
    }
    return out;
  };

  std::vector<std::vector<std::vector<int>>> spaces(3);
  std::vector<std::vector<std::string>> labels(3);
  for (int i = 0; i < 3; ++i)
    for (const auto& s : subsets(r, i + 1)) {
      if (s[0] >= c) continue;  // entirely in the kernel
      spaces[i].push_back(s);
      std::string l;
      for (int j : s) l += (l.empty() ? "" : "*") + names[j];
      labels[i].push_back(l);
    }
  auto matrix = [&](int from) {
    const auto& src = spaces[from];
    const auto& dst = spaces[from + 1];
    QMatrix M((int)dst.size(), (int)src.size());
    for (int col = 0; col < (int)src.size(); ++col) {
      GElement img = to_adapted(sym_bracket(d.f, adapted_element(src[col])));
      for (int row = 0; row < (int)dst.size(); ++row) {
        Word w(t->size(), 0);
        for (int j : dst[row]) w[xis[j]] = 1;
        Poly v = img.coeff(w);
        if (!v.is_zero()) M(row, col) = v.constant_term();
      }
    }
    return M;
  };
  DiracComplex out;
  out.complex = TwoTermComplex(matrix(0), matrix(1), labels[0], labels[1], labels[2]);
  out.basis = B;
  out.complement = c;
  out.basis_names = names;
  return out;
}

}  // namespace bracketlab
