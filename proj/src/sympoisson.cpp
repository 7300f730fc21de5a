#include "bracketlab/sympoisson.hpp"

#include <algorithm>
#include <sstream>

namespace bracketlab {

namespace {

Poly var(const GeneratorTable& t, int i) { return Poly::variable(t.nvars(), i); }

GElement coord(const TablePtr& t, int i) { return GElement::scalar(t, var(*t, i)); }

// Constant term of a degree-0 element (its only word is the empty one).
Poly scalar_part(const GElement& e) {
  if (e.is_zero()) return Poly(e.table() ? e.table()->nvars() : 0);
  Word empty(e.table()->size(), 0);
  for (const auto& [w, c] : e.terms())
    if (w != empty) throw std::logic_error("expected a function on the base");
  return e.coeff(empty);
}

int conj_generator(const GeneratorTable& t, int g) {
  int found = -1;
  for (const auto& [uv, v] : t.pairing_entries())
    if (uv.first == g) {
      if (found >= 0) throw std::logic_error("generator " + t.gen(g).name + " pairs with more than one generator");
      found = uv.second;
    }
  if (found < 0) throw std::logic_error("generator " + t.gen(g).name + " has no conjugate");
  return found;
}

// Small algebroid-table derivation moved into the given class of a big table.
Derivation embed(const Derivation& Q, const TablePtr& big, int cls) {
  auto map = class_map(*big, cls);
  Derivation D(big, Q.degree());
  for (int i = 0; i < Q.table()->base_dim(); ++i) D.set_base_image(i, remap(Q.base_image(i), big, map));
  for (int g = 0; g < Q.table()->size(); ++g) D.set_gen_image(map[g], remap(Q.gen_image(g), big, map));
  return D;
}

std::vector<std::vector<Poly>> poly_matrix(int r, int c, int nv) {
  return std::vector<std::vector<Poly>>(r, std::vector<Poly>(c, Poly(nv)));
}

QMatrix inverse(const QMatrix& g) {
  int r = g.rows();
  QMatrix inv(r, r);
  for (int j = 0; j < r; ++j) {
    RVec e(r, 0);
    e[j] = 1;
    auto s = solve(g, e);
    if (!s) throw std::invalid_argument("pairing is singular");
    for (int i = 0; i < r; ++i) inv(i, j) = (*s)[i];
  }
  return inv;
}

int min_order(const GElement& e, const std::vector<int>& type, const RVec& p, int cap) {
  const auto& t = *e.table();
  int best = cap;
  for (const auto& [w, c] : e.terms())
    if (word_type(t, w) == type) best = std::min(best, vanishing_order(c, p, cap));
  return best;
}

void require_order(const Bivector& pi, const RVec& p, int k) {
  for (const auto& row : pi)
    for (const auto& c : row)
      if (!in_ideal_power(c, p, k))
        throw OrderError("bivector does not vanish to order " + std::to_string(k) + " at the point");
}

}  // namespace

TablePtr bialgebroid_table(int n, int rank, int nparams) {
  std::vector<Generator> gens;
  for (int a = 0; a < rank; ++a) gens.push_back({"xi" + std::to_string(a), 1, kXiClass, -1});
  for (int a = 0; a < rank; ++a) gens.push_back({"th" + std::to_string(a), 1, kThetaClass, -1});
  for (int i = 0; i < n; ++i) gens.push_back({"p" + std::to_string(i), 2, kMomentumClass, i});
  auto t = std::make_shared<GeneratorTable>(n, gens, nparams);
  for (int a = 0; a < rank; ++a) t->set_pairing(a, rank + a, 1);
  t->degree_bound = 8;
  return t;
}

TablePtr courant_table(int n, const QMatrix& g, int nparams) {
  int r = g.rows();
  if (g.cols() != r) throw std::invalid_argument("pairing must be square");
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (g(a, b) != g(b, a)) throw std::invalid_argument("pairing must be symmetric");
  if (rank(g) != r) throw std::invalid_argument("pairing is singular");
  std::vector<Generator> gens;
  for (int a = 0; a < r; ++a) gens.push_back({"th" + std::to_string(a), 1, 0, -1});
  for (int i = 0; i < n; ++i) gens.push_back({"p" + std::to_string(i), 2, 1, i});
  auto t = std::make_shared<GeneratorTable>(n, gens, nparams);
  for (int a = 0; a < r; ++a)
    for (int b = a; b < r; ++b)
      if (g(a, b) != 0) t->set_pairing(a, b, g(a, b));
  t->degree_bound = 8;
  return t;
}

GElement sym_bracket(const GElement& f, const GElement& g) {
  const TablePtr& tp = f.table() ? f.table() : g.table();
  GElement r(tp);
  if (f.is_zero() || g.is_zero()) return r;
  if (!(*f.table() == *g.table())) throw std::invalid_argument("generator table mismatch");
  const auto& t = *tp;
  for (int i = 0; i < t.base_dim(); ++i) {
    int m = t.momentum_for(i);
    if (m < 0) continue;
    GElement fp = generator_derivative(f, m, false);
    if (!fp.is_zero()) r += gmul(fp, base_derivative(g, i));
    GElement gp = generator_derivative(g, m, true);
    if (!gp.is_zero()) r -= gmul(base_derivative(f, i), gp);
  }
  for (const auto& [uv, G] : t.pairing_entries()) {
    GElement fu = generator_derivative(f, uv.first, false);
    if (fu.is_zero()) continue;
    GElement gv = generator_derivative(g, uv.second, true);
    if (gv.is_zero()) continue;
    r += gmul(fu, gv) * G;
  }
  return r;
}

std::pair<int, int> bidegree(const GElement& f) {
  const auto& t = *f.table();
  int first = -1, total = -1;
  for (const auto& [w, c] : f.terms()) {
    int m = 0;
    for (int g = 0; g < t.size(); ++g)
      if (t.gen(g).cls != kXiClass) m += w[g];
    int d = word_degree(t, w);
    if (first >= 0 && (m != first || d != total)) throw std::logic_error("element is not bihomogeneous");
    first = m;
    total = d;
  }
  if (first < 0) return {0, 0};
  return {first, total - first};
}

std::vector<int> class_map(const GeneratorTable& big, int cls) { return big.gens_of_class(cls); }

GElement hamiltonian(const Derivation& delta, int cls) {
  const TablePtr& tp = delta.table();
  const auto& t = *tp;
  if (!t.has_momenta()) throw std::invalid_argument("hamiltonian needs momentum generators");
  GElement f(tp);
  for (int i = 0; i < t.base_dim(); ++i)
    if (!delta.base_image(i).is_zero()) f += gmul(delta.base_image(i), GElement::generator(tp, t.momentum_for(i)));
  for (int g : t.gens_of_class(cls)) {
    if (delta.gen_image(g).is_zero()) continue;
    int c = conj_generator(t, g);
    f += gmul(delta.gen_image(g), GElement::generator(tp, c)) * (Rational(1) / t.pairing(g, c));
  }
  return f;
}

GElement lift_algebroid(const LieAlgebroidData& a, TablePtr big) {
  if (!big) big = bialgebroid_table(a.n, a.rank);
  Derivation Q = build_q(a);
  Derivation defect = mc_defect(Q);
  if (!defect.is_zero()) throw MCError("algebroid data is not Maurer-Cartan: " + defect.str(), GElement(big));
  // build_q is minus the CE differential
  return hamiltonian(embed(-Q, big, kThetaClass), kThetaClass);
}

GElement lift_dual_algebroid(const LieAlgebroidData& adual, TablePtr big) {
  if (!big) big = bialgebroid_table(adual.n, adual.rank);
  Derivation Q = build_q(adual);
  Derivation defect = mc_defect(Q);
  if (!defect.is_zero()) throw MCError("dual algebroid data is not Maurer-Cartan: " + defect.str(), GElement(big));
  return hamiltonian(embed(-Q, big, kXiClass), kXiClass);
}

GElement derived_bracket(const GElement& Pi, const GElement& f, const GElement& g) {
  int df = f.degree(0);
  GElement r = sym_bracket(sym_bracket(Pi, f), g);
  return (df - 1) % 2 == 0 ? r : -r;
}

LieAlgebroidData recover_from_lift(const GElement& Pi) {
  const TablePtr& t = Pi.table();
  int n = t->base_dim();
  auto xis = t->gens_of_class(kXiClass);
  int r = (int)xis.size();
  LieAlgebroidData d = LieAlgebroidData::zero(n, r);
  for (int a = 0; a < r; ++a) {
    GElement xa = GElement::generator(t, xis[a]);
    for (int i = 0; i < n; ++i) d.anchor[a][i] = scalar_part(derived_bracket(Pi, xa, coord(t, i)));
    for (int b = a + 1; b < r; ++b) {
      GElement br = derived_bracket(Pi, xa, GElement::generator(t, xis[b]));
      for (int k = 0; k < r; ++k) {
        Word w(t->size(), 0);
        w[xis[k]] = 1;
        Poly v = br.coeff(w);
        if (!v.is_zero()) d.set_bracket(a, b, k, v);
      }
    }
  }
  return d;
}

GElement multivector(const Bivector& pi, TablePtr big) {
  auto xis = big->gens_of_class(kXiClass);
  int r = (int)xis.size();
  if ((int)pi.size() != r) throw std::invalid_argument("bivector size does not match the bundle rank");
  GElement e(big);
  for (int a = 0; a < r; ++a) {
    if ((int)pi[a].size() != r) throw std::invalid_argument("bivector must be square");
    for (int b = 0; b < r; ++b)
      if (pi[a][b] != -pi[b][a]) throw std::invalid_argument("bivector must be antisymmetric");
    for (int b = a + 1; b < r; ++b) {
      if (pi[a][b].is_zero()) continue;
      Word w(big->size(), 0);
      w[xis[a]] = 1;
      w[xis[b]] = 1;
      Poly c = pi[a][b].nvars() == big->nvars() ? pi[a][b] : pi[a][b].extend(big->nvars());
      e.add_term(w, c);
    }
  }
  return e;
}

GElement multivector_hamiltonian(const GElement& Pi, const GElement& X) {
  int d = X.degree(0);
  GElement r = sym_bracket(Pi, X);
  return (d - 1) % 2 == 0 ? r : -r;
}

std::string pair_defect(const BialgebroidPair& d) {
  std::vector<std::string> bad;
  if (!sym_bracket(d.Pi, d.Pi).is_zero()) bad.push_back("{Pi,Pi} != 0");
  if (!sym_bracket(d.Pi, d.f).is_zero()) bad.push_back("{Pi,f} != 0");
  if (!sym_bracket(d.f, d.f).is_zero()) bad.push_back("{f,f} != 0");
  std::string s;
  for (const auto& b : bad) s += (s.empty() ? "" : "; ") + b;
  return s;
}

void require_mc(const BialgebroidPair& d) {
  std::string s = pair_defect(d);
  if (s.empty()) return;
  GElement total = sym_bracket(d.Pi + d.f, d.Pi + d.f);
  throw MCError("bialgebroid pair is not Maurer-Cartan: " + s, total);
}

LieAlgebroidData tangent_algebroid(int n) {
  LieAlgebroidData d = LieAlgebroidData::zero(n, n);
  for (int a = 0; a < n; ++a) d.anchor[a][a] = Poly::constant(n, 1);
  return d;
}

LieAlgebroidData b_tangent_algebroid(int n, int h) {
  if (h < 0 || h >= n) throw std::invalid_argument("hypersurface index out of range");
  LieAlgebroidData d = tangent_algebroid(n);
  d.anchor[h][h] = Poly::variable(n, h);
  return d;
}

BialgebroidPair triangular_pair(const LieAlgebroidData& a, const Bivector& pi) {
  BialgebroidPair d;
  d.table = bialgebroid_table(a.n, a.rank);
  d.Pi = lift_algebroid(a, d.table);
  d.f = multivector_hamiltonian(d.Pi, multivector(pi, d.table));
  return d;
}

namespace {

std::vector<Component> bialg_w1(int k) {
  return {{"anchor", kNoSource, {1, 0, 1}, k}, {"bracket", kNoSource, {2, 1, 0}, k - 1}};
}

}  // namespace

bool dual_has_fixed_point(const BialgebroidPair& d, const RVec& p, int k) {
  QuotientSpace w1(d.table, p, bialg_w1(k));
  return w1.in_subalgebra(d.f);
}

QuotientComplex bialgebroid_complex(const BialgebroidPair& d, const RVec& p, int k) {
  if (k < 1) throw OrderError("order must be at least 1");
  if ((int)p.size() != d.table->base_dim()) throw std::invalid_argument("point dimension does not match the base");
  require_mc(d);
  if (!dual_has_fixed_point(d, p, k))
    throw OrderError("point is not a fixed point of order " + std::to_string(k) + " of the dual structure");
  QuotientSpace w0(d.table, p, {{"T_pM", kNoSource, {0, 0, 1}, 1}});
  QuotientSpace w1(d.table, p, bialg_w1(k));
  QuotientSpace w2(d.table, p,
                   {{"anchor^2", kNoSource, {2, 0, 1}, 2 * k - 1},
                    {"bracket^2", kNoSource, {3, 1, 0}, 2 * k - 2},
                    {"S2 TM", kNoSource, {0, 0, 2}, k},
                    {"A x T*M -> A", kNoSource, {1, 1, 1}, k - 1},
                    {"S2 A -> S2 A", kNoSource, {2, 2, 0}, k - 2}});
  GElement total = d.Pi + d.f;
  return assemble_function_complex(w0, w1, w2, [&](const GElement& g) { return sym_bracket(total, g); });
}

namespace {

struct PoissonSetup {
  TablePtr table;
  GElement Pi, pihat, f;
};

PoissonSetup poisson_setup(const Bivector& pi) {
  int n = (int)pi.size();
  PoissonSetup s;
  s.table = bialgebroid_table(n, n);
  s.Pi = lift_algebroid(tangent_algebroid(n), s.table);
  s.pihat = multivector(pi, s.table);
  s.f = multivector_hamiltonian(s.Pi, s.pihat);
  return s;
}

}  // namespace

QuotientComplex poisson_complex(const Bivector& pi, const RVec& p, int k) {
  if (k < 1) throw OrderError("order must be at least 1");
  auto s = poisson_setup(pi);
  // [pi, pi] = {f, pi}
  GElement jac = sym_bracket(s.f, s.pihat);
  if (!jac.is_zero()) throw MCError("bivector is not Poisson: [pi,pi] = " + jac.str(), jac);
  require_order(pi, p, k);
  QuotientSpace w0(s.table, p, {{"X^1", kNoSource, {1, 0, 0}, 1}});
  QuotientSpace w1(s.table, p, {{"X^2", kNoSource, {2, 0, 0}, k}});
  QuotientSpace w2(s.table, p, {{"X^3", kNoSource, {3, 0, 0}, 2 * k - 1}});
  return assemble_function_complex(w0, w1, w2, [&](const GElement& g) { return sym_bracket(s.f, g); });
}

QuotientComplex poisson_bialgebroid_complex(const Bivector& pi, const RVec& p, int k) {
  return bialgebroid_complex(triangular_pair(tangent_algebroid((int)pi.size()), pi), p, k);
}

QuotientComplex b_poisson_complex(const Bivector& pi, int h, const RVec& p, int k) {
  int n = (int)pi.size();
  if ((int)p.size() != n) throw std::invalid_argument("point dimension does not match the base");
  if (h < 0 || h >= n) throw std::invalid_argument("hypersurface index out of range");
  if (p[h] != 0) throw std::invalid_argument("point is off the hypersurface; use the Poisson complex");
  return bialgebroid_complex(triangular_pair(b_tangent_algebroid(n, h), pi), p, k);
}

std::vector<int> b_k_subspace(const QuotientComplex& qc, int h) {
  const auto& t = *qc.W1.table();
  auto xis = t.gens_of_class(kXiClass);
  std::vector<int> out;
  for (int i = 0; i < qc.W1.dim(); ++i) {
    const auto& b = qc.W1.basis()[i];
    if (qc.W1.components()[b.comp].name != "anchor") continue;
    if (total_degree(b.beta) != 0) throw std::logic_error("the K subspace is defined for order 1 only");
    bool excluded = b.word[xis[h]] == 1 && b.word[t.momentum_for(h)] == 1;
    if (!excluded) out.push_back(i);
  }
  return out;
}

int b_reduced_h1(const Bivector& pi, int h, const RVec& p) {
  QuotientComplex qc = b_poisson_complex(pi, h, p, 1);
  auto K = b_k_subspace(qc, h);
  std::vector<bool> inK(qc.W1.dim(), false);
  for (int i : K) inK[i] = true;
  const auto& D0 = qc.complex.D0;
  for (int i = 0; i < D0.rows(); ++i)
    for (int j = 0; j < D0.cols(); ++j)
      if (D0(i, j) != 0 && !inK[i]) throw std::logic_error("coboundaries leave the K subspace");
  return reduced_h1(qc.complex, K);
}

LieAlgebroidData nijenhuis_algebroid(const std::vector<std::vector<Poly>>& N) {
  int n = (int)N.size();
  LieAlgebroidData d = LieAlgebroidData::zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) d.anchor[a][i] = N[i][a];
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Poly v = partial_derivative(N[c][b], a) - partial_derivative(N[c][a], b);
        if (!v.is_zero()) d.set_bracket(a, b, c, v);
      }
  return d;
}

std::string PNCheck::failures() const {
  std::string s;
  auto add = [&](bool ok, const char* what) {
    if (!ok) s += (s.empty() ? "" : "; ") + std::string(what);
  };
  add(poisson, "a) [pi,pi] != 0");
  add(nijenhuis, "b) Nijenhuis torsion of N is nonzero");
  add(intertwines, "c) pi^# N^vee != N pi^#");
  add(bracket_compat, "d) {Pi_{d_N}, f_[pi,-]} != 0");
  return s;
}

namespace {

using VField = std::vector<Poly>;

VField field_bracket(const VField& X, const VField& Y) {
  int n = (int)X.size();
  VField r(n, Poly(n));
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i) {
      r[c] += X[i] * partial_derivative(Y[c], i);
      r[c] -= Y[i] * partial_derivative(X[c], i);
    }
  return r;
}

VField apply_endo(const std::vector<std::vector<Poly>>& N, const VField& X) {
  int n = (int)X.size();
  VField r(n, Poly(n));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a) r[c] += N[c][a] * X[a];
  return r;
}

bool nijenhuis_torsion_zero(const std::vector<std::vector<Poly>>& N) {
  int n = (int)N.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      VField ea(n, Poly(n)), eb(n, Poly(n));
      ea[a] = Poly::constant(n, 1);
      eb[b] = Poly::constant(n, 1);
      VField Na = apply_endo(N, ea), Nb = apply_endo(N, eb);
      VField t1 = field_bracket(Na, Nb);
      VField inner = field_bracket(Na, eb);
      VField t2 = field_bracket(ea, Nb);
      for (int c = 0; c < n; ++c) inner[c] += t2[c];
      VField t3 = apply_endo(N, inner);
      for (int c = 0; c < n; ++c)
        if (t1[c] != t3[c]) return false;  // [e_a, e_b] = 0 for coordinate fields
    }
  return true;
}

}  // namespace

PNCheck pn_check(const PNData& d) {
  int n = (int)d.pi.size();
  if ((int)d.N.size() != n) throw std::invalid_argument("N must be n x n");
  for (const auto& row : d.N)
    if ((int)row.size() != n) throw std::invalid_argument("N must be n x n");
  PNCheck c;
  auto s = poisson_setup(d.pi);
  c.poisson = sym_bracket(s.f, s.pihat).is_zero();
  c.nijenhuis = nijenhuis_torsion_zero(d.N);
  // pi^# has columns pi^#(dx^a) = sum_b pi[a][b] d/dx^b; the condition is N pi^# skew
  c.intertwines = true;
  for (int i = 0; i < n && c.intertwines; ++i)
    for (int j = 0; j < n; ++j) {
      Poly nij(n), nji(n);
      for (int m = 0; m < n; ++m) {
        nij += d.N[i][m] * d.pi[j][m];
        nji += d.N[j][m] * d.pi[i][m];
      }
      if (nij != -nji) {
        c.intertwines = false;
        break;
      }
    }
  if (c.nijenhuis) {
    LieAlgebroidData dn = nijenhuis_algebroid(d.N);
    if (mc_defect(build_q(dn)).is_zero()) {
      GElement PiN = lift_algebroid(dn, s.table);
      c.bracket_compat = sym_bracket(PiN, s.f).is_zero();
    }
  }
  return c;
}

QuotientComplex pn_complex(const PNData& d, const RVec& p, int k) {
  if (k < 1) throw OrderError("order must be at least 1");
  PNCheck c = pn_check(d);
  if (!c.ok()) throw MCError("Poisson-Nijenhuis compatibility fails: " + c.failures(), GElement());
  require_order(d.pi, p, k);
  auto s = poisson_setup(d.pi);
  GElement PiN = lift_algebroid(nijenhuis_algebroid(d.N), s.table);
  QuotientSpace w0(s.table, p, {{"X^1", kNoSource, {1, 0, 0}, 1}});
  QuotientSpace w1(s.table, p, {{"X^2", kNoSource, {2, 0, 0}, k}});
  QuotientSpace w2(s.table, p,
                   {{"X^3", kNoSource, {3, 0, 0}, 2 * k - 1},
                    {"S2 TM", kNoSource, {0, 0, 2}, k},
                    {"A x T*M -> A", kNoSource, {1, 1, 1}, k - 1},
                    {"S2 A -> S2 A", kNoSource, {2, 2, 0}, k - 2}});
  return assemble_function_complex(w0, w1, w2, [&](const GElement& g) {
    return sym_bracket(s.f, g) + sym_bracket(PiN, multivector_hamiltonian(s.Pi, g));
  });
}

CourantData CourantData::zero(int n, const QMatrix& g) {
  CourantData d;
  d.n = n;
  d.g = g;
  int r = g.rows();
  d.anchor = poly_matrix(r, n, n);
  d.T.assign(r, poly_matrix(r, r, n));
  return d;
}

void CourantData::set_T(int a, int b, int c, const Poly& v) {
  if (a == b || b == c || a == c) throw std::invalid_argument("T is totally antisymmetric; slots must differ");
  int idx[3] = {a, b, c};
  int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  for (int s = 0; s < 6; ++s) T[idx[perm[s][0]]][idx[perm[s][1]]][idx[perm[s][2]]] = s < 3 ? v : -v;
}

CourantTheta courant_theta(const CourantData& d, TablePtr t) {
  int r = d.rank(), n = d.n;
  if (!t) t = courant_table(n, d.g);
  QMatrix ginv = inverse(d.g);
  // sharp[a] = sum_b g^{ab} th_b, so {sharp[a], th_b} = delta
  std::vector<GElement> sharp;
  for (int a = 0; a < r; ++a) {
    GElement e(t);
    for (int b = 0; b < r; ++b)
      if (ginv(a, b) != 0) e += GElement::generator(t, b) * ginv(a, b);
    sharp.push_back(e);
  }
  GElement theta(t);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i) {
      if (d.anchor[a][i].is_zero()) continue;
      theta += d.anchor[a][i].extend(t->nvars()) * gmul(sharp[a], GElement::generator(t, r + i));
    }
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int c = b + 1; c < r; ++c) {
        if (d.T[a][b][c].is_zero()) continue;
        GElement cube = gmul(gmul(sharp[a], sharp[b]), sharp[c]);
        theta -= d.T[a][b][c].extend(t->nvars()) * cube;
      }
  CourantTheta out;
  out.theta = theta;
  out.defect = sym_bracket(theta, theta);
  return out;
}

CourantData recover_courant(const GElement& theta, const QMatrix& g) {
  const TablePtr& t = theta.table();
  int n = t->base_dim(), r = g.rows();
  CourantData d = CourantData::zero(n, g);
  for (int a = 0; a < r; ++a) {
    GElement ta = sym_bracket(theta, GElement::generator(t, a));
    for (int i = 0; i < n; ++i) d.anchor[a][i] = scalar_part(sym_bracket(ta, coord(t, i)));
    for (int b = 0; b < r; ++b) {
      GElement tab = sym_bracket(ta, GElement::generator(t, b));
      for (int c = 0; c < r; ++c) d.T[a][b][c] = scalar_part(sym_bracket(tab, GElement::generator(t, c)));
    }
  }
  return d;
}

int courant_fixed_point_order(const GElement& theta, const RVec& p) {
  int a = min_order(theta, {1, 1}, p, kOrderCap);
  int b = min_order(theta, {3, 0}, p, kOrderCap);
  return std::min(a, std::min(kOrderCap, b + 1));
}

QuotientComplex courant_complex(const GElement& theta, const RVec& p, int k) {
  if (k < 1) throw OrderError("order must be at least 1");
  const TablePtr& t = theta.table();
  if ((int)p.size() != t->base_dim()) throw std::invalid_argument("point dimension does not match the base");
  GElement defect = sym_bracket(theta, theta);
  if (!defect.is_zero()) throw MCError("Courant structure fails {Theta,Theta} = 0", defect);
  int have = courant_fixed_point_order(theta, p);
  if (have < k)
    throw OrderError("point has Courant fixed-point order " + std::to_string(have) + " < " + std::to_string(k));
  QuotientSpace w0(t, p, {{"T_pM", kNoSource, {0, 1}, 1}});
  QuotientSpace w1(t, p, {{"anchor", kNoSource, {1, 1}, k}, {"bracket", kNoSource, {3, 0}, k - 1}});
  QuotientSpace w2(t, p,
                   {{"E2 x TM", kNoSource, {2, 1}, 2 * k - 1},
                    {"S4 E", kNoSource, {4, 0}, 2 * k - 2},
                    {"S2 TM", kNoSource, {0, 2}, 2 * k}});
  return assemble_function_complex(w0, w1, w2, [&](const GElement& g) { return sym_bracket(theta, g); });
}

CourantData quadratic_lie_courant(const IsotropyAlgebra& g, const QMatrix& pairing, const BottRep& tau) {
  int r = g.dim, n = tau.dim;
  if (pairing.rows() != r || pairing.cols() != r) throw std::invalid_argument("pairing does not match the algebra");
  if ((int)tau.tau.size() != r) throw std::invalid_argument("representation does not match the algebra");
  if (rank(pairing) != r) throw std::invalid_argument("pairing is singular");
  CourantData d = CourantData::zero(n, pairing);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (tau.tau[a](i, j) != 0) d.anchor[a][i] -= Poly::variable(n, j) * tau.tau[a](i, j);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        Rational v = 0;
        for (int e = 0; e < r; ++e) v += g.mu[e][a][b] * pairing(e, c);
        d.T[a][b][c] = Poly::constant(n, v);
      }
  return d;
}

QuotientComplex quad_lie_complex(const IsotropyAlgebra& g, const QMatrix& pairing, const BottRep& tau) {
  CourantData d = quadratic_lie_courant(g, pairing, tau);
  CourantTheta th = courant_theta(d);
  return courant_complex(th.theta, RVec(tau.dim, 0), 1);
}

std::pair<IsotropyAlgebra, QMatrix> double_with_dual(const IsotropyAlgebra& g) {
  int r = g.dim, m = 2 * r;
  IsotropyAlgebra d;
  d.dim = m;
  d.mu.assign(m, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m, 0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        d.mu[k][i][j] = g.mu[k][i][j];
        // [e_i, e^j] = -sum_k mu^j_ik e^k (coadjoint action)
        d.mu[r + k][i][r + j] = -g.mu[j][i][k];
        d.mu[r + k][r + j][i] = g.mu[j][i][k];
      }
  QMatrix P(m, m);
  for (int i = 0; i < r; ++i) P(i, r + i) = P(r + i, i) = 1;
  return {d, P};
}

}  // namespace bracketlab
