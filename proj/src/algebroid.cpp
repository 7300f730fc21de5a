#include "bracketlab/algebroid.hpp"

#include <algorithm>

namespace bracketlab {

namespace {

using Tensor3 = std::vector<std::vector<std::vector<Poly>>>;

Tensor3 zero3(int a, int b, int c, int nv) {
  return Tensor3(a, std::vector<std::vector<Poly>>(b, std::vector<Poly>(c, Poly(nv))));
}

GElement xi(const TablePtr& t, int a) { return GElement::generator(t, a); }

Poly fit(const Poly& p, const TablePtr& t) {
  if (p.nvars() == t->nvars()) return p;
  if (p.nvars() > t->nvars()) throw std::invalid_argument("coefficient has more variables than the table");
  return p.extend(t->nvars());
}

// Minimal vanishing order at p among the coefficients of words of the given
// type in the images of the given source (kBaseSource or a generator class).
int component_order(const Derivation& Q, const RVec& p, int source, const std::vector<int>& type) {
  const auto& t = *Q.table();
  std::vector<const GElement*> imgs;
  if (source == kBaseSource)
    for (int i = 0; i < t.base_dim(); ++i) imgs.push_back(&Q.base_image(i));
  else
    for (int g : t.gens_of_class(source)) imgs.push_back(&Q.gen_image(g));
  int best = kOrderCap;
  for (const auto* img : imgs)
    for (const auto& [w, c] : img->terms())
      if (word_type(t, w) == type) best = std::min(best, vanishing_order(c, p, kOrderCap));
  return best;
}

void check_point(const Derivation& Q, const RVec& p) {
  if ((int)p.size() != Q.table()->base_dim()) throw std::invalid_argument("point dimension does not match the base");
}

}  // namespace

LieAlgebroidData LieAlgebroidData::zero(int n, int rank) {
  LieAlgebroidData d;
  d.n = n;
  d.rank = rank;
  d.anchor.assign(rank, std::vector<Poly>(n, Poly(n)));
  d.c = zero3(rank, rank, rank, n);
  return d;
}

void LieAlgebroidData::set_bracket(int a, int b, int k, const Poly& v) {
  c.at(k).at(a).at(b) = v;
  c[k][b][a] = -v;
}

void LieAlgebroidData::validate() const {
  if ((int)anchor.size() != rank) throw std::invalid_argument("anchor has wrong number of rows");
  for (const auto& row : anchor)
    if ((int)row.size() != n) throw std::invalid_argument("anchor row has wrong length");
  if ((int)c.size() != rank) throw std::invalid_argument("bracket tensor has wrong size");
  for (int k = 0; k < rank; ++k) {
    if ((int)c[k].size() != rank) throw std::invalid_argument("bracket tensor has wrong size");
    for (int a = 0; a < rank; ++a) {
      if ((int)c[k][a].size() != rank) throw std::invalid_argument("bracket tensor has wrong size");
      for (int b = 0; b < rank; ++b)
        if (c[k][a][b] + c[k][b][a] != Poly(c[k][a][b].nvars()))
          throw std::invalid_argument("bracket structure functions are not antisymmetric");
    }
  }
}

bool LieAlgebroidData::operator==(const LieAlgebroidData& o) const {
  return n == o.n && rank == o.rank && anchor == o.anchor && c == o.c;
}

LieNAlgebroidData LieNAlgebroidData::zero(int n, int r1, int r2) {
  LieNAlgebroidData d;
  d.n = n;
  d.r1 = r1;
  d.r2 = r2;
  d.anchor.assign(r1, std::vector<Poly>(n, Poly(n)));
  d.c = zero3(r1, r1, r1, n);
  d.l1.assign(r2, std::vector<Poly>(r1, Poly(n)));
  d.l2 = zero3(r2, r1, r2, n);
  d.l3.assign(r2, zero3(r1, r1, r1, n));
  return d;
}

void LieNAlgebroidData::set_bracket(int a, int b, int k, const Poly& v) {
  c.at(k).at(a).at(b) = v;
  c[k][b][a] = -v;
}

void LieNAlgebroidData::set_l3(int u, int a, int b, int cc, const Poly& v) {
  if (a == b || b == cc || a == cc) throw std::invalid_argument("ternary bracket needs distinct slots");
  int idx[3] = {a, b, cc};
  int perm[3] = {0, 1, 2};
  do {
    // parity of the permutation
    int inv = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (perm[i] > perm[j]) ++inv;
    l3.at(u).at(idx[perm[0]]).at(idx[perm[1]]).at(idx[perm[2]]) = inv % 2 ? -v : v;
  } while (std::next_permutation(perm, perm + 3));
}

void LieNAlgebroidData::validate() const {
  if ((int)anchor.size() != r1 || (int)c.size() != r1 || (int)l1.size() != r2 || (int)l2.size() != r2 ||
      (int)l3.size() != r2)
    throw std::invalid_argument("structure function tensors have inconsistent sizes");
  for (const auto& row : anchor)
    if ((int)row.size() != n) throw std::invalid_argument("anchor row has wrong length");
  for (int k = 0; k < r1; ++k)
    for (int a = 0; a < r1; ++a)
      for (int b = 0; b < r1; ++b)
        if (c[k][a][b] + c[k][b][a] != Poly(c[k][a][b].nvars()))
          throw std::invalid_argument("bracket structure functions are not antisymmetric");
}

TablePtr algebroid_table(int n, int rank, int nparams) {
  std::vector<Generator> gens;
  for (int a = 0; a < rank; ++a) gens.push_back({"xi" + std::to_string(a), 1, 0, -1});
  return std::make_shared<const GeneratorTable>(n, gens, nparams);
}

TablePtr lna_table(int n, int r1, int r2, int nparams) {
  std::vector<Generator> gens;
  for (int a = 0; a < r1; ++a) gens.push_back({"xi" + std::to_string(a), 1, 0, -1});
  for (int u = 0; u < r2; ++u) gens.push_back({"eta" + std::to_string(u), 2, 1, -1});
  return std::make_shared<const GeneratorTable>(n, gens, nparams);
}

Derivation build_q(const LieAlgebroidData& d, TablePtr t) {
  d.validate();
  if (!t) t = algebroid_table(d.n, d.rank);
  if (t->base_dim() != d.n || t->size() != d.rank) throw std::invalid_argument("table does not match the data");
  Derivation Q(t, 1);
  for (int i = 0; i < d.n; ++i) {
    GElement img(t);
    for (int a = 0; a < d.rank; ++a) img -= fit(d.anchor[a][i], t) * xi(t, a);
    Q.set_base_image(i, img);
  }
  for (int k = 0; k < d.rank; ++k) {
    GElement img(t);
    for (int a = 0; a < d.rank; ++a)
      for (int b = a + 1; b < d.rank; ++b)
        if (!d.c[k][a][b].is_zero()) img += fit(d.c[k][a][b], t) * gmul(xi(t, a), xi(t, b));
    Q.set_gen_image(k, img);
  }
  return Q;
}

LieAlgebroidData recover_data(const Derivation& Q) {
  const TablePtr& t = Q.table();
  int n = t->base_dim(), r = t->size();
  for (int g = 0; g < r; ++g)
    if (t->gen(g).degree != 1) throw std::invalid_argument("recover_data expects a Lie algebroid table");
  LieAlgebroidData d = LieAlgebroidData::zero(n, r);
  for (auto& row : d.anchor)
    for (auto& e : row) e = Poly(t->nvars());
  d.c = zero3(r, r, r, t->nvars());
  std::vector<Derivation> iota;
  for (int a = 0; a < r; ++a) {
    Derivation ia(t, -1);
    ia.set_gen_image(a, GElement::scalar(t, Rational(1)));
    iota.push_back(ia);
  }
  Word empty(r, 0);
  for (int a = 0; a < r; ++a) {
    Derivation qa = commutator(Q, iota[a]);
    for (int i = 0; i < n; ++i) d.anchor[a][i] = -apply_derivation(qa, GElement::scalar(t, Poly::variable(t->nvars(), i))).coeff(empty);
  }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Derivation br = commutator(commutator(iota[b], Q), iota[a]);
      for (int k = 0; k < r; ++k) d.c[k][a][b] = br.gen_image(k).coeff(empty);
    }
  d.n = n;
  d.rank = r;
  return d;
}

Derivation build_q_n(const LieNAlgebroidData& d, TablePtr t) {
  d.validate();
  if (!t) t = lna_table(d.n, d.r1, d.r2);
  if (t->base_dim() != d.n || t->size() != d.r1 + d.r2) throw std::invalid_argument("table does not match the data");
  auto eta = [&](int u) { return GElement::generator(t, d.r1 + u); };
  Derivation Q(t, 1);
  for (int i = 0; i < d.n; ++i) {
    GElement img(t);
    for (int a = 0; a < d.r1; ++a) img -= fit(d.anchor[a][i], t) * xi(t, a);
    Q.set_base_image(i, img);
  }
  for (int k = 0; k < d.r1; ++k) {
    GElement img(t);
    for (int a = 0; a < d.r1; ++a)
      for (int b = a + 1; b < d.r1; ++b)
        if (!d.c[k][a][b].is_zero()) img += fit(d.c[k][a][b], t) * gmul(xi(t, a), xi(t, b));
    for (int u = 0; u < d.r2; ++u)
      if (!d.l1[u][k].is_zero()) img -= fit(d.l1[u][k], t) * eta(u);
    Q.set_gen_image(k, img);
  }
  for (int u = 0; u < d.r2; ++u) {
    GElement img(t);
    for (int a = 0; a < d.r1; ++a)
      for (int v = 0; v < d.r2; ++v)
        if (!d.l2[u][a][v].is_zero()) img += fit(d.l2[u][a][v], t) * gmul(xi(t, a), eta(v));
    for (int a = 0; a < d.r1; ++a)
      for (int b = a + 1; b < d.r1; ++b)
        for (int c = b + 1; c < d.r1; ++c)
          if (!d.l3[u][a][b][c].is_zero())
            img += fit(d.l3[u][a][b][c], t) * gmul(gmul(xi(t, a), xi(t, b)), xi(t, c));
    Q.set_gen_image(d.r1 + u, img);
  }
  return Q;
}

Derivation mc_defect(const Derivation& Q) {
  if (Q.degree() != 1) throw std::invalid_argument("mc_defect expects a degree 1 derivation");
  return commutator(Q, Q) * Rational(1, 2);
}

int fixed_point_order(const Derivation& Q, const RVec& p) {
  check_point(Q, p);
  int a = component_order(Q, p, kBaseSource, {1});
  int b = component_order(Q, p, 0, {2});
  return std::min({a, b + 1, kOrderCap});
}

bool has_fixed_point_type(const Derivation& Q, const RVec& p, FixedPointType o) {
  check_point(Q, p);
  if (o.k <= 0) return true;
  if (o.l < 0) return false;
  int anchor = component_order(Q, p, kBaseSource, {1, 0});
  int l1 = component_order(Q, p, 0, {0, 1});
  if (o.k == 1) return anchor >= 1 && l1 >= o.l;
  if (o.l > 2 * o.k - 2) return false;
  int br = component_order(Q, p, 0, {2, 0});
  int l3 = component_order(Q, p, 1, {3, 0});
  return anchor >= o.k && br >= o.k - 1 && l1 >= o.l && l3 >= 2 * o.k - 2 - o.l;
}

FixedPointType fixed_point_type(const Derivation& Q, const RVec& p) {
  if (Q.table()->num_classes() < 2) throw std::invalid_argument("fixed_point_type expects a graded bundle with two levels");
  for (int k = kOrderCap; k >= 2; --k)
    for (int l = 2 * k - 2; l >= 0; --l)
      if (has_fixed_point_type(Q, p, {k, l})) return {k, l};
  if (component_order(Q, p, kBaseSource, {1, 0}) >= 1) return {1, component_order(Q, p, 0, {0, 1})};
  return {0, 0};
}

bool IsotropyAlgebra::antisymmetric() const {
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (mu[k][i][j] != -mu[k][j][i]) return false;
  return true;
}

bool IsotropyAlgebra::jacobi() const {
  // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 on basis triples
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int out = 0; out < dim; ++out) {
          Rational s = 0;
          for (int m = 0; m < dim; ++m)
            s += mu[m][a][b] * mu[out][m][c] + mu[m][b][c] * mu[out][m][a] + mu[m][c][a] * mu[out][m][b];
          if (s != 0) return false;
        }
  return true;
}

bool BottRep::is_representation(const IsotropyAlgebra& g) const {
  if ((int)tau.size() != g.dim) return false;
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      QMatrix lhs(dim, dim);
      for (int k = 0; k < g.dim; ++k)
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) lhs(i, j) += g.mu[k][a][b] * tau[k](i, j);
      QMatrix ab = tau[a] * tau[b], ba = tau[b] * tau[a];
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          if (lhs(i, j) != ab(i, j) - ba(i, j)) return false;
    }
  return true;
}

IsotropyAlgebra isotropy_algebra(const Derivation& Q, const RVec& p) {
  if (fixed_point_order(Q, p) < 1) throw OrderError("not a fixed point");
  LieAlgebroidData d = recover_data(Q);
  IsotropyAlgebra g;
  g.dim = d.rank;
  g.mu.assign(d.rank, std::vector<std::vector<Rational>>(d.rank, std::vector<Rational>(d.rank)));
  for (int k = 0; k < d.rank; ++k)
    for (int a = 0; a < d.rank; ++a)
      for (int b = 0; b < d.rank; ++b) g.mu[k][a][b] = d.c[k][a][b].evaluate(p);
  return g;
}

BottRep bott_rep(const Derivation& Q, const RVec& p) {
  if (fixed_point_order(Q, p) < 1) throw OrderError("not a fixed point");
  LieAlgebroidData d = recover_data(Q);
  BottRep rep;
  rep.dim = d.n;
  for (int a = 0; a < d.rank; ++a) {
    QMatrix m(d.n, d.n);
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j) m(i, j) = -partial_derivative(d.anchor[a][i], j).evaluate(p);
    rep.tau.push_back(m);
  }
  return rep;
}

TwoTermComplex ce_complex(const IsotropyAlgebra& g, const BottRep& rep) {
  int r = g.dim, n = rep.dim;
  if ((int)rep.tau.size() != r) throw std::invalid_argument("representation does not match the algebra");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) pairs.emplace_back(a, b);
  std::vector<std::string> w0, w1, w2;
  for (int i = 0; i < n; ++i) w0.push_back("v" + std::to_string(i));
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i) w1.push_back("e^" + std::to_string(a) + " v" + std::to_string(i));
  for (auto [a, b] : pairs)
    for (int i = 0; i < n; ++i)
      w2.push_back("e^" + std::to_string(a) + "e^" + std::to_string(b) + " v" + std::to_string(i));
  QMatrix D0(r * n, n), D1((int)pairs.size() * n, r * n);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) D0(a * n + i, j) = rep.tau[a](i, j);
  // d(alpha)(e_a, e_b) = s(e_a) alpha(e_b) - s(e_b) alpha(e_a) - alpha([e_a, e_b])
  for (int q = 0; q < (int)pairs.size(); ++q) {
    auto [a, b] = pairs[q];
    for (int i = 0; i < n; ++i) {
      int row = q * n + i;
      for (int j = 0; j < n; ++j) {
        D1(row, b * n + j) += rep.tau[a](i, j);
        D1(row, a * n + j) -= rep.tau[b](i, j);
      }
      for (int c = 0; c < r; ++c) D1(row, c * n + i) -= g.mu[c][a][b];
    }
  }
  return TwoTermComplex(D0, D1, w0, w1, w2);
}

QuotientComplex la_quotient_complex(const Derivation& Q, const RVec& p, int k) {
  if (k < 1) throw OrderError("order must be at least 1");
  int have = fixed_point_order(Q, p);
  if (have < k) throw OrderError("point has fixed-point order " + std::to_string(have) + " < " + std::to_string(k));
  const TablePtr& t = Q.table();
  QuotientSpace w0(t, p, {{"base", kBaseSource, {0}, 1}});
  QuotientSpace w1(t, p, {{"anchor", kBaseSource, {1}, k}, {"bracket", 0, {2}, k - 1}});
  QuotientSpace w2(t, p, {{"base", kBaseSource, {2}, 2 * k - 1}, {"fiber", 0, {3}, 2 * k - 2}});
  return assemble_derivation_complex(w0, w1, w2, 0, [&](const Derivation& X) { return commutator(Q, X); });
}

Filtration la_filtration(const QuotientComplex& qc, int k) {
  Filtration f;
  for (int i = 0; i < qc.W0.dim(); ++i) f.level0.push_back(k - 1);
  for (const auto& b : qc.W1.basis()) f.level1.push_back(total_degree(b.beta) + (b.comp == 0 ? 0 : 1));
  for (const auto& b : qc.W2.basis())
    f.level2.push_back(total_degree(b.beta) - (b.comp == 0 ? k - 1 : k - 2));
  return f;
}

QuotientComplex lna_quotient_complex(const Derivation& Q, const RVec& p, FixedPointType o) {
  if (o.k < 1) throw OrderError("order must have k >= 1");
  if (o.k >= 2 && (o.l < 0 || o.l > 2 * o.k - 2)) throw OrderError("order (k, l) needs 0 <= l <= 2k-2");
  if (!has_fixed_point_type(Q, p, o))
    throw OrderError("point is not a fixed point of order (" + std::to_string(o.k) + "," + std::to_string(o.l) + ")");
  const TablePtr& t = Q.table();
  int k = o.k, l = o.l;
  QuotientSpace w0(t, p, {{"base", kBaseSource, {0, 0}, 1}});
  QuotientSpace w1, w2;
  if (k == 1) {
    w1 = QuotientSpace(t, p, {{"anchor", kBaseSource, {1, 0}, 1}, {"l1", 0, {0, 1}, l}});
    w2 = QuotientSpace(t, p,
                       {{"base2", kBaseSource, {2, 0}, 1}, {"base_eta", kBaseSource, {0, 1}, l + 1},
                        {"xi_eta", 0, {1, 1}, l}});
  } else {
    w1 = QuotientSpace(t, p,
                       {{"anchor", kBaseSource, {1, 0}, k},
                        {"bracket", 0, {2, 0}, k - 1},
                        {"l1", 0, {0, 1}, l},
                        {"l3", 1, {3, 0}, 2 * k - 2 - l}});
    w2 = QuotientSpace(t, p,
                       {{"base2", kBaseSource, {2, 0}, 2 * k - 1},
                        {"base_eta", kBaseSource, {0, 1}, k + l},
                        {"xi3", 0, {3, 0}, 2 * k - 2}});
  }
  return assemble_derivation_complex(w0, w1, w2, 0, [&](const Derivation& X) { return commutator(Q, X); });
}

}  // namespace bracketlab
