#include "bracketlab/gauge.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "bracketlab/sympoisson.hpp"

namespace bracketlab {

namespace {

const TablePtr& table_of(const Structure& s) {
  return std::visit([](const auto& x) -> const TablePtr& { return x.table(); }, s);
}

// Same generators and pairing with n extra parameter variables.
TablePtr with_params(const GeneratorTable& t) {
  auto out = std::make_shared<GeneratorTable>(t.base_dim(), t.gens(), t.base_dim());
  for (const auto& [uv, v] : t.pairing_entries())
    if (uv.first <= uv.second) out->set_pairing(uv.first, uv.second, v);
  out->degree_bound = t.degree_bound;
  return out;
}

// c(x) -> c(x + t) where t are the parameter variables n..2n-1.
Poly shift_by_params(const Poly& c, int n) {
  int nv = c.nvars();
  std::vector<Poly> sub(n);
  for (int i = 0; i < n; ++i) sub[i] = Poly::variable(nv, i) + Poly::variable(nv, n + i);
  Poly out(nv);
  for (const auto& [e, q] : c.terms()) {
    Poly m = Poly::constant(nv, q);
    Exponent rest = e;
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      m = m * sub[i].pow(e[i]);
      rest[i] = 0;
    }
    out += m * Poly::monomial(rest);
  }
  return out;
}

std::vector<int> identity_map(int m) {
  std::vector<int> id(m);
  for (int i = 0; i < m; ++i) id[i] = i;
  return id;
}

Structure to_param_table(const Structure& s, const TablePtr& pt) {
  auto id = identity_map(pt->size());
  if (auto* f = std::get_if<GElement>(&s)) return remap(*f, pt, id);
  const auto& Q = std::get<Derivation>(s);
  Derivation D(pt, Q.degree());
  for (int i = 0; i < pt->base_dim(); ++i) D.set_base_image(i, remap(Q.base_image(i), pt, id));
  for (int g = 0; g < pt->size(); ++g) D.set_gen_image(g, remap(Q.gen_image(g), pt, id));
  return D;
}

std::vector<Poly> project(const QuotientSpace& w, const Structure& s) {
  return std::visit([&](const auto& x) { return w.project(x); }, s);
}

RVec project_q(const QuotientSpace& w, const Structure& s) {
  return std::visit([&](const auto& x) { return w.project_q(x); }, s);
}

double norm(const Eigen::VectorXd& v) { return v.size() ? v.norm() : 0.0; }

}  // namespace

Derivation gauge_translate(const Derivation& Q, const RVec& v) {
  return Q.map_coeffs([&](const Poly& c) { return translate(c, v); });
}

GElement gauge_translate(const GElement& f, const RVec& v) {
  return f.map_coeffs([&](const Poly& c) { return translate(c, v); });
}

Structure gauge_translate(const Structure& s, const RVec& v) {
  return std::visit([&](const auto& x) -> Structure { return gauge_translate(x, v); }, s);
}

RVec ev_map(const Structure& s, const QuotientComplex& qc, const RVec& v) {
  return project_q(qc.W1, gauge_translate(s, v));
}

std::vector<Poly> ev_symbolic(const Structure& s, const QuotientComplex& qc) {
  const auto& t = *table_of(s);
  if (t.nparams() != 0) throw std::invalid_argument("structure already carries parameters");
  int n = t.base_dim();
  TablePtr pt = with_params(t);
  Structure ps = to_param_table(s, pt);
  Structure shifted = std::visit(
      [&](const auto& x) -> Structure { return x.map_coeffs([&](const Poly& c) { return shift_by_params(c, n); }); }, ps);
  QuotientSpace w1(pt, qc.W1.point(), qc.W1.components());
  return project(w1, shifted);
}

RVec r_map(const Structure& s, const QuotientComplex& qc, const RVec& v, const RVec& w) {
  Structure moved = gauge_translate(s, v);
  RVec e = project_q(qc.W1, moved);
  if (auto* f = std::get_if<GElement>(&moved)) {
    GElement sw = qc.W1.lift_function(w);
    GElement Y = *f - qc.W1.lift_function(e);
    return qc.W2.project_q(sym_bracket(Y, sw) + sym_bracket(sw, sw) * Rational(1, 2));
  }
  const auto& Q = std::get<Derivation>(moved);
  Derivation sw = qc.W1.lift_derivation(w, Q.degree());
  Derivation Y = Q - qc.W1.lift_derivation(e, Q.degree());
  return qc.W2.project_q(commutator(Y, sw) + commutator(sw, sw) * Rational(1, 2));
}

std::string status_str(SearchStatus s) {
  switch (s) {
    case SearchStatus::verified: return "verified";
    case SearchStatus::residual_nonzero: return "residual nonzero";
    case SearchStatus::max_iter: return "max iterations exceeded";
    case SearchStatus::radius_exceeded: return "search radius exceeded";
    case SearchStatus::singular: return "no equations to solve";
  }
  return "?";
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  // convergents h/k of the continued fraction of x
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    mpz_class ai(a);
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    Rational cur(h1, k1);
    cur.canonicalize();
    if (std::fabs(cur.get_d() - x) <= 1e-15 * std::max(1.0, std::fabs(x)) || frac < 1e-300) break;
    r = 1.0 / frac;
  }
  Rational out(h1, k1);
  out.canonicalize();
  return out;
}

SearchResult find_fixed_point(const Structure& s, const QuotientComplex& qc, const SearchConfig& cfg,
                              const std::vector<int>* k_labels) {
  if (cfg.tol <= 0 || cfg.radius <= 0 || cfg.max_iter <= 0) throw std::invalid_argument("invalid search configuration");
  const auto& t = *table_of(s);
  int n = t.base_dim();
  const auto& C = qc.complex;
  int d1 = (int)C.W1.size();

  // basis of ker D1 (optionally inside span K), orthonormalized
  QMatrix D1 = C.D1;
  std::vector<int> cols;
  if (k_labels) {
    cols = *k_labels;
  } else {
    cols = identity_map(d1);
  }
  QMatrix restricted(D1.rows(), (int)cols.size());
  for (int i = 0; i < D1.rows(); ++i)
    for (int j = 0; j < (int)cols.size(); ++j) restricted(i, j) = D1(i, cols[j]);
  auto kr = kernel_and_rank(restricted);
  int m = (int)kr.kernel.size();
  SearchResult res;
  res.v.assign(n, 0.0);
  if (m == 0) {
    res.status = SearchStatus::singular;
    return res;
  }
  Eigen::MatrixXd Kb = Eigen::MatrixXd::Zero(d1, m);
  for (int j = 0; j < m; ++j)
    for (int q = 0; q < (int)cols.size(); ++q) Kb(cols[q], j) = kr.kernel[j][q].get_d();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Kb);
  Eigen::MatrixXd P = qr.householderQ() * Eigen::MatrixXd::Identity(d1, m);

  std::vector<Poly> ev = ev_symbolic(s, qc);
  std::vector<std::vector<Poly>> jac(d1, std::vector<Poly>(n));
  for (int r = 0; r < d1; ++r)
    for (int i = 0; i < n; ++i) jac[r][i] = partial_derivative(ev[r], n + i);

  auto at = [&](const Eigen::VectorXd& v) {
    std::vector<double> x(2 * n, 0.0);
    for (int i = 0; i < n; ++i) x[n + i] = v[i];
    return x;
  };
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int it = 0; it < cfg.max_iter; ++it) {
    auto x = at(v);
    Eigen::VectorXd E(d1);
    Eigen::MatrixXd J(d1, n);
    for (int r = 0; r < d1; ++r) {
      E[r] = ev[r].evaluate(x);
      for (int i = 0; i < n; ++i) J(r, i) = jac[r][i].evaluate(x);
    }
    Eigen::VectorXd F = P.transpose() * E;
    res.equation_norm = norm(F);
    res.iterations = it;
    if (res.equation_norm <= cfg.tol) break;
    Eigen::MatrixXd PJ = P.transpose() * J;
    Eigen::VectorXd step = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(PJ).solve(-F);
    v += step;
    if (v.norm() > cfg.radius) {
      for (int i = 0; i < n; ++i) res.v[i] = v[i];
      res.status = SearchStatus::radius_exceeded;
      return res;
    }
    if (it == cfg.max_iter - 1) {
      auto x2 = at(v);
      Eigen::VectorXd E2(d1);
      for (int r = 0; r < d1; ++r) E2[r] = ev[r].evaluate(x2);
      res.equation_norm = norm(P.transpose() * E2);
      res.iterations = cfg.max_iter;
    }
  }
  for (int i = 0; i < n; ++i) res.v[i] = v[i];
  if (res.equation_norm > cfg.tol) {
    res.status = SearchStatus::max_iter;
    return res;
  }
  res.v_exact.resize(n);
  for (int i = 0; i < n; ++i) res.v_exact[i] = rationalize(v[i]);
  res.residual = ev_map(s, qc, res.v_exact);
  bool zero = true;
  for (const auto& q : res.residual)
    if (q != 0) zero = false;
  res.status = zero ? SearchStatus::verified : SearchStatus::residual_nonzero;
  return res;
}

}  // namespace bracketlab
