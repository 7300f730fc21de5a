#pragma once

// Lie algebroid generators for property tests: linear actions of matrix Lie
// algebras, rescaled by an invariant factor, then moved by a random
// polynomial change of frame. Every output is Maurer-Cartan by construction;
// the tests still check that exactly.

#include "bracketlab/algebroid.hpp"
#include "support/gen.hpp"

namespace testgen {

using MatrixBasis = std::vector<QMatrix>;

inline QMatrix mat_bracket(const QMatrix& a, const QMatrix& b) {
  QMatrix ab = a * b, ba = b * a;
  QMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = ab(i, j) - ba(i, j);
  return r;
}

inline QMatrix unit(int n, int i, int j, Rational v = 1) {
  QMatrix m(n, n);
  m(i, j) = v;
  return m;
}

inline QMatrix mat_sum(const QMatrix& a, const QMatrix& b, Rational s = 1) {
  QMatrix r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) += s * b(i, j);
  return r;
}

inline MatrixBasis gl_basis(int n) {
  MatrixBasis b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.push_back(unit(n, i, j));
  return b;
}

inline MatrixBasis sl2_basis() {
  return {mat_sum(unit(2, 0, 0), unit(2, 1, 1), -1), unit(2, 0, 1), unit(2, 1, 0)};
}

// A few closed subalgebras of gl_n for n <= 3.
inline MatrixBasis random_matrix_algebra(Rng& r, int n, int max_rank) {
  std::vector<MatrixBasis> pool;
  MatrixBasis diag, upper, strict, one;
  for (int i = 0; i < n; ++i) diag.push_back(unit(n, i, i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) upper.push_back(unit(n, i, j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) strict.push_back(unit(n, i, j));
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = r.rational(2);
  one.push_back(m);
  pool = {diag, upper, strict, one};
  if (n == 2) {
    pool.push_back(gl_basis(2));
    pool.push_back(sl2_basis());
    pool.push_back({mat_sum(unit(2, 0, 1), unit(2, 1, 0), -1)});
  }
  if (n == 3) {
    pool.push_back({mat_sum(unit(3, 0, 1), unit(3, 1, 0), -1), mat_sum(unit(3, 0, 2), unit(3, 2, 0), -1),
                    mat_sum(unit(3, 1, 2), unit(3, 2, 1), -1)});
  }
  std::vector<MatrixBasis> ok;
  for (auto& b : pool)
    if (!b.empty() && (int)b.size() <= max_rank) ok.push_back(b);
  // conjugate by a random unipotent matrix so the action is not in normal form
  MatrixBasis pick = ok[r.uniform(0, (int)ok.size() - 1)];
  QMatrix P = QMatrix::identity(n), Pinv = QMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational v = r.rational(2);
      P = P * mat_sum(QMatrix::identity(n), unit(n, i, j, v));
      Pinv = mat_sum(QMatrix::identity(n), unit(n, i, j, -v)) * Pinv;
    }
  for (auto& a : pick) a = P * a * Pinv;
  return pick;
}

// Action algebroid rho(A) = phi (A x).d/dx on the first m coordinates, bracket
// phi times minus the matrix commutator. phi must be invariant under the action.
inline LieAlgebroidData action_algebroid(const MatrixBasis& basis, int n, const Poly& phi) {
  int m = basis[0].rows(), r = (int)basis.size();
  LieAlgebroidData d = LieAlgebroidData::zero(n, r);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < m; ++i) {
      Poly v(n);
      for (int j = 0; j < m; ++j) v += Poly::variable(n, j) * basis[a](i, j);
      d.anchor[a][i] = phi * v;
    }
  // express -[A_a, A_b] in the basis
  QMatrix flat(m * m, r);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) flat(i * m + j, a) = basis[a](i, j);
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      QMatrix br = mat_bracket(basis[a], basis[b]);
      RVec rhs(m * m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rhs[i * m + j] = -br(i, j);
      auto sol = solve(flat, rhs);
      if (!sol) throw std::logic_error("matrix basis is not closed under the commutator");
      for (int k = 0; k < r; ++k)
        if ((*sol)[k] != 0) d.set_bracket(a, b, k, phi * (*sol)[k]);
    }
  return d;
}

using PolyMatrix = std::vector<std::vector<Poly>>;

inline PolyMatrix poly_identity(int r, int nv) {
  PolyMatrix m(r, std::vector<Poly>(r, Poly(nv)));
  for (int i = 0; i < r; ++i) m[i][i] = Poly::constant(nv, 1);
  return m;
}

inline PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  int r = (int)a.size(), nv = a[0][0].nvars();
  PolyMatrix c(r, std::vector<Poly>(r, Poly(nv)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Random product of elementary polynomial matrices and a constant scaling, with its inverse.
inline std::pair<PolyMatrix, PolyMatrix> random_frame(Rng& r, int rank, int n, int poly_deg) {
  PolyMatrix G = poly_identity(rank, n), Ginv = poly_identity(rank, n);
  int steps = r.uniform(0, 3);
  for (int s = 0; s < steps && rank > 1; ++s) {
    int i = r.uniform(0, rank - 1), j = r.uniform(0, rank - 1);
    if (i == j) continue;
    Poly f = random_poly(r, n, poly_deg, 2);
    PolyMatrix E = poly_identity(rank, n), Einv = poly_identity(rank, n);
    E[i][j] = f;
    Einv[i][j] = -f;
    G = poly_mul(E, G);
    Ginv = poly_mul(Ginv, Einv);
  }
  for (int i = 0; i < rank; ++i) {
    Rational s = r.uniform(1, 3) * (r.coin() ? 1 : -1);
    for (int j = 0; j < rank; ++j) {
      G[i][j] *= s;
      Ginv[j][i] *= Rational(1) / s;
    }
  }
  return {G, Ginv};
}

inline Poly apply_field(const std::vector<Poly>& field, const Poly& f) {
  Poly out(f.nvars());
  for (int i = 0; i < (int)field.size(); ++i)
    if (!field[i].is_zero()) out += field[i] * partial_derivative(f, i);
  return out;
}

// New frame e'_a = sum_b G[a][b] e_b.
inline LieAlgebroidData frame_change(const LieAlgebroidData& d, const PolyMatrix& G, const PolyMatrix& Ginv) {
  int r = d.rank, n = d.n;
  LieAlgebroidData out = LieAlgebroidData::zero(n, r);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < r; ++b) out.anchor[a][i] += G[a][b] * d.anchor[b][i];
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      std::vector<Poly> R(r, Poly(n));  // components in the old frame
      for (int c = 0; c < r; ++c)
        for (int e = 0; e < r; ++e) {
          Poly gg = G[a][c] * G[b][e];
          if (!gg.is_zero())
            for (int m = 0; m < r; ++m) R[m] += gg * d.c[m][c][e];
          R[e] += G[a][c] * apply_field(d.anchor[c], G[b][e]);
          R[c] -= G[b][e] * apply_field(d.anchor[e], G[a][c]);
        }
      for (int q = 0; q < r; ++q) {
        Poly v(n);
        for (int m = 0; m < r; ++m) v += R[m] * Ginv[m][q];
        out.set_bracket(a, b, q, v);
      }
    }
  return out;
}

// Random Lie algebroid of rank <= max_rank over R^n with a fixed point of the
// requested order (1 or 2) at the origin.
inline LieAlgebroidData random_algebroid(Rng& r, int n, int max_rank, int order) {
  int m = order == 1 ? n : std::max(1, n - 1);
  MatrixBasis basis = random_matrix_algebra(r, m, max_rank);
  Poly phi = Poly::constant(n, 1);
  if (order == 2) {
    // invariant factor: a linear form in the coordinates the action ignores,
    // or the square of such a form when there is none left
    if (m < n) {
      phi = Poly(n);
      for (int j = m; j < n; ++j) phi += Poly::variable(n, j) * Rational(r.uniform(1, 2));
    } else {
      throw std::logic_error("order 2 needs a spare coordinate");
    }
  }
  LieAlgebroidData d = action_algebroid(basis, n, phi);
  auto [G, Ginv] = random_frame(r, d.rank, n, 2);
  return frame_change(d, G, Ginv);
}

}  // namespace testgen
