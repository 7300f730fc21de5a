#pragma once

// Homological vector fields of Lie algebroids and Lie 2-algebroids, their
// fixed points, and the quotient complexes that decide stability.

#include <optional>
#include <vector>

#include "bracketlab/gca.hpp"
#include "bracketlab/linal.hpp"
#include "bracketlab/quotient.hpp"

namespace bracketlab {

// Anchor rho(e_a) = sum_i anchor[a][i] d/dx^i, bracket [e_a, e_b] = sum_k c[k][a][b] e_k.
struct LieAlgebroidData {
  int n = 0;
  int rank = 0;
  std::vector<std::vector<Poly>> anchor;
  std::vector<std::vector<std::vector<Poly>>> c;

  static LieAlgebroidData zero(int n, int rank);
  void set_bracket(int a, int b, int k, const Poly& v);  // also sets the (b, a) entry
  void validate() const;
  bool operator==(const LieAlgebroidData& o) const;
};

// Two-level bundle E1 (degree -1, rank r1) and E2 (degree -2, rank r2), stored as
// structure functions of the Chevalley-Eilenberg differential Q_CE on E[1]:
//   Q_CE(x^i)   = sum_a anchor[a][i] xi^a
//   Q_CE(xi^c)  = -1/2 sum c[c][a][b] xi^a xi^b + sum_u l1[u][c] eta^u
//   Q_CE(eta^u) = -sum l2[u][a][v] xi^a eta^v - 1/6 sum l3[u][a][b][c] xi^a xi^b xi^c
// l3 is totally antisymmetric in its last three slots.
struct LieNAlgebroidData {
  int n = 0;
  int r1 = 0, r2 = 0;
  std::vector<std::vector<Poly>> anchor;
  std::vector<std::vector<std::vector<Poly>>> c;
  std::vector<std::vector<Poly>> l1;
  std::vector<std::vector<std::vector<Poly>>> l2;
  std::vector<std::vector<std::vector<std::vector<Poly>>>> l3;

  static LieNAlgebroidData zero(int n, int r1, int r2);
  void set_bracket(int a, int b, int k, const Poly& v);
  void set_l3(int u, int a, int b, int c, const Poly& v);  // fills all permutations
  void validate() const;
};

// Fiber generators xi0.. of degree 1 (class 0).
TablePtr algebroid_table(int n, int rank, int nparams = 0);
// xi0.. of degree 1 (class 0) followed by eta0.. of degree 2 (class 1).
TablePtr lna_table(int n, int r1, int r2, int nparams = 0);

// Q(x^i) = -sum_a rho^i_a xi^a, Q(xi^k) = 1/2 sum c^k_ab xi^a xi^b.
Derivation build_q(const LieAlgebroidData& d, TablePtr t = nullptr);
// Anchor and bracket through rho(X)f = -[Q, i_X] f and [X, Y] = i^{-1} [[i_Y, Q], i_X].
LieAlgebroidData recover_data(const Derivation& Q);
// -Q_CE for the stored structure functions.
Derivation build_q_n(const LieNAlgebroidData& d, TablePtr t = nullptr);

Derivation mc_defect(const Derivation& Q);

// Orders are capped here when the relevant coefficients vanish identically.
constexpr int kOrderCap = 8;

int fixed_point_order(const Derivation& Q, const RVec& p);

struct FixedPointType {
  int k = 0;
  int l = 0;
  bool operator==(const FixedPointType& o) const { return k == o.k && l == o.l; }
};
// Lie 2-algebroid order: k maximal first, then l (l <= 2k-2 when k >= 2).
FixedPointType fixed_point_type(const Derivation& Q, const RVec& p);
// Whether Q lies in the order-(k, l) subalgebra.
bool has_fixed_point_type(const Derivation& Q, const RVec& p, FixedPointType o);

struct IsotropyAlgebra {
  int dim = 0;
  std::vector<std::vector<std::vector<Rational>>> mu;  // mu[k][i][j]

  bool antisymmetric() const;
  bool jacobi() const;
};

struct BottRep {
  int dim = 0;  // dimension of the represented space
  std::vector<QMatrix> tau;

  bool is_representation(const IsotropyAlgebra& g) const;
};

IsotropyAlgebra isotropy_algebra(const Derivation& Q, const RVec& p);
BottRep bott_rep(const Derivation& Q, const RVec& p);

// V -> g^* (x) V -> Lambda^2 g^* (x) V for a representation sigma.
TwoTermComplex ce_complex(const IsotropyAlgebra& g, const BottRep& rep);

// Order-k quotient of the Lie algebroid deformation complex at p.
QuotientComplex la_quotient_complex(const Derivation& Q, const RVec& p, int k);
// Descending filtration levels on la_quotient_complex(Q, p, k).
Filtration la_filtration(const QuotientComplex& qc, int k);

QuotientComplex lna_quotient_complex(const Derivation& Q, const RVec& p, FixedPointType order);

class OrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bracketlab
