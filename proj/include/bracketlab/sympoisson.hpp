#pragma once

// Degree-2 symplectic Poisson algebras ("big bracket") and the deformation
// complexes of Lie bialgebroids, Poisson, b-Poisson, Poisson-Nijenhuis and
// Courant structures built on them.
//
// Bialgebroid table for a rank-r bundle A over R^n:
//   xi<a>  degree 1, class 0   fiber coordinates of A^vee[1] (sections of A)
//   th<a>  degree 1, class 1   conjugate to xi<a> (sections of A^vee)
//   p<i>   degree 2, class 2   conjugate to x^i
// Courant table for a pairing g of rank r:
//   th<a>  degree 1, class 0   with {th_a, th_b} = g_ab
//   p<i>   degree 2, class 1

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bracketlab/algebroid.hpp"
#include "bracketlab/gca.hpp"
#include "bracketlab/linal.hpp"
#include "bracketlab/quotient.hpp"

namespace bracketlab {

constexpr int kXiClass = 0;
constexpr int kThetaClass = 1;
constexpr int kMomentumClass = 2;

TablePtr bialgebroid_table(int n, int rank, int nparams = 0);
TablePtr courant_table(int n, const QMatrix& g, int nparams = 0);

// {f, g} = sum_i (df/dp_i)(dg/dx^i) - (df/dx^i)(dg/dp_i) + sum_uv (f d<-/du) G_uv (d->/dv g)
GElement sym_bracket(const GElement& f, const GElement& g);

// (number of th and p factors, number of xi and p factors) on a bialgebroid table; throws if inhomogeneous.
std::pair<int, int> bidegree(const GElement& f);

// sum_i delta(x^i) p_i + sum_{g in class} delta(g) conj(g), where conj(g) is the
// generator paired with g. Then {f, h} = delta(h) for h in the subalgebra of x and the class.
GElement hamiltonian(const Derivation& delta, int cls);

// Index map sending the algebroid table's xi<a> into the given class of a bialgebroid table.
std::vector<int> class_map(const GeneratorTable& big, int cls);

// Pi_{d_A}: Hamiltonian of the Chevalley-Eilenberg differential of A acting on the th side.
GElement lift_algebroid(const LieAlgebroidData& a, TablePtr big = nullptr);
// f_{d_{A^vee}}: Hamiltonian of the CE differential of A^vee acting on the xi side.
GElement lift_dual_algebroid(const LieAlgebroidData& adual, TablePtr big = nullptr);

// [f, g]_A = (-1)^{|f|-1} {{Pi, f}, g}
GElement derived_bracket(const GElement& Pi, const GElement& f, const GElement& g);
// Anchor and structure functions of A read back from Pi through the derived bracket.
LieAlgebroidData recover_from_lift(const GElement& Pi);

using Bivector = std::vector<std::vector<Poly>>;  // antisymmetric n x n (or r x r)

// sum_{a<b} pi[a][b] xi^a xi^b
GElement multivector(const Bivector& pi, TablePtr big);
// f_{[X,-]} = (-1)^{|X|-1} {Pi, X}; for X = pi this is the Hamiltonian of [pi, -].
GElement multivector_hamiltonian(const GElement& Pi, const GElement& X);

struct BialgebroidPair {
  TablePtr table;
  GElement Pi;  // bidegree (2,1)
  GElement f;   // bidegree (1,2)
};

class MCError : public std::runtime_error {
 public:
  MCError(const std::string& what, GElement defect) : std::runtime_error(what), defect(std::move(defect)) {}
  GElement defect;
};

// Exact Maurer-Cartan status of a pair; empty string when all three equations hold.
std::string pair_defect(const BialgebroidPair& d);
void require_mc(const BialgebroidPair& d);

// Standard (TM, d_dR) on R^n.
LieAlgebroidData tangent_algebroid(int n);
// b-tangent bundle of the hypersurface {x^h = 0}: frame e_h = x^h d/dx^h, e_j = d/dx^j.
LieAlgebroidData b_tangent_algebroid(int n, int h);

// Pair (A, d_A) with the algebroid structure on A^vee induced by a bivector pi in Lambda^2 A.
BialgebroidPair triangular_pair(const LieAlgebroidData& a, const Bivector& pi);

QuotientComplex bialgebroid_complex(const BialgebroidPair& d, const RVec& p, int k);
// Order-k membership of f in the fixed-point subalgebra.
bool dual_has_fixed_point(const BialgebroidPair& d, const RVec& p, int k);

// X^1/I_p -> X^2/I_p^k -> X^3/I_p^{2k-1} with differential [pi, -].
QuotientComplex poisson_complex(const Bivector& pi, const RVec& p, int k);
// Bialgebroid complex of ((TM, d_dR), (T*M, [pi,-])).
QuotientComplex poisson_bialgebroid_complex(const Bivector& pi, const RVec& p, int k);

// k = 1 bialgebroid complex of a b-Poisson bivector (frame components) at p on {x^h = 0}.
QuotientComplex b_poisson_complex(const Bivector& pi, int h, const RVec& p, int k = 1);
// W^1 indices spanning K: every e_a (x) d/dx^j except (a, j) = (h, h).
std::vector<int> b_k_subspace(const QuotientComplex& qc, int h);
int b_reduced_h1(const Bivector& pi, int h, const RVec& p);

// N(d/dx^a) = sum_c N[c][a] d/dx^c
struct PNData {
  Bivector pi;
  std::vector<std::vector<Poly>> N;
};

// Anchor N and bracket [NX,Y] + [X,NY] - N[X,Y] on TM.
LieAlgebroidData nijenhuis_algebroid(const std::vector<std::vector<Poly>>& N);

struct PNCheck {
  bool poisson = false;        // a) [pi, pi] = 0
  bool nijenhuis = false;      // b) d_N squares to zero
  bool intertwines = false;    // c) pi^# N^vee = N pi^#
  bool bracket_compat = false; // d) {Pi_{d_N}, f_{[pi,-]}} = 0
  bool ok() const { return poisson && nijenhuis && intertwines && bracket_compat; }
  std::string failures() const;
};
PNCheck pn_check(const PNData& d);

// W^0 = T_pM, W^1 = bivector jets, W^2 = trivector jets (+) the (1,1) quotient.
QuotientComplex pn_complex(const PNData& d, const RVec& p, int k);

// Courant data on a trivial bundle with constant pairing g.
// anchor[a][i]: rho(e_a) = sum_i anchor[a][i] d/dx^i;  T[a][b][c] = <[[e_a, e_b]], e_c>.
struct CourantData {
  int n = 0;
  QMatrix g;
  std::vector<std::vector<Poly>> anchor;
  std::vector<std::vector<std::vector<Poly>>> T;

  static CourantData zero(int n, const QMatrix& g);
  int rank() const { return g.rows(); }
  // Sets all six permutations with signs.
  void set_T(int a, int b, int c, const Poly& v);
};

struct CourantTheta {
  GElement theta;
  GElement defect;  // {Theta, Theta}
};

CourantTheta courant_theta(const CourantData& d, TablePtr t = nullptr);
// Anchor and T read back through rho(e_a) f = {{Theta, e_a}, f}, T_abc = {{{Theta, e_a}, e_b}, e_c}.
CourantData recover_courant(const GElement& theta, const QMatrix& g);

QuotientComplex courant_complex(const GElement& theta, const RVec& p, int k);
int courant_fixed_point_order(const GElement& theta, const RVec& p);

// Quadratic Lie algebra (mu, pairing) acting on V through tau; the Courant
// structure on the trivial bundle over V with anchor -tau(e_a) x and bracket mu.
CourantData quadratic_lie_courant(const IsotropyAlgebra& g, const QMatrix& pairing, const BottRep& tau);
QuotientComplex quad_lie_complex(const IsotropyAlgebra& g, const QMatrix& pairing, const BottRep& tau);

// Semidirect product g |x g^vee with the standard pairing; basis e_0..e_{r-1}, e^0..e^{r-1}.
std::pair<IsotropyAlgebra, QMatrix> double_with_dual(const IsotropyAlgebra& g);

}  // namespace bracketlab
