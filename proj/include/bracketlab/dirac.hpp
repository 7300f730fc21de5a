#pragma once

// Dirac structures near L in the split Courant algebroid L (+) L^vee of a Lie
// bialgebroid. The pair is stored as a BialgebroidPair with A = L^vee, so
// sections of S(L^vee[-1]) are polynomials in the xi generators, d_L = {f, -}
// and [a, b]_{L^vee} is the derived bracket of Pi.

#include "bracketlab/sympoisson.hpp"

namespace bracketlab {

// Symmetric element sum_{a<b} A[a][b] xi^a xi^b; A must be antisymmetric.
GElement dirac_graph(const Bivector& A, TablePtr table);

// d_L(A) + 1/2 [A, A]_{L^vee}; zero iff the graph of A^# is Dirac.
GElement dirac_mc_defect(const BialgebroidPair& d, const GElement& A);

struct DiracComplex {
  TwoTermComplex complex;
  // Columns are the adapted basis of L^vee_p in xi coordinates: the first
  // `complement` columns span a complement of ker(rho_{L^vee})_p, the rest span the kernel.
  QMatrix basis;
  int complement = 0;
  std::vector<std::string> basis_names;
};

// S^{i+1}(L^vee_p) / S^{i+1}(ker rho_{L^vee, p}) for i = 0, 1, 2 with the induced d_L.
DiracComplex dirac_complex(const BialgebroidPair& d, const RVec& p);

}  // namespace bracketlab
