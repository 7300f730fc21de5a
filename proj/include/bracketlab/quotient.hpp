#pragma once

// Finite jet quotients of derivation spaces and function spaces.
//
// A quotient g^i / h^i is described by components. A component collects the
// derivations sending one kind of source (a base coordinate or a generator of
// a given class) to words of one generator type. Membership of h in that
// component is "coefficients lie in I_p^s", so the retained part is the
// (s-1)-jet at p. Components with s <= 0 lie entirely in h and are omitted.

#include <functional>
#include <string>
#include <vector>

#include "bracketlab/gca.hpp"
#include "bracketlab/linal.hpp"

namespace bracketlab {

constexpr int kBaseSource = -1;
constexpr int kNoSource = -2;

struct Component {
  std::string name;
  // kBaseSource, a generator class, or kNoSource for plain functions
  int source = kBaseSource;
  // per-class generator counts of the target word
  std::vector<int> type;
  int s = 0;
};

struct BasisEntry {
  int comp = 0;
  // base coordinate index, generator index, or -1 for functions
  int source = -1;
  Word word;
  Exponent beta;
  std::string label;
};

class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(TablePtr t, RVec p, std::vector<Component> comps);

  const TablePtr& table() const { return t_; }
  const RVec& point() const { return p_; }
  int dim() const { return (int)basis_.size(); }
  const std::vector<BasisEntry>& basis() const { return basis_; }
  const std::vector<Component>& components() const { return comps_; }
  std::vector<std::string> labels() const;
  int find(const std::string& label) const;

  // Monomial lift: word * (x - p)^beta placed on the source.
  Derivation lift_derivation(int idx, int degree) const;
  Derivation lift_derivation(const RVec& v, int degree) const;
  GElement lift_function(int idx) const;
  GElement lift_function(const RVec& v) const;

  // Jet coefficients of the retained components; entries are polynomials in
  // the parameter variables (constants when the table has none).
  std::vector<Poly> project(const Derivation& X) const;
  std::vector<Poly> project(const GElement& f) const;
  RVec project_q(const Derivation& X) const;
  RVec project_q(const GElement& f) const;

  // True when every component with s > 0 vanishes to order s (X lies in h).
  bool in_subalgebra(const Derivation& X) const;
  bool in_subalgebra(const GElement& f) const;

 private:
  TablePtr t_;
  RVec p_;
  std::vector<Component> comps_;
  std::vector<BasisEntry> basis_;
  std::vector<Poly> project_terms(const std::function<Poly(const BasisEntry&)>& coeff_of) const;
};

using DerivationOp = std::function<Derivation(const Derivation&)>;
using FunctionOp = std::function<GElement(const GElement&)>;

struct QuotientComplex {
  QuotientSpace W0, W1, W2;
  TwoTermComplex complex;
};

QuotientComplex assemble_derivation_complex(const QuotientSpace& w0, const QuotientSpace& w1,
                                            const QuotientSpace& w2, int degree0, const DerivationOp& d);
QuotientComplex assemble_function_complex(const QuotientSpace& w0, const QuotientSpace& w1,
                                          const QuotientSpace& w2, const FunctionOp& d);

RVec to_rational(const std::vector<Poly>& v);

}  // namespace bracketlab
