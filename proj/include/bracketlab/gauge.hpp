#pragma once

// Gauge action by constant translations and the numerical search for moved
// fixed points. A structure is either a homological vector field (Lie
// algebroids, Lie n-algebroids) or a function on a degree-2 symplectic
// manifold (bialgebroid pairs Pi + f, Courant Theta); its complex is the
// QuotientComplex built at the reference point.

#include <string>
#include <variant>

#include "bracketlab/quotient.hpp"

namespace bracketlab {

using Structure = std::variant<Derivation, GElement>;

// Every coefficient c replaced by c(x + v).
Derivation gauge_translate(const Derivation& Q, const RVec& v);
GElement gauge_translate(const GElement& f, const RVec& v);
Structure gauge_translate(const Structure& s, const RVec& v);

// Class of the translated structure modulo h^1 in the W^1 label basis.
RVec ev_map(const Structure& s, const QuotientComplex& qc, const RVec& v);
// Same map with v symbolic: entry j is a polynomial whose variables n..2n-1 are v.
std::vector<Poly> ev_symbolic(const Structure& s, const QuotientComplex& qc);

// proj_{W^2}([Y, sigma(w)] + 1/2 [sigma(w), sigma(w)]) with Y = translate(s, v) - sigma(ev(v)).
RVec r_map(const Structure& s, const QuotientComplex& qc, const RVec& v, const RVec& w);

struct SearchConfig {
  double radius = 1.0;
  double tol = 1e-10;
  int max_iter = 50;
};

enum class SearchStatus { verified, residual_nonzero, max_iter, radius_exceeded, singular };
std::string status_str(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::max_iter;
  std::vector<double> v;    // Newton iterate
  RVec v_exact;             // rational rounding used for certification
  RVec residual;            // exact ev at v_exact
  double equation_norm = 0; // |P ev(v)| at the last iterate
  int iterations = 0;
};

// Newton iteration on P ev(v) = 0, P the orthogonal projection onto ker D1
// (intersected with span K when k_labels is given). Steps are minimum-norm
// least-squares solutions, so directions along ker D0 are not moved.
SearchResult find_fixed_point(const Structure& s, const QuotientComplex& qc, const SearchConfig& cfg,
                              const std::vector<int>* k_labels = nullptr);

// Continued-fraction rounding with denominator at most max_den.
Rational rationalize(double x, long max_den = 1000000000L);

}  // namespace bracketlab
