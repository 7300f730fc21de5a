#pragma once

// Small hand-rolled generators for property tests. Seeds are fixed so runs are reproducible.

#include <functional>
#include <random>

#include "bracketlab/gca.hpp"
#include "bracketlab/polyjet.hpp"

namespace testgen {

using namespace bracketlab;

class Rng {
 public:
  explicit Rng(unsigned seed) : eng_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
  Rational rational(int span = 3) {
    int num = uniform(-span, span);
    int den = uniform(1, 2);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  std::mt19937& engine() { return eng_; }

 private:
  std::mt19937 eng_;
};

inline Poly random_poly(Rng& r, int nvars, int max_deg, int terms, int min_deg = 0) {
  Poly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(nvars, 0);
    int d = r.uniform(min_deg, max_deg);
    for (int k = 0; k < d; ++k) e[r.uniform(0, nvars - 1)] += 1;
    p.add_term(e, r.rational());
  }
  return p;
}

inline RVec random_point(Rng& r, int n, int span = 2) {
  RVec v(n);
  for (auto& x : v) x = r.rational(span);
  return v;
}

// Random element of the given degree with at most `terms` monomials.
inline GElement random_element(Rng& r, const TablePtr& t, int degree, int terms, int poly_deg = 2) {
  GElement e(t);
  std::vector<std::vector<int>> candidates;
  // enumerate all words of that degree by brute force over small exponents
  std::vector<int> cur(t->size(), 0);
  std::function<void(int, int)> rec = [&](int g, int left) {
    if (g == t->size()) {
      if (left == 0) candidates.push_back(cur);
      return;
    }
    int deg = t->gen(g).degree;
    int cap = t->odd(g) ? 1 : left / deg;
    for (int k = 0; k <= cap && k * deg <= left; ++k) {
      cur[g] = k;
      rec(g + 1, left - k * deg);
    }
    cur[g] = 0;
  };
  rec(0, degree);
  if (candidates.empty()) return e;
  for (int k = 0; k < terms; ++k) {
    const auto& w = candidates[r.uniform(0, (int)candidates.size() - 1)];
    e.add_term(w, random_poly(r, t->nvars(), poly_deg, 2));
  }
  return e;
}

inline Derivation random_derivation(Rng& r, const TablePtr& t, int degree, int terms = 2) {
  Derivation d(t, degree);
  for (int i = 0; i < t->base_dim(); ++i)
    if (degree >= 0 && r.coin(0.7)) d.set_base_image(i, random_element(r, t, degree, terms));
  for (int g = 0; g < t->size(); ++g) {
    int want = t->gen(g).degree + degree;
    if (want >= 0 && r.coin(0.7)) d.set_gen_image(g, random_element(r, t, want, terms));
  }
  return d;
}

}  // namespace testgen
