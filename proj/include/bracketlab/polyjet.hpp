#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bracketlab {

using Rational = mpq_class;
using RVec = std::vector<Rational>;
using Exponent = std::vector<int>;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Graded lexicographic order: total degree first, then lexicographic
// with x0 > x1 > ... (larger exponent in an earlier slot sorts later).
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int total_degree(const Exponent& e);
int total_degree(const Exponent& e, int prefix);

// All exponents of length n with total degree exactly d, in grlex order.
std::vector<Exponent> exponents_of_degree(int n, int d);
// All exponents of length n with total degree <= d, in grlex order.
std::vector<Exponent> exponents_up_to(int n, int d);

class Poly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(int nvars) : n_(nvars) {}
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i);
  static Poly monomial(const Exponent& e, const Rational& c = 1);

  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coeff(const Exponent& e) const;
  const TermMap& terms() const { return terms_; }
  // lowest total degree among the first `prefix` variables over all terms; -1 for zero
  int order(int prefix) const;
  int degree() const;

  void add_term(const Exponent& e, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int e) const;
  Rational evaluate(const RVec& at) const;
  double evaluate(const std::vector<double>& at) const;
  // Substitute values for the first len(at) variables; remaining variables are kept.
  Poly substitute_prefix(const RVec& at) const;
  // Embed into a ring with more variables (new variables appended).
  Poly extend(int nvars) const;

  std::string str() const;

 private:
  int n_ = 0;
  TermMap terms_;
};

enum class PolyOp { add, mul, scale };

// `scale` multiplies a by the constant term of b (b must be constant).
Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);

// a(x + v); v may be shorter than nvars, trailing variables are left alone.
Poly translate(const Poly& a, const RVec& v);
Poly partial_derivative(const Poly& a, int i);
// Drop every term whose degree in the first `prefix` variables exceeds k.
Poly truncate_degree(const Poly& a, int prefix, int k);

struct JetClass {
  RVec point;
  int order = 0;
  // polynomial in the shifted variables (x - p)
  Poly rep;
  bool operator==(const JetClass& o) const {
    return point == o.point && order == o.order && rep == o.rep;
  }
};

JetClass jet_project(const Poly& a, const RVec& p, int k);
// Lift a jet back to a polynomial in the original coordinates.
Poly jet_lift(const JetClass& j);
// a is in I_p^s (vanishes to order s at p); s <= 0 always holds.
bool in_ideal_power(const Poly& a, const RVec& p, int s);
// Largest s with a in I_p^s, capped at `cap`; the zero polynomial returns cap.
int vanishing_order(const Poly& a, const RVec& p, int cap);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Literal grammar: sums of terms, a term being an optional rational
// followed by factors x<i>^<e>. Parentheses and explicit '*' are accepted too.
Poly parse_poly(const std::string& text, int nvars);

}  // namespace bracketlab
