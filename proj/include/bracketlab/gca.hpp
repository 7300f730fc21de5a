#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bracketlab/polyjet.hpp"

namespace bracketlab {

struct Generator {
  std::string name;
  int degree = 1;
  // Component class used to group generators into bundle pieces (E1, E2, A, A dual, momenta, ...).
  int cls = 0;
  // For degree-2 momenta: index of the conjugate base coordinate, else -1.
  int momentum_of = -1;
};

class GeneratorTable {
 public:
  GeneratorTable(int base_dim, std::vector<Generator> gens, int nparams = 0);

  int base_dim() const { return n_; }
  int nparams() const { return nparams_; }
  // Polynomial ring size: base coordinates followed by parameters.
  int nvars() const { return n_ + nparams_; }
  int size() const { return (int)gens_.size(); }
  const Generator& gen(int i) const { return gens_.at(i); }
  const std::vector<Generator>& gens() const { return gens_; }
  int index(const std::string& name) const;
  bool odd(int i) const { return gens_[i].degree % 2 != 0; }
  int momentum_for(int base) const;
  bool has_momenta() const;
  int num_classes() const;
  std::vector<int> gens_of_class(int cls) const;

  // Symmetric bracket values {g_a, g_b} between degree-1 generators.
  void set_pairing(int a, int b, const Rational& v);
  Rational pairing(int a, int b) const;
  const std::map<std::pair<int, int>, Rational>& pairing_entries() const { return pairing_; }

  int degree_bound = 6;

  bool operator==(const GeneratorTable& o) const;

 private:
  int n_;
  int nparams_;
  std::vector<Generator> gens_;
  std::map<std::pair<int, int>, Rational> pairing_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

// Exponent per generator; odd generators have exponent 0 or 1.
using Word = std::vector<int>;

struct WordLess {
  bool operator()(const Word& a, const Word& b) const;
};

int word_degree(const GeneratorTable& t, const Word& w);
// Number of fiber generators in w (the symmetric-power weight).
int word_weight(const Word& w);
// Per-class generator counts of w.
std::vector<int> word_type(const GeneratorTable& t, const Word& w);
std::string word_str(const GeneratorTable& t, const Word& w);
// All canonical words with the given per-class counts.
std::vector<Word> words_of_type(const GeneratorTable& t, const std::vector<int>& type);

// Sort a raw generator sequence into canonical order. Returns sign 0 when an odd generator repeats.
std::pair<int, Word> normalize_word(const GeneratorTable& t, const std::vector<int>& raw);
// Sign and product word of w1*w2; sign 0 when the product vanishes.
std::pair<int, Word> word_product(const GeneratorTable& t, const Word& a, const Word& b);

class GElement {
 public:
  using TermMap = std::map<Word, Poly, WordLess>;

  GElement() = default;
  explicit GElement(TablePtr t) : t_(std::move(t)) {}
  static GElement scalar(TablePtr t, const Poly& c);
  static GElement scalar(TablePtr t, const Rational& c);
  static GElement generator(TablePtr t, int i);
  static GElement term(TablePtr t, const Word& w, const Poly& c);

  const TablePtr& table() const { return t_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coeff(const Word& w) const;
  void add_term(const Word& w, const Poly& c);
  // Degree when homogeneous; throws otherwise. Zero has degree `fallback`.
  int degree(int fallback = 0) const;
  bool homogeneous() const;

  GElement operator-() const;
  GElement& operator+=(const GElement& o);
  GElement& operator-=(const GElement& o);
  GElement& operator*=(const Poly& c);
  GElement& operator*=(const Rational& c);
  friend GElement operator+(GElement a, const GElement& b) { return a += b; }
  friend GElement operator-(GElement a, const GElement& b) { return a -= b; }
  friend GElement operator*(GElement a, const Rational& c) { return a *= c; }
  friend GElement operator*(const Rational& c, GElement a) { return a *= c; }
  friend GElement operator*(const Poly& c, GElement a) { return a *= c; }
  bool operator==(const GElement& o) const;
  bool operator!=(const GElement& o) const { return !(*this == o); }

  // Apply a map to every coefficient polynomial.
  template <class F>
  GElement map_coeffs(F&& f) const {
    GElement r(t_);
    for (const auto& [w, c] : terms_) r.add_term(w, f(c));
    return r;
  }

  std::string str() const;

 private:
  TablePtr t_;
  TermMap terms_;
};

GElement gmul(const GElement& a, const GElement& b);

// Copy into another table, sending generator g to gen_map[g] (Koszul signs
// from reordering applied); coefficients are extended to the target ring.
GElement remap(const GElement& e, TablePtr target, const std::vector<int>& gen_map);

// d/dx^i of every coefficient.
GElement base_derivative(const GElement& f, int i);
// Derivative by generator g acting from the left (d/dg f) or from the right (f d/dg).
GElement generator_derivative(const GElement& f, int g, bool from_left);

class Derivation {
 public:
  Derivation() = default;
  Derivation(TablePtr t, int degree);

  const TablePtr& table() const { return t_; }
  int degree() const { return deg_; }
  // Image of base coordinate x^i.
  const GElement& base_image(int i) const { return base_.at(i); }
  // Image of fiber generator g.
  const GElement& gen_image(int g) const { return gen_.at(g); }
  void set_base_image(int i, GElement e);
  void set_gen_image(int g, GElement e);
  bool is_zero() const;

  Derivation operator-() const;
  Derivation& operator+=(const Derivation& o);
  Derivation& operator-=(const Derivation& o);
  Derivation& operator*=(const Rational& c);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(Derivation a, const Rational& c) { return a *= c; }
  friend Derivation operator*(const Rational& c, Derivation a) { return a *= c; }
  bool operator==(const Derivation& o) const;
  bool operator!=(const Derivation& o) const { return !(*this == o); }

  template <class F>
  Derivation map_coeffs(F&& f) const {
    Derivation r(t_, deg_);
    for (int i = 0; i < (int)base_.size(); ++i) r.base_[i] = base_[i].map_coeffs(f);
    for (int g = 0; g < (int)gen_.size(); ++g) r.gen_[g] = gen_[g].map_coeffs(f);
    return r;
  }

  std::string str() const;

 private:
  TablePtr t_;
  int deg_ = 0;
  std::vector<GElement> base_;
  std::vector<GElement> gen_;
};

GElement apply_derivation(const Derivation& X, const GElement& f);
Derivation commutator(const Derivation& X, const Derivation& Y);
// Split by arity: the change in fiber weight from a generator to its image.
std::vector<std::pair<int, Derivation>> bigrade(const Derivation& X);

}  // namespace bracketlab
