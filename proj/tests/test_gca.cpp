#include "doctest.h"

#include "bracketlab/gca.hpp"
#include "support/gen.hpp"

using namespace bracketlab;

namespace {
TablePtr odd_table(int n, int m) {
  std::vector<Generator> g;
  for (int i = 0; i < m; ++i) g.push_back({"xi" + std::to_string(i), 1, 0, -1});
  return std::make_shared<GeneratorTable>(n, g);
}
GElement gen(const TablePtr& t, int i) { return GElement::generator(t, i); }
GElement one(const TablePtr& t, const Rational& c = 1) { return GElement::scalar(t, c); }
GElement poly(const TablePtr& t, const std::string& s) { return GElement::scalar(t, parse_poly(s, t->nvars())); }
}  // namespace

TEST_CASE("normalize_word examples") {
  auto t = std::make_shared<GeneratorTable>(
      1, std::vector<Generator>{{"xi0", 1, 0, -1}, {"xi1", 1, 0, -1}, {"p0", 2, 1, 0}});
  auto [s1, w1] = normalize_word(*t, {1, 0});
  CHECK(s1 == -1);
  CHECK(w1 == Word{1, 1, 0});
  CHECK(normalize_word(*t, {0, 0}).first == 0);
  auto [s3, w3] = normalize_word(*t, {2, 0});
  CHECK(s3 == 1);
  CHECK(w3 == Word{1, 0, 1});
  CHECK_THROWS(normalize_word(*t, {7}));
}

TEST_CASE("gmul examples") {
  auto t = odd_table(1, 2);
  CHECK(gmul(gen(t, 0), gen(t, 1)) == GElement::term(t, {1, 1}, Poly::constant(1, 1)));
  CHECK(gmul(gen(t, 1), gen(t, 0)) == -GElement::term(t, {1, 1}, Poly::constant(1, 1)));
  CHECK(gmul(gmul(poly(t, "x0"), gen(t, 0)), gen(t, 0)).is_zero());
  CHECK(gmul(gen(t, 0) + one(t), gen(t, 0) - one(t)) == one(t, -1));
}

TEST_CASE("degree bound guards blowup") {
  auto t = std::make_shared<GeneratorTable>(0, std::vector<Generator>{{"p", 2, 0, -1}});
  GElement p = gen(t, 0);
  GElement acc = p;
  CHECK_NOTHROW(acc = gmul(acc, p));
  CHECK_NOTHROW(acc = gmul(acc, p));
  CHECK_THROWS(gmul(acc, p));
}

TEST_CASE("apply_derivation examples") {
  auto t = odd_table(1, 2);
  Derivation X(t, 1);
  X.set_base_image(0, gen(t, 0));
  CHECK(apply_derivation(X, poly(t, "x0^2")) == gmul(poly(t, "2x0"), gen(t, 0)));
  CHECK(apply_derivation(X, one(t, 5)).is_zero());
  Derivation Y(t, -1);
  Y.set_gen_image(0, poly(t, "x0"));
  CHECK(apply_derivation(Y, gmul(gen(t, 0), gen(t, 1))) == gmul(poly(t, "x0"), gen(t, 1)));
  // the sign appears when the contracted generator sits second
  Derivation Z(t, -1);
  Z.set_gen_image(1, one(t));
  CHECK(apply_derivation(Z, gmul(gen(t, 0), gen(t, 1))) == -gen(t, 0));
}

TEST_CASE("commutator examples") {
  auto t = odd_table(1, 1);
  Derivation X(t, 1);
  X.set_base_image(0, gen(t, 0));
  Derivation Y(t, -1);
  Y.set_gen_image(0, one(t));
  Derivation dx(t, 0);
  dx.set_base_image(0, one(t));
  CHECK(commutator(X, Y) == dx);
  Derivation E(t, 0);
  E.set_base_image(0, poly(t, "x0^2"));
  E.set_gen_image(0, gmul(poly(t, "x0"), gen(t, 0)));
  CHECK(commutator(E, E).is_zero());
}

TEST_CASE("bigrade splits by arity") {
  auto t = std::make_shared<GeneratorTable>(
      1, std::vector<Generator>{{"xi0", 1, 0, -1}, {"eta0", 2, 1, -1}});
  Derivation Q(t, 1);
  Q.set_base_image(0, gmul(poly(t, "x0"), gen(t, 0)));
  Q.set_gen_image(0, gen(t, 1));
  Q.set_gen_image(1, gmul(gen(t, 0), gen(t, 1)));
  auto parts = bigrade(Q);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == 0);
  CHECK(parts[1].first == 1);
  CHECK(parts[0].second + parts[1].second == Q);
  CHECK(bigrade(Derivation(t, 1)).empty());
}

TEST_CASE("graded commutativity and associativity of gmul") {
  auto t = std::make_shared<GeneratorTable>(
      2, std::vector<Generator>{{"a", 1, 0, -1}, {"b", 1, 0, -1}, {"c", 1, 0, -1}, {"e", 2, 1, -1}});
  testgen::Rng r(21);
  for (int it = 0; it < 200; ++it) {
    int da = r.uniform(0, 2), db = r.uniform(0, 2), dc = r.uniform(0, 2);
    auto a = testgen::random_element(r, t, da, 3, 1), b = testgen::random_element(r, t, db, 3, 1),
         c = testgen::random_element(r, t, dc, 3, 1);
    GElement ba = gmul(b, a);
    if ((da * db) % 2) ba = -ba;
    CHECK(gmul(a, b) == ba);
    CHECK(gmul(gmul(a, b), c) == gmul(a, gmul(b, c)));
  }
}

TEST_CASE("graded Jacobi and the commutator action on random triples") {
  auto t = std::make_shared<GeneratorTable>(
      2, std::vector<Generator>{{"a", 1, 0, -1}, {"b", 1, 0, -1}, {"e", 2, 1, -1}});
  t = std::make_shared<GeneratorTable>(*t);
  testgen::Rng r(22);
  int checked = 0;
  for (int it = 0; it < 220; ++it) {
    int dx = r.uniform(-1, 1), dy = r.uniform(-1, 1), dz = r.uniform(-1, 1);
    auto X = testgen::random_derivation(r, t, dx), Y = testgen::random_derivation(r, t, dy),
         Z = testgen::random_derivation(r, t, dz);
    Derivation lhs = commutator(commutator(X, Y), Z);
    Derivation rhs = commutator(X, commutator(Y, Z));
    Derivation third = commutator(Y, commutator(X, Z));
    if ((dx * dy) % 2) rhs += third;
    else rhs -= third;
    CHECK(lhs == rhs);
    auto f = testgen::random_element(r, t, r.uniform(0, 2), 3, 2);
    GElement a = apply_derivation(X, apply_derivation(Y, f));
    GElement b = apply_derivation(Y, apply_derivation(X, f));
    GElement expect = (dx * dy) % 2 ? a + b : a - b;
    CHECK(apply_derivation(commutator(X, Y), f) == expect);
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("derivations satisfy the Leibniz rule they were extended by") {
  auto t = odd_table(2, 3);
  testgen::Rng r(23);
  for (int it = 0; it < 100; ++it) {
    int d = r.uniform(-1, 1);
    auto X = testgen::random_derivation(r, t, d);
    int da = r.uniform(0, 2);
    auto a = testgen::random_element(r, t, da, 2), b = testgen::random_element(r, t, r.uniform(0, 2), 2);
    GElement second = gmul(a, apply_derivation(X, b));
    if ((d * da) % 2) second = -second;
    CHECK(apply_derivation(X, gmul(a, b)) == gmul(apply_derivation(X, a), b) + second);
  }
}
