#include "bracketlab/polyjet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bracketlab {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

int total_degree(const Exponent& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

int total_degree(const Exponent& e, int prefix) {
  int s = 0;
  for (int i = 0; i < prefix && i < (int)e.size(); ++i) s += e[i];
  return s;
}

namespace {
void compositions(int n, int d, int slot, Exponent& cur, std::vector<Exponent>& out) {
  if (slot == n - 1) {
    cur[slot] = d;
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= d; ++a) {
    cur[slot] = a;
    compositions(n, d - a, slot + 1, cur, out);
  }
  cur[slot] = 0;
}
}  // namespace

std::vector<Exponent> exponents_of_degree(int n, int d) {
  std::vector<Exponent> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  Exponent cur(n, 0);
  compositions(n, d, 0, cur, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

std::vector<Exponent> exponents_up_to(int n, int d) {
  std::vector<Exponent> out;
  for (int t = 0; t <= d; ++t) {
    auto part = exponents_of_degree(n, t);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(e);
}

Poly Poly::monomial(const Exponent& e, const Rational& c) {
  Poly p((int)e.size());
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  for (const auto& [e, c] : terms_)
    if (total_degree(e) != 0) return false;
  return true;
}

Rational Poly::constant_term() const { return coeff(Exponent(n_, 0)); }

Rational Poly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::order(int prefix) const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = total_degree(e, prefix);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

int Poly::degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, total_degree(e));
  return best;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  if ((int)e.size() != n_) throw std::invalid_argument("dimension mismatch in Poly term");
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch in Poly add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.n_ != n_) throw std::invalid_argument("dimension mismatch in Poly add");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch in Poly mul");
  Poly r(a.n_);
  Exponent e(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Poly r = constant(n_, 1), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Rational Poly::evaluate(const RVec& at) const {
  if ((int)at.size() != n_) throw std::invalid_argument("dimension mismatch in evaluate");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= at[i];
    s += t;
  }
  return s;
}

double Poly::evaluate(const std::vector<double>& at) const {
  if ((int)at.size() != n_) throw std::invalid_argument("dimension mismatch in evaluate");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= at[i];
    s += t;
  }
  return s;
}

Poly Poly::substitute_prefix(const RVec& at) const {
  Poly r(n_);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    Exponent f = e;
    for (size_t i = 0; i < at.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= at[i];
      f[i] = 0;
    }
    r.add_term(f, t);
  }
  return r;
}

Poly Poly::extend(int nvars) const {
  if (nvars < n_) throw std::invalid_argument("cannot shrink a polynomial ring");
  Poly r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f.resize(nvars, 0);
    r.add_term(f, c);
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = abs(c);
    bool unit = total_degree(e) > 0 && a == 1;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool need_space = false;
    if (!unit) {
      os << a.get_str();
      need_space = true;
    }
    for (int i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      if (need_space) os << ' ';
      os << 'x' << i;
      if (e[i] > 1) os << '^' << e[i];
      need_space = true;
    }
  }
  return os.str();
}

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("dimension mismatch");
  switch (op) {
    case PolyOp::add:
      return a + b;
    case PolyOp::mul:
      return a * b;
    case PolyOp::scale:
      if (!b.is_constant()) throw std::invalid_argument("scale needs a constant");
      return a * b.constant_term();
  }
  return Poly(a.nvars());
}

namespace {
// binomial rows up to need
Rational binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}
}  // namespace

Poly translate(const Poly& a, const RVec& v) {
  int n = a.nvars();
  if ((int)v.size() > n) throw std::invalid_argument("dimension mismatch in translate");
  Poly r(n);
  for (const auto& [e, c] : a.terms()) {
    // expand prod_i (x_i + v_i)^{e_i}
    std::vector<std::pair<Exponent, Rational>> acc{{Exponent(n, 0), c}};
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      bool shift = i < (int)v.size() && v[i] != 0;
      std::vector<std::pair<Exponent, Rational>> next;
      if (!shift) {
        for (auto& [f, q] : acc) {
          f[i] = e[i];
          next.emplace_back(f, q);
        }
      } else {
        for (const auto& [f, q] : acc)
          for (int j = 0; j <= e[i]; ++j) {
            Exponent g = f;
            g[i] = j;
            Rational w = q * binom(e[i], j);
            for (int t = 0; t < e[i] - j; ++t) w *= v[i];
            next.emplace_back(std::move(g), w);
          }
      }
      acc = std::move(next);
    }
    for (const auto& [f, q] : acc) r.add_term(f, q);
  }
  return r;
}

Poly partial_derivative(const Poly& a, int i) {
  if (i < 0 || i >= a.nvars()) throw std::out_of_range("partial derivative index out of range");
  Poly r(a.nvars());
  for (const auto& [e, c] : a.terms()) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    r.add_term(f, c * e[i]);
  }
  return r;
}

Poly truncate_degree(const Poly& a, int prefix, int k) {
  Poly r(a.nvars());
  for (const auto& [e, c] : a.terms())
    if (total_degree(e, prefix) <= k) r.add_term(e, c);
  return r;
}

JetClass jet_project(const Poly& a, const RVec& p, int k) {
  if (k < 0) throw std::invalid_argument("jet order must be nonnegative");
  JetClass j;
  j.point = p;
  j.order = k;
  j.rep = truncate_degree(translate(a, p), (int)p.size(), k);
  return j;
}

Poly jet_lift(const JetClass& j) {
  RVec neg = j.point;
  for (auto& q : neg) q = -q;
  return translate(j.rep, neg);
}

bool in_ideal_power(const Poly& a, const RVec& p, int s) {
  if (s <= 0 || a.is_zero()) return true;
  Poly t = translate(a, p);
  return t.order((int)p.size()) >= s;
}

int vanishing_order(const Poly& a, const RVec& p, int cap) {
  if (a.is_zero()) return cap;
  return std::min(cap, translate(a, p).order((int)p.size()));
}

// ---------------------------------------------------------------------------
// literal parser

namespace {

class LiteralParser {
 public:
  LiteralParser(const std::string& s, int n) : s_(s), n_(n) {}

  Poly parse() {
    Poly r = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  const std::string& s_;
  int n_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("polynomial literal '" + s_ + "': " + what + " at offset " +
                     std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Poly sum() {
    Poly r(n_);
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (peek('+')) {
        ++pos_;
      } else if (peek('-')) {
        ++pos_;
        sign = -1;
      } else if (!first) {
        break;
      }
      Poly t = product();
      if (sign < 0) t = -t;
      r += t;
      first = false;
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') break;
    }
    return r;
  }

  bool factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == 'x' || c == '(' || std::isdigit((unsigned char)c) || c == '*';
  }

  Poly product() {
    Poly r = Poly::constant(n_, 1);
    bool any = false;
    while (factor_start()) {
      if (s_[pos_] == '*') {
        if (!any) fail("dangling '*'");
        ++pos_;
        if (!factor_start()) fail("dangling '*'");
      }
      r = r * power();
      any = true;
    }
    if (!any) fail("expected a term");
    return r;
  }

  Poly power() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      if (st == pos_) fail("expected exponent");
      base = base.pow(std::stoi(s_.substr(st, pos_ - st)));
    }
    return base;
  }

  Poly atom() {
    skip();
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = sum();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return r;
    }
    if (c == 'x') {
      ++pos_;
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      if (st == pos_) fail("expected variable index");
      int i = std::stoi(s_.substr(st, pos_ - st));
      if (i >= n_) fail("variable x" + std::to_string(i) + " out of range");
      return Poly::variable(n_, i);
    }
    if (std::isdigit((unsigned char)c)) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not accepted, use p/q");
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        size_t d = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (d == pos_) fail("expected denominator");
      }
      return Poly::constant(n_, parse_rational(s_.substr(st, pos_ - st)));
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

Poly parse_poly(const std::string& text, int nvars) {
  return LiteralParser(text, nvars).parse();
}

}  // namespace bracketlab
