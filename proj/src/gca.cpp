#include "bracketlab/gca.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace bracketlab {

GeneratorTable::GeneratorTable(int base_dim, std::vector<Generator> gens, int nparams)
    : n_(base_dim), nparams_(nparams), gens_(std::move(gens)) {
  if (n_ < 0 || nparams_ < 0) throw std::invalid_argument("negative dimension");
  std::set<std::string> names;
  int momenta = 0;
  for (const auto& g : gens_) {
    if (g.degree < 1) throw std::invalid_argument("generator '" + g.name + "' must have degree >= 1");
    if (!names.insert(g.name).second) throw std::invalid_argument("duplicate generator '" + g.name + "'");
    if (g.cls < 0) throw std::invalid_argument("negative generator class");
    if (g.momentum_of >= 0) {
      if (g.degree != 2 || g.momentum_of >= n_) throw std::invalid_argument("bad momentum generator");
      ++momenta;
    }
  }
  if (momenta != 0 && momenta != n_) throw std::invalid_argument("momentum count must be 0 or base_dim");
}

int GeneratorTable::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[i].name == name) return i;
  throw std::out_of_range("unknown generator '" + name + "'");
}

int GeneratorTable::momentum_for(int base) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[i].momentum_of == base) return i;
  return -1;
}

bool GeneratorTable::has_momenta() const {
  for (const auto& g : gens_)
    if (g.momentum_of >= 0) return true;
  return false;
}

int GeneratorTable::num_classes() const {
  int m = 0;
  for (const auto& g : gens_) m = std::max(m, g.cls + 1);
  return m;
}

std::vector<int> GeneratorTable::gens_of_class(int cls) const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (gens_[i].cls == cls) r.push_back(i);
  return r;
}

void GeneratorTable::set_pairing(int a, int b, const Rational& v) {
  if (gens_.at(a).degree != 1 || gens_.at(b).degree != 1)
    throw std::invalid_argument("pairing is defined on degree-1 generators only");
  if (v == 0) {
    pairing_.erase({a, b});
    pairing_.erase({b, a});
  } else {
    pairing_[{a, b}] = v;
    pairing_[{b, a}] = v;
  }
}

Rational GeneratorTable::pairing(int a, int b) const {
  auto it = pairing_.find({a, b});
  return it == pairing_.end() ? Rational(0) : it->second;
}

bool GeneratorTable::operator==(const GeneratorTable& o) const {
  if (n_ != o.n_ || nparams_ != o.nparams_ || gens_.size() != o.gens_.size()) return false;
  for (size_t i = 0; i < gens_.size(); ++i) {
    const auto &a = gens_[i], &b = o.gens_[i];
    if (a.name != b.name || a.degree != b.degree || a.cls != b.cls || a.momentum_of != b.momentum_of)
      return false;
  }
  return pairing_ == o.pairing_;
}

namespace {
void require_same(const TablePtr& a, const TablePtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw std::invalid_argument("generator table mismatch");
}
}  // namespace

bool WordLess::operator()(const Word& a, const Word& b) const {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return a > b;
}

int word_degree(const GeneratorTable& t, const Word& w) {
  int d = 0;
  for (int i = 0; i < (int)w.size(); ++i) d += w[i] * t.gen(i).degree;
  return d;
}

int word_weight(const Word& w) {
  int d = 0;
  for (int x : w) d += x;
  return d;
}

std::vector<int> word_type(const GeneratorTable& t, const Word& w) {
  std::vector<int> ty(t.num_classes(), 0);
  for (int i = 0; i < (int)w.size(); ++i) ty[t.gen(i).cls] += w[i];
  return ty;
}

std::string word_str(const GeneratorTable& t, const Word& w) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < (int)w.size(); ++i) {
    if (!w[i]) continue;
    if (!first) os << '*';
    first = false;
    os << t.gen(i).name;
    if (w[i] > 1) os << '^' << w[i];
  }
  if (first) os << '1';
  return os.str();
}

namespace {
void fill_class(const GeneratorTable& t, const std::vector<int>& members, size_t pos, int remaining,
                Word& cur, std::vector<Word>& out, const std::function<void(Word&)>& next) {
  if (pos == members.size()) {
    if (remaining == 0) next(cur);
    return;
  }
  int g = members[pos];
  int cap = t.odd(g) ? 1 : remaining;
  for (int e = std::min(cap, remaining); e >= 0; --e) {
    cur[g] = e;
    fill_class(t, members, pos + 1, remaining - e, cur, out, next);
  }
  cur[g] = 0;
}
}  // namespace

std::vector<Word> words_of_type(const GeneratorTable& t, const std::vector<int>& type) {
  std::vector<Word> out;
  int nc = t.num_classes();
  std::vector<int> ty = type;
  ty.resize(std::max<int>(nc, ty.size()), 0);
  for (int c = nc; c < (int)ty.size(); ++c)
    if (ty[c] != 0) return out;
  Word cur(t.size(), 0);
  std::function<void(int, Word&)> per_class = [&](int c, Word& w) {
    if (c == nc) {
      out.push_back(w);
      return;
    }
    fill_class(t, t.gens_of_class(c), 0, ty[c], w, out, [&](Word& w2) { per_class(c + 1, w2); });
  };
  per_class(0, cur);
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

std::pair<int, Word> normalize_word(const GeneratorTable& t, const std::vector<int>& raw) {
  Word w(t.size(), 0);
  int sign = 1;
  for (size_t a = 0; a < raw.size(); ++a) {
    int g = raw[a];
    if (g < 0 || g >= t.size()) throw std::out_of_range("unknown generator index");
    if (!t.odd(g)) continue;
    for (size_t b = a + 1; b < raw.size(); ++b)
      if (t.odd(raw[b]) && raw[b] < g) sign = -sign;
  }
  for (int g : raw) {
    w[g] += 1;
    if (t.odd(g) && w[g] > 1) return {0, Word(t.size(), 0)};
  }
  return {sign, w};
}

std::pair<int, Word> word_product(const GeneratorTable& t, const Word& a, const Word& b) {
  Word w(t.size());
  int sign = 1;
  int odd_above = 0;  // odd generators of a with index > current j
  for (int i = 0; i < t.size(); ++i)
    if (t.odd(i)) odd_above += a[i];
  for (int j = 0; j < t.size(); ++j) {
    if (t.odd(j)) {
      odd_above -= a[j];
      if (a[j] && b[j]) return {0, Word()};
      if (b[j] && (odd_above & 1)) sign = -sign;
    }
    w[j] = a[j] + b[j];
  }
  return {sign, w};
}

GElement GElement::scalar(TablePtr t, const Poly& c) {
  GElement e(t);
  e.add_term(Word(t->size(), 0), c);
  return e;
}

GElement GElement::scalar(TablePtr t, const Rational& c) {
  return scalar(t, Poly::constant(t->nvars(), c));
}

GElement GElement::generator(TablePtr t, int i) {
  Word w(t->size(), 0);
  w.at(i) = 1;
  return term(t, w, Poly::constant(t->nvars(), 1));
}

GElement GElement::term(TablePtr t, const Word& w, const Poly& c) {
  GElement e(t);
  e.add_term(w, c);
  return e;
}

Poly GElement::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Poly(t_ ? t_->nvars() : 0) : it->second;
}

void GElement::add_term(const Word& w, const Poly& c) {
  if (!t_) throw std::logic_error("GElement without table");
  if ((int)w.size() != t_->size()) throw std::invalid_argument("word length mismatch");
  if (c.nvars() != t_->nvars()) throw std::invalid_argument("coefficient ring mismatch");
  for (int i = 0; i < t_->size(); ++i)
    if (w[i] < 0 || (t_->odd(i) && w[i] > 1)) throw std::invalid_argument("non-canonical word");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool GElement::homogeneous() const {
  int d = -1;
  for (const auto& [w, c] : terms_) {
    int dw = word_degree(*t_, w);
    if (d >= 0 && dw != d) return false;
    d = dw;
  }
  return true;
}

int GElement::degree(int fallback) const {
  if (terms_.empty()) return fallback;
  if (!homogeneous()) throw std::logic_error("inhomogeneous element has no degree");
  return word_degree(*t_, terms_.begin()->first);
}

GElement GElement::operator-() const {
  GElement r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

GElement& GElement::operator+=(const GElement& o) {
  if (!t_) t_ = o.t_;
  if (o.terms_.empty()) return *this;
  require_same(t_, o.t_);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

GElement& GElement::operator-=(const GElement& o) {
  if (!t_) t_ = o.t_;
  if (o.terms_.empty()) return *this;
  require_same(t_, o.t_);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

GElement& GElement::operator*=(const Poly& c) {
  TermMap out;
  for (auto& [w, v] : terms_) {
    Poly p = v * c;
    if (!p.is_zero()) out.emplace(w, std::move(p));
  }
  terms_ = std::move(out);
  return *this;
}

GElement& GElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

bool GElement::operator==(const GElement& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (t_ && o.t_) require_same(t_, o.t_);
  return terms_ == o.terms_;
}

std::string GElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool unit_word = word_weight(w) == 0;
    if (unit_word) {
      os << "(" << c.str() << ")";
    } else if (c == Poly::constant(c.nvars(), 1)) {
      os << word_str(*t_, w);
    } else {
      os << "(" << c.str() << ")*" << word_str(*t_, w);
    }
  }
  return os.str();
}

GElement gmul(const GElement& a, const GElement& b) {
  if (a.is_zero() || b.is_zero()) return GElement(a.table() ? a.table() : b.table());
  require_same(a.table(), b.table());
  const auto& t = *a.table();
  GElement r(a.table());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      auto [s, w] = word_product(t, wa, wb);
      if (s == 0) continue;
      if (word_degree(t, w) > t.degree_bound)
        throw std::runtime_error("total degree bound " + std::to_string(t.degree_bound) + " exceeded");
      Poly c = ca * cb;
      if (s < 0) c = -c;
      r.add_term(w, c);
    }
  return r;
}

GElement remap(const GElement& e, TablePtr target, const std::vector<int>& gen_map) {
  GElement r(target);
  if (e.is_zero()) return r;
  const auto& src = *e.table();
  if ((int)gen_map.size() != src.size()) throw std::invalid_argument("generator map has wrong length");
  if (target->base_dim() != src.base_dim()) throw std::invalid_argument("base dimension mismatch");
  for (const auto& [w, c] : e.terms()) {
    std::vector<int> raw;
    for (int g = 0; g < src.size(); ++g)
      for (int k = 0; k < w[g]; ++k) raw.push_back(gen_map[g]);
    auto [s, v] = normalize_word(*target, raw);
    if (s == 0) continue;
    Poly cc = c.nvars() == target->nvars() ? c : c.extend(target->nvars());
    r.add_term(v, s < 0 ? -cc : cc);
  }
  return r;
}

GElement base_derivative(const GElement& f, int i) {
  return f.map_coeffs([i](const Poly& c) { return partial_derivative(c, i); });
}

GElement generator_derivative(const GElement& f, int g, bool from_left) {
  const TablePtr& tp = f.table();
  GElement r(tp);
  if (f.is_zero()) return r;
  const auto& t = *tp;
  for (const auto& [w, c] : f.terms()) {
    if (w[g] == 0) continue;
    Word v = w;
    v[g] -= 1;
    Poly coef = c * Rational(w[g]);
    if (t.odd(g)) {
      int passed = 0;
      for (int h = 0; h < t.size(); ++h)
        if (t.odd(h) && (from_left ? h < g : h > g)) passed += w[h];
      if (passed % 2) coef = -coef;
    }
    r.add_term(v, coef);
  }
  return r;
}

Derivation::Derivation(TablePtr t, int degree) : t_(std::move(t)), deg_(degree) {
  base_.assign(t_->base_dim(), GElement(t_));
  gen_.assign(t_->size(), GElement(t_));
}

void Derivation::set_base_image(int i, GElement e) {
  if (e.is_zero()) e = GElement(t_);
  require_same(t_, e.table());
  if (!e.is_zero() && e.degree() != deg_)
    throw std::invalid_argument("base image has degree " + std::to_string(e.degree()) +
                                ", expected " + std::to_string(deg_));
  base_.at(i) = std::move(e);
}

void Derivation::set_gen_image(int g, GElement e) {
  if (e.is_zero()) e = GElement(t_);
  require_same(t_, e.table());
  int want = t_->gen(g).degree + deg_;
  if (!e.is_zero() && e.degree() != want)
    throw std::invalid_argument("image of " + t_->gen(g).name + " has degree " +
                                std::to_string(e.degree()) + ", expected " + std::to_string(want));
  gen_.at(g) = std::move(e);
}

bool Derivation::is_zero() const {
  for (const auto& e : base_)
    if (!e.is_zero()) return false;
  for (const auto& e : gen_)
    if (!e.is_zero()) return false;
  return true;
}

Derivation Derivation::operator-() const {
  Derivation r = *this;
  for (auto& e : r.base_) e = -e;
  for (auto& e : r.gen_) e = -e;
  return r;
}

Derivation& Derivation::operator+=(const Derivation& o) {
  require_same(t_, o.t_);
  if (o.deg_ != deg_ && !o.is_zero() && !is_zero()) throw std::invalid_argument("degree mismatch");
  if (is_zero()) deg_ = o.deg_;
  for (size_t i = 0; i < base_.size(); ++i) base_[i] += o.base_[i];
  for (size_t i = 0; i < gen_.size(); ++i) gen_[i] += o.gen_[i];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) { return *this += -o; }

Derivation& Derivation::operator*=(const Rational& c) {
  for (auto& e : base_) e *= c;
  for (auto& e : gen_) e *= c;
  return *this;
}

bool Derivation::operator==(const Derivation& o) const {
  require_same(t_, o.t_);
  if (is_zero() && o.is_zero()) return true;
  return deg_ == o.deg_ && base_ == o.base_ && gen_ == o.gen_;
}

std::string Derivation::str() const {
  std::ostringstream os;
  os << "deg " << deg_ << ":";
  for (int i = 0; i < (int)base_.size(); ++i)
    if (!base_[i].is_zero()) os << " x" << i << " -> " << base_[i].str() << ";";
  for (int g = 0; g < (int)gen_.size(); ++g)
    if (!gen_[g].is_zero()) os << " " << t_->gen(g).name << " -> " << gen_[g].str() << ";";
  return os.str();
}

GElement apply_derivation(const Derivation& X, const GElement& f) {
  const TablePtr& tp = X.table();
  if (f.is_zero()) return GElement(tp);
  require_same(tp, f.table());
  const auto& t = *tp;
  int n = t.base_dim();
  GElement r(tp);
  for (const auto& [w, c] : f.terms()) {
    GElement unit = GElement::term(tp, w, Poly::constant(t.nvars(), 1));
    for (int i = 0; i < n; ++i) {
      if (X.base_image(i).is_zero()) continue;
      Poly dc = partial_derivative(c, i);
      if (dc.is_zero()) continue;
      r += dc * gmul(X.base_image(i), unit);
    }
    // Leibniz over the word, one generator factor at a time
    std::vector<int> seq;
    for (int g = 0; g < t.size(); ++g)
      for (int e = 0; e < w[g]; ++e) seq.push_back(g);
    Word prefix(t.size(), 0);
    int prefix_deg = 0;
    for (size_t j = 0; j < seq.size(); ++j) {
      int g = seq[j];
      if (!X.gen_image(g).is_zero()) {
        Word suffix(t.size(), 0);
        for (size_t k = j + 1; k < seq.size(); ++k) suffix[seq[k]] += 1;
        GElement pre = GElement::term(tp, prefix, Poly::constant(t.nvars(), 1));
        GElement suf = GElement::term(tp, suffix, Poly::constant(t.nvars(), 1));
        GElement piece = gmul(gmul(pre, X.gen_image(g)), suf);
        if ((X.degree() * prefix_deg) % 2 != 0) piece = -piece;
        r += c * piece;
      }
      prefix[g] += 1;
      prefix_deg += t.gen(g).degree;
    }
  }
  return r;
}

Derivation commutator(const Derivation& X, const Derivation& Y) {
  require_same(X.table(), Y.table());
  const auto& t = *X.table();
  int d = X.degree() + Y.degree();
  bool minus = (X.degree() * Y.degree()) % 2 == 0;
  Derivation r(X.table(), d);
  auto combine = [&](const GElement& img_y, const GElement& img_x) {
    GElement a = apply_derivation(X, img_y);
    GElement b = apply_derivation(Y, img_x);
    return minus ? a - b : a + b;
  };
  for (int i = 0; i < t.base_dim(); ++i) r.set_base_image(i, combine(Y.base_image(i), X.base_image(i)));
  for (int g = 0; g < t.size(); ++g) r.set_gen_image(g, combine(Y.gen_image(g), X.gen_image(g)));
  return r;
}

std::vector<std::pair<int, Derivation>> bigrade(const Derivation& X) {
  std::map<int, Derivation> parts;
  const auto& t = *X.table();
  auto part = [&](int a) -> Derivation& {
    auto it = parts.find(a);
    if (it == parts.end()) it = parts.emplace(a, Derivation(X.table(), X.degree())).first;
    return it->second;
  };
  for (int i = 0; i < t.base_dim(); ++i)
    for (const auto& [w, c] : X.base_image(i).terms()) {
      Derivation& D = part(word_weight(w));
      GElement e = D.base_image(i);
      e.add_term(w, c);
      D.set_base_image(i, e);
    }
  for (int g = 0; g < t.size(); ++g)
    for (const auto& [w, c] : X.gen_image(g).terms()) {
      Derivation& D = part(word_weight(w) - 1);
      GElement e = D.gen_image(g);
      e.add_term(w, c);
      D.set_gen_image(g, e);
    }
  std::vector<std::pair<int, Derivation>> out;
  for (auto& [a, D] : parts)
    if (!D.is_zero()) out.emplace_back(a, std::move(D));
  return out;
}

}  // namespace bracketlab
