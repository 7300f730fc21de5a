#include "bracketlab/quotient.hpp"

#include <sstream>

namespace bracketlab {

namespace {

std::string jet_label(const Exponent& beta, const RVec& p) {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < beta.size(); ++i) {
    if (!beta[i]) continue;
    os << (any ? " " : "");
    any = true;
    if (p[i] == 0)
      os << 'x' << i;
    else
      os << "(x" << i << (p[i] > 0 ? "-" : "+") << Rational(abs(p[i])).get_str() << ")";
    if (beta[i] > 1) os << '^' << beta[i];
  }
  return os.str();
}

// coefficient of (x-p)^beta in the Taylor expansion, as a polynomial in the parameters
Poly taylor_coeff(const Poly& shifted, int n, const Exponent& beta) {
  Poly r(shifted.nvars());
  for (const auto& [e, c] : shifted.terms()) {
    bool match = true;
    for (int i = 0; i < n; ++i)
      if (e[i] != beta[i]) {
        match = false;
        break;
      }
    if (!match) continue;
    Exponent f = e;
    for (int i = 0; i < n; ++i) f[i] = 0;
    r.add_term(f, c);
  }
  return r;
}

}  // namespace

QuotientSpace::QuotientSpace(TablePtr t, RVec p, std::vector<Component> comps)
    : t_(std::move(t)), p_(std::move(p)), comps_(std::move(comps)) {
  const auto& tab = *t_;
  int n = tab.base_dim();
  if ((int)p_.size() != n) throw std::invalid_argument("point dimension does not match the base");
  for (int c = 0; c < (int)comps_.size(); ++c) {
    const auto& comp = comps_[c];
    if (comp.s <= 0) continue;
    std::vector<int> sources;
    if (comp.source == kBaseSource) {
      for (int i = 0; i < n; ++i) sources.push_back(i);
    } else if (comp.source == kNoSource) {
      sources.push_back(-1);
    } else {
      sources = tab.gens_of_class(comp.source);
    }
    auto words = words_of_type(tab, comp.type);
    auto betas = exponents_up_to(n, comp.s - 1);
    for (int src : sources)
      for (const auto& w : words)
        for (const auto& b : betas) {
          BasisEntry e{c, src, w, b, ""};
          std::ostringstream os;
          os << word_str(tab, w);
          if (comp.source == kBaseSource)
            os << " d/dx" << src;
          else if (comp.source != kNoSource)
            os << " d/d" << tab.gen(src).name;
          std::string j = jet_label(b, p_);
          if (!j.empty()) os << " * " << j;
          e.label = os.str();
          basis_.push_back(std::move(e));
        }
  }
}

std::vector<std::string> QuotientSpace::labels() const {
  std::vector<std::string> v;
  for (const auto& b : basis_) v.push_back(b.label);
  return v;
}

int QuotientSpace::find(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].label == label) return i;
  return -1;
}

namespace {
Poly jet_monomial(const TablePtr& t, const Exponent& beta, const RVec& p) {
  Exponent e(t->nvars(), 0);
  for (size_t i = 0; i < beta.size(); ++i) e[i] = beta[i];
  RVec neg = p;
  for (auto& q : neg) q = -q;
  return translate(Poly::monomial(e), neg);
}
}  // namespace

Derivation QuotientSpace::lift_derivation(int idx, int degree) const {
  const auto& b = basis_.at(idx);
  const auto& comp = comps_[b.comp];
  if (comp.source == kNoSource) throw std::logic_error("function component lifted as a derivation");
  Derivation X(t_, degree);
  GElement img = GElement::term(t_, b.word, jet_monomial(t_, b.beta, p_));
  if (comp.source == kBaseSource)
    X.set_base_image(b.source, img);
  else
    X.set_gen_image(b.source, img);
  return X;
}

Derivation QuotientSpace::lift_derivation(const RVec& v, int degree) const {
  if ((int)v.size() != dim()) throw std::invalid_argument("cochain length mismatch");
  Derivation X(t_, degree);
  for (int i = 0; i < dim(); ++i)
    if (v[i] != 0) X += lift_derivation(i, degree) * v[i];
  return X;
}

GElement QuotientSpace::lift_function(int idx) const {
  const auto& b = basis_.at(idx);
  if (comps_[b.comp].source != kNoSource) throw std::logic_error("derivation component lifted as a function");
  return GElement::term(t_, b.word, jet_monomial(t_, b.beta, p_));
}

GElement QuotientSpace::lift_function(const RVec& v) const {
  if ((int)v.size() != dim()) throw std::invalid_argument("cochain length mismatch");
  GElement f(t_);
  for (int i = 0; i < dim(); ++i)
    if (v[i] != 0) f += lift_function(i) * v[i];
  return f;
}

std::vector<Poly> QuotientSpace::project_terms(const std::function<Poly(const BasisEntry&)>& coeff_of) const {
  std::vector<Poly> out;
  out.reserve(basis_.size());
  int n = t_->base_dim();
  const BasisEntry* last = nullptr;
  Poly shifted(t_->nvars());
  for (const auto& b : basis_) {
    if (!last || last->comp != b.comp || last->source != b.source || last->word != b.word) {
      shifted = translate(coeff_of(b), p_);
      last = &b;
    }
    out.push_back(taylor_coeff(shifted, n, b.beta));
  }
  return out;
}

std::vector<Poly> QuotientSpace::project(const Derivation& X) const {
  return project_terms([&](const BasisEntry& b) {
    const auto& comp = comps_[b.comp];
    if (comp.source == kNoSource) throw std::logic_error("function component projected from a derivation");
    const GElement& img = comp.source == kBaseSource ? X.base_image(b.source) : X.gen_image(b.source);
    return img.coeff(b.word);
  });
}

std::vector<Poly> QuotientSpace::project(const GElement& f) const {
  return project_terms([&](const BasisEntry& b) {
    if (comps_[b.comp].source != kNoSource) throw std::logic_error("derivation component projected from a function");
    return f.coeff(b.word);
  });
}

RVec to_rational(const std::vector<Poly>& v) {
  RVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_constant()) throw std::logic_error("projection depends on parameters");
    r[i] = v[i].constant_term();
  }
  return r;
}

RVec QuotientSpace::project_q(const Derivation& X) const { return to_rational(project(X)); }
RVec QuotientSpace::project_q(const GElement& f) const { return to_rational(project(f)); }

bool QuotientSpace::in_subalgebra(const Derivation& X) const {
  const auto& tab = *t_;
  for (const auto& comp : comps_) {
    if (comp.s <= 0) continue;
    auto words = words_of_type(tab, comp.type);
    std::vector<const GElement*> imgs;
    if (comp.source == kBaseSource)
      for (int i = 0; i < tab.base_dim(); ++i) imgs.push_back(&X.base_image(i));
    else
      for (int g : tab.gens_of_class(comp.source)) imgs.push_back(&X.gen_image(g));
    for (const auto* img : imgs)
      for (const auto& w : words)
        if (!in_ideal_power(img->coeff(w), p_, comp.s)) return false;
  }
  return true;
}

bool QuotientSpace::in_subalgebra(const GElement& f) const {
  for (const auto& comp : comps_) {
    if (comp.s <= 0) continue;
    for (const auto& w : words_of_type(*t_, comp.type))
      if (!in_ideal_power(f.coeff(w), p_, comp.s)) return false;
  }
  return true;
}

QuotientComplex assemble_derivation_complex(const QuotientSpace& w0, const QuotientSpace& w1,
                                            const QuotientSpace& w2, int degree0, const DerivationOp& d) {
  QMatrix D0(w1.dim(), w0.dim()), D1(w2.dim(), w1.dim());
  for (int j = 0; j < w0.dim(); ++j) {
    RVec col = w1.project_q(d(w0.lift_derivation(j, degree0)));
    for (int i = 0; i < w1.dim(); ++i) D0(i, j) = col[i];
  }
  for (int j = 0; j < w1.dim(); ++j) {
    RVec col = w2.project_q(d(w1.lift_derivation(j, degree0 + 1)));
    for (int i = 0; i < w2.dim(); ++i) D1(i, j) = col[i];
  }
  return {w0, w1, w2, TwoTermComplex(D0, D1, w0.labels(), w1.labels(), w2.labels())};
}

QuotientComplex assemble_function_complex(const QuotientSpace& w0, const QuotientSpace& w1,
                                          const QuotientSpace& w2, const FunctionOp& d) {
  QMatrix D0(w1.dim(), w0.dim()), D1(w2.dim(), w1.dim());
  for (int j = 0; j < w0.dim(); ++j) {
    RVec col = w1.project_q(d(w0.lift_function(j)));
    for (int i = 0; i < w1.dim(); ++i) D0(i, j) = col[i];
  }
  for (int j = 0; j < w1.dim(); ++j) {
    RVec col = w2.project_q(d(w1.lift_function(j)));
    for (int i = 0; i < w2.dim(); ++i) D1(i, j) = col[i];
  }
  return {w0, w1, w2, TwoTermComplex(D0, D1, w0.labels(), w1.labels(), w2.labels())};
}

}  // namespace bracketlab
