#include "bracketlab/linal.hpp"

#include <algorithm>
#include <sstream>

namespace bracketlab {

QMatrix::QMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : QMatrix((int)row_labels.size(), (int)col_labels.size()) {
  rl_ = std::move(row_labels);
  cl_ = std::move(col_labels);
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<RVec>& rows) {
  int r = (int)rows.size();
  int c = r ? (int)rows[0].size() : 0;
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if ((int)rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RVec QMatrix::column(int j) const {
  RVec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

RVec QMatrix::row(int i) const {
  RVec v(c_);
  for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
  return v;
}

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

void QMatrix::set_labels(std::vector<std::string> rows, std::vector<std::string> cols) {
  if ((int)rows.size() != r_ || (int)cols.size() != c_) throw std::invalid_argument("label count mismatch");
  rl_ = std::move(rows);
  cl_ = std::move(cols);
}

QMatrix QMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  QMatrix m((int)rows.size(), (int)cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) m((int)i, (int)j) = (*this)(rows[i], cols[j]);
  if (!rl_.empty() && !cl_.empty()) {
    std::vector<std::string> r, c;
    for (int i : rows) r.push_back(rl_[i]);
    for (int j : cols) c.push_back(cl_[j]);
    m.set_labels(r, c);
  }
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  if (!rl_.empty() || !cl_.empty()) m.set_labels(cl_, rl_);
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  QMatrix m(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

RVec operator*(const QMatrix& a, const RVec& v) {
  if (a.cols() != (int)v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  RVec r(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && v[j] != 0) r[i] += a(i, j) * v[j];
  return r;
}

KernelRank kernel_and_rank(const QMatrix& m) {
  const int R = m.rows(), C = m.cols();
  // clear denominators row by row
  std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
  for (int i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < C; ++j)
      if (m(i, j) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (int j = 0; j < C; ++j) {
      Rational q = m(i, j) * l;
      a[i][j] = q.get_num();
    }
  }
  KernelRank out;
  mpz_class prev = 1;
  int row = 0;
  for (int col = 0; col < C && row < R; ++col) {
    int p = -1;
    for (int i = row; i < R; ++i)
      if (a[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    for (int i = row + 1; i < R; ++i) {
      for (int j = col + 1; j < C; ++j) {
        mpz_class t = a[row][col] * a[i][j] - a[i][col] * a[row][j];
        mpz_class q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        if (rem != 0) throw std::logic_error("Bareiss division not exact");
        a[i][j] = q;
      }
      a[i][col] = 0;
    }
    prev = a[row][col];
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  std::vector<char> is_pivot(C, 0);
  for (int c : out.pivots) is_pivot[c] = 1;
  for (int f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    RVec x(C);
    x[f] = 1;
    for (int i = out.rank - 1; i >= 0; --i) {
      int pc = out.pivots[i];
      Rational s = 0;
      for (int j = pc + 1; j < C; ++j)
        if (a[i][j] != 0 && x[j] != 0) s += Rational(a[i][j]) * x[j];
      x[pc] = -s / Rational(a[i][pc]);
    }
    out.kernel.push_back(std::move(x));
  }
  return out;
}

int rank(const QMatrix& m) { return kernel_and_rank(m).rank; }

namespace {
QMatrix append_column(const QMatrix& m, const RVec& v) {
  if ((int)v.size() != m.rows()) throw std::invalid_argument("vector length mismatch");
  QMatrix a(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    a(i, m.cols()) = v[i];
  }
  return a;
}
}  // namespace

bool in_column_span(const QMatrix& m, const RVec& v) {
  return rank(append_column(m, v)) == rank(m);
}

std::optional<RVec> solve(const QMatrix& m, const RVec& b) {
  RVec nb = b;
  for (auto& x : nb) x = -x;
  auto kr = kernel_and_rank(append_column(m, nb));
  int last = m.cols();
  for (const auto& k : kr.kernel)
    if (k[last] != 0) {
      RVec x(k.begin(), k.begin() + last);
      for (auto& y : x) y /= k[last];
      return x;
    }
  return std::nullopt;
}

TwoTermComplex::TwoTermComplex(QMatrix d0, QMatrix d1, std::vector<std::string> w0,
                               std::vector<std::string> w1, std::vector<std::string> w2)
    : D0(std::move(d0)), D1(std::move(d1)), W0(std::move(w0)), W1(std::move(w1)), W2(std::move(w2)) {
  if (D0.rows() != (int)W1.size() || D0.cols() != (int)W0.size() || D1.rows() != (int)W2.size() ||
      D1.cols() != (int)W1.size())
    throw std::invalid_argument("complex shape mismatch");
  D0.set_labels(W1, W0);
  D1.set_labels(W2, W1);
}

int TwoTermComplex::d_squared_violation() const {
  QMatrix p = D1 * D0;
  for (int j = 0; j < p.cols(); ++j)
    for (int i = 0; i < p.rows(); ++i)
      if (p(i, j) != 0) return j;
  return -1;
}

std::string verdict_str(Verdict v) {
  return v == Verdict::stable_criterion_met ? "stability criterion met" : "criterion failed";
}

LabeledVector labeled(const RVec& v, const std::vector<std::string>& labels) {
  LabeledVector out;
  out.dense = v;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.entries.emplace_back(i < labels.size() ? labels[i] : std::to_string(i), v[i]);
  return out;
}

std::string vec_str(const LabeledVector& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, q] : v.entries) {
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    first = false;
    Rational a = abs(q);
    if (a != 1) os << a.get_str() << " ";
    os << "[" << l << "]";
  }
  if (first) os << "0";
  return os.str();
}

CohomologyReport cohomology(const TwoTermComplex& c) {
  int bad = c.d_squared_violation();
  if (bad >= 0) throw DSquaredError(bad, c.W0[bad]);
  CohomologyReport rep;
  auto k0 = kernel_and_rank(c.D0);
  auto k1 = kernel_and_rank(c.D1);
  rep.rank_d0 = k0.rank;
  rep.rank_d1 = k1.rank;
  rep.h0_dim = (int)c.W0.size() - k0.rank;
  rep.h1_dim = (int)k1.kernel.size() - k0.rank;
  // complement of im D0 inside ker D1, greedy in label order
  QMatrix span = c.D0;
  int current = k0.rank;
  for (const auto& v : k1.kernel) {
    if ((int)rep.h1_representatives.size() == rep.h1_dim) break;
    QMatrix trial(span.rows(), span.cols() + 1);
    for (int i = 0; i < span.rows(); ++i) {
      for (int j = 0; j < span.cols(); ++j) trial(i, j) = span(i, j);
      trial(i, span.cols()) = v[i];
    }
    int r = rank(trial);
    if (r > current) {
      span = trial;
      current = r;
      rep.h1_representatives.push_back(labeled(v, c.W1));
    }
  }
  rep.verdict = rep.h1_dim == 0 ? Verdict::stable_criterion_met : Verdict::criterion_failed;
  return rep;
}

bool is_nonbounding_cocycle(const TwoTermComplex& c, const RVec& v) {
  if ((int)v.size() != (int)c.W1.size()) throw std::invalid_argument("cochain length mismatch");
  RVec img = c.D1 * v;
  for (const auto& x : img)
    if (x != 0) return false;
  return !in_column_span(c.D0, v);
}

std::vector<GradedPiece> graded_pieces(const TwoTermComplex& c, const Filtration& f) {
  if (f.level0.size() != c.W0.size() || f.level1.size() != c.W1.size() || f.level2.size() != c.W2.size())
    throw std::invalid_argument("filtration does not match complex dimensions");
  auto check = [](const QMatrix& d, const std::vector<int>& src, const std::vector<int>& dst, const char* name) {
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        if (d(i, j) != 0 && dst[i] < src[j])
          throw std::logic_error(std::string("differential ") + name + " does not preserve the filtration at (" +
                                 d.row_labels()[i] + ", " + d.col_labels()[j] + ")");
  };
  check(c.D0, f.level0, f.level1, "D0");
  check(c.D1, f.level1, f.level2, "D1");
  std::vector<int> all;
  for (const auto* lv : {&f.level0, &f.level1, &f.level2}) all.insert(all.end(), lv->begin(), lv->end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<GradedPiece> out;
  for (int t : all) {
    auto pick = [t](const std::vector<int>& lv) {
      std::vector<int> idx;
      for (int i = 0; i < (int)lv.size(); ++i)
        if (lv[i] == t) idx.push_back(i);
      return idx;
    };
    auto i0 = pick(f.level0), i1 = pick(f.level1), i2 = pick(f.level2);
    std::vector<std::string> w0, w1, w2;
    for (int i : i0) w0.push_back(c.W0[i]);
    for (int i : i1) w1.push_back(c.W1[i]);
    for (int i : i2) w2.push_back(c.W2[i]);
    out.push_back({t, TwoTermComplex(c.D0.submatrix(i1, i0), c.D1.submatrix(i2, i1), w0, w1, w2)});
  }
  return out;
}

int reduced_h1(const TwoTermComplex& c, const std::vector<int>& k_labels) {
  std::vector<char> in_k(c.W1.size(), 0);
  for (int i : k_labels) {
    if (i < 0 || i >= (int)c.W1.size()) throw std::out_of_range("K label out of range");
    in_k[i] = 1;
  }
  for (int i = 0; i < c.D0.rows(); ++i)
    if (!in_k[i])
      for (int j = 0; j < c.D0.cols(); ++j)
        if (c.D0(i, j) != 0)
          throw std::invalid_argument("image of D0 is not contained in span(K): component " + c.W1[i]);
  std::vector<int> rows(c.W2.size());
  for (int i = 0; i < (int)rows.size(); ++i) rows[i] = i;
  int dim_k = (int)kernel_and_rank(c.D1.submatrix(rows, k_labels)).kernel.size();
  return dim_k - rank(c.D0);
}

}  // namespace bracketlab
