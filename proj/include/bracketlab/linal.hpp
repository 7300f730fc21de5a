#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bracketlab/polyjet.hpp"

namespace bracketlab {

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : r_(rows), c_(cols), a_((size_t)rows * cols) {}
  QMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels);
  static QMatrix identity(int n);
  static QMatrix from_rows(const std::vector<RVec>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rational& operator()(int i, int j) { return a_[(size_t)i * c_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[(size_t)i * c_ + j]; }
  RVec column(int j) const;
  RVec row(int i) const;
  bool is_zero() const;

  const std::vector<std::string>& row_labels() const { return rl_; }
  const std::vector<std::string>& col_labels() const { return cl_; }
  void set_labels(std::vector<std::string> rows, std::vector<std::string> cols);

  QMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  QMatrix transpose() const;
  bool operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

 private:
  int r_ = 0, c_ = 0;
  std::vector<Rational> a_;
  std::vector<std::string> rl_, cl_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
RVec operator*(const QMatrix& a, const RVec& v);

struct KernelRank {
  int rank = 0;
  std::vector<RVec> kernel;
  std::vector<int> pivots;
};

// Fraction-free elimination; kernel vectors are indexed by free columns in increasing order.
KernelRank kernel_and_rank(const QMatrix& m);
int rank(const QMatrix& m);
// Columns of m stacked with extra vectors; true when v lies in the column span of m.
bool in_column_span(const QMatrix& m, const RVec& v);
// Exact solve m x = b, any particular solution.
std::optional<RVec> solve(const QMatrix& m, const RVec& b);

struct TwoTermComplex {
  QMatrix D0;  // W0 -> W1
  QMatrix D1;  // W1 -> W2
  std::vector<std::string> W0, W1, W2;

  TwoTermComplex() = default;
  TwoTermComplex(QMatrix d0, QMatrix d1, std::vector<std::string> w0, std::vector<std::string> w1,
                 std::vector<std::string> w2);
  std::vector<int> dims() const { return {(int)W0.size(), (int)W1.size(), (int)W2.size()}; }
  // Index of the first column of D0 whose image D1 does not kill, or -1.
  int d_squared_violation() const;
};

enum class Verdict { stable_criterion_met, criterion_failed };
std::string verdict_str(Verdict v);

struct LabeledVector {
  std::vector<std::pair<std::string, Rational>> entries;
  RVec dense;
};

struct CohomologyReport {
  int h0_dim = 0;
  int h1_dim = 0;
  int rank_d0 = 0;
  int rank_d1 = 0;
  std::vector<LabeledVector> h1_representatives;
  Verdict verdict = Verdict::criterion_failed;
};

class DSquaredError : public std::runtime_error {
 public:
  DSquaredError(int column, const std::string& label)
      : std::runtime_error("D1*D0 != 0 at column " + std::to_string(column) + " (" + label + ")"),
        column(column) {}
  int column;
};

CohomologyReport cohomology(const TwoTermComplex& c);

// True when v is a cocycle whose class in H1 is nonzero.
bool is_nonbounding_cocycle(const TwoTermComplex& c, const RVec& v);

// Per-term filtration levels: a label of level L lies in F^t for all t <= L.
struct Filtration {
  std::vector<int> level0, level1, level2;
};

struct GradedPiece {
  int t = 0;
  TwoTermComplex complex;
};

// Associated graded complexes gr_t = F^t / F^{t+1} for every level that occurs.
std::vector<GradedPiece> graded_pieces(const TwoTermComplex& c, const Filtration& f);

// dim(K') - rank(D0 into K') with K' = span(K labels) intersected with ker D1.
int reduced_h1(const TwoTermComplex& c, const std::vector<int>& k_labels);

LabeledVector labeled(const RVec& v, const std::vector<std::string>& labels);
std::string vec_str(const LabeledVector& v);

}  // namespace bracketlab
