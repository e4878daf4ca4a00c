#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

namespace charpow {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Small dense matrix over exact integers.  Everything in the engine is
// desk-scale (n <= 4), so no effort is spent on asymptotics; correctness and
// exactness are the only goals here.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n);
  static Mat scalar(int n, Int const &c);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int &at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  Int const &at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(Mat const &o) const = default;

  Mat operator*(Mat const &o) const;
  Mat operator+(Mat const &o) const;
  Mat operator-(Mat const &o) const;
  Mat transpose() const;
  Mat scaled(Int const &c) const;
  // Entries reduced into [0, m).
  Mat mod(Int const &m) const;

  // Exact determinant (square only), via rational elimination.
  Int det() const;

  std::vector<Int> col(int j) const;
  void set_col(int j, std::vector<Int> const &v);

  // Matrix * column vector.
  std::vector<Int> apply(std::vector<Int> const &v) const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// Row-major lexicographic order on equal-shape matrices.
bool lex_less(Mat const &a, Mat const &b);

// Column-style Hermite normal form of the lattice spanned by the columns of A
// (n x m, m >= n, full row rank required).  Result is n x n lower triangular,
// positive diagonal, entries left of the diagonal reduced mod the diagonal of
// their row.  Unique representative of the lattice.
Mat hnf(Mat const &A);

// Exact solution X of B X = C when it exists over the integers (B square,
// det != 0); nullopt when the rational solution is non-integral.
std::optional<Mat> solve_integral(Mat const &B, Mat const &C);

// Rational solution of B X = C returned as (P, d) with X = P/d, d > 0 minimal.
struct ScaledMat {
  Mat num;
  Int den;
};
ScaledMat solve_scaled(Mat const &B, Mat const &C);

// HNF basis of the lattice {c in Z^n : P c == 0 mod d} (P square, det != 0).
Mat kernel_mod(Mat const &P, Int const &d);

// p-adic valuation of x (x != 0).
long long vp(Int const &x, long long p);

Int pow_int(long long base, long long exp);

}  // namespace charpow
