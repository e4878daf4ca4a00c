#include "doctest.h"

#include "charpow/intmat.hpp"

#include <algorithm>
#include <random>

using namespace charpow;

namespace {

Mat mat2(long long a, long long b, long long c, long long d) {
  Mat m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

// Unimodular column operations only: the spanned lattice is unchanged.
Mat shuffle_columns(Mat const &A, std::mt19937_64 &rng) {
  Mat B = A;
  for (int step = 0; step < 8; ++step) {
    int i = static_cast<int>(rng() % B.cols());
    int j = static_cast<int>(rng() % B.cols());
    long long c = static_cast<long long>(rng() % 7) - 3;
    if (i == j) continue;
    auto ci = B.col(i);
    auto cj = B.col(j);
    for (int r = 0; r < B.rows(); ++r) ci[static_cast<size_t>(r)] += cj[static_cast<size_t>(r)] * c;
    B.set_col(i, ci);
  }
  return B;
}

bool is_col_hnf(Mat const &L) {
  for (int i = 0; i < L.rows(); ++i) {
    if (L.at(i, i) <= 0) return false;
    for (int j = i + 1; j < L.cols(); ++j)
      if (L.at(i, j) != 0) return false;
    for (int j = 0; j < i; ++j)
      if (L.at(i, j) < 0 || L.at(i, j) >= L.at(i, i)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("matrix arithmetic basics") {
  Mat I = Mat::identity(2);
  Mat A = mat2(0, 2, 1, 0);
  CHECK(A * I == A);
  CHECK(I * A == A);
  CHECK(A + (A - A) == A);
  CHECK(A.transpose() == mat2(0, 1, 2, 0));
  CHECK(A.scaled(3) == mat2(0, 6, 3, 0));
  CHECK(Mat::scalar(2, 5) == mat2(5, 0, 0, 5));
  CHECK(mat2(-1, 5, 7, -3).mod(4) == mat2(3, 1, 3, 1));

  std::vector<Int> v{1, 2};
  auto w = A.apply(v);
  CHECK(w == std::vector<Int>{4, 1});
}

TEST_CASE("determinants") {
  CHECK(Mat::identity(3).det() == 1);
  CHECK(mat2(0, 2, 1, 0).det() == -2);
  CHECK(mat2(-1, 1, 1, 1).det() == -2);
  CHECK(mat2(1, 2, 2, 4).det() == 0);
  Mat m(3, 3);
  long long vals[3][3] = {{2, 1, 0}, {0, 3, 1}, {1, 0, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = vals[i][j];
  CHECK(m.det() == 25);
}

TEST_CASE("row-major lexicographic order") {
  CHECK(lex_less(mat2(1, 0, 0, 1), mat2(1, 0, 0, 2)));
  CHECK(lex_less(mat2(0, 9, 9, 9), mat2(1, 0, 0, 0)));
  CHECK(!lex_less(mat2(1, 1, 1, 1), mat2(1, 1, 1, 1)));
}

TEST_CASE("hnf canonical form") {
  CHECK(hnf(Mat::identity(2)) == Mat::identity(2));
  CHECK(hnf(mat2(2, 0, 0, 4)) == mat2(2, 0, 0, 4));

  // columns (4,0),(2,2) span the same lattice as (2,2),(0,4); reduced form
  CHECK(hnf(mat2(4, 2, 0, 2)) == mat2(2, 0, 2, 4));

  // column order and sign never matter
  CHECK(hnf(mat2(2, 4, 2, 0)) == mat2(2, 0, 2, 4));
  CHECK(hnf(mat2(-2, 4, -2, 0)) == mat2(2, 0, 2, 4));

  // wide input: extra generators of the same lattice collapse
  Mat wide(2, 3);
  wide.at(0, 0) = 2;
  wide.at(1, 0) = 2;
  wide.at(0, 1) = 0;
  wide.at(1, 1) = 4;
  wide.at(0, 2) = 2;
  wide.at(1, 2) = 6;
  CHECK(hnf(wide) == mat2(2, 0, 2, 4));
}

TEST_CASE("hnf is a lattice invariant") {
  std::mt19937_64 rng(20260819);
  for (int trial = 0; trial < 50; ++trial) {
    Mat A(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A.at(i, j) = static_cast<long long>(rng() % 9) - 4;
    } while (A.det() == 0);
    Mat H = hnf(A);
    CHECK(is_col_hnf(H));
    CHECK(H.det() == abs(A.det()));
    CHECK(hnf(shuffle_columns(A, rng)) == H);
  }
}

TEST_CASE("integral and scaled solving") {
  Mat B = mat2(2, 0, 0, 4);
  auto X = solve_integral(B, mat2(2, 0, 0, 8));
  REQUIRE(X.has_value());
  CHECK(*X == mat2(1, 0, 0, 2));
  CHECK(!solve_integral(B, Mat::identity(2)).has_value());

  ScaledMat S = solve_scaled(Mat::scalar(2, 2), Mat::identity(2));
  CHECK(S.den == 2);
  CHECK(S.num == Mat::identity(2));

  // minimality of the denominator: already-integral systems get den = 1
  ScaledMat T = solve_scaled(B, mat2(2, 0, 0, 8));
  CHECK(T.den == 1);
  CHECK(T.num == mat2(1, 0, 0, 2));

  // solve round-trips: B * (num/den) == C exactly
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Mat M(2, 2), C(2, 2);
    do {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          M.at(i, j) = static_cast<long long>(rng() % 9) - 4;
          C.at(i, j) = static_cast<long long>(rng() % 9) - 4;
        }
    } while (M.det() == 0);
    ScaledMat R = solve_scaled(M, C);
    CHECK(M * R.num == C.scaled(R.den));
    auto Xi = solve_integral(M, C);
    if (R.den == 1) {
      REQUIRE(Xi.has_value());
      CHECK(*Xi == R.num);
    } else {
      CHECK(!Xi.has_value());
    }
  }
}

TEST_CASE("kernel_mod lattices") {
  CHECK(kernel_mod(Mat::identity(2), 4) == mat2(4, 0, 0, 4));
  CHECK(kernel_mod(mat2(1, 0, 0, 2), 4) == mat2(4, 0, 0, 2));
  CHECK(kernel_mod(mat2(0, 2, 1, 0), 2) == mat2(2, 0, 0, 1));

  // membership: every basis column really solves P c == 0 mod d, and the
  // lattice has the right index d^n / |coker| -- checked by brute force
  Mat P = mat2(2, 1, 0, 3);
  Int d = 6;
  Mat K = kernel_mod(P, d);
  for (int j = 0; j < 2; ++j) {
    auto c = K.col(j);
    auto img = P.apply(c);
    for (auto const &x : img) CHECK(x % d == 0);
  }
  long long brute = 0;
  for (long long a = 0; a < 6; ++a)
    for (long long b = 0; b < 6; ++b) {
      std::vector<Int> v{a, b};
      auto img = P.apply(v);
      if (img[0] % 6 == 0 && img[1] % 6 == 0) ++brute;
    }
  // |{c mod d : P c == 0}| * det(K) == d^n
  CHECK(Int(brute) * K.det() == 36);
}

TEST_CASE("valuation and powers") {
  CHECK(vp(8, 2) == 3);
  CHECK(vp(9, 3) == 2);
  CHECK(vp(6, 2) == 1);
  CHECK(vp(1, 5) == 0);
  CHECK(vp(-8, 2) == 3);
  CHECK(pow_int(2, 10) == 1024);
  CHECK(pow_int(3, 0) == 1);
  CHECK(pow_int(7, 5) == 16807);
  CHECK(pow_int(10, 19) == Int("10000000000000000000"));
}
