#include "charpow/intmat.hpp"

#include "charpow/errors.hpp"

#include <algorithm>
#include <utility>

namespace charpow {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::scalar(int n, Int const &c) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Mat Mat::operator*(Mat const &o) const {
  if (cols_ != o.rows_) throw internal_error("Mat::operator*: shape mismatch");
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      Int const &aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

Mat Mat::operator+(Mat const &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw internal_error("Mat::operator+: shape mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Mat Mat::operator-(Mat const &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw internal_error("Mat::operator-: shape mismatch");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::scaled(Int const &c) const {
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

Mat Mat::mod(Int const &m) const {
  if (m <= 0) throw internal_error("Mat::mod: modulus must be positive");
  Mat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) {
    Int v = a_[i] % m;
    if (v < 0) v += m;
    r.a_[i] = v;
  }
  return r;
}

Int Mat::det() const {
  if (rows_ != cols_) throw internal_error("Mat::det: not square");
  int n = rows_;
  // Fraction-free would do; rational elimination is simplest to audit.
  std::vector<Rat> w(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<size_t>(i) * n + j] = Rat(at(i, j));
  Rat d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (w[static_cast<size_t>(r) * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j)
        std::swap(w[static_cast<size_t>(piv) * n + j], w[static_cast<size_t>(c) * n + j]);
      d = -d;
    }
    Rat pv = w[static_cast<size_t>(c) * n + c];
    d *= pv;
    for (int r = c + 1; r < n; ++r) {
      Rat f = w[static_cast<size_t>(r) * n + c] / pv;
      if (f == 0) continue;
      for (int j = c; j < n; ++j)
        w[static_cast<size_t>(r) * n + j] -= f * w[static_cast<size_t>(c) * n + j];
    }
  }
  if (boost::multiprecision::denominator(d) != 1)
    throw internal_error("Mat::det: non-integral result");
  return boost::multiprecision::numerator(d);
}

std::vector<Int> Mat::col(int j) const {
  std::vector<Int> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Mat::set_col(int j, std::vector<Int> const &v) {
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

std::vector<Int> Mat::apply(std::vector<Int> const &v) const {
  if (static_cast<int>(v.size()) != cols_) throw internal_error("Mat::apply: shape mismatch");
  std::vector<Int> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

bool lex_less(Mat const &a, Mat const &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw internal_error("lex_less: shape mismatch");
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.at(i, j) != b.at(i, j)) return a.at(i, j) < b.at(i, j);
    }
  return false;
}

namespace {

// Combine columns j and k so that row i holds (gcd, 0); unimodular.
void gcd_cols(Mat &A, int i, int j, int k) {
  Int a = A.at(i, j), b = A.at(i, k);
  if (b == 0) return;
  if (a == 0) {
    // swap columns
    for (int r = 0; r < A.rows(); ++r) std::swap(A.at(r, j), A.at(r, k));
    return;
  }
  Int g, x, y;
  // extended gcd
  {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      Int q = old_r / r;
      Int tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    g = old_r;
    x = old_s;
    y = old_t;
    if (g < 0) {
      g = -g;
      x = -x;
      y = -y;
    }
  }
  Int u = a / g, v = b / g;
  // [x  -v ; y  u] has det x*u + v*y = (x*a + y*b)/g = 1
  for (int r = 0; r < A.rows(); ++r) {
    Int cj = A.at(r, j), ck = A.at(r, k);
    A.at(r, j) = x * cj + y * ck;
    A.at(r, k) = -v * cj + u * ck;
  }
}

Int floor_div(Int const &a, Int const &b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Mat hnf(Mat const &A) {
  int n = A.rows(), m = A.cols();
  if (m < n) throw internal_error("hnf: fewer columns than rows");
  Mat W = A;
  for (int i = 0; i < n; ++i) {
    // clear row i to the right of column i
    for (int k = i + 1; k < m; ++k) gcd_cols(W, i, i, k);
    if (W.at(i, i) == 0) throw internal_error("hnf: input not of full row rank");
    if (W.at(i, i) < 0)
      for (int r = 0; r < n; ++r) W.at(r, i) = -W.at(r, i);
  }
  Mat B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B.at(i, j) = W.at(i, j);
  // reduce entries left of each diagonal pivot
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      Int q = floor_div(B.at(i, j), B.at(i, i));
      if (q == 0) continue;
      for (int r = i; r < n; ++r) B.at(r, j) -= q * B.at(r, i);
    }
  return B;
}

ScaledMat solve_scaled(Mat const &B, Mat const &C) {
  if (B.rows() != B.cols() || C.rows() != B.rows())
    throw internal_error("solve_scaled: shape mismatch");
  int n = B.rows(), m = C.cols();
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n + m));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = Rat(B.at(i, j));
    for (int j = 0; j < m; ++j) w[i][n + j] = Rat(C.at(i, j));
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (w[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw internal_error("solve_scaled: singular matrix");
    std::swap(w[piv], w[c]);
    Rat pv = w[c][c];
    for (int j = c; j < n + m; ++j) w[c][j] /= pv;
    for (int r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      Rat f = w[r][c];
      for (int j = c; j < n + m; ++j) w[r][j] -= f * w[c][j];
    }
  }
  Int den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      Int d = boost::multiprecision::denominator(w[i][n + j]);
      den = boost::multiprecision::lcm(den, d);
    }
  Mat P(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      Rat v = w[i][n + j] * den;
      P.at(i, j) = boost::multiprecision::numerator(v);
    }
  return {P, den};
}

std::optional<Mat> solve_integral(Mat const &B, Mat const &C) {
  ScaledMat s = solve_scaled(B, C);
  if (s.den != 1) return std::nullopt;
  return s.num;
}

Mat kernel_mod(Mat const &P, Int const &d) {
  if (P.rows() != P.cols()) throw internal_error("kernel_mod: not square");
  int n = P.rows();
  // Diagonalize with unimodular row/column operations, tracking the column
  // transform V: then P c == 0 mod d  <=>  c = V c' with diag entries
  // constraining c' coordinate-wise.
  Mat D = P, V = Mat::identity(n);
  auto swap_rows = [&](int i, int j) {
    for (int c = 0; c < n; ++c) std::swap(D.at(i, c), D.at(j, c));
  };
  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < n; ++r) std::swap(D.at(r, i), D.at(r, j));
    for (int r = 0; r < n; ++r) std::swap(V.at(r, i), V.at(r, j));
  };
  auto addmul_row = [&](int dst, int src, Int const &f) {
    for (int c = 0; c < n; ++c) D.at(dst, c) += f * D.at(src, c);
  };
  auto addmul_col = [&](int dst, int src, Int const &f) {
    for (int r = 0; r < n; ++r) D.at(r, dst) += f * D.at(r, src);
    for (int r = 0; r < n; ++r) V.at(r, dst) += f * V.at(r, src);
  };
  for (int t = 0; t < n; ++t) {
    // move a nonzero pivot of minimal magnitude to (t,t)
    for (;;) {
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          Int v = boost::multiprecision::abs(D.at(i, j));
          if (v != 0 && (pi < 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) throw internal_error("kernel_mod: singular matrix");
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        Int q = floor_div(D.at(i, t), D.at(t, t));
        if (q != 0) addmul_row(i, t, -q);
        if (D.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        Int q = floor_div(D.at(t, j), D.at(t, t));
        if (q != 0) addmul_col(j, t, -q);
        if (D.at(t, j) != 0) clean = false;
      }
      if (clean) break;
    }
  }
  // Solution lattice: columns V * diag(d / gcd(D_tt, d)).
  Mat L(n, n);
  for (int j = 0; j < n; ++j) {
    Int g = boost::multiprecision::gcd(boost::multiprecision::abs(D.at(j, j)), d);
    Int mj = d / g;
    for (int i = 0; i < n; ++i) L.at(i, j) = V.at(i, j) * mj;
  }
  return hnf(L);
}

long long vp(Int const &x, long long p) {
  if (x == 0) throw internal_error("vp of zero");
  Int v = boost::multiprecision::abs(x);
  long long k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

Int pow_int(long long base, long long exp) {
  Int r = 1;
  for (long long i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace charpow
