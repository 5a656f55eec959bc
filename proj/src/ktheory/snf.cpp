#include "sdot/ktheory/snf.hpp"

#include <numeric>
#include <utility>

#include "sdot/error.hpp"

namespace sdot::ktheory {

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::scale, "integer overflow in Smith normal form");
  return r;
}
std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::scale, "integer overflow in Smith normal form");
  return r;
}
std::int64_t abs64(std::int64_t a) {
  if (a == INT64_MIN) fail(ErrorCode::scale, "integer overflow in Smith normal form");
  return a < 0 ? -a : a;
}

// row r += k * row s
void add_row(IntMatrix& M, Eigen::Index r, Eigen::Index s, std::int64_t k) {
  for (Eigen::Index c = 0; c < M.cols(); ++c) M(r, c) = add(M(r, c), mul(k, M(s, c)));
}
void add_col(IntMatrix& M, Eigen::Index c, Eigen::Index s, std::int64_t k) {
  for (Eigen::Index r = 0; r < M.rows(); ++r) M(r, c) = add(M(r, c), mul(k, M(r, s)));
}

// Exact determinant by fraction-free elimination on a copy.
std::int64_t det(IntMatrix M) {
  const Eigen::Index n = M.rows();
  if (n == 0) return 1;
  std::int64_t sign = 1, prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && M(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      M.row(p).swap(M.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(M(i, j)) * M(k, k) - static_cast<__int128>(M(i, k)) * M(k, j);
        v /= prev;
        if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::scale, "integer overflow in determinant");
        M(i, j) = static_cast<std::int64_t>(v);
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntMatrix product(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix out(A.rows(), B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      std::int64_t s = 0;
      for (Eigen::Index k = 0; k < A.cols(); ++k) s = add(s, mul(A(i, k), B(k, j)));
      out(i, j) = s;
    }
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  SmithForm f;
  f.D = A;
  f.U = IntMatrix::Identity(m, m);
  f.V = IntMatrix::Identity(n, n);
  IntMatrix& D = f.D;
  const auto swap_rows = [&](Eigen::Index a, Eigen::Index b) {
    D.row(a).swap(D.row(b));
    f.U.row(a).swap(f.U.row(b));
  };
  const auto swap_cols = [&](Eigen::Index a, Eigen::Index b) {
    D.col(a).swap(D.col(b));
    f.V.col(a).swap(f.V.col(b));
  };
  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    // pivot: smallest nonzero absolute value in the remaining block
    Eigen::Index pr = -1, pc = -1;
    for (Eigen::Index i = t; i < m; ++i)
      for (Eigen::Index j = t; j < n; ++j)
        if (D(i, j) != 0 && (pr < 0 || abs64(D(i, j)) < abs64(D(pr, pc)))) pr = i, pc = j;
    if (pr < 0) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const std::int64_t q = D(i, t) / D(t, t);
        add_row(D, i, t, -q);
        add_row(f.U, i, t, -q);
        if (D(i, t) != 0) {
          swap_rows(t, i);
          clean = false;
        }
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const std::int64_t q = D(t, j) / D(t, t);
        add_col(D, j, t, -q);
        add_col(f.V, j, t, -q);
        if (D(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: fold a row with an entry not divisible by the pivot
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(D, t, bad, 1);
      add_row(f.U, t, bad, 1);
    }
    if (D(t, t) < 0) {
      D.row(t) *= -1;
      f.U.row(t) *= -1;
    }
    f.diagonal.push_back(D(t, t));
  }
  return f;
}

bool SmithForm::verify(const IntMatrix& A) const {
  if (U.rows() != A.rows() || V.cols() != A.cols() || D.rows() != A.rows() || D.cols() != A.cols()) return false;
  if (product(product(U, A), V) != D) return false;
  for (Eigen::Index i = 0; i < D.rows(); ++i)
    for (Eigen::Index j = 0; j < D.cols(); ++j) {
      const bool on = i == j && static_cast<std::size_t>(i) < diagonal.size();
      if (D(i, j) != (on ? diagonal[i] : 0)) return false;
    }
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    if (diagonal[i] <= 0) return false;
    if (i + 1 < diagonal.size() && diagonal[i + 1] % diagonal[i] != 0) return false;
  }
  return abs64(det(U)) == 1 && abs64(det(V)) == 1;
}

}  // namespace sdot::ktheory
