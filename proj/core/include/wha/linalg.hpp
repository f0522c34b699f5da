#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wha/field.hpp"

namespace wha {

template <class K>
using Vec = std::vector<K>;

template <class K>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, const K& fill)
      : rows(r), cols(c), a(r * c, fill) {}

  K& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const K& operator()(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }
  bool empty() const { return rows == 0 || cols == 0; }
};

// Sparse rank-3 tensor; entries sorted by (i,j,k) and zero-free after
// compress(). Houses all structure constants.
template <class K>
struct Tensor3 {
  struct Entry {
    std::uint32_t i = 0, j = 0, k = 0;
    K c{};
  };
  std::size_t d0 = 0, d1 = 0, d2 = 0;
  std::vector<Entry> entries;

  Tensor3() = default;
  Tensor3(std::size_t a, std::size_t b, std::size_t c) : d0(a), d1(b), d2(c) {}

  void add(std::size_t i, std::size_t j, std::size_t k, const K& c) {
    entries.push_back({(std::uint32_t)i, (std::uint32_t)j, (std::uint32_t)k, c});
  }

  template <class F>
  void compress(const F& ops) {
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
      return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
    });
    std::vector<Entry> out;
    out.reserve(entries.size());
    for (auto& e : entries) {
      if (!out.empty() && out.back().i == e.i && out.back().j == e.j &&
          out.back().k == e.k)
        out.back().c = ops.add(out.back().c, e.c);
      else
        out.push_back(e);
    }
    std::erase_if(out, [&](const Entry& e) { return ops.is_zero(e.c); });
    entries = std::move(out);
  }
};

// ---------------------------------------------------------------------------
// vector / matrix arithmetic
// ---------------------------------------------------------------------------

template <class K>
Vec<K> zeros(const FieldOps<K>& F, std::size_t n) {
  return Vec<K>(n, F.zero());
}

template <class K>
Vec<K> basis_vec(const FieldOps<K>& F, std::size_t n, std::size_t i) {
  Vec<K> v(n, F.zero());
  v[i] = F.one();
  return v;
}

template <class K>
Vec<K> vec_add(const FieldOps<K>& F, const Vec<K>& x, const Vec<K>& y) {
  Vec<K> z(x.size(), F.zero());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = F.add(x[i], y[i]);
  return z;
}

template <class K>
Vec<K> vec_sub(const FieldOps<K>& F, const Vec<K>& x, const Vec<K>& y) {
  Vec<K> z(x.size(), F.zero());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = F.sub(x[i], y[i]);
  return z;
}

template <class K>
Vec<K> vec_scale(const FieldOps<K>& F, const K& c, const Vec<K>& x) {
  Vec<K> z(x.size(), F.zero());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = F.mul(c, x[i]);
  return z;
}

template <class K>
double vec_norm(const FieldOps<K>& F, const Vec<K>& x) {
  double m = 0;
  for (const K& c : x) m = std::max(m, F.abs_of(c));
  return m;
}

template <class K>
Mat<K> identity(const FieldOps<K>& F, std::size_t n) {
  Mat<K> I(n, n, F.zero());
  for (std::size_t i = 0; i < n; ++i) I(i, i) = F.one();
  return I;
}

template <class K>
Mat<K> mat_add(const FieldOps<K>& F, const Mat<K>& A, const Mat<K>& B) {
  Mat<K> C(A.rows, A.cols, F.zero());
  for (std::size_t t = 0; t < A.a.size(); ++t) C.a[t] = F.add(A.a[t], B.a[t]);
  return C;
}

template <class K>
Mat<K> mat_sub(const FieldOps<K>& F, const Mat<K>& A, const Mat<K>& B) {
  Mat<K> C(A.rows, A.cols, F.zero());
  for (std::size_t t = 0; t < A.a.size(); ++t) C.a[t] = F.sub(A.a[t], B.a[t]);
  return C;
}

template <class K>
Mat<K> mat_scale(const FieldOps<K>& F, const K& c, const Mat<K>& A) {
  Mat<K> C(A.rows, A.cols, F.zero());
  for (std::size_t t = 0; t < A.a.size(); ++t) C.a[t] = F.mul(c, A.a[t]);
  return C;
}

template <class K>
Mat<K> mat_mul(const FieldOps<K>& F, const Mat<K>& A, const Mat<K>& B) {
  if (A.cols != B.rows) throw Error("mat_mul: dimension mismatch");
  Mat<K> C(A.rows, B.cols, F.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const K& aik = A(i, k);
      if (F.is_zero(aik)) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        C(i, j) = F.add(C(i, j), F.mul(aik, B(k, j)));
    }
  return C;
}

template <class K>
Vec<K> mat_vec(const FieldOps<K>& F, const Mat<K>& A, const Vec<K>& x) {
  if (A.cols != x.size()) throw Error("mat_vec: dimension mismatch");
  Vec<K> y(A.rows, F.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      y[i] = F.add(y[i], F.mul(A(i, j), x[j]));
  return y;
}

template <class K>
Mat<K> transpose(const Mat<K>& A) {
  Mat<K> T(A.cols, A.rows, K{});
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

template <class K>
Mat<K> conj_transpose(const FieldOps<K>& F, const Mat<K>& A) {
  Mat<K> T(A.cols, A.rows, F.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = F.conj(A(i, j));
  return T;
}

template <class K>
double mat_norm(const FieldOps<K>& F, const Mat<K>& A) {
  double m = 0;
  for (const K& c : A.a) m = std::max(m, F.abs_of(c));
  return m;
}

template <class K>
double mat_dist(const FieldOps<K>& F, const Mat<K>& A, const Mat<K>& B) {
  if (A.rows != B.rows || A.cols != B.cols) return 1.0 / 0.0;
  double m = 0;
  for (std::size_t t = 0; t < A.a.size(); ++t)
    m = std::max(m, F.abs_of(F.sub(A.a[t], B.a[t])));
  return m;
}

template <class K>
double vec_dist(const FieldOps<K>& F, const Vec<K>& x, const Vec<K>& y) {
  if (x.size() != y.size()) return 1.0 / 0.0;
  double m = 0;
  for (std::size_t t = 0; t < x.size(); ++t)
    m = std::max(m, F.abs_of(F.sub(x[t], y[t])));
  return m;
}

template <class K>
Mat<K> hstack(const FieldOps<K>& F, const Mat<K>& A, const Mat<K>& B) {
  if (A.rows != B.rows) throw Error("hstack: row mismatch");
  Mat<K> C(A.rows, A.cols + B.cols, F.zero());
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
    for (std::size_t j = 0; j < B.cols; ++j) C(i, A.cols + j) = B(i, j);
  }
  return C;
}

template <class K>
Mat<K> vstack(const FieldOps<K>& F, const std::vector<Mat<K>>& blocks) {
  if (blocks.empty()) return Mat<K>();
  std::size_t rows = 0, cols = blocks[0].cols;
  for (auto& b : blocks) {
    if (b.cols != cols) throw Error("vstack: col mismatch");
    rows += b.rows;
  }
  Mat<K> C(rows, cols, F.zero());
  std::size_t at = 0;
  for (auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) C(at + i, j) = b(i, j);
    at += b.rows;
  }
  return C;
}

template <class K>
Vec<K> mat_col(const Mat<K>& A, std::size_t j) {
  Vec<K> v(A.rows, K{});
  for (std::size_t i = 0; i < A.rows; ++i) v[i] = A(i, j);
  return v;
}

template <class K>
Mat<K> cols_to_mat(const FieldOps<K>& F, std::size_t n,
                   const std::vector<Vec<K>>& cols) {
  Mat<K> M(n, cols.size(), F.zero());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) M(i, j) = cols[j][i];
  return M;
}

// ---------------------------------------------------------------------------
// row reduction and everything built on it
// ---------------------------------------------------------------------------

template <class K>
struct Rref {
  Mat<K> r;                        // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column per pivot row
  std::size_t rank = 0;
};

// Gauss-Jordan. Exact kinds take the first nonzero pivot; the complex kind
// picks the largest magnitude and treats pivots at or below tolerance as zero.
template <class K>
Rref<K> rref(const FieldOps<K>& F, Mat<K> M) {
  Rref<K> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < M.cols && row < M.rows; ++col) {
    std::size_t best = row;
    double best_abs = F.abs_of(M(row, col));
    for (std::size_t i = row + 1; i < M.rows; ++i) {
      double v = F.abs_of(M(i, col));
      if (v > best_abs) {
        best = i;
        best_abs = v;
      }
      if (FieldOps<K>::exact && best_abs > 0) break;
    }
    if (best_abs <= F.spec.tolerance || best_abs == 0.0) continue;
    if (best != row)
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M(row, j), M(best, j));
    K inv = F.inv(M(row, col));
    for (std::size_t j = 0; j < M.cols; ++j) M(row, j) = F.mul(inv, M(row, j));
    M(row, col) = F.one();
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == row) continue;
      const K f = M(i, col);
      if (F.is_zero(f)) continue;
      for (std::size_t j = 0; j < M.cols; ++j)
        M(i, j) = F.sub(M(i, j), F.mul(f, M(row, j)));
      M(i, col) = F.zero();
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = row;
  out.r = std::move(M);
  return out;
}

template <class K>
std::size_t rank_of(const FieldOps<K>& F, const Mat<K>& M) {
  return rref(F, M).rank;
}

template <class K>
Mat<K> kernel_from_rref(const FieldOps<K>& F, const Rref<K>& R, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto c : R.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat<K> ker(cols, free_cols.size(), F.zero());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::size_t fc = free_cols[t];
    ker(fc, t) = F.one();
    for (std::size_t pr = 0; pr < R.pivots.size(); ++pr)
      ker(R.pivots[pr], t) = F.neg(R.r(pr, fc));
  }
  return ker;
}

// kernel basis as columns; each vector is re-checked against M post hoc
template <class K>
Mat<K> kernel(const FieldOps<K>& F, const Mat<K>& M) {
  auto R = rref(F, M);
  Mat<K> ker = kernel_from_rref(F, R, M.cols);
  double bound = F.spec.tolerance * std::max<double>(1.0, mat_norm(F, M)) *
                 std::max<std::size_t>(M.cols, 1);
  for (std::size_t t = 0; t < ker.cols; ++t) {
    Vec<K> v = mat_col(ker, t);
    if (vec_norm(F, mat_vec(F, M, v)) > bound)
      throw Inconsistent("kernel vector failed the post-hoc residual check");
  }
  return ker;
}

template <class K>
std::optional<Vec<K>> solve(const FieldOps<K>& F, const Mat<K>& M,
                            const Vec<K>& b) {
  if (M.rows != b.size()) throw Error("solve: dimension mismatch");
  Mat<K> aug = hstack(F, M, cols_to_mat(F, b.size(), {b}));
  auto R = rref(F, aug);
  // inconsistent iff a pivot lands in the last column
  if (!R.pivots.empty() && R.pivots.back() == M.cols) return std::nullopt;
  Vec<K> x(M.cols, F.zero());
  for (std::size_t pr = 0; pr < R.pivots.size(); ++pr)
    x[R.pivots[pr]] = R.r(pr, M.cols);
  return x;
}

template <class K>
struct AffineSolution {
  std::optional<Vec<K>> particular;
  Mat<K> kernel_basis;
  std::size_t rank = 0;
};

template <class K>
AffineSolution<K> solve_affine(const FieldOps<K>& F, const Mat<K>& M,
                               const std::optional<Vec<K>>& b = std::nullopt) {
  AffineSolution<K> out;
  out.rank = rank_of(F, M);
  out.kernel_basis = kernel(F, M);
  if (b) out.particular = solve(F, M, *b);
  return out;
}

template <class K>
std::optional<Mat<K>> inverse(const FieldOps<K>& F, const Mat<K>& M) {
  if (M.rows != M.cols) throw Error("inverse: matrix not square");
  auto R = rref(F, hstack(F, M, identity(F, M.rows)));
  if (R.rank < M.rows) return std::nullopt;
  for (std::size_t i = 0; i < M.rows; ++i)
    if (R.pivots[i] != i) return std::nullopt;
  Mat<K> inv(M.rows, M.rows, F.zero());
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.rows; ++j) inv(i, j) = R.r(i, M.rows + j);
  return inv;
}

// basis of the column space, returned as original columns of M
template <class K>
Mat<K> column_space(const FieldOps<K>& F, const Mat<K>& M) {
  auto R = rref(F, M);
  Mat<K> B(M.rows, R.pivots.size(), F.zero());
  for (std::size_t t = 0; t < R.pivots.size(); ++t)
    for (std::size_t i = 0; i < M.rows; ++i) B(i, t) = M(i, R.pivots[t]);
  return B;
}

// coordinates of v in the span of the columns of B, if it lies there
template <class K>
std::optional<Vec<K>> in_span(const FieldOps<K>& F, const Mat<K>& B,
                              const Vec<K>& v) {
  if (B.cols == 0) {
    if (vec_norm(F, v) <= F.spec.tolerance) return Vec<K>{};
    return std::nullopt;
  }
  return solve(F, B, v);
}

template <class K>
bool subspace_contains(const FieldOps<K>& F, const Mat<K>& B, const Vec<K>& v) {
  return in_span(F, B, v).has_value();
}

template <class K>
bool subspace_equal(const FieldOps<K>& F, const Mat<K>& U, const Mat<K>& V) {
  std::size_t ru = rank_of(F, U), rv = rank_of(F, V);
  if (ru != rv) return false;
  if (U.cols == 0) return true;
  if (U.rows != V.rows) return false;
  return rank_of(F, hstack(F, U, V)) == ru;
}

// basis of (col U) ∩ (col V)
template <class K>
Mat<K> intersect(const FieldOps<K>& F, const Mat<K>& U, const Mat<K>& V) {
  if (U.cols != 0 && V.cols != 0 && U.rows != V.rows)
    throw Error("intersect: ambient dimensions differ");
  if (U.cols == 0 || V.cols == 0) return Mat<K>(U.rows, 0, F.zero());
  Mat<K> W(U.rows, U.cols + V.cols, F.zero());
  for (std::size_t i = 0; i < U.rows; ++i) {
    for (std::size_t j = 0; j < U.cols; ++j) W(i, j) = U(i, j);
    for (std::size_t j = 0; j < V.cols; ++j) W(i, U.cols + j) = F.neg(V(i, j));
  }
  Mat<K> ker = kernel(F, W);
  std::vector<Vec<K>> vecs;
  for (std::size_t t = 0; t < ker.cols; ++t) {
    Vec<K> x(U.rows, F.zero());
    for (std::size_t j = 0; j < U.cols; ++j)
      for (std::size_t i = 0; i < U.rows; ++i)
        x[i] = F.add(x[i], F.mul(U(i, j), ker(j, t)));
    vecs.push_back(std::move(x));
  }
  return column_space(F, cols_to_mat(F, U.rows, vecs));
}

// ---------------------------------------------------------------------------
// invertible element search inside a span
// ---------------------------------------------------------------------------

template <class K>
struct SpanMember {
  Vec<K> coeffs;
  Mat<K> value;
};

inline constexpr int kDefaultSpanAttempts = 128;

// Looks for an invertible element of span{basis}. Seeded and reproducible;
// over small finite fields the whole coefficient space is enumerated,
// otherwise random draws are used. A miss is "none found", not a proof of
// non-existence.
template <class K>
std::optional<SpanMember<K>> invertible_in_span(
    const FieldOps<K>& F, const std::vector<Mat<K>>& basis,
    std::uint64_t seed, int attempts = kDefaultSpanAttempts) {
  if (basis.empty()) return std::nullopt;
  const std::size_t n = basis[0].rows;
  for (auto& m : basis)
    if (m.rows != n || m.cols != n)
      throw Error("invertible_in_span: members must be square, same size");

  auto try_coeffs = [&](const Vec<K>& c) -> std::optional<SpanMember<K>> {
    Mat<K> M(n, n, F.zero());
    for (std::size_t t = 0; t < basis.size(); ++t)
      if (!F.is_zero(c[t])) M = mat_add(F, M, mat_scale(F, c[t], basis[t]));
    if (rank_of(F, M) == n) return SpanMember<K>{c, std::move(M)};
    return std::nullopt;
  };

  if constexpr (std::is_same_v<K, Gf>) {
    // exhaustive when the coefficient space is small
    double total = 1;
    for (std::size_t t = 0; t < basis.size(); ++t) total *= double(F.p());
    if (total <= 4096.0) {
      Vec<K> c(basis.size(), F.zero());
      std::uint64_t count = (std::uint64_t)total;
      for (std::uint64_t code = 1; code < count; ++code) {
        std::uint64_t x = code;
        for (std::size_t t = 0; t < basis.size(); ++t) {
          c[t] = Gf{x % F.p()};
          x /= F.p();
        }
        if (auto hit = try_coeffs(c)) return hit;
      }
      return std::nullopt;
    }
  }

  std::mt19937_64 rng(seed);
  for (int it = 0; it < attempts; ++it) {
    Vec<K> c(basis.size(), F.zero());
    for (auto& x : c) x = F.random(rng);
    if (auto hit = try_coeffs(c)) return hit;
  }
  return std::nullopt;
}

}  // namespace wha
