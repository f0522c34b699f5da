#pragma once

#include <cmath>
#include <numeric>

#include "wha/linalg.hpp"

namespace wha {

// Spectral tools for the complex field. Hermitian input only; everything the
// positivity layer needs is Hermitian after conjugation by the GNS Gram root.

struct HermitianEig {
  std::vector<double> values;  // ascending
  Mat<Cpx> vectors;            // unitary, columns match values
};

// Two-sided cyclic Jacobi rotations. Converges to machine precision
// independently of the field tolerance.
inline HermitianEig hermitian_eig(const FieldOps<Cpx>& F, Mat<Cpx> A) {
  const std::size_t n = A.rows;
  if (A.cols != n) throw Error("hermitian_eig: matrix not square");
  double scale = std::max(1.0, mat_norm(F, A));
  if (mat_dist(F, A, conj_transpose(F, A)) >
      std::max(F.spec.tolerance, 1e-12) * scale)
    throw Error("hermitian_eig: matrix is not Hermitian");
  // symmetrize the noise away
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Cpx m = 0.5 * (A(i, j) + std::conj(A(j, i)));
      A(i, j) = m;
      A(j, i) = std::conj(m);
    }
    A(i, i) = Cpx(A(i, i).real(), 0.0);
  }

  Mat<Cpx> V = identity(F, n);
  const double conv = 1e-15 * scale * n;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
    if (off <= conv) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = std::abs(A(p, q));
        if (apq <= conv) continue;
        Cpx phase = A(p, q) / apq;
        double app = A(p, p).real(), aqq = A(q, q).real();
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // U fixes (p,q) plane: U[p,p]=c, U[q,p]=-s*conj(phase), U[p,q]=s*? ...
        // columns then rows, U = P·J with P = diag(1, conj(phase))
        for (std::size_t i = 0; i < n; ++i) {
          Cpx hip = A(i, p), hiq = A(i, q);
          A(i, p) = c * hip - s * std::conj(phase) * hiq;
          A(i, q) = s * hip + c * std::conj(phase) * hiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          Cpx hpj = A(p, j), hqj = A(q, j);
          A(p, j) = c * hpj - s * phase * hqj;
          A(q, j) = s * hpj + c * phase * hqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          Cpx vip = V(i, p), viq = V(i, q);
          V(i, p) = c * vip - s * std::conj(phase) * viq;
          V(i, q) = s * vip + c * std::conj(phase) * viq;
        }
      }
    }
  }

  HermitianEig out;
  out.values.resize(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = A(i, i).real();
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  out.vectors = Mat<Cpx>(n, n, F.zero());
  for (std::size_t t = 0; t < n; ++t) {
    out.values[t] = raw[order[t]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, t) = V(i, order[t]);
  }
  return out;
}

// Unique positive semidefinite R with R^2 = M. Eigenvalues in
// [-tolerance, 0] are clamped to zero; anything below -tolerance is an error.
inline Mat<Cpx> hermitian_sqrt(const FieldOps<Cpx>& F, const Mat<Cpx>& M) {
  auto eig = hermitian_eig(F, M);
  double scale = std::max(1.0, mat_norm(F, M));
  double tol = F.spec.tolerance * scale;
  const std::size_t n = M.rows;
  Mat<Cpx> R(n, n, F.zero());
  for (std::size_t t = 0; t < n; ++t) {
    double lam = eig.values[t];
    if (lam < -tol) throw Error("hermitian_sqrt: matrix is not positive");
    double r = lam <= 0 ? 0.0 : std::sqrt(lam);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        R(i, j) += r * eig.vectors(i, t) * std::conj(eig.vectors(j, t));
  }
  return R;
}

inline double min_eigenvalue(const FieldOps<Cpx>& F, const Mat<Cpx>& M) {
  auto eig = hermitian_eig(F, M);
  return eig.values.empty() ? 0.0 : eig.values.front();
}

// Minimal idempotents of a commutative semisimple algebra, given the
// (commuting, Hermitian) matrices of a faithful representation of a basis.
// A random real combination is diagonalized; each eigenvalue cluster yields
// one idempotent, expressed in coordinates of the given basis. Reseeds on
// eigenvalue collisions.
inline std::vector<Vec<Cpx>> split_commutative(const FieldOps<Cpx>& F,
                                               const std::vector<Mat<Cpx>>& mats,
                                               std::uint64_t seed,
                                               int attempts = 16) {
  if (mats.empty()) return {};
  const std::size_t m = mats[0].rows;
  const std::size_t c = mats.size();
  std::mt19937_64 rng(seed);

  // coordinate solve: stack vec(A_t) as columns
  Mat<Cpx> B(m * m, c, F.zero());
  for (std::size_t t = 0; t < c; ++t)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) B(i * m + j, t) = mats[t](i, j);

  double tol = std::max(F.spec.tolerance, 1e-12);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Mat<Cpx> M(m, m, F.zero());
    for (std::size_t t = 0; t < c; ++t) {
      double coeff = dist(rng);
      for (std::size_t i = 0; i < m * m; ++i) M.a[i] += coeff * mats[t].a[i];
    }
    HermitianEig eig;
    try {
      eig = hermitian_eig(F, M);
    } catch (const Error&) {
      throw Error("split_commutative: action matrices must be Hermitian");
    }
    // cluster by gaps
    double spread = eig.values.empty() ? 0.0
                                       : eig.values.back() - eig.values.front();
    double gap = std::max(tol, 1e-7 * std::max(1.0, spread));
    std::vector<std::pair<std::size_t, std::size_t>> clusters;
    std::size_t begin = 0;
    for (std::size_t t = 1; t <= m; ++t) {
      if (t == m || eig.values[t] - eig.values[t - 1] > gap) {
        clusters.push_back({begin, t});
        begin = t;
      }
    }
    if (clusters.size() != c) continue;  // collision, reseed

    std::vector<Vec<Cpx>> out;
    bool ok = true;
    std::vector<Mat<Cpx>> proj;
    for (auto [lo, hi] : clusters) {
      Mat<Cpx> P(m, m, F.zero());
      for (std::size_t t = lo; t < hi; ++t)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            P(i, j) += eig.vectors(i, t) * std::conj(eig.vectors(j, t));
      Vec<Cpx> rhs(m * m, F.zero());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rhs[i * m + j] = P(i, j);
      auto x = solve(F, B, rhs);
      if (!x) {
        ok = false;
        break;
      }
      proj.push_back(std::move(P));
      out.push_back(std::move(*x));
    }
    if (!ok) continue;
    // certify: pairwise products vanish, idempotent, complete
    double resid = 0;
    Mat<Cpx> sum(m, m, F.zero());
    for (std::size_t s = 0; s < proj.size(); ++s) {
      sum = mat_add(F, sum, proj[s]);
      for (std::size_t t = 0; t < proj.size(); ++t) {
        Mat<Cpx> prod = mat_mul(F, proj[s], proj[t]);
        resid = std::max(resid, mat_dist(F, prod, s == t ? proj[s]
                                                         : Mat<Cpx>(m, m, F.zero())));
      }
    }
    resid = std::max(resid, mat_dist(F, sum, identity(F, m)));
    if (resid <= std::max(F.spec.tolerance, 1e-8)) return out;
  }
  throw Error("split_commutative: split failed (eigenvalue collisions persisted)");
}

}  // namespace wha
