#pragma once

#include "wha/algebra.hpp"

namespace wha {

struct CheckLine {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct AxiomReport {
  std::vector<CheckLine> lines;
  bool is_wba = false;   // (A.1)-(A.7)
  bool is_wha = false;   // (A.1)-(A.9)
  bool is_hopf = false;  // WHA with Delta(1) = 1 (x) 1
  double hopf_residual = 0.0;
  bool dual_checked = false;
  bool dual_pass = false;  // transposed axioms evaluated on the computed dual
  double tol = 0.0;

  bool pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return !dual_checked || dual_pass;
  }
  const CheckLine* line(const std::string& name) const {
    for (const auto& l : lines)
      if (l.name == name) return &l;
    return nullptr;
  }
};

namespace detail {

// grouped views of a compressed Tensor3: by first index, and by (first,second)
template <class K>
struct TensorRows {
  const Tensor3<K>* t;
  using It = typename std::vector<typename Tensor3<K>::Entry>::const_iterator;

  explicit TensorRows(const Tensor3<K>& tens) : t(&tens) {}

  std::pair<It, It> row(std::uint32_t i) const {
    auto lo = std::lower_bound(
        t->entries.begin(), t->entries.end(), i,
        [](const auto& e, std::uint32_t v) { return e.i < v; });
    auto hi = std::upper_bound(
        t->entries.begin(), t->entries.end(), i,
        [](std::uint32_t v, const auto& e) { return v < e.i; });
    return {lo, hi};
  }
  std::pair<It, It> row(std::uint32_t i, std::uint32_t j) const {
    auto cmp_lo = [](const auto& e, std::pair<std::uint32_t, std::uint32_t> v) {
      return std::tie(e.i, e.j) < std::tie(v.first, v.second);
    };
    auto cmp_hi = [](std::pair<std::uint32_t, std::uint32_t> v, const auto& e) {
      return std::tie(v.first, v.second) < std::tie(e.i, e.j);
    };
    auto lo = std::lower_bound(t->entries.begin(), t->entries.end(),
                               std::make_pair(i, j), cmp_lo);
    auto hi = std::upper_bound(t->entries.begin(), t->entries.end(),
                               std::make_pair(i, j), cmp_hi);
    return {lo, hi};
  }
};

template <class K>
double vec_max_abs(const FieldOps<K>& F, const Vec<K>& v) {
  double m = 0;
  for (const K& c : v) m = std::max(m, F.abs_of(c));
  return m;
}

}  // namespace detail

// Evaluates (A.1)-(A.9) as tensor identities on the basis. Mathematical
// failures are report entries, never exceptions.
template <class K>
AxiomReport check_axioms(const Wha<K>& A, bool cross_check_dual = true) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  AxiomReport rep;
  rep.tol = F.spec.tolerance;
  detail::TensorRows<K> M(A.mult), D(A.comult);

  auto push = [&](const std::string& name, double res) {
    rep.lines.push_back({name, res, res <= rep.tol});
  };

  // eps(b_i b_j)
  Mat<K> eps_mul(n, n, F.zero());
  for (const auto& e : A.mult.entries)
    if (!F.is_zero(A.counit[e.k]))
      eps_mul(e.i, e.j) = F.add(eps_mul(e.i, e.j), F.mul(e.c, A.counit[e.k]));

  // (A.1) associativity
  {
    double res = 0;
    Vec<K> acc(n, F.zero());
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < n; ++k) {
          std::fill(acc.begin(), acc.end(), F.zero());
          auto [l1, h1] = M.row(i, j);
          for (auto it = l1; it != h1; ++it) {
            auto [l2, h2] = M.row(it->k, k);
            for (auto jt = l2; jt != h2; ++jt)
              acc[jt->k] = F.add(acc[jt->k], F.mul(it->c, jt->c));
          }
          auto [l3, h3] = M.row(j, k);
          for (auto it = l3; it != h3; ++it) {
            auto [l4, h4] = M.row(i, it->k);
            for (auto jt = l4; jt != h4; ++jt)
              acc[jt->k] = F.sub(acc[jt->k], F.mul(it->c, jt->c));
          }
          res = std::max(res, detail::vec_max_abs(F, acc));
        }
    push("A.1 associativity", res);
  }

  // (A.2) unit property
  {
    double res = 0;
    Mat<K> left(n, n, F.zero()), right(n, n, F.zero());
    for (const auto& e : A.mult.entries) {
      if (!F.is_zero(A.unit[e.i]))
        left(e.j, e.k) = F.add(left(e.j, e.k), F.mul(A.unit[e.i], e.c));
      if (!F.is_zero(A.unit[e.j]))
        right(e.i, e.k) = F.add(right(e.i, e.k), F.mul(A.unit[e.j], e.c));
    }
    Mat<K> I = identity(F, n);
    res = std::max(mat_dist(F, left, I), mat_dist(F, right, I));
    push("A.2 unit", res);
  }

  // (A.3) coassociativity
  {
    double res = 0;
    std::vector<K> buf(n * n * n, F.zero());
    for (std::uint32_t k = 0; k < n; ++k) {
      std::fill(buf.begin(), buf.end(), F.zero());
      auto [lo, hi] = D.row(k);
      for (auto it = lo; it != hi; ++it) {
        auto [l2, h2] = D.row(it->j);  // expand first leg
        for (auto jt = l2; jt != h2; ++jt) {
          std::size_t idx = ((std::size_t)jt->j * n + jt->k) * n + it->k;
          buf[idx] = F.add(buf[idx], F.mul(it->c, jt->c));
        }
        auto [l3, h3] = D.row(it->k);  // expand second leg
        for (auto jt = l3; jt != h3; ++jt) {
          std::size_t idx = ((std::size_t)it->j * n + jt->j) * n + jt->k;
          buf[idx] = F.sub(buf[idx], F.mul(it->c, jt->c));
        }
      }
      for (const K& c : buf) res = std::max(res, F.abs_of(c));
    }
    push("A.3 coassociativity", res);
  }

  // (A.4) counit property
  {
    double res = 0;
    Mat<K> left(n, n, F.zero()), right(n, n, F.zero());
    for (const auto& e : A.comult.entries) {
      if (!F.is_zero(A.counit[e.j]))
        left(e.k, e.i) = F.add(left(e.k, e.i), F.mul(A.counit[e.j], e.c));
      if (!F.is_zero(A.counit[e.k]))
        right(e.j, e.i) = F.add(right(e.j, e.i), F.mul(A.counit[e.k], e.c));
    }
    Mat<K> I = identity(F, n);
    res = std::max(mat_dist(F, left, I), mat_dist(F, right, I));
    push("A.4 counit", res);
  }

  // (A.5) multiplicativity of the coproduct
  {
    double res = 0;
    Mat<K> acc(n, n, F.zero());
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        for (auto& c : acc.a) c = F.zero();
        auto [l1, h1] = M.row(i, j);
        for (auto it = l1; it != h1; ++it) {
          auto [l2, h2] = D.row(it->k);
          for (auto jt = l2; jt != h2; ++jt)
            acc(jt->j, jt->k) = F.add(acc(jt->j, jt->k), F.mul(it->c, jt->c));
        }
        auto [li, hi_] = D.row(i);
        auto [lj, hj] = D.row(j);
        for (auto it = li; it != hi_; ++it)
          for (auto jt = lj; jt != hj; ++jt) {
            K w = F.mul(it->c, jt->c);
            auto [lf, hf] = M.row(it->j, jt->j);
            for (auto ft = lf; ft != hf; ++ft) {
              auto [ls, hs] = M.row(it->k, jt->k);
              K wf = F.mul(w, ft->c);
              for (auto st = ls; st != hs; ++st)
                acc(ft->k, st->k) = F.sub(acc(ft->k, st->k), F.mul(wf, st->c));
            }
          }
        res = std::max(res, mat_norm(F, acc));
      }
    push("A.5 coproduct multiplicative", res);
  }

  // (A.6a-b) weak multiplicativity of the counit
  {
    // eps3(i,j,k) = eps(b_i b_j b_k) via eps(( b_i b_j ) b_k)
    double res_a = 0, res_b = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        auto [l1, h1] = M.row(i, j);
        for (std::uint32_t k = 0; k < n; ++k) {
          K lhs = F.zero();
          for (auto it = l1; it != h1; ++it)
            lhs = F.add(lhs, F.mul(it->c, eps_mul(it->k, k)));
          K rhs_a = F.zero(), rhs_b = F.zero();
          auto [lo, hi] = D.row(j);
          for (auto it = lo; it != hi; ++it) {
            rhs_a = F.add(rhs_a, F.mul(it->c, F.mul(eps_mul(i, it->j),
                                                    eps_mul(it->k, k))));
            rhs_b = F.add(rhs_b, F.mul(it->c, F.mul(eps_mul(i, it->k),
                                                    eps_mul(it->j, k))));
          }
          res_a = std::max(res_a, F.abs_of(F.sub(lhs, rhs_a)));
          res_b = std::max(res_b, F.abs_of(F.sub(lhs, rhs_b)));
        }
      }
    push("A.6a counit weak mult", res_a);
    push("A.6b counit weak mult", res_b);
  }

  // (A.7a-b) weak comultiplicativity of the unit
  {
    std::vector<K> lhs(n * n * n, F.zero());
    // Delta^2(1) = (Delta (x) id) Delta(1)
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t m = 0; m < n; ++m) {
        const K& w = A.delta_unit(a, m);
        if (F.is_zero(w)) continue;
        auto [lo, hi] = D.row(a);
        for (auto it = lo; it != hi; ++it) {
          std::size_t idx = ((std::size_t)it->j * n + it->k) * n + m;
          lhs[idx] = F.add(lhs[idx], F.mul(w, it->c));
        }
      }
    std::vector<K> rhs_a(n * n * n, F.zero()), rhs_b(n * n * n, F.zero());
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t m = 0; m < n; ++m) {
        const K& w1 = A.delta_unit(a, m);
        if (F.is_zero(w1)) continue;
        for (std::uint32_t p = 0; p < n; ++p)
          for (std::uint32_t q = 0; q < n; ++q) {
            const K& w2 = A.delta_unit(p, q);
            if (F.is_zero(w2)) continue;
            K w = F.mul(w1, w2);
            auto [lo, hi] = M.row(m, p);
            for (auto it = lo; it != hi; ++it) {
              std::size_t idx = ((std::size_t)a * n + it->k) * n + q;
              rhs_a[idx] = F.add(rhs_a[idx], F.mul(w, it->c));
            }
            auto [lo2, hi2] = M.row(p, m);
            for (auto it = lo2; it != hi2; ++it) {
              std::size_t idx = ((std::size_t)a * n + it->k) * n + q;
              rhs_b[idx] = F.add(rhs_b[idx], F.mul(w, it->c));
            }
          }
      }
    double res_a = 0, res_b = 0;
    for (std::size_t t = 0; t < lhs.size(); ++t) {
      res_a = std::max(res_a, F.abs_of(F.sub(lhs[t], rhs_a[t])));
      res_b = std::max(res_b, F.abs_of(F.sub(lhs[t], rhs_b[t])));
    }
    push("A.7a unit weak comult", res_a);
    push("A.7b unit weak comult", res_b);
  }

  // (A.8a-b) antipode vs the counital projections
  {
    double res_a = 0, res_b = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
      Vec<K> acc_a(n, F.zero()), acc_b(n, F.zero());
      auto [lo, hi] = D.row(k);
      for (auto it = lo; it != hi; ++it) {
        // x_(1) S(x_(2)) and S(x_(1)) x_(2)
        for (std::uint32_t s = 0; s < n; ++s) {
          const K& s2 = A.antipode(s, it->k);
          if (!F.is_zero(s2)) {
            auto [lm, hm] = M.row(it->j, s);
            for (auto mt = lm; mt != hm; ++mt)
              acc_a[mt->k] =
                  F.add(acc_a[mt->k], F.mul(it->c, F.mul(s2, mt->c)));
          }
          const K& s1 = A.antipode(s, it->j);
          if (!F.is_zero(s1)) {
            auto [lm, hm] = M.row(s, it->k);
            for (auto mt = lm; mt != hm; ++mt)
              acc_b[mt->k] =
                  F.add(acc_b[mt->k], F.mul(it->c, F.mul(s1, mt->c)));
          }
        }
      }
      for (std::uint32_t t = 0; t < n; ++t) {
        res_a = std::max(res_a, F.abs_of(F.sub(acc_a[t], A.pi_l(t, k))));
        res_b = std::max(res_b, F.abs_of(F.sub(acc_b[t], A.pi_r(t, k))));
      }
    }
    push("A.8a antipode left", res_a);
    push("A.8b antipode right", res_b);
  }

  // (A.9) S(x_(1)) x_(2) S(x_(3)) = S(x)
  {
    double res = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
      Vec<K> acc(n, F.zero());
      auto [lo, hi] = D.row(k);
      for (auto it = lo; it != hi; ++it) {
        auto [l2, h2] = D.row(it->j);  // Delta^2 = (Delta (x) id) Delta
        for (auto jt = l2; jt != h2; ++jt) {
          // legs: (jt->j, jt->k, it->k) with weight it->c * jt->c
          K w = F.mul(it->c, jt->c);
          Element<K> u{Vec<K>(n, F.zero())};
          // S(b_{jt->j}) b_{jt->k}
          for (std::uint32_t s = 0; s < n; ++s) {
            const K& sv = A.antipode(s, jt->j);
            if (F.is_zero(sv)) continue;
            auto [lm, hm] = M.row(s, jt->k);
            for (auto mt = lm; mt != hm; ++mt)
              u.c[mt->k] = F.add(u.c[mt->k], F.mul(sv, mt->c));
          }
          // ... times S(b_{it->k})
          for (std::uint32_t s = 0; s < n; ++s) {
            const K& sv = A.antipode(s, it->k);
            if (F.is_zero(sv)) continue;
            for (std::uint32_t a = 0; a < n; ++a) {
              if (F.is_zero(u.c[a])) continue;
              auto [lm, hm] = M.row(a, s);
              K wa = F.mul(w, F.mul(u.c[a], sv));
              for (auto mt = lm; mt != hm; ++mt)
                acc[mt->k] = F.add(acc[mt->k], F.mul(wa, mt->c));
            }
          }
        }
      }
      for (std::uint32_t t = 0; t < n; ++t)
        res = std::max(res, F.abs_of(F.sub(acc[t], A.antipode(t, k))));
    }
    push("A.9 antipode absorbing", res);
  }

  bool wba = true;
  for (std::size_t t = 0; t < 9; ++t) wba &= rep.lines[t].pass;
  bool wha = wba;
  for (std::size_t t = 9; t < rep.lines.size(); ++t) wha &= rep.lines[t].pass;
  rep.is_wba = wba;
  rep.is_wha = wha;

  // Hopf degeneration flag: Delta(1) = 1 (x) 1
  {
    double res = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        res = std::max(res, F.abs_of(F.sub(A.delta_unit(a, b),
                                           F.mul(A.unit[a], A.unit[b]))));
    rep.hopf_residual = res;
    rep.is_hopf = wha && res <= rep.tol;
  }

  if (cross_check_dual) {
    rep.dual_checked = true;
    AxiomReport drep = check_axioms(dual(A), false);
    rep.dual_pass = drep.is_wha == rep.is_wha && drep.is_wba == rep.is_wba;
    for (auto& l : drep.lines)
      rep.lines.push_back({"dual " + l.name, l.residual, l.pass});
  }
  return rep;
}

// The five equivalent Hopf-degeneration conditions. Verdicts must agree;
// a mixed outcome means the input tensors are inconsistent.
struct HopfDegeneration {
  CheckLine delta_unit;       // Delta(1) = 1 (x) 1
  CheckLine eps_mult;         // eps(xy) = eps(x) eps(y)
  CheckLine antipode_left;    // S(x_(1)) x_(2) = eps(x) 1
  CheckLine antipode_right;   // x_(1) S(x_(2)) = eps(x) 1
  bool is_hopf = false;
  bool verdicts_agree = false;

  std::vector<const CheckLine*> all() const {
    return {&delta_unit, &eps_mult, &antipode_left, &antipode_right};
  }
};

template <class K>
HopfDegeneration hopf_degeneration(const Wha<K>& A) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  HopfDegeneration out;

  double r1 = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      r1 = std::max(r1, F.abs_of(F.sub(A.delta_unit(a, b),
                                       F.mul(A.unit[a], A.unit[b]))));
  out.delta_unit = {"Delta(1) = 1x1", r1, r1 <= tol};

  double r2 = 0;
  {
    Mat<K> eps_mul(n, n, F.zero());
    for (const auto& e : A.mult.entries)
      if (!F.is_zero(A.counit[e.k]))
        eps_mul(e.i, e.j) = F.add(eps_mul(e.i, e.j), F.mul(e.c, A.counit[e.k]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r2 = std::max(r2, F.abs_of(F.sub(eps_mul(i, j),
                                         F.mul(A.counit[i], A.counit[j]))));
  }
  out.eps_mult = {"eps multiplicative", r2, r2 <= tol};

  // Pi^R(x) = eps(x) 1 and Pi^L(x) = eps(x) 1
  double r3 = 0, r4 = 0;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t k = 0; k < n; ++k) {
      K want = F.mul(A.counit[k], A.unit[t]);
      r3 = std::max(r3, F.abs_of(F.sub(A.pi_r(t, k), want)));
      r4 = std::max(r4, F.abs_of(F.sub(A.pi_l(t, k), want)));
    }
  out.antipode_left = {"S(x_(1)) x_(2) = eps(x) 1", r3, r3 <= tol};
  out.antipode_right = {"x_(1) S(x_(2)) = eps(x) 1", r4, r4 <= tol};

  bool all = true, any = false;
  for (auto* l : out.all()) {
    all &= l->pass;
    any |= l->pass;
  }
  out.is_hopf = all;
  out.verdicts_agree = (all == any);
  if (!out.verdicts_agree)
    throw Inconsistent("Hopf degeneration conditions returned mixed verdicts");
  return out;
}

// Experimental: solve the convolution equations id*S = Pi^L, S*id = Pi^R for
// an antipode of a weak bialgebra, then validate (A.9) on the result.
// Uniqueness holds whenever an antipode exists, but existence is not granted.
template <class K>
struct SolvedAntipode {
  Mat<K> antipode;
  std::size_t ambiguity = 0;  // kernel dimension of the linear system
  double a9_residual = 0.0;
};

template <class K>
std::optional<SolvedAntipode<K>> solve_antipode(const Wha<K>& A) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  detail::TensorRows<K> M(A.mult), D(A.comult);
  // unknowns S[s,j] flattened as s*n + j
  Mat<K> sys(2 * n * n, n * n, F.zero());
  Vec<K> rhs(2 * n * n, F.zero());
  for (std::uint32_t k = 0; k < n; ++k) {
    auto [lo, hi] = D.row(k);
    for (auto it = lo; it != hi; ++it) {
      for (std::uint32_t s = 0; s < n; ++s) {
        auto [lm, hm] = M.row(it->j, s);
        for (auto mt = lm; mt != hm; ++mt) {
          std::size_t row = (std::size_t)k * n + mt->k;
          std::size_t col = (std::size_t)s * n + it->k;
          sys(row, col) = F.add(sys(row, col), F.mul(it->c, mt->c));
        }
        auto [lm2, hm2] = M.row(s, it->k);
        for (auto mt = lm2; mt != hm2; ++mt) {
          std::size_t row = n * n + (std::size_t)k * n + mt->k;
          std::size_t col = (std::size_t)s * n + it->j;
          sys(row, col) = F.add(sys(row, col), F.mul(it->c, mt->c));
        }
      }
    }
  }
  for (std::uint32_t k = 0; k < n; ++k)
    for (std::uint32_t t = 0; t < n; ++t) {
      rhs[(std::size_t)k * n + t] = A.pi_l(t, k);
      rhs[n * n + (std::size_t)k * n + t] = A.pi_r(t, k);
    }
  auto sol = solve_affine(F, sys, std::optional<Vec<K>>(rhs));
  if (!sol.particular) return std::nullopt;
  SolvedAntipode<K> out;
  out.antipode = Mat<K>(n, n, F.zero());
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t j = 0; j < n; ++j)
      out.antipode(s, j) = (*sol.particular)[s * n + j];
  out.ambiguity = sol.kernel_basis.cols;
  Wha<K> B = Wha<K>::make(F, n, A.labels, A.mult, A.unit, A.comult, A.counit,
                          out.antipode, A.star);
  AxiomReport r = check_axioms(B, false);
  out.a9_residual = r.line("A.9 antipode absorbing")->residual;
  return out;
}

}  // namespace wha
