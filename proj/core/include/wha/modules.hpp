#pragma once

#include "wha/integrals.hpp"

namespace wha {

// Right weak Hopf module: a right A-module and right A-comodule on a carrier
// of dimension mdim, with structure tensors
//   action(j,a,i):   e_j . b_a   = sum_i action(j,a,i) e_i
//   coaction(j,i,a): rho(e_j)    = sum_{i,a} coaction(j,i,a) e_i (x) b_a
template <class K>
struct RightWhm {
  std::size_t mdim = 0;
  Tensor3<K> action;
  Tensor3<K> coaction;
};

template <class K>
Mat<K> whm_action_mat(const Wha<K>& A, const RightWhm<K>& M, const Element<K>& x) {
  Mat<K> out(M.mdim, M.mdim, A.F.zero());
  for (const auto& e : M.action.entries)
    if (!A.F.is_zero(x.c[e.j]))
      out(e.k, e.i) = A.F.add(out(e.k, e.i), A.F.mul(e.c, x.c[e.j]));
  return out;
}

// coaction of a carrier vector as an (mdim x n) coefficient matrix
template <class K>
Mat<K> whm_coaction_mat(const Wha<K>& A, const RightWhm<K>& M, const Vec<K>& m) {
  Mat<K> out(M.mdim, A.dim, A.F.zero());
  for (const auto& e : M.coaction.entries)
    if (!A.F.is_zero(m[e.i]))
      out(e.j, e.k) = A.F.add(out(e.j, e.k), A.F.mul(e.c, m[e.i]));
  return out;
}

template <class K>
struct WhmReport {
  CheckLine associative, unital, coassociative, counital, compatible;
  CheckLine pi_r_recovers;  // m_0 . Pi^R(m_1) = m
  bool pass() const {
    return associative.pass && unital.pass && coassociative.pass &&
           counital.pass && compatible.pass && pi_r_recovers.pass;
  }
};

template <class K>
WhmReport<K> check_whm(const Wha<K>& A, const RightWhm<K>& M) {
  const auto& F = A.F;
  const std::size_t m = M.mdim, n = A.dim;
  double tol = F.spec.tolerance;
  WhmReport<K> out;
  auto line = [&](const std::string& name, double r) {
    return CheckLine{name, r, r <= tol};
  };

  // cache per-basis action matrices
  std::vector<Mat<K>> act;
  for (std::size_t a = 0; a < n; ++a)
    act.push_back(whm_action_mat(A, M, Element<K>{basis_vec(F, n, a)}));

  double r_assoc = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Mat<K> two = mat_mul(F, act[b], act[a]);  // (m . a) . b
      Mat<K> one = whm_action_mat(A, M, mul(A, Element<K>{basis_vec(F, n, a)},
                                            Element<K>{basis_vec(F, n, b)}));
      r_assoc = std::max(r_assoc, mat_dist(F, two, one));
    }
  out.associative = line("action associative", r_assoc);
  out.unital = line("action unital",
                    mat_dist(F, whm_action_mat(A, M, A.one()), identity(F, m)));

  double r_co = 0;
  {
    // (rho (x) id) rho = (id (x) Delta) rho, entries [s, p, a]
    detail::TensorRows<K> Co(M.coaction), D(A.comult);
    std::vector<K> buf(m * n * n, F.zero());
    for (std::uint32_t j = 0; j < m; ++j) {
      std::fill(buf.begin(), buf.end(), F.zero());
      auto [lo, hi] = Co.row(j);
      for (auto it = lo; it != hi; ++it) {
        auto [l2, h2] = Co.row(it->j);
        for (auto jt = l2; jt != h2; ++jt) {
          std::size_t idx = ((std::size_t)jt->j * n + jt->k) * n + it->k;
          buf[idx] = F.add(buf[idx], F.mul(it->c, jt->c));
        }
        auto [l3, h3] = D.row(it->k);
        for (auto jt = l3; jt != h3; ++jt) {
          std::size_t idx = ((std::size_t)it->j * n + jt->j) * n + jt->k;
          buf[idx] = F.sub(buf[idx], F.mul(it->c, jt->c));
        }
      }
      for (const K& c : buf) r_co = std::max(r_co, F.abs_of(c));
    }
  }
  out.coassociative = line("coaction coassociative", r_co);

  double r_cu = 0;
  {
    Mat<K> acc(m, m, F.zero());
    for (const auto& e : M.coaction.entries)
      if (!F.is_zero(A.counit[e.k]))
        acc(e.j, e.i) = F.add(acc(e.j, e.i), F.mul(e.c, A.counit[e.k]));
    r_cu = mat_dist(F, acc, identity(F, m));
  }
  out.counital = line("coaction counital", r_cu);

  double r_comp = 0;
  {
    detail::TensorRows<K> D(A.comult);
    for (std::size_t j = 0; j < m; ++j)
      for (std::uint32_t a = 0; a < n; ++a) {
        // LHS: rho(e_j . b_a)
        Vec<K> moved(m, F.zero());
        for (std::size_t i = 0; i < m; ++i) moved[i] = act[a](i, j);
        Mat<K> lhs = whm_coaction_mat(A, M, moved);
        // RHS: m_0 . a_(1) (x) m_1 a_(2)
        Mat<K> rhs(m, n, F.zero());
        Mat<K> co = whm_coaction_mat(A, M, basis_vec(F, m, j));
        auto [lo, hi] = D.row(a);
        for (auto it = lo; it != hi; ++it)
          for (std::size_t s = 0; s < m; ++s)
            for (std::size_t t = 0; t < n; ++t) {
              if (F.is_zero(co(s, t))) continue;
              K w = F.mul(it->c, co(s, t));
              Vec<K> m0a(m, F.zero());
              for (std::size_t u = 0; u < m; ++u) m0a[u] = act[it->j](u, s);
              Vec<K> m1a = mul(A, Element<K>{basis_vec(F, n, t)},
                               Element<K>{basis_vec(F, n, it->k)}).c;
              for (std::size_t u = 0; u < m; ++u) {
                if (F.is_zero(m0a[u])) continue;
                for (std::size_t v = 0; v < n; ++v)
                  rhs(u, v) = F.add(rhs(u, v), F.mul(w, F.mul(m0a[u], m1a[v])));
              }
            }
        r_comp = std::max(r_comp, mat_dist(F, lhs, rhs));
      }
  }
  out.compatible = line("action/coaction compatible", r_comp);

  double r_pi = 0;
  for (std::size_t j = 0; j < m; ++j) {
    Mat<K> co = whm_coaction_mat(A, M, basis_vec(F, m, j));
    Vec<K> acc(m, F.zero());
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (F.is_zero(co(s, t))) continue;
        Element<K> p = pi(A, Element<K>{basis_vec(F, n, t)}, Side::right);
        Mat<K> ap = whm_action_mat(A, M, p);
        for (std::size_t u = 0; u < m; ++u)
          acc[u] = F.add(acc[u], F.mul(co(s, t), ap(u, s)));
      }
    r_pi = std::max(r_pi, vec_dist(F, acc, basis_vec(F, m, j)));
  }
  out.pi_r_recovers = line("m_0 . Pi^R(m_1) = m", r_pi);
  return out;
}

// coinvariants: solutions of m_0 (x) m_1 = m . 1_(1) (x) 1_(2),
// certified to be a right A^L-submodule
template <class K>
Mat<K> coinvariants(const Wha<K>& A, const RightWhm<K>& M) {
  const auto& F = A.F;
  const std::size_t m = M.mdim, n = A.dim;
  Mat<K> sys(m * n, m, F.zero());
  for (const auto& e : M.coaction.entries)
    sys(e.j * n + e.k, e.i) = F.add(sys(e.j * n + e.k, e.i), e.c);
  std::vector<Mat<K>> act;
  for (std::size_t p = 0; p < n; ++p)
    act.push_back(whm_action_mat(A, M, Element<K>{basis_vec(F, n, p)}));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const K& w = A.delta_unit(p, q);
      if (F.is_zero(w)) continue;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          sys(i * n + q, j) = F.sub(sys(i * n + q, j), F.mul(w, act[p](i, j)));
    }
  Mat<K> coinv = kernel(F, sys);

  auto bases = counital_subalgebras(A);
  for (std::size_t t = 0; t < coinv.cols; ++t)
    for (std::size_t s = 0; s < bases.al.cols; ++s) {
      Mat<K> ax = whm_action_mat(A, M, Element<K>{mat_col(bases.al, s)});
      if (!subspace_contains(F, coinv, mat_vec(F, ax, mat_col(coinv, t))))
        throw Inconsistent("coinvariants are not a right A^L-submodule");
    }
  return coinv;
}

// E(m) = m_0 . S(m_1), the projection onto the coinvariants
template <class K>
Mat<K> whm_projection_matrix(const Wha<K>& A, const RightWhm<K>& M) {
  const auto& F = A.F;
  const std::size_t m = M.mdim, n = A.dim;
  Mat<K> E(m, m, F.zero());
  for (const auto& e : M.coaction.entries) {
    // e: (j, k-index=e.j? ...) coaction entry (source j=e.i, carrier leg e.j, algebra leg e.k)
    Element<K> sa = antipode_of(A, Element<K>{basis_vec(F, n, e.k)});
    Mat<K> act = whm_action_mat(A, M, sa);
    for (std::size_t u = 0; u < m; ++u)
      E(u, e.i) = F.add(E(u, e.i), F.mul(e.c, act(u, e.j)));
  }
  return E;
}

template <class K>
Vec<K> whm_project(const Wha<K>& A, const RightWhm<K>& M, const Vec<K>& v) {
  return mat_vec(A.F, whm_projection_matrix(A, M), v);
}

// ---------------------------------------------------------------------------
// amalgamated tensor product N (x)_{A^L} A
// ---------------------------------------------------------------------------

// a right A^L-module: basis of A^L plus the action matrices of that basis
template <class K>
struct RightAlModule {
  std::size_t dim = 0;
  Mat<K> al;                 // n x r basis of A^L
  std::vector<Mat<K>> act;   // one (dim x dim) matrix per basis column
};

template <class K>
struct Amalgamated {
  RightWhm<K> module;     // quotient carrier
  std::size_t dim = 0;    // quotient dimension
  Mat<K> projector;       // dim x (q*n)
  Mat<K> section;         // (q*n) x dim
  std::size_t relation_rank = 0;
};

template <class K>
Amalgamated<K> amalgamated_product(const Wha<K>& A, const RightAlModule<K>& N) {
  const auto& F = A.F;
  const std::size_t q = N.dim, n = A.dim, V = q * n;
  // relation span: (n . x^L) (x) a - n (x) (x^L a)
  std::vector<Vec<K>> rels;
  for (std::size_t t = 0; t < q; ++t)
    for (std::size_t s = 0; s < N.al.cols; ++s) {
      Element<K> xl{mat_col(N.al, s)};
      Vec<K> nx = mat_vec(F, N.act[s], basis_vec(F, q, t));
      for (std::size_t a = 0; a < n; ++a) {
        Vec<K> rel(V, F.zero());
        for (std::size_t u = 0; u < q; ++u)
          rel[u * n + a] = F.add(rel[u * n + a], nx[u]);
        Vec<K> xa = mul(A, xl, Element<K>{basis_vec(F, n, a)}).c;
        for (std::size_t v = 0; v < n; ++v)
          rel[t * n + v] = F.sub(rel[t * n + v], xa[v]);
        rels.push_back(std::move(rel));
      }
    }
  Mat<K> R = column_space(F, cols_to_mat(F, V, rels));

  Amalgamated<K> out;
  out.relation_rank = R.cols;
  out.dim = V - R.cols;

  // complement of R spanned by standard basis vectors: extend R by the
  // identity and keep the pivot columns that fall in the identity block
  Mat<K> ext = hstack(F, R, identity(F, V));
  auto rr = rref(F, ext);
  std::vector<std::size_t> comp;
  for (auto c : rr.pivots)
    if (c >= R.cols) comp.push_back(c - R.cols);
  if (comp.size() != out.dim)
    throw Inconsistent("complement extraction failed");
  out.section = Mat<K>(V, out.dim, F.zero());
  for (std::size_t t = 0; t < comp.size(); ++t) out.section(comp[t], t) = F.one();

  // projector: solve [R | C] y = e_v, keep the C-part
  Mat<K> basis = hstack(F, R, out.section);
  auto basis_inv = inverse(F, basis);
  if (!basis_inv) throw Inconsistent("R + complement is not a direct sum");
  out.projector = Mat<K>(out.dim, V, F.zero());
  for (std::size_t i = 0; i < out.dim; ++i)
    for (std::size_t v = 0; v < V; ++v)
      out.projector(i, v) = (*basis_inv)(R.cols + i, v);

  // induced structure: (n (x) a) . x = n (x) ax ; coaction from Delta on a
  RightWhm<K>& M = out.module;
  M.mdim = out.dim;
  M.action = Tensor3<K>(out.dim, n, out.dim);
  M.coaction = Tensor3<K>(out.dim, out.dim, n);
  detail::TensorRows<K> Dm(A.mult), Dc(A.comult);
  for (std::size_t col = 0; col < out.dim; ++col) {
    std::size_t v = comp[col];
    std::size_t t = v / n, a = v % n;
    // action by b_x
    for (std::uint32_t x = 0; x < n; ++x) {
      auto [lo, hi] = Dm.row((std::uint32_t)a, x);
      Vec<K> img(V, F.zero());
      for (auto it = lo; it != hi; ++it)
        img[t * n + it->k] = F.add(img[t * n + it->k], it->c);
      Vec<K> proj = mat_vec(F, out.projector, img);
      for (std::size_t u = 0; u < out.dim; ++u)
        if (!F.is_zero(proj[u])) M.action.add(col, x, u, proj[u]);
    }
    // coaction: (n (x) a_(1)) (x) a_(2)
    auto [lo, hi] = Dc.row((std::uint32_t)a);
    for (auto it = lo; it != hi; ++it) {
      Vec<K> img(V, F.zero());
      img[t * n + it->j] = it->c;
      Vec<K> proj = mat_vec(F, out.projector, img);
      for (std::size_t u = 0; u < out.dim; ++u)
        if (!F.is_zero(proj[u])) M.coaction.add(col, u, it->k, proj[u]);
    }
  }
  M.action.compress(F);
  M.coaction.compress(F);
  return out;
}

// coinvariants of M carrying their right A^L-module structure
template <class K>
RightAlModule<K> coinvariant_module(const Wha<K>& A, const RightWhm<K>& M) {
  const auto& F = A.F;
  RightAlModule<K> N;
  Mat<K> coinv = coinvariants(A, M);
  N.dim = coinv.cols;
  N.al = counital_subalgebras(A).al;
  for (std::size_t s = 0; s < N.al.cols; ++s) {
    Mat<K> big = whm_action_mat(A, M, Element<K>{mat_col(N.al, s)});
    Mat<K> small(N.dim, N.dim, F.zero());
    for (std::size_t t = 0; t < N.dim; ++t) {
      auto coords = in_span(F, coinv, mat_vec(F, big, mat_col(coinv, t)));
      if (!coords) throw Inconsistent("A^L does not preserve the coinvariants");
      for (std::size_t u = 0; u < N.dim; ++u) small(u, t) = (*coords)[u];
    }
    N.act.push_back(std::move(small));
  }
  return N;
}

// ---------------------------------------------------------------------------
// the Fundamental Theorem isomorphism
// ---------------------------------------------------------------------------

template <class K>
struct FundamentalIso {
  Mat<K> alpha;  // (mdim x dim) quotient -> M, class(n (x) x) -> n . x
  Mat<K> beta;   // (dim x mdim) m -> E(m_0) (x) m_1
  double alpha_beta_residual = 0.0;
  double beta_alpha_residual = 0.0;
  double intertwines_action = 0.0;
  double intertwines_coaction = 0.0;
  Amalgamated<K> amalgamated;
  bool ok(double tol) const {
    return alpha_beta_residual <= tol && beta_alpha_residual <= tol &&
           intertwines_action <= tol && intertwines_coaction <= tol;
  }
};

template <class K>
FundamentalIso<K> fundamental_iso(const Wha<K>& A, const RightWhm<K>& M) {
  const auto& F = A.F;
  const std::size_t m = M.mdim, n = A.dim;
  FundamentalIso<K> out;
  Mat<K> coinv = coinvariants(A, M);
  RightAlModule<K> N = coinvariant_module(A, M);
  out.amalgamated = amalgamated_product(A, N);
  const std::size_t d = out.amalgamated.dim;
  const std::size_t V = N.dim * n;

  // alpha on V: (t, a) -> n_t . b_a, then restrict along the section
  Mat<K> alphaV(m, V, F.zero());
  for (std::size_t t = 0; t < N.dim; ++t)
    for (std::size_t a = 0; a < n; ++a) {
      Mat<K> act = whm_action_mat(A, M, Element<K>{basis_vec(F, n, a)});
      Vec<K> img = mat_vec(F, act, mat_col(coinv, t));
      for (std::size_t u = 0; u < m; ++u) alphaV(u, t * n + a) = img[u];
    }
  out.alpha = mat_mul(F, alphaV, out.amalgamated.section);

  // beta: m -> E(m_0) (x) m_1, coordinates of E(m_0) in the coinvariant basis
  Mat<K> E = whm_projection_matrix(A, M);
  Mat<K> betaV(V, m, F.zero());
  for (std::size_t j = 0; j < m; ++j) {
    Mat<K> co = whm_coaction_mat(A, M, basis_vec(F, m, j));
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t a = 0; a < n; ++a) {
        if (F.is_zero(co(s, a))) continue;
        Vec<K> em = mat_vec(F, E, basis_vec(F, m, s));
        auto coords = in_span(F, coinv, em);
        if (!coords) throw Inconsistent("projection image left the coinvariants");
        for (std::size_t t = 0; t < N.dim; ++t)
          betaV(t * n + a, j) = F.add(betaV(t * n + a, j),
                                      F.mul(co(s, a), (*coords)[t]));
      }
  }
  out.beta = mat_mul(F, out.amalgamated.projector, betaV);

  out.alpha_beta_residual =
      mat_dist(F, mat_mul(F, out.alpha, out.beta), identity(F, m));
  out.beta_alpha_residual =
      mat_dist(F, mat_mul(F, out.beta, out.alpha), identity(F, d));
  if (out.alpha_beta_residual > F.spec.tolerance ||
      out.beta_alpha_residual > F.spec.tolerance)
    throw Inconsistent("fundamental isomorphism failed to invert");

  // alpha intertwines both structures
  double ra = 0, rc = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    Mat<K> lhs = mat_mul(F, whm_action_mat(A, M, Element<K>{basis_vec(F, n, x)}),
                         out.alpha);
    Mat<K> rhs = mat_mul(
        F, out.alpha,
        whm_action_mat(A, out.amalgamated.module, Element<K>{basis_vec(F, n, x)}));
    ra = std::max(ra, mat_dist(F, lhs, rhs));
  }
  for (std::size_t t = 0; t < d; ++t) {
    Mat<K> lhs = whm_coaction_mat(A, M, mat_vec(F, out.alpha, basis_vec(F, d, t)));
    Mat<K> small = whm_coaction_mat(A, out.amalgamated.module, basis_vec(F, d, t));
    Mat<K> rhs = mat_mul(F, out.alpha, small);
    rc = std::max(rc, mat_dist(F, lhs, rhs));
  }
  out.intertwines_action = ra;
  out.intertwines_coaction = rc;
  return out;
}

// ---------------------------------------------------------------------------
// invariants of one-sided modules
// ---------------------------------------------------------------------------

// action given by one matrix per algebra basis element
template <class K>
Mat<K> invariants(const Wha<K>& A, const std::vector<Mat<K>>& act, Side side) {
  const auto& F = A.F;
  const std::size_t m = act.empty() ? 0 : act[0].rows;
  std::vector<Mat<K>> blocks;
  const Mat<K>& P = side == Side::left ? A.pi_l : A.pi_r;
  for (std::size_t i = 0; i < A.dim; ++i) {
    Mat<K> proj_act(m, m, F.zero());
    for (std::size_t t = 0; t < A.dim; ++t)
      if (!F.is_zero(P(t, i)))
        proj_act = mat_add(F, proj_act, mat_scale(F, P(t, i), act[t]));
    blocks.push_back(mat_sub(F, act[i], proj_act));
  }
  return kernel(F, vstack(F, blocks));
}

// the module of Example-3.8 type: carrier = dual A, phi . x = S(x) -> phi,
// coaction dual to left multiplication on the dual
template <class K>
RightWhm<K> dual_regular_whm(const Wha<K>& A) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  RightWhm<K> M;
  M.mdim = n;
  M.action = Tensor3<K>(n, n, n);
  M.coaction = Tensor3<K>(n, n, n);
  // act(j,a,i) = sum_t m(i,t,j) S(t,a)
  for (const auto& e : A.mult.entries)
    for (std::size_t a = 0; a < n; ++a)
      if (!F.is_zero(A.antipode(e.j, a)))
        M.action.add(e.k, a, e.i, F.mul(e.c, A.antipode(e.j, a)));
  // coact(j, k, a) = d(k, a, j)
  for (const auto& e : A.comult.entries) M.coaction.add(e.k, e.i, e.j, e.c);
  M.action.compress(F);
  M.coaction.compress(F);
  return M;
}

// A itself with action = multiplication and coaction = Delta
template <class K>
RightWhm<K> regular_whm(const Wha<K>& A) {
  RightWhm<K> M;
  M.mdim = A.dim;
  M.action = Tensor3<K>(A.dim, A.dim, A.dim);
  M.coaction = Tensor3<K>(A.dim, A.dim, A.dim);
  for (const auto& e : A.mult.entries) M.action.add(e.i, e.j, e.k, e.c);
  for (const auto& e : A.comult.entries) M.coaction.add(e.i, e.j, e.k, e.c);
  M.action.compress(A.F);
  M.coaction.compress(A.F);
  return M;
}

}  // namespace wha
