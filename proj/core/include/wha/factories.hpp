#pragma once

#include "wha/structure.hpp"

namespace wha {

// ---------------------------------------------------------------------------
// group algebras
// ---------------------------------------------------------------------------

// table[i][j] = index of g_i g_j; validated to be a group before building
inline void validate_group_table(const std::vector<std::vector<std::size_t>>& t) {
  const std::size_t n = t.size();
  if (n == 0) throw Error("group table is empty");
  for (auto& row : t) {
    if (row.size() != n) throw Error("group table is not square");
    for (auto v : row)
      if (v >= n) throw Error("group table entry out of range");
  }
  std::size_t e = n;
  for (std::size_t i = 0; i < n; ++i) {
    bool unit = true;
    for (std::size_t j = 0; j < n; ++j) unit &= t[i][j] == j && t[j][i] == j;
    if (unit) {
      e = i;
      break;
    }
  }
  if (e == n) throw Error("group table has no identity element");
  for (std::size_t i = 0; i < n; ++i) {
    bool has_inv = false;
    for (std::size_t j = 0; j < n; ++j) has_inv |= t[i][j] == e && t[j][i] == e;
    if (!has_inv) throw Error("group table element has no inverse");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (t[t[i][j]][k] != t[i][t[j][k]])
          throw Error("group table is not associative");
}

inline std::size_t group_identity(const std::vector<std::vector<std::size_t>>& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool unit = true;
    for (std::size_t j = 0; j < t.size(); ++j)
      unit &= t[i][j] == j && t[j][i] == j;
    if (unit) return i;
  }
  throw Error("group table has no identity element");
}

template <class K>
Wha<K> group_algebra(const FieldOps<K>& F,
                     const std::vector<std::vector<std::size_t>>& table,
                     std::vector<std::string> labels = {},
                     bool with_star = false) {
  validate_group_table(table);
  const std::size_t n = table.size();
  std::size_t e = group_identity(table);
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == e) inv[i] = j;

  Tensor3<K> m(n, n, n), d(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.add(i, j, table[i][j], F.one());
  for (std::size_t k = 0; k < n; ++k) d.add(k, k, k, F.one());
  Vec<K> unit(n, F.zero());
  unit[e] = F.one();
  Vec<K> counit(n, F.one());
  Mat<K> S(n, n, F.zero());
  for (std::size_t j = 0; j < n; ++j) S(inv[j], j) = F.one();
  std::optional<Mat<K>> star;
  if (with_star) star = S;  // g* = g^{-1}
  return Wha<K>::make(F, n, std::move(labels), std::move(m), std::move(unit),
                      std::move(d), std::move(counit), std::move(S),
                      std::move(star));
}

inline std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

// S_m as permutations in lexicographic order
inline std::vector<std::vector<std::size_t>> symmetric_group_table(std::size_t m) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  auto find = [&](const std::vector<std::size_t>& q) {
    for (std::size_t t = 0; t < n; ++t)
      if (perms[t] == q) return t;
    throw Error("permutation composition fell outside the table");
  };
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> comp(m);
      for (std::size_t t = 0; t < m; ++t) comp[t] = perms[i][perms[j][t]];
      table[i][j] = find(comp);
    }
  return table;
}

// ---------------------------------------------------------------------------
// groupoid algebras
// ---------------------------------------------------------------------------

// morphisms g : source(g) -> target(g); g.h defined iff source(g) = target(h)
struct Groupoid {
  std::size_t objects = 0;
  std::vector<std::size_t> source, target;
  std::vector<std::vector<long>> compose;  // compose[g][h], -1 when undefined
  std::vector<std::size_t> identity;       // per object
  std::vector<std::size_t> inverse;        // per morphism
  std::vector<std::string> labels;

  std::size_t size() const { return source.size(); }
  void validate() const;
  static Groupoid pair(std::size_t k);
};

inline void Groupoid::validate() const {
  const std::size_t n = size();
  if (objects == 0 || n == 0) throw Error("groupoid is empty");
  if (target.size() != n || compose.size() != n || inverse.size() != n ||
      identity.size() != objects)
    throw Error("groupoid arrays have inconsistent sizes");
  for (std::size_t g = 0; g < n; ++g) {
    if (source[g] >= objects || target[g] >= objects)
      throw Error("groupoid morphism endpoints out of range");
    if (compose[g].size() != n) throw Error("groupoid composition not square");
    for (std::size_t h = 0; h < n; ++h) {
      bool composable = source[g] == target[h];
      if (composable != (compose[g][h] >= 0))
        throw Error("groupoid composition defined on the wrong pairs");
      if (composable) {
        std::size_t k = (std::size_t)compose[g][h];
        if (k >= n || source[k] != source[h] || target[k] != target[g])
          throw Error("groupoid composition endpoints do not match");
      }
    }
  }
  for (std::size_t u = 0; u < objects; ++u) {
    std::size_t e = identity[u];
    if (source[e] != u || target[e] != u)
      throw Error("groupoid identity has wrong endpoints");
  }
  for (std::size_t g = 0; g < n; ++g) {
    std::size_t gi = inverse[g];
    if (compose[g][gi] < 0 || (std::size_t)compose[g][gi] != identity[target[g]] ||
        compose[gi][g] < 0 || (std::size_t)compose[gi][g] != identity[source[g]])
      throw Error("groupoid inverse is wrong");
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k) {
        if (compose[h][k] < 0) continue;
        if (compose[g][h] < 0) {
          if (source[g] == target[(std::size_t)compose[h][k]])
            throw Error("groupoid composition is not associative");
          continue;
        }
        long lhs = compose[(std::size_t)compose[g][h]][k];
        long rhs = compose[g][(std::size_t)compose[h][k]];
        if (lhs != rhs) throw Error("groupoid composition is not associative");
      }
}

inline Groupoid Groupoid::pair(std::size_t k) {
  Groupoid G;
  G.objects = k;
  const std::size_t n = k * k;  // morphism (a,b) : b -> a
  G.source.resize(n);
  G.target.resize(n);
  G.inverse.resize(n);
  G.identity.resize(k);
  G.compose.assign(n, std::vector<long>(n, -1));
  auto id = [&](std::size_t a, std::size_t b) { return a * k + b; };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      G.target[id(a, b)] = a;
      G.source[id(a, b)] = b;
      G.inverse[id(a, b)] = id(b, a);
      G.labels.push_back("e" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  for (std::size_t a = 0; a < k; ++a) G.identity[a] = id(a, a);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        G.compose[id(a, b)][id(b, c)] = (long)id(a, c);
  return G;
}

// connected groupoid on k objects with isotropy given by a group table;
// morphisms (a, b, g) : b -> a with (a,b,g)(b,c,h) = (a,c,gh). The pair
// groupoid is the trivial-isotropy case.
inline Groupoid connected_groupoid(std::size_t k,
                                   const std::vector<std::vector<std::size_t>>& t) {
  validate_group_table(t);
  const std::size_t m = t.size();
  std::size_t e = group_identity(t);
  std::vector<std::size_t> ginv(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (t[i][j] == e) ginv[i] = j;

  Groupoid G;
  G.objects = k;
  const std::size_t n = k * k * m;
  auto id = [&](std::size_t a, std::size_t b, std::size_t g) {
    return (a * k + b) * m + g;
  };
  G.source.resize(n);
  G.target.resize(n);
  G.inverse.resize(n);
  G.identity.resize(k);
  G.compose.assign(n, std::vector<long>(n, -1));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t g = 0; g < m; ++g) {
        G.target[id(a, b, g)] = a;
        G.source[id(a, b, g)] = b;
        G.inverse[id(a, b, g)] = id(b, a, ginv[g]);
        G.labels.push_back("e" + std::to_string(a + 1) + std::to_string(b + 1) +
                           "g" + std::to_string(g));
      }
  for (std::size_t a = 0; a < k; ++a) G.identity[a] = id(a, a, e);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t g = 0; g < m; ++g)
          for (std::size_t h = 0; h < m; ++h)
            G.compose[id(a, b, g)][id(b, c, h)] = (long)id(a, c, t[g][h]);
  return G;
}

template <class K>
Wha<K> groupoid_algebra(const FieldOps<K>& F, const Groupoid& G,
                        bool with_star = false) {
  G.validate();
  const std::size_t n = G.size();
  Tensor3<K> m(n, n, n), d(n, n, n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (G.compose[g][h] >= 0)
        m.add(g, h, (std::size_t)G.compose[g][h], F.one());
  for (std::size_t g = 0; g < n; ++g) d.add(g, g, g, F.one());
  Vec<K> unit(n, F.zero());
  for (std::size_t u = 0; u < G.objects; ++u) unit[G.identity[u]] = F.one();
  Vec<K> counit(n, F.one());
  Mat<K> S(n, n, F.zero());
  for (std::size_t g = 0; g < n; ++g) S(G.inverse[g], g) = F.one();
  std::optional<Mat<K>> star;
  if (with_star) star = S;
  return Wha<K>::make(F, n, G.labels, std::move(m), std::move(unit),
                      std::move(d), std::move(counit), std::move(S),
                      std::move(star));
}

// ---------------------------------------------------------------------------
// the B (x) B^op construction
// ---------------------------------------------------------------------------

// plain finite-dimensional algebra with chosen basis
template <class K>
struct SeparableAlgebra {
  std::size_t dim = 0;
  Tensor3<K> mult;
  Vec<K> unit;
  std::vector<std::string> labels;
  std::optional<Mat<K>> star;  // antilinear involution on B, when present
};

// full matrix algebra M_d, basis e_{ab} at index a*d+b
template <class K>
SeparableAlgebra<K> matrix_algebra(const FieldOps<K>& F, std::size_t d) {
  SeparableAlgebra<K> B;
  B.dim = d * d;
  B.mult = Tensor3<K>(B.dim, B.dim, B.dim);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        B.mult.add(a * d + b, b * d + c, a * d + c, F.one());
  B.unit = Vec<K>(B.dim, F.zero());
  for (std::size_t a = 0; a < d; ++a) B.unit[a * d + a] = F.one();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      B.labels.push_back("e" + std::to_string(a + 1) + std::to_string(b + 1));
  Mat<K> st(B.dim, B.dim, F.zero());  // e_{ab}* = e_{ba}
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) st(b * d + a, a * d + b) = F.one();
  B.star = st;
  return B;
}

template <class K>
SeparableAlgebra<K> diagonal_algebra(const FieldOps<K>& F, std::size_t d) {
  SeparableAlgebra<K> B;
  B.dim = d;
  B.mult = Tensor3<K>(d, d, d);
  for (std::size_t a = 0; a < d; ++a) B.mult.add(a, a, a, F.one());
  B.unit = Vec<K>(d, F.one());
  for (std::size_t a = 0; a < d; ++a)
    B.labels.push_back("p" + std::to_string(a + 1));
  B.star = identity(F, d);
  return B;
}

template <class K>
struct BbopData {
  Wha<K> algebra;
  Mat<K> dual_basis;   // columns f_i in B coordinates
  Mat<K> theta;        // modular automorphism of E on B
  std::vector<CheckLine> properties;  // the construction property ledger a)-f)
  bool all_properties_pass() const {
    for (auto& l : properties)
      if (!l.pass) return false;
    return true;
  }
};

namespace detail {

template <class K>
Vec<K> alg_mul(const FieldOps<K>& F, const Tensor3<K>& mult, const Vec<K>& x,
               const Vec<K>& y) {
  Vec<K> z(mult.d2, F.zero());
  for (const auto& e : mult.entries)
    if (!F.is_zero(x[e.i]) && !F.is_zero(y[e.j]))
      z[e.k] = F.add(z[e.k], F.mul(e.c, F.mul(x[e.i], y[e.j])));
  return z;
}

}  // namespace detail

// index of a non-degenerate functional E on B, sum_i f_i e_i
template <class K>
Vec<K> functional_index(const FieldOps<K>& F, const SeparableAlgebra<K>& B,
                        const Vec<K>& E) {
  Mat<K> G(B.dim, B.dim, F.zero());
  for (const auto& e : B.mult.entries)
    if (!F.is_zero(E[e.k])) G(e.i, e.j) = F.add(G(e.i, e.j), F.mul(e.c, E[e.k]));
  auto Ginv = inverse(F, G);
  if (!Ginv) throw Error("functional E is degenerate");
  Vec<K> idx(B.dim, F.zero());
  for (std::size_t j = 0; j < B.dim; ++j) {
    Vec<K> fj = mat_col(*Ginv, j);
    Vec<K> fe = detail::alg_mul(F, B.mult, fj, basis_vec(F, B.dim, j));
    idx = vec_add(F, idx, fe);
  }
  return idx;
}

// When the index of E is an invertible scalar multiple c of 1, returns (cE, c);
// errors otherwise. The rescaled functional has index 1.
template <class K>
std::pair<Vec<K>, K> rescale_to_index_one(const FieldOps<K>& F,
                                          const SeparableAlgebra<K>& B,
                                          const Vec<K>& E) {
  Vec<K> idx = functional_index(F, B, E);
  // find c with idx = c * unit
  K c = F.zero();
  bool found = false;
  for (std::size_t t = 0; t < B.dim; ++t)
    if (!F.is_zero(B.unit[t])) {
      c = F.div(idx[t], B.unit[t]);
      found = true;
      break;
    }
  if (!found || F.is_zero(c))
    throw Error("index of E is not an invertible scalar; no scalar rescale exists");
  if (vec_dist(F, idx, vec_scale(F, c, B.unit)) > F.spec.tolerance)
    throw Error("index of E is not a scalar multiple of 1");
  return {vec_scale(F, c, E), c};
}

// The WHA B (x) B^op built from a separable algebra B and a
// non-degenerate index-1 functional E. `gamma`, when given, must implement the
// modular automorphism of E (theta = Ad_gamma); it is used to equip the result
// with the star structure (x (x) y)* = x* (x) gamma y* gamma^{-1}.
template <class K>
BbopData<K> bbop(const FieldOps<K>& F, const SeparableAlgebra<K>& B,
                 const Vec<K>& E, std::optional<Vec<K>> gamma = std::nullopt,
                 std::uint64_t seed = 0) {
  const std::size_t m = B.dim;
  double tol = F.spec.tolerance;
  BbopData<K> out;
  auto push = [&](const std::string& name, double res) {
    out.properties.push_back({name, res, res <= tol});
  };

  Mat<K> G(m, m, F.zero());
  for (const auto& e : B.mult.entries)
    if (!F.is_zero(E[e.k])) G(e.i, e.j) = F.add(G(e.i, e.j), F.mul(e.c, E[e.k]));
  auto Ginv_opt = inverse(F, G);
  if (!Ginv_opt) throw Error("functional E is degenerate");
  Mat<K> Ginv = *Ginv_opt;
  out.dual_basis = Ginv;  // f_j = column j

  // index must be 1
  {
    Vec<K> idx = functional_index(F, B, E);
    if (vec_dist(F, idx, B.unit) > tol)
      throw Error("index of E must be 1 (use the index rescale helper)");
  }

  // theta = G^{-1} G^T
  out.theta = mat_mul(F, Ginv, transpose(G));
  auto theta_of = [&](const Vec<K>& x) { return mat_vec(F, out.theta, x); };
  auto Eval = [&](const Vec<K>& x) {
    K acc = F.zero();
    for (std::size_t t = 0; t < m; ++t) acc = F.add(acc, F.mul(E[t], x[t]));
    return acc;
  };
  auto f_of = [&](std::size_t j) { return mat_col(Ginv, j); };

  // property ledger
  {
    // a) basis independence of sum f_i (x) e_i, checked against a random
    //    change of basis
    Mat<K> T(m, m, F.zero());
    for (std::size_t j = 0; j < m; ++j) {
      Vec<K> fj = f_of(j);
      for (std::size_t a = 0; a < m; ++a)
        T(a, j) = F.add(T(a, j), fj[a]);  // T[a,j] = (f_j)_a, tensor sum f_j (x) e_j
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    Mat<K> P(m, m, F.zero());
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (auto& c : P.a) c = F.random(rng);
      if (rank_of(F, P) == m) break;
    }
    if (rank_of(F, P) != m) throw Error("could not draw an invertible basis change");
    // e'_j = sum_a P(a,j) e_a, Gram' = P^T G P, f'_j = columns of Gram'^{-1} in e' coords
    Mat<K> Gp = mat_mul(F, transpose(P), mat_mul(F, G, P));
    Mat<K> Gpinv = *inverse(F, Gp);
    // sum_j f'_j (x) e'_j in original coordinates
    Mat<K> T2(m, m, F.zero());
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t s = 0; s < m; ++s)
          for (std::size_t b = 0; b < m; ++b)
            T2(a, j) = F.add(T2(a, j), F.mul(F.mul(P(a, s), Gpinv(s, b)),
                                             F.mul(P(j, b), F.one())));
    // T2[a,j] = sum_{s,b} P(a,s) Gpinv(s,b) P(j,b)
    push("a) basis independence", mat_dist(F, T, T2));

    // b) dual-basis identity
    double res = 0;
    for (std::size_t x = 0; x < m; ++x) {
      Vec<K> acc1(m, F.zero()), acc2(m, F.zero());
      for (std::size_t i = 0; i < m; ++i) {
        Vec<K> fi = f_of(i);
        K exf = Eval(detail::alg_mul(F, B.mult, basis_vec(F, m, x), fi));
        acc1 = vec_add(F, acc1, vec_scale(F, exf, basis_vec(F, m, i)));
        K eex = Eval(detail::alg_mul(F, B.mult, basis_vec(F, m, i),
                                     basis_vec(F, m, x)));
        acc2 = vec_add(F, acc2, vec_scale(F, eex, fi));
      }
      res = std::max(res, vec_dist(F, acc1, basis_vec(F, m, x)));
      res = std::max(res, vec_dist(F, acc2, basis_vec(F, m, x)));
    }
    push("b) E-dual bases", res);

    // c) sum f_i e_i = 1
    push("c) index one",
         vec_dist(F, functional_index(F, B, E), B.unit));

    // d) sum x f_i (x) e_i = sum f_i (x) e_i x
    double res_d = 0;
    for (std::size_t x = 0; x < m; ++x) {
      Mat<K> l(m, m, F.zero()), r(m, m, F.zero());
      for (std::size_t i = 0; i < m; ++i) {
        Vec<K> xf = detail::alg_mul(F, B.mult, basis_vec(F, m, x), f_of(i));
        Vec<K> ex = detail::alg_mul(F, B.mult, basis_vec(F, m, i),
                                    basis_vec(F, m, x));
        Vec<K> fi = f_of(i);
        for (std::size_t a = 0; a < m; ++a) {
          l(a, i) = F.add(l(a, i), xf[a]);
          for (std::size_t b = 0; b < m; ++b)
            r(a, b) = F.add(r(a, b), F.mul(fi[a], ex[b]));
        }
      }
      res_d = std::max(res_d, mat_dist(F, l, r));
    }
    push("d) bimodule shift", res_d);

    // e) sum f_i (x) x e_i = sum f_i theta(x) (x) e_i
    double res_e = 0;
    for (std::size_t x = 0; x < m; ++x) {
      Mat<K> l(m, m, F.zero()), r(m, m, F.zero());
      Vec<K> tx = theta_of(basis_vec(F, m, x));
      for (std::size_t i = 0; i < m; ++i) {
        Vec<K> fi = f_of(i);
        Vec<K> xe = detail::alg_mul(F, B.mult, basis_vec(F, m, x),
                                    basis_vec(F, m, i));
        Vec<K> ft = detail::alg_mul(F, B.mult, fi, tx);
        for (std::size_t a = 0; a < m; ++a) {
          for (std::size_t b = 0; b < m; ++b)
            l(a, b) = F.add(l(a, b), F.mul(fi[a], xe[b]));
          r(a, i) = F.add(r(a, i), ft[a]);
        }
      }
      res_e = std::max(res_e, mat_dist(F, l, r));
    }
    push("e) modular shift", res_e);

    // f) sum f_i (x) e_i = sum e_i (x) theta^{-1}(f_i) = sum theta(e_i) (x) f_i
    auto theta_inv = inverse(F, out.theta);
    if (!theta_inv) throw Error("modular automorphism is singular");
    Mat<K> t1(m, m, F.zero()), t2(m, m, F.zero()), t3(m, m, F.zero());
    for (std::size_t i = 0; i < m; ++i) {
      Vec<K> fi = f_of(i);
      Vec<K> tfi = mat_vec(F, *theta_inv, fi);
      Vec<K> tei = theta_of(basis_vec(F, m, i));
      for (std::size_t a = 0; a < m; ++a) {
        t1(a, i) = F.add(t1(a, i), fi[a]);
        t2(i, a) = F.add(t2(i, a), tfi[a]);
        for (std::size_t b = 0; b < m; ++b)
          t3(a, b) = F.add(t3(a, b), F.mul(tei[a], fi[b]));
      }
    }
    double res_f = std::max(mat_dist(F, t1, t2), mat_dist(F, t1, t3));
    push("f) theta twists of the duality tensor", res_f);
  }

  // assemble A = B (x) B^op, basis (i,j) at i*m + j
  const std::size_t n = m * m;
  auto id = [&](std::size_t i, std::size_t j) { return i * m + j; };
  Tensor3<K> mult(n, n, n), comult(n, n, n);
  for (const auto& e1 : B.mult.entries)
    for (const auto& e2 : B.mult.entries)
      mult.add(id(e1.i, e2.j), id(e1.j, e2.i), id(e1.k, e2.k),
               F.mul(e1.c, e2.c));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t p = 0; p < m; ++p) {
        Vec<K> fp = f_of(p);
        for (std::size_t jp = 0; jp < m; ++jp)
          if (!F.is_zero(fp[jp]))
            comult.add(id(i, j), id(i, jp), id(p, j), fp[jp]);
      }
  Vec<K> unit(n, F.zero());
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      unit[id(a, b)] = F.mul(B.unit[a], B.unit[b]);
  Vec<K> counit(n, F.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      counit[id(i, j)] = G(i, j);
  Mat<K> S(n, n, F.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t q = 0; q < m; ++q)
        if (!F.is_zero(out.theta(q, i))) S(id(j, q), id(i, j)) = out.theta(q, i);

  std::optional<Mat<K>> star;
  if (gamma && B.star) {
    // (x (x) y)* = x* (x) gamma y* gamma^{-1}
    Mat<K> Lg(m, m, F.zero()), Rg(m, m, F.zero());
    for (const auto& e : B.mult.entries) {
      if (!F.is_zero((*gamma)[e.i]))
        Lg(e.k, e.j) = F.add(Lg(e.k, e.j), F.mul(e.c, (*gamma)[e.i]));
      if (!F.is_zero((*gamma)[e.j]))
        Rg(e.k, e.i) = F.add(Rg(e.k, e.i), F.mul(e.c, (*gamma)[e.j]));
    }
    auto Lg_inv = inverse(F, Lg);
    if (!Lg_inv) throw Error("gamma is not invertible");
    Mat<K> ad_gamma = mat_mul(F, Lg, *inverse(F, Rg));  // x -> gamma x gamma^{-1}
    if (mat_dist(F, ad_gamma, out.theta) > tol)
      throw Error("gamma does not implement the modular automorphism of E");
    Mat<K> gstar = mat_mul(F, ad_gamma, *B.star);
    Mat<K> st(n, n, F.zero());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t c = 0; c < m; ++c) {
            K v = F.mul((*B.star)(a, i), gstar(c, j));
            if (!F.is_zero(v)) st(id(a, c), id(i, j)) = F.add(st(id(a, c), id(i, j)), v);
          }
    star = st;
  }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      labels.push_back(B.labels[i] + "(x)" + B.labels[j]);

  out.algebra = Wha<K>::make(F, n, std::move(labels), std::move(mult),
                             std::move(unit), std::move(comult),
                             std::move(counit), std::move(S), std::move(star));

  // construction-level facts: Pi^L(x (x) y) = xy (x) 1, Pi^R(x (x) y) = 1 (x) y theta(x)
  {
    const Wha<K>& A = out.algebra;
    double res_l = 0, res_r = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Vec<K> want_l(n, F.zero()), want_r(n, F.zero());
        Vec<K> xy = detail::alg_mul(F, B.mult, basis_vec(F, m, i),
                                    basis_vec(F, m, j));
        Vec<K> yth = detail::alg_mul(F, B.mult, basis_vec(F, m, j),
                                     theta_of(basis_vec(F, m, i)));
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) {
            want_l[id(a, b)] = F.mul(xy[a], B.unit[b]);
            want_r[id(a, b)] = F.mul(B.unit[a], yth[b]);
          }
        Element<K> x{basis_vec(F, n, id(i, j))};
        res_l = std::max(res_l, vec_dist(F, pi(A, x, Side::left).c, want_l));
        res_r = std::max(res_r, vec_dist(F, pi(A, x, Side::right).c, want_r));
      }
    push("Pi^L(x(x)y) = xy(x)1", res_l);
    push("Pi^R(x(x)y) = 1(x)y.theta(x)", res_r);

    // l = sum f_i (x) e_i is a normalized non-degenerate left integral
    Vec<K> l(n, F.zero());
    for (std::size_t i = 0; i < m; ++i) {
      Vec<K> fi = f_of(i);
      for (std::size_t a = 0; a < m; ++a)
        l[id(a, i)] = F.add(l[id(a, i)], fi[a]);
    }
    Element<K> le{l};
    double res_int = 0;
    for (std::size_t t = 0; t < n; ++t) {
      Element<K> bt{basis_vec(F, n, t)};
      res_int = std::max(res_int, vec_dist(F, mul(A, bt, le).c,
                                           mul(A, pi(A, bt, Side::left), le).c));
    }
    push("l = sum f_i(x)e_i is a left integral", res_int);
    push("l normalized", vec_dist(F, pi(A, le, Side::left).c, A.unit));
    push("l non-degenerate",
         rank_of(F, elem_gram(A, le)) == n ? 0.0 : 1.0);
  }

  return out;
}

// Existence criterion for the Haar integral of bbop(B, E): sum_i f_i gamma^2 e_i
// must be invertible in B, where gamma implements the modular automorphism of
// E. The dual has a Haar integral iff E(1) != 0.
template <class K>
struct BbopHaarCriterion {
  bool haar_expected = false;
  bool dual_haar_expected = false;
};

template <class K>
BbopHaarCriterion<K> bbop_haar_criterion(const FieldOps<K>& F,
                                         const SeparableAlgebra<K>& B,
                                         const Vec<K>& E, const Vec<K>& gamma) {
  const std::size_t m = B.dim;
  Mat<K> G(m, m, F.zero());
  for (const auto& e : B.mult.entries)
    if (!F.is_zero(E[e.k])) G(e.i, e.j) = F.add(G(e.i, e.j), F.mul(e.c, E[e.k]));
  auto Ginv = inverse(F, G);
  if (!Ginv) throw Error("functional E is degenerate");
  Vec<K> g2 = detail::alg_mul(F, B.mult, gamma, gamma);
  Vec<K> acc(m, F.zero());
  for (std::size_t i = 0; i < m; ++i) {
    Vec<K> fi = mat_col(*Ginv, i);
    Vec<K> t = detail::alg_mul(F, B.mult, fi, g2);
    acc = vec_add(F, acc, detail::alg_mul(F, B.mult, t, basis_vec(F, m, i)));
  }
  // invertible iff left multiplication by acc has full rank
  Mat<K> L(m, m, F.zero());
  for (const auto& e : B.mult.entries)
    if (!F.is_zero(acc[e.i])) L(e.k, e.j) = F.add(L(e.k, e.j), F.mul(e.c, acc[e.i]));
  BbopHaarCriterion<K> out;
  out.haar_expected = rank_of(F, L) == m;
  K e1 = F.zero();
  for (std::size_t t = 0; t < m; ++t) e1 = F.add(e1, F.mul(E[t], B.unit[t]));
  out.dual_haar_expected = !F.is_zero(e1);
  return out;
}

// ---------------------------------------------------------------------------
// the M_2-over-GF(2) fixture with Delta(e_ij) = e_ij (x) e_ij
// ---------------------------------------------------------------------------

inline Wha<Gf> m2z2() {
  FieldOps<Gf> F{FieldSpec::gf(2)};
  return groupoid_algebra(F, Groupoid::pair(2));
}

// ---------------------------------------------------------------------------
// direct sums
// ---------------------------------------------------------------------------

template <class K>
Wha<K> direct_sum(const Wha<K>& A1, const Wha<K>& A2) {
  if (A1.F.spec.kind != A2.F.spec.kind || A1.F.spec.p != A2.F.spec.p)
    throw Error("direct_sum: field mismatch");
  const auto& F = A1.F;
  const std::size_t n1 = A1.dim, n = A1.dim + A2.dim;
  Tensor3<K> m(n, n, n), d(n, n, n);
  for (const auto& e : A1.mult.entries) m.add(e.i, e.j, e.k, e.c);
  for (const auto& e : A2.mult.entries) m.add(e.i + n1, e.j + n1, e.k + n1, e.c);
  for (const auto& e : A1.comult.entries) d.add(e.i, e.j, e.k, e.c);
  for (const auto& e : A2.comult.entries) d.add(e.i + n1, e.j + n1, e.k + n1, e.c);
  Vec<K> unit(n, F.zero()), counit(n, F.zero());
  for (std::size_t i = 0; i < n1; ++i) {
    unit[i] = A1.unit[i];
    counit[i] = A1.counit[i];
  }
  for (std::size_t i = 0; i < A2.dim; ++i) {
    unit[n1 + i] = A2.unit[i];
    counit[n1 + i] = A2.counit[i];
  }
  Mat<K> S(n, n, F.zero());
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) S(i, j) = A1.antipode(i, j);
  for (std::size_t i = 0; i < A2.dim; ++i)
    for (std::size_t j = 0; j < A2.dim; ++j)
      S(n1 + i, n1 + j) = A2.antipode(i, j);
  std::optional<Mat<K>> star;
  if (A1.star && A2.star) {
    Mat<K> st(n, n, F.zero());
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) st(i, j) = (*A1.star)(i, j);
    for (std::size_t i = 0; i < A2.dim; ++i)
      for (std::size_t j = 0; j < A2.dim; ++j)
        st(n1 + i, n1 + j) = (*A2.star)(i, j);
    star = st;
  }
  std::vector<std::string> labels = A1.labels;
  for (const auto& s : A2.labels) labels.push_back(s + "'");
  return Wha<K>::make(F, n, std::move(labels), std::move(m), std::move(unit),
                      std::move(d), std::move(counit), std::move(S),
                      std::move(star));
}

}  // namespace wha
