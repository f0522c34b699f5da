#pragma once

#include <optional>
#include <string>

#include "wha/linalg.hpp"

namespace wha {

// Coordinate vector of an algebra element, relative to the stored basis.
template <class K>
struct Element {
  Vec<K> c;
};

// Coordinate vector of a functional, relative to the dual basis
// {beta^i}, <beta^i, b_j> = delta_ij.
template <class K>
struct Functional {
  Vec<K> c;
};

enum class Side { left, right };
enum class TwistKind { op, cop, opcop };

// Weak Hopf algebra as structure-constant tensors over a field:
//   mult(i,j,k):    b_i b_j = sum_k mult(i,j,k) b_k
//   comult(k,i,j):  Delta(b_k) = sum_{i,j} comult(k,i,j) b_i (x) b_j
//                   (first tensor leg is Sweedler leg "(1)")
//   unit:           coordinates of 1
//   counit:         eps(b_i)
//   antipode:       S(b_j) = sum_i antipode(i,j) b_i
//   star:           optional antilinear involution, (b_j)* = sum_i star(i,j) b_i
//
// Values are immutable after construction; the commonly used derived matrices
// are precomputed by make().
template <class K>
struct Wha {
  FieldOps<K> F;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  Tensor3<K> mult;
  Vec<K> unit;
  Tensor3<K> comult;
  Vec<K> counit;
  Mat<K> antipode;
  std::optional<Mat<K>> star;

  // derived
  Mat<K> delta_unit;  // Delta(1)[a,b]
  Mat<K> pi_l;        // matrix of Pi^L
  Mat<K> pi_r;        // matrix of Pi^R

  static Wha make(FieldOps<K> F, std::size_t n, std::vector<std::string> labels,
                  Tensor3<K> mult, Vec<K> unit, Tensor3<K> comult, Vec<K> counit,
                  Mat<K> antipode, std::optional<Mat<K>> star = std::nullopt);

  Element<K> elem(Vec<K> v) const { return {std::move(v)}; }
  Element<K> one() const { return {unit}; }
  Functional<K> eps() const { return {counit}; }
};

// ---------------------------------------------------------------------------
// basic evaluations
// ---------------------------------------------------------------------------

template <class K>
K pairing(const Wha<K>& A, const Functional<K>& phi, const Element<K>& x) {
  K acc = A.F.zero();
  for (std::size_t i = 0; i < A.dim; ++i)
    acc = A.F.add(acc, A.F.mul(phi.c[i], x.c[i]));
  return acc;
}

template <class K>
K eps_of(const Wha<K>& A, const Element<K>& x) {
  K acc = A.F.zero();
  for (std::size_t i = 0; i < A.dim; ++i)
    acc = A.F.add(acc, A.F.mul(A.counit[i], x.c[i]));
  return acc;
}

template <class K>
Element<K> mul(const Wha<K>& A, const Element<K>& x, const Element<K>& y) {
  Vec<K> z(A.dim, A.F.zero());
  for (const auto& e : A.mult.entries) {
    if (A.F.is_zero(x.c[e.i]) || A.F.is_zero(y.c[e.j])) continue;
    z[e.k] = A.F.add(z[e.k], A.F.mul(e.c, A.F.mul(x.c[e.i], y.c[e.j])));
  }
  return {z};
}

// Delta(x) as an n x n coefficient matrix; row = first leg.
template <class K>
Mat<K> comul_mat(const Wha<K>& A, const Element<K>& x) {
  Mat<K> D(A.dim, A.dim, A.F.zero());
  for (const auto& e : A.comult.entries) {
    if (A.F.is_zero(x.c[e.i])) continue;  // e.i indexes the source leg k
    D(e.j, e.k) = A.F.add(D(e.j, e.k), A.F.mul(e.c, x.c[e.i]));
  }
  return D;
}

// matrix of y -> x y
template <class K>
Mat<K> left_mult_mat(const Wha<K>& A, const Element<K>& x) {
  Mat<K> L(A.dim, A.dim, A.F.zero());
  for (const auto& e : A.mult.entries)
    if (!A.F.is_zero(x.c[e.i]))
      L(e.k, e.j) = A.F.add(L(e.k, e.j), A.F.mul(e.c, x.c[e.i]));
  return L;
}

// matrix of y -> y x
template <class K>
Mat<K> right_mult_mat(const Wha<K>& A, const Element<K>& x) {
  Mat<K> R(A.dim, A.dim, A.F.zero());
  for (const auto& e : A.mult.entries)
    if (!A.F.is_zero(x.c[e.j]))
      R(e.k, e.i) = A.F.add(R(e.k, e.i), A.F.mul(e.c, x.c[e.j]));
  return R;
}

template <class K>
Element<K> apply(const Wha<K>& A, const Mat<K>& M, const Element<K>& x) {
  return {mat_vec(A.F, M, x.c)};
}

template <class K>
Element<K> antipode_of(const Wha<K>& A, const Element<K>& x) {
  return {mat_vec(A.F, A.antipode, x.c)};
}

template <class K>
Element<K> pi(const Wha<K>& A, const Element<K>& x, Side side) {
  return {mat_vec(A.F, side == Side::left ? A.pi_l : A.pi_r, x.c)};
}

// antilinear star application
template <class K>
Element<K> star_of(const Wha<K>& A, const Element<K>& x) {
  if (!A.star) throw Error("algebra carries no star structure");
  Vec<K> cx(A.dim, A.F.zero());
  for (std::size_t i = 0; i < A.dim; ++i) cx[i] = A.F.conj(x.c[i]);
  return {mat_vec(A.F, *A.star, cx)};
}

// ---------------------------------------------------------------------------
// Sweedler arrows
// ---------------------------------------------------------------------------
//
//   x -> phi = phi_(1) <phi_(2), x>      (A acting on its dual from the left)
//   phi <- x = <phi_(1), x> phi_(2)
//   phi -> x = x_(1) <phi, x_(2)>        (dual acting on A)
//   x <- phi = <phi, x_(1)> x_(2)

template <class K>
Functional<K> rharpoon(const Wha<K>& A, const Element<K>& x,
                       const Functional<K>& phi) {
  Vec<K> r(A.dim, A.F.zero());
  for (const auto& e : A.mult.entries) {
    // r_i += m(i,j,k) x_j phi_k
    if (A.F.is_zero(x.c[e.j]) || A.F.is_zero(phi.c[e.k])) continue;
    r[e.i] = A.F.add(r[e.i], A.F.mul(e.c, A.F.mul(x.c[e.j], phi.c[e.k])));
  }
  return {r};
}

template <class K>
Functional<K> lharpoon(const Wha<K>& A, const Functional<K>& phi,
                       const Element<K>& x) {
  Vec<K> r(A.dim, A.F.zero());
  for (const auto& e : A.mult.entries) {
    // r_j += m(i,j,k) x_i phi_k
    if (A.F.is_zero(x.c[e.i]) || A.F.is_zero(phi.c[e.k])) continue;
    r[e.j] = A.F.add(r[e.j], A.F.mul(e.c, A.F.mul(x.c[e.i], phi.c[e.k])));
  }
  return {r};
}

template <class K>
Element<K> rharpoon(const Wha<K>& A, const Functional<K>& phi,
                    const Element<K>& x) {
  Vec<K> r(A.dim, A.F.zero());
  for (const auto& e : A.comult.entries) {
    // r_i += d(k,i,j) x_k phi_j
    if (A.F.is_zero(x.c[e.i]) || A.F.is_zero(phi.c[e.k])) continue;
    r[e.j] = A.F.add(r[e.j], A.F.mul(e.c, A.F.mul(x.c[e.i], phi.c[e.k])));
  }
  return {r};
}

template <class K>
Element<K> lharpoon(const Wha<K>& A, const Element<K>& x,
                    const Functional<K>& phi) {
  Vec<K> r(A.dim, A.F.zero());
  for (const auto& e : A.comult.entries) {
    // r_j += d(k,i,j) x_k phi_i
    if (A.F.is_zero(x.c[e.i]) || A.F.is_zero(phi.c[e.j])) continue;
    r[e.k] = A.F.add(r[e.k], A.F.mul(e.c, A.F.mul(x.c[e.i], phi.c[e.j])));
  }
  return {r};
}

// product in the dual algebra, <phi psi, x> = <phi (x) psi, Delta x>
template <class K>
Functional<K> dual_mul(const Wha<K>& A, const Functional<K>& phi,
                       const Functional<K>& psi) {
  Vec<K> r(A.dim, A.F.zero());
  for (const auto& e : A.comult.entries) {
    // r_k += d(k,i,j) phi_i psi_j   (e.i = k, e.j = i, e.k = j)
    if (A.F.is_zero(phi.c[e.j]) || A.F.is_zero(psi.c[e.k])) continue;
    r[e.i] = A.F.add(r[e.i], A.F.mul(e.c, A.F.mul(phi.c[e.j], psi.c[e.k])));
  }
  return {r};
}

template <class K>
Functional<K> dual_antipode_of(const Wha<K>& A, const Functional<K>& phi) {
  // <S^(phi), x> = <phi, S(x)>  =>  coordinates transform by S^T
  Vec<K> r(A.dim, A.F.zero());
  for (std::size_t j = 0; j < A.dim; ++j)
    for (std::size_t i = 0; i < A.dim; ++i)
      r[j] = A.F.add(r[j], A.F.mul(A.antipode(i, j), phi.c[i]));
  return {r};
}

// Gram matrix of a functional, G[i,j] = f(b_i b_j); also the matrix of
// f_R : x -> (x -> f), whose invertibility is non-degeneracy of f.
template <class K>
Mat<K> func_gram(const Wha<K>& A, const Functional<K>& f) {
  Mat<K> G(A.dim, A.dim, A.F.zero());
  for (const auto& e : A.mult.entries)
    if (!A.F.is_zero(f.c[e.k]))
      G(e.i, e.j) = A.F.add(G(e.i, e.j), A.F.mul(e.c, f.c[e.k]));
  return G;
}

// Gram of an element as a functional on the dual, G[i,j] = <beta^i beta^j, l>;
// equals the coefficient matrix of Delta(l) and the matrix of phi -> (phi -> l).
template <class K>
Mat<K> elem_gram(const Wha<K>& A, const Element<K>& l) {
  return comul_mat(A, l);
}

// ---------------------------------------------------------------------------
// construction, dual, twists
// ---------------------------------------------------------------------------

template <class K>
Wha<K> Wha<K>::make(FieldOps<K> F, std::size_t n, std::vector<std::string> labels,
                    Tensor3<K> mult, Vec<K> unit, Tensor3<K> comult, Vec<K> counit,
                    Mat<K> antipode, std::optional<Mat<K>> star) {
  F.spec.validate();
  Wha A;
  A.F = F;
  A.dim = n;
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
  if (labels.size() != n) throw Error("label count does not match dimension");
  A.labels = std::move(labels);
  mult.compress(F);
  comult.compress(F);
  if (mult.d0 != n || mult.d1 != n || mult.d2 != n)
    throw Error("mult tensor has wrong dimensions");
  if (comult.d0 != n || comult.d1 != n || comult.d2 != n)
    throw Error("comult tensor has wrong dimensions");
  for (const auto& e : mult.entries)
    if (e.i >= n || e.j >= n || e.k >= n)
      throw Error("mult entry index out of range");
  for (const auto& e : comult.entries)
    if (e.i >= n || e.j >= n || e.k >= n)
      throw Error("comult entry index out of range");
  if (unit.size() != n || counit.size() != n)
    throw Error("unit/counit length does not match dimension");
  if (antipode.rows != n || antipode.cols != n)
    throw Error("antipode matrix has wrong dimensions");
  if (star && (star->rows != n || star->cols != n))
    throw Error("star matrix has wrong dimensions");
  A.mult = std::move(mult);
  A.unit = std::move(unit);
  A.comult = std::move(comult);
  A.counit = std::move(counit);
  A.antipode = std::move(antipode);
  A.star = std::move(star);

  // Delta(1)
  A.delta_unit = Mat<K>(n, n, F.zero());
  for (const auto& e : A.comult.entries)
    if (!F.is_zero(A.unit[e.i]))
      A.delta_unit(e.j, e.k) = F.add(A.delta_unit(e.j, e.k), F.mul(e.c, A.unit[e.i]));

  // Pi^L(x) = eps(1_(1) x) 1_(2),  Pi^R(x) = 1_(1) eps(x 1_(2))
  Mat<K> eps_mul(n, n, F.zero());  // eps(b_a b_j)
  for (const auto& e : A.mult.entries)
    if (!F.is_zero(A.counit[e.k]))
      eps_mul(e.i, e.j) = F.add(eps_mul(e.i, e.j), F.mul(e.c, A.counit[e.k]));
  A.pi_l = Mat<K>(n, n, F.zero());
  A.pi_r = Mat<K>(n, n, F.zero());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const K& w = A.delta_unit(a, b);
      if (F.is_zero(w)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        // Pi^L(b_j) += D1[a,b] eps(b_a b_j) b_b
        A.pi_l(b, j) = F.add(A.pi_l(b, j), F.mul(w, eps_mul(a, j)));
        // Pi^R(b_j) += D1[a,b] eps(b_j b_b) b_a
        A.pi_r(a, j) = F.add(A.pi_r(a, j), F.mul(w, eps_mul(j, b)));
      }
    }
  return A;
}

// involutive dual labeling: strip a trailing ^ or append one
inline std::string dual_label(const std::string& s) {
  if (!s.empty() && s.back() == '^') return s.substr(0, s.size() - 1);
  return s + "^";
}

// Dual WHA on the dual basis: all structure maps transposed through the
// canonical pairing. The double dual is tensor-identical to the original.
template <class K>
Wha<K> dual(const Wha<K>& A) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  Tensor3<K> m(n, n, n), d(n, n, n);
  for (const auto& e : A.comult.entries) m.add(e.j, e.k, e.i, e.c);
  for (const auto& e : A.mult.entries) d.add(e.k, e.i, e.j, e.c);
  std::vector<std::string> labels;
  for (const auto& s : A.labels) labels.push_back(dual_label(s));
  std::optional<Mat<K>> dual_star;
  if (A.star) {
    // <phi*, x> = conj <phi, S(x)*>, so the dual star matrix is
    // (conj(star) . S)^T
    Mat<K> cs(n, n, F.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cs(i, j) = F.conj((*A.star)(i, j));
    dual_star = transpose(mat_mul(F, cs, A.antipode));
  }
  return Wha<K>::make(F, n, std::move(labels), std::move(m), A.counit,
                      std::move(d), A.unit, transpose(A.antipode),
                      std::move(dual_star));
}

// matrix inverse of the antipode; throws if singular
template <class K>
Mat<K> antipode_inverse_mat(const Wha<K>& A) {
  auto inv = inverse(A.F, A.antipode);
  if (!inv) throw Error("antipode matrix is singular: not a weak Hopf algebra");
  return *inv;
}

// op / cop / opcop twists; the antipode flips to its inverse except for opcop
template <class K>
Wha<K> twist(const Wha<K>& A, TwistKind kind) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  Tensor3<K> m(n, n, n), d(n, n, n);
  bool flip_mult = (kind == TwistKind::op || kind == TwistKind::opcop);
  bool flip_comult = (kind == TwistKind::cop || kind == TwistKind::opcop);
  for (const auto& e : A.mult.entries)
    m.add(flip_mult ? e.j : e.i, flip_mult ? e.i : e.j, e.k, e.c);
  for (const auto& e : A.comult.entries)
    d.add(e.i, flip_comult ? e.k : e.j, flip_comult ? e.j : e.k, e.c);
  Mat<K> S = (kind == TwistKind::opcop) ? A.antipode : antipode_inverse_mat(A);
  return Wha<K>::make(F, n, A.labels, std::move(m), A.unit, std::move(d),
                      A.counit, std::move(S), A.star);
}

// exact tensor-by-tensor equality of the six structure tensors
template <class K>
bool tensors_equal(const Wha<K>& A, const Wha<K>& B) {
  if (A.dim != B.dim) return false;
  auto teq = [](const Tensor3<K>& x, const Tensor3<K>& y) {
    if (x.entries.size() != y.entries.size()) return false;
    for (std::size_t t = 0; t < x.entries.size(); ++t) {
      const auto &a = x.entries[t], &b = y.entries[t];
      if (a.i != b.i || a.j != b.j || a.k != b.k || !(a.c == b.c)) return false;
    }
    return true;
  };
  if (!teq(A.mult, B.mult) || !teq(A.comult, B.comult)) return false;
  if (!(A.unit == B.unit) || !(A.counit == B.counit)) return false;
  if (!(A.antipode.a == B.antipode.a)) return false;
  if (A.star.has_value() != B.star.has_value()) return false;
  if (A.star && !(A.star->a == B.star->a)) return false;
  return true;
}

// largest entrywise deviation across all structure tensors
template <class K>
double tensors_distance(const Wha<K>& A, const Wha<K>& B) {
  if (A.dim != B.dim) return 1.0 / 0.0;
  const auto& F = A.F;
  const std::size_t n = A.dim;
  auto dense = [&](const Tensor3<K>& t) {
    std::vector<K> d(n * n * n, F.zero());
    for (const auto& e : t.entries)
      d[(e.i * n + e.j) * n + e.k] = F.add(d[(e.i * n + e.j) * n + e.k], e.c);
    return d;
  };
  double m = 0;
  auto dm = dense(A.mult), dm2 = dense(B.mult);
  for (std::size_t t = 0; t < dm.size(); ++t)
    m = std::max(m, F.abs_of(F.sub(dm[t], dm2[t])));
  auto dc = dense(A.comult), dc2 = dense(B.comult);
  for (std::size_t t = 0; t < dc.size(); ++t)
    m = std::max(m, F.abs_of(F.sub(dc[t], dc2[t])));
  m = std::max(m, vec_dist(F, A.unit, B.unit));
  m = std::max(m, vec_dist(F, A.counit, B.counit));
  m = std::max(m, mat_dist(F, A.antipode, B.antipode));
  return m;
}

}  // namespace wha
