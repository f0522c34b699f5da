#pragma once

#include "wha/axioms.hpp"

namespace wha {

template <class K>
struct CounitalBases {
  Mat<K> al;  // basis of A^L, columns
  Mat<K> ar;  // basis of A^R
};

// Column-space bases of the Pi^L / Pi^R matrices. Equal dimensions and closure
// under multiplication are re-verified; a failure indicates broken tensors.
template <class K>
CounitalBases<K> counital_subalgebras(const Wha<K>& A) {
  const auto& F = A.F;
  CounitalBases<K> out{column_space(F, A.pi_l), column_space(F, A.pi_r)};
  if (out.al.cols != out.ar.cols)
    throw Inconsistent("dim A^L != dim A^R");
  auto closed = [&](const Mat<K>& B) {
    for (std::size_t s = 0; s < B.cols; ++s)
      for (std::size_t t = 0; t < B.cols; ++t) {
        Element<K> p = mul(A, Element<K>{mat_col(B, s)}, Element<K>{mat_col(B, t)});
        if (!subspace_contains(F, B, p.c)) return false;
      }
    return true;
  };
  if (!closed(out.al) || !closed(out.ar))
    throw Inconsistent("counital subalgebra is not closed under multiplication");
  return out;
}

// images of a set of basis columns under a matrix map
template <class K>
Mat<K> map_basis(const FieldOps<K>& F, const Mat<K>& M, const Mat<K>& basis) {
  return mat_mul(F, M, basis);
}

// kappa^L : A^L -> dual A^R, x -> (x -> 1^),  kappa^R : A^R -> dual A^L.
// Certified: multiplicative, bijective onto its image, inverse given by the
// dual-side kappa, and the restricted canonical pairing non-degenerate.
template <class K>
struct KappaData {
  Mat<K> full;     // n x n matrix of the map on all of A (dual coordinates out)
  Mat<K> domain;   // basis of A^L (resp. A^R)
  Mat<K> image;    // images of the domain basis
  Mat<K> inverse_full;  // matrix of the dual-side kappa
  double mult_residual = 0.0;
  double inverse_residual = 0.0;
  bool bijective = false;
  bool image_in_expected = false;  // inside dual-A^R (resp. dual-A^L)
  bool pairing_nondegenerate = false;
  bool ok() const;
  double tol = 0.0;
};

template <class K>
bool KappaData<K>::ok() const {
  return mult_residual <= tol && inverse_residual <= tol && bijective &&
         image_in_expected && pairing_nondegenerate;
}

template <class K>
KappaData<K> kappa(const Wha<K>& A, Side side) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  auto bases = counital_subalgebras(A);
  KappaData<K> out;
  out.tol = F.spec.tolerance;

  Mat<K> eps_mul(n, n, F.zero());
  for (const auto& e : A.mult.entries)
    if (!F.is_zero(A.counit[e.k]))
      eps_mul(e.i, e.j) = F.add(eps_mul(e.i, e.j), F.mul(e.c, A.counit[e.k]));

  if (side == Side::left) {
    out.full = eps_mul;                       // (x -> 1^)_i = eps(b_i x)
    out.inverse_full = transpose(A.delta_unit);  // phi -> 1 <- phi
    out.domain = bases.al;
  } else {
    out.full = transpose(eps_mul);            // (1^ <- x)_i = eps(x b_i)
    out.inverse_full = A.delta_unit;          // phi -> phi -> 1
    out.domain = bases.ar;
  }
  out.image = map_basis(F, out.full, out.domain);
  out.bijective = rank_of(F, out.image) == out.domain.cols;

  // image lands in the expected dual counital subalgebra
  Mat<K> expected = column_space(F, side == Side::left ? transpose(A.pi_r)
                                                       : transpose(A.pi_l));
  out.image_in_expected = true;
  for (std::size_t t = 0; t < out.image.cols; ++t)
    out.image_in_expected &=
        subspace_contains(F, expected, mat_col(out.image, t));

  // multiplicativity on the domain basis
  double mres = 0;
  for (std::size_t s = 0; s < out.domain.cols; ++s)
    for (std::size_t t = 0; t < out.domain.cols; ++t) {
      Element<K> x{mat_col(out.domain, s)}, y{mat_col(out.domain, t)};
      Functional<K> lhs = dual_mul(A, Functional<K>{mat_vec(F, out.full, x.c)},
                                   Functional<K>{mat_vec(F, out.full, y.c)});
      Functional<K> rhs{mat_vec(F, out.full, mul(A, x, y).c)};
      mres = std::max(mres, vec_dist(F, lhs.c, rhs.c));
    }
  out.mult_residual = mres;

  // inverse is the dual-side kappa
  double ires = 0;
  for (std::size_t t = 0; t < out.domain.cols; ++t) {
    Vec<K> back = mat_vec(F, out.inverse_full, mat_vec(F, out.full, mat_col(out.domain, t)));
    ires = std::max(ires, vec_dist(F, back, mat_col(out.domain, t)));
  }
  out.inverse_residual = ires;

  // restricted canonical pairing: Gram of image vs domain has full rank
  Mat<K> gram = mat_mul(F, transpose(out.image), out.domain);
  out.pairing_nondegenerate = rank_of(F, gram) == out.domain.cols;

  if (!out.ok())
    throw Inconsistent("kappa certification failed");
  return out;
}

// ---------------------------------------------------------------------------
// centers
// ---------------------------------------------------------------------------

template <class K>
Mat<K> center_basis(const Wha<K>& A) {
  const auto& F = A.F;
  std::vector<Mat<K>> blocks;
  for (std::size_t i = 0; i < A.dim; ++i) {
    Element<K> bi{basis_vec(F, A.dim, i)};
    blocks.push_back(mat_sub(F, left_mult_mat(A, bi), right_mult_mat(A, bi)));
  }
  return kernel(F, vstack(F, blocks));
}

template <class K>
struct CentersData {
  Mat<K> center, zl, zr, z, hypercenter;
  bool kappa_zl_is_zhat = false;   // kappa^L(Z^L) = Z^
  bool kappa_zr_is_zhat = false;   // kappa^R(Z^R) = Z^
  bool kappa_z_is_zhat_r = false;  // kappa^L(Z) = Z^R of the dual
  bool hypercenter_dims_match = false;
  double common_restriction_residual = 0.0;
};

template <class K>
CentersData<K> centers(const Wha<K>& A) {
  const auto& F = A.F;
  auto bases = counital_subalgebras(A);
  CentersData<K> out;
  out.center = center_basis(A);
  out.zl = intersect(F, bases.al, out.center);
  out.zr = intersect(F, bases.ar, out.center);
  out.z = intersect(F, bases.al, bases.ar);
  out.hypercenter = intersect(F, out.zl, out.zr);

  Wha<K> Ahat = dual(A);
  Mat<K> al_hat = column_space(F, Ahat.pi_l);
  Mat<K> ar_hat = column_space(F, Ahat.pi_r);
  Mat<K> center_hat = center_basis(Ahat);
  Mat<K> z_hat = intersect(F, al_hat, ar_hat);
  Mat<K> zr_hat = intersect(F, ar_hat, center_hat);
  Mat<K> zl_hat = intersect(F, al_hat, center_hat);
  Mat<K> hyper_hat = intersect(F, zl_hat, zr_hat);

  auto kl = kappa(A, Side::left);
  auto kr = kappa(A, Side::right);
  out.kappa_zl_is_zhat =
      subspace_equal(F, map_basis(F, kl.full, out.zl), z_hat);
  out.kappa_zr_is_zhat =
      subspace_equal(F, map_basis(F, kr.full, out.zr), z_hat);
  out.kappa_z_is_zhat_r =
      subspace_equal(F, map_basis(F, kl.full, out.z), zr_hat) &&
      subspace_equal(F, map_basis(F, kr.full, out.z), zl_hat);
  out.hypercenter_dims_match = out.hypercenter.cols == hyper_hat.cols;

  double res = 0;  // the two isomorphisms agree on the hypercenter
  for (std::size_t t = 0; t < out.hypercenter.cols; ++t) {
    Vec<K> h = mat_col(out.hypercenter, t);
    res = std::max(res, vec_dist(F, mat_vec(F, kl.full, h), mat_vec(F, kr.full, h)));
  }
  out.common_restriction_residual = res;
  return out;
}

// ---------------------------------------------------------------------------
// antipode certification
// ---------------------------------------------------------------------------

template <class K>
struct AntipodeData {
  Mat<K> inverse;
  double condition_estimate = 0.0;  // ||S|| * ||S^-1|| (max-entry norms)
  CheckLine maps_al_to_ar, unit_invariant, counit_invariant;
  CheckLine antimultiplicative, anticomultiplicative, s2_fixes_delta_unit;
  bool pass() const {
    return maps_al_to_ar.pass && unit_invariant.pass && counit_invariant.pass &&
           antimultiplicative.pass && anticomultiplicative.pass &&
           s2_fixes_delta_unit.pass;
  }
};

template <class K>
AntipodeData<K> antipode_inverse(const Wha<K>& A) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  AntipodeData<K> out;
  out.inverse = antipode_inverse_mat(A);
  out.condition_estimate =
      mat_norm(F, A.antipode) * mat_norm(F, out.inverse) * double(n);

  auto bases = counital_subalgebras(A);
  bool swap_ok =
      subspace_equal(F, map_basis(F, A.antipode, bases.al), bases.ar) &&
      subspace_equal(F, map_basis(F, A.antipode, bases.ar), bases.al);
  out.maps_al_to_ar = {"S(A^L) = A^R", swap_ok ? 0.0 : 1.0, swap_ok};

  double ru = vec_dist(F, mat_vec(F, A.antipode, A.unit), A.unit);
  out.unit_invariant = {"S(1) = 1", ru, ru <= tol};

  double rc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    K acc = F.zero();
    for (std::size_t i = 0; i < n; ++i)
      acc = F.add(acc, F.mul(A.counit[i], A.antipode(i, j)));
    rc = std::max(rc, F.abs_of(F.sub(acc, A.counit[j])));
  }
  out.counit_invariant = {"eps o S = eps", rc, rc <= tol};

  double ram = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Element<K> bi{basis_vec(F, n, i)}, bj{basis_vec(F, n, j)};
      Vec<K> lhs = mat_vec(F, A.antipode, mul(A, bi, bj).c);
      Vec<K> rhs = mul(A, antipode_of(A, bj), antipode_of(A, bi)).c;
      ram = std::max(ram, vec_dist(F, lhs, rhs));
    }
  out.antimultiplicative = {"S antimultiplicative", ram, ram <= tol};

  double rac = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Mat<K> lhs = comul_mat(A, antipode_of(A, Element<K>{basis_vec(F, n, k)}));
    // (S (x) S)(Delta^op(b_k))
    Mat<K> rhs(n, n, F.zero());
    detail::TensorRows<K> D(A.comult);
    auto [lo, hi] = D.row((std::uint32_t)k);
    for (auto it = lo; it != hi; ++it)
      for (std::size_t a = 0; a < n; ++a) {
        const K& sa = A.antipode(a, it->k);
        if (F.is_zero(sa)) continue;
        for (std::size_t b = 0; b < n; ++b) {
          const K& sb = A.antipode(b, it->j);
          if (F.is_zero(sb)) continue;
          rhs(a, b) = F.add(rhs(a, b), F.mul(it->c, F.mul(sa, sb)));
        }
      }
    rac = std::max(rac, mat_dist(F, lhs, rhs));
  }
  out.anticomultiplicative = {"S anticomultiplicative", rac, rac <= tol};

  Mat<K> S2 = mat_mul(F, A.antipode, A.antipode);
  Mat<K> conj = mat_mul(F, S2, mat_mul(F, A.delta_unit, transpose(S2)));
  double r2 = mat_dist(F, conj, A.delta_unit);
  out.s2_fixes_delta_unit = {"(S^2 (x) S^2) Delta(1) = Delta(1)", r2, r2 <= tol};
  return out;
}

// ---------------------------------------------------------------------------
// trivial representation
// ---------------------------------------------------------------------------

template <class K>
struct TrivialRep {
  Mat<K> carrier;            // basis of dual-A^R, n x r
  std::vector<Mat<K>> rho;   // action of b_i on the carrier, r x r
  std::size_t endo_dim = 0;
  bool endo_is_d_of_zl = false;
  bool endo_is_d_of_zr = false;
  bool restriction_to_al_faithful = false;
  bool pure = false;
};

template <class K>
TrivialRep<K> trivial_representation(const Wha<K>& A) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  TrivialRep<K> out;
  out.carrier = column_space(F, transpose(A.pi_r));
  const std::size_t r = out.carrier.cols;

  for (std::size_t i = 0; i < n; ++i) {
    Mat<K> rho(r, r, F.zero());
    Element<K> bi{basis_vec(F, n, i)};
    for (std::size_t t = 0; t < r; ++t) {
      Functional<K> phi{mat_col(out.carrier, t)};
      Functional<K> img = rharpoon(A, bi, phi);
      auto coords = in_span(F, out.carrier, img.c);
      if (!coords)
        throw Inconsistent("trivial representation does not preserve dual A^R");
      for (std::size_t s = 0; s < r; ++s) rho(s, t) = (*coords)[s];
    }
    out.rho.push_back(std::move(rho));
  }

  // commutant of the image: T rho_i = rho_i T, T vectorized row-major
  std::vector<Mat<K>> blocks;
  for (const auto& rho : out.rho) {
    Mat<K> B(r * r, r * r, F.zero());
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) {
          B(a * r + b, c * r + b) = F.add(B(a * r + b, c * r + b), rho(a, c));
          B(a * r + b, a * r + c) = F.sub(B(a * r + b, a * r + c), rho(c, b));
        }
    blocks.push_back(std::move(B));
  }
  Mat<K> commutant = kernel(F, vstack(F, blocks));
  out.endo_dim = commutant.cols;

  auto cent = centers(A);
  auto span_of_action = [&](const Mat<K>& zgen) {
    std::vector<Vec<K>> cols;
    for (std::size_t t = 0; t < zgen.cols; ++t) {
      Vec<K> zc = mat_col(zgen, t);
      Mat<K> rz(r, r, F.zero());
      for (std::size_t i = 0; i < n; ++i)
        if (!F.is_zero(zc[i])) rz = mat_add(F, rz, mat_scale(F, zc[i], out.rho[i]));
      Vec<K> v(r * r, F.zero());
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) v[a * r + b] = rz(a, b);
      cols.push_back(std::move(v));
    }
    return cols_to_mat(F, r * r, cols);
  };
  out.endo_is_d_of_zl = subspace_equal(F, commutant, span_of_action(cent.zl));
  out.endo_is_d_of_zr = subspace_equal(F, commutant, span_of_action(cent.zr));

  auto bases = counital_subalgebras(A);
  Mat<K> al_action = span_of_action(bases.al);
  out.restriction_to_al_faithful = rank_of(F, al_action) == bases.al.cols;
  out.pure = cent.zl.cols == 1;
  return out;
}

// ---------------------------------------------------------------------------
// grouplike test
// ---------------------------------------------------------------------------

template <class K>
double grouplike_residual(const Wha<K>& A, const Element<K>& x) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  Mat<K> dx = comul_mat(A, x);
  Mat<K> lhs(n, n, F.zero()), rhs(n, n, F.zero());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const K& w = A.delta_unit(p, q);
      if (F.is_zero(w)) continue;
      Vec<K> xp = mul(A, x, Element<K>{basis_vec(F, n, p)}).c;
      Vec<K> xq = mul(A, x, Element<K>{basis_vec(F, n, q)}).c;
      Vec<K> px = mul(A, Element<K>{basis_vec(F, n, p)}, x).c;
      Vec<K> qx = mul(A, Element<K>{basis_vec(F, n, q)}, x).c;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          lhs(a, b) = F.add(lhs(a, b), F.mul(w, F.mul(xp[a], xq[b])));
          rhs(a, b) = F.add(rhs(a, b), F.mul(w, F.mul(px[a], qx[b])));
        }
    }
  double res = std::max(mat_dist(F, dx, lhs), mat_dist(F, dx, rhs));
  res = std::max(res, vec_dist(F, mul(A, antipode_of(A, x), x).c, A.unit));
  return res;
}

template <class K>
bool is_grouplike(const Wha<K>& A, const Element<K>& x) {
  return grouplike_residual(A, x) <= A.F.spec.tolerance;
}

// ---------------------------------------------------------------------------
// section-2 calculus invariants (run by `verify` and by the test suites)
// ---------------------------------------------------------------------------

template <class K>
std::vector<CheckLine> calculus_invariants(const Wha<K>& A) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  std::vector<CheckLine> out;
  auto push = [&](const std::string& name, double res) {
    out.push_back({name, res, res <= tol});
  };
  auto bases = counital_subalgebras(A);
  detail::TensorRows<K> D(A.comult);

  Mat<K> eps_mul(n, n, F.zero());
  for (const auto& e : A.mult.entries)
    if (!F.is_zero(A.counit[e.k]))
      eps_mul(e.i, e.j) = F.add(eps_mul(e.i, e.j), F.mul(e.c, A.counit[e.k]));

  // eps(x Pi^L(y)) = eps(xy), eps(Pi^R(x) y) = eps(xy)
  {
    Mat<K> l = mat_mul(F, eps_mul, A.pi_l);
    Mat<K> r = mat_mul(F, transpose(A.pi_r), eps_mul);
    double res = std::max(mat_dist(F, l, eps_mul), mat_dist(F, r, eps_mul));
    push("eps absorbs Pi", res);
  }
  // Pi idempotent
  {
    double res = std::max(
        mat_dist(F, mat_mul(F, A.pi_l, A.pi_l), A.pi_l),
        mat_dist(F, mat_mul(F, A.pi_r, A.pi_r), A.pi_r));
    push("Pi o Pi = Pi", res);
  }
  // Delta(1) in A^R (x) A^L
  {
    bool ok = true;
    for (std::size_t b = 0; b < n; ++b)
      ok &= subspace_contains(F, bases.ar, mat_col(A.delta_unit, b));
    Mat<K> dt = transpose(A.delta_unit);
    for (std::size_t a = 0; a < n; ++a)
      ok &= subspace_contains(F, bases.al, mat_col(dt, a));
    push("Delta(1) in A^R x A^L", ok ? 0.0 : 1.0);
  }
  // Delta(x^L) = 1_(1) x^L (x) 1_(2)  and the A^R mirror
  {
    double res = 0;
    for (std::size_t t = 0; t < bases.al.cols; ++t) {
      Element<K> xl{mat_col(bases.al, t)};
      Mat<K> lhs = comul_mat(A, xl);
      Mat<K> rhs(n, n, F.zero());
      for (std::size_t p = 0; p < n; ++p) {
        Vec<K> px = mul(A, Element<K>{basis_vec(F, n, p)}, xl).c;
        for (std::size_t b = 0; b < n; ++b) {
          const K& w = A.delta_unit(p, b);
          if (F.is_zero(w)) continue;
          for (std::size_t a = 0; a < n; ++a)
            rhs(a, b) = F.add(rhs(a, b), F.mul(w, px[a]));
        }
      }
      res = std::max(res, mat_dist(F, lhs, rhs));
    }
    for (std::size_t t = 0; t < bases.ar.cols; ++t) {
      Element<K> xr{mat_col(bases.ar, t)};
      Mat<K> lhs = comul_mat(A, xr);
      Mat<K> rhs(n, n, F.zero());
      for (std::size_t q = 0; q < n; ++q) {
        Vec<K> xq = mul(A, xr, Element<K>{basis_vec(F, n, q)}).c;
        for (std::size_t a = 0; a < n; ++a) {
          const K& w = A.delta_unit(a, q);
          if (F.is_zero(w)) continue;
          for (std::size_t b = 0; b < n; ++b)
            rhs(a, b) = F.add(rhs(a, b), F.mul(w, xq[b]));
        }
      }
      res = std::max(res, mat_dist(F, lhs, rhs));
    }
    push("coproduct of counital elements", res);
  }
  // x_(1) (x) Pi^L(x_(2)) = 1_(1) x (x) 1_(2) and mirror
  {
    double res = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Element<K> bk{basis_vec(F, n, k)};
      Mat<K> dk = comul_mat(A, bk);
      Mat<K> lhs = mat_mul(F, dk, transpose(A.pi_l));
      Mat<K> rhs(n, n, F.zero());
      for (std::size_t p = 0; p < n; ++p) {
        Vec<K> pk = mul(A, Element<K>{basis_vec(F, n, p)}, bk).c;
        for (std::size_t b = 0; b < n; ++b) {
          const K& w = A.delta_unit(p, b);
          if (F.is_zero(w)) continue;
          for (std::size_t a = 0; a < n; ++a)
            rhs(a, b) = F.add(rhs(a, b), F.mul(w, pk[a]));
        }
      }
      res = std::max(res, mat_dist(F, lhs, rhs));

      Mat<K> lhs2 = mat_mul(F, A.pi_r, dk);
      Mat<K> rhs2(n, n, F.zero());
      for (std::size_t q = 0; q < n; ++q) {
        Vec<K> kq = mul(A, bk, Element<K>{basis_vec(F, n, q)}).c;
        for (std::size_t a = 0; a < n; ++a) {
          const K& w = A.delta_unit(a, q);
          if (F.is_zero(w)) continue;
          for (std::size_t b = 0; b < n; ++b)
            rhs2(a, b) = F.add(rhs2(a, b), F.mul(w, kq[b]));
        }
      }
      res = std::max(res, mat_dist(F, lhs2, rhs2));
    }
    push("Sweedler leg projections", res);
  }
  // x^L y^R = y^R x^L
  {
    double res = 0;
    for (std::size_t s = 0; s < bases.al.cols; ++s)
      for (std::size_t t = 0; t < bases.ar.cols; ++t) {
        Element<K> xl{mat_col(bases.al, s)}, yr{mat_col(bases.ar, t)};
        res = std::max(res, vec_dist(F, mul(A, xl, yr).c, mul(A, yr, xl).c));
      }
    push("A^L and A^R commute", res);
  }
  // separability identities and idempotents
  {
    double res = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto [lo, hi] = D.row((std::uint32_t)k);
      for (std::size_t t = 0; t < bases.ar.cols; ++t) {
        Element<K> yr{mat_col(bases.ar, t)};
        Element<K> syr = antipode_of(A, yr);
        Mat<K> lhs(n, n, F.zero()), rhs(n, n, F.zero());
        for (auto it = lo; it != hi; ++it) {
          Vec<K> iy = mul(A, Element<K>{basis_vec(F, n, it->j)}, yr).c;
          Vec<K> js = mul(A, Element<K>{basis_vec(F, n, it->k)}, syr).c;
          for (std::size_t a = 0; a < n; ++a) {
            lhs(a, it->k) = F.add(lhs(a, it->k), F.mul(it->c, iy[a]));
            rhs(it->j, a) = F.add(rhs(it->j, a), F.mul(it->c, js[a]));
          }
        }
        res = std::max(res, mat_dist(F, lhs, rhs));
      }
      for (std::size_t t = 0; t < bases.al.cols; ++t) {
        Element<K> yl{mat_col(bases.al, t)};
        Element<K> syl = antipode_of(A, yl);
        Mat<K> lhs(n, n, F.zero()), rhs(n, n, F.zero());
        for (auto it = lo; it != hi; ++it) {
          Vec<K> lj = mul(A, yl, Element<K>{basis_vec(F, n, it->k)}).c;
          Vec<K> si = mul(A, syl, Element<K>{basis_vec(F, n, it->j)}).c;
          for (std::size_t a = 0; a < n; ++a) {
            lhs(it->j, a) = F.add(lhs(it->j, a), F.mul(it->c, lj[a]));
            rhs(a, it->k) = F.add(rhs(a, it->k), F.mul(it->c, si[a]));
          }
        }
        res = std::max(res, mat_dist(F, lhs, rhs));
      }
    }
    push("separability identities", res);

    // q^L = S(1_(1)) (x) 1_(2),  q^R = 1_(1) (x) S(1_(2))
    auto check_idem = [&](bool left) {
      Mat<K> q(n, n, F.zero());
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t b = 0; b < n; ++b) {
          const K& w = A.delta_unit(p, b);
          if (F.is_zero(w)) continue;
          if (left)
            for (std::size_t a = 0; a < n; ++a)
              q(a, b) = F.add(q(a, b), F.mul(w, A.antipode(a, p)));
          else
            for (std::size_t a = 0; a < n; ++a)
              q(p, a) = F.add(q(p, a), F.mul(w, A.antipode(a, b)));
        }
      // mu(q) = 1
      Vec<K> mu(n, F.zero());
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (!F.is_zero(q(a, b))) {
            Vec<K> ab = mul(A, Element<K>{basis_vec(F, n, a)},
                            Element<K>{basis_vec(F, n, b)}).c;
            for (std::size_t t = 0; t < n; ++t)
              mu[t] = F.add(mu[t], F.mul(q(a, b), ab[t]));
          }
      double r = vec_dist(F, mu, A.unit);
      // (x (x) 1) q = q (1 (x) x) over the subalgebra
      const Mat<K>& gen = left ? bases.al : bases.ar;
      for (std::size_t t = 0; t < gen.cols; ++t) {
        Element<K> x{mat_col(gen, t)};
        Mat<K> lhs(n, n, F.zero()), rhs(n, n, F.zero());
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            if (F.is_zero(q(a, b))) continue;
            Vec<K> xa = mul(A, x, Element<K>{basis_vec(F, n, a)}).c;
            Vec<K> bx = mul(A, Element<K>{basis_vec(F, n, b)}, x).c;
            for (std::size_t s = 0; s < n; ++s) {
              lhs(s, b) = F.add(lhs(s, b), F.mul(q(a, b), xa[s]));
              rhs(a, s) = F.add(rhs(a, s), F.mul(q(a, b), bx[s]));
            }
          }
        r = std::max(r, mat_dist(F, lhs, rhs));
      }
      return r;
    };
    push("separability idempotent A^L", check_idem(true));
    push("separability idempotent A^R", check_idem(false));
  }
  // original antipode axioms on every basis element
  {
    double ra = 0, rb = 0, rc = 0, rd = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
      Mat<K> la(n, n, F.zero()), lb(n, n, F.zero());
      Mat<K> lc(n, n, F.zero()), ld(n, n, F.zero());
      auto [lo, hi] = D.row(k);
      for (auto it = lo; it != hi; ++it) {
        auto [l2, h2] = D.row(it->j);
        for (auto jt = l2; jt != h2; ++jt) {
          // legs (i, j, l) = (jt->j, jt->k, it->k)
          K w = F.mul(it->c, jt->c);
          std::uint32_t i = jt->j, j = jt->k, l = it->k;
          Vec<K> j_sl = mul(A, Element<K>{basis_vec(F, n, j)},
                            antipode_of(A, Element<K>{basis_vec(F, n, l)})).c;
          Vec<K> si_j = mul(A, antipode_of(A, Element<K>{basis_vec(F, n, i)}),
                            Element<K>{basis_vec(F, n, j)}).c;
          Vec<K> sj_l = mul(A, antipode_of(A, Element<K>{basis_vec(F, n, j)}),
                            Element<K>{basis_vec(F, n, l)}).c;
          Vec<K> i_sj = mul(A, Element<K>{basis_vec(F, n, i)},
                            antipode_of(A, Element<K>{basis_vec(F, n, j)})).c;
          for (std::size_t t = 0; t < n; ++t) {
            la(i, t) = F.add(la(i, t), F.mul(w, j_sl[t]));
            lb(t, l) = F.add(lb(t, l), F.mul(w, si_j[t]));
            lc(i, t) = F.add(lc(i, t), F.mul(w, sj_l[t]));
            ld(t, l) = F.add(ld(t, l), F.mul(w, i_sj[t]));
          }
        }
      }
      Element<K> bk{basis_vec(F, n, k)};
      Mat<K> rhs_a(n, n, F.zero()), rhs_b(n, n, F.zero());
      Mat<K> rhs_c(n, n, F.zero()), rhs_d(n, n, F.zero());
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          const K& w = A.delta_unit(p, q);
          if (F.is_zero(w)) continue;
          Vec<K> pk = mul(A, Element<K>{basis_vec(F, n, p)}, bk).c;
          Vec<K> kq = mul(A, bk, Element<K>{basis_vec(F, n, q)}).c;
          Vec<K> kp = mul(A, bk, Element<K>{basis_vec(F, n, p)}).c;
          Vec<K> qk = mul(A, Element<K>{basis_vec(F, n, q)}, bk).c;
          for (std::size_t t = 0; t < n; ++t) {
            rhs_a(t, q) = F.add(rhs_a(t, q), F.mul(w, pk[t]));
            rhs_b(p, t) = F.add(rhs_b(p, t), F.mul(w, kq[t]));
            for (std::size_t s = 0; s < n; ++s) {
              rhs_c(t, s) = F.add(rhs_c(t, s),
                                  F.mul(w, F.mul(kp[t], A.antipode(s, q))));
              rhs_d(s, t) = F.add(rhs_d(s, t),
                                  F.mul(w, F.mul(A.antipode(s, p), qk[t])));
            }
          }
        }
      ra = std::max(ra, mat_dist(F, la, rhs_a));
      rb = std::max(rb, mat_dist(F, lb, rhs_b));
      rc = std::max(rc, mat_dist(F, lc, rhs_c));
      rd = std::max(rd, mat_dist(F, ld, rhs_d));
    }
    push("antipode axiom x1 (x) x2 S(x3)", ra);
    push("antipode axiom S(x1) x2 (x) x3", rb);
    push("antipode axiom x1 (x) S(x2) x3", rc);
    push("antipode axiom x1 S(x2) (x) x3", rd);
  }
  // four arrow identities
  {
    double res = 0;
    Functional<K> one_hat{A.counit};
    for (std::size_t i = 0; i < n; ++i) {
      Functional<K> phi{basis_vec(F, n, i)};
      for (std::size_t t = 0; t < bases.al.cols; ++t) {
        Element<K> xl{mat_col(bases.al, t)};
        res = std::max(res, vec_dist(F, rharpoon(A, xl, phi).c,
                                     dual_mul(A, rharpoon(A, xl, one_hat), phi).c));
        res = std::max(res, vec_dist(F, lharpoon(A, phi, xl).c,
                                     dual_mul(A, lharpoon(A, one_hat, xl), phi).c));
      }
      for (std::size_t t = 0; t < bases.ar.cols; ++t) {
        Element<K> xr{mat_col(bases.ar, t)};
        res = std::max(res, vec_dist(F, lharpoon(A, phi, xr).c,
                                     dual_mul(A, phi, lharpoon(A, one_hat, xr)).c));
        res = std::max(res, vec_dist(F, rharpoon(A, xr, phi).c,
                                     dual_mul(A, phi, rharpoon(A, xr, one_hat)).c));
      }
    }
    push("arrow identities", res);
  }
  // Pi compositions with S
  {
    Mat<K> SL = mat_mul(F, A.pi_l, A.antipode);
    Mat<K> LR = mat_mul(F, A.pi_l, A.pi_r);
    Mat<K> SR = mat_mul(F, A.antipode, A.pi_r);
    double res = std::max(mat_dist(F, SL, LR), mat_dist(F, LR, SR));
    Mat<K> RS = mat_mul(F, A.pi_r, A.antipode);
    Mat<K> RL = mat_mul(F, A.pi_r, A.pi_l);
    Mat<K> SL2 = mat_mul(F, A.antipode, A.pi_l);
    res = std::max(res, std::max(mat_dist(F, RS, RL), mat_dist(F, RL, SL2)));
    push("Pi and S compositions", res);
  }
  return out;
}

}  // namespace wha
