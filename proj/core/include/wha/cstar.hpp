#pragma once

#include "wha/modules.hpp"
#include "wha/spectral.hpp"

namespace wha {

// Everything here lives over the complex field; positivity of an abstract
// element means a nonnegative spectrum in the GNS representation built from
// the dual Haar state.

using CWha = Wha<Cpx>;
using CElement = Element<Cpx>;
using CFunctional = Functional<Cpx>;

// ---------------------------------------------------------------------------
// star structure
// ---------------------------------------------------------------------------

struct StarReport {
  CheckLine involutive, antimultiplicative, delta_star_map;
  CheckLine unit_star, counit_conjugates, antipode_relation;
  CheckLine subalgebras_star_closed, dual_is_star_wha;
  double tol = 0.0;
  bool pass() const {
    return involutive.pass && antimultiplicative.pass && delta_star_map.pass &&
           unit_star.pass && counit_conjugates.pass && antipode_relation.pass &&
           subalgebras_star_closed.pass && dual_is_star_wha.pass;
  }
};

inline StarReport check_star(const CWha& A, bool check_dual = true) {
  if (!A.star) throw Error("algebra carries no star structure");
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  StarReport out;
  out.tol = tol;
  const Mat<Cpx>& St = *A.star;
  auto line = [&](const std::string& name, double r) {
    return CheckLine{name, r, r <= tol};
  };

  // x** = x  <=>  St . conj(St) = 1
  Mat<Cpx> cSt(n, n, F.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cSt(i, j) = std::conj(St(i, j));
  out.involutive = line("star involutive",
                        mat_dist(F, mat_mul(F, St, cSt), identity(F, n)));

  double r_anti = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CElement bi{basis_vec(F, n, i)}, bj{basis_vec(F, n, j)};
      Vec<Cpx> lhs = star_of(A, mul(A, bi, bj)).c;
      Vec<Cpx> rhs = mul(A, star_of(A, bj), star_of(A, bi)).c;
      r_anti = std::max(r_anti, vec_dist(F, lhs, rhs));
    }
  out.antimultiplicative = line("star antimultiplicative", r_anti);

  double r_delta = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Mat<Cpx> lhs = comul_mat(A, star_of(A, CElement{basis_vec(F, n, k)}));
    // (* (x) *) Delta(b_k), antilinear in the coefficients
    Mat<Cpx> rhs(n, n, F.zero());
    detail::TensorRows<Cpx> D(A.comult);
    auto [lo, hi] = D.row((std::uint32_t)k);
    for (auto it = lo; it != hi; ++it) {
      Cpx w = std::conj(it->c);
      for (std::size_t a = 0; a < n; ++a) {
        if (F.is_zero(St(a, it->j))) continue;
        for (std::size_t b = 0; b < n; ++b)
          rhs(a, b) += w * St(a, it->j) * St(b, it->k);
      }
    }
    r_delta = std::max(r_delta, mat_dist(F, lhs, rhs));
  }
  out.delta_star_map = line("Delta is a star map", r_delta);

  out.unit_star = line("1* = 1", vec_dist(F, star_of(A, A.one()).c, A.unit));

  double r_eps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Cpx lhs = eps_of(A, star_of(A, CElement{basis_vec(F, n, i)}));
    r_eps = std::max(r_eps, std::abs(lhs - std::conj(A.counit[i])));
  }
  out.counit_conjugates = line("eps(x*) = conj eps(x)", r_eps);

  // S(x*)* = S^{-1}(x)
  Mat<Cpx> Sinv = antipode_inverse_mat(A);
  double r_s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    CElement x{basis_vec(F, n, i)};
    Vec<Cpx> lhs = star_of(A, antipode_of(A, star_of(A, x))).c;
    r_s = std::max(r_s, vec_dist(F, lhs, mat_vec(F, Sinv, x.c)));
  }
  out.antipode_relation = line("S(x*)* = S^{-1}(x)", r_s);

  auto bases = counital_subalgebras(A);
  bool closed = true;
  for (std::size_t t = 0; t < bases.al.cols; ++t)
    closed &= subspace_contains(F, bases.al,
                                star_of(A, CElement{mat_col(bases.al, t)}).c);
  for (std::size_t t = 0; t < bases.ar.cols; ++t)
    closed &= subspace_contains(F, bases.ar,
                                star_of(A, CElement{mat_col(bases.ar, t)}).c);
  out.subalgebras_star_closed =
      line("A^L and A^R are star-closed", closed ? 0.0 : 1.0);

  if (check_dual) {
    StarReport dual_rep = check_star(dual(A), false);
    out.dual_is_star_wha = line("dual star structure", dual_rep.pass() ? 0.0 : 1.0);
  } else {
    out.dual_is_star_wha = line("dual star structure", 0.0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// C* certification via the Haar scalar product
// ---------------------------------------------------------------------------

struct CstarCert {
  bool is_cstar = false;
  std::string diagnostics;
  CElement h;         // Haar integral of A
  CFunctional h_hat;  // Haar integral of the dual
  Mat<Cpx> gram;      // G[i,j] = h^(b_i* b_j)
  double min_gram_eig = 0.0;
  Mat<Cpx> gram_sqrt, gram_sqrt_inv;
  double h_selfadjoint_residual = 0.0;
  double counit_positivity_min = 0.0;  // min eps(x*x) over seeded draws
};

inline Mat<Cpx> gns_operator(const CWha& A, const CstarCert& cert,
                             const CElement& z) {
  return mat_mul(A.F, cert.gram_sqrt,
                 mat_mul(A.F, left_mult_mat(A, z), cert.gram_sqrt_inv));
}

// spectrum of a selfadjoint element in the GNS representation; throws if the
// element is not selfadjoint within tolerance
inline std::vector<double> gns_spectrum(const CWha& A, const CstarCert& cert,
                                        const CElement& z) {
  if (vec_dist(A.F, star_of(A, z).c, z.c) >
      A.F.spec.tolerance * std::max(1.0, vec_norm(A.F, z.c)))
    throw Error("gns_spectrum: element is not selfadjoint");
  return hermitian_eig(A.F, gns_operator(A, cert, z)).values;
}

inline bool gns_positive(const CWha& A, const CstarCert& cert, const CElement& z,
                         double* min_eig = nullptr) {
  double scale = std::max(1.0, vec_norm(A.F, z.c));
  if (vec_dist(A.F, star_of(A, z).c, z.c) > A.F.spec.tolerance * scale)
    return false;
  auto spec = gns_spectrum(A, cert, z);
  double m = spec.empty() ? 0.0 : spec.front();
  if (min_eig) *min_eig = m;
  return m >= -A.F.spec.tolerance * scale;
}

// positive square root in the GNS sense, pulled back to an algebra element
inline CElement gns_sqrt(const CWha& A, const CstarCert& cert, const CElement& z,
                         double* pullback_residual = nullptr) {
  const auto& F = A.F;
  Mat<Cpx> R = hermitian_sqrt(F, gns_operator(A, cert, z));
  Mat<Cpx> X = mat_mul(F, cert.gram_sqrt_inv, mat_mul(F, R, cert.gram_sqrt));
  CElement v{mat_vec(F, X, A.unit)};
  if (pullback_residual)
    *pullback_residual = mat_dist(F, left_mult_mat(A, v), X);
  return v;
}

inline CstarCert cstar_certify(const CWha& A, std::uint64_t seed = 0) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  CstarCert out;
  if (!A.star) throw Error("cstar_certify: algebra carries no star structure");
  StarReport star = check_star(A);
  if (!star.pass()) {
    out.diagnostics = "star axioms fail";
    return out;
  }
  HaarData<Cpx> hd = haar(A);
  if (!hd.h) {
    out.diagnostics = "no Haar integral (chi rank " +
                      std::to_string(hd.chi_rank) + " of " + std::to_string(n) + ")";
    return out;
  }
  HaarData<Cpx> hhd = haar(dual(A));
  if (!hhd.h) {
    out.diagnostics = "no Haar integral in the dual";
    return out;
  }
  out.h = *hd.h;
  out.h_hat = CFunctional{hhd.h->c};
  out.h_selfadjoint_residual = vec_dist(F, star_of(A, out.h).c, out.h.c);

  auto hhat_eval = [&](const Vec<Cpx>& x) {
    Cpx acc = 0;
    for (std::size_t t = 0; t < n; ++t) acc += out.h_hat.c[t] * x[t];
    return acc;
  };
  out.gram = Mat<Cpx>(n, n, F.zero());
  for (std::size_t i = 0; i < n; ++i) {
    CElement bi_star = star_of(A, CElement{basis_vec(F, n, i)});
    for (std::size_t j = 0; j < n; ++j)
      out.gram(i, j) =
          hhat_eval(mul(A, bi_star, CElement{basis_vec(F, n, j)}).c);
  }
  if (mat_dist(F, out.gram, conj_transpose(F, out.gram)) >
      tol * std::max(1.0, mat_norm(F, out.gram))) {
    out.diagnostics = "GNS Gram matrix is not Hermitian";
    return out;
  }
  out.min_gram_eig = min_eigenvalue(F, out.gram);
  if (out.min_gram_eig <= tol) {
    out.diagnostics = "GNS Gram matrix is not positive definite (min eig " +
                      std::to_string(out.min_gram_eig) + ")";
    return out;
  }
  out.gram_sqrt = hermitian_sqrt(F, out.gram);
  auto inv = inverse(F, out.gram_sqrt);
  if (!inv) {
    out.diagnostics = "Gram square root is singular";
    return out;
  }
  out.gram_sqrt_inv = *inv;

  // counit positivity on seeded random elements
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  double min_eps = 0.0;
  for (int draw = 0; draw < 16; ++draw) {
    Vec<Cpx> x(n, F.zero());
    for (auto& c : x) c = F.random(rng);
    Cpx val = eps_of(A, mul(A, star_of(A, CElement{x}), CElement{x}));
    min_eps = std::min(min_eps, val.real());
    if (std::abs(val.imag()) > tol * std::max(1.0, std::abs(val))) {
      out.diagnostics = "counit positivity fails (complex value)";
      return out;
    }
  }
  out.counit_positivity_min = min_eps;
  if (min_eps < -tol) {
    out.diagnostics = "counit positivity fails";
    return out;
  }
  out.is_cstar = true;
  return out;
}

// ---------------------------------------------------------------------------
// sectors and vacua
// ---------------------------------------------------------------------------

struct SectorData {
  std::vector<CElement> idempotents;  // minimal central e_r
  std::vector<std::size_t> block_dims;
  std::vector<bool> vacuum;
  std::vector<CElement> zl_q;  // Pi^L(e_q) for vacuum q
  std::vector<CElement> h_q;   // h e_q for vacuum q
  double vacuum_rank_residual = 0.0;   // D_q(h) is rank one on vacua, 0 off
  bool zl_minimal = false;
  bool integrals_spanned = false;      // I = span{ h_q }
  double h_decomposition_residual = 0.0;  // sum_q h_q = h
  std::uint64_t seed = 0;
};

inline SectorData sectors(const CWha& A, const CstarCert& cert,
                          std::uint64_t seed = 0) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  if (!cert.is_cstar) throw Error("sectors: not a certified C*-algebra");
  SectorData out;
  out.seed = seed;

  // Hermitian basis of the center
  Mat<Cpx> center = center_basis(A);
  std::vector<Vec<Cpx>> herm;
  for (std::size_t t = 0; t < center.cols; ++t) {
    Vec<Cpx> z = mat_col(center, t);
    Vec<Cpx> zs = star_of(A, CElement{z}).c;
    Vec<Cpx> re(n, F.zero()), im(n, F.zero());
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = 0.5 * (z[i] + zs[i]);
      im[i] = Cpx(0, -0.5) * (z[i] - zs[i]);
    }
    herm.push_back(re);
    herm.push_back(im);
  }
  Mat<Cpx> hbasis = column_space(F, cols_to_mat(F, n, herm));
  if (hbasis.cols != center.cols)
    throw Inconsistent("center is not star-closed");

  std::vector<Mat<Cpx>> action;
  for (std::size_t t = 0; t < hbasis.cols; ++t)
    action.push_back(gns_operator(A, cert, CElement{mat_col(hbasis, t)}));
  auto coords = split_commutative(F, action, seed);

  for (auto& c : coords) {
    Vec<Cpx> e = mat_vec(F, hbasis, c);
    out.idempotents.push_back(CElement{e});
  }
  // block dimensions: dim(e_r A) = n_r^2
  for (auto& e : out.idempotents) {
    std::size_t d2 = rank_of(F, left_mult_mat(A, e));
    std::size_t nr = (std::size_t)std::llround(std::sqrt((double)d2));
    if (nr * nr != d2)
      throw Error("block dimension is not a perfect square: not a C*-algebra");
    out.block_dims.push_back(nr);
  }
  // vacua: blocks where the Haar integral acts non-trivially
  double rank_res = 0;
  for (std::size_t r = 0; r < out.idempotents.size(); ++r) {
    CElement he = mul(A, cert.h, out.idempotents[r]);
    bool vac = vec_norm(F, he.c) > tol;
    out.vacuum.push_back(vac);
    if (vac) {
      // D_q(h) has rank one iff the regular action of h e_q has rank n_q
      std::size_t rk = rank_of(F, left_mult_mat(A, he));
      if (rk != out.block_dims[r]) rank_res = 1.0;
      out.h_q.push_back(he);
      out.zl_q.push_back(pi(A, out.idempotents[r], Side::left));
    }
  }
  out.vacuum_rank_residual = rank_res;

  // z^L_q are minimal projections of Z^L
  auto cent = centers(A);
  bool minimal = true;
  for (auto& z : out.zl_q) {
    minimal &= subspace_contains(F, cent.zl, z.c);
    minimal &= vec_dist(F, mul(A, z, z).c, z.c) <= tol;
    std::vector<Vec<Cpx>> prods;
    for (std::size_t t = 0; t < cent.zl.cols; ++t)
      prods.push_back(mul(A, z, CElement{mat_col(cent.zl, t)}).c);
    minimal &= rank_of(F, cols_to_mat(F, n, prods)) == 1;
  }
  out.zl_minimal = minimal;

  // two-sided integrals are spanned by the h_q
  TwoSidedData<Cpx> two = two_sided_analysis(A, seed);
  std::vector<Vec<Cpx>> hq;
  for (auto& x : out.h_q) hq.push_back(x.c);
  out.integrals_spanned =
      subspace_equal(F, two.basis, cols_to_mat(F, n, hq));

  Vec<Cpx> sum(n, F.zero());
  for (auto& x : out.h_q) sum = vec_add(F, sum, x.c);
  out.h_decomposition_residual = vec_dist(F, sum, cert.h.c);
  return out;
}

// trace of x in the irreducible representation supported by e_r
inline double block_trace(const CWha& A, const CElement& e_r, std::size_t n_r,
                          const CElement& x, Cpx* value = nullptr) {
  const auto& F = A.F;
  Mat<Cpx> L = left_mult_mat(A, mul(A, x, e_r));
  Cpx tr = 0;
  for (std::size_t t = 0; t < A.dim; ++t) tr += L(t, t);
  tr /= double(n_r);
  if (value) *value = tr;
  return std::abs(tr);
}

// ---------------------------------------------------------------------------
// the canonical grouplike element
// ---------------------------------------------------------------------------

struct GrouplikeData {
  CElement g, g_inv, g_l, g_r;
  CFunctional ghat_l, ghat_r;
  double positivity_min = 0.0;      // min GNS eigenvalue of g
  double implements_s2 = 0.0;       // g x g^{-1} = S^2(x)
  double balanced_traces = 0.0;     // tr_r(g) = tr_r(g^{-1})
  double s_of_g = 0.0;              // S(g) = g^{-1}
  double haar_exchange = 0.0;       // h_(2) (x) h_(1) = h_(1) (x) g h_(2) g
  double grouplike = 0.0;
  double factorization = 0.0;       // g g_R = g_L
  double sqrt_pullback = 0.0;       // the GNS square roots are multiplications
  double cross_identities = 0.0;    // g_L/g_R against the dual pair
  double coproduct_quasibasis = 0.0;  // (S (x) id) Delta(h) vs trace quasibasis
  bool coproduct_cone_positive = false;
  SectorData sector_data;

  double max_residual() const {
    double m = std::max({implements_s2, balanced_traces, s_of_g, haar_exchange,
                         grouplike, factorization, sqrt_pullback,
                         cross_identities, coproduct_quasibasis});
    return m;
  }
};

inline GrouplikeData canonical_grouplike(const CWha& A, const CstarCert& cert,
                                         std::uint64_t seed = 0) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  if (!cert.is_cstar) throw Error("canonical_grouplike: not a certified C*-WHA");
  GrouplikeData out;

  // g_L = (h^ -> h)^{1/2},  g_R = (h <- h^)^{1/2}
  CElement u_l = rharpoon(A, cert.h_hat, cert.h);
  CElement u_r = lharpoon(A, cert.h, cert.h_hat);
  double res_l = 0, res_r = 0;
  out.g_l = gns_sqrt(A, cert, u_l, &res_l);
  out.g_r = gns_sqrt(A, cert, u_r, &res_r);
  out.sqrt_pullback = std::max(res_l, res_r);

  auto gr_inv = elem_inverse(A, out.g_r);
  if (!gr_inv) throw Error("g_R is not invertible: not a C*-WHA");
  out.g = mul(A, out.g_l, *gr_inv);
  auto g_inv = elem_inverse(A, out.g);
  if (!g_inv) throw Error("g is not invertible");
  out.g_inv = *g_inv;
  out.factorization = vec_dist(F, mul(A, out.g, out.g_r).c, out.g_l.c);

  double min_eig = 0;
  gns_positive(A, cert, out.g, &min_eig);
  out.positivity_min = min_eig;

  Mat<Cpx> S2 = mat_mul(F, A.antipode, A.antipode);
  out.implements_s2 = mat_dist(
      F, mat_mul(F, left_mult_mat(A, out.g), right_mult_mat(A, out.g_inv)), S2);
  out.s_of_g = vec_dist(F, antipode_of(A, out.g).c, out.g_inv.c);
  out.grouplike = grouplike_residual(A, out.g);

  // balanced block traces
  out.sector_data = sectors(A, cert, seed);
  double bt = 0;
  for (std::size_t r = 0; r < out.sector_data.idempotents.size(); ++r) {
    Cpx tg, tgi;
    block_trace(A, out.sector_data.idempotents[r], out.sector_data.block_dims[r],
                out.g, &tg);
    block_trace(A, out.sector_data.idempotents[r], out.sector_data.block_dims[r],
                out.g_inv, &tgi);
    bt = std::max(bt, std::abs(tg - tgi));
  }
  out.balanced_traces = bt;

  // h_(2) (x) h_(1) = h_(1) (x) g h_(2) g
  {
    Mat<Cpx> dh = comul_mat(A, cert.h);
    Mat<Cpx> lhs(n, n, F.zero()), rhs(n, n, F.zero());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) lhs(a, b) = dh(b, a);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t q = 0; q < n; ++q) {
        if (F.is_zero(dh(a, q))) continue;
        Vec<Cpx> gqg = mul(A, mul(A, out.g, CElement{basis_vec(F, n, q)}), out.g).c;
        for (std::size_t b = 0; b < n; ++b)
          rhs(a, b) += dh(a, q) * gqg[b];
      }
    out.haar_exchange = mat_dist(F, lhs, rhs);
  }

  // dual-side components and the cross identities
  {
    CWha Ahat = dual(A);
    CstarCert cert_hat = cstar_certify(Ahat, seed);
    if (!cert_hat.is_cstar)
      throw Inconsistent("dual failed C* certification: " + cert_hat.diagnostics);
    CElement uhat_l = rharpoon(Ahat, cert_hat.h_hat, cert_hat.h);
    CElement uhat_r = lharpoon(Ahat, cert_hat.h, cert_hat.h_hat);
    out.ghat_l = CFunctional{gns_sqrt(Ahat, cert_hat, uhat_l).c};
    out.ghat_r = CFunctional{gns_sqrt(Ahat, cert_hat, uhat_r).c};

    CFunctional one_hat{A.counit};
    CElement one{A.unit};
    double res = 0;
    res = std::max(res, vec_dist(F, lharpoon(A, one_hat, out.g_l).c, out.ghat_l.c));
    res = std::max(res, vec_dist(F, lharpoon(A, one_hat, out.g_r).c, out.ghat_l.c));
    res = std::max(res, vec_dist(F, lharpoon(A, one, out.ghat_l).c, out.g_l.c));
    res = std::max(res, vec_dist(F, lharpoon(A, one, out.ghat_r).c, out.g_l.c));
    res = std::max(res, vec_dist(F, rharpoon(A, out.g_r, one_hat).c, out.ghat_r.c));
    res = std::max(res, vec_dist(F, rharpoon(A, out.g_l, one_hat).c, out.ghat_r.c));
    res = std::max(res, vec_dist(F, rharpoon(A, out.ghat_r, one).c, out.g_r.c));
    res = std::max(res, vec_dist(F, rharpoon(A, out.ghat_l, one).c, out.g_r.c));
    res = std::max(res, vec_dist(F, antipode_of(A, out.g_l).c, out.g_r.c));
    res = std::max(res,
                   vec_dist(F, dual_antipode_of(A, out.ghat_l).c, out.ghat_r.c));
    out.cross_identities = res;
  }

  // (S (x) id) Delta(h): positive cone membership and the quasibasis formula
  {
    Mat<Cpx> dh = comul_mat(A, cert.h);
    Mat<Cpx> T = mat_mul(F, A.antipode, dh);
    // cone test: rewrite in the basis { b_i* (x) b_j }
    Mat<Cpx> cSt(n, n, F.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cSt(i, j) = std::conj((*A.star)(i, j));
    Mat<Cpx> C = mat_mul(F, cSt, T);
    double herm = mat_dist(F, C, conj_transpose(F, C));
    double scale = std::max(1.0, mat_norm(F, C));
    out.coproduct_cone_positive =
        herm <= F.spec.tolerance * scale &&
        min_eigenvalue(F, mat_add(F, C, conj_transpose(F, C))) * 0.5 >=
            -F.spec.tolerance * scale;

    // quasibasis of the S-invariant trace with trace vector tr_r(g^{-1})
    Vec<Cpx> tau(n, F.zero());
    for (std::size_t r = 0; r < out.sector_data.idempotents.size(); ++r) {
      Cpx tgi;
      block_trace(A, out.sector_data.idempotents[r], out.sector_data.block_dims[r],
                  out.g_inv, &tgi);
      for (std::size_t k = 0; k < n; ++k) {
        Cpx tk;
        block_trace(A, out.sector_data.idempotents[r], out.sector_data.block_dims[r],
                    CElement{basis_vec(F, n, k)}, &tk);
        tau[k] += tgi * tk;
      }
    }
    auto qb = quasibasis(A, CFunctional{tau});
    Mat<Cpx> expect =
        mat_mul(F, qb.partners, transpose(left_mult_mat(A, out.g_inv)));
    out.coproduct_quasibasis = mat_dist(F, T, expect);
  }
  return out;
}

// ---------------------------------------------------------------------------
// conditional expectations
// ---------------------------------------------------------------------------

inline CElement conditional_expectation(const CWha& A, const CstarCert& cert,
                                        const CElement& x, Side side) {
  return side == Side::left ? rharpoon(A, cert.h_hat, x)
                            : lharpoon(A, x, cert.h_hat);
}

struct ExpectationReport {
  CheckLine lands_in_subalgebra, unital, bimodule, positive;
  bool pass() const {
    return lands_in_subalgebra.pass && unital.pass && bimodule.pass &&
           positive.pass;
  }
};

inline ExpectationReport conditional_expectation_report(const CWha& A,
                                                        const CstarCert& cert,
                                                        Side side,
                                                        std::uint64_t seed = 0) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  ExpectationReport out;
  auto bases = counital_subalgebras(A);
  const Mat<Cpx>& sub = side == Side::left ? bases.al : bases.ar;

  bool lands = true;
  for (std::size_t i = 0; i < n; ++i)
    lands &= subspace_contains(
        F, sub, conditional_expectation(A, cert, CElement{basis_vec(F, n, i)}, side).c);
  out.lands_in_subalgebra = {"image in counital subalgebra", lands ? 0.0 : 1.0,
                             lands};

  double ru = vec_dist(F, conditional_expectation(A, cert, A.one(), side).c,
                       A.unit);
  out.unital = {"E(1) = 1", ru, ru <= tol};

  double rb = 0;
  for (std::size_t s = 0; s < sub.cols; ++s)
    for (std::size_t i = 0; i < n; ++i) {
      CElement xl{mat_col(sub, s)}, y{basis_vec(F, n, i)};
      if (side == Side::left) {
        Vec<Cpx> l1 = conditional_expectation(A, cert, mul(A, xl, y), side).c;
        Vec<Cpx> r1 = mul(A, xl, conditional_expectation(A, cert, y, side)).c;
        rb = std::max(rb, vec_dist(F, l1, r1));
        Vec<Cpx> l2 = conditional_expectation(A, cert, mul(A, y, xl), side).c;
        Vec<Cpx> r2 = mul(A, conditional_expectation(A, cert, y, side), xl).c;
        rb = std::max(rb, vec_dist(F, l2, r2));
      } else {
        Vec<Cpx> l1 = conditional_expectation(A, cert, mul(A, y, xl), side).c;
        Vec<Cpx> r1 = mul(A, conditional_expectation(A, cert, y, side), xl).c;
        rb = std::max(rb, vec_dist(F, l1, r1));
      }
    }
  out.bimodule = {"bimodule property", rb, rb <= tol};

  std::mt19937_64 rng(seed ^ 0xc0ffee);
  bool pos = true;
  for (int draw = 0; draw < 8; ++draw) {
    Vec<Cpx> x(n, F.zero());
    for (auto& c : x) c = F.random(rng);
    CElement xx = mul(A, star_of(A, CElement{x}), CElement{x});
    pos &= gns_positive(A, cert, conditional_expectation(A, cert, xx, side));
  }
  out.positive = {"E(x*x) >= 0", pos ? 0.0 : 1.0, pos};
  return out;
}

// ---------------------------------------------------------------------------
// modular identities of the Haar measures
// ---------------------------------------------------------------------------

struct HaarModularReport {
  double theta_hhat = 0.0;   // theta_{h^} = Ad_{g_L g_R}
  double chi_formula = 0.0;  // chi = h^ ghat_R^{-2}
  double tau_formula = 0.0;  // tau = ghat_L^{-1} h^ ghat_R^{-1}
  double hhat_from_tau = 0.0;  // h^ = g_L g_R -> tau
  double tau_s_invariant = 0.0;
  bool pass(double tol) const {
    return theta_hhat <= tol && chi_formula <= tol && tau_formula <= tol &&
           hhat_from_tau <= tol && tau_s_invariant <= tol;
  }
};

inline HaarModularReport haar_modular_identities(const CWha& A,
                                                 const CstarCert& cert,
                                                 const GrouplikeData& gl) {
  const auto& F = A.F;
  HaarModularReport out;
  CElement p = mul(A, gl.g_l, gl.g_r);
  auto p_inv = elem_inverse(A, p);
  if (!p_inv) throw Inconsistent("g_L g_R is not invertible");
  auto md = modular_automorphism(A, cert.h_hat);
  out.theta_hhat = mat_dist(
      F, md.theta,
      mat_mul(F, left_mult_mat(A, p), right_mult_mat(A, *p_inv)));

  CFunctional x = chi(A);
  auto ghr_inv = dual_inverse(A, gl.ghat_r);
  auto ghl_inv = dual_inverse(A, gl.ghat_l);
  if (!ghr_inv || !ghl_inv) throw Inconsistent("ghat is not invertible");
  CFunctional ghr2{dual_mul(A, *ghr_inv, *ghr_inv).c};
  out.chi_formula = vec_dist(F, dual_mul(A, cert.h_hat, ghr2).c, x.c);

  CFunctional tau = rharpoon(A, gl.g_inv, x);  // g^{-1} -> chi
  CFunctional tau2 = dual_mul(A, *ghl_inv, dual_mul(A, cert.h_hat, *ghr_inv));
  out.tau_formula = vec_dist(F, tau.c, tau2.c);
  out.hhat_from_tau = vec_dist(F, rharpoon(A, p, tau).c, cert.h_hat.c);
  out.tau_s_invariant = vec_dist(F, dual_antipode_of(A, tau).c, tau.c);
  return out;
}

// ---------------------------------------------------------------------------
// Radon-Nikodym derivatives of left integrals
// ---------------------------------------------------------------------------

struct RadonNikodym {
  CFunctional rho_r, rho_l;
  double represents = 0.0;  // <phi, l> = <phi rho_R, h> = <rho_L phi, h>
  bool nondeg_iff_invertible = false;
  bool normalized_iff_idempotent = false;  // only meaningful when l non-deg
  bool positive_type = false;
  bool positivity_criteria_agree = false;  // Gram PSD <=> Pi^R(l) >= 0
  double xi_representation = 0.0;          // <phi, l> = <xi* phi xi, h>
  double dual_pair_relation = 0.0;         // Pi^R(l) (Pi^R-dual(lambda) -> 1) = g_R^{-2}
};

inline RadonNikodym radon_nikodym(const CWha& A, const CstarCert& cert,
                                  const GrouplikeData& gl, const CElement& l) {
  const auto& F = A.F;
  const std::size_t n = A.dim;
  double tol = F.spec.tolerance;
  if (!is_integral(A, l, Side::left))
    throw Error("radon_nikodym: the element is not a left integral");
  RadonNikodym out;
  CFunctional one_hat{A.counit};
  CElement pil = pi(A, l, Side::right);
  out.rho_r = rharpoon(A, pil, one_hat);  // Pi^R(l) -> 1^
  out.rho_l = dual_antipode_of(A, dual_antipode_of(A, out.rho_r));

  double res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    CFunctional phi{basis_vec(F, n, i)};
    Cpx lhs = pairing(A, phi, l);
    Cpx r1 = pairing(A, dual_mul(A, phi, out.rho_r), cert.h);
    Cpx r2 = pairing(A, dual_mul(A, out.rho_l, phi), cert.h);
    res = std::max(res, std::max(std::abs(lhs - r1), std::abs(lhs - r2)));
  }
  out.represents = res;

  bool nondeg = is_nondegenerate(A, l);
  bool inv = dual_inverse(A, out.rho_r).has_value();
  out.nondeg_iff_invertible = nondeg == inv;

  if (nondeg) {
    bool normalized = vec_dist(F, pi(A, l, Side::left).c, A.unit) <= tol;
    bool idem = vec_dist(F, mul(A, l, l).c, l.c) <= tol;
    out.normalized_iff_idempotent = normalized == idem;
  } else {
    out.normalized_iff_idempotent = true;
  }

  // positive type: Gram of phi -> <phi* phi, l> is PSD
  {
    Mat<Cpx> dual_star = *dual(A).star;
    Mat<Cpx> P(n, n, F.zero());
    for (std::size_t i = 0; i < n; ++i) {
      CFunctional phi_star{mat_col(dual_star, i)};
      for (std::size_t j = 0; j < n; ++j)
        P(i, j) = pairing(A, dual_mul(A, phi_star,
                                      CFunctional{basis_vec(F, n, j)}), l);
    }
    double scale = std::max(1.0, mat_norm(F, P));
    bool psd = mat_dist(F, P, conj_transpose(F, P)) <= tol * scale &&
               min_eigenvalue(F, mat_add(F, P, conj_transpose(F, P))) * 0.5 >=
                   -tol * scale;
    out.positive_type = psd;
    bool pil_pos = gns_positive(A, cert, pil);
    out.positivity_criteria_agree = psd == pil_pos;

    if (psd && pil_pos) {
      CElement root = gns_sqrt(A, cert, pil);
      CFunctional xi = rharpoon(A, root, one_hat);
      Vec<Cpx> xi_conj(n, F.zero());
      for (std::size_t t = 0; t < n; ++t) xi_conj[t] = std::conj(xi.c[t]);
      CFunctional xi_star{mat_vec(F, dual_star, xi_conj)};
      double r = 0;
      for (std::size_t i = 0; i < n; ++i) {
        CFunctional phi{basis_vec(F, n, i)};
        Cpx lhs = pairing(A, phi, l);
        Cpx rhs = pairing(
            A, dual_mul(A, xi_star, dual_mul(A, phi, xi)), cert.h);
        r = std::max(r, std::abs(lhs - rhs));
      }
      out.xi_representation = r;
    }
  }

  // iv) for the dual pair: Pi^R(l) (Pi^R-dual(lambda) -> 1) = g_R^{-2}
  if (nondeg) {
    auto dp = dual_left_integral(A, l);
    CFunctional pr_lambda{mat_vec(F, transpose(A.pi_r), dp.lambda.c)};
    CElement w = rharpoon(A, pr_lambda, A.one());
    CElement lhs = mul(A, pil, w);
    auto grinv = elem_inverse(A, gl.g_r);
    if (!grinv) throw Inconsistent("g_R is not invertible");
    CElement rhs = mul(A, *grinv, *grinv);
    out.dual_pair_relation = vec_dist(F, lhs.c, rhs.c);
  }
  return out;
}

}  // namespace wha
