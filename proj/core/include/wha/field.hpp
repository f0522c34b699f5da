#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace wha {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A certified identity failed; the input tensors are mathematically broken.
struct Inconsistent : Error {
  using Error::Error;
};

// File and document-format problems, as opposed to mathematical failures.
struct IoError : Error {
  using Error::Error;
};

enum class FieldKind { rational, complex_fp, gf };

// Runtime description of the coefficient field. `tolerance` is the single
// absolute zero-test slack used by every pivot and eigenvalue decision for
// the complex kind; exact kinds always use tolerance 0.
struct FieldSpec {
  FieldKind kind = FieldKind::rational;
  double tolerance = 0.0;
  std::uint64_t p = 0;

  static FieldSpec rational() { return {FieldKind::rational, 0.0, 0}; }
  static FieldSpec complex_fp(double tol = 1e-9) {
    return {FieldKind::complex_fp, tol, 0};
  }
  static FieldSpec gf(std::uint64_t p) { return {FieldKind::gf, 0.0, p}; }

  void validate() const;
  std::string name() const;
};

bool is_prime_u64(std::uint64_t n);

using Rat = mpq_class;
using Cpx = std::complex<double>;

// GF(p) residue. The modulus lives in the FieldOps context, not the value.
struct Gf {
  std::uint64_t v = 0;
  bool operator==(const Gf&) const = default;
};

// --- canonical text forms ("3/4", "1+2i", "5 mod 7") ------------------------

std::string scalar_to_string(const Rat& x);
std::string scalar_to_string(const Cpx& x);
std::string scalar_to_string(const Gf& x, std::uint64_t p);

Rat parse_rational(const std::string& s);
Cpx parse_complex(const std::string& s);
Gf parse_gf(const std::string& s, std::uint64_t p);

// --- field operation context -------------------------------------------------
//
// All arithmetic on scalars goes through a FieldOps<K> value. It carries the
// runtime part of the field (tolerance, modulus) so that the scalar types can
// stay plain. Instances are immutable and freely copyable.

template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
  FieldSpec spec = FieldSpec::rational();
  static constexpr bool exact = true;

  Rat zero() const { return Rat(0); }
  Rat one() const { return Rat(1); }
  Rat from_int(long n) const { return Rat(n); }
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat sub(const Rat& a, const Rat& b) const { return a - b; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
  Rat div(const Rat& a, const Rat& b) const {
    if (b == 0) throw Error("rational division by zero");
    return a / b;
  }
  Rat neg(const Rat& a) const { return -a; }
  Rat inv(const Rat& a) const { return div(one(), a); }
  Rat conj(const Rat& a) const { return a; }
  bool is_zero(const Rat& a) const { return a == 0; }
  bool eq(const Rat& a, const Rat& b) const { return a == b; }
  // magnitude used for pivoting and residual reports; exact nonzero values
  // are clamped away from 0 so a failed identity can never report residual 0
  double abs_of(const Rat& a) const {
    if (a == 0) return 0.0;
    double d = std::abs(a.get_d());
    return d > 0 ? d : 1e-300;
  }
  Rat random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<long> d(-9, 9);
    return Rat(d(rng));
  }
  std::string str(const Rat& a) const { return scalar_to_string(a); }
  Rat parse(const std::string& s) const { return parse_rational(s); }
};

template <>
struct FieldOps<Cpx> {
  FieldSpec spec = FieldSpec::complex_fp();
  static constexpr bool exact = false;

  Cpx zero() const { return {0.0, 0.0}; }
  Cpx one() const { return {1.0, 0.0}; }
  Cpx from_int(long n) const { return {double(n), 0.0}; }
  Cpx add(const Cpx& a, const Cpx& b) const { return a + b; }
  Cpx sub(const Cpx& a, const Cpx& b) const { return a - b; }
  Cpx mul(const Cpx& a, const Cpx& b) const { return a * b; }
  Cpx div(const Cpx& a, const Cpx& b) const {
    if (std::abs(b) == 0.0) throw Error("complex division by zero");
    return a / b;
  }
  Cpx neg(const Cpx& a) const { return -a; }
  Cpx inv(const Cpx& a) const { return div(one(), a); }
  Cpx conj(const Cpx& a) const { return std::conj(a); }
  bool is_zero(const Cpx& a) const { return std::abs(a) <= spec.tolerance; }
  bool eq(const Cpx& a, const Cpx& b) const { return is_zero(a - b); }
  double abs_of(const Cpx& a) const { return std::abs(a); }
  Cpx random(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double re = d(rng), im = d(rng);
    return {re, im};
  }
  std::string str(const Cpx& a) const { return scalar_to_string(a); }
  Cpx parse(const std::string& s) const { return parse_complex(s); }
};

template <>
struct FieldOps<Gf> {
  FieldSpec spec = FieldSpec::gf(2);
  static constexpr bool exact = true;

  std::uint64_t p() const { return spec.p; }
  Gf zero() const { return {0}; }
  Gf one() const { return {1 % p()}; }
  Gf from_int(long n) const {
    long long m = n % (long long)p();
    if (m < 0) m += (long long)p();
    return {(std::uint64_t)m};
  }
  Gf add(Gf a, Gf b) const { return {(a.v + b.v) % p()}; }
  Gf sub(Gf a, Gf b) const { return {(a.v + p() - b.v) % p()}; }
  Gf mul(Gf a, Gf b) const { return {(a.v * b.v) % p()}; }
  Gf neg(Gf a) const { return {(p() - a.v) % p()}; }
  Gf inv(Gf a) const;
  Gf div(Gf a, Gf b) const { return mul(a, inv(b)); }
  Gf conj(Gf a) const { return a; }
  bool is_zero(Gf a) const { return a.v == 0; }
  bool eq(Gf a, Gf b) const { return a.v == b.v; }
  double abs_of(Gf a) const { return a.v == 0 ? 0.0 : 1.0; }
  Gf random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> d(0, p() - 1);
    return {d(rng)};
  }
  std::string str(Gf a) const { return scalar_to_string(a, p()); }
  Gf parse(const std::string& s) const { return parse_gf(s, p()); }
};

inline Gf FieldOps<Gf>::inv(Gf a) const {
  if (a.v == 0) throw Error("GF(p) division by zero");
  // extended Euclid on (v, p)
  long long t = 0, newt = 1;
  long long r = (long long)p(), newr = (long long)a.v;
  while (newr != 0) {
    long long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw Error("GF(p) inverse does not exist (p not prime?)");
  if (t < 0) t += (long long)p();
  return {(std::uint64_t)t};
}

inline void FieldSpec::validate() const {
  switch (kind) {
    case FieldKind::rational:
      if (tolerance != 0.0) throw Error("rational field must have tolerance 0");
      break;
    case FieldKind::complex_fp:
      if (tolerance < 0.0) throw Error("tolerance must be nonnegative");
      break;
    case FieldKind::gf:
      if (tolerance != 0.0) throw Error("GF(p) field must have tolerance 0");
      if (p < 2 || p > (1ull << 31)) throw Error("GF(p): p out of range");
      if (!is_prime_u64(p)) throw Error("GF(p): p must be prime");
      break;
  }
}

inline std::string FieldSpec::name() const {
  switch (kind) {
    case FieldKind::rational: return "rational";
    case FieldKind::complex_fp: return "complex";
    case FieldKind::gf: return "gf(" + std::to_string(p) + ")";
  }
  return "?";
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace wha
