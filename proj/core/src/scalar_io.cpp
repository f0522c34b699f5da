#include "wha/field.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace wha {

namespace {

std::string fmt_double(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isdigit((unsigned char)c) || c == '+' || c == '-' || c == '.' ||
          c == 'e' || c == 'E' || c == '/'))
      return false;
  return true;
}

}  // namespace

std::string scalar_to_string(const Rat& x) { return x.get_str(); }

std::string scalar_to_string(const Cpx& x) {
  double re = x.real(), im = x.imag();
  if (im == 0.0) return fmt_double(re);
  if (re == 0.0) return fmt_double(im) + "i";
  std::string s = fmt_double(re);
  if (im > 0 || std::isnan(im)) s += "+";
  s += fmt_double(im);
  s += "i";
  return s;
}

std::string scalar_to_string(const Gf& x, std::uint64_t p) {
  return std::to_string(x.v) + " mod " + std::to_string(p);
}

Rat parse_rational(const std::string& s) {
  if (!looks_numeric(s) || s.find('.') != std::string::npos ||
      s.find('e') != std::string::npos || s.find('E') != std::string::npos)
    throw Error("bad rational literal '" + s + "'");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error("bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw Error("rational with zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

Cpx parse_complex(const std::string& s) {
  if (s.empty()) throw Error("empty complex literal");
  // Accepted forms: "a", "bi", "a+bi", "a-bi" with a, b decimal floats.
  std::string t = s;
  bool has_i = (t.back() == 'i');
  if (has_i) t.pop_back();
  auto to_d = [&](const std::string& u) -> double {
    if (u.empty() || u == "+") return 1.0;
    if (u == "-") return -1.0;
    char* end = nullptr;
    double v = std::strtod(u.c_str(), &end);
    if (end != u.c_str() + u.size())
      throw Error("bad complex literal '" + s + "'");
    return v;
  };
  if (!has_i) return {to_d(t), 0.0};
  // split real and imaginary parts at the last top-level +/- (not an exponent sign)
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    char c = t[k];
    if ((c == '+' || c == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_d(t)};
  return {to_d(t.substr(0, split)), to_d(t.substr(split))};
}

Gf parse_gf(const std::string& s, std::uint64_t p) {
  // "5 mod 7" (modulus must match the field) or a bare integer "5"
  std::string num = s;
  auto at = s.find(" mod ");
  if (at != std::string::npos) {
    num = s.substr(0, at);
    std::string mod = s.substr(at + 5);
    char* end = nullptr;
    unsigned long long q = std::strtoull(mod.c_str(), &end, 10);
    if (end != mod.c_str() + mod.size() || q != p)
      throw Error("GF literal '" + s + "' does not match field modulus " +
                  std::to_string(p));
  }
  char* end = nullptr;
  long long v = std::strtoll(num.c_str(), &end, 10);
  if (num.empty() || end != num.c_str() + num.size())
    throw Error("bad GF literal '" + s + "'");
  long long m = v % (long long)p;
  if (m < 0) m += (long long)p;
  return {(std::uint64_t)m};
}

}  // namespace wha
