#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace heckelab {

// Exact rationals. All arithmetic in the library is exact; no floating
// point appears anywhere.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw std::domain_error("rat_pow: zero to negative power");
    return Rat(0);
  }
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long n = e > 0 ? static_cast<unsigned long>(e)
                          : static_cast<unsigned long>(-(e + 1)) + 1;
  Rat acc(1);
  while (n != 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

// Exact square root when one exists in Q.  Returns the nonnegative root.
inline std::optional<Rat> rat_sqrt(const Rat& x) {
  if (x < 0) return std::nullopt;
  const Int& num = x.get_num();
  const Int& den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses "p", "-p", "p/q".  Throws on malformed input.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace heckelab
