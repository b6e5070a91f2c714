#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "heckelab/laurent.hpp"
#include "heckelab/root_datum.hpp"

namespace heckelab {

// Extended affine Hecke algebra in the Bernstein presentation.  An element
// is stored as sum_{w in W_0} T_w * f_w with the Theta-coefficient f_w (a
// LaurentPoly in theta_x, x in the weight lattice) on the RIGHT of T_w.
// The defining relations used throughout:
//   T_s^2 = (q - 1) T_s + q
//   f T_s = T_s s(f) + (q - 1)(f - s(f)) / (1 - theta_{-alpha_s})
// where the division is exact in the Laurent ring.
class HeckeElt {
 public:
  HeckeElt() = default;

  void add_term(int w, const LaurentPoly& f) {
    if (f.is_zero()) return;
    auto it = c_.find(w);
    if (it == c_.end()) {
      c_.emplace(w, f);
    } else {
      it->second = it->second + f;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  LaurentPoly coeff(int w) const {
    auto it = c_.find(w);
    return it == c_.end() ? LaurentPoly() : it->second;
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, LaurentPoly>& terms() const { return c_; }

  bool operator==(const HeckeElt& o) const { return c_ == o.c_; }
  bool operator!=(const HeckeElt& o) const { return !(*this == o); }

  HeckeElt operator+(const HeckeElt& o) const {
    HeckeElt r = *this;
    for (const auto& [w, f] : o.c_) r.add_term(w, f);
    return r;
  }
  HeckeElt operator-(const HeckeElt& o) const {
    HeckeElt r = *this;
    for (const auto& [w, f] : o.c_) r.add_term(w, -f);
    return r;
  }
  HeckeElt operator-() const {
    HeckeElt r;
    for (const auto& [w, f] : c_) r.c_.emplace(w, -f);
    return r;
  }
  HeckeElt operator*(const ScalarQ& s) const {
    HeckeElt r;
    for (const auto& [w, f] : c_) {
      LaurentPoly g = f * s;
      if (!g.is_zero()) r.c_.emplace(w, std::move(g));
    }
    return r;
  }

 private:
  std::map<int, LaurentPoly> c_;
};

// ---------------------------------------------------------------------------
// Basis elements and embeddings.

inline HeckeElt hecke_T(const RootDatum& rd, int w) {
  HeckeElt h;
  h.add_term(w, LaurentPoly::one(rd.rank()));
  return h;
}

inline HeckeElt hecke_embed(const RootDatum& rd, const LaurentPoly& f) {
  HeckeElt h;
  h.add_term(rd.identity(), f);
  return h;
}

inline HeckeElt hecke_theta(const RootDatum& rd, const Weight& x) {
  return hecke_embed(rd, LaurentPoly::monomial(x));
}

inline std::string hecke_str(const RootDatum& rd, const HeckeElt& h) {
  if (h.is_zero()) return "0";
  std::string out;
  for (const auto& [w, f] : h.terms()) {
    if (!out.empty()) out += "  +  ";
    out += "T[";
    const auto& word = rd.elt(w).word;
    if (word.empty()) {
      out += "e";
    } else {
      for (size_t i = 0; i < word.size(); ++i) {
        if (i) out += ".";
        out += "s" + std::to_string(word[i]);
      }
    }
    out += "]*(" + f.str() + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multiplication.

// (q - 1)(f - s(f)) / (1 - theta_{-alpha_s}); the division is always exact.
inline LaurentPoly bernstein_d(const RootDatum& rd, int s, const LaurentPoly& f) {
  const int n = rd.rank();
  LaurentPoly sf = act(rd, rd.simple_reflection(s), f);
  LaurentPoly diff = f - sf;
  if (diff.is_zero()) return LaurentPoly();
  LaurentPoly num = diff * (ScalarQ::q_pow(1) - ScalarQ(1));
  LaurentPoly den = one_minus(n, weight_neg(rd.simple_root(s)), ScalarQ(1));
  return exact_divide(num, den);
}

// h * T_s for a simple reflection s (index into the simple roots).
inline HeckeElt right_mul_Ts(const RootDatum& rd, const HeckeElt& h, int s) {
  const int selt = rd.simple_reflection(s);
  const ScalarQ q = ScalarQ::q_pow(1);
  const ScalarQ qm1 = q - ScalarQ(1);
  HeckeElt out;
  for (const auto& [w, f] : h.terms()) {
    // T_w f T_s = (T_w T_s) s(f) + T_w D_s(f)
    LaurentPoly sf = act(rd, selt, f);
    int ws = rd.mul(w, selt);
    if (rd.length(ws) > rd.length(w)) {
      out.add_term(ws, sf);
    } else {
      out.add_term(ws, sf * q);
      out.add_term(w, sf * qm1);
    }
    out.add_term(w, bernstein_d(rd, s, f));
  }
  return out;
}

// h * g for g in Theta (acts on the right coefficients directly).
inline HeckeElt right_mul_theta(const HeckeElt& h, const LaurentPoly& g) {
  HeckeElt out;
  for (const auto& [w, f] : h.terms()) out.add_term(w, f * g);
  return out;
}

inline HeckeElt hecke_mul(const RootDatum& rd, const HeckeElt& a, const HeckeElt& b) {
  HeckeElt out;
  for (const auto& [u, g] : b.terms()) {
    HeckeElt cur = a;
    for (int s : rd.elt(u).word) cur = right_mul_Ts(rd, cur, s);
    cur = right_mul_theta(cur, g);
    out = out + cur;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Left-coefficient form: h = sum_sigma g_sigma T_sigma.

using LeftForm = std::map<int, LaurentPoly>;

namespace detail {

inline void leftform_add(LeftForm& m, int w, const LaurentPoly& f) {
  if (f.is_zero()) return;
  auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, f);
  } else {
    it->second = it->second + f;
    if (it->second.is_zero()) m.erase(it);
  }
}

// T_s * (sum g_sigma T_sigma) staying in left-coefficient form, using
// T_s g = s(g) T_s + D_s(g).
inline LeftForm leftform_mul_Ts_left(const RootDatum& rd, int s, const LeftForm& m) {
  const int selt = rd.simple_reflection(s);
  const ScalarQ q = ScalarQ::q_pow(1);
  const ScalarQ qm1 = q - ScalarQ(1);
  LeftForm out;
  for (const auto& [sigma, g] : m) {
    LaurentPoly sg = act(rd, selt, g);
    int ssigma = rd.mul(selt, sigma);
    if (rd.length(ssigma) > rd.length(sigma)) {
      leftform_add(out, ssigma, sg);
    } else {
      leftform_add(out, ssigma, sg * q);
      leftform_add(out, sigma, sg * qm1);
    }
    leftform_add(out, sigma, bernstein_d(rd, s, g));
  }
  return out;
}

}  // namespace detail

inline LeftForm to_left_form(const RootDatum& rd, const HeckeElt& h) {
  LeftForm out;
  for (const auto& [w, f] : h.terms()) {
    LeftForm m;
    m.emplace(rd.identity(), f);
    const auto& word = rd.elt(w).word;
    for (int j = static_cast<int>(word.size()) - 1; j >= 0; --j) {
      m = detail::leftform_mul_Ts_left(rd, word[j], m);
    }
    for (const auto& [sigma, g] : m) detail::leftform_add(out, sigma, g);
  }
  return out;
}

inline HeckeElt from_left_form(const RootDatum& rd, const LeftForm& m) {
  HeckeElt out;
  for (const auto& [sigma, g] : m) {
    HeckeElt cur = hecke_embed(rd, g);
    for (int s : rd.elt(sigma).word) cur = right_mul_Ts(rd, cur, s);
    out = out + cur;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The spherical elements
//   C  = v^{-nu} sum_{y in W_0} T_y                     (T_s C = C T_s = q C)
//   C' = v^{nu}  sum_{y in W_0} (-1)^{nu-l(y)} q^{-l(y)} T_y   (T_s C' = -C')

inline HeckeElt C_element(const RootDatum& rd) {
  const int n = rd.rank();
  HeckeElt h;
  LaurentPoly c = LaurentPoly::constant(n, ScalarQ::v_pow(-rd.nu()));
  for (int y = 0; y < rd.order(); ++y) h.add_term(y, c);
  return h;
}

inline HeckeElt Cprime_element(const RootDatum& rd) {
  const int n = rd.rank();
  const int nu = rd.nu();
  HeckeElt h;
  for (int y = 0; y < rd.order(); ++y) {
    int l = rd.length(y);
    Rat sign = ((nu - l) % 2 == 0) ? Rat(1) : Rat(-1);
    h.add_term(y, LaurentPoly::constant(n, ScalarQ::v_pow(nu, sign) * ScalarQ::q_pow(-l)));
  }
  return h;
}

// With h = sum_sigma g_sigma T_sigma in left form, T_sigma C = q^{l(sigma)} C
// and T_sigma C' = (-1)^{l(sigma)} C', so h*C = g*C and h*C' = g'*C' for the
// Theta-elements returned here.
inline LaurentPoly times_C_coeff(const RootDatum& rd, const HeckeElt& h) {
  LaurentPoly out;
  for (const auto& [sigma, g] : to_left_form(rd, h)) {
    out = out + g * ScalarQ::q_pow(rd.length(sigma));
  }
  return out;
}

inline LaurentPoly times_Cprime_coeff(const RootDatum& rd, const HeckeElt& h) {
  LaurentPoly out;
  for (const auto& [sigma, g] : to_left_form(rd, h)) {
    Rat sign = (rd.length(sigma) % 2 == 0) ? Rat(1) : Rat(-1);
    out = out + g * ScalarQ(sign);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Involutions.

// The involutive anti-automorphism fixing every T_s and every theta_x.
// It reverses products, so on a right-coefficient term: T_w f -> f T_{w^{-1}},
// which is re-expanded into right-coefficient form.
inline HeckeElt hecke_tilde(const RootDatum& rd, const HeckeElt& h) {
  HeckeElt out;
  for (const auto& [w, f] : h.terms()) {
    HeckeElt cur = hecke_embed(rd, f);
    for (int s : rd.elt(rd.inverse(w)).word) cur = right_mul_Ts(rd, cur, s);
    out = out + cur;
  }
  return out;
}

inline LaurentPoly theta_negate(const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& [x, c] : f.terms()) {
    out = out + LaurentPoly::monomial(weight_neg(x), c);
  }
  return out;
}

// The involutive algebra automorphism with T_s -> q - 1 - T_s (= -q T_s^{-1})
// and theta_x -> theta_{-x}.
inline HeckeElt hecke_star(const RootDatum& rd, const HeckeElt& h) {
  const ScalarQ qm1 = ScalarQ::q_pow(1) - ScalarQ(1);
  HeckeElt out;
  for (const auto& [w, f] : h.terms()) {
    HeckeElt cur = hecke_T(rd, rd.identity());
    for (int s : rd.elt(w).word) {
      HeckeElt star_Ts = hecke_T(rd, rd.identity()) * qm1 - hecke_T(rd, rd.simple_reflection(s));
      cur = hecke_mul(rd, cur, star_Ts);
    }
    out = out + right_mul_theta(cur, theta_negate(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Centrality.  H is generated by the T_s and the theta_{x_i} (fundamental
// weights), so commuting with those generators is equivalent to centrality.
inline bool is_central(const RootDatum& rd, const HeckeElt& h) {
  for (int i = 0; i < rd.rank(); ++i) {
    HeckeElt ts = hecke_T(rd, rd.simple_reflection(i));
    if (hecke_mul(rd, h, ts) != hecke_mul(rd, ts, h)) return false;
    HeckeElt th = hecke_theta(rd, rd.fundamental_weight(i));
    if (hecke_mul(rd, h, th) != hecke_mul(rd, th, h)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subset-sum elements over subsets I of the positive roots, with alpha_I the
// sum of the roots in I:
//   plus :  A = v^{nu}  sum_I (-q)^{-|I|} theta_{rho - alpha_I}
//              = (-1)^{nu} v^{-nu} theta_{-rho} prod_{alpha>0} (1 - q theta_alpha)
//   minus:  B = v^{-nu} sum_I (-q)^{|I|}  theta_{-rho + alpha_I}
// A is the Theta-factor with C theta_rho C' = A C'; B the one with
// C theta_{-rho} C' = B C'.
inline LaurentPoly theta_prod_plus(const RootDatum& rd) {
  const int n = rd.rank();
  const int nu = rd.nu();
  if (nu >= 20) throw std::invalid_argument("theta_prod_plus: too many positive roots");
  const Weight rho = rd.rho();
  LaurentPoly sum;
  for (unsigned mask = 0; mask < (1u << nu); ++mask) {
    Weight aI(n, 0);
    int sz = 0;
    for (int k = 0; k < nu; ++k) {
      if (mask & (1u << k)) {
        aI = weight_add(aI, rd.pos_root(k).fund);
        ++sz;
      }
    }
    Rat sign = (sz % 2 == 0) ? Rat(1) : Rat(-1);
    sum = sum + LaurentPoly::monomial(weight_sub(rho, aI), ScalarQ::q_pow(-sz, sign));
  }
  LaurentPoly a = sum * ScalarQ::v_pow(nu);

  // Product form, asserted equal.
  Rat psign = (nu % 2 == 0) ? Rat(1) : Rat(-1);
  LaurentPoly prod = LaurentPoly::monomial(weight_neg(rho), ScalarQ::v_pow(-nu, psign));
  for (int k = 0; k < nu; ++k) {
    prod *= one_minus(n, rd.pos_root(k).fund, ScalarQ::q_pow(1));
  }
  if (a != prod) throw std::logic_error("theta_prod_plus: closed forms disagree");
  return a;
}

inline LaurentPoly theta_prod_minus(const RootDatum& rd) {
  const int n = rd.rank();
  const int nu = rd.nu();
  if (nu >= 20) throw std::invalid_argument("theta_prod_minus: too many positive roots");
  const Weight mrho = weight_neg(rd.rho());
  LaurentPoly sum;
  for (unsigned mask = 0; mask < (1u << nu); ++mask) {
    Weight aI(n, 0);
    int sz = 0;
    for (int k = 0; k < nu; ++k) {
      if (mask & (1u << k)) {
        aI = weight_add(aI, rd.pos_root(k).fund);
        ++sz;
      }
    }
    Rat sign = (sz % 2 == 0) ? Rat(1) : Rat(-1);
    sum = sum + LaurentPoly::monomial(weight_add(mrho, aI), ScalarQ::q_pow(sz, sign));
  }
  return sum * ScalarQ::v_pow(-nu);
}

// ---------------------------------------------------------------------------
// Identity checks.  Each returns both sides, computed independently: the left
// side by direct multiplication in the algebra, the right side from the
// closed-form expansion.

struct HeckeIdentity {
  HeckeElt lhs;
  HeckeElt rhs;
  bool ok = false;
};

// C theta_x C = v^{-nu} * W(theta_x) * C where W is the Weyl ratio sum
// (the result of W is W_0-invariant, hence central).
inline HeckeIdentity check_macdonald(const RootDatum& rd, const Weight& x) {
  HeckeIdentity r;
  HeckeElt c = C_element(rd);
  r.lhs = hecke_mul(rd, hecke_mul(rd, c, hecke_theta(rd, x)), c);
  LaurentPoly scal = weyl_ratio_sum(rd, LaurentPoly::monomial(x)) * ScalarQ::v_pow(-rd.nu());
  r.rhs = hecke_mul(rd, hecke_embed(rd, scal), c);
  r.ok = (r.lhs == r.rhs);
  return r;
}

// C' theta_{rho} C = C' * A        (sign = +1)
// C' theta_{-rho} C = C' * B       (sign = -1)
inline HeckeIdentity check_cprime_theta_c(const RootDatum& rd, int sign) {
  HeckeIdentity r;
  Weight x = (sign > 0) ? rd.rho() : weight_neg(rd.rho());
  LaurentPoly factor = (sign > 0) ? theta_prod_plus(rd) : theta_prod_minus(rd);
  HeckeElt cp = Cprime_element(rd);
  r.lhs = hecke_mul(rd, hecke_mul(rd, cp, hecke_theta(rd, x)), C_element(rd));
  r.rhs = hecke_mul(rd, cp, hecke_embed(rd, factor));
  r.ok = (r.lhs == r.rhs);
  return r;
}

// C theta_{rho} C' = A * C'        (sign = +1)
// C theta_{-rho} C' = B * C'       (sign = -1)
inline HeckeIdentity check_c_theta_cprime(const RootDatum& rd, int sign) {
  HeckeIdentity r;
  Weight x = (sign > 0) ? rd.rho() : weight_neg(rd.rho());
  LaurentPoly factor = (sign > 0) ? theta_prod_plus(rd) : theta_prod_minus(rd);
  HeckeElt c = C_element(rd);
  r.lhs = hecke_mul(rd, hecke_mul(rd, c, hecke_theta(rd, x)), Cprime_element(rd));
  r.rhs = hecke_mul(rd, hecke_embed(rd, factor), Cprime_element(rd));
  r.ok = (r.lhs == r.rhs);
  return r;
}

// If a == b * c for some ScalarQ c, return c (b must be nonzero).
inline std::optional<ScalarQ> hecke_scalar_ratio(const HeckeElt& a, const HeckeElt& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return ScalarQ();
  const auto& [w, g] = *b.terms().begin();
  LaurentPoly f = a.coeff(w);
  if (f.is_zero()) return std::nullopt;
  auto quo = try_divide(f, g, nullptr);
  if (!quo) return std::nullopt;
  // quotient must be a constant monomial theta_0 * c
  ScalarQ c;
  for (const auto& [x, s] : quo->terms()) {
    if (!weight_is_zero(x)) return std::nullopt;
    c = s;
  }
  // verify globally
  HeckeElt bc;
  for (const auto& [u, h] : b.terms()) bc.add_term(u, h * c);
  if (bc != a) return std::nullopt;
  return c;
}

// theta of the Steinberg-basis exponent e_u = u(sum of fundamental weights
// x_i over the simple roots sent negative by u).
inline LaurentPoly steinberg_theta(const RootDatum& rd, int u) {
  return LaurentPoly::monomial(rd.steinberg_weight(u));
}

}  // namespace heckelab
