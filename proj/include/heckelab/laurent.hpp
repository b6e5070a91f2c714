#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heckelab/root_datum.hpp"
#include "heckelab/scalar_q.hpp"

namespace heckelab {

// Element of Theta, the group algebra of P over Q[v,v^{-1}]: a finite
// sum of monomials theta_x with ScalarQ coefficients.  Monomial law:
// theta_x * theta_y = theta_{x+y}.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(const Weight& x, ScalarQ c = ScalarQ(1)) {
    LaurentPoly f;
    if (!c.is_zero()) f.c_[x] = std::move(c);
    return f;
  }
  static LaurentPoly constant(int n, const ScalarQ& c) {
    return monomial(Weight(n, 0), c);
  }
  static LaurentPoly one(int n) { return constant(n, ScalarQ(1)); }

  bool is_zero() const { return c_.empty(); }
  size_t num_terms() const { return c_.size(); }
  const std::map<Weight, ScalarQ>& terms() const { return c_; }
  ScalarQ coeff(const Weight& x) const {
    auto it = c_.find(x);
    return it == c_.end() ? ScalarQ() : it->second;
  }

  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [x, c] : o.c_) add_term(x, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [x, c] : o.c_) add_term(x, -c);
    return *this;
  }
  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
  }
  LaurentPoly operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r -= o;
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [x, c] : c_) r.c_[x] = -c;
    return r;
  }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [x1, c1] : c_)
      for (const auto& [x2, c2] : o.c_) r.add_term(weight_add(x1, x2), c1 * c2);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly operator*(const ScalarQ& s) const {
    LaurentPoly r;
    for (const auto& [x, c] : c_) r.add_term(x, c * s);
    return r;
  }

  void add_term(const Weight& x, const ScalarQ& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = c_.emplace(x, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  // Canonical text form: terms in increasing lexicographic weight order.
  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [x, c] : c_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")t[";
      for (size_t i = 0; i < x.size(); ++i) {
        if (i) os << ",";
        os << x[i];
      }
      os << "]";
    }
    return os.str();
  }

 private:
  std::map<Weight, ScalarQ> c_;
};

inline LaurentPoly act(const RootDatum& rd, int w, const LaurentPoly& f) {
  LaurentPoly r;
  for (const auto& [x, c] : f.terms()) r.add_term(rd.act(w, x), c);
  return r;
}

inline bool is_w0_invariant(const RootDatum& rd, const LaurentPoly& f) {
  for (int i = 0; i < rd.rank(); ++i)
    if (act(rd, rd.simple_reflection(i), f) != f) return false;
  return true;
}

struct DivisionError {
  std::string witness;  // offending monomial, for error reports
};

// Exact division in Theta.  Internally flattens the v-exponent into the
// monomial key so coefficients live in Q; every monomial is a unit, so
// the leading-term loop always progresses, and the Newton-polytope box
//   [min_i(f) - min_i(g), max_i(f) - max_i(g)]  (per coordinate)
// contains the support of any exact quotient.  A quotient term outside
// the box certifies non-divisibility.
inline std::optional<LaurentPoly> try_divide(const LaurentPoly& f,
                                             const LaurentPoly& g,
                                             std::string* witness = nullptr) {
  if (g.is_zero()) throw std::invalid_argument("try_divide: zero divisor");
  if (f.is_zero()) return LaurentPoly();

  using FlatKey = std::vector<int>;  // weight coords + v-exponent
  std::map<FlatKey, Rat> rf, rg;
  auto flatten = [](const LaurentPoly& p, std::map<FlatKey, Rat>& out) {
    for (const auto& [x, c] : p.terms())
      for (const auto& [m, r] : c.terms()) {
        FlatKey k = x;
        k.push_back(m);
        out[k] = r;
      }
  };
  flatten(f, rf);
  flatten(g, rg);

  const size_t dim = rf.begin()->first.size();
  std::vector<int> lo(dim), hi(dim);
  {
    std::vector<int> fmin(dim, INT32_MAX), fmax(dim, INT32_MIN);
    std::vector<int> gmin(dim, INT32_MAX), gmax(dim, INT32_MIN);
    for (const auto& [k, c] : rf)
      for (size_t i = 0; i < dim; ++i) {
        fmin[i] = std::min(fmin[i], k[i]);
        fmax[i] = std::max(fmax[i], k[i]);
      }
    for (const auto& [k, c] : rg)
      for (size_t i = 0; i < dim; ++i) {
        gmin[i] = std::min(gmin[i], k[i]);
        gmax[i] = std::max(gmax[i], k[i]);
      }
    for (size_t i = 0; i < dim; ++i) {
      lo[i] = fmin[i] - gmin[i];
      hi[i] = fmax[i] - gmax[i];
    }
  }

  const FlatKey& glead = rg.rbegin()->first;
  const Rat gc = rg.rbegin()->second;
  LaurentPoly q;
  while (!rf.empty()) {
    const FlatKey& flead = rf.rbegin()->first;
    FlatKey shift(dim);
    bool in_box = true;
    for (size_t i = 0; i < dim; ++i) {
      shift[i] = flead[i] - glead[i];
      if (shift[i] < lo[i] || shift[i] > hi[i]) in_box = false;
    }
    if (!in_box) {
      if (witness) {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < dim; ++i) {
          if (i) os << ",";
          os << flead[i];
        }
        os << "]";
        *witness = os.str();
      }
      return std::nullopt;
    }
    Rat c = rf.rbegin()->second / gc;
    Weight qx(shift.begin(), shift.end() - 1);
    q.add_term(qx, ScalarQ::v_pow(shift.back(), c));
    for (const auto& [k, gcoef] : rg) {
      FlatKey nk(dim);
      for (size_t i = 0; i < dim; ++i) nk[i] = k[i] + shift[i];
      auto [it, fresh] = rf.emplace(nk, -c * gcoef);
      if (!fresh) {
        it->second -= c * gcoef;
        if (it->second == 0) rf.erase(it);
      } else if (it->second == 0) {
        rf.erase(it);
      }
    }
  }
  return q;
}

inline LaurentPoly exact_divide(const LaurentPoly& f, const LaurentPoly& g) {
  std::string witness;
  auto q = try_divide(f, g, &witness);
  if (!q)
    throw std::runtime_error("exact_divide: not divisible, witness monomial " +
                             witness);
  return *q;
}

// 1 - c * theta_x.
inline LaurentPoly one_minus(int n, const Weight& x, const ScalarQ& c) {
  LaurentPoly f = LaurentPoly::one(n);
  f.add_term(x, -c);
  return f;
}

// Sum over W_0 of w(f * prod_{alpha>0} (1 - q theta_alpha)/(1 - theta_alpha)),
// computed exactly by clearing to the denominator prod_{beta in R}(1 - theta_beta).
// The result is W_0-invariant; both exactness and invariance are asserted.
inline LaurentPoly weyl_ratio_sum(const RootDatum& rd, const LaurentPoly& f) {
  const int n = rd.rank();
  const ScalarQ q = ScalarQ::q_pow(1);
  LaurentPoly num;
  for (int w = 0; w < rd.order(); ++w) {
    LaurentPoly term = act(rd, w, f);
    for (int k = 0; k < rd.num_pos_roots(); ++k) {
      Weight wa = rd.act(w, rd.pos_root(k).fund);
      term *= one_minus(n, wa, q);
      term *= one_minus(n, weight_neg(wa), ScalarQ(1));
    }
    num += term;
  }
  LaurentPoly den = LaurentPoly::one(n);
  for (int k = 0; k < rd.num_pos_roots(); ++k) {
    den *= one_minus(n, rd.pos_root(k).fund, ScalarQ(1));
    den *= one_minus(n, weight_neg(rd.pos_root(k).fund), ScalarQ(1));
  }
  LaurentPoly out = exact_divide(num, den);
  assert(is_w0_invariant(rd, out));
  return out;
}

// (A, B) = (-1)^nu theta_rho [sum_w (-1)^{l(w)} w(A B theta_rho)] /
//          prod_{alpha>0}(1 - theta_alpha); lands in Z(H) = Theta^{W_0}.
inline LaurentPoly pairing_AB(const RootDatum& rd, const LaurentPoly& A,
                              const LaurentPoly& B) {
  const int n = rd.rank();
  LaurentPoly prod = A * B * LaurentPoly::monomial(rd.rho());
  LaurentPoly num;
  for (int w = 0; w < rd.order(); ++w) {
    LaurentPoly term = act(rd, w, prod);
    if (rd.length(w) % 2) num -= term;
    else num += term;
  }
  LaurentPoly den = LaurentPoly::one(n);
  for (int k = 0; k < rd.num_pos_roots(); ++k)
    den *= one_minus(n, rd.pos_root(k).fund, ScalarQ(1));
  LaurentPoly out = exact_divide(num, den);
  out *= LaurentPoly::monomial(rd.rho());
  if (rd.nu() % 2) out = -out;
  assert(is_w0_invariant(rd, out));
  return out;
}

// A point of the torus T = Hom(P, k*): the values of the fundamental
// weights, as elements of the specialization field.
struct TorusPoint {
  const KField* field = nullptr;
  std::vector<KElem> t;

  KElem eval_weight(const Weight& x) const {
    KElem acc = field->one();
    for (size_t i = 0; i < t.size(); ++i)
      if (x[i] != 0) acc = acc * t[i].pow(x[i]);
    return acc;
  }

  TorusPoint inverse() const {
    TorusPoint r{field, {}};
    for (const auto& c : t) r.t.push_back(c.inv());
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) s += ", ";
      s += t[i].str();
    }
    return s + ")";
  }
};

// x(w(t)) = (w^{-1} x)(t).
inline TorusPoint act_point(const RootDatum& rd, int w, const TorusPoint& t) {
  TorusPoint r{t.field, {}};
  int wi = rd.inverse(w);
  for (int i = 0; i < rd.rank(); ++i)
    r.t.push_back(t.eval_weight(rd.act(wi, rd.fundamental_weight(i))));
  return r;
}

// Regular means alpha(t) != 1 for every root alpha.
inline bool is_regular(const RootDatum& rd, const TorusPoint& t) {
  for (int k = 0; k < rd.num_pos_roots(); ++k) {
    KElem val = t.eval_weight(rd.pos_root(k).fund);
    if (val == t.field->one()) return false;
  }
  return true;
}

// phi_t : Theta -> k, theta_x -> x(t).
inline KElem evaluate(const LaurentPoly& f, const TorusPoint& t) {
  KElem acc = t.field->zero();
  for (const auto& [x, c] : f.terms())
    acc += c.specialize(*t.field) * t.eval_weight(x);
  return acc;
}

}  // namespace heckelab
