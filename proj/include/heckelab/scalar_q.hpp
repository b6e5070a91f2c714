#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "heckelab/rational.hpp"

namespace heckelab {

class KField;

// Element of a quadratic extension Q[v]/(v^2 - q0), stored as a + b*v.
// When the field knows a rational value for v the b-part is identically
// zero and arithmetic stays inside Q.  `field` may be null for plain
// rationals (b == 0); binary operations adopt the non-null side's field.
struct KElem {
  const KField* field = nullptr;
  Rat a = 0;
  Rat b = 0;

  KElem() = default;
  KElem(const KField* f, Rat av, Rat bv) : field(f), a(std::move(av)), b(std::move(bv)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const KElem& o) const { return a == o.a && b == o.b; }
  bool operator!=(const KElem& o) const { return !(*this == o); }

  KElem operator-() const { return KElem(field, -a, -b); }
  KElem operator+(const KElem& o) const;
  KElem operator-(const KElem& o) const;
  KElem operator*(const KElem& o) const;
  KElem operator/(const KElem& o) const;
  KElem& operator+=(const KElem& o) { return *this = *this + o; }
  KElem& operator-=(const KElem& o) { return *this = *this - o; }
  KElem& operator*=(const KElem& o) { return *this = *this * o; }

  KElem inv() const;
  KElem pow(long e) const;
  std::string str() const;
};

// Specialization field for the formal parameter: v is sent either to a
// symbol with v^2 = q0 (q0 not a rational square) or to an explicit
// rational square root of q0.
class KField {
 public:
  explicit KField(const Rat& q0) : q0_(q0) {
    if (auto r = rat_sqrt(q0)) v_ = *r;
  }
  KField(const Rat& q0, const Rat& sqrt_q) : q0_(q0) {
    if (sqrt_q * sqrt_q != q0)
      throw std::invalid_argument("KField: sqrt_q^2 != q0");
    v_ = sqrt_q;
  }

  const Rat& q0() const { return q0_; }
  bool v_is_rational() const { return v_.has_value(); }
  const Rat& v_value() const { return *v_; }
  bool same(const KField& o) const { return q0_ == o.q0_ && v_ == o.v_; }

  KElem zero() const { return KElem(this, 0, 0); }
  KElem one() const { return KElem(this, 1, 0); }
  KElem from_rat(const Rat& r) const { return KElem(this, r, 0); }
  KElem v_pow(long m) const {
    if (v_) return KElem(this, rat_pow(*v_, m), 0);
    long h = m >= 0 ? m / 2 : -((-m + 1) / 2);  // floor(m/2)
    Rat qh = rat_pow(q0_, h);
    if (m % 2 == 0) return KElem(this, qh, 0);
    return KElem(this, 0, qh);  // v^(2h+1) = q0^h * v
  }

 private:
  Rat q0_;
  std::optional<Rat> v_;
};

namespace detail {
inline const KField* join_fields(const KField* x, const KField* y) {
  if (x && y) {
    assert(x == y || x->same(*y));
    return x;
  }
  return x ? x : y;
}
}  // namespace detail

inline KElem KElem::operator+(const KElem& o) const {
  return KElem(detail::join_fields(field, o.field), a + o.a, b + o.b);
}
inline KElem KElem::operator-(const KElem& o) const {
  return KElem(detail::join_fields(field, o.field), a - o.a, b - o.b);
}
inline KElem KElem::operator*(const KElem& o) const {
  const KField* f = detail::join_fields(field, o.field);
  if (b == 0 && o.b == 0) return KElem(f, a * o.a, 0);
  assert(f != nullptr);
  const Rat& q0 = f->q0();
  return KElem(f, a * o.a + b * o.b * q0, a * o.b + b * o.a);
}
inline KElem KElem::inv() const {
  if (is_zero()) throw std::domain_error("KElem::inv: zero element");
  if (b == 0) return KElem(field, Rat(1) / a, 0);
  assert(field != nullptr);
  Rat d = a * a - b * b * field->q0();
  if (d == 0) throw std::domain_error("KElem::inv: zero norm");
  return KElem(field, a / d, -b / d);
}
inline KElem KElem::operator/(const KElem& o) const { return *this * o.inv(); }
inline KElem KElem::pow(long e) const {
  const KField* f = field;
  KElem base = e >= 0 ? *this : inv();
  unsigned long n = e >= 0 ? static_cast<unsigned long>(e)
                           : static_cast<unsigned long>(-(e + 1)) + 1;
  KElem acc(f, 1, 0);
  while (n != 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}
inline std::string KElem::str() const {
  if (b == 0) return rat_str(a);
  std::string s = rat_str(a);
  s += (b < 0) ? " - " : " + ";
  Rat ab = b < 0 ? Rat(-b) : b;
  s += rat_str(ab) + "v";
  return s;
}

// Laurent polynomials in v over Q; q is identified with v^2 throughout.
// Map keys are v-exponents and zero coefficients are never stored.
class ScalarQ {
 public:
  ScalarQ() = default;
  ScalarQ(const Rat& r) {
    if (r != 0) c_[0] = r;
  }
  ScalarQ(long n) : ScalarQ(Rat(n)) {}

  static ScalarQ v_pow(int m, const Rat& coeff = Rat(1)) {
    ScalarQ s;
    if (coeff != 0) s.c_[m] = coeff;
    return s;
  }
  static ScalarQ q_pow(int k, const Rat& coeff = Rat(1)) {
    return v_pow(2 * k, coeff);
  }

  bool is_zero() const { return c_.empty(); }
  bool operator==(const ScalarQ& o) const { return c_ == o.c_; }
  bool operator!=(const ScalarQ& o) const { return !(*this == o); }

  Rat coeff(int m) const {
    auto it = c_.find(m);
    return it == c_.end() ? Rat(0) : it->second;
  }
  int min_exp() const {
    assert(!c_.empty());
    return c_.begin()->first;
  }
  int max_exp() const {
    assert(!c_.empty());
    return c_.rbegin()->first;
  }
  bool is_monomial() const { return c_.size() == 1; }
  const std::map<int, Rat>& terms() const { return c_; }

  ScalarQ& operator+=(const ScalarQ& o) {
    for (const auto& [m, c] : o.c_) add_term(m, c);
    return *this;
  }
  ScalarQ& operator-=(const ScalarQ& o) {
    for (const auto& [m, c] : o.c_) add_term(m, -c);
    return *this;
  }
  ScalarQ operator+(const ScalarQ& o) const {
    ScalarQ r = *this;
    r += o;
    return r;
  }
  ScalarQ operator-(const ScalarQ& o) const {
    ScalarQ r = *this;
    r -= o;
    return r;
  }
  ScalarQ operator-() const {
    ScalarQ r;
    for (const auto& [m, c] : c_) r.c_[m] = -c;
    return r;
  }
  ScalarQ operator*(const ScalarQ& o) const {
    ScalarQ r;
    for (const auto& [m1, c1] : c_)
      for (const auto& [m2, c2] : o.c_) r.add_term(m1 + m2, c1 * c2);
    return r;
  }
  ScalarQ& operator*=(const ScalarQ& o) { return *this = *this * o; }

  // v -> v^{-1} (bar involution on scalars).
  ScalarQ bar() const {
    ScalarQ r;
    for (const auto& [m, c] : c_) r.c_[-m] = c;
    return r;
  }

  // Exact division in Q[v, v^{-1}]; nullopt when o does not divide.
  static std::optional<ScalarQ> divide(const ScalarQ& a, const ScalarQ& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return ScalarQ();
    const int qmin = a.min_exp() - b.min_exp();
    const int btop = b.max_exp();
    const Rat blead = b.coeff(btop);
    ScalarQ r = a, q;
    while (!r.is_zero()) {
      int k = r.max_exp() - btop;
      if (k < qmin) return std::nullopt;
      Rat c = r.coeff(r.max_exp()) / blead;
      ScalarQ term = v_pow(k, c);
      q += term;
      r -= term * b;
    }
    return q;
  }

  KElem specialize(const KField& f) const {
    if (f.v_is_rational()) {
      Rat acc(0);
      for (const auto& [m, c] : c_) acc += c * rat_pow(f.v_value(), m);
      return f.from_rat(acc);
    }
    Rat ea(0), eb(0);
    for (const auto& [m, c] : c_) {
      if (m % 2 == 0)
        ea += c * rat_pow(f.q0(), m / 2);
      else {
        long h = m >= 0 ? (m - 1) / 2 : -((-m + 1) / 2);
        eb += c * rat_pow(f.q0(), h);
      }
    }
    return KElem(&f, ea, eb);
  }

  // Canonical text form: terms in increasing v-exponent, explicit
  // coefficients, e.g. "-1/2*v^-1 + 2 + 3*v^2".
  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : c_) {
      Rat ac = c < 0 ? Rat(-c) : c;
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      os << rat_str(ac);
      if (m == 1)
        os << "*v";
      else if (m != 0)
        os << "*v^" << m;
    }
    return os.str();
  }

 private:
  void add_term(int m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = c_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

  std::map<int, Rat> c_;
};

inline ScalarQ operator*(const Rat& r, const ScalarQ& s) {
  return ScalarQ(r) * s;
}

}  // namespace heckelab
