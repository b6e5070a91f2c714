#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "heckelab/hecke_bernstein.hpp"
#include "heckelab/weyl_affine.hpp"

namespace heckelab {

// Hecke algebra element in the Iwahori-Matsumoto presentation: a finite sum
// sum_u c_u T_u over extended affine Weyl group elements, coefficients in
// the scalar ring Q[v, v^{-1}] with v^2 = q.  Relations:
//   T_s T_u = T_{su} if l(su) > l(u), else q T_{su} + (q-1) T_u
// and T_om T_u = T_{om u} for the length-zero elements om.
class IMHeckeElt {
 public:
  IMHeckeElt() = default;

  void add_term(const ExtAffineElt& u, const ScalarQ& c) {
    if (c.is_zero()) return;
    auto it = c_.find(u);
    if (it == c_.end()) {
      c_.emplace(u, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  ScalarQ coeff(const ExtAffineElt& u) const {
    auto it = c_.find(u);
    return it == c_.end() ? ScalarQ() : it->second;
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<ExtAffineElt, ScalarQ>& terms() const { return c_; }

  bool operator==(const IMHeckeElt& o) const { return c_ == o.c_; }
  bool operator!=(const IMHeckeElt& o) const { return !(*this == o); }

  IMHeckeElt operator+(const IMHeckeElt& o) const {
    IMHeckeElt r = *this;
    for (const auto& [u, c] : o.c_) r.add_term(u, c);
    return r;
  }
  IMHeckeElt operator-(const IMHeckeElt& o) const {
    IMHeckeElt r = *this;
    for (const auto& [u, c] : o.c_) r.add_term(u, -c);
    return r;
  }
  IMHeckeElt operator*(const ScalarQ& s) const {
    IMHeckeElt r;
    if (s.is_zero()) return r;
    for (const auto& [u, c] : c_) r.c_.emplace(u, c * s);
    return r;
  }

 private:
  std::map<ExtAffineElt, ScalarQ> c_;
};

inline IMHeckeElt im_T(const ExtAffineElt& u) {
  IMHeckeElt h;
  h.add_term(u, ScalarQ(1));
  return h;
}

// h * T_s for a generator index s (0..n-1 finite, n affine).
inline IMHeckeElt im_mul_Ts(const WeylAffine& W, const IMHeckeElt& h, int s) {
  const ScalarQ q = ScalarQ::q_pow(1);
  const ScalarQ qm1 = q - ScalarQ(1);
  IMHeckeElt out;
  for (const auto& [u, c] : h.terms()) {
    ExtAffineElt us = W.mul(u, W.gen(s));
    if (W.length(us) > W.length(u)) {
      out.add_term(us, c);
    } else {
      out.add_term(us, c * q);
      out.add_term(u, c * qm1);
    }
  }
  return out;
}

// h * T_om for a length-zero element (index into W.omega()).
inline IMHeckeElt im_mul_omega(const WeylAffine& W, const IMHeckeElt& h, int om) {
  IMHeckeElt out;
  const ExtAffineElt& g = W.omega()[om];
  for (const auto& [u, c] : h.terms()) out.add_term(W.mul(u, g), c);
  return out;
}

inline IMHeckeElt im_mul(const WeylAffine& W, const IMHeckeElt& a, const IMHeckeElt& b) {
  IMHeckeElt out;
  for (const auto& [u, c] : b.terms()) {
    AffineWord word = W.reduced_word(u);
    IMHeckeElt cur = im_mul_omega(W, a, word.omega);
    for (int s : word.letters) cur = im_mul_Ts(W, cur, s);
    out = out + cur * c;
  }
  return out;
}

// T_u^{-1}, using T_s^{-1} = q^{-1} T_s + (q^{-1} - 1).
inline IMHeckeElt im_T_inverse(const WeylAffine& W, const ExtAffineElt& u) {
  const ScalarQ qi = ScalarQ::q_pow(-1);
  const ScalarQ qi1 = qi - ScalarQ(1);
  AffineWord word = W.reduced_word(u);
  IMHeckeElt h = im_T(W.identity());
  for (int j = static_cast<int>(word.letters.size()) - 1; j >= 0; --j) {
    int s = word.letters[j];
    IMHeckeElt tsi = im_T(W.gen(s)) * qi;
    tsi.add_term(W.identity(), qi1);
    h = im_mul(W, h, tsi);
  }
  int om_inv = W.omega_index(W.inv(W.omega()[word.omega]));
  return im_mul_omega(W, h, om_inv);
}

// ---------------------------------------------------------------------------
// Kazhdan-Lusztig polynomials on the extended group, memoized.  Polynomials
// are insensitive to the length-zero factor: both arguments are reduced to
// the affine Weyl group by stripping the same leading length-zero element.
class KLTable {
 public:
  explicit KLTable(const WeylAffine& W, int max_len = 12) : W_(W), max_len_(max_len) {}

  int max_len() const { return max_len_; }
  const WeylAffine& group() const { return W_; }

  QPoly P(const ExtAffineElt& y, const ExtAffineElt& u) const {
    auto [oy, ya] = W_.split_omega(y);
    auto [ou, ua] = W_.split_omega(u);
    if (oy != ou) return {};
    return P_affine(ya, ua);
  }

  // Coefficient of q^{(l(u)-l(y)-1)/2} in P_{y,u} (zero unless the length
  // difference is odd).
  Rat mu(const ExtAffineElt& y, const ExtAffineElt& u) const {
    int d = W_.length(u) - W_.length(y);
    if (d <= 0 || d % 2 == 0) return Rat(0);
    QPoly p = P(y, u);
    size_t k = static_cast<size_t>((d - 1) / 2);
    return k < p.size() ? Rat(long(p[k])) : Rat(0);
  }

  size_t cache_size() const { return memo_.size(); }

  // Direct access to the memo for serialization.
  const std::map<std::pair<ExtAffineElt, ExtAffineElt>, QPoly>& memo() const {
    return memo_;
  }
  void preload(const ExtAffineElt& y, const ExtAffineElt& u, const QPoly& p) const {
    memo_[{y, u}] = p;
  }

 private:
  QPoly P_affine(const ExtAffineElt& y, const ExtAffineElt& u) const {
    if (y == u) return {1};
    int lu = W_.length(u);
    int ly = W_.length(y);
    if (ly >= lu || !W_.bruhat_leq(y, u)) return {};
    if (lu > max_len_) {
      throw std::invalid_argument("KLTable: element length " + std::to_string(lu) +
                                  " exceeds bound " + std::to_string(max_len_));
    }
    auto key = std::make_pair(y, u);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    // A left descent of u within the affine Weyl group.
    int s = -1;
    for (int g = 0; g < W_.num_gens(); ++g) {
      if (W_.is_left_descent(u, g)) {
        s = g;
        break;
      }
    }
    if (s < 0) throw std::logic_error("KLTable: no left descent");
    ExtAffineElt su = W_.mul(W_.gen(s), u);
    ExtAffineElt sy = W_.mul(W_.gen(s), y);
    bool y_desc = W_.is_left_descent(y, s);

    // P_{y,u} = q^{1-c} P_{sy,su} + q^c P_{y,su}
    //           - sum_{y <= z < su, sz < z} mu(z,su) q^{(l(u)-l(z))/2} P_{y,z}
    // with c = 1 when sy < y.
    QPoly acc;
    if (y_desc) {
      acc = qpoly_add(P_affine(sy, su), qpoly_shift(P_affine(y, su), 1));
    } else {
      acc = qpoly_add(qpoly_shift(P_affine(sy, su), 1), P_affine(y, su));
    }
    auto down = W_.downset(su);
    for (const auto& z : *down) {
      if (z == su) continue;
      if (!W_.is_left_descent(z, s)) continue;
      if (!W_.bruhat_leq(y, z)) continue;
      int lz = W_.length(z);
      int d = W_.length(su) - lz;
      if (d <= 0 || d % 2 == 0) continue;
      QPoly pz = P_affine(z, su);
      size_t k = static_cast<size_t>((d - 1) / 2);
      long long m = (k < pz.size()) ? pz[k] : 0;
      if (m == 0) continue;
      QPoly term = qpoly_shift(P_affine(y, z), (lu - lz) / 2);
      for (auto& coefficient : term) coefficient *= m;
      acc = qpoly_sub(acc, term);
    }

    // Sanity invariants of Kazhdan-Lusztig polynomials in this setting:
    // constant term 1, nonnegative coefficients, bounded degree.
    if (acc.empty() || acc[0] != 1) {
      throw std::logic_error("KLTable: constant term is not 1");
    }
    for (long long coefficient : acc) {
      if (coefficient < 0) throw std::logic_error("KLTable: negative coefficient");
    }
    if (2 * static_cast<int>(acc.size() - 1) > lu - ly - 1) {
      throw std::logic_error("KLTable: degree bound violated");
    }
    memo_.emplace(key, acc);
    return acc;
  }

  const WeylAffine& W_;
  int max_len_;
  mutable std::map<std::pair<ExtAffineElt, ExtAffineElt>, QPoly> memo_;
};

// ---------------------------------------------------------------------------
// Canonical bases:
//   C_u  = v^{-l(u)} sum_{y <= u} P_{y,u}(q) T_y
//   C'_u = v^{l(u)}  sum_{y <= u} (-1)^{l(u)-l(y)} q^{-l(y)} P_{y,u}(q^{-1}) T_y

inline IMHeckeElt c_basis_C(const WeylAffine& W, const KLTable& kl, const ExtAffineElt& u) {
  auto [ou, ua] = W.split_omega(u);
  const ExtAffineElt& om = W.omega()[ou];
  IMHeckeElt h;
  for (const auto& z : *W.downset(ua)) {
    QPoly p = kl.P(z, ua);
    if (p.empty()) continue;
    h.add_term(W.mul(om, z), qpoly_to_scalar(p));
  }
  return h * ScalarQ::v_pow(-W.length(u));
}

inline IMHeckeElt c_basis_Cprime(const WeylAffine& W, const KLTable& kl,
                                 const ExtAffineElt& u) {
  const int lu = W.length(u);
  auto [ou, ua] = W.split_omega(u);
  const ExtAffineElt& om = W.omega()[ou];
  IMHeckeElt h;
  for (const auto& z : *W.downset(ua)) {
    QPoly p = kl.P(z, ua);
    if (p.empty()) continue;
    int lz = W.length(z);
    Rat sign = ((lu - lz) % 2 == 0) ? Rat(1) : Rat(-1);
    h.add_term(W.mul(om, z),
               qpoly_to_scalar_qinv(p) * ScalarQ::q_pow(-lz, sign));
  }
  return h * ScalarQ::v_pow(lu);
}

// ---------------------------------------------------------------------------
// Bridge between the two presentations.

// Precomputed Bernstein images of the Iwahori-Matsumoto generators.
class PresentationBridge {
 public:
  explicit PresentationBridge(const WeylAffine& W) : W_(W), rd_(W.datum()) {
    // finite generators map to themselves
    for (int i = 0; i < rd_.rank(); ++i) {
      gen_img_.push_back(hecke_T(rd_, rd_.simple_reflection(i)));
    }
    // affine generator s_0 = t_beta s_beta with beta the highest short root:
    //   theta_beta = v^{-l(t_beta)} T_{t_beta} = v^{-l(t_beta)} T_{s_0} T_{s_beta}
    // so T_{s_0} = v^{l(t_beta)} theta_beta T_{s_beta}^{-1}.
    {
      Weight th = rd_.highest_short_root();
      int lt = W_.length(W_.translation(th));
      HeckeElt img = hecke_mul(rd_, hecke_theta(rd_, th),
                               bernstein_T_inverse(rd_.reflection_of_highest_short_root()));
      gen_img_.push_back(img * ScalarQ::v_pow(lt));
    }
    // length-zero elements om = t_z w with z dominant:
    //   T_om = v^{l(t_z)} theta_z T_{w^{-1}}^{-1}
    for (const auto& om : W_.omega()) {
      if (!rd_.is_dominant(om.x)) {
        throw std::logic_error("PresentationBridge: nondominant length-zero part");
      }
      int lt = W_.length(W_.translation(om.x));
      HeckeElt img = hecke_mul(rd_, hecke_theta(rd_, om.x),
                               bernstein_T_inverse(rd_.inverse(om.w)));
      omega_img_.push_back(img * ScalarQ::v_pow(lt));
    }
  }

  const WeylAffine& group() const { return W_; }

  // T_w^{-1} in the Bernstein presentation for finite w.
  HeckeElt bernstein_T_inverse(int w) const {
    const ScalarQ qi = ScalarQ::q_pow(-1);
    const ScalarQ qi1 = qi - ScalarQ(1);
    HeckeElt h = hecke_T(rd_, rd_.identity());
    const auto& word = rd_.elt(w).word;
    for (int j = static_cast<int>(word.size()) - 1; j >= 0; --j) {
      HeckeElt tsi = hecke_T(rd_, rd_.simple_reflection(word[j])) * qi;
      tsi.add_term(rd_.identity(), LaurentPoly::constant(rd_.rank(), qi1));
      h = hecke_mul(rd_, h, tsi);
    }
    return h;
  }

  HeckeElt to_bernstein(const IMHeckeElt& h) const {
    HeckeElt out;
    for (const auto& [u, c] : h.terms()) {
      AffineWord word = W_.reduced_word(u);
      HeckeElt cur = omega_img_[word.omega];
      for (int s : word.letters) cur = hecke_mul(rd_, cur, gen_img_[s]);
      out = out + cur * c;
    }
    return out;
  }

  // theta_x = v^{l(t_z)-l(t_y)} T_{t_y} T_{t_z}^{-1} with x = y - z, y and z
  // dominant.
  IMHeckeElt theta_im(const Weight& x) const {
    const int n = rd_.rank();
    Weight y(n, 0), z(n, 0);
    for (int i = 0; i < n; ++i) {
      if (x[i] >= 0) {
        y[i] = x[i];
      } else {
        z[i] = -x[i];
      }
    }
    ExtAffineElt ty = W_.translation(y), tz = W_.translation(z);
    IMHeckeElt out = im_mul(W_, im_T(ty), im_T_inverse(W_, tz));
    return out * ScalarQ::v_pow(W_.length(tz) - W_.length(ty));
  }

  IMHeckeElt from_bernstein(const HeckeElt& h) const {
    IMHeckeElt out;
    for (const auto& [w, f] : h.terms()) {
      IMHeckeElt tw = im_T(W_.from_finite(w));
      for (const auto& [x, c] : f.terms()) {
        out = out + im_mul(W_, tw, theta_im(x)) * c;
      }
    }
    return out;
  }

 private:
  const WeylAffine& W_;
  const RootDatum& rd_;
  std::vector<HeckeElt> gen_img_;
  std::vector<HeckeElt> omega_img_;
};

// ---------------------------------------------------------------------------
// Y_0 = {u : all right descents of u are affine}.
inline bool in_Y0(const WeylAffine& W, const ExtAffineElt& u) {
  for (int s = 0; s < W.num_gens() - 1; ++s) {
    if (W.is_right_descent(u, s)) return false;
  }
  return true;
}

// Gamma_0 = {u : the right descent set is exactly the finite generators}.
inline bool in_Gamma0(const WeylAffine& W, const ExtAffineElt& u) {
  for (int s = 0; s < W.num_gens() - 1; ++s) {
    if (!W.is_right_descent(u, s)) return false;
  }
  return !W.is_right_descent(u, W.affine_gen_index());
}

}  // namespace heckelab
