#pragma once

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "heckelab/root_datum.hpp"

namespace heckelab {

// Element u = t_x * w of the extended affine Weyl group W = W_0 |x P.
// Multiplication: (x,w)(x',w') = (x + w(x'), ww').
struct ExtAffineElt {
  Weight x;
  int w = 0;

  bool operator==(const ExtAffineElt& o) const { return w == o.w && x == o.x; }
  bool operator!=(const ExtAffineElt& o) const { return !(*this == o); }
  bool operator<(const ExtAffineElt& o) const {
    if (x != o.x) return x < o.x;
    return w < o.w;
  }
};

// Word over S = S_0 u {s_0} with a length-zero prefix from Omega.
// Letters 0..n-1 are the finite simple reflections, letter n is s_0.
struct AffineWord {
  int omega = 0;  // index into WeylAffine::omega()
  std::vector<int> letters;
};

struct CanonicalFactorization {
  int w = 0;       // finite left factor
  Weight x;        // antidominant translation part
  int v = 0;       // finite right factor
};

class WeylAffine {
 public:
  explicit WeylAffine(const RootDatum& rd) : rd_(rd) {
    n_ = rd_.rank();
    // s_0 reflects in the wall <v, beta^vee> = 1 of the fundamental alcove,
    // where beta^vee is the highest coroot; so beta is the highest short
    // root and s_0 = t_beta s_beta.
    theta_ = rd_.highest_short_root();
    s0_ = ExtAffineElt{theta_, rd_.reflection_of_highest_short_root()};
    for (int i = 0; i < n_; ++i)
      gens_.push_back(ExtAffineElt{Weight(n_, 0), rd_.simple_reflection(i)});
    gens_.push_back(s0_);
    if (length(s0_) != 1 || mul(s0_, s0_) != identity())
      throw std::logic_error("WeylAffine: affine generator conventions broken");
    build_omega();
  }

  const RootDatum& datum() const { return rd_; }
  int num_gens() const { return n_ + 1; }  // |S| = |S_0| + 1
  int affine_gen_index() const { return n_; }
  const ExtAffineElt& gen(int s) const { return gens_[s]; }
  const std::vector<ExtAffineElt>& omega() const { return omega_; }

  ExtAffineElt identity() const { return ExtAffineElt{Weight(n_, 0), 0}; }
  ExtAffineElt from_finite(int w) const {
    return ExtAffineElt{Weight(n_, 0), w};
  }
  ExtAffineElt translation(const Weight& x) const {
    return ExtAffineElt{x, 0};
  }

  ExtAffineElt mul(const ExtAffineElt& a, const ExtAffineElt& b) const {
    return ExtAffineElt{weight_add(a.x, rd_.act(a.w, b.x)),
                        rd_.mul(a.w, b.w)};
  }
  ExtAffineElt inv(const ExtAffineElt& a) const {
    int wi = rd_.inverse(a.w);
    return ExtAffineElt{weight_neg(rd_.act(wi, a.x)), wi};
  }

  // Iwahori-Matsumoto length of t_x w:
  //   sum over alpha > 0 with w^{-1}(alpha) > 0 of |<x, alpha^vee>|
  // + sum over alpha > 0 with w^{-1}(alpha) < 0 of |<x, alpha^vee> - 1|.
  // The side of the "-1" is pinned by l(t_x) = sum <x, alpha^vee> for
  // dominant x and l(w_0 t_x) = l(w_0) + l(t_x) for x dominant.
  int length(const ExtAffineElt& u) const {
    int wi = rd_.inverse(u.w);
    long total = 0;
    for (int k = 0; k < rd_.num_pos_roots(); ++k) {
      long p = rd_.pair_coroot(u.x, k);
      auto [img, sign] = rd_.act_pos_root(wi, k);
      (void)img;
      long term = sign > 0 ? p : p - 1;
      total += std::abs(term);
    }
    return int(total);
  }

  bool is_right_descent(const ExtAffineElt& u, int s) const {
    return length(mul(u, gens_[s])) < length(u);
  }
  bool is_left_descent(const ExtAffineElt& u, int s) const {
    return length(mul(gens_[s], u)) < length(u);
  }
  std::vector<int> right_descents(const ExtAffineElt& u) const {
    std::vector<int> d;
    for (int s = 0; s < num_gens(); ++s)
      if (is_right_descent(u, s)) d.push_back(s);
    return d;
  }
  std::vector<int> left_descents(const ExtAffineElt& u) const {
    std::vector<int> d;
    for (int s = 0; s < num_gens(); ++s)
      if (is_left_descent(u, s)) d.push_back(s);
    return d;
  }

  // Greedy right-descent stripping; deterministic (smallest letter first).
  AffineWord reduced_word(const ExtAffineElt& u) const {
    AffineWord w;
    ExtAffineElt cur = u;
    int l = length(cur);
    while (l > 0) {
      int pick = -1;
      for (int s = 0; s < num_gens(); ++s) {
        if (is_right_descent(cur, s)) {
          pick = s;
          break;
        }
      }
      if (pick < 0) throw std::logic_error("reduced_word: no descent found");
      w.letters.push_back(pick);
      cur = mul(cur, gens_[pick]);
      --l;
      if (length(cur) != l) throw std::logic_error("reduced_word: length did not drop by one");
    }
    std::reverse(w.letters.begin(), w.letters.end());
    w.omega = omega_index(cur);
    return w;
  }

  ExtAffineElt eval_word(const AffineWord& w) const {
    ExtAffineElt u = omega_[w.omega];
    for (int s : w.letters) u = mul(u, gens_[s]);
    return u;
  }

  int omega_index(const ExtAffineElt& u) const {
    for (int i = 0; i < int(omega_.size()); ++i)
      if (omega_[i] == u) return i;
    return -1;
  }

  // Omega-coset decomposition u = omega * u' with u' in W_a.
  std::pair<int, ExtAffineElt> split_omega(const ExtAffineElt& u) const {
    AffineWord w = reduced_word(u);
    ExtAffineElt ua = identity();
    for (int s : w.letters) ua = mul(ua, gens_[s]);
    return {w.omega, ua};
  }

  // All elements of length <= max_len, sorted by (length, element).
  std::vector<ExtAffineElt> ball(int max_len) const {
    std::set<ExtAffineElt> seen(omega_.begin(), omega_.end());
    std::vector<ExtAffineElt> frontier(omega_.begin(), omega_.end());
    for (int l = 0; l < max_len; ++l) {
      std::vector<ExtAffineElt> next;
      for (const auto& u : frontier)
        for (int s = 0; s < num_gens(); ++s) {
          ExtAffineElt v = mul(u, gens_[s]);
          if (length(v) == l + 1 && seen.insert(v).second) next.push_back(v);
        }
      frontier = std::move(next);
    }
    std::vector<ExtAffineElt> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(),
                     [this](const ExtAffineElt& a, const ExtAffineElt& b) {
                       int la = length(a), lb = length(b);
                       if (la != lb) return la < lb;
                       return a < b;
                     });
    return out;
  }

  // Y_0 = {u : R(u) is contained in {s_0}}.
  std::vector<ExtAffineElt> enumerate_Y0(int max_len) const {
    std::vector<ExtAffineElt> out;
    for (const auto& u : ball(max_len)) {
      bool ok = true;
      for (int s = 0; s < n_ && ok; ++s)
        if (is_right_descent(u, s)) ok = false;
      if (ok) out.push_back(u);
    }
    return out;
  }

  // Bruhat order.  Elements in different Omega-cosets are incomparable;
  // within W_a the subword criterion applies to any fixed reduced word.
  bool bruhat_leq(const ExtAffineElt& y, const ExtAffineElt& u) const {
    if (length(y) > length(u)) return false;
    auto [oy, ya] = split_omega(y);
    auto [ou, ua] = split_omega(u);
    if (oy != ou) return false;
    return downset(ua)->count(ya) != 0;
  }

  // {z in W_a : z <= u}, memoized; u must lie in W_a.
  std::shared_ptr<const std::set<ExtAffineElt>> downset(
      const ExtAffineElt& u) const {
    auto it = downset_memo_.find(u);
    if (it != downset_memo_.end()) return it->second;
    AffineWord w = reduced_word(u);
    assert(omega_[w.omega] == identity());
    auto cur = std::make_shared<std::set<ExtAffineElt>>();
    cur->insert(identity());
    for (int s : w.letters) {
      std::set<ExtAffineElt> nxt = *cur;
      for (const auto& z : *cur) nxt.insert(mul(z, gens_[s]));
      *cur = std::move(nxt);
    }
    downset_memo_[u] = cur;
    return cur;
  }

  // Unique factorization u = w * t_x * v with x antidominant and
  // R(w) within L(t_x), per the canonical-left-cell setup.  Asserts
  // uniqueness by exhausting W_0 and checks l(u) = l(t_x)+l(v)-l(w).
  CanonicalFactorization factor_canonical(const ExtAffineElt& u) const {
    std::optional<CanonicalFactorization> found;
    for (int w = 0; w < rd_.order(); ++w) {
      int wi = rd_.inverse(w);
      Weight x = rd_.act(wi, u.x);
      if (!rd_.is_antidominant(x)) continue;
      int v = rd_.mul(wi, u.w);
      if (!descents_within(w, x)) continue;
      if (found)
        throw std::logic_error("factor_canonical: factorization not unique");
      found = CanonicalFactorization{w, x, v};
    }
    if (!found) throw std::logic_error("factor_canonical: no factorization");
    int lt = length(translation(found->x));
    if (length(u) != lt + rd_.length(found->v) - rd_.length(found->w))
      throw std::logic_error("factor_canonical: length identity fails");
    return *found;
  }

  // Shortest elements n_x of t_x W_0 and m_x of W_0 t_x W_0 (the latter
  // after reducing x to its dominant representative), plus n_x w_0.
  struct SpecialElts {
    ExtAffineElt n_x;
    ExtAffineElt m_x;
    ExtAffineElt n_x_w0;
  };
  SpecialElts special_elements(const Weight& x) const {
    SpecialElts out{identity(), identity(), identity()};
    bool first = true;
    int best = 0, ties = 0;
    for (int w = 0; w < rd_.order(); ++w) {
      ExtAffineElt u{x, w};
      int l = length(u);
      if (first || l < best) {
        best = l;
        out.n_x = u;
        ties = 1;
        first = false;
      } else if (l == best) {
        ++ties;
      }
    }
    assert(ties == 1 && "n_x must be the unique shortest coset element");
    Weight dom = rd_.dominant_rep(x).first;
    first = true;
    best = 0;
    ties = 0;
    for (int w = 0; w < rd_.order(); ++w)
      for (int v = 0; v < rd_.order(); ++v) {
        ExtAffineElt u{rd_.act(w, dom), rd_.mul(w, v)};
        int l = length(u);
        if (first || l < best) {
          best = l;
          out.m_x = u;
          ties = 1;
          first = false;
        } else if (l == best && !(u == out.m_x)) {
          ++ties;
        }
      }
    assert(ties == 1 && "m_x must be the unique shortest double-coset element");
    out.n_x_w0 = mul(out.n_x, from_finite(rd_.longest()));
    return out;
  }

  // Left prefixes {z : l(z) + l(z^{-1} u) = l(u)}, memoized.  Every
  // omega is a prefix of everything (length-zero factors are free).
  std::shared_ptr<const std::set<ExtAffineElt>> prefixes(
      const ExtAffineElt& u) const {
    auto it = prefix_memo_.find(u);
    if (it != prefix_memo_.end()) return it->second;
    auto out = std::make_shared<std::set<ExtAffineElt>>();
    if (length(u) == 0) {
      out->insert(omega_.begin(), omega_.end());
    } else {
      out->insert(omega_.begin(), omega_.end());
      for (int s = 0; s < num_gens(); ++s) {
        if (!is_left_descent(u, s)) continue;
        auto sub = prefixes(mul(gens_[s], u));
        for (const auto& z : *sub) out->insert(mul(gens_[s], z));
      }
    }
    prefix_memo_[u] = out;
    return out;
  }

  // Lowest two-sided cell membership: u = z1 * w0 * z2 with
  // l(u) = l(z1) + nu + l(z2).
  bool c0_membership(const ExtAffineElt& u) const {
    int nu = rd_.nu();
    if (length(u) < nu) return false;
    ExtAffineElt w0 = from_finite(rd_.longest());
    for (const auto& z1 : *prefixes(u)) {
      ExtAffineElt r = mul(inv(z1), u);
      int lr = length(r);
      if (lr < nu) continue;
      if (length(mul(w0, r)) == lr - nu) return true;
    }
    return false;
  }

  // Canonical left cell inside c_0: {w * t_x * t_{-rho}} with x
  // antidominant and R(w) within L(t_x), truncated by length.
  std::vector<ExtAffineElt> canonical_cell_c0(int max_len) const {
    std::vector<ExtAffineElt> out;
    Weight rho = rd_.rho();
    int bound = max_len + rd_.nu() + 1;
    std::vector<ExtAffineElt> all;
    for (int w = 0; w < rd_.order(); ++w) {
      std::vector<int> coords(n_, 0);
      enumerate_box(coords, 0, bound, [&](const Weight& x) {
        if (!descents_within(w, x)) return;
        ExtAffineElt u{rd_.act(w, weight_sub(x, rho)), w};
        if (length(u) <= max_len) all.push_back(u);
      });
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
  }

  // The {w * t_x : x antidominant, R(w) within L(t_x)} construction,
  // truncated by length; per the canonical description of Y_0.
  std::vector<ExtAffineElt> y0_construction(int max_len) const {
    std::vector<ExtAffineElt> all;
    int bound = max_len + rd_.nu() + 1;
    for (int w = 0; w < rd_.order(); ++w) {
      std::vector<int> coords(n_, 0);
      enumerate_box(coords, 0, bound, [&](const Weight& x) {
        if (!descents_within(w, x)) return;
        ExtAffineElt u{rd_.act(w, x), w};
        if (length(u) <= max_len) all.push_back(u);
      });
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
  }

 private:
  // R(w) within L(t_x); both computed in W.
  bool descents_within(int w, const Weight& x) const {
    ExtAffineElt tw = from_finite(w);
    ExtAffineElt tx = translation(x);
    for (int s = 0; s < num_gens(); ++s)
      if (is_right_descent(tw, s) && !is_left_descent(tx, s)) return false;
    return true;
  }

  template <typename F>
  void enumerate_box(std::vector<int>& coords, int pos, int bound,
                     const F& fn) const {
    if (pos == n_) {
      fn(coords);
      return;
    }
    for (int c = -bound; c <= 0; ++c) {
      coords[pos] = c;
      enumerate_box(coords, pos + 1, bound, fn);
    }
  }

  // Omega = length-zero elements: for each w in W_0 the only candidate
  // translation is x with x_i = 1 exactly when w^{-1}(alpha_i) < 0.
  void build_omega() {
    for (int w = 0; w < rd_.order(); ++w) {
      Weight x(n_, 0);
      int wi = rd_.inverse(w);
      for (int i = 0; i < n_; ++i)
        if (rd_.act_pos_root(wi, i).second < 0) x[i] = 1;
      ExtAffineElt u{x, w};
      if (length(u) == 0) omega_.push_back(u);
    }
    std::sort(omega_.begin(), omega_.end(),
              [this](const ExtAffineElt& a, const ExtAffineElt& b) {
                if (a.w == 0 && b.w != 0) return true;
                if (b.w == 0 && a.w != 0) return false;
                return a < b;
              });
    assert(!omega_.empty() && omega_[0] == identity());
    // Omega is a subgroup: closed under multiplication and inverse.
    for (const auto& a : omega_) {
      assert(omega_index(inv(a)) >= 0);
      for (const auto& b : omega_) assert(omega_index(mul(a, b)) >= 0);
    }
  }

  const RootDatum& rd_;
  int n_ = 0;
  Weight theta_;
  ExtAffineElt s0_{Weight{}, 0};
  std::vector<ExtAffineElt> gens_;
  std::vector<ExtAffineElt> omega_;
  mutable std::map<ExtAffineElt,
                   std::shared_ptr<const std::set<ExtAffineElt>>>
      downset_memo_;
  mutable std::map<ExtAffineElt,
                   std::shared_ptr<const std::set<ExtAffineElt>>>
      prefix_memo_;
};

}  // namespace heckelab
