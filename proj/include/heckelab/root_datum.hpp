#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckelab/rational.hpp"
#include "heckelab/scalar_q.hpp"

namespace heckelab {

// Weights live in the weight lattice P = Z^n, written in the basis of
// fundamental weights.  Coroots are written in the basis of simple
// coroots, so <x, beta^vee> is a plain dot product.
using Weight = std::vector<int>;

inline Weight weight_add(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Weight weight_sub(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Weight weight_neg(const Weight& a) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline Weight weight_scale(int c, const Weight& a) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}
inline bool weight_is_zero(const Weight& a) {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}
inline long weight_dot(const Weight& a, const Weight& b) {
  long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += long(a[i]) * b[i];
  return s;
}

// Polynomials in q with integer coefficients (Poincare polynomials,
// Kazhdan-Lusztig polynomials).  coeffs[k] is the q^k coefficient.
using QPoly = std::vector<long long>;

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline QPoly qpoly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qpoly_trim(r);
  return r;
}
inline QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qpoly_trim(r);
  return r;
}
inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qpoly_trim(r);
  return r;
}
inline QPoly qpoly_shift(const QPoly& a, int k) {
  if (a.empty()) return {};
  QPoly r(a.size() + k, 0);
  for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
  return r;
}
inline Rat qpoly_eval(const QPoly& p, const Rat& q) {
  Rat acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * q + Rat(long(p[i]));
  return acc;
}
inline ScalarQ qpoly_to_scalar(const QPoly& p) {
  ScalarQ s;
  for (size_t i = 0; i < p.size(); ++i)
    s += ScalarQ::q_pow(int(i), Rat(long(p[i])));
  return s;
}
// p(q^{-1}) as a Laurent scalar in v (v^2 = q).
inline ScalarQ qpoly_to_scalar_qinv(const QPoly& p) {
  ScalarQ s;
  for (size_t i = 0; i < p.size(); ++i)
    s += ScalarQ::q_pow(-int(i), Rat(long(p[i])));
  return s;
}
inline std::string qpoly_str(const QPoly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!s.empty()) s += p[i] > 0 ? " + " : " - ";
    else if (p[i] < 0) s += "-";
    long long ac = p[i] > 0 ? p[i] : -p[i];
    s += std::to_string(ac);
    if (i == 1) s += "*q";
    else if (i > 1) s += "*q^" + std::to_string(i);
  }
  return s;
}

struct RootInfo {
  Weight fund;    // coordinates in the fundamental-weight basis
  Weight simple;  // coordinates in the simple-root basis
  Weight coroot;  // coroot coordinates in the simple-coroot basis
  int height = 0; // sum of simple-root coordinates
};

struct FiniteWeylElt {
  std::vector<int> word;  // reduced word in simple reflections
  std::vector<long> mat;  // n x n action on P, row-major
  int len = 0;
};

// A finite based root datum of type A1, A2, A3, B2 or G2 together with a
// full enumeration of its Weyl group.  Conventions: Cartan entry
// A[i][j] = <alpha_j, alpha_i^vee>; in B2 alpha_1 is long, in G2 alpha_2
// is long (so alpha_1 is short in both rank-2 non-simply-laced types).
class RootDatum {
 public:
  static RootDatum build(const std::string& label) {
    std::vector<std::vector<long>> cartan;
    if (label == "A1")
      cartan = {{2}};
    else if (label == "A2")
      cartan = {{2, -1}, {-1, 2}};
    else if (label == "B2")
      cartan = {{2, -1}, {-2, 2}};
    else if (label == "G2")
      cartan = {{2, -3}, {-1, 2}};
    else if (label == "A3")
      cartan = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    else
      throw std::invalid_argument("RootDatum::build: unknown type " + label);
    return RootDatum(label, cartan);
  }

  const std::string& label() const { return label_; }
  int rank() const { return n_; }
  long cartan(int i, int j) const { return cartan_[i][j]; }
  int num_pos_roots() const { return int(pos_roots_.size()); }
  const RootInfo& pos_root(int k) const { return pos_roots_[k]; }
  const std::vector<RootInfo>& pos_roots() const { return pos_roots_; }

  int order() const { return int(elts_.size()); }
  const FiniteWeylElt& elt(int w) const { return elts_[w]; }
  int identity() const { return 0; }
  int simple_reflection(int i) const { return simple_idx_[i]; }
  int longest() const { return w0_; }
  int mul(int a, int b) const { return mult_[a][b]; }
  int inverse(int a) const { return inv_[a]; }
  int length(int a) const { return elts_[a].len; }

  // Action of w on a weight (fundamental-weight coordinates).
  Weight act(int w, const Weight& x) const {
    const auto& m = elts_[w].mat;
    Weight r(n_, 0);
    for (int i = 0; i < n_; ++i) {
      long s = 0;
      for (int j = 0; j < n_; ++j) s += m[i * n_ + j] * x[j];
      r[i] = int(s);
    }
    return r;
  }

  // Signed positive-root permutation: image of positive root k under w,
  // as (root index, sign).
  std::pair<int, int> act_pos_root(int w, int k) const {
    int v = root_perm_[w][k];
    return {v >= 0 ? v : ~v, v >= 0 ? +1 : -1};
  }

  // <x, alpha^vee> for positive root index k.
  long pair_coroot(const Weight& x, int k) const {
    return weight_dot(x, pos_roots_[k].coroot);
  }

  const Weight& simple_root(int i) const { return pos_roots_[i].fund; }
  const Weight& highest_root() const { return pos_roots_[theta_].fund; }
  int highest_root_index() const { return theta_; }
  int reflection_of_highest_root() const { return s_theta_; }
  // The positive root whose coroot is the highest coroot (equals the highest
  // root exactly in the simply-laced types).  The affine wall of the
  // fundamental alcove in the weight space pairs against this coroot.
  const Weight& highest_short_root() const { return pos_roots_[theta_short_].fund; }
  int highest_short_root_index() const { return theta_short_; }
  int reflection_of_highest_short_root() const { return s_theta_short_; }

  int nu() const { return num_pos_roots(); }  // l(w_0)
  Weight rho() const { return Weight(n_, 1); }
  Weight two_rho_coroot() const { return two_rho_vee_; }
  Weight fundamental_weight(int i) const {
    Weight x(n_, 0);
    x[i] = 1;
    return x;
  }

  bool is_dominant(const Weight& x) const {
    return std::all_of(x.begin(), x.end(), [](int c) { return c >= 0; });
  }
  bool is_antidominant(const Weight& x) const {
    return std::all_of(x.begin(), x.end(), [](int c) { return c <= 0; });
  }
  // Representative of W_0 x in the dominant cone, plus one w with
  // w(dom) = x.
  std::pair<Weight, int> dominant_rep(const Weight& x) const {
    for (int w = 0; w < order(); ++w) {
      Weight y = act(inv_[w], x);
      if (is_dominant(y)) return {y, w};
    }
    throw std::logic_error("dominant_rep: unreachable");
  }

  // Right descent set of w in W_0: i with l(w s_i) < l(w), equivalently
  // w(alpha_i) < 0.
  std::vector<int> right_descents_finite(int w) const {
    std::vector<int> d;
    for (int i = 0; i < n_; ++i)
      if (root_perm_[w][i] < 0) d.push_back(i);
    return d;
  }
  std::vector<int> left_descents_finite(int w) const {
    return right_descents_finite(inv_[w]);
  }

  QPoly poincare_polynomial() const {
    QPoly p(nu() + 1, 0);
    for (const auto& e : elts_) p[e.len] += 1;
    return p;
  }

  // Product-formula identity for the Poincare polynomial, checked as an
  // exact polynomial identity via root heights <rho, alpha^vee>:
  //   prod (1 - q^{1+h}) == (sum_w q^{l(w)}) * prod (1 - q^h).
  bool poincare_product_identity() const {
    QPoly lhs = {1}, rhs = poincare_polynomial();
    QPoly rhs_prod = {1};
    for (const auto& r : pos_roots_) {
      int h = int(weight_dot(rho(), r.coroot));
      QPoly f1(h + 2, 0), f2(h + 1, 0);
      f1[0] = 1;
      f1[h + 1] = -1;
      f2[0] = 1;
      f2[h] = -1;
      lhs = qpoly_mul(lhs, f1);
      rhs_prod = qpoly_mul(rhs_prod, f2);
    }
    return lhs == qpoly_mul(rhs, rhs_prod);
  }

  // Steinberg weight e_w = w(sum of x_alpha over simple alpha with
  // w(alpha) < 0).
  Weight steinberg_weight(int w) const {
    Weight s(n_, 0);
    for (int i = 0; i < n_; ++i)
      if (root_perm_[w][i] < 0) s[i] = 1;
    return act(w, s);
  }

  int elt_index_by_matrix(const std::vector<long>& m) const {
    auto it = mat_index_.find(m);
    return it == mat_index_.end() ? -1 : it->second;
  }

 private:
  RootDatum(std::string label, std::vector<std::vector<long>> cartan)
      : label_(std::move(label)), cartan_(std::move(cartan)) {
    n_ = int(cartan_.size());
    build_roots();
    build_group();
    build_root_perm();
    locate_highest_root();
    two_rho_vee_.assign(n_, 0);
    for (const auto& r : pos_roots_) two_rho_vee_ = weight_add(two_rho_vee_, r.coroot);
  }

  void build_roots() {
    // Closure of the simple roots under simple reflections.  Track
    // fundamental-weight, simple-root and simple-coroot coordinates.
    std::map<Weight, RootInfo> seen;
    std::queue<RootInfo> bfs;
    for (int i = 0; i < n_; ++i) {
      RootInfo r;
      r.fund.assign(n_, 0);
      for (int k = 0; k < n_; ++k) r.fund[k] = int(cartan_[k][i]);
      r.simple.assign(n_, 0);
      r.simple[i] = 1;
      r.coroot.assign(n_, 0);
      r.coroot[i] = 1;
      r.height = 1;
      seen[r.fund] = r;
      bfs.push(r);
    }
    while (!bfs.empty()) {
      RootInfo r = bfs.front();
      bfs.pop();
      for (int i = 0; i < n_; ++i) {
        RootInfo s = r;
        int p = r.fund[i];  // <r, alpha_i^vee>
        for (int k = 0; k < n_; ++k) s.fund[k] -= p * int(cartan_[k][i]);
        s.simple[i] -= p;
        long pc = 0;  // <alpha_i, r^vee>
        for (int j = 0; j < n_; ++j) pc += r.coroot[j] * cartan_[j][i];
        s.coroot[i] -= int(pc);
        s.height = 0;
        for (int k = 0; k < n_; ++k) s.height += s.simple[k];
        if (!seen.count(s.fund)) {
          seen[s.fund] = s;
          bfs.push(s);
        }
      }
    }
    for (const auto& [f, r] : seen) {
      bool pos = std::all_of(r.simple.begin(), r.simple.end(),
                             [](int c) { return c >= 0; });
      if (pos) pos_roots_.push_back(r);
    }
    assert(2 * pos_roots_.size() == seen.size());
    // Order: increasing height, descending lex within a height; places
    // the simple roots at indices 0..n-1 in index order.
    std::sort(pos_roots_.begin(), pos_roots_.end(),
              [](const RootInfo& a, const RootInfo& b) {
                if (a.height != b.height) return a.height < b.height;
                return a.simple > b.simple;
              });
    for (int i = 0; i < n_; ++i) assert(pos_roots_[i].simple[i] == 1);
    for (int k = 0; k < int(pos_roots_.size()); ++k)
      root_lookup_[pos_roots_[k].fund] = k;
  }

  std::vector<long> simple_matrix(int i) const {
    std::vector<long> m(n_ * n_, 0);
    for (int k = 0; k < n_; ++k) m[k * n_ + k] = 1;
    for (int k = 0; k < n_; ++k) m[k * n_ + i] -= cartan_[k][i];
    return m;
  }

  static std::vector<long> mat_mul(int n, const std::vector<long>& a,
                                   const std::vector<long>& b) {
    std::vector<long> c(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        long aik = a[i * n + k];
        if (aik == 0) continue;
        for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
      }
    return c;
  }

  void build_group() {
    FiniteWeylElt id;
    id.mat.assign(n_ * n_, 0);
    for (int k = 0; k < n_; ++k) id.mat[k * n_ + k] = 1;
    elts_.push_back(id);
    mat_index_[id.mat] = 0;
    std::vector<std::vector<long>> smat(n_);
    simple_idx_.assign(n_, -1);
    for (int i = 0; i < n_; ++i) smat[i] = simple_matrix(i);
    // BFS by length; discovery order is deterministic.
    for (size_t head = 0; head < elts_.size(); ++head) {
      FiniteWeylElt cur = elts_[head];
      for (int i = 0; i < n_; ++i) {
        std::vector<long> m = mat_mul(n_, cur.mat, smat[i]);
        if (!mat_index_.count(m)) {
          FiniteWeylElt next;
          next.word = cur.word;
          next.word.push_back(i);
          next.mat = std::move(m);
          next.len = cur.len + 1;
          mat_index_[next.mat] = int(elts_.size());
          elts_.push_back(std::move(next));
        }
      }
    }
    for (int i = 0; i < n_; ++i) simple_idx_[i] = mat_index_.at(smat[i]);
    int order = int(elts_.size());
    mult_.assign(order, std::vector<int>(order, -1));
    inv_.assign(order, -1);
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        mult_[a][b] = mat_index_.at(mat_mul(n_, elts_[a].mat, elts_[b].mat));
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        if (mult_[a][b] == 0) inv_[a] = b;
    w0_ = 0;
    for (int a = 0; a < order; ++a)
      if (elts_[a].len > elts_[w0_].len) w0_ = a;
    assert(elts_[w0_].len == num_pos_roots());
  }

  void build_root_perm() {
    int order = int(elts_.size());
    int np = num_pos_roots();
    root_perm_.assign(order, std::vector<int>(np, 0));
    for (int w = 0; w < order; ++w)
      for (int k = 0; k < np; ++k) {
        Weight im = act(w, pos_roots_[k].fund);
        auto it = root_lookup_.find(im);
        if (it != root_lookup_.end()) {
          root_perm_[w][k] = it->second;
        } else {
          it = root_lookup_.find(weight_neg(im));
          assert(it != root_lookup_.end());
          root_perm_[w][k] = ~it->second;  // bitwise-not marks negative
        }
      }
  }

  int reflection_index_of(int root_index) const {
    // Reflection in beta: x -> x - <x, beta^vee> beta.
    std::vector<long> m(n_ * n_, 0);
    const Weight& b = pos_roots_[root_index].fund;
    const Weight& bv = pos_roots_[root_index].coroot;
    for (int k = 0; k < n_; ++k) m[k * n_ + k] = 1;
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i) m[k * n_ + i] -= long(b[k]) * bv[i];
    return mat_index_.at(m);
  }

  void locate_highest_root() {
    theta_ = 0;
    theta_short_ = 0;
    auto coroot_height = [this](int k) {
      int h = 0;
      for (int c : pos_roots_[k].coroot) h += c;
      return h;
    };
    for (int k = 0; k < num_pos_roots(); ++k) {
      if (pos_roots_[k].height > pos_roots_[theta_].height) theta_ = k;
      if (coroot_height(k) > coroot_height(theta_short_)) theta_short_ = k;
    }
    s_theta_ = reflection_index_of(theta_);
    s_theta_short_ = reflection_index_of(theta_short_);
  }

  std::string label_;
  int n_ = 0;
  std::vector<std::vector<long>> cartan_;
  std::vector<RootInfo> pos_roots_;
  std::map<Weight, int> root_lookup_;
  std::map<std::vector<long>, int> mat_index_;
  std::vector<FiniteWeylElt> elts_;
  std::vector<int> simple_idx_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> root_perm_;
  int w0_ = 0;
  int theta_ = 0;
  int s_theta_ = 0;
  int theta_short_ = 0;
  int s_theta_short_ = 0;
  Weight two_rho_vee_;
};

}  // namespace heckelab
