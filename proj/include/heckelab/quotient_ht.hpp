#pragma once

// Central-character quotients of the affine Hecke algebra.
//
// Specializing the center Z(H) = Theta^{W_0} at a torus point t yields a
// |W_0|^2-dimensional algebra H_t with basis {T_w theta_{e_u}}, where e_u
// ranges over the Steinberg weights.  This header provides:
//   - torus points (rational and principal) over an exact field k with a
//     square root of q,
//   - reduction of Theta to the Steinberg basis modulo the central
//     character, by orbit interpolation (regular points) or by an exact
//     symbolic solve over the Laurent ring (every point),
//   - the quotient model with left/right generator action matrices,
//   - the four bilateral ideals cut out by the two spherical symmetrizers,
//     and verifiers for their simultaneous-vanishing pattern, for the
//     principal-point dimension-one statement, and for irreducibility of
//     the module generated by C theta_rho C',
//   - a Lie-algebra eigenspace criterion for the vanishing, in type A.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heckelab/hecke_bernstein.hpp"
#include "heckelab/laurent.hpp"
#include "heckelab/linalg.hpp"
#include "heckelab/root_datum.hpp"

namespace heckelab {

// ---------------------------------------------------------------------------
// Torus points
// ---------------------------------------------------------------------------

// Point with the given nonzero rational fundamental-weight coordinates.
inline TorusPoint rational_point(const RootDatum& rd, const KField& field,
                                 const std::vector<Rat>& coords) {
  if (int(coords.size()) != rd.rank())
    throw std::invalid_argument("rational_point: wrong number of coordinates");
  TorusPoint t{&field, {}};
  for (const Rat& c : coords) {
    if (c == 0)
      throw std::invalid_argument("rational_point: coordinates must be nonzero");
    t.t.push_back(field.from_rat(c));
  }
  return t;
}

// The point with alpha(t) = q for every simple root alpha, realized as
// t_i = v^{<x_i, 2 rho^vee>}.  The exponents are integers, so the point is
// defined over k for any q0 (v may be a formal square root).
inline TorusPoint principal_point(const RootDatum& rd, const KField& field) {
  TorusPoint t{&field, {}};
  for (int i = 0; i < rd.rank(); ++i) {
    long m = 0;
    for (int k = 0; k < rd.num_pos_roots(); ++k)
      m += rd.pair_coroot(rd.fundamental_weight(i), k);
    t.t.push_back(field.v_pow(m));
  }
  for (int j = 0; j < rd.rank(); ++j)
    if (!(t.eval_weight(rd.simple_root(j)) == field.v_pow(2)))
      throw std::logic_error("principal_point: alpha(t) != q");
  return t;
}

inline bool is_principal(const RootDatum& rd, const TorusPoint& t) {
  for (int j = 0; j < rd.rank(); ++j)
    if (!(t.eval_weight(rd.simple_root(j)) == t.field->v_pow(2))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Steinberg-basis reduction
// ---------------------------------------------------------------------------

// Writes Laurent polynomials in the Steinberg basis {theta_{e_u}} modulo the
// central character at t.  Two independent paths:
//   REGULAR  — interpolate through the W_0-orbit of t; the orbit matrix
//              M[w][u] = e_u(w(t)) is invertible exactly when t is regular.
//   GENERIC  — solve f = sum_u z_u theta_{e_u} with z_u in Z(H) exactly over
//              the Laurent ring (freeness of Theta over the center makes the
//              solution polynomial), then evaluate z_u at t.  Valid at every
//              point, including non-regular ones.
class ThetaReducer {
 public:
  ThetaReducer(const RootDatum& rd, const TorusPoint& t)
      : rd_(&rd), t_(t), regular_(is_regular(rd, t)) {
    const int N = rd.order();
    e_.reserve(N);
    for (int u = 0; u < N; ++u) e_.push_back(rd.steinberg_weight(u));
    pts_.reserve(N);
    for (int w = 0; w < N; ++w) pts_.push_back(act_point(rd, w, t));
    if (regular_) {
      Mat<KElem> M(N, N);
      for (int w = 0; w < N; ++w)
        for (int u = 0; u < N; ++u) M.at(w, u) = pts_[w].eval_weight(e_[u]);
      auto inv = inverse_field(M, t.field->one());
      if (!inv)
        throw std::logic_error(
            "ThetaReducer: orbit matrix singular at a regular point");
      Minv_ = std::move(*inv);
    }
  }

  const RootDatum& rd() const { return *rd_; }
  const TorusPoint& point() const { return t_; }
  const KField& field() const { return *t_.field; }
  bool regular() const { return regular_; }
  const Weight& steinberg(int u) const { return e_[u]; }

  std::vector<KElem> reduce(const LaurentPoly& f) const {
    return regular_ ? reduce_regular(f) : reduce_generic(f);
  }

  std::vector<KElem> reduce_regular(const LaurentPoly& f) const {
    if (!regular_)
      throw std::invalid_argument("reduce_regular: point is not regular");
    const int N = rd_->order();
    std::vector<KElem> b;
    b.reserve(N);
    for (int w = 0; w < N; ++w) b.push_back(evaluate(f, pts_[w]));
    return Minv_.mul_vec(b);
  }

  std::vector<KElem> reduce_generic(const LaurentPoly& f) const {
    auto z = z_coordinates(f);
    std::vector<KElem> out;
    out.reserve(z.size());
    for (const auto& zi : z) out.push_back(evaluate(zi, t_));
    return out;
  }

  // Exact coordinates of f over the center: f = sum_u z_u theta_{e_u} with
  // every z_u a W_0-invariant Laurent polynomial.  Solved by Cramer's rule
  // against the monomial matrix A[w][u] = theta_{w(e_u)}; the divisions are
  // exact precisely because {theta_{e_u}} is a basis of a free module.
  std::vector<LaurentPoly> z_coordinates(const LaurentPoly& f) const {
    ensure_solver();
    const int N = rd_->order();
    std::vector<LaurentPoly> r;
    r.reserve(N);
    for (int w = 0; w < N; ++w) r.push_back(act(*rd_, w, f));
    std::vector<LaurentPoly> z(N);
    LaurentPoly recon;
    for (int u = 0; u < N; ++u) {
      LaurentPoly num;
      for (int w = 0; w < N; ++w)
        if (!r[w].is_zero()) num += adj_.at(u, w) * r[w];
      z[u] = exact_divide(num, det_);
      if (!is_w0_invariant(*rd_, z[u]))
        throw std::logic_error("ThetaReducer: coordinate not W_0-invariant");
      recon += z[u] * LaurentPoly::monomial(e_[u]);
    }
    if (!(recon == f))
      throw std::logic_error("ThetaReducer: coordinate reconstruction failed");
    return z;
  }

 private:
  void ensure_solver() const {
    if (solver_ready_) return;
    const int N = rd_->order();
    Mat<LaurentPoly> A(N, N);
    for (int w = 0; w < N; ++w)
      for (int u = 0; u < N; ++u)
        A.at(w, u) = LaurentPoly::monomial(rd_->act(w, e_[u]));
    auto div = [](const LaurentPoly& a, const LaurentPoly& b) {
      return exact_divide(a, b);
    };
    det_ = bareiss_det(A, div);
    if (det_.is_zero())
      throw std::logic_error("ThetaReducer: Steinberg matrix is singular");
    adj_ = Mat<LaurentPoly>(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        Mat<LaurentPoly> minor(N - 1, N - 1);
        for (int r = 0, rr = 0; r < N; ++r) {
          if (r == i) continue;
          for (int c = 0, cc = 0; c < N; ++c) {
            if (c == j) continue;
            minor.at(rr, cc) = A.at(r, c);
            ++cc;
          }
          ++rr;
        }
        LaurentPoly cof = bareiss_det(minor, div);
        adj_.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
      }
    Mat<LaurentPoly> prod = A.mul(adj_);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const LaurentPoly& want = (i == j) ? det_ : LaurentPoly();
        if (!(prod.at(i, j) == want))
          throw std::logic_error("ThetaReducer: adjugate identity failed");
      }
    solver_ready_ = true;
  }

  const RootDatum* rd_;
  TorusPoint t_;
  bool regular_;
  std::vector<Weight> e_;
  std::vector<TorusPoint> pts_;
  Mat<KElem> Minv_;
  mutable bool solver_ready_ = false;
  mutable Mat<LaurentPoly> adj_;
  mutable LaurentPoly det_;
};

// Cross-validation of the two reduction paths at a regular point.
inline bool reduction_paths_agree(const ThetaReducer& red,
                                  const std::vector<LaurentPoly>& samples) {
  if (!red.regular()) return false;
  for (const auto& f : samples)
    if (!(red.reduce_regular(f) == red.reduce_generic(f))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Point-independent symbolic data, shared across torus points of one type
// ---------------------------------------------------------------------------

class HtLab {
 public:
  explicit HtLab(const RootDatum& rd) : rd_(&rd) {
    const int N = rd.order();
    e_.reserve(N);
    for (int u = 0; u < N; ++u) e_.push_back(rd.steinberg_weight(u));
  }
  HtLab(const HtLab&) = delete;
  HtLab& operator=(const HtLab&) = delete;

  const RootDatum& rd() const { return *rd_; }
  const Weight& steinberg(int u) const { return e_[u]; }

  const HeckeElt& C() const { ensure_families(); return C_; }
  const HeckeElt& Cprime() const { ensure_families(); return Cp_; }
  // theta_rho C' and theta_rho C
  const HeckeElt& rho_Cprime() const { ensure_families(); return rhoCp_; }
  const HeckeElt& rho_C() const { ensure_families(); return rhoC_; }
  // C theta_rho C' and C' theta_rho C
  const HeckeElt& c_rho_cp() const { ensure_families(); return c_rho_cp_; }
  const HeckeElt& cp_rho_c() const { ensure_families(); return cp_rho_c_; }
  // theta_{e_u} X
  const HeckeElt& theta_eC(int u) const { ensure_families(); return theta_eC_[u]; }
  const HeckeElt& theta_eCp(int u) const { ensure_families(); return theta_eCp_[u]; }
  // X theta_{e_u} Y for the four symmetrizer pairs
  const HeckeElt& c_theta_c(int u) const { ensure_families(); return c_theta_c_[u]; }
  const HeckeElt& c_theta_cp(int u) const { ensure_families(); return c_theta_cp_[u]; }
  const HeckeElt& cp_theta_c(int u) const { ensure_families(); return cp_theta_c_[u]; }
  const HeckeElt& cp_theta_cp(int u) const { ensure_families(); return cp_theta_cp_[u]; }
  // theta_{e_u} C theta_rho C'  and  theta_{e_u} C' theta_rho C
  const HeckeElt& bridge_col(int u) const { ensure_families(); return phi_col_[u]; }
  const HeckeElt& bridge_col_dual(int u) const { ensure_families(); return psi_col_[u]; }

  // Symmetrized ratio sum for theta_x, cached per weight.
  const LaurentPoly& wrs(const Weight& x) const {
    auto it = wrs_cache_.find(x);
    if (it != wrs_cache_.end()) return it->second;
    LaurentPoly w = weyl_ratio_sum(*rd_, LaurentPoly::monomial(x));
    return wrs_cache_.emplace(x, std::move(w)).first->second;
  }

  // The symmetrized product expansion A with C theta_rho C' = A C'.
  const LaurentPoly& A_factor() const {
    if (!A_) A_ = theta_prod_plus(*rd_);
    return *A_;
  }

 private:
  void ensure_families() const {
    if (families_ready_) return;
    const RootDatum& rd = *rd_;
    const int N = rd.order();
    C_ = C_element(rd);
    Cp_ = Cprime_element(rd);
    HeckeElt theta_rho = hecke_theta(rd, rd.rho());
    rhoCp_ = hecke_mul(rd, theta_rho, Cp_);
    rhoC_ = hecke_mul(rd, theta_rho, C_);
    c_rho_cp_ = hecke_mul(rd, C_, rhoCp_);
    cp_rho_c_ = hecke_mul(rd, Cp_, rhoC_);
    theta_eC_.reserve(N);
    theta_eCp_.reserve(N);
    for (int u = 0; u < N; ++u) {
      HeckeElt th = hecke_embed(rd, LaurentPoly::monomial(e_[u]));
      theta_eC_.push_back(hecke_mul(rd, th, C_));
      theta_eCp_.push_back(hecke_mul(rd, th, Cp_));
    }
    for (int u = 0; u < N; ++u) {
      c_theta_c_.push_back(hecke_mul(rd, C_, theta_eC_[u]));
      c_theta_cp_.push_back(hecke_mul(rd, C_, theta_eCp_[u]));
      cp_theta_c_.push_back(hecke_mul(rd, Cp_, theta_eC_[u]));
      cp_theta_cp_.push_back(hecke_mul(rd, Cp_, theta_eCp_[u]));
      phi_col_.push_back(hecke_mul(rd, theta_eC_[u], rhoCp_));
      psi_col_.push_back(hecke_mul(rd, theta_eCp_[u], rhoC_));
    }
    families_ready_ = true;
  }

  const RootDatum* rd_;
  std::vector<Weight> e_;
  mutable bool families_ready_ = false;
  mutable HeckeElt C_, Cp_, rhoCp_, rhoC_, c_rho_cp_, cp_rho_c_;
  mutable std::vector<HeckeElt> theta_eC_, theta_eCp_;
  mutable std::vector<HeckeElt> c_theta_c_, c_theta_cp_, cp_theta_c_, cp_theta_cp_;
  mutable std::vector<HeckeElt> phi_col_, psi_col_;
  mutable std::map<Weight, LaurentPoly> wrs_cache_;
  mutable std::optional<LaurentPoly> A_;
};

// Coordinates of h in the basis {T_w theta_{e_u}} of the quotient at the
// reducer's point, as a vector of length |W_0|^2 indexed by w*|W_0|+u.
inline std::vector<KElem> ht_vec(const ThetaReducer& red, const HeckeElt& h) {
  const int N = red.rd().order();
  std::vector<KElem> out(size_t(N) * N, red.field().zero());
  for (const auto& [w, f] : h.terms()) {
    auto c = red.reduce(f);
    for (int u = 0; u < N; ++u) out[size_t(w) * N + u] += c[u];
  }
  return out;
}

inline bool vec_is_zero(const std::vector<KElem>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The quotient model
// ---------------------------------------------------------------------------

struct HtValidation {
  bool right_quadratic = false;    // right T_s satisfies T^2 = (q-1)T + q
  bool theta_units = false;        // theta_{x_i} theta_{-x_i} = 1 both sides
  bool left_right_commute = false; // [left(g), right(g')] = 0 on sampled pairs
  bool central_scalar = false;     // invariant elements act as phi_t(z) * id
  bool product_transport = false;  // vec(a*b) = left_op(a) * vec(b) on samples
  bool ok() const {
    return right_quadratic && theta_units && left_right_commute &&
           central_scalar && product_transport;
  }
};

class HtModel {
 public:
  HtModel(const HtLab& lab, const TorusPoint& t)
      : lab_(&lab), red_(lab.rd(), t), N_(lab.rd().order()) {
    if (N_ > 12)
      throw std::invalid_argument(
          "HtModel: Weyl group too large for the dense quotient model");
  }
  HtModel(const HtModel&) = delete;
  HtModel& operator=(const HtModel&) = delete;

  const HtLab& lab() const { return *lab_; }
  const RootDatum& rd() const { return lab_->rd(); }
  const ThetaReducer& reducer() const { return red_; }
  const TorusPoint& point() const { return red_.point(); }
  const KField& field() const { return red_.field(); }
  int module_rank() const { return N_; }   // |W_0|
  int dim() const { return N_ * N_; }      // |W_0|^2
  int idx(int w, int u) const { return w * N_ + u; }

  std::vector<KElem> vec(const HeckeElt& h) const { return ht_vec(red_, h); }

  // Central character: evaluation of an invariant Laurent polynomial at t.
  KElem phi(const LaurentPoly& z) const {
    if (!is_w0_invariant(rd(), z))
      throw std::invalid_argument("HtModel::phi: element is not invariant");
    return evaluate(z, point());
  }

  // Left multiplication by T_s follows the length rule directly.
  const Mat<KElem>& left_T(int s) const {
    auto it = left_T_.find(s);
    if (it != left_T_.end()) return it->second;
    const RootDatum& r = rd();
    const KElem one = field().one();
    const KElem q0 = field().v_pow(2);
    const KElem qm1 = q0 - one;
    Mat<KElem> m(dim(), dim());
    int sref = r.simple_reflection(s);
    for (int w = 0; w < N_; ++w) {
      int sw = r.mul(sref, w);
      bool up = r.length(sw) > r.length(w);
      for (int u = 0; u < N_; ++u) {
        int col = idx(w, u);
        if (up) {
          m.at(idx(sw, u), col) = one;
        } else {
          m.at(idx(sw, u), col) = q0;
          m.at(idx(w, u), col) = qm1;
        }
      }
    }
    return left_T_.emplace(s, std::move(m)).first->second;
  }

  // Right multiplication by T_s via the Bernstein commutation relations.
  const Mat<KElem>& right_T(int s) const {
    auto it = right_T_.find(s);
    if (it != right_T_.end()) return it->second;
    Mat<KElem> m(dim(), dim());
    for (int w = 0; w < N_; ++w)
      for (int u = 0; u < N_; ++u) {
        HeckeElt b;
        b.add_term(w, LaurentPoly::monomial(lab_->steinberg(u)));
        set_column(m, idx(w, u), vec(right_mul_Ts(rd(), b, s)));
      }
    return right_T_.emplace(s, std::move(m)).first->second;
  }

  // Left multiplication by theta_{x_i} (inv = false) or theta_{-x_i}.
  const Mat<KElem>& left_theta(int i, bool inv) const {
    auto& cache = inv ? left_theta_inv_ : left_theta_;
    auto it = cache.find(i);
    if (it != cache.end()) return it->second;
    Weight x = rd().fundamental_weight(i);
    if (inv) x = weight_neg(x);
    HeckeElt th = hecke_theta(rd(), x);
    Mat<KElem> m(dim(), dim());
    for (int w = 0; w < N_; ++w)
      for (int u = 0; u < N_; ++u) {
        HeckeElt b;
        b.add_term(w, LaurentPoly::monomial(lab_->steinberg(u)));
        set_column(m, idx(w, u), vec(hecke_mul(rd(), th, b)));
      }
    return cache.emplace(i, std::move(m)).first->second;
  }

  const Mat<KElem>& right_theta(int i, bool inv) const {
    auto& cache = inv ? right_theta_inv_ : right_theta_;
    auto it = cache.find(i);
    if (it != cache.end()) return it->second;
    Weight x = rd().fundamental_weight(i);
    if (inv) x = weight_neg(x);
    Mat<KElem> m(dim(), dim());
    for (int w = 0; w < N_; ++w)
      for (int u = 0; u < N_; ++u) {
        auto c = red_.reduce(LaurentPoly::monomial(
            weight_add(lab_->steinberg(u), x)));
        for (int up = 0; up < N_; ++up) m.at(idx(w, up), idx(w, u)) = c[up];
      }
    return cache.emplace(i, std::move(m)).first->second;
  }

  // All cached generator actions on the chosen side: T_s then theta_{+-x_i}.
  std::vector<const Mat<KElem>*> side_ops(bool right) const {
    std::vector<const Mat<KElem>*> ops;
    for (int s = 0; s < rd().rank(); ++s)
      ops.push_back(right ? &right_T(s) : &left_T(s));
    for (int i = 0; i < rd().rank(); ++i) {
      ops.push_back(right ? &right_theta(i, false) : &left_theta(i, false));
      ops.push_back(right ? &right_theta(i, true) : &left_theta(i, true));
    }
    return ops;
  }

  // Matrix of left (resp. right) multiplication by an arbitrary element.
  Mat<KElem> left_op(const HeckeElt& g) const {
    Mat<KElem> m(dim(), dim());
    for (int w = 0; w < N_; ++w)
      for (int u = 0; u < N_; ++u) {
        HeckeElt b;
        b.add_term(w, LaurentPoly::monomial(lab_->steinberg(u)));
        set_column(m, idx(w, u), vec(hecke_mul(rd(), g, b)));
      }
    return m;
  }
  Mat<KElem> right_op(const HeckeElt& g) const {
    Mat<KElem> m(dim(), dim());
    for (int w = 0; w < N_; ++w)
      for (int u = 0; u < N_; ++u) {
        HeckeElt b;
        b.add_term(w, LaurentPoly::monomial(lab_->steinberg(u)));
        set_column(m, idx(w, u), vec(hecke_mul(rd(), b, g)));
      }
    return m;
  }

  HtValidation validate() const {
    HtValidation v;
    const KElem one = field().one();
    const KElem q0 = field().v_pow(2);
    Mat<KElem> I = Mat<KElem>::identity_like(dim(), one);

    v.right_quadratic = true;
    for (int s = 0; s < rd().rank(); ++s) {
      const Mat<KElem>& R = right_T(s);
      Mat<KElem> want = R.scale(q0 - one).add(I.scale(q0));
      if (!(R.mul(R) == want)) v.right_quadratic = false;
    }

    v.theta_units = true;
    for (int i = 0; i < rd().rank(); ++i) {
      if (!(left_theta(i, false).mul(left_theta(i, true)) == I))
        v.theta_units = false;
      if (!(right_theta(i, false).mul(right_theta(i, true)) == I))
        v.theta_units = false;
    }

    auto lops = side_ops(false);
    auto rops = side_ops(true);
    v.left_right_commute = true;
    // Full pair check at small rank; deterministic stride otherwise.
    size_t pairs = lops.size() * rops.size();
    size_t stride = pairs <= 64 ? 1 : pairs / 36;
    size_t k = 0;
    for (const auto* L : lops)
      for (const auto* R : rops) {
        if (k++ % stride) continue;
        if (!(L->mul(*R) == R->mul(*L))) v.left_right_commute = false;
      }

    LaurentPoly orbit_sum;
    for (int w = 0; w < N_; ++w)
      orbit_sum += LaurentPoly::monomial(rd().act(w, rd().fundamental_weight(0)));
    v.central_scalar =
        left_op(hecke_embed(rd(), orbit_sum)) == I.scale(phi(orbit_sum)) &&
        right_op(hecke_embed(rd(), orbit_sum)) == I.scale(phi(orbit_sum));

    v.product_transport = true;
    const HeckeElt& a = lab_->C();
    for (const HeckeElt* b : {&lab_->Cprime(), &lab_->rho_Cprime()}) {
      auto lhs = vec(hecke_mul(rd(), a, *b));
      auto rhs = left_op(a).mul_vec(vec(*b));
      if (!(lhs == rhs)) v.product_transport = false;
    }
    return v;
  }

 private:
  static void set_column(Mat<KElem>& m, int col, const std::vector<KElem>& v) {
    for (int r = 0; r < m.rows; ++r) m.at(r, col) = v[r];
  }

  const HtLab* lab_;
  ThetaReducer red_;
  int N_;
  mutable std::map<int, Mat<KElem>> left_T_, right_T_;
  mutable std::map<int, Mat<KElem>> left_theta_, left_theta_inv_;
  mutable std::map<int, Mat<KElem>> right_theta_, right_theta_inv_;
};

// ---------------------------------------------------------------------------
// Span utilities
// ---------------------------------------------------------------------------

// Smallest subspace containing the generators and stable under the given
// operators (worklist closure; deterministic).
inline EchelonSpan<KElem> submodule_span(
    const std::vector<const Mat<KElem>*>& ops,
    const std::vector<std::vector<KElem>>& gens) {
  EchelonSpan<KElem> span;
  std::vector<std::vector<KElem>> work;
  auto push = [&](std::vector<KElem> v) {
    if (span.insert(v)) work.push_back(std::move(v));
  };
  for (const auto& g : gens) push(g);
  for (size_t head = 0; head < work.size(); ++head) {
    std::vector<KElem> cur = work[head];
    for (const auto* op : ops) push(op->mul_vec(cur));
  }
  return span;
}

inline bool spans_equal(const EchelonSpan<KElem>& a, const EchelonSpan<KElem>& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& [p, row] : a.rows())
    if (!b.contains(row)) return false;
  return true;
}

// Absolute irreducibility of a module given by its generator action
// matrices: the word closure of the operators must span the full d x d
// matrix algebra.
inline bool burnside_irreducible(const std::vector<Mat<KElem>>& ops,
                                  const KElem& one) {
  if (ops.empty() || ops[0].rows == 0) return false;
  const int d = ops[0].rows;
  EchelonSpan<KElem> span;
  std::vector<Mat<KElem>> basis;
  auto push = [&](Mat<KElem> m) {
    if (span.insert(m.a)) basis.push_back(std::move(m));
  };
  push(Mat<KElem>::identity_like(d, one));
  for (size_t head = 0; head < basis.size(); ++head) {
    Mat<KElem> cur = basis[head];
    for (const auto& g : ops) push(cur.mul(g));
  }
  return span.dim() == d * d;
}

namespace detail {

// Solve S * X = Y over the field; returns X and whether the columns of S
// are independent.  Consistency (every column of Y in the column space of
// S) is required.
inline Mat<KElem> coords_in(const Mat<KElem>& S, const Mat<KElem>& Y,
                            bool* independent) {
  Mat<KElem> aug(S.rows, S.cols + Y.cols);
  for (int i = 0; i < S.rows; ++i) {
    for (int j = 0; j < S.cols; ++j) aug.at(i, j) = S.at(i, j);
    for (int j = 0; j < Y.cols; ++j) aug.at(i, S.cols + j) = Y.at(i, j);
  }
  auto pivots = rref_in_place(aug);
  for (int p : pivots)
    if (p >= S.cols)
      throw std::logic_error("coords_in: column outside the span");
  if (independent) *independent = int(pivots.size()) == S.cols;
  Mat<KElem> X(S.cols, Y.cols);
  for (size_t k = 0; k < pivots.size(); ++k)
    for (int j = 0; j < Y.cols; ++j)
      X.at(pivots[k], j) = aug.at(int(k), S.cols + j);
  return X;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The rank-|W_0| left modules H_t C and H_t C'
// ---------------------------------------------------------------------------

// H_t X for X = C or C', with basis the classes of theta_{e_u} X.  The
// basis really is one: its |W_0| vectors are independent in H_t for every
// point (checked, reported in `basis_independent`).
struct HtLeftModule {
  int n = 0;
  bool dual = false;               // X = C' instead of C
  bool basis_independent = false;
  Mat<KElem> basis;                // dim x n, column u = vec(theta_{e_u} X)
  std::vector<Mat<KElem>> act_T;          // left action of T_s
  std::vector<Mat<KElem>> act_theta;      // theta_{x_i} then theta_{-x_i}
  Mat<KElem> act_C;                // left action of the symmetrizer C
  Mat<KElem> act_Cprime;           // left action of the symmetrizer C'

  std::vector<const Mat<KElem>*> gen_ops() const {
    std::vector<const Mat<KElem>*> ops;
    for (const auto& m : act_T) ops.push_back(&m);
    for (const auto& m : act_theta) ops.push_back(&m);
    return ops;
  }
};

inline HtLeftModule left_module(const HtModel& M, bool dual) {
  const HtLab& lab = M.lab();
  const RootDatum& rd = M.rd();
  const int n = M.module_rank();
  HtLeftModule mod;
  mod.n = n;
  mod.dual = dual;

  auto base_elt = [&](int u) -> const HeckeElt& {
    return dual ? lab.theta_eCp(u) : lab.theta_eC(u);
  };

  mod.basis = Mat<KElem>(M.dim(), n);
  for (int u = 0; u < n; ++u) {
    auto v = M.vec(base_elt(u));
    for (int r = 0; r < M.dim(); ++r) mod.basis.at(r, u) = v[r];
  }

  // Images of the basis under every generator, then one simultaneous solve.
  std::vector<HeckeElt> images;
  for (int s = 0; s < rd.rank(); ++s)
    for (int u = 0; u < n; ++u)
      images.push_back(hecke_mul(rd, hecke_T(rd, rd.simple_reflection(s)),
                                 base_elt(u)));
  for (int i = 0; i < rd.rank(); ++i)
    for (int sign = 0; sign < 2; ++sign) {
      Weight x = rd.fundamental_weight(i);
      if (sign) x = weight_neg(x);
      for (int u = 0; u < n; ++u)
        images.push_back(hecke_mul(rd, hecke_theta(rd, x), base_elt(u)));
    }
  for (int u = 0; u < n; ++u)
    images.push_back(dual ? lab.c_theta_cp(u) : lab.c_theta_c(u));
  for (int u = 0; u < n; ++u)
    images.push_back(dual ? lab.cp_theta_cp(u) : lab.cp_theta_c(u));

  Mat<KElem> Y(M.dim(), int(images.size()));
  for (size_t j = 0; j < images.size(); ++j) {
    auto v = M.vec(images[j]);
    for (int r = 0; r < M.dim(); ++r) Y.at(r, int(j)) = v[r];
  }
  Mat<KElem> X = detail::coords_in(mod.basis, Y, &mod.basis_independent);

  auto take = [&](int block) {
    Mat<KElem> m(n, n);
    for (int u = 0; u < n; ++u)
      for (int r = 0; r < n; ++r) m.at(r, u) = X.at(r, block * n + u);
    return m;
  };
  int block = 0;
  for (int s = 0; s < rd.rank(); ++s) mod.act_T.push_back(take(block++));
  for (int i = 0; i < 2 * rd.rank(); ++i) mod.act_theta.push_back(take(block++));
  mod.act_C = take(block++);
  mod.act_Cprime = take(block++);
  return mod;
}

// Coordinates (in the theta_{e_u} X basis) of elements of H_t X.
inline Mat<KElem> module_coords(const HtModel& M, const HtLeftModule& mod,
                                const std::vector<const HeckeElt*>& elts) {
  Mat<KElem> Y(M.dim(), int(elts.size()));
  for (size_t j = 0; j < elts.size(); ++j) {
    auto v = M.vec(*elts[j]);
    for (int r = 0; r < M.dim(); ++r) Y.at(r, int(j)) = v[r];
  }
  return detail::coords_in(mod.basis, Y, nullptr);
}

// ---------------------------------------------------------------------------
// The four bilateral ideals
// ---------------------------------------------------------------------------

struct IdealDims {
  int c_c = 0;        // dim C H_t C
  int c_cp = 0;       // dim C H_t C'
  int cp_c = 0;       // dim C' H_t C
  int cp_cp_inv = 0;  // dim C' H_s C' at the inverse point s = t^{-1}
  bool bounded = false;           // each dimension is at most 1
  bool single_generator = false;  // the mixed ideals are spanned by the
                                  // single elements C theta_rho C', C' theta_rho C
  bool simultaneous = false;      // all four vanish together or none does
};

inline IdealDims ideal_dims(const HtModel& M, const ThetaReducer& red_inv) {
  const HtLab& lab = M.lab();
  const int n = M.module_rank();
  IdealDims d;

  EchelonSpan<KElem> s_cc, s_ccp, s_cpc, s_cpcp;
  for (int u = 0; u < n; ++u) {
    s_cc.insert(M.vec(lab.c_theta_c(u)));
    s_ccp.insert(M.vec(lab.c_theta_cp(u)));
    s_cpc.insert(M.vec(lab.cp_theta_c(u)));
    s_cpcp.insert(ht_vec(red_inv, lab.cp_theta_cp(u)));
  }
  d.c_c = s_cc.dim();
  d.c_cp = s_ccp.dim();
  d.cp_c = s_cpc.dim();
  d.cp_cp_inv = s_cpcp.dim();
  d.bounded = d.c_c <= 1 && d.c_cp <= 1 && d.cp_c <= 1 && d.cp_cp_inv <= 1;

  EchelonSpan<KElem> g_ccp, g_cpc;
  g_ccp.insert(M.vec(lab.c_rho_cp()));
  g_cpc.insert(M.vec(lab.cp_rho_c()));
  d.single_generator = spans_equal(s_ccp, g_ccp) && spans_equal(s_cpc, g_cpc);

  const bool any = d.c_c || d.c_cp || d.cp_c || d.cp_cp_inv;
  const bool all = d.c_c && d.c_cp && d.cp_c && d.cp_cp_inv;
  d.simultaneous = !any || all;
  return d;
}

// ---------------------------------------------------------------------------
// Vanishing criteria via the symmetrized ratio sums
// ---------------------------------------------------------------------------

struct Thm34Point {
  IdealDims dims;
  bool family_x_zero = false;      // phi_t(wrs(theta_x)) = 0 on the x sample
  bool family_rho_e_zero = false;  // phi_t(wrs(theta_{rho+e_u})) = 0, all u
  bool criteria_match = false;     // both families agree with the dims
};

// The x sample must contain every Steinberg weight e_u for the criterion to
// be decisive (those classes span Theta over the center).
inline Thm34Point thm34_check(const HtModel& M, const ThetaReducer& red_inv,
                              const std::vector<Weight>& x_sample) {
  const HtLab& lab = M.lab();
  const RootDatum& rd = M.rd();
  const int n = M.module_rank();
  Thm34Point r;
  r.dims = ideal_dims(M, red_inv);

  r.family_x_zero = true;
  bool have_all_e = true;
  for (int u = 0; u < n; ++u) {
    bool found = false;
    for (const auto& x : x_sample) found = found || x == lab.steinberg(u);
    have_all_e = have_all_e && found;
  }
  if (!have_all_e)
    throw std::invalid_argument("thm34_check: sample must contain all e_u");
  for (const auto& x : x_sample)
    if (!M.phi(lab.wrs(x)).is_zero()) r.family_x_zero = false;

  r.family_rho_e_zero = true;
  for (int u = 0; u < n; ++u) {
    Weight x = weight_add(rd.rho(), lab.steinberg(u));
    if (!M.phi(lab.wrs(x)).is_zero()) r.family_rho_e_zero = false;
  }

  r.criteria_match = r.dims.bounded && r.dims.simultaneous &&
                     r.dims.single_generator &&
                     (r.family_x_zero == (r.dims.c_c == 0)) &&
                     (r.family_rho_e_zero == (r.dims.c_cp == 0)) &&
                     (r.family_rho_e_zero == (r.dims.c_c == 0));
  return r;
}

// ---------------------------------------------------------------------------
// Principal points: dimension-one two-sided ideals
// ---------------------------------------------------------------------------

struct Thm35Report {
  bool principal = false;
  Rat poincare_q0;               // sum over W_0 of q0^{l(w)}
  bool expect_nonzero = false;   // that value is nonzero
  int dim_c_cp = 0, dim_cp_c = 0;
  bool dims_match = false;       // 1 when expected nonzero, else 0
  bool two_sided = false;        // stable under both actions
  bool eigen = false;            // T_s xi = q0 xi, xi T_s = -xi (and dual)
  bool eq_pairing = false;       // (A theta_x, theta_{e_u})(t) closed form
  bool ok() const {
    return principal && dims_match && (!expect_nonzero || (two_sided && eigen)) &&
           eq_pairing;
  }
};

inline Thm35Report thm35_report(const HtModel& M, const ThetaReducer& red_inv) {
  const HtLab& lab = M.lab();
  const RootDatum& rd = M.rd();
  const KField& F = M.field();
  Thm35Report rep;
  rep.principal = is_principal(rd, M.point());
  rep.poincare_q0 = qpoly_eval(rd.poincare_polynomial(), F.q0());
  rep.expect_nonzero = rep.poincare_q0 != 0;

  IdealDims dims = ideal_dims(M, red_inv);
  rep.dim_c_cp = dims.c_cp;
  rep.dim_cp_c = dims.cp_c;
  int want = rep.expect_nonzero ? 1 : 0;
  rep.dims_match = rep.dim_c_cp == want && rep.dim_cp_c == want;

  auto xi = M.vec(lab.c_rho_cp());
  auto xip = M.vec(lab.cp_rho_c());
  if (rep.expect_nonzero) {
    std::vector<const Mat<KElem>*> both = M.side_ops(false);
    for (const auto* op : M.side_ops(true)) both.push_back(op);
    auto closure = submodule_span(both, {xi});
    auto closure_dual = submodule_span(both, {xip});
    rep.two_sided = closure.dim() == 1 && closure_dual.dim() == 1;

    const KElem q0 = F.v_pow(2);
    rep.eigen = true;
    for (int s = 0; s < rd.rank(); ++s) {
      auto scale = [](const std::vector<KElem>& v, const KElem& c) {
        std::vector<KElem> r;
        r.reserve(v.size());
        for (const auto& x : v) r.push_back(x * c);
        return r;
      };
      if (!(M.left_T(s).mul_vec(xi) == scale(xi, q0))) rep.eigen = false;
      if (!(M.right_T(s).mul_vec(xi) == scale(xi, -F.one()))) rep.eigen = false;
      if (!(M.left_T(s).mul_vec(xip) == scale(xip, -F.one()))) rep.eigen = false;
      if (!(M.right_T(s).mul_vec(xip) == scale(xip, q0))) rep.eigen = false;
    }
  }

  // Closed forms at the principal point, for every u and sampled x:
  //   (A theta_x, theta_{e_u}) = v^{-nu} wrs(theta_{rho + x + e_u})  (exact)
  //   phi_t(wrs(theta_{rho + x + e_u})) = rho(t) x(t) e_u(t) * sum_w q0^{l(w)}
  rep.eq_pairing = true;
  std::vector<Weight> xs = {Weight(rd.rank(), 0), rd.rho()};
  for (int i = 0; i < rd.rank(); ++i) xs.push_back(rd.fundamental_weight(i));
  const TorusPoint& t = M.point();
  for (const auto& x : xs) {
    LaurentPoly Ax = lab.A_factor() * LaurentPoly::monomial(x);
    for (int u = 0; u < M.module_rank(); ++u) {
      KElem base = t.eval_weight(rd.rho()) * t.eval_weight(x) *
                   t.eval_weight(lab.steinberg(u)) *
                   F.from_rat(rep.poincare_q0);
      Weight y = weight_add(weight_add(rd.rho(), x), lab.steinberg(u));
      if (!(M.phi(lab.wrs(y)) == base)) rep.eq_pairing = false;
      LaurentPoly pr = pairing_AB(rd, Ax, LaurentPoly::monomial(lab.steinberg(u)));
      if (!(pr == lab.wrs(y) * ScalarQ::v_pow(-rd.nu()))) rep.eq_pairing = false;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The modules generated by C theta_rho C' and C' theta_rho C
// ---------------------------------------------------------------------------

struct Thm41Point {
  bool modules_free = false;        // both Steinberg-class bases independent
  int dim_HtC = 0, dim_HtCp = 0;    // expected |W_0|
  bool xi_nonzero = false;          // class of C theta_rho C'
  bool xi_dual_nonzero = false;     // class of C' theta_rho C
  int dim_Lt = 0, dim_Mt0 = 0, dim_Lt_dual = 0;
  bool kernel_match = false;        // bilinear-vanishing kernel == ker Phi
  bool quotient_dims = false;       // dim L_t = dim H_tC - dim M_t0
  bool Lt_stable = false, Lt_dual_stable = false;
  bool burnside = false, burnside_dual = false;  // when nonzero
  bool CLt_nonzero = false, CpLt_dual_nonzero = false;
  bool closure_match = false;       // H_t * xi == image of the bridge map
  bool ok() const {
    if (!(modules_free && kernel_match && quotient_dims && closure_match))
      return false;
    if (xi_nonzero !=
        (dim_Lt > 0))  // the generator vanishes iff the module does
      return false;
    if (!xi_nonzero)
      return dim_Mt0 == dim_HtC && dim_Lt_dual == 0 && !xi_dual_nonzero;
    return Lt_stable && Lt_dual_stable && burnside && burnside_dual &&
           CLt_nonzero && CpLt_dual_nonzero && xi_dual_nonzero;
  }
};

// Null space of the bilinear-vanishing conditions: coordinates c (in the
// Steinberg-class basis of H_t C) with
//   sum_u c_u phi_t(wrs(theta_{e_u'} theta_{e_u})) = 0 for every u'.
inline std::vector<std::vector<KElem>> mt0_kernel_coords(const HtModel& M) {
  const HtLab& lab = M.lab();
  const int n = M.module_rank();
  Mat<KElem> K(n, n);
  for (int up = 0; up < n; ++up)
    for (int u = 0; u < n; ++u)
      K.at(up, u) =
          M.phi(lab.wrs(weight_add(lab.steinberg(up), lab.steinberg(u))));
  return nullspace_field(K, M.field().one());
}

inline Thm41Point thm41_point(const HtModel& M) {
  const HtLab& lab = M.lab();
  const KElem one = M.field().one();
  const int n = M.module_rank();
  Thm41Point r;

  HtLeftModule mod = left_module(M, false);
  HtLeftModule modp = left_module(M, true);
  r.modules_free = mod.basis_independent && modp.basis_independent;
  if (!r.modules_free) return r;
  r.dim_HtC = n;
  r.dim_HtCp = n;

  // The bridge h -> h theta_rho C' maps H_tC into H_tC'; column u is the
  // class of theta_{e_u} C theta_rho C' in the basis of H_tC'.
  std::vector<const HeckeElt*> cols, cols_dual;
  for (int u = 0; u < n; ++u) {
    cols.push_back(&lab.bridge_col(u));
    cols_dual.push_back(&lab.bridge_col_dual(u));
  }
  Mat<KElem> Phi = module_coords(M, modp, cols);
  Mat<KElem> Psi = module_coords(M, mod, cols_dual);

  auto xi = M.vec(lab.c_rho_cp());
  auto xip = M.vec(lab.cp_rho_c());
  r.xi_nonzero = !vec_is_zero(xi);
  r.xi_dual_nonzero = !vec_is_zero(xip);

  // The Steinberg weight of the neutral element is zero, so that bridge
  // column must be the class of C theta_rho C' itself.
  {
    std::vector<const HeckeElt*> xi_elt = {&lab.c_rho_cp()};
    Mat<KElem> xi_coords = module_coords(M, modp, xi_elt);
    int ue = M.rd().identity();
    if (!weight_is_zero(lab.steinberg(ue)))
      throw std::logic_error("thm41_point: neutral Steinberg weight not zero");
    for (int k = 0; k < n; ++k)
      if (!(xi_coords.at(k, 0) == Phi.at(k, ue)))
        throw std::logic_error("thm41_point: bridge column mismatch");
  }

  EchelonSpan<KElem> Lt, Lt_dual;
  for (int u = 0; u < n; ++u) {
    std::vector<KElem> col(n), colp(n);
    for (int k = 0; k < n; ++k) {
      col[k] = Phi.at(k, u);
      colp[k] = Psi.at(k, u);
    }
    Lt.insert(col);
    Lt_dual.insert(colp);
  }
  r.dim_Lt = Lt.dim();
  r.dim_Lt_dual = Lt_dual.dim();

  auto ker_phi = nullspace_field(Phi, one);
  r.dim_Mt0 = int(ker_phi.size());
  r.quotient_dims = r.dim_Lt == r.dim_HtC - r.dim_Mt0;

  auto ker_cond = mt0_kernel_coords(M);
  EchelonSpan<KElem> span_phi, span_cond;
  for (auto& v : ker_phi) span_phi.insert(v);
  for (auto& v : ker_cond) span_cond.insert(v);
  r.kernel_match = spans_equal(span_phi, span_cond);

  // H_t * xi inside the full quotient must agree with the image of the
  // bridge map (both describe the module the generator spans).
  {
    auto closure = submodule_span(M.side_ops(false), {xi});
    EchelonSpan<KElem> image;
    for (int u = 0; u < n; ++u) image.insert(M.vec(lab.bridge_col(u)));
    r.closure_match = spans_equal(closure, image);
  }

  auto restrict_to = [&](const EchelonSpan<KElem>& space,
                         const std::vector<const Mat<KElem>*>& ops,
                         bool* stable) -> std::vector<Mat<KElem>> {
    const int d = space.dim();
    Mat<KElem> B(n, d);
    int j = 0;
    for (const auto& [p, row] : space.rows()) {
      for (int k = 0; k < n; ++k) B.at(k, j) = row[k];
      ++j;
    }
    *stable = true;
    std::vector<Mat<KElem>> out;
    for (const auto* op : ops) {
      Mat<KElem> img = op->mul(B);
      try {
        out.push_back(detail::coords_in(B, img, nullptr));
      } catch (const std::logic_error&) {
        *stable = false;
        return {};
      }
    }
    return out;
  };

  if (r.dim_Lt > 0) {
    auto ops = restrict_to(Lt, modp.gen_ops(), &r.Lt_stable);
    r.burnside = r.Lt_stable && burnside_irreducible(ops, one);
    // C acts on H_tC'; it must not kill the module.
    Mat<KElem> B(n, r.dim_Lt);
    int j = 0;
    for (const auto& [p, row] : Lt.rows()) {
      for (int k = 0; k < n; ++k) B.at(k, j) = row[k];
      ++j;
    }
    Mat<KElem> CB = modp.act_C.mul(B);
    for (const auto& x : CB.a)
      if (!x.is_zero()) r.CLt_nonzero = true;
  }
  if (r.dim_Lt_dual > 0) {
    auto ops = restrict_to(Lt_dual, mod.gen_ops(), &r.Lt_dual_stable);
    r.burnside_dual = r.Lt_dual_stable && burnside_irreducible(ops, one);
    Mat<KElem> B(n, r.dim_Lt_dual);
    int j = 0;
    for (const auto& [p, row] : Lt_dual.rows()) {
      for (int k = 0; k < n; ++k) B.at(k, j) = row[k];
      ++j;
    }
    Mat<KElem> CB = mod.act_Cprime.mul(B);
    for (const auto& x : CB.a)
      if (!x.is_zero()) r.CpLt_dual_nonzero = true;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lie-algebra eigenspace criterion (type A)
// ---------------------------------------------------------------------------

struct LieTypeAReport {
  bool supported = false;
  bool q0_flagged_one = false;   // documented anomaly at q0 = 1
  int dim_eigenspace = 0;        // dimension of {X : Ad(t) X = q0 X}
  bool has_semisimple = false;   // a nonzero semisimple element exists
  bool predicts_vanishing = false;
  int dim_direct = 0;            // dim of the module generated by C theta_rho C'
  bool agree = false;
};

// Realizes the Ad(t)-eigenspace for eigenvalue q0 inside the trace-zero
// (n+1) x (n+1) matrices: the span of the root-space matrices E_beta with
// beta(t) = q0, plus the Cartan subalgebra when q0 = 1.  The span contains
// a nonzero semisimple element iff the characteristic polynomial of a
// generic linear combination is not identically lambda^{n+1}.
inline LieTypeAReport lie_criterion_typeA(const HtModel& M) {
  const RootDatum& rd = M.rd();
  const KField& F = M.field();
  LieTypeAReport rep;
  if (rd.label().empty() || rd.label()[0] != 'A') return rep;
  rep.supported = true;
  rep.q0_flagged_one = F.q0() == 1;

  const int m = rd.rank() + 1;
  const KElem q0 = F.from_rat(F.q0());
  const TorusPoint& t = M.point();

  // Root -> matrix position: in type A the positive roots are the
  // consecutive sums of simple roots, alpha_a + ... + alpha_{b-1} <-> (a, b).
  std::vector<std::pair<int, int>> entries;
  for (int k = 0; k < rd.num_pos_roots(); ++k) {
    const Weight& sc = rd.pos_root(k).simple;
    int a = -1, b = -1;
    for (int i = 0; i < rd.rank(); ++i) {
      if (sc[i] == 1) {
        if (a < 0) a = i;
        b = i + 1;
      } else if (sc[i] != 0) {
        throw std::logic_error("lie_criterion_typeA: unexpected root shape");
      }
    }
    for (int i = a; i < b; ++i)
      if (sc[i] != 1)
        throw std::logic_error("lie_criterion_typeA: root not consecutive");
    KElem val = t.eval_weight(rd.pos_root(k).fund);
    if (val == q0) entries.push_back({a, b});
    if (val.inv() == q0) entries.push_back({b, a});
  }
  int cartan = 0;
  if (F.q0() == 1) cartan = rd.rank();
  rep.dim_eigenspace = int(entries.size()) + cartan;

  if (rep.dim_eigenspace > 0) {
    // Generic element with one formal coefficient per basis matrix, plus a
    // final variable for lambda; nilpotency of the whole span is equivalent
    // to the characteristic polynomial collapsing to (-lambda)^m.
    const int vars = rep.dim_eigenspace + 1;
    auto var = [&](int k) {
      Weight e(vars, 0);
      e[k] = 1;
      return LaurentPoly::monomial(e);
    };
    Mat<LaurentPoly> X(m, m);
    int vk = 0;
    for (auto [i, j] : entries) X.at(i, j) += var(vk++);
    for (int c = 0; c < cartan; ++c) {
      X.at(c, c) += var(vk);
      X.at(c + 1, c + 1) -= var(vk);
      ++vk;
    }
    for (int i = 0; i < m; ++i) X.at(i, i) -= var(vars - 1);
    auto div = [](const LaurentPoly& a, const LaurentPoly& b) {
      return exact_divide(a, b);
    };
    LaurentPoly charpoly = bareiss_det(X, div);
    Weight lm(vars, 0);
    lm[vars - 1] = m;
    LaurentPoly leading =
        LaurentPoly::monomial(lm, ScalarQ(m % 2 ? Rat(-1) : Rat(1)));
    rep.has_semisimple = !(charpoly == leading);
  }
  rep.predicts_vanishing = rep.has_semisimple;

  rep.dim_direct = thm41_point(M).dim_Lt;
  rep.agree = rep.predicts_vanishing == (rep.dim_direct == 0);
  return rep;
}

}  // namespace heckelab
