#pragma once

// Verification suites behind the command-line driver.  Each suite runs a
// family of exact checks for one cluster of statements and returns a
// SuiteReport whose body is deterministic for a fixed RunConfig.
//
// Suites: prop12, lemma22, formulas, thm34, thm35, thm41, lie-check, cells.
//
// Sampled-grid suites (thm34, thm41) evaluate every point of a fixed design:
// principal points for q0 in {4, 9, -1}, two deliberately non-regular
// points, one regular showcase point, and seeded random regular points up
// to 20 total; --points replaces the design with an explicit list.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heckelab/cache.hpp"
#include "heckelab/hecke_bernstein.hpp"
#include "heckelab/hecke_im.hpp"
#include "heckelab/linalg.hpp"
#include "heckelab/quotient_ht.hpp"
#include "heckelab/report.hpp"
#include "heckelab/root_datum.hpp"
#include "heckelab/weyl_affine.hpp"

namespace heckelab {

// Invalid configuration (unknown suite/type, bad flag combination, bad
// points file).  The driver maps this to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string type = "A1";
  Rat q0 = Rat(4);
  std::optional<Rat> sqrt_q;
  int max_len = -1;          // -1: per-suite default
  std::string points_file;   // optional explicit torus points (thm34/thm41)
  std::uint64_t seed = 1;
  std::string cache_dir;     // empty: persistent cache disabled
};

namespace suitedetail {

inline RootDatum build_datum(const std::string& type) {
  try {
    return RootDatum::build(type);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown root-system type: " + type);
  }
}

// Quotient-model suites hold |W_0|^2-dimensional models; cap the finite
// Weyl group at the rank-2 maximum.
inline RootDatum build_model_datum(const std::string& type,
                                   const std::string& suite) {
  RootDatum rd = build_datum(type);
  if (rd.order() > 12)
    throw UsageError("suite " + suite + " does not support type " + type +
                     " (finite Weyl group larger than 12)");
  return rd;
}

inline std::string weight_str(const Weight& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

inline std::string elt_str(const WeylAffine& W, const ExtAffineElt& u) {
  AffineWord w = W.reduced_word(u);
  std::string s = "om" + std::to_string(w.omega) + "[";
  for (size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(w.letters[i]);
  }
  return s + "]";
}

inline std::string qpoly_str(const QPoly& p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += std::to_string(p[i]);
    if (i == 1) s += "q";
    if (i > 1) s += "q^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

inline OrderedJson point_json(const TorusPoint& t) {
  OrderedJson coords = OrderedJson::array();
  for (const auto& c : t.t) coords.push_back(c.str());
  return coords;
}

inline OrderedJson point_inputs(const TorusPoint& t, const Rat& q0,
                                const std::string& origin, bool regular) {
  OrderedJson j;
  j["q0"] = rat_str(q0);
  j["t"] = point_json(t);
  j["origin"] = origin;
  j["regular"] = regular;
  return j;
}

// Weights spanning Theta over the center at desk scale: every Steinberg
// weight e_u plus 0, +-rho, +-x_i.
inline std::vector<Weight> criterion_sample(const RootDatum& rd) {
  std::vector<Weight> xs;
  for (int u = 0; u < rd.order(); ++u) xs.push_back(rd.steinberg_weight(u));
  xs.push_back(Weight(rd.rank(), 0));
  xs.push_back(rd.rho());
  xs.push_back(weight_neg(rd.rho()));
  for (int i = 0; i < rd.rank(); ++i) {
    xs.push_back(rd.fundamental_weight(i));
    xs.push_back(weight_neg(rd.fundamental_weight(i)));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

struct GridPoint {
  Rat q0;
  std::vector<Rat> coords;  // empty: principal point for this q0
  std::string origin;       // principal | non-regular | showcase | random | file
};

inline std::vector<std::vector<Rat>> fixed_nonregular(const std::string& l) {
  if (l == "A1") return {{Rat(1)}, {Rat(-1)}};
  if (l == "A2") return {{Rat(1), Rat(1)}, {Rat(2), Rat(4)}};
  if (l == "B2") return {{Rat(3), Rat(3)}, {Rat(1), Rat(2)}};
  if (l == "G2") return {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}};
  if (l == "A3") return {{Rat(1), Rat(1), Rat(1)}, {Rat(2), Rat(4), Rat(1)}};
  return {};
}

inline std::vector<Rat> fixed_showcase(const std::string& l) {
  if (l == "A1") return {Rat(3)};
  if (l == "A3") return {Rat(2), Rat(3), Rat(5)};
  return {Rat(2), Rat(3)};
}

inline std::vector<GridPoint> parse_points_file(const RootDatum& rd,
                                                const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open points file: " + path);
  std::vector<GridPoint> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string word;
    while (ss >> word) tok.push_back(word);
    if (tok.empty()) continue;
    const std::string where = "points file line " + std::to_string(lineno);
    if (int(tok.size()) != rd.rank() + 1)
      throw UsageError(where + ": expected q0 plus " +
                       std::to_string(rd.rank()) + " coordinates");
    GridPoint gp;
    gp.origin = "file";
    try {
      gp.q0 = rat_parse(tok[0]);
      for (int i = 0; i < rd.rank(); ++i)
        gp.coords.push_back(rat_parse(tok[size_t(i) + 1]));
    } catch (const std::invalid_argument& e) {
      throw UsageError(where + ": " + e.what());
    }
    if (gp.q0 == 0) throw UsageError(where + ": q0 must be nonzero");
    for (const Rat& c : gp.coords)
      if (c == 0) throw UsageError(where + ": coordinates must be nonzero");
    out.push_back(std::move(gp));
  }
  if (out.empty()) throw UsageError("points file has no points: " + path);
  return out;
}

inline std::vector<GridPoint> sample_grid(const RootDatum& rd,
                                          const RunConfig& cfg) {
  if (!cfg.points_file.empty()) return parse_points_file(rd, cfg.points_file);
  std::vector<GridPoint> out;
  for (long q : {4L, 9L, -1L}) out.push_back({Rat(q), {}, "principal"});
  for (const auto& c : fixed_nonregular(rd.label()))
    out.push_back({Rat(4), c, "non-regular"});
  out.push_back({Rat(4), fixed_showcase(rd.label()), "showcase"});

  std::mt19937_64 rng(cfg.seed);
  const long qcycle[4] = {4, 9, 2, -1};
  int qi = 0;
  while (out.size() < 20) {
    Rat q0(qcycle[qi % 4]);
    ++qi;
    std::vector<Rat> coords;
    for (int i = 0; i < rd.rank(); ++i) {
      long num = long(rng() % 10) - 5;
      if (num >= 0) ++num;  // skip zero
      long den = long(rng() % 4) + 1;
      coords.push_back(Rat(num) / Rat(den));
    }
    KField F(q0);
    TorusPoint t = rational_point(rd, F, coords);
    if (!is_regular(rd, t)) continue;  // the grid wants random REGULAR points
    out.push_back({q0, coords, "random"});
  }
  return out;
}

// Runs fn at every grid point with a live field and model.
template <typename Fn>
void for_each_grid_point(const RootDatum& rd, const HtLab& lab,
                         const RunConfig& cfg, Fn&& fn) {
  for (const auto& gp : sample_grid(rd, cfg)) {
    std::optional<KField> F;
    if (cfg.sqrt_q && gp.q0 == cfg.q0)
      F.emplace(gp.q0, *cfg.sqrt_q);
    else
      F.emplace(gp.q0);
    TorusPoint t = gp.coords.empty() ? principal_point(rd, *F)
                                     : rational_point(rd, *F, gp.coords);
    HtModel M(lab, t);
    fn(gp, t, M);
  }
}

inline KField field_for(const RunConfig& cfg) {
  if (cfg.sqrt_q) {
    if (*cfg.sqrt_q * *cfg.sqrt_q != cfg.q0)
      throw UsageError("--sqrt-q value squared must equal --q");
    return KField(cfg.q0, *cfg.sqrt_q);
  }
  return KField(cfg.q0);
}

inline ScalarQ scalar_exact_div(const ScalarQ& a, const ScalarQ& b) {
  auto r = ScalarQ::divide(a, b);
  if (!r) throw std::logic_error("fraction-free elimination: inexact division");
  return *r;
}

// Rank over Q(v) of a family of T-basis elements (rows), via fraction-free
// elimination on the coefficient matrix.
inline int im_family_rank(const std::vector<IMHeckeElt>& rows) {
  std::set<ExtAffineElt> support;
  for (const auto& h : rows)
    for (const auto& [u, c] : h.terms()) support.insert(u);
  std::vector<ExtAffineElt> cols(support.begin(), support.end());
  std::map<ExtAffineElt, int> col_of;
  for (size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = int(j);
  Mat<ScalarQ> m(int(rows.size()), int(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [u, c] : rows[i].terms()) m.at(int(i), col_of[u]) = c;
  if (m.rows == 0 || m.cols == 0) return 0;
  return bareiss_rank(m, scalar_exact_div);
}

inline void formula_record(SuiteReport& rep, const std::string& anchor,
                           const std::string& name, OrderedJson inputs,
                           const HeckeIdentity& id) {
  OrderedJson comp;
  comp["equal"] = id.ok;
  comp["lhs_terms"] = id.lhs.terms().size();
  comp["rhs_terms"] = id.rhs.terms().size();
  if (!id.ok) {
    // Locate the first basis element whose coefficients differ.
    std::set<int> ws;
    for (const auto& [w, f] : id.lhs.terms()) ws.insert(w);
    for (const auto& [w, f] : id.rhs.terms()) ws.insert(w);
    for (int w : ws) {
      LaurentPoly l = id.lhs.coeff(w), r = id.rhs.coeff(w);
      if (!(l == r)) {
        OrderedJson d;
        d["basis_elt"] = w;
        d["lhs_coeff"] = l.str();
        d["rhs_coeff"] = r.str();
        comp["first_difference"] = d;
        break;
      }
    }
  }
  rep.add(anchor, name, std::move(inputs), std::move(comp), id.ok);
}

}  // namespace suitedetail

// ---------------------------------------------------------------------------
// prop12: the descent-set description of Y_0 equals the antidominant
// construction, and the canonical factorization u = w t_x v is total,
// unique, length-additive, and reconstructs u.
// ---------------------------------------------------------------------------
inline SuiteReport run_prop12(const RunConfig& cfg) {
  namespace sd = suitedetail;
  RootDatum rd = sd::build_datum(cfg.type);
  WeylAffine W(rd);
  int L = cfg.max_len;
  if (L < 0) L = cfg.type == "A1" ? 10 : cfg.type == "A2" ? 6 : 4;

  SuiteReport rep("prop12", cfg.type);
  rep.set_config("max_len", L);

  auto brute = W.enumerate_Y0(L);
  auto built = W.y0_construction(L);
  std::sort(brute.begin(), brute.end());
  std::sort(built.begin(), built.end());
  {
    OrderedJson in;
    in["max_len"] = L;
    OrderedJson comp;
    comp["descent_definition_size"] = brute.size();
    comp["construction_size"] = built.size();
    OrderedJson census = OrderedJson::array();
    std::vector<int> by_len(size_t(L) + 1, 0);
    for (const auto& u : brute) by_len[size_t(W.length(u))]++;
    for (int l = 0; l <= L; ++l) census.push_back(by_len[size_t(l)]);
    comp["census_by_length"] = census;
    bool equal = brute == built;
    comp["sets_equal"] = equal;
    rep.add("Prop 1.2", "Y_0 by right descents equals the w t_x construction",
            in, comp, equal);
  }

  {
    auto ball = W.ball(L);
    int checked = 0;
    bool ok = true;
    std::string witness;
    for (const auto& u : ball) {
      try {
        CanonicalFactorization f = W.factor_canonical(u);
        ExtAffineElt rebuilt = W.mul(
            W.from_finite(f.w), W.mul(W.translation(f.x), W.from_finite(f.v)));
        bool good = rebuilt == u && rd.is_antidominant(f.x);
        if (std::count(brute.begin(), brute.end(), u) && f.v != rd.identity())
          good = false;  // Y_0 elements must have trivial right factor
        if (!good) {
          ok = false;
          if (witness.empty()) witness = sd::elt_str(W, u);
        }
      } catch (const std::logic_error& e) {
        ok = false;
        if (witness.empty())
          witness = sd::elt_str(W, u) + ": " + std::string(e.what());
      }
      ++checked;
    }
    OrderedJson in;
    in["max_len"] = L;
    OrderedJson comp;
    comp["elements_factored"] = checked;
    comp["all_ok"] = ok;
    if (!witness.empty()) comp["witness"] = witness;
    rep.add("Prop 1.2",
            "u = w t_x v exists, is unique, length-additive, antidominant; "
            "Y_0 elements have v = e",
            in, comp, ok);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// lemma22: products against the finite symmetrizers vanish exactly off Y_0,
// and the surviving images are linearly independent.
// ---------------------------------------------------------------------------
inline SuiteReport run_lemma22(const RunConfig& cfg) {
  namespace sd = suitedetail;
  RootDatum rd = sd::build_datum(cfg.type);
  WeylAffine W(rd);
  int L = cfg.max_len;
  if (L < 0) L = cfg.type == "A1" ? 8 : cfg.type == "A2" ? 6 : 4;

  SuiteReport rep("lemma22", cfg.type);
  rep.set_config("max_len", L);

  KLTable kl(W, std::max(L, rd.nu()));
  CacheStats cache;
  std::filesystem::path cache_file;
  if (!cfg.cache_dir.empty()) {
    cache_file = kl_cache_file(cfg.cache_dir, rd.label());
    cache = load_kl_cache(kl, cache_file);
  }

  ExtAffineElt w0 = W.from_finite(rd.longest());
  IMHeckeElt Cw0 = c_basis_C(W, kl, w0);
  IMHeckeElt Cpw0 = c_basis_Cprime(W, kl, w0);

  auto ball = W.ball(L);
  int outside = 0, inside = 0;
  bool zero_ok = true, zero_dual_ok = true;
  std::string witness, witness_dual;
  std::vector<IMHeckeElt> images, images_dual;
  for (const auto& u : ball) {
    IMHeckeElt p = im_mul(W, c_basis_C(W, kl, u), Cpw0);
    IMHeckeElt pd = im_mul(W, c_basis_Cprime(W, kl, u), Cw0);
    if (in_Y0(W, u)) {
      ++inside;
      images.push_back(p);
      images_dual.push_back(pd);
    } else {
      ++outside;
      if (!p.is_zero() && witness.empty()) {
        zero_ok = false;
        witness = sd::elt_str(W, u);
      }
      if (!p.is_zero()) zero_ok = false;
      if (!pd.is_zero()) {
        zero_dual_ok = false;
        if (witness_dual.empty()) witness_dual = sd::elt_str(W, u);
      }
    }
  }

  OrderedJson in;
  in["max_len"] = L;
  {
    OrderedJson comp;
    comp["elements_outside_Y0"] = outside;
    comp["all_products_zero"] = zero_ok;
    if (!witness.empty()) comp["witness"] = witness;
    rep.add("Lemma 2.2", "C_u C'_{w_0} = 0 for every u outside Y_0", in, comp,
            zero_ok);
  }
  {
    OrderedJson comp;
    comp["elements_outside_Y0"] = outside;
    comp["all_products_zero"] = zero_dual_ok;
    if (!witness_dual.empty()) comp["witness"] = witness_dual;
    rep.add("Lemma 2.2", "C'_u C_{w_0} = 0 for every u outside Y_0", in, comp,
            zero_dual_ok);
  }
  {
    int rank = sd::im_family_rank(images);
    OrderedJson comp;
    comp["elements_in_Y0"] = inside;
    comp["rank"] = rank;
    rep.add("Lemma 2.2",
            "images {C_u C'_{w_0} : u in Y_0} are linearly independent", in,
            comp, rank == inside);
  }
  {
    int rank = sd::im_family_rank(images_dual);
    OrderedJson comp;
    comp["elements_in_Y0"] = inside;
    comp["rank"] = rank;
    rep.add("Lemma 2.2",
            "images {C'_u C_{w_0} : u in Y_0} are linearly independent", in,
            comp, rank == inside);
  }
  {
    bool nonneg = true;
    std::uint64_t entries = 0;
    for (const auto& [key, poly] : kl.memo()) {
      ++entries;
      for (long long c : poly)
        if (c < 0) nonneg = false;
    }
    OrderedJson comp;
    comp["table_entries"] = entries;
    comp["all_coefficients_nonnegative"] = nonneg;
    rep.add("§2.1", "computed Kazhdan-Lusztig polynomials have nonnegative "
                    "coefficients",
            in, comp, nonneg);
  }

  if (!cfg.cache_dir.empty()) {
    CacheStats stored = store_kl_cache(kl, cache_file);
    cache.stored = stored.stored;
    rep.set_cache(cache);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// formulas: the product identities (1)-(5) in exact normal form, the
// Poincare product identity, and the presentation cross-check.
// ---------------------------------------------------------------------------
inline SuiteReport run_formulas(const RunConfig& cfg) {
  namespace sd = suitedetail;
  RootDatum rd = sd::build_datum(cfg.type);
  int radius = cfg.max_len >= 0 ? cfg.max_len : (rd.rank() >= 3 ? 1 : 2);

  SuiteReport rep("formulas", cfg.type);
  rep.set_config("box_radius", radius);
  rep.set_config("seed", cfg.seed);

  // Eq. (1) over the coordinate box.
  std::vector<Weight> box;
  Weight x(rd.rank(), -radius);
  for (;;) {
    box.push_back(x);
    int i = 0;
    while (i < rd.rank() && x[size_t(i)] == radius) x[size_t(i++)] = -radius;
    if (i == rd.rank()) break;
    ++x[size_t(i)];
  }
  for (const auto& w : box) {
    OrderedJson in;
    in["x"] = sd::weight_str(w);
    HeckeIdentity id = check_macdonald(rd, w);
    sd::formula_record(rep, "Eq. (1)",
                       "C theta_x C = v^{-nu} W(theta_x) C", std::move(in),
                       id);
  }

  OrderedJson none = OrderedJson::object();
  sd::formula_record(rep, "Eq. (2)",
                     "C' theta_{-rho} C equals its subset-sum expansion", none,
                     check_cprime_theta_c(rd, -1));
  sd::formula_record(rep, "Eq. (3)",
                     "C' theta_{rho} C equals its subset-sum expansion", none,
                     check_cprime_theta_c(rd, +1));
  sd::formula_record(rep, "Eq. (4)",
                     "C theta_{-rho} C' equals its subset-sum expansion", none,
                     check_c_theta_cprime(rd, -1));
  sd::formula_record(rep, "Eq. (5)",
                     "C theta_{rho} C' equals its subset-sum expansion", none,
                     check_c_theta_cprime(rd, +1));

  {
    OrderedJson comp;
    comp["poincare_polynomial"] = sd::qpoly_str(rd.poincare_polynomial());
    bool ok = rd.poincare_product_identity();
    comp["product_identity"] = ok;
    rep.add("Thm 3.5 proof",
            "sum of q^{l(w)} equals the product over positive roots", none,
            comp, ok);
  }

  // Presentation cross-check: T-basis round trips and multiplication
  // agreement between the two engines.
  {
    WeylAffine W(rd);
    PresentationBridge bridge(W);
    std::mt19937_64 rng(cfg.seed);
    auto random_elt = [&]() {
      AffineWord w;
      w.omega = int(rng() % W.omega().size());
      int len = int(rng() % 7);
      for (int i = 0; i < len; ++i) w.letters.push_back(int(rng() % size_t(W.num_gens())));
      return W.eval_word(w);
    };
    const int kRoundTrips = 100;
    int rt_ok = 0;
    for (int i = 0; i < kRoundTrips; ++i) {
      ExtAffineElt u = random_elt();
      IMHeckeElt h = im_T(u);
      if (bridge.from_bernstein(bridge.to_bernstein(h)) == h) ++rt_ok;
    }
    OrderedJson comp;
    comp["samples"] = kRoundTrips;
    comp["round_trips_ok"] = rt_ok;
    rep.add("§2.1", "IM -> Bernstein -> IM round trip is the identity", none,
            comp, rt_ok == kRoundTrips);

    const int kPairs = 50;
    int mul_ok = 0;
    for (int i = 0; i < kPairs; ++i) {
      ExtAffineElt u = random_elt(), w = random_elt();
      HeckeElt lhs = bridge.to_bernstein(im_mul(W, im_T(u), im_T(w)));
      HeckeElt rhs =
          hecke_mul(rd, bridge.to_bernstein(im_T(u)), bridge.to_bernstein(im_T(w)));
      if (lhs == rhs) ++mul_ok;
    }
    OrderedJson comp2;
    comp2["samples"] = kPairs;
    comp2["products_ok"] = mul_ok;
    rep.add("§2.1", "the two multiplication engines agree under conversion",
            none, comp2, mul_ok == kPairs);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// thm34: over the sampled grid, the four ideal dimensions vanish together
// and match the evaluation criteria; the Steinberg reduction is checked at
// every point (both paths on regular points).
// ---------------------------------------------------------------------------
inline SuiteReport run_thm34(const RunConfig& cfg) {
  namespace sd = suitedetail;
  RootDatum rd = sd::build_model_datum(cfg.type, "thm34");
  HtLab lab(rd);
  SuiteReport rep("thm34", cfg.type);
  rep.set_config("seed", cfg.seed);
  rep.set_config("points",
                 cfg.points_file.empty() ? "sampled" : cfg.points_file);

  const std::vector<Weight> xs = sd::criterion_sample(rd);
  const int n = rd.order();
  sd::for_each_grid_point(
      rd, lab, cfg, [&](const sd::GridPoint& gp, const TorusPoint& t, HtModel& M) {
        bool regular = is_regular(rd, t);
        OrderedJson in = sd::point_inputs(t, gp.q0, gp.origin, regular);

        ThetaReducer red_inv(rd, t.inverse());
        Thm34Point chk = thm34_check(M, red_inv, xs);
        {
          OrderedJson comp;
          comp["dim_CHC"] = chk.dims.c_c;
          comp["dim_CHC'"] = chk.dims.c_cp;
          comp["dim_C'HC"] = chk.dims.cp_c;
          comp["dim_C'HC'_at_inverse"] = chk.dims.cp_cp_inv;
          comp["dims_bounded_by_one"] = chk.dims.bounded;
          comp["mixed_ideals_singly_generated"] = chk.dims.single_generator;
          comp["simultaneous_vanishing"] = chk.dims.simultaneous;
          comp["family_x_all_zero"] = chk.family_x_zero;
          comp["family_rho_e_all_zero"] = chk.family_rho_e_zero;
          comp["criteria_match_dims"] = chk.criteria_match;
          rep.add("Thm 3.4",
                  "ideal dimensions vanish together and match criteria "
                  "(i)-(iii)",
                  in, comp, chk.criteria_match);
        }
        {
          std::vector<LaurentPoly> samples;
          for (const auto& w : xs) samples.push_back(LaurentPoly::monomial(w));
          samples.push_back(lab.wrs(rd.rho()));
          bool reduce_ok = true;
          int rank = -1;
          std::string error;
          try {
            Mat<KElem> m(int(samples.size()), n);
            for (size_t i = 0; i < samples.size(); ++i) {
              auto v = M.reducer().reduce(samples[i]);
              for (int u = 0; u < n; ++u) m.at(int(i), u) = v[size_t(u)];
            }
            rank = rank_field(m);
          } catch (const std::exception& e) {
            reduce_ok = false;
            error = e.what();
          }
          bool paths = !regular || reduction_paths_agree(M.reducer(), samples);
          OrderedJson comp;
          comp["samples"] = samples.size();
          comp["rank"] = rank;
          comp["expected_rank"] = n;
          comp["paths_agree_on_regular"] = paths;
          if (!error.empty()) comp["error"] = error;
          rep.add("§3.2(b)",
                  "Steinberg classes are a basis of Theta_t; reduction paths "
                  "agree",
                  in, comp, reduce_ok && rank == n && paths);
        }
        {
          HtValidation v = M.validate();
          OrderedJson comp;
          comp["dim"] = M.dim();
          comp["right_quadratic"] = v.right_quadratic;
          comp["theta_units"] = v.theta_units;
          comp["left_right_commute"] = v.left_right_commute;
          comp["central_scalar"] = v.central_scalar;
          comp["product_transport"] = v.product_transport;
          rep.add("§3.3", "quotient relations hold; dim H_t = |W_0|^2", in,
                  comp, v.ok() && M.dim() == n * n);
        }
      });
  return rep;
}

// ---------------------------------------------------------------------------
// thm35: principal point at the configured q0.
// ---------------------------------------------------------------------------
inline SuiteReport run_thm35(const RunConfig& cfg) {
  namespace sd = suitedetail;
  if (!cfg.points_file.empty())
    throw UsageError("thm35 runs at the principal point; --points is not "
                     "supported");
  RootDatum rd = sd::build_model_datum(cfg.type, "thm35");
  HtLab lab(rd);
  SuiteReport rep("thm35", cfg.type);
  rep.set_config("q0", rat_str(cfg.q0));
  rep.set_config("sqrt_q", cfg.sqrt_q ? OrderedJson(rat_str(*cfg.sqrt_q))
                                      : OrderedJson(nullptr));

  KField F = sd::field_for(cfg);
  TorusPoint t = principal_point(rd, F);
  HtModel M(lab, t);
  ThetaReducer red_inv(rd, t.inverse());
  Thm35Report r = thm35_report(M, red_inv);

  OrderedJson in = sd::point_inputs(t, cfg.q0, "principal", is_regular(rd, t));
  {
    OrderedJson comp;
    comp["poincare_at_q0"] = rat_str(r.poincare_q0);
    comp["expect_nonzero"] = r.expect_nonzero;
    comp["dim_CHC'"] = r.dim_c_cp;
    comp["dim_C'HC"] = r.dim_cp_c;
    if (r.expect_nonzero) {
      comp["two_sided"] = r.two_sided;
      comp["eigenvalue_pair_ok"] = r.eigen;  // T_s xi = q0 xi, xi T_s = -xi
      rep.add("Thm 3.5(a)",
              "CH_tC' and C'H_tC are two-sided of dimension 1 with "
              "eigenvalue pair (q0, -1)",
              in, comp,
              r.principal && r.dims_match && r.two_sided && r.eigen);
    } else {
      rep.add("Thm 3.5(b)",
              "CH_tC' and C'H_tC vanish with the Poincare value", in, comp,
              r.principal && r.dims_match);
    }
  }
  {
    OrderedJson comp;
    comp["closed_form_matches"] = r.eq_pairing;
    rep.add("Eq. (7)",
            "principal-point pairing equals rho(t)x(t)e_u(t) times the "
            "Poincare value",
            in, comp, r.eq_pairing);
  }
  {
    HtValidation v = M.validate();
    OrderedJson comp;
    comp["dim"] = M.dim();
    comp["relations_ok"] = v.ok();
    rep.add("§3.3", "quotient relations hold; dim H_t = |W_0|^2", in, comp,
            v.ok() && M.dim() == rd.order() * rd.order());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// thm41: over the sampled grid, the bridge class generates an absolutely
// irreducible module identified with the quotient by the Eq. (8) kernel.
// ---------------------------------------------------------------------------
inline SuiteReport run_thm41(const RunConfig& cfg) {
  namespace sd = suitedetail;
  RootDatum rd = sd::build_model_datum(cfg.type, "thm41");
  HtLab lab(rd);
  SuiteReport rep("thm41", cfg.type);
  rep.set_config("seed", cfg.seed);
  rep.set_config("points",
                 cfg.points_file.empty() ? "sampled" : cfg.points_file);

  sd::for_each_grid_point(
      rd, lab, cfg, [&](const sd::GridPoint& gp, const TorusPoint& t, HtModel& M) {
        bool regular = is_regular(rd, t);
        OrderedJson in = sd::point_inputs(t, gp.q0, gp.origin, regular);
        Thm41Point r = thm41_point(M);
        {
          OrderedJson comp;
          comp["modules_free"] = r.modules_free;
          comp["dim_HtC"] = r.dim_HtC;
          comp["dim_HtC'"] = r.dim_HtCp;
          comp["bridge_class_nonzero"] = r.xi_nonzero;
          comp["dual_class_nonzero"] = r.xi_dual_nonzero;
          comp["dim_Lt"] = r.dim_Lt;
          comp["dim_Lt_dual"] = r.dim_Lt_dual;
          comp["stable"] = r.Lt_stable && r.Lt_dual_stable;
          comp["burnside_irreducible"] = r.burnside && r.burnside_dual;
          comp["CLt_nonzero"] = r.CLt_nonzero;
          comp["C'Lt_dual_nonzero"] = r.CpLt_dual_nonzero;
          comp["closure_matches_image"] = r.closure_match;
          rep.add("Thm 4.1",
                  "a nonzero bridge class generates an absolutely irreducible "
                  "module with CL_t != 0",
                  in, comp, r.ok());
        }
        {
          OrderedJson comp;
          comp["dim_Mt0"] = r.dim_Mt0;
          comp["kernel_match"] = r.kernel_match;
          comp["quotient_dims"] = r.quotient_dims;
          rep.add("Eq. (8)",
                  "the vanishing conditions cut out exactly the kernel of the "
                  "bridge map",
                  in, comp, r.kernel_match && r.quotient_dims);
        }
        {
          OrderedJson comp;
          comp["dim_Lt"] = r.dim_Lt;
          comp["module_rank"] = M.module_rank();
          rep.add_info("Thm 4.1", "observed dimension of L_t", in, comp);
        }
      });
  return rep;
}

// ---------------------------------------------------------------------------
// lie-check: the adjoint-eigenspace criterion, compared against the directly
// computed module dimension.  Observations only; nothing here can fail.
// ---------------------------------------------------------------------------
inline SuiteReport run_lie(const RunConfig& cfg) {
  namespace sd = suitedetail;
  if (!cfg.points_file.empty())
    throw UsageError("lie-check uses a fixed point list; --points is not "
                     "supported");
  if (cfg.type != "A1" && cfg.type != "A2")
    throw UsageError("lie-check supports types A1 and A2 only");
  RootDatum rd = sd::build_datum(cfg.type);
  HtLab lab(rd);
  SuiteReport rep("lie-check", cfg.type);

  struct LiePoint {
    Rat q0;
    std::vector<Rat> coords;  // empty: principal
  };
  std::vector<LiePoint> pts;
  if (cfg.type == "A1")
    pts.push_back({Rat(4), {Rat(3)}});
  else
    pts.push_back({Rat(4), {Rat(2), Rat(1)}});
  pts.push_back({Rat(4), {}});
  pts.push_back({Rat(-1), {}});
  pts.push_back({Rat(1), {}});

  for (const auto& p : pts) {
    KField F(p.q0);
    TorusPoint t = p.coords.empty() ? principal_point(rd, F)
                                    : rational_point(rd, F, p.coords);
    HtModel M(lab, t);
    LieTypeAReport r = lie_criterion_typeA(M);
    OrderedJson in = sd::point_inputs(
        t, p.q0, p.coords.empty() ? "principal" : "fixed", is_regular(rd, t));
    OrderedJson comp;
    comp["dim_eigenspace"] = r.dim_eigenspace;
    comp["has_semisimple"] = r.has_semisimple;
    comp["predicts_vanishing"] = r.predicts_vanishing;
    comp["dim_module_direct"] = r.dim_direct;
    comp["agree"] = r.agree;
    comp["q0_is_one"] = r.q0_flagged_one;
    std::string name =
        r.q0_flagged_one
            ? "q0 = 1 anomaly: the eigenspace criterion predicts vanishing "
              "while the module is nonzero"
            : "semisimple-eigenvector verdict vs. directly computed module";
    rep.add_info("§4.2", name, in, comp);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// cells: censuses of Y_0, Gamma_0 and the lowest two-sided cell, plus the
// shortest-element bijections.
// ---------------------------------------------------------------------------
inline SuiteReport run_cells(const RunConfig& cfg) {
  namespace sd = suitedetail;
  RootDatum rd = sd::build_datum(cfg.type);
  WeylAffine W(rd);
  int L = cfg.max_len;
  if (L < 0) L = cfg.type == "A1" ? 8 : cfg.type == "A2" ? 6 : 4;

  SuiteReport rep("cells", cfg.type);
  rep.set_config("max_len", L);
  OrderedJson in;
  in["max_len"] = L;

  auto census = [&](const std::vector<ExtAffineElt>& elts) {
    std::vector<int> by_len(size_t(L) + 1, 0);
    for (const auto& u : elts) by_len[size_t(W.length(u))]++;
    OrderedJson j = OrderedJson::array();
    for (int c : by_len) j.push_back(c);
    return j;
  };

  auto ball = W.ball(L);
  auto y0 = W.enumerate_Y0(L);
  {
    auto built = W.y0_construction(L);
    auto lhs = y0;
    std::sort(lhs.begin(), lhs.end());
    std::sort(built.begin(), built.end());
    OrderedJson comp;
    comp["size"] = y0.size();
    comp["census_by_length"] = census(y0);
    bool equal = lhs == built;
    comp["matches_construction"] = equal;
    rep.add("Prop 1.2", "Y_0 census matches the w t_x reconstruction", in,
            comp, equal);
  }

  std::vector<ExtAffineElt> gamma0;
  for (const auto& u : ball)
    if (in_Gamma0(W, u)) gamma0.push_back(u);
  {
    // Shortest coset elements over a box of weights: injective, land in
    // Y_0, and compose with w_0 into Gamma_0.
    std::set<ExtAffineElt> nx_set;
    int count = 0;
    bool ok = true;
    Weight x(rd.rank(), -2);
    for (;;) {
      auto sp = W.special_elements(x);
      ++count;
      nx_set.insert(sp.n_x);
      if (!in_Y0(W, sp.n_x)) ok = false;
      if (!in_Gamma0(W, sp.n_x_w0)) ok = false;
      if (W.length(sp.m_x) > W.length(sp.n_x)) ok = false;
      int i = 0;
      while (i < rd.rank() && x[size_t(i)] == 2) x[size_t(i++)] = -2;
      if (i == rd.rank()) break;
      ++x[size_t(i)];
    }
    if (int(nx_set.size()) != count) ok = false;  // injectivity
    OrderedJson comp;
    comp["weights_sampled"] = count;
    comp["distinct_n_x"] = nx_set.size();
    comp["all_in_Y0_and_Gamma0"] = ok;
    rep.add("§1.3",
            "x -> n_x is injective into Y_0 and n_x w_0 lies in Gamma_0", in,
            comp, ok);
  }
  {
    OrderedJson comp;
    comp["size"] = gamma0.size();
    comp["census_by_length"] = census(gamma0);
    rep.add_info("§1.3", "census of the left cell Gamma_0", in, comp);
  }
  {
    std::vector<ExtAffineElt> c0;
    for (const auto& u : ball)
      if (W.c0_membership(u)) c0.push_back(u);
    bool ok = W.c0_membership(W.from_finite(rd.longest())) &&
              !W.c0_membership(W.identity());
    auto canon = W.canonical_cell_c0(L);
    for (const auto& u : canon)
      if (!W.c0_membership(u)) ok = false;
    OrderedJson comp;
    comp["size_within_ball"] = c0.size();
    comp["census_by_length"] = census(c0);
    comp["canonical_cell_size"] = canon.size();
    comp["w0_in_c0_identity_not"] = ok;
    rep.add("§1.2",
            "lowest-cell membership: w_0 in, identity out, canonical cell "
            "contained",
            in, comp, ok);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------
inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "prop12", "lemma22", "formulas", "thm34",
      "thm35",  "thm41",   "lie-check", "cells"};
  return names;
}

inline SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) {
  if (!cfg.points_file.empty() && suite != "thm34" && suite != "thm41" &&
      suite != "thm35" && suite != "lie-check")
    throw UsageError("suite " + suite + " does not take --points");
  if (suite == "prop12") return run_prop12(cfg);
  if (suite == "lemma22") return run_lemma22(cfg);
  if (suite == "formulas") return run_formulas(cfg);
  if (suite == "thm34") return run_thm34(cfg);
  if (suite == "thm35") return run_thm35(cfg);
  if (suite == "thm41") return run_thm41(cfg);
  if (suite == "lie-check") return run_lie(cfg);
  if (suite == "cells") return run_cells(cfg);
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : "|") + s;
  throw UsageError("unknown suite '" + suite + "' (expected " + known + ")");
}

}  // namespace heckelab
