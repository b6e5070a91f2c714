#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "heckelab/quotient_ht.hpp"

using namespace heckelab;

namespace {

// Weight sample for the vanishing-family check: all Steinberg weights
// (required), zero, +-rho, and the fundamental weights.
std::vector<Weight> family_sample(const RootDatum& rd) {
  std::vector<Weight> xs;
  for (int u = 0; u < rd.order(); ++u) xs.push_back(rd.steinberg_weight(u));
  xs.push_back(Weight(rd.rank(), 0));
  xs.push_back(rd.rho());
  xs.push_back(weight_neg(rd.rho()));
  for (int i = 0; i < rd.rank(); ++i) {
    xs.push_back(rd.fundamental_weight(i));
    xs.push_back(weight_neg(rd.fundamental_weight(i)));
  }
  return xs;
}

}  // namespace

TEST_CASE("principal points solve alpha(t) = q", "[quotient]") {
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(4));
    TorusPoint t = principal_point(rd, F);
    REQUIRE(t.t[0] == F.from_rat(Rat(2)));
    REQUIRE(is_principal(rd, t));
    REQUIRE(is_regular(rd, t));
  }
  {
    RootDatum rd = RootDatum::build("A2");
    KField F(Rat(4));
    TorusPoint t = principal_point(rd, F);
    REQUIRE(t.t[0] == F.from_rat(Rat(4)));
    REQUIRE(t.t[1] == F.from_rat(Rat(4)));
    REQUIRE(is_principal(rd, t));
  }
  for (const char* label : {"A1", "A2", "B2", "G2"}) {
    RootDatum rd = RootDatum::build(label);
    KField F4(Rat(4)), Fm1(Rat(-1));
    REQUIRE(is_principal(rd, principal_point(rd, F4)));
    // Works over a formal square root of -1 as well.
    REQUIRE(is_principal(rd, principal_point(rd, Fm1)));
  }
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(4));
    REQUIRE_FALSE(is_principal(rd, rational_point(rd, F, {Rat(4)})));
    REQUIRE_THROWS_AS(rational_point(rd, F, {Rat(0)}), std::invalid_argument);
    REQUIRE_THROWS_AS(rational_point(rd, F, {Rat(1), Rat(1)}),
                      std::invalid_argument);
  }
}

TEST_CASE("orbit interpolation at a regular point", "[quotient]") {
  RootDatum rd = RootDatum::build("A1");
  KField F(Rat(4));
  TorusPoint t = rational_point(rd, F, {Rat(3)});
  ThetaReducer red(rd, t);
  REQUIRE(red.regular());

  const int ue = rd.identity();
  const int us = rd.simple_reflection(0);
  REQUIRE(weight_is_zero(red.steinberg(ue)));
  REQUIRE(red.steinberg(us) == weight_neg(rd.fundamental_weight(0)));

  // theta_{x_1} = (10/3) theta_0 - theta_{-x_1} modulo the character at 3.
  auto c = red.reduce_regular(LaurentPoly::monomial(rd.fundamental_weight(0)));
  REQUIRE(c[ue] == F.from_rat(Rat(10, 3)));
  REQUIRE(c[us] == F.from_rat(Rat(-1)));

  // Invariant elements reduce to their scalar value on theta_0.
  LaurentPoly inv = LaurentPoly::monomial(rd.fundamental_weight(0)) +
                    LaurentPoly::monomial(weight_neg(rd.fundamental_weight(0)));
  auto ci = red.reduce(inv);
  REQUIRE(ci[ue] == F.from_rat(Rat(10, 3)));
  REQUIRE(ci[us].is_zero());

  REQUIRE_THROWS_AS(
      ThetaReducer(rd, rational_point(rd, F, {Rat(1)}))
          .reduce_regular(LaurentPoly::one(rd.rank())),
      std::invalid_argument);
}

TEST_CASE("symbolic reduction agrees with interpolation", "[quotient]") {
  struct Case {
    const char* label;
    std::vector<Rat> coords;
  };
  for (const Case& c : {Case{"A1", {Rat(3)}}, Case{"A2", {Rat(2), Rat(3)}},
                        Case{"B2", {Rat(2), Rat(3)}}}) {
    RootDatum rd = RootDatum::build(c.label);
    KField F(Rat(4));
    TorusPoint t = rational_point(rd, F, c.coords);
    ThetaReducer red(rd, t);
    REQUIRE(red.regular());
    std::vector<LaurentPoly> samples;
    samples.push_back(LaurentPoly::monomial(rd.fundamental_weight(0)));
    samples.push_back(LaurentPoly::monomial(weight_neg(rd.rho())));
    samples.push_back(LaurentPoly::monomial(rd.rho(), ScalarQ::v_pow(1, Rat(2))));
    samples.push_back(weyl_ratio_sum(rd, LaurentPoly::monomial(rd.rho())));
    REQUIRE(reduction_paths_agree(red, samples));
  }
}

TEST_CASE("symbolic reduction at non-regular points", "[quotient]") {
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(4));
    TorusPoint t1 = rational_point(rd, F, {Rat(1)});
    ThetaReducer red1(rd, t1);
    REQUIRE_FALSE(red1.regular());
    auto c1 = red1.reduce(LaurentPoly::monomial(rd.fundamental_weight(0)));
    REQUIRE(c1[rd.identity()] == F.from_rat(Rat(2)));
    REQUIRE(c1[rd.simple_reflection(0)] == F.from_rat(Rat(-1)));

    TorusPoint tm = rational_point(rd, F, {Rat(-1)});
    ThetaReducer redm(rd, tm);
    REQUIRE_FALSE(redm.regular());
    auto cm = redm.reduce(LaurentPoly::monomial(rd.fundamental_weight(0)));
    REQUIRE(cm[rd.identity()] == F.from_rat(Rat(-2)));
    REQUIRE(cm[rd.simple_reflection(0)] == F.from_rat(Rat(-1)));
  }
  struct Case {
    const char* label;
    std::vector<Rat> coords;
  };
  for (const Case& c :
       {Case{"A2", {Rat(1), Rat(1)}}, Case{"A2", {Rat(2), Rat(4)}},
        Case{"B2", {Rat(3), Rat(3)}}, Case{"B2", {Rat(1), Rat(2)}}}) {
    RootDatum rd = RootDatum::build(c.label);
    KField F(Rat(4));
    TorusPoint t = rational_point(rd, F, c.coords);
    ThetaReducer red(rd, t);
    REQUIRE_FALSE(red.regular());
    // The symbolic path must stay well-defined: invariant coordinates,
    // exact reconstruction (both asserted inside), invariants to scalars.
    LaurentPoly f = LaurentPoly::monomial(rd.fundamental_weight(0));
    auto cf = red.reduce(f);
    REQUIRE(int(cf.size()) == rd.order());
    LaurentPoly inv;
    for (int w = 0; w < rd.order(); ++w)
      inv += LaurentPoly::monomial(rd.act(w, rd.rho()));
    auto ci = red.reduce(inv);
    REQUIRE(ci[rd.identity()] == evaluate(inv, t));
    for (int u = 0; u < rd.order(); ++u)
      if (u != rd.identity()) REQUIRE(ci[u].is_zero());
  }
}

TEST_CASE("quotient model structure checks", "[quotient]") {
  struct Case {
    const char* label;
    std::vector<Rat> coords;
  };
  for (const Case& c : {Case{"A1", {Rat(3)}}, Case{"A2", {Rat(2), Rat(3)}},
                        Case{"B2", {Rat(2), Rat(3)}}}) {
    RootDatum rd = RootDatum::build(c.label);
    KField F(Rat(4));
    HtLab lab(rd);
    TorusPoint t = rational_point(rd, F, c.coords);
    HtModel M(lab, t);
    HtValidation v = M.validate();
    INFO(c.label);
    REQUIRE(v.right_quadratic);
    REQUIRE(v.theta_units);
    REQUIRE(v.left_right_commute);
    REQUIRE(v.central_scalar);
    REQUIRE(v.product_transport);
  }
  {
    RootDatum rd = RootDatum::build("A3");
    KField F(Rat(4));
    HtLab lab(rd);
    TorusPoint t = principal_point(rd, F);
    REQUIRE_THROWS_AS(HtModel(lab, t), std::invalid_argument);
  }
}

TEST_CASE("ideal dimensions at a generic rational point", "[quotient]") {
  struct Case {
    const char* label;
    std::vector<Rat> coords;
  };
  for (const Case& c : {Case{"A1", {Rat(3)}}, Case{"A2", {Rat(2), Rat(3)}}}) {
    RootDatum rd = RootDatum::build(c.label);
    KField F(Rat(4));
    HtLab lab(rd);
    TorusPoint t = rational_point(rd, F, c.coords);
    HtModel M(lab, t);
    ThetaReducer red_inv(rd, t.inverse());
    IdealDims d = ideal_dims(M, red_inv);
    REQUIRE(d.c_c == 1);
    REQUIRE(d.c_cp == 1);
    REQUIRE(d.cp_c == 1);
    REQUIRE(d.cp_cp_inv == 1);
    REQUIRE(d.bounded);
    REQUIRE(d.single_generator);
    REQUIRE(d.simultaneous);
  }
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(-1));
    HtLab lab(rd);
    TorusPoint t = principal_point(rd, F);
    HtModel M(lab, t);
    ThetaReducer red_inv(rd, t.inverse());
    IdealDims d = ideal_dims(M, red_inv);
    REQUIRE(d.c_c == 0);
    REQUIRE(d.c_cp == 0);
    REQUIRE(d.cp_c == 0);
    REQUIRE(d.cp_cp_inv == 0);
    REQUIRE(d.simultaneous);
  }
}

TEST_CASE("vanishing families match the ideal dimensions", "[quotient]") {
  struct Case {
    const char* label;
    std::vector<Rat> coords;  // empty = principal
    Rat q0;
  };
  const Case cases[] = {
      {"A1", {Rat(3)}, Rat(4)},      {"A1", {Rat(1)}, Rat(4)},
      {"A1", {}, Rat(-1)},           {"A2", {Rat(2), Rat(3)}, Rat(4)},
      {"A2", {Rat(1), Rat(1)}, Rat(9)}, {"A2", {}, Rat(-1)},
      {"B2", {Rat(2), Rat(3)}, Rat(4)},
  };
  for (const Case& c : cases) {
    RootDatum rd = RootDatum::build(c.label);
    KField F(c.q0);
    HtLab lab(rd);
    TorusPoint t =
        c.coords.empty() ? principal_point(rd, F) : rational_point(rd, F, c.coords);
    HtModel M(lab, t);
    ThetaReducer red_inv(rd, t.inverse());
    Thm34Point r = thm34_check(M, red_inv, family_sample(rd));
    INFO(c.label << " at " << t.str());
    REQUIRE(r.dims.bounded);
    REQUIRE(r.dims.simultaneous);
    REQUIRE(r.dims.single_generator);
    REQUIRE(r.criteria_match);
  }
}

TEST_CASE("principal-point two-sided ideals", "[quotient]") {
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(4));
    HtLab lab(rd);
    HtModel M(lab, principal_point(rd, F));
    ThetaReducer red_inv(rd, M.point().inverse());
    Thm35Report rep = thm35_report(M, red_inv);
    REQUIRE(rep.principal);
    REQUIRE(rep.poincare_q0 == Rat(5));
    REQUIRE(rep.dim_c_cp == 1);
    REQUIRE(rep.dim_cp_c == 1);
    REQUIRE(rep.two_sided);
    REQUIRE(rep.eigen);
    REQUIRE(rep.eq_pairing);
    REQUIRE(rep.ok());
  }
  {
    RootDatum rd = RootDatum::build("A2");
    KField F(Rat(9));
    HtLab lab(rd);
    HtModel M(lab, principal_point(rd, F));
    ThetaReducer red_inv(rd, M.point().inverse());
    Thm35Report rep = thm35_report(M, red_inv);
    REQUIRE(rep.principal);
    REQUIRE(rep.expect_nonzero);
    REQUIRE(rep.two_sided);
    REQUIRE(rep.eigen);
    REQUIRE(rep.eq_pairing);
    REQUIRE(rep.ok());
  }
  {
    RootDatum rd = RootDatum::build("B2");
    KField F(Rat(9));
    HtLab lab(rd);
    HtModel M(lab, principal_point(rd, F));
    ThetaReducer red_inv(rd, M.point().inverse());
    Thm35Report rep = thm35_report(M, red_inv);
    REQUIRE(rep.principal);
    REQUIRE(rep.expect_nonzero);
    REQUIRE(rep.dim_c_cp == 1);
    REQUIRE(rep.dim_cp_c == 1);
    REQUIRE(rep.two_sided);
    REQUIRE(rep.eigen);
    REQUIRE(rep.eq_pairing);
    REQUIRE(rep.ok());
  }
  for (const char* label : {"A1", "A2"}) {
    RootDatum rd = RootDatum::build(label);
    KField F(Rat(-1));
    HtLab lab(rd);
    HtModel M(lab, principal_point(rd, F));
    ThetaReducer red_inv(rd, M.point().inverse());
    Thm35Report rep = thm35_report(M, red_inv);
    INFO(label);
    REQUIRE(rep.principal);
    REQUIRE(rep.poincare_q0 == Rat(0));
    REQUIRE_FALSE(rep.expect_nonzero);
    REQUIRE(rep.dim_c_cp == 0);
    REQUIRE(rep.dim_cp_c == 0);
    REQUIRE(rep.eq_pairing);
    REQUIRE(rep.ok());
  }
}

TEST_CASE("modules generated by the bridge element", "[quotient]") {
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(4));
    HtLab lab(rd);
    HtModel M(lab, rational_point(rd, F, {Rat(3)}));
    Thm41Point r = thm41_point(M);
    REQUIRE(r.modules_free);
    REQUIRE(r.dim_HtC == 2);
    REQUIRE(r.xi_nonzero);
    REQUIRE(r.dim_Lt == 2);
    REQUIRE(r.dim_Mt0 == 0);
    REQUIRE(r.kernel_match);
    REQUIRE(r.quotient_dims);
    REQUIRE(r.closure_match);
    REQUIRE(r.Lt_stable);
    REQUIRE(r.burnside);
    REQUIRE(r.CLt_nonzero);
    REQUIRE(r.burnside_dual);
    REQUIRE(r.CpLt_dual_nonzero);
    REQUIRE(r.ok());
  }
  struct Case {
    const char* label;
    std::vector<Rat> coords;
    int dim_lt;
  };
  for (const Case& c : {Case{"A2", {Rat(2), Rat(3)}, 6},
                        Case{"B2", {Rat(2), Rat(3)}, 8}}) {
    RootDatum rd = RootDatum::build(c.label);
    KField F(Rat(4));
    HtLab lab(rd);
    HtModel M(lab, rational_point(rd, F, c.coords));
    Thm41Point r = thm41_point(M);
    INFO(c.label);
    REQUIRE(r.dim_Lt == c.dim_lt);
    REQUIRE(r.dim_Mt0 == 0);
    REQUIRE(r.ok());
  }
  for (const char* label : {"A1", "A2"}) {
    RootDatum rd = RootDatum::build(label);
    KField F(Rat(-1));
    HtLab lab(rd);
    HtModel M(lab, principal_point(rd, F));
    Thm41Point r = thm41_point(M);
    INFO(label);
    REQUIRE(r.modules_free);
    REQUIRE_FALSE(r.xi_nonzero);
    REQUIRE(r.dim_Lt == 0);
    REQUIRE(r.dim_Mt0 == r.dim_HtC);
    REQUIRE(r.kernel_match);
    REQUIRE(r.ok());
  }
}

TEST_CASE("type A eigenspace criterion", "[quotient]") {
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(4));
    HtLab lab(rd);
    HtModel M(lab, rational_point(rd, F, {Rat(3)}));
    LieTypeAReport rep = lie_criterion_typeA(M);
    REQUIRE(rep.supported);
    REQUIRE(rep.dim_eigenspace == 0);
    REQUIRE_FALSE(rep.has_semisimple);
    REQUIRE_FALSE(rep.predicts_vanishing);
    REQUIRE(rep.dim_direct == 2);
    REQUIRE(rep.agree);
  }
  {
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(-1));
    HtLab lab(rd);
    HtModel M(lab, principal_point(rd, F));
    LieTypeAReport rep = lie_criterion_typeA(M);
    REQUIRE(rep.supported);
    REQUIRE(rep.dim_eigenspace == 2);
    REQUIRE(rep.has_semisimple);
    REQUIRE(rep.predicts_vanishing);
    REQUIRE(rep.dim_direct == 0);
    REQUIRE(rep.agree);
  }
  {
    RootDatum rd = RootDatum::build("A2");
    KField F(Rat(4));
    HtLab lab(rd);
    HtModel M(lab, rational_point(rd, F, {Rat(2), Rat(1)}));
    LieTypeAReport rep = lie_criterion_typeA(M);
    REQUIRE(rep.supported);
    REQUIRE(rep.dim_eigenspace == 1);
    REQUIRE_FALSE(rep.has_semisimple);
    REQUIRE_FALSE(rep.predicts_vanishing);
    REQUIRE(rep.dim_direct > 0);
    REQUIRE(rep.agree);
  }
  {
    // Documented failure of the criterion at q0 = 1: the eigenspace picks
    // up the Cartan subalgebra and predicts vanishing, yet the ideal does
    // not vanish.
    RootDatum rd = RootDatum::build("A1");
    KField F(Rat(1));
    HtLab lab(rd);
    HtModel M(lab, principal_point(rd, F));
    LieTypeAReport rep = lie_criterion_typeA(M);
    REQUIRE(rep.supported);
    REQUIRE(rep.q0_flagged_one);
    REQUIRE(rep.has_semisimple);
    REQUIRE(rep.predicts_vanishing);
    REQUIRE(rep.dim_direct > 0);
    REQUIRE_FALSE(rep.agree);
  }
  {
    RootDatum rd = RootDatum::build("B2");
    KField F(Rat(4));
    HtLab lab(rd);
    HtModel M(lab, rational_point(rd, F, {Rat(2), Rat(3)}));
    REQUIRE_FALSE(lie_criterion_typeA(M).supported);
  }
}
