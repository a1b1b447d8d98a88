#include <gtest/gtest.h>

#include "fans.hpp"
#include "series_probe.hpp"
#include "orbidisk/bmodel.hpp"

using namespace orbidisk;
using namespace orbidisk::testing;

namespace {

BraneSetup setup(const StackyFan& fan, std::array<int, 3> o, long f) { return prepare(fan, make_brane(fan, o, f)); }

struct Case {
  const char* name;
  StackyFan fan;
  std::array<int, 3> order;
  long f;
  long t;
};

std::vector<Case> identity_cases() {
  std::vector<Case> v;
  for (long f = -2; f <= 3; ++f) v.push_back({"c3", c3(), {0, 1, 2}, f, 5});
  for (long f = -1; f <= 2; ++f) v.push_back({"x111", x111(), {0, 1, 2}, f, 5});
  std::vector<std::array<int, 3>> orders = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  for (auto o : orders)
    for (long f : {0L, 1L}) v.push_back({"x120", x120(), o, f, 4});
  return v;
}

}  // namespace

TEST(Curve, Epsilon) {
  for (long f = -1; f <= 2; ++f) {
    auto c = build_curve(setup(x111(), {0, 1, 2}, f));
    ASSERT_EQ(c.epsilon.size(), 2u);
    EXPECT_EQ(c.epsilon[0], Rational(-f));
    EXPECT_EQ(c.epsilon[1], ratio(Integer(1 - f), Integer(3)));
  }
  auto c = build_curve(setup(x120(), {0, 1, 2}, 0));
  EXPECT_EQ(c.epsilon, (std::vector<Rational>{0, Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(build_curve(setup(c3(), {0, 1, 2}, 2)).epsilon, std::vector<Rational>{-2});
}

TEST(Curve, LogOnePlusS) {
  auto space = SeriesSpace::make({{"s", 1, 1, false}}, Rational(8), CyclotomicField::create(1));
  for (auto v : {exp_poly_closed({0}, space), exp_poly_newton({0}, space)})
    for (long n = 1; n <= 8; ++n) EXPECT_EQ(v.coefficient({n}), num(v, ratio(Integer(n % 2 ? 1 : -1), Integer(n))));
}

TEST(Curve, ClosedMatchesNewtonTwoVariables) {
  auto space = SeriesSpace::make({{"s", 1, 1, false}, {"t", 1, 1, false}}, Rational(5), CyclotomicField::create(1));
  std::vector<Rational> r = {Rational(1, 2), Rational(-3, 4)};
  EXPECT_EQ(exp_poly_closed(r, space), exp_poly_newton(r, space));
}

TEST(Potential, C3Smooth) {
  auto s = setup(c3(), {0, 1, 2}, 0);
  auto b = w_h_inst(s, build_curve(s), 12);
  for (long d = 1; d <= 12; ++d)
    EXPECT_EQ(coeff(b.inst, {Rational(d)}), num(b.inst, ratio(Integer(d % 2 ? 1 : -1), Integer(d * d))));
  EXPECT_EQ(b.inst, w_h_inst(s, build_curve(s), 12, Solver::closed).inst);
}

TEST(Potential, X111TwistedTerm) {
  auto s = setup(x111(), {0, 1, 2}, 0);
  auto b = w_h_inst(s, build_curve(s), 2);
  EXPECT_EQ(coeff(b.inst, {1, 1}), CycloNumber(s.field, 3) * phase(s.field, Rational(1, 3)));
}

TEST(Verify, OpenMirrorIdentity) {
  for (const auto& c : identity_cases()) {
    auto r = verify_identity(c.fan, make_brane(c.fan, c.order, c.f), c.t);
    EXPECT_EQ(r.status, VerifyReport::Status::equal) << c.name << " f=" << c.f << " order " << c.order[0] << c.order[1];
    EXPECT_TRUE(r.closed_matches_newton);
    EXPECT_GT(r.compared, 0u);
  }
}

TEST(Verify, InnerBranes) {
  for (long f = -1; f <= 1; ++f) {
    auto r = verify_identity(conifold(), make_brane(conifold(), {0, 1, 2}, f), 3);
    EXPECT_EQ(r.status, VerifyReport::Status::equal) << f;
  }
  auto b = make_brane(kp2(), {1, 0, 2}, 0);
  EXPECT_TRUE(b.flag.inner);
  EXPECT_EQ(verify_identity(kp2(), b, 3).status, VerifyReport::Status::equal);
  EXPECT_EQ(verify_identity(kp2(), make_brane(kp2(), {0, 1, 2}, 0), 3).status, VerifyReport::Status::equal);
}

TEST(Verify, PerturbedMonomialIsReported) {
  VerifyOptions o;
  o.perturb = std::vector<Rational>{1, 1};
  auto r = verify_identity(x111(), make_brane(x111(), {0, 1, 2}, 0), 5, o);
  EXPECT_EQ(r.status, VerifyReport::Status::mismatch);
  EXPECT_EQ(r.mismatches, 1u);
  ASSERT_TRUE(r.first_mismatch);
  EXPECT_EQ(r.first_mismatch->exponent, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(r.first_mismatch->a_side - r.first_mismatch->b_side, CycloNumber(r.first_mismatch->a_side.field(), 1));
}

TEST(Verify, Refusals) {
  auto t = verify_identity(x000(), make_brane(x000(), {0, 1, 2}, 0), 3);
  EXPECT_EQ(t.status, VerifyReport::Status::refused);
  EXPECT_EQ(t.refusal_detail, "torsion unsupported in mirror pipeline");
  auto o = verify_identity(o3o1(), make_brane(o3o1(), {2, 0, 1}, 0), 3);
  EXPECT_EQ(o.status, VerifyReport::Status::refused);
  EXPECT_EQ(o.refusal_detail, "the fan is not semiprojective");
  EXPECT_EQ(verify_identity(c3(), make_brane(c3(), {0, 1, 2}, 0), -1).status, VerifyReport::Status::refused);
  VerifyOptions tiny;
  tiny.order_cap = 2;
  auto cap = verify_identity(x111(), make_brane(x111(), {0, 1, 2}, 0), 2, tiny);
  EXPECT_EQ(cap.status, VerifyReport::Status::refused);
  EXPECT_EQ(cap.refusal_invariant, "order");
}

TEST(Potential, SupportWithinTruncation) {
  for (const auto& [fan, o] : {std::pair{conifold(), std::array<int, 3>{0, 1, 2}}, {x120(), {1, 2, 0}}, {kp2(), {1, 0, 2}}}) {
    auto s = prepare(fan, make_brane(fan, o, 1));
    auto b = w_h_inst(s, build_curve(s), 3);
    ASSERT_FALSE(b.inst.is_zero());
    for (const auto& [e, c] : b.inst.terms()) {
      EXPECT_NE(e[0], 0);
      EXPECT_LE(b.inst.space()->degree(e), 3);
      for (std::size_t q = 1; q < e.size(); ++q) EXPECT_GE(e[q], 0);
    }
  }
}
