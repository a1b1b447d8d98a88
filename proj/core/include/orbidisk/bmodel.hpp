#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbidisk/amodel.hpp"

namespace orbidisk {

// Normalized curve 1 + y + sum_a tq_a y^{eps_a} = 0.
struct MirrorCurve {
  long s1 = 1;
  long f = 0;
  bool inner = false;
  std::vector<int> index;          // i(0) = i1, i(a) = a-th ray outside sigma
  std::vector<Rational> epsilon;   // eps_0 .. eps_k
  RatMatrix p_tilde, p_tilde_inv;  // (k+1) x (k+1)
  // Row a: exponents of (x, q_1 .. q_k) in tq_a. Row 0 is (s1, 0, .., 0).
  RatMatrix to_xq;
  // (x, q)-weight of each tq_a; all ones for inner branes.
  std::vector<Rational> weights;
};

// Throws InvalidInput when the extended basis is singular or an outer weight is not positive.
MirrorCurve build_curve(const BraneSetup& s);

// Truncation in tq-space that covers every (x, q) monomial of weighted degree <= t.
Rational tq_truncation(const BraneSetup& s, const MirrorCurve& c, const Rational& t);
SpacePtr tq_space(const MirrorCurve& c, const Rational& truncation, const FieldPtr& field);

// Solution v(s) with v(0) = 0 of 1 - e^v + sum_a s_a e^{r_a v} = 0 in the variables of space.
PuiseuxSeries exp_poly_closed(const std::vector<Rational>& r, const SpacePtr& space);
PuiseuxSeries exp_poly_newton(const std::vector<Rational>& r, const SpacePtr& space);

// log y - i pi as a series in tq.
PuiseuxSeries solve_log_y_closed(const MirrorCurve& c, const SpacePtr& space);
PuiseuxSeries solve_log_y_newton(const MirrorCurve& c, const SpacePtr& space);

enum class Solver { closed, newton };

struct BPotential {
  PuiseuxSeries inst;
  PuiseuxSeries log_term;  // x-independent part of log y, the coefficient of log q0
};
BPotential w_h_inst(const BraneSetup& s, const MirrorCurve& c, const Rational& t, Solver solver = Solver::newton);

struct Mismatch {
  std::vector<Rational> exponent;  // true exponents of (x, q_1 .. q_k)
  CycloNumber a_side, b_side;
};

struct VerifyOptions {
  long order_cap = default_order_cap;
  // Adds 1 to the A-side coefficient of this (x, q) monomial.
  std::optional<std::vector<Rational>> perturb;
};

struct VerifyReport {
  enum class Status { equal, mismatch, refused };
  Status status = Status::refused;
  std::string refusal_invariant, refusal_detail;
  std::size_t a_terms = 0, b_terms = 0, compared = 0, mismatches = 0;
  bool closed_matches_newton = false;
  std::optional<Mismatch> first_mismatch;
  std::optional<PuiseuxSeries> a_side, b_side, log_term;
};

VerifyReport verify_identity(const StackyFan& fan, const FramedBrane& brane, const Rational& t,
                             const VerifyOptions& options = {});

}  // namespace orbidisk
