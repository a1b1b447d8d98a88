#include "orbidisk/bmodel.hpp"

#include <algorithm>
#include <set>

namespace orbidisk {

MirrorCurve build_curve(const BraneSetup& s) {
  const auto& fl = s.brane.flag;
  const std::size_t k = s.charges.rows();
  IntMatrix ext = extended_charge_matrix(s.fan, s.brane);
  MirrorCurve c;
  c.s1 = fl.s1;
  c.f = s.brane.f;
  c.inner = fl.inner;
  c.index.push_back(fl.i1);
  for (int i : s.basis.p_indices) c.index.push_back(i);
  c.p_tilde = RatMatrix(k + 1, k + 1);
  for (std::size_t a = 0; a <= k; ++a)
    for (std::size_t b = 0; b <= k; ++b) c.p_tilde(a, b) = Rational(ext(b, static_cast<std::size_t>(c.index[a])));
  if (determinant(c.p_tilde) == 0) throw InvalidInput("basis", "the extended pairing matrix is singular");
  c.p_tilde_inv = inverse(c.p_tilde);

  const auto i2 = static_cast<std::size_t>(fl.i2);
  for (std::size_t a = 0; a <= k; ++a) {
    Rational e(0);
    for (std::size_t b = 0; b <= k; ++b) e -= Rational(ext(b, i2)) * c.p_tilde_inv(b, a);
    c.epsilon.push_back(e);
  }

  // qhat_b = prod_c q_c^{p_cb} for b >= 1 and qhat_0 = x^{s1}
  c.to_xq = RatMatrix(k + 1, k + 1);
  for (std::size_t a = 0; a <= k; ++a) {
    c.to_xq(a, 0) = Rational(c.s1) * c.p_tilde_inv(0, a);
    for (std::size_t q = 1; q <= k; ++q) {
      Rational t(0);
      for (std::size_t b = 1; b <= k; ++b) t += c.p_tilde(q, b) * c.p_tilde_inv(b, a);
      c.to_xq(a, q) = t;
    }
  }
  for (std::size_t a = 0; a <= k; ++a) {
    if (c.inner) {
      c.weights.push_back(1);
      continue;
    }
    Rational w = c.to_xq(a, 0) / Rational(c.s1);
    for (std::size_t q = 1; q <= k; ++q) w += c.to_xq(a, q);
    if (w <= 0) throw InvalidInput("weights", "curve variable " + std::to_string(a) + " has non-positive degree");
    c.weights.push_back(w);
  }
  return c;
}

Rational tq_truncation(const BraneSetup& s, const MirrorCurve& c, const Rational& t) {
  if (!c.inner) return t;
  Rational mx(0);
  for (std::size_t a = 0; a < s.charges.rows(); ++a)
    mx = std::max(mx, s.dual_pairings(a, static_cast<std::size_t>(s.brane.flag.i1)));
  return floor(t * (1 + mx));
}

SpacePtr tq_space(const MirrorCurve& c, const Rational& truncation, const FieldPtr& field) {
  std::vector<Variable> vars;
  for (std::size_t a = 0; a < c.epsilon.size(); ++a) vars.push_back({"tq" + std::to_string(a), 1, c.weights[a], false});
  return SeriesSpace::make(std::move(vars), truncation, field);
}

PuiseuxSeries exp_poly_closed(const std::vector<Rational>& r, const SpacePtr& space) {
  if (r.size() != space->size()) throw std::invalid_argument("exponent list and space disagree");
  if (!space->truncation()) throw std::invalid_argument("closed form needs a truncated space");
  Rational min_w(1);
  for (const auto& v : space->variables()) min_w = std::min(min_w, v.weight);
  const long bound = floor(*space->truncation() / min_w).get_si();
  PuiseuxSeries v(space);
  for_each_bounded(r.size(), bound, [&](const std::vector<Integer>& n) {
    Integer total(0);
    Rational top(-1);
    Integer fact(1);
    for (std::size_t a = 0; a < n.size(); ++a) {
      total += n[a];
      top += r[a] * Rational(n[a]);
      fact *= factorial(n[a].get_si());
    }
    if (total == 0) return;
    Exponent e(n.size());
    for (std::size_t a = 0; a < n.size(); ++a) e[a] = n[a].get_si();
    if (!space->within_truncation(e)) return;
    v.add_term(e, CycloNumber(space->field(), pochhammer(top, total.get_si() - 1) / Rational(fact)));
  });
  return v;
}

PuiseuxSeries exp_poly_newton(const std::vector<Rational>& r, const SpacePtr& space) {
  if (r.size() != space->size()) throw std::invalid_argument("exponent list and space disagree");
  std::vector<PuiseuxSeries> s;
  for (std::size_t a = 0; a < r.size(); ++a) s.push_back(PuiseuxSeries::variable(space, a));
  const PuiseuxSeries one = PuiseuxSeries::constant(space, 1);
  auto residual = [&](const PuiseuxSeries& v) {
    PuiseuxSeries h = one - exp(v);
    for (std::size_t a = 0; a < r.size(); ++a) h += s[a] * exp(v * r[a]);
    return h;
  };
  auto derivative = [&](const PuiseuxSeries& v) {
    PuiseuxSeries h = -exp(v);
    for (std::size_t a = 0; a < r.size(); ++a)
      if (r[a] != 0) h += s[a] * exp(v * r[a]) * r[a];
    return h;
  };
  return newton_solve(residual, derivative, space);
}

// y = -y' and tq_a = (-1)^{-eps_a} tq'_a, so each monomial picks up exp(i pi eps . n).
PuiseuxSeries solve_log_y_closed(const MirrorCurve& c, const SpacePtr& space) {
  return phase_twist(exp_poly_closed(c.epsilon, space), c.epsilon);
}

PuiseuxSeries solve_log_y_newton(const MirrorCurve& c, const SpacePtr& space) {
  return phase_twist(exp_poly_newton(c.epsilon, space), c.epsilon);
}

BPotential w_h_inst(const BraneSetup& s, const MirrorCurve& c, const Rational& t, Solver solver) {
  SpacePtr tq = tq_space(c, tq_truncation(s, c, t), s.field);
  PuiseuxSeries v = solver == Solver::closed ? solve_log_y_closed(c, tq) : solve_log_y_newton(c, tq);
  PuiseuxSeries in_xq = substitute_monomial(v, c.to_xq, xq_space(s, t));
  BPotential out{integrate_dlog(drop_independent_of(in_xq, 0), 0, c.s1), in_xq - drop_independent_of(in_xq, 0)};
  return out;
}

namespace {

VerifyReport refuse(std::string invariant, std::string detail) {
  VerifyReport r;
  r.status = VerifyReport::Status::refused;
  r.refusal_invariant = std::move(invariant);
  r.refusal_detail = std::move(detail);
  return r;
}

}  // namespace

VerifyReport verify_identity(const StackyFan& fan, const FramedBrane& brane, const Rational& t,
                             const VerifyOptions& options) {
  if (t < 0) return refuse("truncation", "T must be non-negative");
  if (!fan.torsion.empty()) return refuse("torsion", "torsion unsupported in mirror pipeline");
  std::optional<BraneSetup> setup;
  try {
    if (!semiprojectivity_check(fan)) return refuse("semiprojective", "the fan is not semiprojective");
    setup = prepare(fan, brane, options.order_cap);
  } catch (const InvalidInput& e) {
    const auto& d = e.diagnostics();
    return d.empty() ? refuse("input", e.what()) : refuse(d.front().invariant, d.front().detail);
  } catch (const OrderError& e) {
    return refuse("order", e.what());
  }
  const BraneSetup& s = *setup;
  MirrorCurve curve = build_curve(s);

  PuiseuxSeries a = disk_potential_A(s, t).assembled;
  SpacePtr space = a.space();
  if (options.perturb) {
    const auto& p = *options.perturb;
    if (p.size() != space->size()) return refuse("perturb", "perturbation monomial has the wrong arity");
    Exponent e(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) e[i] = space->scaled_exponent(p[i], i);
    a.add_term(e, CycloNumber(s.field, 1));
  }
  BPotential b = w_h_inst(s, curve, t, Solver::newton);
  BPotential b_closed = w_h_inst(s, curve, t, Solver::closed);

  VerifyReport r;
  r.a_terms = a.terms().size();
  r.b_terms = b.inst.terms().size();
  r.closed_matches_newton = b_closed.inst == b.inst && b_closed.log_term == b.log_term;
  std::set<Exponent> keys;
  for (const auto& [e, c] : a.terms()) keys.insert(e);
  for (const auto& [e, c] : b.inst.terms()) keys.insert(e);
  r.compared = keys.size();
  for (const auto& e : keys) {
    CycloNumber ca = a.coefficient(e), cb = b.inst.coefficient(e);
    if (ca == cb) continue;
    ++r.mismatches;
    if (!r.first_mismatch) {
      Mismatch m{{}, ca, cb};
      for (std::size_t i = 0; i < e.size(); ++i) m.exponent.push_back(space->true_exponent(e, i));
      r.first_mismatch = m;
    }
  }
  r.status = r.mismatches == 0 && r.closed_matches_newton ? VerifyReport::Status::equal
                                                         : VerifyReport::Status::mismatch;
  r.a_side = a;
  r.b_side = b.inst;
  r.log_term = b.log_term;
  return r;
}

}  // namespace orbidisk
