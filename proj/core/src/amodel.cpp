#include "orbidisk/amodel.hpp"

#include <algorithm>

namespace orbidisk {

namespace {

Rational framing_entry(const FramedBrane& b, std::size_t i) {
  const auto& fl = b.flag;
  if (static_cast<int>(i) == fl.i1) return 1;
  if (static_cast<int>(i) == fl.i2) return b.f;
  if (static_cast<int>(i) == fl.i3) return -b.f - 1;
  return 0;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace

FramedBrane make_brane(const StackyFan& fan, std::array<int, 3> orientation, long f, std::optional<long> f_minus) {
  FramedBrane b;
  b.flag = flag_data(fan, orientation);
  b.f = f;
  if (!b.flag.inner) {
    if (f_minus) throw InvalidInput("framing", "an outer brane takes a single framing integer");
    return b;
  }
  const auto& fl = b.flag;
  const Rational s1p(fl.s1), s1m(fl.s1_minus);
  auto u1 = free_part(fan, static_cast<std::size_t>(fl.i1));
  auto u4 = free_part(fan, static_cast<std::size_t>(fl.i4));
  auto u2 = free_part(fan, static_cast<std::size_t>(fl.i2));
  auto u3 = free_part(fan, static_cast<std::size_t>(fl.i3));
  std::vector<Rational> rhs(3);
  for (int j = 0; j < 3; ++j) rhs[j] = -(u1[j] / s1p + u4[j] / s1m);
  // a2 u2 + a3 u3 = rhs: solve on two independent coordinates, confirm on the third
  bool solved = false;
  for (int p = 0; p < 3 && !solved; ++p)
    for (int q = p + 1; q < 3 && !solved; ++q) {
      Rational det = u2[p] * u3[q] - u3[p] * u2[q];
      if (det == 0) continue;
      b.a2 = (rhs[p] * u3[q] - u3[p] * rhs[q]) / det;
      b.a3 = (u2[p] * rhs[q] - rhs[p] * u2[q]) / det;
      solved = true;
    }
  for (int j = 0; j < 3 && solved; ++j)
    if (b.a2 * u2[j] + b.a3 * u3[j] != rhs[j]) solved = false;
  if (!solved) throw InvalidInput("framing", "no class alpha realises the inner brane relation");
  Rational forced = s1m * (b.a3 + Rational(f + 1) / s1p);
  if (!is_integer(forced))
    throw InvalidInput("framing", "no integer f- is compatible with f+ = " + std::to_string(f));
  long fm = forced.get_num().get_si();
  if (f_minus && *f_minus != fm)
    throw InvalidInput("framing", "f- = " + std::to_string(*f_minus) + " is inconsistent with f+ = " +
                                      std::to_string(f) + "; the fan forces f- = " + std::to_string(fm));
  if (b.a2 != Rational(f) / s1p - Rational(fm + 1) / s1m)
    throw InvalidInput("framing", "the degree a2 does not match the framing pair");
  b.f_minus = fm;
  return b;
}

BraneSetup prepare(const StackyFan& fan, const FramedBrane& brane, long order_cap) {
  validate_fan(fan);
  BraneSetup s;
  s.fan = fan;
  s.brane = brane;
  s.charges = charge_matrix(fan);
  s.basis = cone_basis(fan, s.charges, brane.flag.sigma);
  s.box = box_elements(fan, brane.flag.sigma);
  if (brane.flag.inner) s.box_minus = box_elements(fan, brane.flag.sigma_minus);
  const std::size_t k = s.charges.rows(), r = fan.r();
  s.dual_pairings = RatMatrix(k, r);
  std::vector<Rational> exps = {Rational(1, brane.flag.s1), Rational(1, brane.flag.s1_minus)};
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<Rational> ea = s.basis.dual.row(a);
    for (std::size_t i = 0; i < r; ++i) {
      s.dual_pairings(a, i) = pairing(s.charges, i, ea);
      exps.push_back(s.dual_pairings(a, i));
    }
  }
  for (const auto* list : {&s.box, &s.box_minus})
    for (const auto& e : *list)
      for (const auto& c : e.c) exps.push_back(c);
  long m = phase_order(exps);
  if (m > order_cap)
    throw OrderError("root-of-unity order " + std::to_string(m) + " exceeds the cap " + std::to_string(order_cap));
  s.field = CyclotomicField::create(m);
  return s;
}

IntMatrix extended_charge_matrix(const StackyFan& fan, const FramedBrane& brane) {
  IntMatrix l = charge_matrix(fan);
  const std::size_t k = l.rows(), r = fan.r();
  IntMatrix e(k + 1, r + 2);
  for (std::size_t i = 0; i < r; ++i) e(0, i) = framing_entry(brane, i).get_num();
  e(0, r) = 1;
  e(0, r + 1) = -1;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < r; ++i) e(a + 1, i) = l(a, i);
  return e;
}

Rational weighted_degree(const BraneSetup& s, const Integer& d0, const std::vector<Integer>& n) {
  Rational w = ratio(abs(d0), s.brane.flag.s1);
  for (const auto& x : n) w += x;
  return w;
}

std::vector<ExtendedDegree> enumerate_extended(const BraneSetup& s, const Rational& t) {
  std::vector<ExtendedDegree> out;
  if (t < 0) return out;
  const std::size_t k = s.charges.rows(), r = s.fan.r();
  const auto& fl = s.brane.flag;
  const Rational s1(fl.s1);
  std::vector<Rational> d1(k);
  for (std::size_t a = 0; a < k; ++a) d1[a] = s.dual_pairings(a, static_cast<std::size_t>(fl.i1));
  long bound;
  if (!fl.inner) {
    Rational min_w(1);
    for (const auto& x : d1) {
      Rational w = 1 - x;
      if (w <= 0) throw InvalidInput("weights", "the outer brane cone has a non-positive pulled-back weight");
      min_w = std::min(min_w, w);
    }
    bound = floor(t / min_w).get_si();
  } else {
    Rational mx(0);
    for (const auto& x : d1) mx = std::max(mx, x);
    bound = floor(t * (1 + mx)).get_si();
  }
  for_each_bounded(k + 1, bound, [&](const std::vector<Integer>& nt) {
    std::vector<Integer> n(nt.begin() + 1, nt.end());
    Rational d0q = Rational(nt[0]);
    for (std::size_t a = 0; a < k; ++a) d0q -= Rational(n[a]) * d1[a];
    d0q *= s1;
    if (!is_integer(d0q)) throw std::logic_error("winding number is not integral");
    Integer d0 = d0q.get_num();
    if (d0 == 0 || (!fl.inner && d0 < 0)) return;
    if (weighted_degree(s, d0, n) > t) return;
    ExtendedDegree deg;
    deg.d0 = d0;
    deg.ntilde = nt;
    deg.beta = make_curve_class(s.fan, s.charges, s.basis, s.box, n);
    Rational w = Rational(d0) / s1;
    for (std::size_t i = 0; i < r; ++i) deg.pairings.push_back(w * framing_entry(s.brane, i) + deg.beta.pairings[i]);
    deg.pairings.push_back(w);
    deg.pairings.push_back(-w);
    out.push_back(std::move(deg));
  });
  std::sort(out.begin(), out.end(), [](const ExtendedDegree& a, const ExtendedDegree& b) {
    if (a.d0 != b.d0) return a.d0 < b.d0;
    return a.beta.n < b.beta.n;
  });
  return out;
}

DiskFactor disk_factor_prime(const BraneSetup& s, const Integer& d0, const BoxElement& k, const BoxElement* k_minus) {
  const auto& fl = s.brane.flag;
  const auto ray = [](int i) { return static_cast<std::size_t>(i); };
  const Rational c1 = k.weight(s.fan, ray(fl.i1)), c2 = k.weight(s.fan, ray(fl.i2)), c3 = k.weight(s.fan, ray(fl.i3));
  const Rational f(s.brane.f);
  const Rational branch = frac(c2 - f * c1);
  if (d0 > 0) {
    const Rational s1(fl.s1);
    const Rational u = Rational(d0) / s1;
    if (frac(u) != c1) throw InvalidInput("disk factor", "(d0, k) is not in H(tau, sigma)");
    const long m = floor(u).get_si();
    const long top = m + floor(k.age).get_si() - 1;
    Rational prod(1);
    for (long a = 1; a <= top; ++a) prod *= f * u - c2 + a;
    prod /= Rational(factorial(m));
    Rational scale(1);
    const Rational inv = s1 / Rational(d0);
    for (long j = 0; j < 1 + floor(k.age).get_si(); ++j) scale *= inv;
    CycloNumber v = -phase(s.field, u * (-f - 1) - c3 - branch);
    return {v * (scale * prod), k.age};
  }
  if (!fl.inner) throw InvalidInput("disk factor", "negative winding needs an inner brane");
  if (!k_minus) throw std::invalid_argument("negative winding needs a Box element of the adjacent cone");
  const Rational s1m(fl.s1_minus), s1p(fl.s1), fm(s.brane.f_minus);
  const Rational u = Rational(-d0) / s1m;
  const Rational m2 = k_minus->weight(s.fan, ray(fl.i2)), m3 = k_minus->weight(s.fan, ray(fl.i3));
  const long m = floor(u).get_si();
  const long age = floor(k_minus->age).get_si();
  Rational prod(1);
  for (long a = 1; a <= m + age - 1; ++a) prod *= fm * u - m3 + a;
  prod /= Rational(factorial(m));
  Rational scale = s1m / Rational(-d0);
  for (long j = 0; j < age; ++j) scale *= s1p / Rational(d0);
  CycloNumber v = -phase(s.field, Rational(d0) / s1m * (-fm - 1) + m2 - branch);
  return {v * (scale * prod), k_minus->age};
}

CycloNumber amplitude_coefficient(const BraneSetup& s, const ExtendedDegree& deg) {
  const auto& fl = s.brane.flag;
  const std::size_t r = s.fan.r();
  Integer denom_fact(1);
  for (std::size_t i = 0; i < r; ++i) {
    if (static_cast<int>(i) == fl.i2 || static_cast<int>(i) == fl.i3) continue;
    const Rational& p = deg.pairings[i];
    if (p < 0) return CycloNumber(s.field);
    if (!is_integer(p)) throw std::logic_error("non-integral pairing on an index outside the brane edge");
    denom_fact *= factorial(p.get_num().get_si());
  }
  const Rational d2 = deg.pairings[static_cast<std::size_t>(fl.i2)];
  const Rational d3 = deg.pairings[static_cast<std::size_t>(fl.i3)];
  const Rational len = -d2 - d3 - 1;
  if (!is_integer(len)) throw std::logic_error("Gamma-ratio offset is not an integer");
  const BoxElement& v = s.box.at(deg.beta.box);
  const Rational f(s.brane.f);
  const Rational c1 = v.weight(s.fan, static_cast<std::size_t>(fl.i1));
  const Rational c2 = v.weight(s.fan, static_cast<std::size_t>(fl.i2));
  const Rational u = Rational(deg.d0) / Rational(fl.s1);
  const Rational e = u * (-f - 1) - frac(c2 - f * c1) + deg.beta.pairings[static_cast<std::size_t>(fl.i3)];
  Rational mag = pochhammer(-d3 - 1, len.get_num().get_si()) / (u * Rational(denom_fact));
  return -phase(s.field, e) * mag;
}

CycloNumber character_sqrt(const BraneSetup& s, const BoxElement& v) {
  const auto& fl = s.brane.flag;
  const Rational c1 = v.weight(s.fan, static_cast<std::size_t>(fl.i1));
  const Rational c2 = v.weight(s.fan, static_cast<std::size_t>(fl.i2));
  return phase(s.field, frac(c2 - Rational(s.brane.f) * c1));
}

SpacePtr xq_space(const BraneSetup& s, const Rational& t) {
  std::vector<Variable> vars;
  vars.push_back({"x", 1, Rational(1, s.brane.flag.s1), s.brane.flag.inner});
  for (std::size_t a = 0; a < s.charges.rows(); ++a) vars.push_back({"q" + std::to_string(a + 1), 1, Rational(1), false});
  return SeriesSpace::make(std::move(vars), t, s.field);
}

APotential disk_potential_A(const BraneSetup& s, const Rational& t) {
  SpacePtr space = xq_space(s, t);
  APotential out{std::vector<PuiseuxSeries>(s.box.size(), PuiseuxSeries(space)), PuiseuxSeries(space)};
  for (const auto& deg : enumerate_extended(s, t)) {
    CycloNumber c = amplitude_coefficient(s, deg);
    if (c.is_zero()) continue;
    Exponent e;
    e.push_back(deg.d0.get_si());
    for (const auto& n : deg.beta.n) e.push_back(n.get_si());
    out.sectors[deg.beta.box].add_term(e, c);
  }
  for (std::size_t v = 0; v < s.box.size(); ++v) out.assembled += out.sectors[v] * character_sqrt(s, s.box[v]);
  return out;
}

namespace {

// Coefficient of q^beta in A_i, or nullopt when beta is outside the support of A_i.
// target is v(D_i^dual) for extra vectors and unused otherwise.
std::optional<Rational> a_i_coefficient(const StackyFan& fan, std::size_t i, const std::vector<Rational>& d,
                                        const LatticeVector& sector, const LatticeVector& target) {
  const std::size_t r = fan.r();
  if (i < fan.r_prime()) {
    if (std::any_of(sector.begin(), sector.end(), [](const Integer& x) { return x != 0; })) return std::nullopt;
    if (!(d[i] < 0)) return std::nullopt;
    Rational c(1);
    for (std::size_t j = 0; j < r; ++j) {
      if (j == i) continue;
      if (d[j] < 0) return std::nullopt;
      c /= Rational(factorial(d[j].get_num().get_si()));
    }
    long m = Rational(-d[i]).get_num().get_si();
    c *= Rational(factorial(m - 1));
    return (m - 1) % 2 ? -c : c;
  }
  if (sector != target) return std::nullopt;
  Rational c(1);
  for (std::size_t j = 0; j < r; ++j) {
    if (is_integer(d[j]) && d[j] < 0) return std::nullopt;
    long top = ceil(d[j]).get_si();
    if (top > 0) {
      for (long m = 0; m < top; ++m) c /= d[j] - m;
    } else {
      for (long m = top; m < 0; ++m) c *= d[j] - m;
    }
  }
  return c;
}

}  // namespace

MirrorSeries a_i_series(const StackyFan& fan, std::size_t reference_cone, const Rational& t, const FieldPtr& field) {
  IntMatrix l = charge_matrix(fan);
  const std::size_t k = l.rows(), r = fan.r();
  ConeBasis ref = cone_basis(fan, l, reference_cone);
  struct Entry {
    std::vector<Rational> coords;
    std::vector<Rational> pairings;
    LatticeVector sector;
  };
  std::map<std::vector<Rational>, Entry> classes;
  const long bound = floor(t).get_si();
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    ConeBasis cb = cone_basis(fan, l, c);
    for_each_bounded(k, bound, [&](const std::vector<Integer>& n) {
      std::vector<Rational> beta(k, Rational(0));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) beta[b] += Rational(n[a]) * cb.dual(a, b);
      if (classes.count(beta)) return;
      Entry e;
      for (std::size_t i = 0; i < r; ++i) e.pairings.push_back(pairing(l, i, beta));
      Rational total(0);
      for (int p : ref.p_indices) {
        const Rational& x = e.pairings[static_cast<std::size_t>(p)];
        if (x < 0) return;
        e.coords.push_back(x);
        total += x;
      }
      if (total > t) return;
      e.sector = sector_vector(fan, e.pairings);
      classes.emplace(beta, std::move(e));
    });
  }
  std::vector<long> dens(k, 1);
  for (const auto& [beta, e] : classes)
    for (std::size_t a = 0; a < k; ++a) dens[a] = lcm(Integer(dens[a]), e.coords[a].get_den()).get_si();
  std::vector<Variable> vars;
  for (std::size_t a = 0; a < k; ++a) vars.push_back({"q" + std::to_string(a + 1), dens[a], Rational(1), false});
  SpacePtr space = SeriesSpace::make(std::move(vars), t, field);

  std::vector<LatticeVector> targets(r);
  for (std::size_t i = fan.r_prime(); i < r; ++i) targets[i] = sector_vector(fan, leading_degree(fan, i).pairings);

  MirrorSeries out;
  out.a.assign(r, PuiseuxSeries(space));
  for (const auto& [beta, e] : classes) {
    Exponent ex(k);
    for (std::size_t a = 0; a < k; ++a) ex[a] = space->scaled_exponent(e.coords[a], a);
    for (std::size_t i = 0; i < r; ++i)
      if (auto c = a_i_coefficient(fan, i, e.pairings, e.sector, targets[i])) out.a[i].add_term(ex, CycloNumber(field, *c));
  }
  out.k_prime = k - (r - fan.r_prime());
  for (std::size_t a = 0; a < out.k_prime; ++a) {
    PuiseuxSeries sa(space);
    std::vector<Rational> ea = ref.dual.row(a);
    for (std::size_t i = 0; i < fan.r_prime(); ++i) {
      Rational w = pairing(l, i, ea);
      if (w != 0) sa += out.a[i] * w;
    }
    out.s.push_back(std::move(sa));
  }
  return out;
}

MirrorMaps mirror_maps(const BraneSetup& s, const Rational& t) {
  if (!s.fan.torsion.empty()) throw InvalidInput("torsion", "torsion unsupported in mirror pipeline");
  MirrorSeries ms = a_i_series(s.fan, s.brane.flag.sigma, t, s.field);
  MirrorMaps mm{{}, {}, PuiseuxSeries(ms.a.front().space())};
  const std::size_t k = s.charges.rows();
  for (std::size_t a = 0; a < k; ++a) {
    if (a < ms.k_prime) {
      mm.has_log.push_back(true);
      mm.closed.push_back(ms.s[a]);
    } else {
      mm.has_log.push_back(false);
      mm.closed.push_back(ms.a[s.fan.r_prime() + (a - ms.k_prime)]);
    }
  }
  for (std::size_t i = 0; i < s.fan.r_prime(); ++i) {
    Rational w = framing_entry(s.brane, i);
    if (w != 0) mm.open += ms.a[i] * (w / Rational(s.brane.flag.s1));
  }
  return mm;
}

}  // namespace orbidisk
