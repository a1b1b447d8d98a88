#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "orbidisk/bmodel.hpp"

using namespace orbidisk;

namespace {

constexpr int kInstances = 150;

Rational random_rational(std::mt19937_64& rng, long num_span, long max_den) {
  std::uniform_int_distribution<long> n(-num_span, num_span), d(1, max_den);
  return ratio(Integer(n(rng)), Integer(d(rng)));
}

CycloNumber random_cyclo(std::mt19937_64& rng, const FieldPtr& field) {
  std::uniform_int_distribution<long> j(0, field->order() - 1), terms(1, 4);
  CycloNumber c(field);
  for (long t = terms(rng); t > 0; --t) c += CycloNumber::root_of_unity(field, j(rng)) * random_rational(rng, 5, 4);
  return c;
}

SpacePtr small_space(std::size_t vars, const Rational& t, const FieldPtr& field) {
  std::vector<Variable> v;
  for (std::size_t i = 0; i < vars; ++i) v.push_back({"s" + std::to_string(i), 1, 1, false});
  return SeriesSpace::make(std::move(v), t, field);
}

PuiseuxSeries random_series(std::mt19937_64& rng, const SpacePtr& space, bool constant) {
  std::uniform_int_distribution<long> e(0, 3);
  PuiseuxSeries f(space);
  for (int t = 0; t < 6; ++t) {
    Exponent x(space->size());
    for (auto& xi : x) xi = e(rng);
    if (!constant && std::all_of(x.begin(), x.end(), [](long v) { return v == 0; })) continue;
    f.add_term(x, random_cyclo(rng, space->field()));
  }
  return f;
}

}  // namespace

TEST(RingProperty, PochhammerComposition) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> len(0, 6);
  for (int i = 0; i < kInstances; ++i) {
    Rational a = random_rational(rng, 12, 4);
    long n = len(rng), m = len(rng);
    EXPECT_EQ(pochhammer(a, n) * pochhammer(a - n, m), pochhammer(a, n + m));
    Rational rising(1);
    for (long j = 0; j < n; ++j) rising *= a + j;
    EXPECT_EQ(rising, pochhammer(a + n - 1, n));
  }
}

TEST(RingProperty, PhaseHomomorphism) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < kInstances; ++i) {
    Rational a = random_rational(rng, 20, 6), b = random_rational(rng, 20, 6);
    long m = 2 * std::lcm(a.get_den().get_si(), b.get_den().get_si());
    auto field = CyclotomicField::create(m);
    EXPECT_EQ(phase(field, a) * phase(field, b), phase(field, a + b));
    EXPECT_EQ(phase(field, a) * phase(field, -a), CycloNumber(field, 1));
    EXPECT_EQ(phase(field, a + 2), phase(field, a));
  }
}

TEST(RingProperty, EqualityMatchesComplexEmbedding) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> orders(1, 24);
  for (int i = 0; i < 1000; ++i) {
    auto field = CyclotomicField::create(orders(rng));
    CycloNumber a = random_cyclo(rng, field), b = random_cyclo(rng, field);
    if (i % 2) {
      // the same value written differently: add a vanishing sum of conjugate roots
      long m = field->order();
      CycloNumber zero(field);
      for (long j = 0; j < m; ++j) zero += CycloNumber::root_of_unity(field, j);
      b = a + (m > 1 ? zero : CycloNumber(field));
    }
    const bool close = std::abs(a.to_complex() - b.to_complex()) < 1e-9;
    EXPECT_EQ(a == b, close);
    EXPECT_LT(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 1e-6);
  }
}

TEST(RingProperty, SeriesRingAxioms) {
  std::mt19937_64 rng(24);
  auto field = CyclotomicField::create(6);
  for (int i = 0; i < kInstances; ++i) {
    auto space = small_space(1 + i % 3, 4, field);
    auto a = random_series(rng, space, true), b = random_series(rng, space, true), c = random_series(rng, space, true);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(RingProperty, ExpLogInverse) {
  std::mt19937_64 rng(25);
  auto field = CyclotomicField::create(4);
  for (int i = 0; i < kInstances; ++i) {
    auto space = small_space(1 + i % 2, 4, field);
    auto f = random_series(rng, space, false);
    auto one = PuiseuxSeries::constant(space, 1);
    EXPECT_EQ(log(exp(f)), f);
    EXPECT_EQ(exp(log(one + f)), one + f);
    EXPECT_EQ((one + f) * inverse(one + f), one);
  }
}

TEST(RingProperty, NewtonResidualVanishes) {
  std::mt19937_64 rng(26);
  std::uniform_int_distribution<int> k(1, 3), t(1, 5);
  for (int i = 0; i < kInstances; ++i) {
    std::vector<Rational> r(static_cast<std::size_t>(k(rng)));
    for (auto& x : r) x = random_rational(rng, 8, 4);
    long m = 2;
    for (const auto& x : r) m = std::lcm(m, 2 * x.get_den().get_si());
    auto space = small_space(r.size(), t(rng), CyclotomicField::create(m));
    auto v = exp_poly_newton(r, space);
    PuiseuxSeries h = PuiseuxSeries::constant(space, 1) - exp(v);
    for (std::size_t a = 0; a < r.size(); ++a) h += PuiseuxSeries::variable(space, a) * exp(v * r[a]);
    EXPECT_TRUE(h.is_zero());
    EXPECT_EQ(v, exp_poly_closed(r, space));
  }
}

TEST(RingProperty, PolynomialNewtonResidualVanishes) {
  std::mt19937_64 rng(27);
  auto field = CyclotomicField::create(1);
  for (int i = 0; i < kInstances; ++i) {
    auto space = small_space(2, 4, field);
    // c0 + c1 u + c2 u^2 with c0(0) = 0 and c1(0) = -1 has a unique root u(0) = 0
    auto c0 = random_series(rng, space, false);
    auto c1 = PuiseuxSeries::constant(space, -1) + random_series(rng, space, false);
    auto c2 = random_series(rng, space, true);
    auto u = newton_solve_polynomial({c0, c1, c2});
    EXPECT_TRUE((c0 + c1 * u + c2 * u * u).is_zero());
  }
}

TEST(RingProperty, SettingFirstVariableToZeroDropsIt) {
  std::mt19937_64 rng(28);
  std::uniform_int_distribution<int> k(2, 3), t(1, 5);
  for (int i = 0; i < kInstances; ++i) {
    std::vector<Rational> r(static_cast<std::size_t>(k(rng)));
    for (auto& x : r) x = random_rational(rng, 8, 4);
    auto field = CyclotomicField::create(1);
    const Rational trunc = t(rng);
    auto full = exp_poly_closed(r, small_space(r.size(), trunc, field));
    auto rest_space = small_space(r.size() - 1, trunc, field);
    auto rest = exp_poly_closed(std::vector<Rational>(r.begin() + 1, r.end()), rest_space);
    PuiseuxSeries sliced(rest_space);
    for (const auto& [e, c] : full.terms())
      if (e[0] == 0) sliced.add_term(Exponent(e.begin() + 1, e.end()), c);
    EXPECT_EQ(sliced, rest);
  }
}

TEST(RingProperty, SubstitutionRoundTrip) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> e(-3, 3), pick(0, 2), scale(-2, 2);
  auto field = CyclotomicField::create(3);
  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
    std::vector<Variable> v, w;
    for (std::size_t j = 0; j < n; ++j) {
      v.push_back({"x" + std::to_string(j), 1, 1, true});
      w.push_back({"y" + std::to_string(j), 1, 1, true});
    }
    auto sx = SeriesSpace::make(v, std::nullopt, field), sy = SeriesSpace::make(w, std::nullopt, field);
    RatMatrix m = RatMatrix::identity(n);
    for (int step = 0; step < 4; ++step) {
      std::size_t a = static_cast<std::size_t>(pick(rng)) % n, b = static_cast<std::size_t>(pick(rng)) % n;
      if (a == b) continue;
      Rational s = scale(rng);
      for (std::size_t c = 0; c < n; ++c) m(a, c) += s * m(b, c);
    }
    PuiseuxSeries f(sx);
    for (int t = 0; t < 5; ++t) {
      Exponent x(n);
      for (auto& xi : x) xi = e(rng);
      f.add_term(x, random_cyclo(rng, field));
    }
    auto g = substitute_monomial(f, m, sy);
    EXPECT_EQ(substitute_monomial(g, inverse(m), sx), f);
    EXPECT_EQ(g.size(), f.size());
  }
}
