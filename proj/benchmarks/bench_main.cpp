#include <benchmark/benchmark.h>

#include "orbidisk/bmodel.hpp"

using namespace orbidisk;

namespace {

LatticeVector vec(std::initializer_list<long> l) {
  LatticeVector v;
  for (long x : l) v.push_back(Integer(x));
  return v;
}

StackyFan x111() {
  StackyFan f;
  f.rays = {vec({1, 0, 1}), vec({0, 1, 1}), vec({-1, -1, 1})};
  f.extras = {vec({0, 0, 1})};
  f.cones = {{0, 1, 2}};
  return f;
}

StackyFan x120() {
  StackyFan f;
  f.rays = {vec({1, 0, 1}), vec({0, 3, 1}), vec({0, 0, 1})};
  f.extras = {vec({0, 1, 1}), vec({0, 2, 1})};
  f.cones = {{0, 1, 2}};
  return f;
}

SpacePtr plain_space(std::size_t vars, long t) {
  std::vector<Variable> v;
  for (std::size_t i = 0; i < vars; ++i) v.push_back({"s" + std::to_string(i), 1, 1, false});
  return SeriesSpace::make(std::move(v), Rational(t), CyclotomicField::create(12));
}

void series_mul(benchmark::State& state) {
  auto space = plain_space(3, state.range(0));
  PuiseuxSeries f = PuiseuxSeries::constant(space, 1);
  for (std::size_t i = 0; i < 3; ++i) f += PuiseuxSeries::variable(space, i) * Rational(static_cast<long>(i) + 2, 3);
  auto g = inverse(f);
  for (auto _ : state) benchmark::DoNotOptimize(g * f);
}
BENCHMARK(series_mul)->Arg(4)->Arg(8)->Arg(12);

void newton_exp_poly(benchmark::State& state) {
  auto space = plain_space(2, state.range(0));
  std::vector<Rational> r = {Rational(1, 3), Rational(-3, 4)};
  for (auto _ : state) benchmark::DoNotOptimize(exp_poly_newton(r, space));
}
BENCHMARK(newton_exp_poly)->Arg(3)->Arg(5)->Arg(7);

void closed_exp_poly(benchmark::State& state) {
  auto space = plain_space(2, state.range(0));
  std::vector<Rational> r = {Rational(1, 3), Rational(-3, 4)};
  for (auto _ : state) benchmark::DoNotOptimize(exp_poly_closed(r, space));
}
BENCHMARK(closed_exp_poly)->Arg(3)->Arg(5)->Arg(7);

void verify_x111(benchmark::State& state) {
  StackyFan fan = x111();
  FramedBrane b = make_brane(fan, {0, 1, 2}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_identity(fan, b, state.range(0)));
}
BENCHMARK(verify_x111)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void verify_x120(benchmark::State& state) {
  StackyFan fan = x120();
  FramedBrane b = make_brane(fan, {1, 2, 0}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_identity(fan, b, state.range(0)));
}
BENCHMARK(verify_x120)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
