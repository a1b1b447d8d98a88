#include <gtest/gtest.h>

#include "fans.hpp"
#include "orbidisk/cli.hpp"

using namespace orbidisk;
using namespace orbidisk::testing;

TEST(PipelineProperty, RandomOrbifoldConesVerify) {
  std::mt19937_64 rng(31);
  std::vector<std::array<int, 3>> orders = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  std::uniform_int_distribution<long> framing(-2, 2);
  std::uniform_int_distribution<std::size_t> order(0, orders.size() - 1);
  int twisted = 0;
  for (int i = 0; i < 100; ++i) {
    StackyFan fan = random_orbifold_cone(rng, 2, 2);
    if (fan.k() > 0) ++twisted;
    const auto o = orders[order(rng)];
    const long f = framing(rng);
    auto r = verify_identity(fan, make_brane(fan, o, f), 2);
    EXPECT_EQ(r.status, VerifyReport::Status::equal)
        << "instance " << i << " k=" << fan.k() << " order " << o[0] << o[1] << o[2] << " f=" << f;
    EXPECT_TRUE(r.closed_matches_newton);
  }
  EXPECT_GE(twisted, 30);
}

TEST(PipelineProperty, ReportsAreDeterministic) {
  for (const auto& name : cli::example_names()) {
    cli::Model m = cli::load_example(name);
    m.config.truncation = 2;
    for (auto c : {cli::Command::inspect, cli::Command::verify}) {
      cli::Report a = cli::run(c, m), b = cli::run(c, m);
      EXPECT_EQ(a, b) << name;
      EXPECT_EQ(cli::emit_report(a, cli::Format::json), cli::emit_report(b, cli::Format::json));
    }
  }
}
