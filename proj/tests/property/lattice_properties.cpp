#include <gtest/gtest.h>

#include <set>

#include "fans.hpp"
#include "orbidisk/amodel.hpp"

using namespace orbidisk;
using namespace orbidisk::testing;

namespace {

constexpr int kInstances = 120;

std::vector<StackyFan> random_fans(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<StackyFan> v;
  for (int i = 0; i < kInstances; ++i) {
    switch (i % 3) {
      case 0: v.push_back(random_orbifold_cone(rng, 2, 4)); break;
      case 1: v.push_back(random_cone(rng, 3, true)); break;
      default: v.push_back(random_orbifold_cone(rng, 3, 6)); break;
    }
  }
  return v;
}

Integer abs_det3(const StackyFan& fan, const Cone& c) {
  RatMatrix m(3, 3);
  for (int a = 0; a < 3; ++a) {
    auto fp = free_part(fan, static_cast<std::size_t>(c[a]));
    for (int j = 0; j < 3; ++j) m(a, j) = fp[j];
  }
  Rational d = determinant(m);
  return abs(d.get_num());
}

}  // namespace

TEST(LatticeProperty, ChargeRowsSumToZero) {
  for (const auto& fan : random_fans(11)) {
    IntMatrix l = charge_matrix(fan);
    for (std::size_t a = 0; a < l.rows(); ++a) {
      LatticeVector s(fan.b(0).size(), Integer(0));
      Integer total(0);
      for (std::size_t i = 0; i < fan.r(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) s[j] += l(a, i) * fan.b(i)[j];
        total += l(a, i);
      }
      EXPECT_EQ(reduce(fan, s), LatticeVector(s.size(), Integer(0)));
      EXPECT_EQ(total, 0);
    }
  }
}

TEST(LatticeProperty, AgesAreIntegers) {
  for (const auto& fan : random_fans(12))
    for (std::size_t c = 0; c < fan.cones.size(); ++c)
      for (const auto& b : box_elements(fan, c)) EXPECT_EQ(b.age.get_den(), 1);
}

TEST(LatticeProperty, CharacterProductIsOne) {
  for (const auto& fan : random_fans(13)) {
    auto box = box_elements(fan, 0);
    long m = 2;
    for (const auto& b : box)
      for (const auto& c : b.c) m = std::lcm(m, c.get_den().get_si());
    auto field = CyclotomicField::create(m);
    for (const auto& b : box) {
      CycloNumber p(field, 1);
      for (const auto& c : b.c) p *= phase(field, 2 * c);
      EXPECT_EQ(p, CycloNumber(field, 1));
    }
  }
}

TEST(LatticeProperty, BoxCountIsDeterminantTimesTorsion) {
  for (const auto& fan : random_fans(14)) {
    Integer tor(1);
    for (const auto& m : fan.torsion) tor *= m;
    for (std::size_t c = 0; c < fan.cones.size(); ++c)
      EXPECT_EQ(Integer(box_elements(fan, c).size()), abs_det3(fan, fan.cones[c]) * tor);
  }
}

TEST(LatticeProperty, FlagIndex) {
  std::vector<std::array<int, 3>> orders = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  int n = 0;
  for (const auto& fan : random_fans(15)) {
    auto fl = flag_data(fan, orders[static_cast<std::size_t>(n++) % orders.size()]);
    EXPECT_EQ(Integer(fl.s1) * fl.g_tau, fl.g_sigma);
    EXPECT_EQ(Integer(box_elements(fan, fl.sigma).size()), fl.g_sigma);
  }
}

TEST(LatticeProperty, KEffDownwardClosed) {
  for (const auto& fan : random_fans(16)) {
    if (fan.k() > 4) continue;
    auto list = k_eff_enumerate(fan, 0, 3);
    std::set<std::vector<Integer>> seen;
    for (const auto& c : list) seen.insert(c.n);
    EXPECT_EQ(seen.size(), list.size());
    for (const auto& c : list)
      for (std::size_t a = 0; a < c.n.size(); ++a) {
        if (c.n[a] == 0) continue;
        auto m = c.n;
        m[a] -= 1;
        EXPECT_TRUE(seen.count(m));
      }
  }
}

TEST(LatticeProperty, SectorOfClassIsInBox) {
  for (const auto& fan : random_fans(17)) {
    if (fan.k() > 4) continue;
    auto box = box_elements(fan, 0);
    for (const auto& c : k_eff_enumerate(fan, 0, 2)) EXPECT_EQ(box[c.box].v, sector_vector(fan, c.pairings));
  }
}
